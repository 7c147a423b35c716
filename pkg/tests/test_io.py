import json
import pathlib
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from foldwidth import (
    BraidSpec,
    canonical_code,
    gen_braid_closure,
    gen_spun_bridge,
    parse_document,
    relabel,
    render_svg,
    serialize_document,
)
from foldwidth.errors import BadDegree, DocumentSyntaxError, InvalidLabeling, LabelingMismatch

import shapes

EXAMPLES = pathlib.Path(__file__).resolve().parent.parent / "docs" / "examples"


@pytest.mark.parametrize("name, make, widths", [
    ("d1.json", shapes.d1, [(0, 2)]),
    ("d2.json", shapes.d2, [(0, 2, 0), (0, 2, 4)]),
    ("d7.json", shapes.d7, [(0, 2, 4)]),
])
def test_worked_examples_parse(name, make, widths):
    doc = parse_document((EXAMPLES / name).read_text())
    assert canonical_code(doc.diagram) == canonical_code(make())
    assert [lab.widths for lab in doc.labelings] == widths


def test_round_trip_is_byte_stable():
    d = shapes.d7()
    text = serialize_document(d, [(0, 2, 4)], {"diagram": "D7"})
    doc = parse_document(text)
    assert doc.diagram == d
    assert doc.names == {"diagram": "D7"}
    assert serialize_document(doc.diagram, doc.labelings, doc.names) == text


def test_worked_example_files_are_canonical_text():
    for path in sorted(EXAMPLES.glob("*.json")):
        text = path.read_text()
        doc = parse_document(text)
        assert serialize_document(doc.diagram, doc.labelings, doc.names) == text


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_round_trip_after_relabeling(seed):
    d, lab = gen_braid_closure(BraidSpec(2, 2))
    e = relabel(d, seed)
    doc = parse_document(serialize_document(e))
    assert doc.diagram == e
    assert canonical_code(doc.diagram) == canonical_code(d)


def test_number_lists_stay_on_one_line():
    text = serialize_document(shapes.d1())
    assert '"darts": [0, 1]' in text
    assert "[0, 1]" in text.split('"edges"')[1]


def test_json_syntax_error_has_position():
    with pytest.raises(DocumentSyntaxError) as info:
        parse_document('{"components": [,]}')
    assert (info.value.line, info.value.column) == (1, 17)


def test_structural_error_points_into_the_text():
    text = (EXAMPLES / "d7.json").read_text().replace('"darts": [4, 5]', '"darts": [4]')
    with pytest.raises(BadDegree) as info:
        parse_document(text)
    assert info.value.line == 30
    assert "components[1].vertices[2]" in str(info.value)


def test_inadmissible_labeling_is_rejected_with_location():
    text = (EXAMPLES / "d7.json").read_text().replace('"2": 4', '"2": 6')
    with pytest.raises(InvalidLabeling) as info:
        parse_document(text)
    assert "labelings[0]" in str(info.value)


def test_incomplete_labeling():
    raw = json.loads((EXAMPLES / "d1.json").read_text())
    raw["labelings"] = [{"0": 0}]
    with pytest.raises(LabelingMismatch):
        parse_document(json.dumps(raw))


def test_unknown_version():
    raw = json.loads((EXAMPLES / "d1.json").read_text())
    raw["version"] = "9"
    with pytest.raises(DocumentSyntaxError):
        parse_document(json.dumps(raw))


def test_top_level_must_be_object():
    with pytest.raises(DocumentSyntaxError):
        parse_document("[1, 2]")


def test_svg_is_well_formed_and_labels_widths():
    svg = render_svg(shapes.d7(), (0, 2, 4))
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg") and root.get("version") == "1.1"
    texts = sorted(el.text for el in root.iter() if el.tag.endswith("text"))
    assert texts == ["0", "2", "4"]
    assert sum(el.tag.endswith("polygon") for el in root.iter()) == 2


def test_svg_is_deterministic():
    d, lab = gen_spun_bridge(2)
    assert render_svg(d, lab) == render_svg(d, lab)


def test_svg_without_labeling_reports_unavailable():
    svg = render_svg(shapes.d3(), None)
    ET.fromstring(svg)
    assert "REALIZATION-UNAVAILABLE" in svg


def test_svg_from_supplied_realization():
    svg = render_svg(shapes.d7(), (0, 2, 4), real=shapes.d7_realization())
    root = ET.fromstring(svg)
    assert sum(el.tag.endswith("circle") for el in root.iter()) == 3
