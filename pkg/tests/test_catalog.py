import csv
import io
import json

import pytest

from foldwidth import EnumBounds, build_diagram, canonical_code, enumerate_labelings, entry_from, enumerate_diagrams, mirror, query, verdict
from foldwidth.catalog import export_csv, export_jsonl, worker_count
from foldwidth.errors import BoundExceeded

import shapes

SMALL = EnumBounds(2, 2, 2, 8)


@pytest.fixture(scope="module")
def small():
    return enumerate_diagrams(SMALL)


def test_tiniest_catalog_is_the_circle():
    entries = enumerate_diagrams(EnumBounds(0, 0, 1, 2))
    assert len(entries) == 1
    assert canonical_code(entries[0].diagram) == canonical_code(shapes.d1())


def test_entries_are_sorted_and_unique(small):
    keys = [e.sort_key() for e in small]
    assert keys == sorted(keys)
    assert len({e.labeled_code for e in small}) == len(small)


def test_entries_respect_bounds(small):
    for e in small:
        inv = e.invariants
        assert inv.crossings <= 2 and inv.cusps <= 2 and inv.tw <= 8
        assert len(e.diagram.fold_components()) <= 2


def test_reflection_merges_mirror_pairs(small):
    merged = enumerate_diagrams(EnumBounds(2, 2, 2, 8, reflect=True))
    assert len(merged) < len(small)
    chiral = [e for e in small if canonical_code(mirror(e.diagram)) != canonical_code(e.diagram)]
    assert chiral


def test_known_entries_present(small):
    codes = {(canonical_code(e.diagram), e.labeling.widths) for e in small}
    assert (canonical_code(shapes.d1()), (0, 2)) in codes
    d7 = entry_from(shapes.d7(), (0, 2, 4))
    assert d7.labeled_code in {e.labeled_code for e in enumerate_diagrams(EnumBounds(0, 3, 2, 6))}


def test_symmetric_labelings_collapse():
    # a figure-eight in a circle: swapping the lobes is a symmetry
    d = build_diagram({"components": [shapes.CIRCLE, shapes.FIGURE_EIGHT],
                       "placements": [{"parent": None}, {"parent": 0, "parent_face": 1}]})
    widths = [lab.widths for lab in enumerate_labelings(d)]
    assert (0, 2, 0, 4) in widths and (0, 2, 4, 0) in widths
    entries = enumerate_diagrams(EnumBounds(1, 0, 2, 6))
    same = [e for e in entries if e.code == canonical_code(d) and sorted(e.labeling.widths) == [0, 0, 2, 4]]
    assert len(same) == 1


def test_query(small):
    spheres = query(small, lambda e: e.invariants.chi == 2 and e.connected_realizable)
    assert spheres and all(e.invariants.chi == 2 for e in spheres)


def test_verdict_tags(small):
    kinds = {verdict(e).kind for e in small}
    assert kinds <= {"strongly_trivial", "trivial", "unknown"}
    for e in small:
        v = verdict(e)
        if v.kind == "strongly_trivial":
            assert e.invariants.w == 2 or (e.invariants.chi == 2 and e.invariants.tw <= 6)
        if v.kind != "unknown":
            assert e.connected_realizable


def test_entry_from_single_diagram():
    e = entry_from(shapes.d7(), (0, 2, 4))
    assert e.surfaces == ((1, False, 1),)
    assert str(verdict(e)) == "trivial (total width at most 6 for projective planes)"


def test_export_formats(small):
    lines = export_jsonl(small).splitlines()
    assert len(lines) == len(small)
    rec = json.loads(lines[0])
    assert {"code", "w", "tw", "chi", "parity", "surfaces", "widths", "diagram"} <= set(rec)
    rows = list(csv.reader(io.StringIO(export_csv(small))))
    assert rows[0] == ["code", "crossings", "cusps", "loops", "w", "tw", "chi", "parity", "surfaces", "widths"]
    assert len(rows) == len(small) + 1


def test_worker_counts_give_identical_output():
    bounds = EnumBounds(1, 3, 2, 6)
    one = enumerate_diagrams(bounds, workers=1)
    two = enumerate_diagrams(bounds, workers=2)
    assert export_jsonl(one) == export_jsonl(two)
    assert export_csv(one) == export_csv(two)


def test_worker_cap_from_environment(monkeypatch):
    monkeypatch.setenv("FOLDWIDTH_THREADS", "1")
    assert worker_count(8) == 1


def test_entry_cap():
    with pytest.raises(BoundExceeded):
        enumerate_diagrams(SMALL, max_entries=5)


def test_monodromy_mode_only_adds_surfaces(small):
    mono = enumerate_diagrams(EnumBounds(2, 2, 2, 8, monodromy=True))
    assert [e.labeled_code for e in mono] == [e.labeled_code for e in small]
    for a, b in zip(small, mono):
        assert set(a.surfaces) <= set(b.surfaces)
