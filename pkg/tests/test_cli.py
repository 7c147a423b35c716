import csv
import io
import json
import pathlib
import subprocess
import sys

import pytest

from foldwidth import canonical_code, parse_document
from foldwidth.cli import main

import shapes

EXAMPLES = pathlib.Path(__file__).resolve().parent.parent / "docs" / "examples"
D1, D2, D7 = (str(EXAMPLES / n) for n in ("d1.json", "d2.json", "d7.json"))


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate(capsys):
    code, out, _ = run(capsys, "validate", D7)
    assert code == 0
    assert out.startswith("ok:")


def test_labelings(capsys):
    code, out, err = run(capsys, "labelings", D2)
    assert code == 0
    assert json.loads(out) == [{"0": 0, "1": 2, "2": 0}, {"0": 0, "1": 2, "2": 4}]
    assert "count 2" in err


def test_invariants(capsys):
    code, out, _ = run(capsys, "invariants", D7)
    assert code == 0
    assert "w=4 tw=6 chi=1 crossings=0 cusps=3 parity=ok" in out


def test_assemble_default_and_monodromy(capsys):
    _, out, _ = run(capsys, "assemble", D2)
    assert "pieces=torus" in out and "Klein" not in out
    _, out, _ = run(capsys, "assemble", "--monodromy", D2)
    assert "pieces=Klein bottle" in out


def test_verdicts(capsys):
    _, out, _ = run(capsys, "verdict", D1)
    assert out.startswith("strongly_trivial (width-two characterization)")
    _, out, _ = run(capsys, "verdict", D7)
    assert out.startswith("trivial (total width at most 6 for projective planes)")


def test_verdict_needs_connected_assembly(capsys, tmp_path):
    # two side-by-side circles never cover a connected surface
    from foldwidth import serialize_document
    path = tmp_path / "d4.json"
    path.write_text(serialize_document(shapes.d4(), [(0, 2, 2)]))
    _, out, _ = run(capsys, "verdict", str(path))
    assert out.startswith("unknown (no assembly covers a connected surface)")
    _, out, _ = run(capsys, "verdict", "--assume-connected", str(path))
    assert out.startswith("strongly_trivial")


def test_figure_eight_has_no_labeling(capsys, tmp_path):
    from foldwidth import serialize_document
    path = tmp_path / "d3.json"
    path.write_text(serialize_document(shapes.d3()))
    code, _, err = run(capsys, "invariants", str(path))
    assert code == 1
    assert "no width labeling" in err


@pytest.mark.parametrize("argv, chi", [
    (["generate", "spun", "--m", "2"], 2),
    (["generate", "braid", "--b", "2", "--r", "2"], 2),
    (["generate", "ribbon", "--balls", "2", "--tube", "0-1:0"], 2),
    (["generate", "trivial", "--parents=-,0"], 0),
])
def test_generate_writes_parsable_documents(capsys, argv, chi):
    from foldwidth import euler_char_stratified
    code, out, _ = run(capsys, *argv)
    assert code == 0
    doc = parse_document(out)
    assert euler_char_stratified(doc.diagram, doc.labelings[0]) == chi


def test_generate_and_split_round_trip(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "generate", "ribbon", "--balls", "2", "--tube", "0-1:0", "--out", str(a))
    run(capsys, "generate", "trivial", "--parents", "-", "--out", str(b))
    summed = tmp_path / "sum.json"
    assert run(capsys, "generate", "consum", str(a), str(b), "--out", str(summed))[0] == 0
    code, out, _ = run(capsys, "split", str(summed), "--piece", "1")
    assert code == 0
    piece = parse_document(out).diagram
    assert canonical_code(piece) in {canonical_code(parse_document(p.read_text()).diagram) for p in (a, b)}


def test_enumerate_csv(capsys):
    code, out, err = run(capsys, "enumerate", "--max-crossings", "0", "--max-cusps", "0",
                         "--max-loops", "2", "--max-tw", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3 and "3 entries" in err
    assert sorted(r["widths"] for r in rows) == ["0 2", "0 2 0", "0 2 2"]


def test_enumerate_jsonl_to_file(capsys, tmp_path):
    out = tmp_path / "cat.jsonl"
    code, _, _ = run(capsys, "enumerate", "--max-crossings", "0", "--max-cusps", "3",
                     "--max-loops", "2", "--max-tw", "6", "--out", str(out))
    assert code == 0
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert any(r["cusps"] == 3 and r["chi"] == 1 for r in records)


def test_render(capsys, tmp_path):
    out = tmp_path / "d7.svg"
    code, _, _ = run(capsys, "render", D7, "--out", str(out))
    assert code == 0
    assert out.read_text().startswith("<svg")


def test_missing_file_exits_one(capsys):
    assert run(capsys, "validate", "/no/such/file.json")[0] == 1


def test_invalid_document_exits_one(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"components": [,]}')
    code, _, err = run(capsys, "validate", str(path))
    assert code == 1
    assert "line 1" in err


def test_usage_error_exits_two():
    res = subprocess.run([sys.executable, "-m", "foldwidth", "bogus"], capture_output=True, text=True)
    assert res.returncode == 2
