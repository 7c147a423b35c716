"""JSON document format for diagrams and their labelings.

A document is a JSON object::

    {
      "version": "1",
      "components": [{"vertices": [{"id": 0, "kind": "smooth", "darts": [0, 1]}],
                      "edges": [[0, 1]]}],
      "placements": [{"parent": null, "parent_face": null, "outer_face": 0}],
      "labelings": [{"0": 0, "1": 2}],
      "names": {"diagram": "D1"}
    }

Cusp vertices carry ``wedge_corner`` (0 or 1).  Labelings map global face ids
(as strings) to widths.  ``placements``, ``labelings`` and ``names`` are
optional.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

from .diagram import FoldDiagram, build_diagram
from .errors import DocumentSyntaxError, FoldDiagramError, LabelingMismatch
from .labeling import WidthLabeling, validate_labeling

FORMAT_VERSION = "1"


@dataclass
class DiagramDocument:
    diagram: FoldDiagram
    labelings: list[WidthLabeling] = field(default_factory=list)
    names: dict = field(default_factory=dict)
    version: str = FORMAT_VERSION


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


_WS = re.compile(r"\s*")
_NUMBER_LIST = re.compile(r"\[\s*(-?\d+(?:,\s*-?\d+)*)\s*\]")


def _locate(text: str, where: str | None) -> int | None:
    """Character offset of the JSON value at a path like ``components[0].edges[2]``."""
    if not where:
        return None
    steps: list = []
    for part in where.split("."):
        m = re.fullmatch(r"([A-Za-z_]+)((?:\[\d+\])*)", part)
        if not m:
            return None
        steps.append(m.group(1))
        steps.extend(int(i) for i in re.findall(r"\[(\d+)\]", m.group(2)))
    dec = json.JSONDecoder()
    idx = _WS.match(text, 0).end()
    try:
        for step in steps:
            if isinstance(step, str):
                if text[idx] != "{":
                    return None
                idx = _WS.match(text, idx + 1).end()
                while text[idx] != "}":
                    key, idx = json.decoder.scanstring(text, idx + 1)
                    idx = _WS.match(text, idx).end() + 1  # colon
                    idx = _WS.match(text, idx).end()
                    if key == step:
                        break
                    _, idx = dec.raw_decode(text, idx)
                    idx = _WS.match(text, idx).end()
                    if text[idx] == ",":
                        idx = _WS.match(text, idx + 1).end()
                else:
                    return None
            else:
                if text[idx] != "[":
                    return None
                idx = _WS.match(text, idx + 1).end()
                for _ in range(step):
                    _, idx = dec.raw_decode(text, idx)
                    idx = _WS.match(text, idx).end()
                    if text[idx] != ",":
                        return None
                    idx = _WS.match(text, idx + 1).end()
    except (IndexError, ValueError):
        return None
    return idx


def _with_location(exc: FoldDiagramError, text: str) -> FoldDiagramError:
    pos = _locate(text, exc.where)
    if pos is not None:
        line, col = _line_col(text, pos)
        exc.where = f"{exc.where} (line {line}, column {col})"
        exc.line, exc.column = line, col
    return exc


def parse_document(text: str) -> DiagramDocument:
    """Parse and validate a document; errors point into the text."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise DocumentSyntaxError("document must be a JSON object", 1, 1)
    version = str(raw.get("version", FORMAT_VERSION))
    if version != FORMAT_VERSION:
        raise DocumentSyntaxError(f"unsupported document version {version!r}", 1, 1)
    try:
        d = build_diagram(raw)
    except FoldDiagramError as exc:
        raise _with_location(exc, text) from None
    labelings = []
    raw_labs = raw.get("labelings") or []
    if not isinstance(raw_labs, list):
        raise _with_location(LabelingMismatch("labelings must be a list", "labelings"), text)
    for i, lab in enumerate(raw_labs):
        where = f"labelings[{i}]"
        try:
            if not isinstance(lab, dict):
                raise LabelingMismatch("labeling must map face ids to widths", where)
            keys = sorted(int(k) for k in lab)
            if keys != list(range(len(d.faces))):
                raise LabelingMismatch(f"labeling must give a width for faces 0..{len(d.faces) - 1}", where)
            widths = [int(lab[str(k)]) for k in keys]
            labelings.append(validate_labeling(d, widths))
        except FoldDiagramError as exc:
            exc.where = exc.where or where
            raise _with_location(exc, text) from None
        except (TypeError, ValueError) as exc:
            raise _with_location(LabelingMismatch(f"malformed labeling ({exc})", where), text) from None
    names = raw.get("names") or {}
    return DiagramDocument(d, labelings, dict(names), version)


def serialize_document(d: FoldDiagram, labelings=(), names=None) -> str:
    """Deterministic JSON text; :func:`parse_document` reads it back."""
    doc = {"version": FORMAT_VERSION}
    doc.update(d.to_spec())
    labs = []
    for lab in labelings:
        widths = lab.widths if isinstance(lab, WidthLabeling) else list(lab)
        labs.append({str(i): int(w) for i, w in enumerate(widths)})
    if labs:
        doc["labelings"] = labs
    if names:
        doc["names"] = dict(names)
    text = json.dumps(doc, indent=2)
    # keep dart lists and edges on one line
    text = _NUMBER_LIST.sub(lambda m: "[" + ", ".join(re.split(r",\s*", m.group(1))) + "]", text)
    return text + "\n"
