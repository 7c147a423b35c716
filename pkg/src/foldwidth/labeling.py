"""Width labelings: one even width per face, induced by orienting every strand."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Mapping, Sequence

from .diagram import CROSSING, CUSP, FoldDiagram
from .errors import InvalidLabeling, LabelingMismatch


@dataclass(frozen=True)
class OrientationChoice:
    """One bit per fold component; 1 walks the strand against its traced order."""

    bits: tuple[int, ...]


@dataclass(frozen=True)
class WidthLabeling:
    widths: tuple[int, ...]
    origin: OrientationChoice | None = field(default=None, compare=False)

    def __getitem__(self, face: int) -> int:
        return self.widths[face]

    def __len__(self):
        return len(self.widths)

    def as_dict(self) -> dict[str, int]:
        return {str(i): w for i, w in enumerate(self.widths)}


@dataclass(frozen=True)
class WidthStats:
    w: int
    tw: int
    table: tuple[tuple[int, bool, int], ...]  # (face id, bounded, width)


@dataclass(frozen=True)
class VertexCheck:
    component: int
    vertex: int
    kind: str
    ok: bool
    reason: str = ""


@dataclass(frozen=True)
class PatternReport:
    vertices: tuple[VertexCheck, ...]
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.problems and all(v.ok for v in self.vertices)

    def failures(self) -> list[str]:
        out = list(self.problems)
        out += [f"component {v.component} vertex {v.vertex} ({v.kind}): {v.reason}"
                for v in self.vertices if not v.ok]
        return out


def forward_darts(d: FoldDiagram, choice: OrientationChoice) -> list[tuple[int, int]]:
    """Darts walked forward (away from their vertex) under ``choice``."""
    out = []
    for strand, bit in zip(d.fold_components(), choice.bits):
        darts = strand.backward if bit else strand.forward
        out.extend((strand.component, x) for x in darts)
    return out


def integrate_widths(d: FoldDiagram, choice: OrientationChoice) -> list[int] | None:
    """Widths forced by ``choice`` (left of a forward dart is two higher).

    Returns ``None`` when the constraints disagree around some cycle.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in d.faces]
    for c, x in forward_darts(d, choice):
        right, left = d.face_right(c, x), d.face_left(c, x)
        adj[right].append((left, 2))
        adj[left].append((right, -2))
    widths: list[int | None] = [None] * len(d.faces)
    widths[d.outer_face] = 0
    queue = deque([d.outer_face])
    while queue:
        f = queue.popleft()
        for g, step in adj[f]:
            want = widths[f] + step
            if widths[g] is None:
                widths[g] = want
                queue.append(g)
            elif widths[g] != want:
                return None
    if any(w is None for w in widths):
        return None
    return widths  # type: ignore[return-value]


def _crossing_ok(ws: Sequence[int]) -> bool:
    for s in range(4):
        a, b, c, e = (ws[(s + j) % 4] for j in range(4))
        if b == a + 2 and c == a + 4 and e == a + 2:
            return True
    return False


def check_local_patterns(d: FoldDiagram, lab) -> PatternReport:
    """Independent re-check of every local width rule of ``lab`` on ``d``."""
    widths = _widths_of(lab)
    problems = []
    if len(widths) != len(d.faces):
        raise LabelingMismatch(f"labeling has {len(widths)} faces, diagram has {len(d.faces)}")
    if widths[d.outer_face] != 0:
        problems.append(f"unbounded face has width {widths[d.outer_face]}, expected 0")
    for f, w in enumerate(widths):
        if w < 0:
            problems.append(f"face {f} has negative width {w}")
        if w % 2:
            problems.append(f"face {f} has odd width {w}")
    for c, comp in enumerate(d.components):
        for a, b in comp.edges:
            fa, fb = d.face_right(c, a), d.face_right(c, b)
            if abs(widths[fa] - widths[fb]) != 2:
                problems.append(f"component {c} edge ({a},{b}) separates widths "
                                f"{widths[fa]} and {widths[fb]}")
    checks = []
    for c, comp in enumerate(d.components):
        for v in comp.vertices:
            ws = [widths[f] for f in d.corner_faces(c, v)]
            ok, reason = True, ""
            if v.kind == CROSSING:
                if not _crossing_ok(ws):
                    ok, reason = False, f"corner widths {ws} are not n, n+2, n+4, n+2"
            elif v.kind == CUSP:
                wedge, other = ws[v.wedge_corner], ws[1 - v.wedge_corner]
                if wedge != other + 2:
                    ok, reason = False, f"wedge width {wedge} is not other side {other} + 2"
                elif other < 2:
                    ok, reason = False, f"non-wedge width {other} is below 2"
            checks.append(VertexCheck(c, v.id, v.kind, ok, reason))
    return PatternReport(tuple(checks), tuple(problems))


def _widths_of(lab) -> list[int]:
    if isinstance(lab, WidthLabeling):
        return list(lab.widths)
    if isinstance(lab, Mapping):
        return [lab[k] for k in sorted(lab, key=int)]
    return list(lab)


def enumerate_labelings(d: FoldDiagram) -> list[WidthLabeling]:
    """All admissible labelings, sorted by (tw, w, widths)."""
    n = len(d.fold_components())
    found = {}
    for bits in product((0, 1), repeat=n):
        choice = OrientationChoice(bits)
        widths = integrate_widths(d, choice)
        if widths is None:
            continue
        lab = WidthLabeling(tuple(widths), choice)
        if not check_local_patterns(d, lab).ok:
            continue
        found.setdefault(lab.widths, lab)
    return sorted(found.values(), key=_sort_key)


def _sort_key(lab: WidthLabeling):
    return (sum(lab.widths), max(lab.widths), lab.widths)


def width_stats(d: FoldDiagram, lab) -> WidthStats:
    widths = _widths_of(lab)
    if len(widths) != len(d.faces):
        raise LabelingMismatch(f"labeling has {len(widths)} faces, diagram has {len(d.faces)}")
    table = tuple((f.id, f.bounded, widths[f.id]) for f in d.faces)
    return WidthStats(max(widths), sum(widths), table)


def orientation_for(d: FoldDiagram, widths: Sequence[int]) -> OrientationChoice | None:
    """Recover the orientation bits that put the higher face on the left."""
    bits = []
    for strand in d.fold_components():
        x = strand.forward[0]
        left = widths[d.face_left(strand.component, x)]
        right = widths[d.face_right(strand.component, x)]
        if left == right + 2:
            bits.append(0)
        elif right == left + 2:
            bits.append(1)
        else:
            return None
    return OrientationChoice(tuple(bits))


def validate_labeling(d: FoldDiagram, widths) -> WidthLabeling:
    """Check a supplied labeling and attach its orientation; raise on failure."""
    ws = _widths_of(widths)
    report = check_local_patterns(d, ws)
    if not report.ok:
        raise InvalidLabeling("; ".join(report.failures()))
    choice = orientation_for(d, ws)
    if choice is None or integrate_widths(d, choice) != ws:
        raise InvalidLabeling("widths are not induced by any orientation of the strands")
    return WidthLabeling(tuple(ws), choice)
