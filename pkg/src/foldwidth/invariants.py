"""Euler characteristic, orientation and parity invariants of labeled diagrams."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .diagram import CROSSING, CUSP, FoldDiagram
from .labeling import OrientationChoice, WidthLabeling, _widths_of, orientation_for, width_stats
from .errors import InvalidLabeling

if TYPE_CHECKING:
    from .geometry import Realization


@dataclass(frozen=True)
class OrientedStrand:
    index: int
    component: int
    darts: tuple[int, ...]  # darts walked forward, in order along the strand


@dataclass(frozen=True)
class InducedOrientation:
    choice: OrientationChoice
    strands: tuple[OrientedStrand, ...]
    forward: frozenset[tuple[int, int]]

    def is_forward(self, c: int, x: int) -> bool:
        return (c, x) in self.forward


@dataclass(frozen=True)
class DiagramInvariants:
    w: int
    tw: int
    crossings: int
    cusps: int
    chi: int
    parity_ok: bool

    def line(self) -> str:
        return (f"w={self.w} tw={self.tw} chi={self.chi} crossings={self.crossings} "
                f"cusps={self.cusps} parity={'ok' if self.parity_ok else 'FAIL'}")


def induced_orientation(d: FoldDiagram, lab) -> InducedOrientation:
    """Orient every strand so that the higher face lies on its left."""
    choice = lab.origin if isinstance(lab, WidthLabeling) and lab.origin is not None else None
    if choice is None:
        choice = orientation_for(d, _widths_of(lab))
        if choice is None:
            raise InvalidLabeling("labeling does not orient every strand")
    strands = []
    forward = set()
    for s, bit in zip(d.fold_components(), choice.bits):
        if bit:
            # reversed walk: incoming darts become outgoing, order reversed
            seq = tuple(reversed(s.backward))
        else:
            seq = s.forward
        strands.append(OrientedStrand(s.index, s.component, seq))
        forward.update((s.component, x) for x in seq)
    return InducedOrientation(choice, tuple(strands), frozenset(forward))


def euler_char_stratified(d: FoldDiagram, lab) -> int:
    """Euler characteristic of the covered surface counted stratum by stratum."""
    widths = _widths_of(lab)
    chi = 0
    for f in d.faces:
        if f.bounded:
            chi += widths[f.id] * f.euler_c
    for c, comp in enumerate(d.components):
        for a, b in comp.edges:
            chi -= min(widths[d.face_right(c, a)], widths[d.face_right(c, b)]) + 1
        for v in comp.vertices:
            ws = [widths[f] for f in d.corner_faces(c, v)]
            if v.kind == CROSSING:
                chi += min(ws) + 2
            elif v.kind == CUSP:
                chi += ws[1 - v.wedge_corner]
            else:
                chi += min(ws) + 1
    return chi


def thom_parity(d: FoldDiagram, lab) -> bool:
    return (d.cusps - euler_char_stratified(d, lab)) % 2 == 0


def compute_invariants(d: FoldDiagram, lab) -> DiagramInvariants:
    stats = width_stats(d, lab)
    chi = euler_char_stratified(d, lab)
    cusps = d.cusps
    return DiagramInvariants(stats.w, stats.tw, d.crossings, cusps, chi, (cusps - chi) % 2 == 0)


def turning_total(points: np.ndarray, cusp_indices=()) -> float:
    """Total turning of the tangent line of a closed polyline, in units of pi.

    At cusp vertices the direction reverses while the line does not, so half
    a turn is taken off there.
    """
    p = np.asarray(points, dtype=float)
    incoming = p - np.roll(p, 1, axis=0)
    outgoing = np.roll(p, -1, axis=0) - p
    cross = incoming[:, 0] * outgoing[:, 1] - incoming[:, 1] * outgoing[:, 0]
    dot = (incoming * outgoing).sum(axis=1)
    delta = np.arctan2(cross, dot)
    for i in cusp_indices:
        delta[i] -= math.pi * (1.0 if delta[i] >= 0 else -1.0)
    return float(delta.sum() / math.pi)


def rotation_degree_numeric(realized: "Realization", d: FoldDiagram | None = None,
                            lab=None) -> int:
    """Degree of the tangent line field of a realization (sum over curves).

    With ``d`` (and optionally ``lab``) the realization is first traced back
    into a diagram and compared; a different diagram raises
    :class:`RealizationMismatch`.
    """
    if d is not None:
        from .geometry import check_realization

        check_realization(realized, d, lab)
    total = 0.0
    for pts, cusps in zip(realized.curves, realized.cusps):
        total += turning_total(pts, sorted(cusps))
    return int(round(total))
