"""Explicit diagram families plus connected sum and splitting.

The families (nested circles, ribbon, spun bridge and braid closure) are drawn
as oriented plane curves and traced into diagrams, so each one comes with a
geometric realization.  Pass ``realization=True`` to get it back as a third
return value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .diagram import OUTER, FoldDiagram, MapComponent, Placement, Vertex, build_diagram
from .errors import DisconnectedSpec, InvalidNesting, NoOutermostEdge, NotSplittable
from .geometry import Realization, trace_realization
from .labeling import WidthLabeling, _widths_of, validate_labeling

CIRCLE_POINTS = 48
PHASE = 0.1234  # keeps sample points off the coordinate axes


def _circle(cx, cy, r, ccw=True, n=CIRCLE_POINTS):
    t = PHASE + np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    if not ccw:
        t = t[::-1]
    return np.column_stack([cx + r * np.cos(t), cy + r * np.sin(t)])


def _deltoid(cx, cy, scale=1.0, n=96):
    """Three-cusped hypocycloid traversed with its interior on the left."""
    t = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    z = scale * (2 * np.exp(1j * t) + np.exp(-2j * t))
    return np.column_stack([cx + z.real, cy + z.imag]), {0, n // 3, 2 * n // 3}


def _finish(real: Realization, realization: bool):
    arr = trace_realization(real)
    if realization:
        return arr.diagram, arr.labeling, real
    return arr.diagram, arr.labeling


# ---------------------------------------------------------------------------
# nested circles
# ---------------------------------------------------------------------------

def gen_trivial(parents=None, rising=None, realization=False):
    """Circles nested as the forest ``parents`` (parent index or None each).

    ``rising[i]`` says whether the inside of circle ``i`` is two higher than
    its outside; by default this alternates with depth, so widths alternate
    between 0 and 2.
    """
    parents = [None] if parents is None else list(parents)
    n = len(parents)
    if n == 0:
        raise InvalidNesting("need at least one circle")
    for i, p in enumerate(parents):
        if p is not None and not (isinstance(p, int) and 0 <= p < n and p != i):
            raise InvalidNesting(f"circle {i} has invalid parent {p!r}")
    depth = []
    for i in range(n):
        seen, j, k = set(), i, 0
        while parents[j] is not None:
            if j in seen:
                raise InvalidNesting(f"nesting cycle through circle {i}")
            seen.add(j)
            j = parents[j]
            k += 1
        depth.append(k)
    if rising is None:
        rising = [dep % 2 == 0 for dep in depth]
    rising = [bool(x) for x in rising]
    if len(rising) != n:
        raise InvalidNesting("one rising flag per circle is required")
    children = {i: [j for j in range(n) if parents[j] == i] for i in [None, *range(n)]}

    inside = [0] * n
    for i in sorted(range(n), key=lambda i: depth[i]):
        outside = 0 if parents[i] is None else inside[parents[i]]
        inside[i] = outside + (2 if rising[i] else -2)
        if inside[i] < 0:
            raise InvalidNesting(f"circle {i} would bound a region of width {inside[i]}")

    radius = {}

    def size(i):
        kids = children[i]
        if not kids:
            radius[i] = 1.0
        else:
            row = sum(2 * size(k) for k in kids) + 0.5 * (len(kids) - 1)
            radius[i] = row / 2 + 0.5
        return radius[i]

    curves = []
    order = []

    def place(kids, cx, cy):
        row = sum(2 * radius[k] for k in kids) + 0.5 * (len(kids) - 1)
        x = cx - row / 2
        for k in kids:
            x += radius[k]
            order.append(k)
            curves.append(_circle(x, cy, radius[k], ccw=rising[k]))
            place(children[k], x, cy)
            x += radius[k] + 0.5

    for k in children[None]:
        size(k)
    place(children[None], 0.0, 0.0)
    return _finish(Realization(curves), realization)


# ---------------------------------------------------------------------------
# spun bridge and braid closure
# ---------------------------------------------------------------------------

def spun_widths(m: int) -> list[int]:
    """Region widths from the center outwards, ending with the unbounded 0."""
    up = [2 * k for k in range(1, m + 1)]
    return up + up[-2::-1] + [0]


def gen_spun_bridge(m: int, realization=False):
    """Concentric circles whose regions read 2, 4, ..., 2m, ..., 4, 2, 0 outwards."""
    if m < 2:
        raise ValueError("bridge index must be at least 2")
    widths = spun_widths(m)
    curves = []
    for k in range(len(widths) - 1):
        curves.append(_circle(0.0, 0.0, 1.0 + k, ccw=widths[k] > widths[k + 1]))
    return _finish(Realization(curves), realization)


@dataclass(frozen=True)
class BraidSpec:
    b: int
    r: int

    def validate(self):
        if self.b < 1:
            raise ValueError("braid degree must be at least 1")
        if self.r < 0 or self.r % 2:
            raise ValueError("number of branch points must be a non-negative even number")
        if self.b == 1 and self.r:
            raise ValueError("a degree-1 braid has no branch points")


def gen_braid_closure(spec, r=None, realization=False):
    """``b`` nested rising circles with ``r`` three-cusped triangles in the middle."""
    if not isinstance(spec, BraidSpec):
        spec = BraidSpec(int(spec), int(r or 0))
    spec.validate()
    b, r = spec.b, spec.r
    spacing = 7.0
    inner = spacing * r / 2 + 3.0 if r else 1.0
    curves, cusps = [], []
    for k in range(b):
        curves.append(_circle(0.0, 0.0, inner + k))
        cusps.append(set())
    for j in range(r):
        pts, cs = _deltoid(spacing * j - spacing * (r - 1) / 2, 0.0)
        curves.append(pts)
        cusps.append(cs)
    return _finish(Realization(curves, cusps), realization)


def braid_width_bound_report(cases) -> list[dict]:
    """Record, without asserting, whether w <= 2b for each (b, r) case."""
    from .labeling import width_stats

    out = []
    for b, r in cases:
        d, lab = gen_braid_closure(BraidSpec(b, r))
        w = width_stats(d, lab).w
        out.append({"b": b, "r": r, "w": w, "within_2b": w <= 2 * b})
    return out


# ---------------------------------------------------------------------------
# ribbon diagrams
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Tube:
    start: int
    end: int
    passes: tuple[int, ...] = ()


@dataclass(frozen=True)
class RibbonSpec:
    k: int
    tubes: tuple[Tube, ...] = field(default_factory=tuple)

    def validate(self):
        if self.k < 1:
            raise DisconnectedSpec("need at least one ball")
        parent = list(range(self.k))

        def find(a):
            while parent[a] != a:
                a = parent[a]
            return a

        for i, t in enumerate(self.tubes):
            for ball in (t.start, t.end, *t.passes):
                if not 0 <= ball < self.k:
                    raise DisconnectedSpec(f"tube {i} refers to missing ball {ball}")
            parent[find(t.start)] = find(t.end)
        if len({find(a) for a in range(self.k)}) != 1:
            raise DisconnectedSpec("balls and tubes do not form a connected surface")


BALL_GAP = 4.0
TUBE_HALF = 0.08
LANE0, LANE_STEP, LEG_STEP = 2.0, 0.8, 0.15


def _offset_polyline(core: np.ndarray, dist: float) -> np.ndarray:
    """Mitered offset of an axis-aligned polyline (positive = left side)."""
    seg = np.diff(core, axis=0)
    seg = seg / np.linalg.norm(seg, axis=1)[:, None]
    normals = np.column_stack([-seg[:, 1], seg[:, 0]])
    out = [core[0] + dist * normals[0]]
    for i in range(1, len(core) - 1):
        n1, n2 = normals[i - 1], normals[i]
        out.append(core[i] + dist * (n1 + n2) / (1.0 + float(n1 @ n2)))
    out.append(core[-1] + dist * normals[-1])
    return np.asarray(out)


def _ball_center(j):
    return np.array([BALL_GAP * j, 0.0])


def _tube_core(t: Tube, lane: float, a_start: float, a_end: float, idx: int) -> np.ndarray:
    """Axis-aligned core from the top of the start ball to the top of the end ball."""
    sx = BALL_GAP * t.start + a_start
    ex = BALL_GAP * t.end + a_end
    pts = [(sx, 0.0), (sx, lane)]
    x, h = sx, lane
    for leg, j in enumerate(t.passes):
        cx = BALL_GAP * j
        near = 1.5 + LEG_STEP * idx
        side = -1.0 if x <= cx else 1.0
        ax, bx = cx + side * near, cx - side * near
        height = 0.45 - 0.9 * ((idx * 7 + leg * 3) % 10) / 10.0
        pts += [(ax, h), (ax, height), (bx, height)]
        h = lane + LEG_STEP * (leg + 1)
        pts.append((bx, h))
        x = bx
    pts += [(ex, h), (ex, 0.0)]
    clean = [pts[0]]
    for p in pts[1:]:
        if p != clean[-1]:
            clean.append(p)
    # merge collinear runs
    merged = [clean[0]]
    for i in range(1, len(clean) - 1):
        a, b, c = np.array(merged[-1]), np.array(clean[i]), np.array(clean[i + 1])
        if abs((b - a)[0] * (c - b)[1] - (b - a)[1] * (c - b)[0]) > 1e-12:
            merged.append(clean[i])
    merged.append(clean[-1])
    return np.asarray(merged, dtype=float)


def _clip_to_circle(side: np.ndarray, center: np.ndarray, at_start: bool) -> np.ndarray:
    """Move the end point of a vertical first/last leg onto the ball's circle."""
    side = side.copy()
    i = 0 if at_start else -1
    dx = side[i, 0] - center[0]
    side[i, 1] = center[1] + math.sqrt(max(0.0, 1.0 - dx * dx))
    return side


def _arc(center, a0, a1, step=2 * math.pi / CIRCLE_POINTS):
    """Points on the unit circle from angle a0 counterclockwise to a1, both included."""
    span = (a1 - a0) % (2 * math.pi)
    n = max(2, int(math.ceil(span / step)) + 1)
    ts = a0 + np.linspace(0.0, span, n)
    return np.column_stack([center[0] + np.cos(ts), center[1] + np.sin(ts)])


def gen_ribbon(spec: RibbonSpec, realization=False):
    """Balls in a row joined by tubes; tube sides and ball arcs form the fold curves.

    Tubes rise from the top of their balls to their own lane above the row;
    each pass dips the tube through a ball disk horizontally, which creates a
    width-4 patch.  Lower lanes go to shorter tubes so simple chains avoid
    tube-tube crossings; crossings between tubes, when forced, also create
    width-4 patches.
    """
    spec.validate()
    tubes = list(spec.tubes)
    order = sorted(range(len(tubes)),
                   key=lambda i: (abs(tubes[i].end - tubes[i].start) + 2 * len(tubes[i].passes), i))
    lane_of = {i: LANE0 + LANE_STEP * rank for rank, i in enumerate(order)}

    # attachment offsets: ends heading left sit left of center, lower lanes outermost
    ends: dict[int, list] = {j: [] for j in range(spec.k)}
    for i, t in enumerate(tubes):
        first = t.passes[0] if t.passes else t.end
        last = t.passes[-1] if t.passes else t.start
        dir_start = np.sign(BALL_GAP * first - BALL_GAP * t.start) or (1.0 if t.start == t.end else 0.0)
        dir_end = np.sign(BALL_GAP * last - BALL_GAP * t.end) or (-1.0 if t.start == t.end else 0.0)
        ends[t.start].append((i, "s", float(dir_start)))
        ends[t.end].append((i, "e", float(dir_end)))
    offset = {}
    for j, lst in ends.items():
        lst.sort(key=lambda e: (e[2], -lane_of[e[0]] * e[2], e[1], e[0]))
        m = len(lst)
        for pos, (i, which, _) in enumerate(lst):
            offset[(i, which)] = -0.6 + 1.2 * (pos + 0.5) / m if m > 1 else 0.0

    sides = []  # per tube: (right side along the core, left side along the core)
    gaps: dict[int, list] = {j: [] for j in range(spec.k)}
    for i, t in enumerate(tubes):
        core = _tube_core(t, lane_of[i], offset[(i, "s")], offset[(i, "e")], i)
        right = _offset_polyline(core, -TUBE_HALF)
        left = _offset_polyline(core, TUBE_HALF)
        cs, ce = _ball_center(t.start), _ball_center(t.end)
        right = _clip_to_circle(_clip_to_circle(right, cs, True), ce, False)
        left = _clip_to_circle(_clip_to_circle(left, cs, True), ce, False)
        sides.append((right, left))

        def ang(p, c):
            return math.atan2(p[1] - c[1], p[0] - c[0]) % (2 * math.pi)

        # walking the ball counterclockwise, the gap opens where we leave it
        gaps[t.start].append((ang(right[0], cs), ang(left[0], cs), ("R", i)))
        gaps[t.end].append((ang(left[-1], ce), ang(right[-1], ce), ("L", i)))

    curves = []
    if not tubes:
        for j in range(spec.k):
            curves.append(_circle(*_ball_center(j), 1.0))
        return _finish(Realization(curves), realization)

    exits = {}  # (kind, tube) -> (ball, angle where we rejoin the circle)
    for i, t in enumerate(tubes):
        exits[("R", i)] = (t.end, gaps[t.end][[g[2] for g in gaps[t.end]].index(("L", i))][1])
        exits[("L", i)] = (t.start, gaps[t.start][[g[2] for g in gaps[t.start]].index(("R", i))][1])
    for j in gaps:
        gaps[j].sort()
    used = set()
    for j0 in range(spec.k):
        for g0 in range(len(gaps[j0])):
            if (j0, g0) in used:
                continue
            pts = []
            j, g = j0, g0
            # start just after gap g0 closes, i.e. on the arc leaving it
            while (j, g) not in used:
                used.add((j, g))
                _, close, _ = gaps[j][g]
                nxt = (g + 1) % len(gaps[j])
                open_next, _, tag = gaps[j][nxt]
                pts.append(_arc(_ball_center(j), close, open_next))
                kind, i = tag
                right, left = sides[i]
                path = right if kind == "R" else left[::-1]
                pts.append(path[1:-1])
                j, close_angle = exits[tag]
                g = next(k for k, gg in enumerate(gaps[j]) if abs(gg[1] - close_angle) < 1e-12)
            curve = np.vstack(pts)
            keep = np.ones(len(curve), dtype=bool)
            keep[1:] = np.any(np.abs(np.diff(curve, axis=0)) > 1e-12, axis=1)
            curve = curve[keep]
            if np.allclose(curve[0], curve[-1]):
                curve = curve[:-1]
            curves.append(curve)
    return _finish(Realization(curves), realization)


# ---------------------------------------------------------------------------
# connected sum and splitting
# ---------------------------------------------------------------------------

def _outermost(d: FoldDiagram) -> tuple[int, int]:
    for c in d.children(OUTER):
        for x in d.darts(c):
            if d.face_right(c, x) == d.outer_face:
                return c, x
    raise NoOutermostEdge("no edge borders the unbounded face")


def _carry_widths(new: FoldDiagram, old_width_of) -> WidthLabeling:
    widths = [None] * len(new.faces)
    for c, x in new.iter_darts():
        w = old_width_of(c, x)
        f = new.face_right(c, x)
        if widths[f] is None:
            widths[f] = w
        elif widths[f] != w:
            raise NotSplittable("regions with different widths were merged")
    return validate_labeling(new, widths)


def connected_sum(d1: FoldDiagram, lab1, d2: FoldDiagram, lab2):
    """Place ``d2`` beside ``d1`` and join an outermost fold edge of each.

    The two edges are re-paired crosswise, which merges the two width-2
    regions they bound; w is the larger of the two and chi drops by 2.
    """
    w1, w2 = _widths_of(lab1), _widths_of(lab2)
    c1, u1 = _outermost(d1)
    c2, u2 = _outermost(d2)
    off = max(d1.darts(c1)) + 1
    voff = max(v.id for v in d1.components[c1].vertices) + 1
    a1 = d1.alpha(c1, u1)
    a2 = d2.alpha(c2, u2) + off
    v2 = u2 + off

    merged_vertices = list(d1.components[c1].vertices)
    merged_vertices += [Vertex(v.id + voff, v.kind, tuple(x + off for x in v.darts), v.wedge_corner)
                        for v in d2.components[c2].vertices]
    merged_edges = [e for e in d1.components[c1].edges if u1 not in e]
    merged_edges += [(a + off, b + off) for a, b in d2.components[c2].edges if u2 not in (a, b)]
    merged_edges += [(u1, a2), (v2, a1)]

    comps = list(d1.components)
    comps[c1] = MapComponent(tuple(merged_vertices), tuple(merged_edges))
    index2 = {}
    for i, comp in enumerate(d2.components):
        if i == c2:
            index2[i] = c1
        else:
            index2[i] = len(comps)
            comps.append(comp)
    places = list(d1.placements)
    places[c1] = Placement(OUTER, None, u1)
    extra = [None] * (len(comps) - len(places))
    for i, p in enumerate(d2.placements):
        if i == c2:
            continue
        if p.parent is OUTER:
            q = Placement(OUTER, None, p.outer_face)
        elif p.parent == c2:
            q = Placement(c1, p.parent_face + off, p.outer_face)
        else:
            q = Placement(index2[p.parent], p.parent_face, p.outer_face)
        extra[index2[i] - len(places)] = q
    new = build_diagram((comps, places + extra))
    back2 = {v: k for k, v in index2.items()}

    def width_of(c, x):
        if c == c1:
            if x < off:
                return w1[d1.face_right(c1, x)]
            return w2[d2.face_right(c2, x - off)]
        if c < len(d1.components):
            return w1[d1.face_right(c, x)]
        return w2[d2.face_right(back2[c], x)]

    return new, _carry_widths(new, width_of)


def _loose_children(d: FoldDiagram, c: int, u1: int) -> list[int]:
    """Children of ``c`` sitting in one of the two faces a cut at ``u1`` divides."""
    cut = {d.local_face(c, u1), d.local_face(c, d.alpha(c, u1))}
    return [i for i, p in enumerate(d.placements) if p.parent == c and p.parent_face in cut]


MAX_LOOSE = 10


def candidate_splits(d: FoldDiagram, lab):
    """Every way to cut a corridor, as (component, dart, dart, moved children).

    Components nested directly in a face being cut may end up on either side;
    each choice is listed, with those in ``moved`` leaving the side their
    placement face points to.  Past MAX_LOOSE such children only the default
    side is listed.
    """
    widths = _widths_of(lab)
    out = []
    for c in range(len(d.components)):
        outer_side = [x for x in d.darts(c) if d.face_right(c, x) == d.outer_face
                      and widths[d.face_left(c, x)] == 2]
        for i, u1 in enumerate(outer_side):
            for u2 in outer_side[i + 1:]:
                if d.local_face(c, u1) != d.local_face(c, u2):
                    continue
                if d.local_face(c, d.alpha(c, u1)) != d.local_face(c, d.alpha(c, u2)):
                    continue
                loose = _loose_children(d, c, u1)
                if len(loose) > MAX_LOOSE:
                    loose = []
                for mask in range(1 << len(loose)):
                    moved = frozenset(ch for k, ch in enumerate(loose) if mask >> k & 1)
                    out.append((c, u1, u2, moved))
    return out


def split_at(d: FoldDiagram, lab, c: int, u1: int, u2: int, moved=frozenset()):
    """Cut the width-2 corridor between edge-sides ``u1`` and ``u2`` of component ``c``.

    ``moved`` lists children of ``c`` in a cut face that go to the other side.
    """
    widths = _widths_of(lab)
    a1, a2 = d.alpha(c, u1), d.alpha(c, u2)
    comp = d.components[c]
    edges = [e for e in comp.edges if u1 not in e and u2 not in e] + [(u1, a2), (u2, a1)]
    alpha = {}
    for a, b in edges:
        alpha[a], alpha[b] = b, a
    piece_of = {}
    for start, tag in ((u1, 0), (u2, 1)):
        if start in piece_of:
            continue
        stack = [start]
        piece_of[start] = tag
        while stack:
            x = stack.pop()
            for y in (d.sigma(c, x), alpha[x]):
                if y not in piece_of:
                    piece_of[y] = tag
                    stack.append(y)
    if len(piece_of) != len(d.darts(c)) or piece_of[u2] == 0:
        raise NotSplittable("cutting this corridor does not separate the diagram")

    def owner(i):
        """Piece (0 or 1) a component other than ``c`` belongs to."""
        j = i
        while True:
            p = d.placements[j]
            if p.parent is OUTER:
                return 0
            if p.parent == c:
                return piece_of[p.parent_face] ^ (j in moved)
            j = p.parent

    outer_orbit = set(d.orbit(c, d.placements[c].outer_face))
    result = []
    for tag in (0, 1):
        darts = {x for x, t in piece_of.items() if t == tag}
        verts = tuple(v for v in comp.vertices if v.darts[0] in darts)
        pedges = tuple(e for e in edges if e[0] in darts)
        members = [i for i in range(len(d.components)) if i != c and owner(i) == tag]
        index = {c: 0}
        for k, i in enumerate(members):
            index[i] = k + 1
        comps = [MapComponent(verts, pedges)] + [d.components[i] for i in members]
        outer_dart = min(x for x in darts if x in outer_orbit)
        places = [Placement(OUTER, None, outer_dart)]
        for i in members:
            p = d.placements[i]
            if p.parent is OUTER:
                places.append(Placement(OUTER, None, p.outer_face))
            elif p.parent == c and p.parent_face not in darts:
                # moved child: use this side's half of the same face
                face = d.local_face(c, p.parent_face)
                pf = min(x for x in darts if d.local_face(c, x) == face)
                places.append(Placement(0, pf, p.outer_face))
            else:
                places.append(Placement(index[p.parent], p.parent_face, p.outer_face))
        new = build_diagram((comps, places))
        inverse = {v: k for k, v in index.items()}

        def width_of(cc, x, inverse=inverse):
            return widths[d.face_right(inverse[cc], x)]

        result.append((new, _carry_widths(new, width_of)))
    return result


def split(d: FoldDiagram, lab):
    """Split along the first corridor cut; raises :class:`NotSplittable` if none."""
    cands = candidate_splits(d, lab)
    if not cands:
        raise NotSplittable("no width-2 corridor joins two parts of the diagram")
    return split_at(d, lab, *cands[0])
