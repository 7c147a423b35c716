"""Geometric realizations of fold diagrams.

A :class:`Realization` is a set of closed polylines, each oriented so that
the higher face lies on its left, with some polyline vertices marked as
cusps.  :func:`trace_realization` turns one into a diagram and labeling;
:func:`realize` goes the other way using a straight-line planar drawing.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from networkx.algorithms.planar_drawing import combinatorial_embedding_to_pos

from .diagram import (
    CROSSING,
    CUSP,
    OUTER,
    SMOOTH,
    FoldDiagram,
    MapComponent,
    Placement,
    Vertex,
    build_diagram,
    canonical_code,
)
from .errors import FoldDiagramError, RealizationMismatch, RealizationUnavailable
from .labeling import WidthLabeling, _widths_of, validate_labeling


@dataclass
class Realization:
    curves: list[np.ndarray]
    cusps: list[frozenset[int]] = field(default_factory=list)

    def __post_init__(self):
        curves = []
        for c in self.curves:
            c = np.asarray(c, dtype=float)
            if len(c) > 1 and np.array_equal(c[0], c[-1]):
                c = c[:-1]
            curves.append(c)
        self.curves = curves
        if not self.cusps:
            self.cusps = [frozenset() for _ in self.curves]
        self.cusps = [frozenset(int(i) for i in s) for s in self.cusps]
        if len(self.cusps) != len(self.curves):
            raise ValueError("one cusp set per curve is required")

    def bounds(self) -> tuple[float, float, float, float]:
        pts = np.vstack(self.curves)
        return (float(pts[:, 0].min()), float(pts[:, 1].min()),
                float(pts[:, 0].max()), float(pts[:, 1].max()))


@dataclass
class Arrangement:
    """A traced realization: the diagram plus where its pieces sit in the plane."""

    diagram: FoldDiagram
    labeling: WidthLabeling | None
    dart_paths: dict[tuple[int, int], np.ndarray]
    vertex_points: dict[tuple[int, int], np.ndarray]


class DegenerateRealization(FoldDiagramError):
    pass


# ---------------------------------------------------------------------------
# tracing curves into a diagram
# ---------------------------------------------------------------------------

def _proper_intersections(a0, a1, scale):
    """Interior crossings of every segment pair; returns (i, j, t, u) tuples."""
    eps = 1e-10
    n = len(a0)
    out = []
    r_all = a1 - a0
    chunk = 256
    for lo in range(0, n, chunk):
        hi = min(n, lo + chunk)
        p = a0[lo:hi, None, :]
        r = r_all[lo:hi, None, :]
        q = a0[None, :, :]
        s = r_all[None, :, :]
        denom = r[..., 0] * s[..., 1] - r[..., 1] * s[..., 0]
        qp = q - p
        tnum = qp[..., 0] * s[..., 1] - qp[..., 1] * s[..., 0]
        unum = qp[..., 0] * r[..., 1] - qp[..., 1] * r[..., 0]
        with np.errstate(divide="ignore", invalid="ignore"):
            t = tnum / denom
            u = unum / denom
        nondeg = np.abs(denom) > eps * scale * scale
        inside_t = (t > eps) & (t < 1 - eps)
        inside_u = (u > eps) & (u < 1 - eps)
        idx_i, idx_j = np.nonzero(nondeg & inside_t & inside_u)
        for ii, jj in zip(idx_i, idx_j):
            i = lo + int(ii)
            if i < int(jj):
                out.append((i, int(jj), float(t[ii, jj]), float(u[ii, jj])))
        # an endpoint sitting on the interior of another segment is a tangency
        near_t = (np.abs(t) <= eps) | (np.abs(t - 1) <= eps)
        near_u = (np.abs(u) <= eps) | (np.abs(u - 1) <= eps)
        bad = nondeg & ((near_t & inside_u) | (near_u & inside_t))
        if bad.any():
            ii, jj = np.argwhere(bad)[0]
            raise DegenerateRealization(f"segment {lo + ii} touches segment {jj} at an endpoint")
    return out


def _angle(v) -> float:
    return math.atan2(v[1], v[0])


def trace_realization(real: Realization, labeled: bool = True) -> Arrangement:
    """Build the diagram (and labeling, if ``labeled``) drawn by ``real``."""
    curves = real.curves
    if not curves:
        raise DegenerateRealization("realization has no curves")
    allpts = np.vstack(curves)
    scale = float(np.ptp(allpts, axis=0).max()) or 1.0
    seg_curve, seg_index = [], []
    for ci, pts in enumerate(curves):
        seg_curve.extend([ci] * len(pts))
        seg_index.extend(range(len(pts)))
    a0 = allpts
    a1 = np.vstack([np.roll(c, -1, axis=0) for c in curves])
    hits = _proper_intersections(a0, a1, scale)

    # events along each curve: [position, tag, crossing id, point, out dir, in dir]
    events: list[list] = [[] for _ in curves]
    crossing_id = 0
    for i, j, t, u in hits:
        ci, si = seg_curve[i], seg_index[i]
        cj, sj = seg_curve[j], seg_index[j]
        x = a0[i] + t * (a1[i] - a0[i])
        events[ci].append([si + t, "x", crossing_id, x, a1[i] - a0[i], a0[i] - a1[i]])
        events[cj].append([sj + u, "x", crossing_id, x, a1[j] - a0[j], a0[j] - a1[j]])
        crossing_id += 1
    # polyline vertices shared by two passes
    where = defaultdict(list)
    for ci, pts in enumerate(curves):
        for k, p in enumerate(pts):
            where[(float(p[0]), float(p[1]))].append((ci, k))
    for key, occ in sorted(where.items()):
        if len(occ) == 1:
            continue
        if len(occ) > 2:
            raise DegenerateRealization(f"{len(occ)} passes meet at {key}")
        for ci, k in occ:
            if k in real.cusps[ci]:
                raise DegenerateRealization("a cusp lies on another strand")
            pts = curves[ci]
            p = pts[k]
            events[ci].append([float(k), "x", crossing_id, p,
                               pts[(k + 1) % len(pts)] - p, pts[k - 1] - p])
        crossing_id += 1
    for ci, pts in enumerate(curves):
        for k in sorted(real.cusps[ci]):
            p = pts[k]
            events[ci].append([float(k), "c", None, p, pts[(k + 1) % len(pts)] - p, pts[k - 1] - p])
        if not events[ci]:
            p = pts[0]
            events[ci].append([0.0, "s", None, p, pts[1] - p, pts[-1] - p])
        events[ci].sort(key=lambda e: e[0])

    # curves linked by crossings form one map component
    parent = list(range(len(curves)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    by_crossing = defaultdict(list)
    for ci, evs in enumerate(events):
        for k, e in enumerate(evs):
            if e[1] == "x":
                by_crossing[e[2]].append((ci, k))
    for occ in by_crossing.values():
        if len(occ) != 2:
            raise DegenerateRealization("crossing without exactly two passes")
        parent[find(occ[0][0])] = find(occ[1][0])
    groups = defaultdict(list)
    for ci in range(len(curves)):
        groups[find(ci)].append(ci)
    comp_curves = [groups[r] for r in sorted(groups, key=lambda r: min(groups[r]))]
    comp_of_curve = {ci: n for n, cs in enumerate(comp_curves) for ci in cs}

    # darts: every event owns an outgoing and an incoming dart
    counters = [0] * len(comp_curves)
    out_dart, in_dart = {}, {}
    for ci, evs in enumerate(events):
        c = comp_of_curve[ci]
        for k in range(len(evs)):
            out_dart[(ci, k)] = counters[c]
            in_dart[(ci, k)] = counters[c] + 1
            counters[c] += 2

    vertices: list[list[Vertex]] = [[] for _ in comp_curves]
    vpoint: dict[tuple[int, int], np.ndarray] = {}
    handled = set()
    for ci, evs in enumerate(events):
        c = comp_of_curve[ci]
        for k, e in enumerate(evs):
            if (ci, k) in handled:
                continue
            vid = len(vertices[c])
            if e[1] == "x":
                passes = by_crossing[e[2]]
                rays = []
                for cj, kj in passes:
                    ej = events[cj][kj]
                    rays.append((_angle(ej[4]), out_dart[(cj, kj)]))
                    rays.append((_angle(ej[5]), in_dart[(cj, kj)]))
                    handled.add((cj, kj))
                rays.sort()
                darts = tuple(dd for _, dd in rays)
                for cj, kj in passes:
                    if abs(darts.index(out_dart[(cj, kj)]) - darts.index(in_dart[(cj, kj)])) != 2:
                        raise DegenerateRealization("strands touch without crossing")
                vertices[c].append(Vertex(vid, CROSSING, darts))
            elif e[1] == "c":
                darts = (in_dart[(ci, k)], out_dart[(ci, k)])
                sweep = (_angle(e[4]) - _angle(e[5])) % (2 * math.pi)
                vertices[c].append(Vertex(vid, CUSP, darts, 0 if sweep < math.pi else 1))
                handled.add((ci, k))
            else:
                vertices[c].append(Vertex(vid, SMOOTH, (in_dart[(ci, k)], out_dart[(ci, k)])))
                handled.add((ci, k))
            vpoint[(c, vid)] = np.asarray(e[3], dtype=float)

    # edges and their polylines
    edges: list[list[tuple[int, int]]] = [[] for _ in comp_curves]
    paths: dict[tuple[int, int], np.ndarray] = {}
    for ci, evs in enumerate(events):
        c = comp_of_curve[ci]
        pts = curves[ci]
        n = len(pts)
        for k, e in enumerate(evs):
            nxt = evs[(k + 1) % len(evs)]
            a, b = out_dart[(ci, k)], in_dart[(ci, (k + 1) % len(evs))]
            edges[c].append((a, b))
            start, end = e[0], nxt[0]
            if end <= start:
                end += n
            idx = [m for m in range(math.floor(start) + 1, math.ceil(end))]
            poly = [e[3]] + [pts[m % n] for m in idx] + [nxt[3]]
            poly = np.asarray(poly, dtype=float)
            paths[(c, a)] = poly
            paths[(c, b)] = poly[::-1]

    comps = [MapComponent(tuple(vs), tuple(es)) for vs, es in zip(vertices, edges)]
    places = _place_components(comps, paths)
    d = build_diagram((comps, places))
    lab = None
    if labeled:
        lab = _labeling_from_orientation(d)
    return Arrangement(d, lab, paths, vpoint)


def _labeling_from_orientation(d: FoldDiagram) -> WidthLabeling:
    forward = []
    for c, comp in enumerate(d.components):
        for a, b in comp.edges:
            forward.append((c, a))  # edges were created as (outgoing, incoming)
    widths = [None] * len(d.faces)
    widths[d.outer_face] = 0
    adj = defaultdict(list)
    for c, x in forward:
        r, l = d.face_right(c, x), d.face_left(c, x)
        adj[r].append((l, 2))
        adj[l].append((r, -2))
    stack = [d.outer_face]
    while stack:
        f = stack.pop()
        for g, step in adj[f]:
            if widths[g] is None:
                widths[g] = widths[f] + step
                stack.append(g)
            elif widths[g] != widths[f] + step:
                raise DegenerateRealization("curve orientations do not induce consistent widths")
    return validate_labeling(d, widths)


def _signed_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _winding(point, poly: np.ndarray) -> int:
    """Winding number of a closed polyline around ``point``."""
    rel = poly - point
    ang = np.arctan2(rel[:, 1], rel[:, 0])
    diff = np.diff(np.concatenate([ang, ang[:1]]))
    diff = (diff + np.pi) % (2 * np.pi) - np.pi
    return int(round(diff.sum() / (2 * np.pi)))


def _place_components(comps: list[MapComponent], paths) -> list[Placement]:
    local = [build_diagram(([comp], None)) for comp in comps]
    circuits = []  # per component: {local face: (area, polygon)}
    for c, ld in enumerate(local):
        faces = {}
        for lf in ld.local_faces(0):
            pieces = []
            x = lf
            while True:
                pieces.append(paths[(c, x)][:-1])
                x = ld.sigma(0, ld.alpha(0, x))
                if x == lf:
                    break
            poly = np.vstack(pieces)
            faces[lf] = (_signed_area(poly), poly)
        circuits.append(faces)
    outer_of = []
    for c, faces in enumerate(circuits):
        positive = [lf for lf, (area, _) in faces.items() if area > 0]
        if len(positive) != 1:
            raise DegenerateRealization(f"component {c} has {len(positive)} counterclockwise face circuits")
        outer_of.append(positive[0])
    if len(comps) == 1:
        return [Placement(OUTER, None, outer_of[0])]
    containers = []
    for a in range(len(comps)):
        point = paths[(a, comps[a].edges[0][0])]
        point = 0.5 * (point[0] + point[1])
        found = []
        for b in range(len(comps)):
            if b == a:
                continue
            for lf, (area, poly) in circuits[b].items():
                if area < 0 and _winding(point, poly) != 0:
                    found.append((b, lf))
                    break
        containers.append(found)
    places = []
    for a in range(len(comps)):
        if not containers[a]:
            places.append(Placement(OUTER, None, outer_of[a]))
            continue
        b, lf = max(containers[a], key=lambda bf: len(containers[bf[0]]))
        places.append(Placement(b, lf, outer_of[a]))
    return places


def check_realization(real: Realization, d: FoldDiagram, lab=None) -> Arrangement:
    """Trace ``real`` and raise :class:`RealizationMismatch` unless it draws ``d``."""
    try:
        arr = trace_realization(real, labeled=lab is not None)
    except FoldDiagramError as exc:
        raise RealizationMismatch(f"realization cannot be traced: {exc}") from None
    if lab is None:
        same = canonical_code(arr.diagram) == canonical_code(d)
    else:
        same = (canonical_code(arr.diagram, widths=arr.labeling.widths)
                == canonical_code(d, widths=_widths_of(lab)))
    if not same:
        raise RealizationMismatch("traced realization differs from the diagram")
    return arr


# ---------------------------------------------------------------------------
# drawing a diagram
# ---------------------------------------------------------------------------

def _sub_nodes(d: FoldDiagram, c: int, x: int):
    """The two subdivision nodes on the edge of ``x``, ordered away from x's vertex."""
    y = d.alpha(c, x)
    lo = min(x, y)
    first, second = ("s", c, lo, 1), ("s", c, lo, 2)
    return (first, second) if x == lo else (second, first)


def _vnode(d: FoldDiagram, c: int, x: int):
    return ("v", c, d.vertex_of(c, x).id)


def realize(d: FoldDiagram, lab, verify: bool = True) -> Realization:
    """Draw ``d`` with straight segments and smoothed cusps.

    The curves follow the orientation induced by ``lab``.  With ``verify``
    the drawing is traced back and compared with ``d``; a drawing that does
    not match raises :class:`RealizationUnavailable`.
    """
    from .invariants import induced_orientation

    orient = induced_orientation(d, lab)
    rot: dict = {}
    sub_side: dict = {}  # sub node -> [next, left list, prev, right list]
    for c, comp in enumerate(d.components):
        for v in comp.vertices:
            rot[("v", c, v.id)] = [_sub_nodes(d, c, x)[0] for x in v.darts]
        for a, b in comp.edges:
            a, b = min(a, b), max(a, b)
            s1, s2 = _sub_nodes(d, c, a)
            va, vb = _vnode(d, c, a), _vnode(d, c, b)
            # walking a -> b: s1 has prev va and next s2
            sub_side[s1] = [s2, [], va, []]
            sub_side[s2] = [vb, [], s1, []]

    def attach_right(c, x, other):
        # side lists are stored relative to walking from the smaller dart
        node = _sub_nodes(d, c, x)[0]
        side = 3 if x < d.alpha(c, x) else 1
        sub_side[node][side].append(other)
        return node, side

    roots = []
    for c, p in enumerate(d.placements):
        y = d.orbit(c, p.outer_face)[0]
        child_node, child_side = attach_right(c, y, None)
        if p.parent is OUTER:
            roots.append((child_node, child_side))
            continue
        x = d.orbit(p.parent, p.parent_face)[0]
        parent_node, _ = attach_right(p.parent, x, child_node)
        # patch the placeholder on the child side
        lst = sub_side[child_node][child_side]
        lst[lst.index(None)] = parent_node
    # a fan-triangulated frame much longer than any other face becomes the
    # unbounded face of the drawing
    total = len(rot) + len(sub_side)
    m = 3 * total + 10
    frame = [("f", i) for i in range(m)]
    for node, side in roots:
        lst = sub_side[node][side]
        lst[lst.index(None)] = frame[0]
    rot[frame[0]] = [frame[1]] + [node for node, _ in roots] + frame[2:m - 1] + [frame[m - 1]]
    rot[frame[1]] = [frame[2], frame[0]]
    for i in range(2, m - 1):
        rot[frame[i]] = [frame[i + 1], frame[0], frame[i - 1]]
    rot[frame[m - 1]] = [frame[0], frame[m - 2]]
    for node, (nxt, left, prev, right) in sub_side.items():
        rot[node] = [nxt] + left + [prev] + right

    emb = nx.PlanarEmbedding()
    emb.set_data({node: list(reversed(nbrs)) for node, nbrs in rot.items()})
    try:
        emb.check_structure()
    except nx.NetworkXException as exc:
        raise RealizationUnavailable(f"could not build a plane embedding: {exc}") from None
    pos = combinatorial_embedding_to_pos(emb, fully_triangulate=False)
    pos = {k: np.asarray(v, dtype=float) for k, v in pos.items()}
    # the drawing may come out mirrored; compare the frame hub's rotation
    hub = frame[0]
    want = rot[hub]
    got = sorted(want, key=lambda nb: _angle(pos[nb] - pos[hub]))
    k = got.index(want[0])
    if got[k:] + got[:k] != want:
        for node in pos:
            pos[node][0] = -pos[node][0]

    curves, cusp_sets = [], []
    for strand in orient.strands:
        pts, cusp_idx, cusp_darts = [], [], []
        c = strand.component
        for x in strand.darts:
            v = d.vertex_of(c, x)
            if v.kind == CUSP:
                cusp_idx.append(len(pts))
                cusp_darts.append(v)
            pts.append(pos[("v", c, v.id)])
            s1, s2 = _sub_nodes(d, c, x)
            pts.append(pos[s1])
            pts.append(pos[s2])
        curves.append(np.asarray(pts))
        cusp_sets.append((cusp_idx, cusp_darts, c))
    real = _smooth_cusps(d, curves, cusp_sets, pos)
    lo = np.vstack(real.curves).min(axis=0)
    span = float(np.ptp(np.vstack(real.curves), axis=0).max()) or 1.0
    real = Realization([(cv - lo) * (100.0 / span) for cv in real.curves], real.cusps)
    if verify:
        try:
            check_realization(real, d, lab)
        except RealizationMismatch as exc:
            raise RealizationUnavailable(f"drawing does not trace back to the diagram: {exc}") from None
    return real


def _dist_point_segments(p, a, b) -> float:
    ab = b - a
    denom = (ab * ab).sum(axis=1)
    denom[denom == 0] = 1.0
    t = np.clip(((p - a) * ab).sum(axis=1) / denom, 0.0, 1.0)
    proj = a + t[:, None] * ab
    return float(np.sqrt(((proj - p) ** 2).sum(axis=1)).min()) if len(a) else math.inf


def _smooth_cusps(d: FoldDiagram, curves, cusp_sets, pos) -> Realization:
    """Replace each sharp cusp corner by two Bezier arcs tangent to the wedge bisector."""
    seg_a = np.vstack(curves)
    seg_b = np.vstack([np.roll(cv, -1, axis=0) for cv in curves])
    out_curves, out_cusps = [], []
    samples = np.linspace(0.0, 1.0, 17)[:-1]
    for pts, (idx, verts, c) in zip(curves, cusp_sets):
        if not idx:
            out_curves.append(pts)
            out_cusps.append(frozenset())
            continue
        n = len(pts)
        new, new_cusps = [], []
        for i in range(n):
            if i not in idx:
                new.append(pts[i])
                continue
            v = verts[idx.index(i)]
            p, a, b = pts[i], pts[i - 1], pts[(i + 1) % n]
            keep = ~(np.all(seg_a == p, axis=1) | np.all(seg_b == p, axis=1))
            clearance = _dist_point_segments(p, seg_a[keep], seg_b[keep])
            r = 0.3 * min(np.linalg.norm(a - p), np.linalg.norm(b - p), clearance)
            k = v.wedge_corner
            ends = [pos[_sub_nodes(d, c, x)[0]] - p for x in v.darts]
            t0, t1 = _angle(ends[k]), _angle(ends[1 - k])
            sweep = (t1 - t0) % (2 * math.pi)
            mid = t0 + sweep / 2
            mhat = np.array([math.cos(mid), math.sin(mid)])
            ctrl = p + 0.5 * r * mhat
            pa = p + r * (a - p) / np.linalg.norm(a - p)
            pb = p + r * (b - p) / np.linalg.norm(b - p)
            for t in samples:
                new.append((1 - t) ** 2 * pa + 2 * t * (1 - t) * ctrl + t * t * p)
            new_cusps.append(len(new))
            new.append(p)
            for t in samples[::-1][:-1]:
                new.append((1 - t) ** 2 * pb + 2 * t * (1 - t) * ctrl + t * t * p)
            new.append(pb)
        out_curves.append(np.asarray(new))
        out_cusps.append(frozenset(new_cusps))
    return Realization(out_curves, out_cusps)
