"""Fold diagrams as embedded planar maps.

A fold diagram is a list of connected planar maps (components) whose vertices
are crossings (degree 4), cusps or smooth markers (degree 2), together with a
placement forest saying in which face of which other component each component
sits.  Darts are integers unique within their component; every vertex lists its
darts counterclockwise and every edge pairs two darts.

Faces of a component are the orbits of ``next(d) = sigma(alpha(d))`` where
``sigma`` rotates counterclockwise at a vertex and ``alpha`` is the edge
involution.  The orbit of ``d`` is the face on the right of ``d`` when ``d`` is
walked away from its vertex; a local face is named by its smallest dart.
Corner ``k`` of a vertex lies between ``darts[k]`` and ``darts[k + 1]`` and
belongs to the face of ``darts[k + 1]``.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from . import kernels
from .errors import (
    BadDegree,
    CyclicPlacement,
    DanglingPlacementFace,
    DisconnectedComponent,
    EmptyDiagram,
    EulerFailure,
    FoldDiagramError,
    InvalidVertex,
    UnpairedDart,
)

CROSSING = "crossing"
CUSP = "cusp"
SMOOTH = "smooth"
DEGREE = {CROSSING: 4, CUSP: 2, SMOOTH: 2}
OUTER = None


@dataclass(frozen=True)
class Vertex:
    id: int
    kind: str
    darts: tuple[int, ...]
    wedge_corner: int | None = None


@dataclass(frozen=True)
class MapComponent:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[int, int], ...]

    @property
    def darts(self) -> list[int]:
        return sorted(d for v in self.vertices for d in v.darts)


@dataclass(frozen=True)
class Placement:
    """Where a component sits.

    ``parent`` is a component index or ``OUTER``; ``parent_face`` is a local
    face id of the parent; ``outer_face`` is the local face of this component
    that merges with the parent's face (defaults to the face of its smallest
    dart).
    """

    parent: int | None = OUTER
    parent_face: int | None = None
    outer_face: int | None = None


@dataclass(frozen=True)
class Face:
    id: int
    bounded: bool
    circuits: tuple[tuple[int, int], ...]
    euler_c: int
    corners: tuple[tuple[int, int, int], ...]

    @property
    def boundary_circuits(self) -> int:
        return len(self.circuits)


@dataclass(frozen=True)
class FoldComponent:
    """One immersed circle of the singular image.

    ``darts`` interleaves outgoing and incoming darts along the strand:
    ``darts[0::2]`` are walked forward, ``darts[1::2]`` are their partners.
    """

    index: int
    component: int
    darts: tuple[int, ...]

    @property
    def forward(self) -> tuple[int, ...]:
        return self.darts[0::2]

    @property
    def backward(self) -> tuple[int, ...]:
        return self.darts[1::2]

    def __len__(self):
        return len(self.darts)


class _ComponentData:
    """Dense permutation arrays and face orbits of one component."""

    __slots__ = ("darts", "index", "sigma", "alpha", "opposite", "vertex_of",
                 "slot", "face", "faces", "orbits")

    def __init__(self, comp: MapComponent):
        self.darts = tuple(comp.darts)
        self.index = {d: i for i, d in enumerate(self.darts)}
        n = len(self.darts)
        self.sigma = [0] * n
        self.opposite = [0] * n
        self.vertex_of = [0] * n
        self.slot = [0] * n
        for vi, v in enumerate(comp.vertices):
            k = len(v.darts)
            for j, d in enumerate(v.darts):
                i = self.index[d]
                self.sigma[i] = self.index[v.darts[(j + 1) % k]]
                self.opposite[i] = self.index[v.darts[(j + k // 2) % k]]
                self.vertex_of[i] = vi
                self.slot[i] = j
        self.alpha = [0] * n
        for a, b in comp.edges:
            self.alpha[self.index[a]] = self.index[b]
            self.alpha[self.index[b]] = self.index[a]
        labels, count = kernels.face_orbits(self.sigma, self.alpha)
        members: list[list[int]] = [[] for _ in range(count)]
        for i, f in enumerate(labels):
            members[f].append(self.darts[i])
        names = [min(m) for m in members]
        self.face = [names[f] for f in labels]
        self.faces = tuple(sorted(names))
        self.orbits = {names[f]: tuple(m) for f, m in enumerate(members)}


class FoldDiagram:
    """A validated, immutable fold diagram.  Build with :func:`build_diagram`."""

    __slots__ = ("components", "placements", "_data", "faces", "outer_face",
                 "_gface", "_strands")

    def __init__(self, components, placements, data, faces, outer_face, gface):
        self.components: tuple[MapComponent, ...] = components
        self.placements: tuple[Placement, ...] = placements
        self._data: tuple[_ComponentData, ...] = data
        self.faces: tuple[Face, ...] = faces
        self.outer_face: int = outer_face
        self._gface: dict[tuple[int, int], int] = gface
        self._strands = None

    # -- identity -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FoldDiagram):
            return NotImplemented
        return (self.components, self.placements) == (other.components, other.placements)

    def __hash__(self):
        return hash((self.components, self.placements))

    def __repr__(self):
        return (f"FoldDiagram(components={len(self.components)}, faces={len(self.faces)}, "
                f"crossings={self.crossings}, cusps={self.cusps})")

    # -- dart level access ----------------------------------------------------
    def darts(self, c: int) -> tuple[int, ...]:
        return self._data[c].darts

    def iter_darts(self) -> Iterator[tuple[int, int]]:
        for c, data in enumerate(self._data):
            for d in data.darts:
                yield c, d

    @property
    def num_darts(self) -> int:
        return sum(len(data.darts) for data in self._data)

    def sigma(self, c: int, d: int) -> int:
        data = self._data[c]
        return data.darts[data.sigma[data.index[d]]]

    def alpha(self, c: int, d: int) -> int:
        data = self._data[c]
        return data.darts[data.alpha[data.index[d]]]

    def opposite(self, c: int, d: int) -> int:
        data = self._data[c]
        return data.darts[data.opposite[data.index[d]]]

    def vertex_of(self, c: int, d: int) -> Vertex:
        data = self._data[c]
        return self.components[c].vertices[data.vertex_of[data.index[d]]]

    def slot(self, c: int, d: int) -> int:
        data = self._data[c]
        return data.slot[data.index[d]]

    def local_face(self, c: int, d: int) -> int:
        data = self._data[c]
        return data.face[data.index[d]]

    def local_faces(self, c: int) -> tuple[int, ...]:
        return self._data[c].faces

    def orbit(self, c: int, local_face: int) -> tuple[int, ...]:
        return self._data[c].orbits[local_face]

    def global_face(self, c: int, local_face: int) -> int:
        return self._gface[(c, local_face)]

    def face_right(self, c: int, d: int) -> int:
        """Global face on the right of ``d`` walked away from its vertex."""
        return self._gface[(c, self.local_face(c, d))]

    def face_left(self, c: int, d: int) -> int:
        return self.face_right(c, self.alpha(c, d))

    def corner_faces(self, c: int, v: Vertex) -> list[int]:
        k = len(v.darts)
        return [self.face_right(c, v.darts[(j + 1) % k]) for j in range(k)]

    def edge_of(self, c: int, d: int) -> tuple[int, int]:
        e = self.alpha(c, d)
        return (d, e) if d < e else (e, d)

    # -- counts -------------------------------------------------------------
    def _count(self, kind):
        return sum(1 for comp in self.components for v in comp.vertices if v.kind == kind)

    @property
    def crossings(self) -> int:
        return self._count(CROSSING)

    @property
    def cusps(self) -> int:
        return self._count(CUSP)

    def fold_components(self) -> tuple[FoldComponent, ...]:
        if self._strands is None:
            strands = []
            for c, data in enumerate(self._data):
                for seq in kernels.strand_orbits(data.opposite, data.alpha):
                    strands.append(FoldComponent(len(strands), c,
                                                 tuple(data.darts[i] for i in seq)))
            self._strands = tuple(strands)
        return self._strands

    def children(self, c: int | None) -> list[int]:
        return [i for i, p in enumerate(self.placements) if p.parent == c]

    def to_spec(self) -> dict:
        """Plain-data description accepted back by :func:`build_diagram`."""
        return {
            "components": [
                {
                    "vertices": [
                        {"id": v.id, "kind": v.kind, "darts": list(v.darts),
                         **({"wedge_corner": v.wedge_corner} if v.kind == CUSP else {})}
                        for v in comp.vertices
                    ],
                    "edges": [list(e) for e in comp.edges],
                }
                for comp in self.components
            ],
            "placements": [
                {"parent": p.parent, "parent_face": p.parent_face, "outer_face": p.outer_face}
                for p in self.placements
            ],
        }


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------

def _parse_vertex(raw, where) -> Vertex:
    if isinstance(raw, Vertex):
        return raw
    try:
        kind = raw["kind"]
        darts = tuple(int(d) for d in raw["darts"])
        vid = int(raw.get("id", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidVertex(f"malformed vertex ({exc})", where) from None
    wedge = raw.get("wedge", raw.get("wedge_corner"))
    return Vertex(vid, kind, darts, None if wedge is None else int(wedge))


def _parse_component(raw, where) -> MapComponent:
    if isinstance(raw, MapComponent):
        return raw
    try:
        verts = raw["vertices"]
        edges = raw["edges"]
    except (KeyError, TypeError):
        raise FoldDiagramError("component needs 'vertices' and 'edges'", where) from None
    vertices = tuple(_parse_vertex(v, f"{where}.vertices[{i}]") for i, v in enumerate(verts))
    pairs = []
    for i, e in enumerate(edges):
        if len(e) != 2:
            raise UnpairedDart("edge must pair exactly two darts", f"{where}.edges[{i}]")
        pairs.append((int(e[0]), int(e[1])))
    return MapComponent(vertices, tuple(pairs))


def _parse_placement(raw) -> Placement:
    if isinstance(raw, Placement):
        return raw
    if raw is None:
        return Placement()
    return Placement(raw.get("parent"), raw.get("parent_face"), raw.get("outer_face"))


def _check_component(comp: MapComponent, where: str) -> None:
    seen: set[int] = set()
    for i, v in enumerate(comp.vertices):
        vw = f"{where}.vertices[{i}]"
        if v.kind not in DEGREE:
            raise InvalidVertex(f"unknown vertex kind {v.kind!r}", vw)
        if len(v.darts) != DEGREE[v.kind]:
            raise BadDegree(f"{v.kind} vertex needs {DEGREE[v.kind]} darts, got {len(v.darts)}", vw)
        if (v.wedge_corner is not None) != (v.kind == CUSP):
            raise InvalidVertex("wedge_corner is required for cusps and forbidden otherwise", vw)
        if v.kind == CUSP and v.wedge_corner not in (0, 1):
            raise InvalidVertex("wedge_corner must be 0 or 1", vw)
        for d in v.darts:
            if d < 0:
                raise UnpairedDart(f"dart {d} is negative", vw)
            if d in seen:
                raise UnpairedDart(f"dart {d} listed twice", vw)
            seen.add(d)
    if len({v.id for v in comp.vertices}) != len(comp.vertices):
        raise InvalidVertex("duplicate vertex id", where)
    paired: set[int] = set()
    for i, (a, b) in enumerate(comp.edges):
        ew = f"{where}.edges[{i}]"
        if a == b:
            raise UnpairedDart(f"dart {a} paired with itself", ew)
        for d in (a, b):
            if d not in seen:
                raise UnpairedDart(f"dart {d} is not at any vertex", ew)
            if d in paired:
                raise UnpairedDart(f"dart {d} belongs to two edges", ew)
            paired.add(d)
    missing = seen - paired
    if missing:
        raise UnpairedDart(f"darts {sorted(missing)} belong to no edge", where)
    if not comp.vertices:
        raise EmptyDiagram("component has no vertices", where)


def _connected(data: _ComponentData) -> bool:
    n = len(data.darts)
    seen = [False] * n
    stack = [0]
    seen[0] = True
    while stack:
        x = stack.pop()
        for y in (data.sigma[x], data.alpha[x]):
            if not seen[y]:
                seen[y] = True
                stack.append(y)
    return all(seen)


def build_diagram(spec) -> FoldDiagram:
    """Validate a raw description and return a :class:`FoldDiagram`.

    ``spec`` is a mapping with ``components`` (and optional ``placements``),
    a ``(components, placements)`` pair, or an existing diagram.
    """
    if isinstance(spec, FoldDiagram):
        return spec
    if isinstance(spec, dict):
        raw_comps = spec.get("components")
        raw_places = spec.get("placements")
    else:
        raw_comps, raw_places = spec
    if not raw_comps:
        raise EmptyDiagram("a fold diagram needs at least one component")
    comps = tuple(_parse_component(c, f"components[{i}]") for i, c in enumerate(raw_comps))
    if raw_places is None:
        raw_places = [None] * len(comps)
    if len(raw_places) != len(comps):
        raise DanglingPlacementFace("need exactly one placement per component", "placements")
    places = [_parse_placement(p) for p in raw_places]

    data = []
    for i, comp in enumerate(comps):
        where = f"components[{i}]"
        _check_component(comp, where)
        cd = _ComponentData(comp)
        if not _connected(cd):
            raise DisconnectedComponent("component is not connected", where)
        v, e, f = len(comp.vertices), len(comp.edges), len(cd.faces)
        if v - e + f != 2:
            raise EulerFailure(f"V - E + F = {v} - {e} + {f} != 2; rotation system is not planar", where)
        data.append(cd)

    # placement forest
    normal = []
    for i, p in enumerate(places):
        where = f"placements[{i}]"
        outer = p.outer_face
        if outer is None:
            outer = data[i].darts[0]
        if outer not in data[i].index:
            raise DanglingPlacementFace(f"outer_face {outer} is not a dart of component {i}", where)
        outer = data[i].face[data[i].index[outer]]
        if p.parent is OUTER:
            normal.append(Placement(OUTER, None, outer))
            continue
        parent = p.parent
        if not isinstance(parent, int) or not 0 <= parent < len(comps) or parent == i:
            if parent == i:
                raise CyclicPlacement("component placed inside itself", where)
            raise DanglingPlacementFace(f"no component {parent!r} to place into", where)
        pf = p.parent_face
        if pf is None or pf not in data[parent].index:
            raise DanglingPlacementFace(f"parent_face {pf!r} is not a face of component {parent}", where)
        normal.append(Placement(parent, data[parent].face[data[parent].index[pf]], outer))
    for i in range(len(normal)):
        seen = {i}
        j = normal[i].parent
        while j is not OUTER:
            if j in seen:
                raise CyclicPlacement(f"placement cycle through component {i}", f"placements[{i}]")
            seen.add(j)
            j = normal[j].parent

    # global faces: merge each component's outer face with its parent face
    parent_of: dict = {}

    def find(x):
        while parent_of.get(x, x) != x:
            parent_of[x] = parent_of.get(parent_of[x], parent_of[x])
            x = parent_of[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent_of[max(ra, rb)] = min(ra, rb)

    outer_token = (-1, -1)
    for i, p in enumerate(normal):
        target = outer_token if p.parent is OUTER else (p.parent, p.parent_face)
        union((i, p.outer_face), target)
    classes: dict = {}
    for i, cd in enumerate(data):
        for lf in cd.faces:
            classes.setdefault(find((i, lf)), []).append((i, lf))
    outer_root = find(outer_token)
    reps = sorted(classes, key=lambda r: min(classes[r]))
    gface = {}
    for gid, r in enumerate(reps):
        for key in classes[r]:
            gface[key] = gid
    corners: dict[int, list] = {gid: [] for gid in range(len(reps))}
    for i, (comp, cd) in enumerate(zip(comps, data)):
        for v in comp.vertices:
            k = len(v.darts)
            for j in range(k):
                d = v.darts[(j + 1) % k]
                corners[gface[(i, cd.face[cd.index[d]])]].append((i, v.id, j))
    faces = []
    outer_gid = None
    for gid, r in enumerate(reps):
        circuits = tuple(sorted(classes[r]))
        h = len(circuits)
        bounded = r != outer_root
        if not bounded:
            outer_gid = gid
        faces.append(Face(gid, bounded, circuits, 2 - h if bounded else 1 - h,
                          tuple(sorted(corners[gid]))))
    return FoldDiagram(comps, tuple(normal), tuple(data), tuple(faces), outer_gid, gface)


# ---------------------------------------------------------------------------
# queries
# ---------------------------------------------------------------------------

def global_faces(d: FoldDiagram) -> tuple[Face, ...]:
    return d.faces


def fold_components(d: FoldDiagram) -> tuple[FoldComponent, ...]:
    return d.fold_components()


# ---------------------------------------------------------------------------
# transformations
# ---------------------------------------------------------------------------

def relabel(d: FoldDiagram, rng: random.Random | int | None = None,
            return_face_map: bool = False):
    """Random renumbering of darts, vertices and components.

    Rotation lists are also cyclically shifted; the embedded diagram is
    unchanged.  With ``return_face_map`` the pair ``(diagram, face_map)`` is
    returned, ``face_map`` sending old global face ids to new ones.
    """
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    order = list(range(len(d.components)))
    rng.shuffle(order)  # order[new] = old
    new_index = {old: new for new, old in enumerate(order)}
    comps = []
    maps = []
    for old in order:
        comp = d.components[old]
        darts = comp.darts
        fresh = rng.sample(range(4 * len(darts) + 8), len(darts))
        m = dict(zip(darts, fresh))
        maps.append(m)
        verts = []
        vids = rng.sample(range(4 * len(comp.vertices) + 4), len(comp.vertices))
        for v, vid in zip(comp.vertices, vids):
            k = len(v.darts)
            s = rng.randrange(k)
            darts_new = tuple(m[v.darts[(j + s) % k]] for j in range(k))
            wedge = None if v.wedge_corner is None else (v.wedge_corner - s) % k
            verts.append(Vertex(vid, v.kind, darts_new, wedge))
        rng.shuffle(verts)
        edges = [(m[a], m[b]) if rng.random() < 0.5 else (m[b], m[a]) for a, b in comp.edges]
        rng.shuffle(edges)
        comps.append(MapComponent(tuple(verts), tuple(edges)))
    places = []
    for new, old in enumerate(order):
        p = d.placements[old]
        outer = maps[new][rng.choice(d.orbit(old, p.outer_face))]
        if p.parent is OUTER:
            places.append(Placement(OUTER, None, outer))
        else:
            pn = new_index[p.parent]
            pf = maps[pn][rng.choice(d.orbit(p.parent, p.parent_face))]
            places.append(Placement(pn, pf, outer))
    r = build_diagram((comps, places))
    if not return_face_map:
        return r
    fmap = {}
    for new, old in enumerate(order):
        for x in d.darts(old):
            fmap[d.face_right(old, x)] = r.face_right(new, maps[new][x])
    return r, fmap


def mirror(d: FoldDiagram) -> FoldDiagram:
    """Mirror image: every rotation list reversed.

    The region named by dart ``x`` before mirroring is named by
    ``sigma^-1(x)`` afterwards, so placement references are shifted.
    """
    comps = []
    for comp in d.components:
        verts = tuple(Vertex(v.id, v.kind, tuple(reversed(v.darts)), v.wedge_corner)
                      for v in comp.vertices)
        comps.append(MapComponent(verts, comp.edges))

    def shift(c, x):
        # sigma^-1 in the original rotation
        v = d.vertex_of(c, x)
        k = len(v.darts)
        return v.darts[(v.darts.index(x) - 1) % k]

    places = []
    for i, p in enumerate(d.placements):
        outer = shift(i, p.outer_face)
        if p.parent is OUTER:
            places.append(Placement(OUTER, None, outer))
        else:
            places.append(Placement(p.parent, shift(p.parent, p.parent_face), outer))
    return build_diagram((comps, places))


def mirror_face_map(d: FoldDiagram, m: FoldDiagram) -> dict[int, int]:
    """Global face of ``d`` -> global face of ``m = mirror(d)`` (same region)."""
    out = {}
    for c, x in d.iter_darts():
        v = d.vertex_of(c, x)
        k = len(v.darts)
        y = v.darts[(v.darts.index(x) - 1) % k]
        out[d.face_right(c, x)] = m.face_right(c, y)
    return out


def strip_smooth(d: FoldDiagram) -> tuple[FoldDiagram, dict[int, int]]:
    """Remove redundant smooth markers.

    Every smooth vertex is dissolved except one on each crossing-free,
    cusp-free circle.  Returns the reduced diagram and the map from old to new
    global face ids (faces are the same regions).
    """
    comps = []
    survivors = []
    for c, comp in enumerate(d.components):
        alpha = {}
        for a, b in comp.edges:
            alpha[a] = b
            alpha[b] = a
        verts = {v.id: v for v in comp.vertices}
        removed: set[int] = set()
        for v in comp.vertices:
            if v.kind != SMOOTH:
                continue
            p, q = v.darts
            if alpha[p] == q:
                continue  # last marker on a bare circle
            pp, qq = alpha[p], alpha[q]
            alpha[pp] = qq
            alpha[qq] = pp
            del alpha[p]
            del alpha[q]
            removed.update((p, q))
            del verts[v.id]
        edges = sorted({(min(a, b), max(a, b)) for a, b in alpha.items()})
        comps.append(MapComponent(tuple(verts.values()), tuple(edges)))
        survivors.append(removed)

    def keep(c, lf):
        for x in d.orbit(c, lf):
            if x not in survivors[c]:
                return x
        raise FoldDiagramError("face lost all of its darts while stripping")

    places = []
    for c, p in enumerate(d.placements):
        outer = keep(c, p.outer_face)
        if p.parent is OUTER:
            places.append(Placement(OUTER, None, outer))
        else:
            places.append(Placement(p.parent, keep(p.parent, p.parent_face), outer))
    r = build_diagram((comps, places))
    fmap = {}
    for c in range(len(d.components)):
        for lf in d.local_faces(c):
            fmap[d.global_face(c, lf)] = r.face_right(c, keep(c, lf))
    return r, fmap


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class CanonicalCode:
    data: bytes = field(repr=False)

    def hex(self) -> str:
        return self.data.hex()

    def short(self) -> str:
        import hashlib

        return hashlib.sha1(self.data).hexdigest()[:16]

    def __repr__(self):
        return f"CanonicalCode({self.short()})"


_KIND_CODE = {SMOOTH: 0, CUSP: 1, CROSSING: 2}


def _raw_code(d: FoldDiagram, widths=None):
    """Nested-tuple code of a diagram without smooth-marker reduction."""
    memo: dict[int, tuple] = {}

    def comp_code(c):
        if c in memo:
            return memo[c]
        data = d._data[c]
        comp = d.components[c]
        tags: dict[int, tuple] = {}
        for ch in d.children(c):
            tags.setdefault(d.placements[ch].parent_face, []).append(comp_code(ch))
        outer = d.placements[c].outer_face
        wedge_darts = {v.darts[v.wedge_corner] for v in comp.vertices if v.kind == CUSP}
        ann = []
        for i, x in enumerate(data.darts):
            v = comp.vertices[data.vertex_of[i]]
            lf = data.face[i]
            gw = -1 if widths is None else widths[d.global_face(c, lf)]
            ann.append((_KIND_CODE[v.kind], int(x in wedge_darts), int(lf == outer), gw,
                        tuple(sorted(tags.get(lf, ())))))
        table = sorted(set(ann))
        rank = {a: i for i, a in enumerate(table)}
        code = kernels.min_rooted_code(data.sigma, data.alpha, [rank[a] for a in ann])
        memo[c] = (tuple(table), tuple(code))
        return memo[c]

    roots = sorted(comp_code(c) for c in d.children(OUTER))
    return tuple(roots)


def _to_bytes(obj) -> bytes:
    return json.dumps(obj, separators=(",", ":")).encode()


def canonical_code(d: FoldDiagram, reflect: bool = False, widths=None) -> CanonicalCode:
    """Renumbering-invariant code of the embedded diagram.

    Smooth markers are dissolved first so subdivided circles share a code.
    ``widths`` (indexed by global face id) yields a code of the labeled
    diagram.  With ``reflect`` the smaller of the code and the mirror's code
    is returned.
    """
    r, fmap = strip_smooth(d)
    rw = None
    if widths is not None:
        rw = [0] * len(r.faces)
        for old, new in fmap.items():
            rw[new] = widths[old]
    best = _to_bytes(_raw_code(r, rw))
    if reflect:
        m = mirror(r)
        mw = None
        if rw is not None:
            mm = mirror_face_map(r, m)
            mw = [0] * len(m.faces)
            for old, new in mm.items():
                mw[new] = rw[old]
        best = min(best, _to_bytes(_raw_code(m, mw)))
    return CanonicalCode(best)


def iter_vertices(d: FoldDiagram) -> Iterable[tuple[int, Vertex]]:
    for c, comp in enumerate(d.components):
        for v in comp.vertices:
            yield c, v
