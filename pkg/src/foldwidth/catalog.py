"""Exhaustive catalog of small labeled diagrams, with queries and verdicts.

Generation runs in three stages:

1. connected plane components: four-valent maps glued from dart matchings,
   decorated with cusps on their edges, plus cusped circles, each with every
   choice of unbounded face;
2. nesting forests of those components, pruned by the loop, crossing, cusp
   and total-width budgets;
3. labelings of every distinct diagram, its invariants and the surfaces its
   assemblies cover.

Stage 2 and 3 fan out over worker processes; merging is keyed by canonical
code, so the output does not depend on the worker count.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Iterator, Sequence

from .assembly import assembly_summary
from .diagram import (CROSSING, CUSP, OUTER, SMOOTH, CanonicalCode, FoldDiagram, MapComponent,
                      Placement, Vertex, build_diagram, canonical_code)
from .errors import BoundExceeded
from .invariants import DiagramInvariants, compute_invariants
from .labeling import OrientationChoice, WidthLabeling, _crossing_ok, enumerate_labelings, integrate_widths

DEFAULT_MAX_ENTRIES = 200_000


@dataclass(frozen=True)
class EnumBounds:
    max_crossings: int = 2
    max_cusps: int = 4
    max_loops: int = 3
    max_tw: int = 8
    reflect: bool = False
    monodromy: bool = False

    def __post_init__(self):
        for name in ("max_crossings", "max_cusps", "max_loops", "max_tw"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {v!r}")


@dataclass(frozen=True)
class CatalogEntry:
    code: CanonicalCode
    labeled_code: CanonicalCode
    diagram: FoldDiagram
    labeling: WidthLabeling
    invariants: DiagramInvariants
    surfaces: tuple[tuple[int, bool, int], ...]  # (chi, orientable, components)

    @property
    def connected_realizable(self) -> bool:
        return any(s[2] == 1 for s in self.surfaces)

    @property
    def nonorientable_realizable(self) -> bool:
        return any(not s[1] for s in self.surfaces)

    def sort_key(self):
        return (self.invariants.tw, self.invariants.w, self.code.data, self.labeled_code.data)

    def record(self) -> dict:
        inv = self.invariants
        return {
            "code": self.code.hex(),
            "labeled_code": self.labeled_code.short(),
            "crossings": inv.crossings,
            "cusps": inv.cusps,
            "loops": len(self.diagram.fold_components()),
            "w": inv.w,
            "tw": inv.tw,
            "chi": inv.chi,
            "parity": "ok" if inv.parity_ok else "FAIL",
            "surfaces": [{"chi": c, "orientable": o, "components": k} for c, o, k in self.surfaces],
            "widths": list(self.labeling.widths),
            "diagram": self.diagram.to_spec(),
        }


@dataclass(frozen=True)
class TrivialityVerdict:
    kind: str  # strongly_trivial | trivial | unknown
    justification: str

    def __str__(self):
        return f"{self.kind} ({self.justification})"


# ---------------------------------------------------------------------------
# stage 1: connected plane components
# ---------------------------------------------------------------------------

def _matchings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    a = items[0]
    for k in range(1, len(items)):
        rest = items[1:k] + items[k + 1:]
        for m in _matchings(rest):
            yield [(a, items[k])] + m


def _sphere_ok(c: int, pairs) -> bool:
    """Connected and genus zero (c vertices, 2c edges, c + 2 faces)."""
    n = 4 * c
    alpha = [0] * n
    for a, b in pairs:
        alpha[a], alpha[b] = b, a
    sigma = [4 * (x // 4) + (x % 4 + 1) % 4 for x in range(n)]
    parent = list(range(c))

    def find(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for a, b in pairs:
        parent[find(a // 4)] = find(b // 4)
    if len({find(v) for v in range(c)}) != 1:
        return False
    seen = [False] * n
    faces = 0
    for x in range(n):
        if seen[x]:
            continue
        faces += 1
        y = x
        while not seen[y]:
            seen[y] = True
            y = sigma[alpha[y]]
    return faces == c + 2


def _base_maps(c: int) -> list[MapComponent]:
    out = []
    for pairs in _matchings(list(range(4 * c))):
        if _sphere_ok(c, pairs):
            verts = tuple(Vertex(i, CROSSING, (4 * i, 4 * i + 1, 4 * i + 2, 4 * i + 3)) for i in range(c))
            out.append(MapComponent(verts, tuple(pairs)))
    return out


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for k in range(total + 1):
        for rest in _compositions(total - k, parts - 1):
            yield (k,) + rest


def _decorate(base: MapComponent, counts: Sequence[int], wedges: Sequence[int]) -> MapComponent:
    """Insert ``counts[e]`` cusps on edge ``e``; ``wedges`` gives each cusp's side."""
    verts = list(base.vertices)
    edges = []
    nxt = max(base.darts) + 1
    vid = len(verts)
    wi = 0
    for (a, b), k in zip(base.edges, counts):
        prev = a
        for _ in range(k):
            din, dout = nxt, nxt + 1
            nxt += 2
            verts.append(Vertex(vid, CUSP, (din, dout), wedges[wi]))
            vid += 1
            wi += 1
            edges.append((prev, din))
            prev = dout
        edges.append((prev, b))
    return MapComponent(tuple(verts), tuple(edges))


def _cusped_circle(wedges: Sequence[int]) -> MapComponent:
    k = len(wedges)
    if k == 0:
        return MapComponent((Vertex(0, SMOOTH, (0, 1)),), ((0, 1),))
    verts = tuple(Vertex(i, CUSP, (2 * i, 2 * i + 1), wedges[i]) for i in range(k))
    edges = tuple((2 * i + 1, (2 * i + 2) % (2 * k)) for i in range(k))
    return MapComponent(verts, edges)


@dataclass(frozen=True)
class _PlaneComponent:
    diagram: FoldDiagram
    code: bytes
    loops: int
    crossings: int
    cusps: int
    rels: tuple[tuple[tuple[int, ...], int], ...]  # (widths with outer 0, least base width)
    inner: tuple[int, ...]  # bounded face ids


def _relative_labelings(d: FoldDiagram) -> list[tuple[tuple[int, ...], int]]:
    out = {}
    n = len(d.fold_components())
    cusp_sides = []
    for c, comp in enumerate(d.components):
        for v in comp.vertices:
            if v.kind == CUSP:
                cusp_sides.append(d.corner_faces(c, v) + [v.wedge_corner])
    crossings = [d.corner_faces(c, v) for c, comp in enumerate(d.components)
                 for v in comp.vertices if v.kind == CROSSING]
    for bits in product((0, 1), repeat=n):
        ws = integrate_widths(d, OrientationChoice(bits))
        if ws is None:
            continue
        if not all(_crossing_ok([ws[f] for f in fs]) for fs in crossings):
            continue
        need = max(0, -min(ws))
        ok = True
        for f0, f1, wc in cusp_sides:
            wedge, other = (ws[f0], ws[f1]) if wc == 0 else (ws[f1], ws[f0])
            if wedge != other + 2:
                ok = False
                break
            need = max(need, 2 - other)
        if ok:
            out.setdefault(tuple(ws), need)
    return sorted(out.items())


def _min_tw(pc_rels, inner) -> int:
    return min((sum(need + ws[f] for f in inner) for ws, need in pc_rels), default=None)


def plane_components(bounds: EnumBounds) -> list[_PlaneComponent]:
    """Distinct connected plane components within ``bounds``, sorted by code."""
    found: dict[bytes, _PlaneComponent] = {}

    def consider(comp: MapComponent, crossings: int, cusps: int):
        sphere = build_diagram(([comp], None))
        loops = len(sphere.fold_components())
        if loops > bounds.max_loops:
            return
        for lf in sphere.local_faces(0):
            d = build_diagram(([comp], [Placement(OUTER, None, lf)]))
            code = canonical_code(d, reflect=bounds.reflect).data
            if code in found:
                continue
            rels = _relative_labelings(d)
            inner = tuple(f.id for f in d.faces if f.bounded)
            least = _min_tw(rels, inner)
            if least is None or least > bounds.max_tw:
                continue
            found[code] = _PlaneComponent(d, code, loops, crossings, cusps, tuple(rels), inner)

    for k in range(bounds.max_cusps + 1):
        for wedges in product((0, 1), repeat=k):
            consider(_cusped_circle(wedges), 0, k)
    for c in range(1, bounds.max_crossings + 1):
        bases = {}
        for base in _base_maps(c):
            sphere = build_diagram(([base], None))
            key = min(canonical_code(build_diagram(([base], [Placement(OUTER, None, lf)]))).data
                      for lf in sphere.local_faces(0))
            bases.setdefault(key, base)
        for key in sorted(bases):
            base = bases[key]
            ne = len(base.edges)
            for k in range(bounds.max_cusps + 1):
                for counts in _compositions(k, ne):
                    for wedges in product((0, 1), repeat=k):
                        consider(_decorate(base, counts, wedges), c, k)
    return [found[k] for k in sorted(found)]


# ---------------------------------------------------------------------------
# stage 2: nesting forests
# ---------------------------------------------------------------------------

def _fill(items, base: int, budget, start: int):
    """Forests of components inside one face of width ``base``.

    Yields (forest, remaining budget); a forest is a tuple of
    (item, rel index, ((face id, forest), ...)).
    """
    yield (), budget
    loops, cr, cu, tw = budget
    for i in range(start, len(items)):
        pc = items[i]
        if pc.loops > loops or pc.crossings > cr or pc.cusps > cu:
            continue
        for ri, (ws, need) in enumerate(pc.rels):
            if base < need:
                continue
            cost = sum(base + ws[f] for f in pc.inner)
            if cost > tw:
                continue
            rest = (loops - pc.loops, cr - pc.crossings, cu - pc.cusps, tw - cost)
            for kids, left in _fill_faces(items, pc, ws, base, 0, rest):
                node = (i, ri, kids)
                for sib, left2 in _fill(items, base, left, i):
                    yield (node,) + sib, left2


def _fill_faces(items, pc, ws, base, k, budget):
    if k == len(pc.inner):
        yield (), budget
        return
    f = pc.inner[k]
    for forest, left in _fill(items, base + ws[f], budget, 0):
        for more, left2 in _fill_faces(items, pc, ws, base, k + 1, left):
            yield (((f, forest),) if forest else ()) + more, left2


def _assemble(items, forest) -> FoldDiagram:
    comps, places = [], []

    def add(node, parent, pf):
        i, _, kids = node
        pd = items[i].diagram
        idx = len(comps)
        comps.append(pd.components[0])
        outer = pd.placements[0].outer_face
        places.append(Placement(OUTER, None, outer) if parent is None else Placement(parent, pf, outer))
        for f, sub in kids:
            dart = pd.faces[f].circuits[0][1]
            for child in sub:
                add(child, idx, dart)

    for node in forest:
        add(node, None, None)
    return build_diagram((comps, places))


_ITEMS_CACHE: dict = {}


def _items_for(bounds: EnumBounds):
    if bounds not in _ITEMS_CACHE:
        _ITEMS_CACHE[bounds] = plane_components(bounds)
    return _ITEMS_CACHE[bounds]


def _spec_key(d: FoldDiagram) -> str:
    return json.dumps(d.to_spec(), sort_keys=True, separators=(",", ":"))


def _forests_from(args) -> list[tuple[bytes, str]]:
    """Diagrams whose first root component is item ``first``."""
    bounds, first = args
    items = _items_for(bounds)
    budget = (bounds.max_loops, bounds.max_crossings, bounds.max_cusps, bounds.max_tw)
    out: dict[bytes, str] = {}
    for forest, _ in _fill(items, 0, budget, first):
        if not forest or forest[0][0] != first:
            continue
        d = _assemble(items, forest)
        code = canonical_code(d, reflect=bounds.reflect).data
        key = _spec_key(d)
        if code not in out or key < out[code]:
            out[code] = key
    return sorted(out.items())


# ---------------------------------------------------------------------------
# stage 3: labelings, invariants, surfaces
# ---------------------------------------------------------------------------

def _entries_for(args) -> list[CatalogEntry]:
    bounds, spec_json = args
    d = build_diagram(json.loads(spec_json))
    code = canonical_code(d, reflect=bounds.reflect)
    out = []
    seen = set()
    for lab in enumerate_labelings(d):
        if sum(lab.widths) > bounds.max_tw:
            continue
        # labelings exchanged by a symmetry of the diagram give one entry
        labeled = canonical_code(d, reflect=bounds.reflect, widths=lab.widths)
        if labeled in seen:
            continue
        seen.add(labeled)
        out.append(CatalogEntry(code, labeled, d, lab, compute_invariants(d, lab),
                                assembly_summary(d, lab, monodromy=bounds.monodromy)))
    return out


def worker_count(requested: int | None = None) -> int:
    n = requested if requested is not None else (os.cpu_count() or 1)
    cap = os.environ.get("FOLDWIDTH_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            pass
    return max(1, n)


def _run(func, tasks, workers: int):
    if workers <= 1 or len(tasks) <= 1:
        return [func(t) for t in tasks]
    import multiprocessing as mp

    ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
    with ctx.Pool(workers) as pool:
        return pool.map(func, tasks, chunksize=1)


def enumerate_diagrams(bounds: EnumBounds | None = None, workers: int | None = 1,
                       max_entries: int = DEFAULT_MAX_ENTRIES) -> list[CatalogEntry]:
    """Every admissible labeled diagram within ``bounds``, sorted by (tw, w, code)."""
    bounds = bounds or EnumBounds()
    workers = worker_count(workers)
    items = _items_for(bounds)
    merged: dict[bytes, str] = {}
    for part in _run(_forests_from, [(bounds, i) for i in range(len(items))], workers):
        for code, key in part:
            if code not in merged or key < merged[code]:
                merged[code] = key
    if len(merged) > max_entries:
        raise BoundExceeded(f"{len(merged)} diagrams exceed the cap of {max_entries}")
    entries = []
    for part in _run(_entries_for, [(bounds, merged[c]) for c in sorted(merged)], workers):
        entries.extend(part)
        if len(entries) > max_entries:
            raise BoundExceeded(f"more than {max_entries} catalog entries")
    entries.sort(key=CatalogEntry.sort_key)
    return entries


# ---------------------------------------------------------------------------
# queries, verdicts, export
# ---------------------------------------------------------------------------

def query(catalog: Iterable[CatalogEntry], predicate: Callable[[CatalogEntry], bool]) -> list[CatalogEntry]:
    return [e for e in catalog if predicate(e)]


def verdict(entry: CatalogEntry, assume_connected: bool = False) -> TrivialityVerdict:
    """Triviality verdict from width data alone; never claims knottedness."""
    inv = entry.invariants
    if not assume_connected and not entry.connected_realizable:
        return TrivialityVerdict("unknown", "no assembly covers a connected surface")
    if inv.w == 2:
        return TrivialityVerdict("strongly_trivial", "width-two characterization")
    if inv.chi == 2 and inv.tw <= 6:
        return TrivialityVerdict("strongly_trivial", "total width at most 6 for spheres")
    if inv.chi == 1 and inv.tw <= 6:
        return TrivialityVerdict("trivial", "total width at most 6 for projective planes")
    return TrivialityVerdict("unknown", "no characterization applies")


def entry_from(d: FoldDiagram, lab, reflect: bool = False, monodromy: bool = False) -> CatalogEntry:
    """Catalog entry for a single labeled diagram (outside any enumeration)."""
    from .labeling import validate_labeling

    lab = validate_labeling(d, lab)
    return CatalogEntry(canonical_code(d, reflect=reflect), canonical_code(d, reflect=reflect, widths=lab.widths),
                        d, lab, compute_invariants(d, lab), assembly_summary(d, lab, monodromy=monodromy))


CSV_COLUMNS = ("code", "crossings", "cusps", "loops", "w", "tw", "chi", "parity", "surfaces", "widths")


def _surface_text(surfaces) -> str:
    return ";".join(f"{c}:{'o' if o else 'n'}:{k}" for c, o, k in surfaces)


def export_jsonl(catalog: Iterable[CatalogEntry]) -> str:
    return "".join(json.dumps(e.record(), sort_keys=True, separators=(",", ":")) + "\n" for e in catalog)


def export_csv(catalog: Iterable[CatalogEntry]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for e in catalog:
        r = e.record()
        writer.writerow([r["code"], r["crossings"], r["cusps"], r["loops"], r["w"], r["tw"], r["chi"],
                         r["parity"], _surface_text(e.surfaces), " ".join(map(str, r["widths"]))])
    return buf.getvalue()
