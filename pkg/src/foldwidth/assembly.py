"""Sheet assemblies: reconstruct the surface lying over a labeled diagram.

Every edge of a labeled diagram separates a low face (width ``n``) from a high
face (width ``n + 2``).  Sheets over a face are numbered ``0..width-1``.  The
gluing across an edge is a *fold pair* (two high sheets that fold into each
other along the edge) plus a *continuation* sending every low sheet to one of
the remaining high sheets.  Vertices constrain the gluings of their edges; a
complete consistent choice is an assembly, from which a cell complex of the
surface is built.

Optionally a face with several boundary circuits carries a monodromy: the
numbering jumps by a permutation at one corner of each circuit, and the jumps
of a face compose to the identity.

Sheet numberings are gauge-fixed along a spanning tree of the dual graph, and
the remaining two-fold ambiguities are removed by taking the smallest image,
so equivalent assemblies are reported once.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations, product
from math import comb, factorial

from .diagram import CROSSING, CUSP, FoldDiagram
from .errors import BoundExceeded, InconsistentAssembly
from .invariants import euler_char_stratified, induced_orientation
from .labeling import _widths_of

EdgeData = tuple[tuple[int, int], tuple[int, ...]]  # (fold pair, continuation)

MAX_WIDTH = 10
MAX_CANONICAL_TIES = 4096


@dataclass(frozen=True)
class EdgeRef:
    component: int
    dart: int  # the dart with the low face on its right
    low: int
    high: int


@dataclass(frozen=True)
class JumpRef:
    face: int
    component: int
    circuit: int  # local face id of the boundary circuit
    vertex: int
    dart: int  # sheets of ``face`` along this dart's edge are renumbered at ``vertex``


@dataclass(frozen=True)
class SurfaceAssembly:
    edges: tuple[EdgeRef, ...]
    data: tuple[EdgeData, ...]
    jumps: tuple[JumpRef, ...] = ()
    monodromy: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class SurfacePiece:
    chi: int
    orientable: bool
    genus: int  # handles if orientable, crosscaps otherwise

    @property
    def name(self) -> str:
        if self.orientable:
            return "sphere" if self.genus == 0 else ("torus" if self.genus == 1 else f"genus-{self.genus} surface")
        if self.genus == 1:
            return "projective plane"
        if self.genus == 2:
            return "Klein bottle"
        return f"non-orientable genus-{self.genus} surface"


@dataclass(frozen=True)
class CombinatorialSurface:
    vertices: int
    edges: int
    faces: int
    chi: int
    pieces: tuple[SurfacePiece, ...]

    @property
    def components(self) -> int:
        return len(self.pieces)

    @property
    def orientable(self) -> bool:
        return all(p.orientable for p in self.pieces)

    @property
    def connected(self) -> bool:
        return len(self.pieces) == 1

    def summary(self) -> tuple[int, bool, int]:
        return (self.chi, self.orientable, self.components)


# ---------------------------------------------------------------------------
# local structure
# ---------------------------------------------------------------------------

def _pair(a, b):
    return (a, b) if a < b else (b, a)


def _inverse(m):
    inv = [0] * len(m)
    for i, x in enumerate(m):
        inv[x] = i
    return tuple(inv)


def _compose(a, b):
    """``a`` after ``b``."""
    return tuple(a[x] for x in b)


def _relabel(val: EdgeData, m, side: str) -> EdgeData:
    """Rename the sheets on one side of an edge by ``k -> m[k]``."""
    pair, cont = val
    if side == "high":
        return _pair(m[pair[0]], m[pair[1]]), tuple(m[h] for h in cont)
    c = [0] * len(cont)
    for l, h in enumerate(cont):
        c[m[l]] = h
    return pair, tuple(c)


def _solve_jump(stored: EdgeData, view: EdgeData, side: str, w: int) -> list:
    """Permutations ``m`` with ``_relabel(stored, m, side) == view``."""
    (p, c), (q, c2) = stored, view
    if side == "low":
        if p != q:
            return []
        where = {h: i for i, h in enumerate(c2)}
        return [tuple(where[h] for h in c)]
    base = [None] * w
    for l, h in enumerate(c):
        base[h] = c2[l]
    out = []
    for a, b in ((q[0], q[1]), (q[1], q[0])):
        m = list(base)
        m[p[0]], m[p[1]] = a, b
        out.append(tuple(m))
    return out


class _Local:
    """Edges, constraints and dual spanning tree of a labeled diagram.

    Search variables are the edges followed by the monodromy jumps.  A
    vertex constraint is ``(kind, slots, jumps)`` where ``jumps[i]`` names
    the jump applied to slot ``i`` (or None); a product constraint is
    ``("p", jump variables, width)``.
    """

    def __init__(self, d: FoldDiagram, widths, monodromy: bool = False):
        self.d = d
        self.widths = widths
        self.chi = None  # stratified count, filled on first use
        orient = induced_orientation(d, widths)
        self.edges: list[EdgeRef] = []
        index = {}
        for c, comp in enumerate(d.components):
            for a, b in comp.edges:
                u = a if orient.is_forward(c, a) else b
                ref = EdgeRef(c, u, d.face_right(c, u), d.face_left(c, u))
                index[(c, a)] = index[(c, b)] = len(self.edges)
                self.edges.append(ref)
        self.index = index
        self.m = len(self.edges)
        self.n = [widths[e.low] for e in self.edges]

        self.jumps: list[JumpRef] = []
        self.jump_side: list[str] = []
        jump_at: dict = {}
        products = []
        if monodromy:
            for f in d.faces:
                if widths[f.id] < 2 or len(f.circuits) < 2:
                    continue
                ids = []
                for c, lf in f.circuits:
                    x, vid = self._first_corner(c, lf)
                    e = index[(c, x)]
                    jid = len(self.jumps)
                    self.jumps.append(JumpRef(f.id, c, lf, vid, x))
                    self.jump_side.append("high" if self.edges[e].high == f.id else "low")
                    jump_at[(c, x)] = jid
                    ids.append(self.m + jid)
                products.append(("p", tuple(ids), widths[f.id]))

        self.cons: list[tuple] = []
        for c, comp in enumerate(d.components):
            for v in comp.vertices:
                k = len(v.darts)
                if v.kind == CROSSING:
                    ws = [widths[f] for f in d.corner_faces(c, v)]
                    i = ws.index(min(ws))
                    # roles: L->S1, S1->T, S2->T, L->S2
                    order = [(i + 1) % 4, (i + 2) % 4, (i + 3) % 4, i]
                    kind = "x"
                else:
                    order = list(range(k))
                    kind = "c" if v.kind == CUSP else "s"
                slots = tuple(index[(c, v.darts[q])] for q in order)
                jumps = tuple(jump_at.get((c, v.darts[q])) for q in order)
                self.cons.append((kind, slots, jumps))
        self.cons.extend(products)
        self.at_var: list[list[int]] = [[] for _ in range(self.m + len(self.jumps))]
        for k, con in enumerate(self.cons):
            used = set(con[1])
            if con[0] != "p":
                used |= {self.m + j for j in con[2] if j is not None}
            for x in used:
                self.at_var[x].append(k)
        self._tree()

    def _first_corner(self, c, lf):
        d = self.d
        for v in d.components[c].vertices:
            k = len(v.darts)
            for j in range(k):
                x = v.darts[(j + 1) % k]
                if d.local_face(c, x) == lf:
                    return x, v.id
        raise InconsistentAssembly(f"circuit {lf} of component {c} has no corner")

    def width_of(self, var):
        if var < self.m:
            return self.n[var]
        return self.widths[self.jumps[var - self.m].face]

    def view(self, con, i, data):
        val = data[con[1][i]]
        j = con[2][i]
        if val is None or j is None:
            return val
        mono = data[self.m + j]
        if mono is None:
            return None
        return _relabel(val, mono, self.jump_side[j])

    def check(self, con, data) -> bool:
        if con[0] == "p":
            ms = [data[x] for x in con[1]]
            if any(mono is None for mono in ms):
                return True
            acc = tuple(range(con[2]))
            for mono in ms:
                acc = _compose(acc, mono)
            return acc == tuple(range(con[2]))
        vals = [self.view(con, i, data) for i in range(len(con[1]))]
        if any(v is None for v in vals):
            return True
        kind = con[0]
        if kind == "s":
            return vals[0] == vals[1]
        if kind == "c":
            return _cusp_ok(vals[0], vals[1])
        return _crossing_ok(*vals)

    def derive(self, con, var, data):
        """Candidates for ``var`` forced by ``con``; None if not derivable."""
        if con[0] == "p":
            ids = con[1]
            if any(data[x] is None for x in ids if x != var):
                return None
            w = con[2]
            pre, post = tuple(range(w)), tuple(range(w))
            t = ids.index(var)
            for x in ids[:t]:
                pre = _compose(pre, data[x])
            for x in ids[t + 1:]:
                post = _compose(post, data[x])
            return [_compose(_inverse(pre), _inverse(post))]
        slots, jumps = con[1], con[2]
        if var < self.m:
            where = [i for i, s in enumerate(slots) if s == var]
            if len(where) != 1:
                return None
            t = where[0]
        else:
            t = jumps.index(var - self.m)
            if data[slots[t]] is None:
                return None
        views = [None if i == t else self.view(con, i, data) for i in range(len(slots))]
        if any(v is None for i, v in enumerate(views) if i != t):
            return None
        cands = _derive_slot(con[0], views, t, self.n[slots[t]])
        j = jumps[t]
        if var < self.m:
            if j is None:
                return cands
            mono = data[self.m + j]
            if mono is None:
                return None
            inv = _inverse(mono)
            return [_relabel(v, inv, self.jump_side[j]) for v in cands]
        stored = data[slots[t]]
        out = []
        for v in cands:
            for mono in _solve_jump(stored, v, self.jump_side[j], self.width_of(var)):
                if mono not in out:
                    out.append(mono)
        return out

    def _tree(self):
        d = self.d
        adj = [[] for _ in d.faces]
        for e, ref in enumerate(self.edges):
            adj[ref.low].append(e)
            adj[ref.high].append(e)
        self.tree: list[tuple[int, int, int, str]] = []  # (face, from face, edge, mode)
        seen = {d.outer_face}
        queue = deque([d.outer_face])
        while queue:
            g = queue.popleft()
            for e in adj[g]:
                ref = self.edges[e]
                f = ref.high if ref.low == g else ref.low
                if f in seen:
                    continue
                seen.add(f)
                queue.append(f)
                self.tree.append((f, g, e, "below" if ref.low == g else "above"))
        self.tree_mode = {e: mode for _, _, e, mode in self.tree}


def _valid_edge(data: EdgeData, n: int) -> bool:
    pair, cont = data
    if len(cont) != n or len(pair) != 2 or pair[0] == pair[1]:
        return False
    used = set(pair) | set(cont)
    return len(used) == n + 2 and all(0 <= x < n + 2 for x in used)


def _cusp_ok(a: EdgeData, b: EdgeData) -> bool:
    (pa, ca), (pb, cb) = a, b
    shared = set(pa) & set(pb)
    if len(shared) != 1:
        return False
    (s2,) = shared
    s1 = (set(pa) - shared).pop()
    s3 = (set(pb) - shared).pop()
    special = [o for o in range(len(ca)) if ca[o] != cb[o]]
    if len(special) != 1:
        return False
    o = special[0]
    return ca[o] == s3 and cb[o] == s1 and s2 not in ca


def _crossing_ok(A: EdgeData, X: EdgeData, Y: EdgeData, B: EdgeData) -> bool:
    (pa, ca), (px, cx), (py, cy), (pb, cb) = A, X, Y, B
    if any(cx[ca[l]] != cy[cb[l]] for l in range(len(ca))):
        return False
    if sorted(cx[p] for p in pa) != list(py):
        return False
    return sorted(cy[p] for p in pb) == list(px)


def _derive_slot(kind, views, t, n):
    """Values for slot ``t`` of a vertex given the other slots."""
    if kind == "s":
        return [views[1 - t]]
    if kind == "c":
        pair, cont = views[1 - t]
        out = []
        for o in range(len(cont)):
            for s2 in pair:
                s1 = pair[1] if s2 == pair[0] else pair[0]
                c2 = list(cont)
                c2[o] = s1
                out.append((_pair(s2, cont[o]), tuple(c2)))
        return out
    A, X, Y, B = views
    if t == 2:  # Y from A, B, X
        return _derive_top(A, B, X)
    if t == 1:  # X from B, A, Y
        return _derive_top(B, A, Y)
    if t == 0:  # A from B, X, Y
        return _derive_bottom(B, Y, X, n)
    return _derive_bottom(A, X, Y, n)


def _derive_top(A, B, X):
    (pa, ca), (pb, cb), (px, cx) = A, B, X
    py = _pair(cx[pa[0]], cx[pa[1]])
    cy = [None] * (len(cb) + 2)
    for l in range(len(ca)):
        cy[cb[l]] = cx[ca[l]]
    out = []
    for x0, x1 in ((px[0], px[1]), (px[1], px[0])):
        c = list(cy)
        c[pb[0]], c[pb[1]] = x0, x1
        if None not in c:
            out.append((py, tuple(c)))
    return out


def _derive_bottom(B, Y, X, n):
    """Edge L->S1 from L->S2, S2->T and S1->T."""
    (pb, cb), (py, cy), (px, cx) = B, Y, X
    inv = {t: s for s, t in enumerate(cx)}
    if py[0] not in inv or py[1] not in inv:
        return []
    pa = _pair(inv[py[0]], inv[py[1]])
    ca = []
    for l in range(n):
        t = cy[cb[l]]
        if t not in inv:
            return []
        ca.append(inv[t])
    return [(pa, tuple(ca))]


def _full_domain(n, mode):
    for pair in combinations(range(n + 2), 2):
        rest = [x for x in range(n + 2) if x not in pair]
        if mode == "above":
            yield (pair, tuple(rest))
        else:
            for perm in permutations(rest):
                yield (pair, perm)


# ---------------------------------------------------------------------------
# search
# ---------------------------------------------------------------------------

def _canonical(loc: _Local, data) -> tuple:
    """Smallest renumbering of ``data`` left free by the tree gauge.

    Each face below its tree parent may still swap its two fold sheets.  A
    face's numbering depends only on its ancestors, so the lexicographic
    minimum is found face by face in tree order, keeping ties.
    """
    m = loc.m
    widths = loc.widths
    pos = {loc.d.outer_face: 0}
    for i, (f, _, _, _) in enumerate(loc.tree):
        pos[f] = i + 1
    segment: dict = {f: [] for f, _, _, _ in loc.tree}
    for e, ref in enumerate(loc.edges):
        segment[ref.high if pos[ref.high] > pos[ref.low] else ref.low].append(e)
    for j, ref in enumerate(loc.jumps):
        segment[ref.face].append(m + j)

    def normalized(x, pi):
        if x >= m:
            p, mono = pi[loc.jumps[x - m].face], data[x]
            conj = [0] * len(mono)
            for k, t in enumerate(mono):
                conj[p[k]] = p[t]
            return tuple(conj)
        ref = loc.edges[x]
        pair, cont = data[x]
        pl, ph = pi[ref.low], pi[ref.high]
        c2 = [0] * len(cont)
        for l, h in enumerate(cont):
            c2[pl[l]] = ph[h]
        return _pair(ph[pair[0]], ph[pair[1]]), tuple(c2)

    states = [{loc.d.outer_face: list(range(widths[loc.d.outer_face]))}]
    for f, g, e, mode in loc.tree:
        pair, cont = data[e]
        scored = []
        for pi in states:
            if mode == "below":
                options = []
                for flip in (0, 1):
                    p = [0] * widths[f]
                    for l, h in enumerate(cont):
                        p[h] = pi[g][l] + 2
                    p[pair[0]], p[pair[1]] = (1, 0) if flip else (0, 1)
                    options.append(p)
            else:
                ph = pi[g]
                rest = sorted(set(range(widths[g])) - {ph[pair[0]], ph[pair[1]]})
                rank = {x: i for i, x in enumerate(rest)}
                options = [[rank[ph[h]] for h in cont]]
            for p in options:
                nxt = dict(pi)
                nxt[f] = p
                scored.append((tuple(normalized(x, nxt) for x in segment[f]), nxt))
        low = min(key for key, _ in scored)
        states = [pi for key, pi in scored if key == low][:MAX_CANONICAL_TIES]
    pi = states[0]
    return tuple(normalized(e, pi) for e in range(m)), tuple(normalized(x, pi) for x in range(m, m + len(loc.jumps)))


class _SignTracker:
    """Union-find with parity and undo; detects inconsistent sheet signs early."""

    def __init__(self):
        self.parent: dict = {}
        self.parity: dict = {}
        self.size: dict = {}
        self.history: list = []

    def _find(self, x):
        p = 0
        while self.parent.get(x, x) != x:
            p ^= self.parity[x]
            x = self.parent[x]
        return x, p

    def relate(self, a, b, flip) -> bool:
        ra, pa = self._find(a)
        rb, pb = self._find(b)
        if ra == rb:
            return (pa ^ pb) == flip
        if self.size.get(ra, 1) > self.size.get(rb, 1):
            ra, rb = rb, ra
        self.parent[ra] = rb
        self.parity[ra] = pa ^ pb ^ flip
        self.size[rb] = self.size.get(rb, 1) + self.size.get(ra, 1)
        self.history.append((ra, rb))
        return True

    def mark(self) -> int:
        return len(self.history)

    def undo(self, mark: int):
        while len(self.history) > mark:
            ra, rb = self.history.pop()
            del self.parent[ra], self.parity[ra]
            self.size[rb] -= self.size.get(ra, 1)


def _sign_relations(loc: _Local, x, val):
    if x >= loc.m:
        f = loc.jumps[x - loc.m].face
        return [((f, k), (f, t), 0) for k, t in enumerate(val) if k != t]
    ref = loc.edges[x]
    pair, cont = val
    out = [((ref.low, l), (ref.high, h), 0) for l, h in enumerate(cont)]
    out.append(((ref.high, pair[0]), (ref.high, pair[1]), 1))
    return out


def enumerate_assemblies(d: FoldDiagram, lab, max_results: int = 256,
                         max_width: int = MAX_WIDTH, monodromy: bool = False,
                         orientable_only: bool = False) -> list[SurfaceAssembly]:
    """All consistent sheet gluings over ``(d, lab)``, up to renumbering sheets.

    With ``monodromy`` set, sheets over a face with several boundary circuits
    may be permuted when carried around a circuit; otherwise every face has
    one global sheet numbering.  ``orientable_only`` prunes gluings whose
    surface cannot be orientable.  At most ``max_results`` assemblies are
    returned, in a deterministic order.
    """
    widths = _widths_of(lab)
    if max(widths) > max_width:
        raise BoundExceeded(f"width {max(widths)} exceeds the assembly bound {max_width}")
    return _enumerate(_Local(d, widths, monodromy), max_results, orientable_only)


def _enumerate(loc: _Local, max_results: int, orientable_only: bool) -> list[SurfaceAssembly]:
    m = loc.m
    total = m + len(loc.jumps)
    data: list = [None] * total
    for f, g, e, mode in loc.tree:
        if mode == "below":
            n = loc.n[e]
            data[e] = ((0, 1), tuple(range(2, n + 2)))
    for con in loc.cons:
        if not loc.check(con, data):
            return []
    signs = _SignTracker() if orientable_only else None
    if signs is not None:
        for x in range(total):
            if data[x] is not None and not all(signs.relate(*r) for r in _sign_relations(loc, x, data[x])):
                return []
    found: dict = {}

    def options(x):
        best = None
        for k in loc.at_var[x]:
            cand = loc.derive(loc.cons[k], x, data)
            if cand is not None and (best is None or len(cand) < len(best)):
                best = cand
        return best

    def domain_size(x):
        if x >= m:
            return factorial(loc.width_of(x))
        n = loc.n[x]
        size = comb(n + 2, 2)
        return size if loc.tree_mode.get(x) == "above" else size * factorial(n)

    def domain(x):
        if x >= m:
            return permutations(range(loc.width_of(x)))
        return _full_domain(loc.n[x], loc.tree_mode.get(x, "free"))

    def acceptable(x, val):
        if x >= m:
            return True
        if not _valid_edge(val, loc.n[x]):
            return False
        return loc.tree_mode.get(x) != "above" or list(val[1]) == sorted(val[1])

    def search():
        if len(found) >= max_results:
            return
        choice, cands = None, None
        for x in range(total):
            if data[x] is not None:
                continue
            opt = options(x)
            size = len(opt) if opt is not None else domain_size(x)
            if cands is None or size < cands[0]:
                choice, cands = x, (size, opt)
                if size <= 1:
                    break
        if choice is None:
            key = _canonical(loc, data)
            if key not in found:
                found[key] = True
            return
        x, opt = choice, cands[1]
        for val in (opt if opt is not None else domain(x)):
            if not acceptable(x, val):
                continue
            data[x] = val
            mark = signs.mark() if signs is not None else 0
            if all(loc.check(loc.cons[k], data) for k in loc.at_var[x]) and (
                    signs is None or all(signs.relate(*r) for r in _sign_relations(loc, x, val))):
                search()
            if signs is not None:
                signs.undo(mark)
            data[x] = None
            if len(found) >= max_results:
                return

    search()
    edges, jumps = tuple(loc.edges), tuple(loc.jumps)
    return [SurfaceAssembly(edges, key, jumps, monos) for key, monos in sorted(found)]


# ---------------------------------------------------------------------------
# surface reconstruction
# ---------------------------------------------------------------------------

class _DSU:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def check_assembly(d: FoldDiagram, lab, asm: SurfaceAssembly) -> None:
    _check(_Local(d, _widths_of(lab), bool(asm.jumps)), asm)


def _check(loc: _Local, asm: SurfaceAssembly) -> None:
    if len(asm.data) != len(loc.edges):
        raise InconsistentAssembly(f"assembly has {len(asm.data)} edges, diagram has {len(loc.edges)}")
    if tuple(loc.jumps) != tuple(asm.jumps) or len(asm.monodromy) != len(loc.jumps):
        raise InconsistentAssembly("monodromy jumps do not match the diagram's multiply bounded faces")
    for e, val in enumerate(asm.data):
        if not _valid_edge(val, loc.n[e]):
            raise InconsistentAssembly(f"edge {e}: gluing {val} is not a fold pair plus bijection")
    for j, mono in enumerate(asm.monodromy):
        if sorted(mono) != list(range(loc.width_of(loc.m + j))):
            raise InconsistentAssembly(f"jump {j}: {mono} is not a permutation of the face's sheets")
    values = list(asm.data) + list(asm.monodromy)
    for k, con in enumerate(loc.cons):
        if not loc.check(con, values):
            raise InconsistentAssembly(f"constraint {k} ({con[0]}) violated")


def build_surface(d: FoldDiagram, lab, asm: SurfaceAssembly) -> CombinatorialSurface:
    """Cell complex of the surface described by ``asm``; checks closedness and chi."""
    loc = _Local(d, _widths_of(lab), bool(asm.jumps))
    _check(loc, asm)
    return _build(loc, asm)


def _build(loc: _Local, asm: SurfaceAssembly) -> CombinatorialSurface:
    d, widths = loc.d, loc.widths
    data = asm.data
    jump_at = {(ref.component, ref.dart): j for j, ref in enumerate(asm.jumps)}
    sheets = _DSU()  # 2-cells: (face, sheet)
    parity: dict = {}
    orient_edges = []  # (cell a, cell b, flips sign)
    arcs = []  # (cell a, cell b) for each 1-cell
    for e, ref in enumerate(loc.edges):
        pair, cont = data[e]
        for l, h in enumerate(cont):
            a, b = (ref.low, l), (ref.high, h)
            arcs.append((a, b))
            orient_edges.append((a, b, 0))
        a, b = (ref.high, pair[0]), (ref.high, pair[1])
        arcs.append((a, b))
        orient_edges.append((a, b, 1))
    cells = [(f.id, s) for f in d.faces for s in range(widths[f.id])]
    for cell in cells:
        sheets.find(cell)
    # closedness: along every edge each low and high sheet borders exactly one arc
    for e, ref in enumerate(loc.edges):
        pair, cont = data[e]
        if len(cont) != widths[ref.low] or len(set(cont) | set(pair)) != widths[ref.high]:
            raise InconsistentAssembly(f"edge {e} leaves a sheet unglued")
    for ref, mono in zip(asm.jumps, asm.monodromy):
        for k, x in enumerate(mono):
            if k != x:
                orient_edges.append(((ref.face, k), (ref.face, x), 0))
    for a, b, _ in orient_edges:
        sheets.union(a, b)

    # sign propagation per component
    sign: dict = {}
    orientable_root: dict = {}
    adj: dict = {cell: [] for cell in cells}
    for a, b, flip in orient_edges:
        adj[a].append((b, flip))
        adj[b].append((a, flip))
    for cell in cells:
        if cell in sign:
            continue
        root = sheets.find(cell)
        orientable_root.setdefault(root, True)
        sign[cell] = 0
        stack = [cell]
        while stack:
            x = stack.pop()
            for y, flip in adj[x]:
                want = sign[x] ^ flip
                if y not in sign:
                    sign[y] = want
                    stack.append(y)
                elif sign[y] != want:
                    orientable_root[root] = False

    # 0-cells: fiber points over each vertex
    points = _DSU()
    point_owner = []
    for c, comp in enumerate(d.components):
        for v in comp.vertices:
            k = len(v.darts)
            faces = d.corner_faces(c, v)
            for j in range(k):
                for s in range(widths[faces[j]]):
                    points.find((c, v.id, j, s))
            for j in range(k):
                # dart darts[j+1] separates corner j from corner j+1
                x = v.darts[(j + 1) % k]
                pair, cont = data[loc.index[(c, x)]]
                j_id = jump_at.get((c, x))
                if j_id is not None:
                    pair, cont = _relabel((pair, cont), asm.monodromy[j_id], loc.jump_side[j_id])
                low_j, high_j = j, (j + 1) % k
                if widths[faces[low_j]] > widths[faces[high_j]]:
                    low_j, high_j = high_j, low_j
                for l, h in enumerate(cont):
                    points.union((c, v.id, low_j, l), (c, v.id, high_j, h))
                points.union((c, v.id, high_j, pair[0]), (c, v.id, high_j, pair[1]))
            roots = {}
            for j in range(k):
                for s in range(widths[faces[j]]):
                    roots.setdefault(points.find((c, v.id, j, s)), (faces[j], s))
            point_owner.extend(roots.values())

    comp_roots = sorted({sheets.find(cell) for cell in cells})
    stats = {r: [0, 0, 0] for r in comp_roots}  # V, E, weighted F
    for cell in point_owner:
        stats[sheets.find(cell)][0] += 1
    for a, _ in arcs:
        stats[sheets.find(a)][1] += 1
    for f in d.faces:
        for s in range(widths[f.id]):
            stats[sheets.find((f.id, s))][2] += f.euler_c
    pieces = []
    for r in comp_roots:
        v, e, fchi = stats[r]
        chi = v - e + fchi
        orientable = orientable_root[r]
        genus = (2 - chi) // 2 if orientable else 2 - chi
        pieces.append(SurfacePiece(chi, orientable, genus))
    pieces.sort(key=lambda p: (p.chi, p.orientable, p.genus))
    total_v = len(point_owner)
    total_e = len(arcs)
    chi = total_v - total_e + sum(widths[f.id] * f.euler_c for f in d.faces)
    if loc.chi is None:
        loc.chi = euler_char_stratified(d, widths)
    expected = loc.chi
    if chi != expected:
        raise InconsistentAssembly(f"cell complex has chi={chi}, stratified count gives {expected}")
    return CombinatorialSurface(total_v, total_e, len(cells), chi, tuple(pieces))


def assembly_summary(d: FoldDiagram, lab, max_results: int = 256,
                     monodromy: bool = False) -> tuple[tuple[int, bool, int], ...]:
    """Distinct (chi, orientable, components) over all assemblies.

    When the search hits ``max_results`` a second, orientable-only pass
    keeps orientable surfaces from being crowded out.
    """
    widths = _widths_of(lab)
    if max(widths) > MAX_WIDTH:
        raise BoundExceeded(f"width {max(widths)} exceeds the assembly bound {MAX_WIDTH}")
    loc = _Local(d, widths, monodromy)
    found = _enumerate(loc, max_results, False)
    if len(found) >= max_results:
        found += _enumerate(loc, max_results, True)
    return tuple(sorted({_build(loc, asm).summary() for asm in found}))
