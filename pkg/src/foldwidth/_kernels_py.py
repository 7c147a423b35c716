"""Pure-Python versions of the hot combinatorial kernels.

All maps are dense: darts are ``0..n-1``, ``sigma[d]`` is the next dart
counterclockwise at the vertex of ``d`` and ``alpha[d]`` is the other half of
the edge through ``d``.  The compiled module ``_ckernels`` exposes the same
three functions with identical results.
"""


def face_orbits(sigma, alpha):
    """Label each dart with the index of its orbit under ``d -> sigma[alpha[d]]``.

    Orbits are numbered in order of their smallest dart.  Returns
    ``(labels, count)``.
    """
    n = len(sigma)
    face = [-1] * n
    count = 0
    for d in range(n):
        if face[d] >= 0:
            continue
        x = d
        while face[x] < 0:
            face[x] = count
            x = sigma[alpha[x]]
        count += 1
    return face, count


def strand_orbits(opposite, alpha):
    """Cycles of the strand walk ``d -> opposite[alpha[d]]`` on outgoing darts.

    Each cycle is returned as the interleaved list ``[out, in, out, in, ...]``
    starting from the smallest unvisited dart, so the cycles partition all
    darts when the map is a union of immersed circles.
    """
    n = len(opposite)
    seen = [False] * n
    cycles = []
    for d in range(n):
        if seen[d]:
            continue
        seq = []
        x = d
        while not seen[x]:
            seen[x] = True
            y = alpha[x]
            if seen[y]:
                raise ValueError("strand traverses an edge twice")
            seen[y] = True
            seq.append(x)
            seq.append(y)
            x = opposite[y]
        if x != d:
            raise ValueError("strand walk is not a permutation cycle")
        cycles.append(seq)
    return cycles


def min_rooted_code(sigma, alpha, ann):
    """Lexicographically smallest BFS code over all root darts.

    For a root ``r`` darts are relabelled in breadth-first order following
    ``sigma`` then ``alpha``; the code lists ``(label[sigma[d]],
    label[alpha[d]], ann[d])`` for darts in label order.  The map must be
    connected under ``sigma`` and ``alpha``.
    """
    n = len(sigma)
    best = None
    for root in range(n):
        label = [-1] * n
        order = [root]
        label[root] = 0
        code = []
        worse = False
        equal_so_far = best is not None
        i = 0
        while i < len(order):
            d = order[i]
            for x in (sigma[d], alpha[d]):
                if label[x] < 0:
                    label[x] = len(order)
                    order.append(x)
            triple = (label[sigma[d]], label[alpha[d]], ann[d])
            if equal_so_far:
                ref = (best[3 * i], best[3 * i + 1], best[3 * i + 2])
                if triple > ref:
                    worse = True
                    break
                if triple < ref:
                    equal_so_far = False
            code.extend(triple)
            i += 1
        if worse:
            continue
        if len(order) != n:
            raise ValueError("map is not connected")
        if best is None or code < best:
            best = code
    return best if best is not None else []
