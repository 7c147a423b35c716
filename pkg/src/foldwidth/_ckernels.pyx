# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the kernels in ``_kernels_py``; same signatures and results."""

from libc.stdlib cimport malloc, free


def face_orbits(sigma, alpha):
    cdef Py_ssize_t n = len(sigma)
    cdef int *sg = <int *> malloc(n * sizeof(int))
    cdef int *al = <int *> malloc(n * sizeof(int))
    cdef Py_ssize_t d
    cdef int x, count = 0
    face = [-1] * n
    cdef int *fc = <int *> malloc(n * sizeof(int))
    try:
        for d in range(n):
            sg[d] = sigma[d]
            al[d] = alpha[d]
            fc[d] = -1
        for d in range(n):
            if fc[d] >= 0:
                continue
            x = <int> d
            while fc[x] < 0:
                fc[x] = count
                x = sg[al[x]]
            count += 1
        for d in range(n):
            face[d] = fc[d]
    finally:
        free(sg)
        free(al)
        free(fc)
    return face, count


def strand_orbits(opposite, alpha):
    cdef Py_ssize_t n = len(opposite)
    cdef Py_ssize_t d
    cdef int x, y
    seen = bytearray(n)
    cycles = []
    for d in range(n):
        if seen[d]:
            continue
        seq = []
        x = <int> d
        while not seen[x]:
            seen[x] = 1
            y = alpha[x]
            if seen[y]:
                raise ValueError("strand traverses an edge twice")
            seen[y] = 1
            seq.append(x)
            seq.append(y)
            x = opposite[y]
        if x != d:
            raise ValueError("strand walk is not a permutation cycle")
        cycles.append(seq)
    return cycles


cdef inline int _cmp3(long a0, long a1, long a2, long b0, long b1, long b2):
    if a0 != b0:
        return -1 if a0 < b0 else 1
    if a1 != b1:
        return -1 if a1 < b1 else 1
    if a2 != b2:
        return -1 if a2 < b2 else 1
    return 0


def min_rooted_code(sigma, alpha, ann):
    cdef Py_ssize_t n = len(sigma)
    if n == 0:
        return []
    cdef int *sg = <int *> malloc(n * sizeof(int))
    cdef int *al = <int *> malloc(n * sizeof(int))
    cdef long *an = <long *> malloc(n * sizeof(long))
    cdef int *label = <int *> malloc(n * sizeof(int))
    cdef int *order = <int *> malloc(n * sizeof(int))
    cdef long *code = <long *> malloc(3 * n * sizeof(long))
    cdef long *best = <long *> malloc(3 * n * sizeof(long))
    cdef int root, i, j, top, d, x, k, cmp
    cdef long t0, t1, t2
    cdef bint have_best = False, equal_so_far, worse
    try:
        for i in range(n):
            sg[i] = sigma[i]
            al[i] = alpha[i]
            an[i] = ann[i]
        for root in range(n):
            for i in range(n):
                label[i] = -1
            label[root] = 0
            order[0] = root
            top = 1
            equal_so_far = have_best
            worse = False
            i = 0
            while i < top:
                d = order[i]
                for k in range(2):
                    x = sg[d] if k == 0 else al[d]
                    if label[x] < 0:
                        label[x] = top
                        order[top] = x
                        top += 1
                t0 = label[sg[d]]
                t1 = label[al[d]]
                t2 = an[d]
                if equal_so_far:
                    cmp = _cmp3(t0, t1, t2, best[3 * i], best[3 * i + 1], best[3 * i + 2])
                    if cmp > 0:
                        worse = True
                        break
                    if cmp < 0:
                        equal_so_far = False
                code[3 * i] = t0
                code[3 * i + 1] = t1
                code[3 * i + 2] = t2
                i += 1
            if worse:
                continue
            if top != n:
                raise ValueError("map is not connected")
            if not have_best or not equal_so_far:
                # a finished code that never compared greater is strictly smaller or the first
                for j in range(3 * n):
                    best[j] = code[j]
                have_best = True
        return [best[j] for j in range(3 * n)]
    finally:
        free(sg)
        free(al)
        free(an)
        free(label)
        free(order)
        free(code)
        free(best)
