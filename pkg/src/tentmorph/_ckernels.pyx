# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``.

Orbit numerators stay Python ints (they outgrow any fixed width after a
few dozen steps); the loop control, branch tests and the dyadic
accumulator run in C.  The accumulator is bounded by ``2**(depth+1)`` so
it is kept as a C integer up to depth 61 and promoted afterwards.
"""

cdef int ACC_LIMIT = 61


def commuter_value(object p, object q, object a, object b, int depth, bint left_closed=True):
    cdef object two_a = 2 * a
    cdef long long acc = 0
    cdef object big_acc
    cdef int sign = 1
    cdef int k
    cdef int cmp
    if depth > ACC_LIMIT:
        return _commuter_value_big(p, q, a, b, depth, left_closed)
    for k in range(depth):
        cmp = _cmp_half(p, q)
        if cmp < 0 or (left_closed and cmp == 0):
            p = two_a * p
            acc = 2 * acc
        else:
            p = two_a * (q - p)
            acc = 2 * acc + 2 * sign
            sign = -sign
        q = b * q
    big_acc = acc
    return big_acc * q + (p if sign > 0 else -p), q << depth


cdef inline int _cmp_half(object p, object q):
    cdef object twice = p + p
    if twice < q:
        return -1
    if twice == q:
        return 0
    return 1


def _commuter_value_big(object p, object q, object a, object b, int depth, bint left_closed):
    cdef object two_a = 2 * a
    cdef object acc = 0
    cdef int sign = 1
    cdef int k
    cdef int cmp
    for k in range(depth):
        cmp = _cmp_half(p, q)
        if cmp < 0 or (left_closed and cmp == 0):
            p = two_a * p
            acc = acc + acc
        else:
            p = two_a * (q - p)
            acc = acc + acc + 2 * sign
            sign = -sign
        q = b * q
    return acc * q + (p if sign > 0 else -p), q << depth


def commuter_sweep(ps, object q, object a, object b, int depth, bint left_closed=True):
    cdef object two_a = 2 * a
    cdef list qs = [q]
    cdef list out = []
    cdef long long acc
    cdef int sign, k, cmp
    cdef object p, qk, big_acc
    if depth > ACC_LIMIT:
        return [_commuter_value_big(p, q, a, b, depth, left_closed)[0] for p in ps]
    for k in range(depth):
        qs.append(qs[k] * b)
    for p in ps:
        acc = 0
        sign = 1
        for k in range(depth):
            qk = qs[k]
            cmp = _cmp_half(p, qk)
            if cmp < 0 or (left_closed and cmp == 0):
                p = two_a * p
                acc = 2 * acc
            else:
                p = two_a * (qk - p)
                acc = 2 * acc + 2 * sign
                sign = -sign
        big_acc = acc
        out.append(big_acc * qs[depth] + (p if sign > 0 else -p))
    return out


def orbit_numerators(object p, object q, object a, object b, int n):
    cdef object two_a = 2 * a
    cdef list nums = [p]
    cdef list out
    cdef object scale
    cdef int k
    for k in range(n - 1):
        if _cmp_half(p, q) <= 0:
            p = two_a * p
        else:
            p = two_a * (q - p)
        q = b * q
        nums.append(p)
    out = [None] * n
    scale = 1
    for k in range(n - 1, -1, -1):
        out[k] = nums[k] * scale
        scale = scale * b
    return out


def itinerary(object p, object q, object a, object b, int depth, bint left_closed=True):
    cdef object two_a = 2 * a
    cdef list bits = []
    cdef int k, cmp
    for k in range(depth):
        cmp = _cmp_half(p, q)
        if cmp < 0 or (left_closed and cmp == 0):
            bits.append(0)
            p = two_a * p
        else:
            bits.append(1)
            p = two_a * (q - p)
        q = b * q
    return bits
