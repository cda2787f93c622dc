"""Pure-Python integer kernels; reference twin of ``_ckernels.pyx``.

All routines take a point ``p/q`` and a height ``mu = a/b`` as integer
pairs and work on unreduced numerators over a shared denominator, so no
gcd is ever computed inside a loop.  ``left_closed`` selects which branch
owns the point 1/2 (True: left branch, the default operator).
"""


def commuter_value(p, q, a, b, depth, left_closed=True):
    """Return ``(num, den)`` with ``num/den == f_depth(p/q)``.

    Unrolls ``f_d(x) = 1/2 f_{d-1}(2 mu x)`` (left) and
    ``f_d(x) = 1 - 1/2 f_{d-1}(2 mu (1-x))`` (right) into
    ``f_d(x) = (acc + sign * x_d) / 2**d`` with ``x_d`` the orbit point
    after ``d`` steps and ``f_0`` the identity.
    """
    two_a = 2 * a
    acc = 0
    sign = 1
    for _ in range(depth):
        twice = 2 * p
        if twice < q or (left_closed and twice == q):
            p = two_a * p
            acc = 2 * acc
        else:
            p = two_a * (q - p)
            acc = 2 * acc + 2 * sign
            sign = -sign
        q = b * q
    return acc * q + sign * p, q << depth


def commuter_sweep(ps, q, a, b, depth, left_closed=True):
    """Numerators of ``f_depth(p/q)`` for each ``p`` in ``ps``.

    All results share the denominator ``2**depth * q * b**depth``.
    """
    out = []
    append = out.append
    two_a = 2 * a
    qs = [q]
    for _ in range(depth):
        qs.append(qs[-1] * b)
    for p in ps:
        acc = 0
        sign = 1
        for k in range(depth):
            qk = qs[k]
            twice = 2 * p
            if twice < qk or (left_closed and twice == qk):
                p = two_a * p
                acc = 2 * acc
            else:
                p = two_a * (qk - p)
                acc = 2 * acc + 2 * sign
                sign = -sign
        append(acc * qs[depth] + sign * p)
    return out


def orbit_numerators(p, q, a, b, n):
    """Numerators of ``x, T(x), ..., T^{n-1}(x)`` over ``q * b**(n-1)``.

    The tent map uses the left branch at 1/2; both branches agree there.
    """
    two_a = 2 * a
    nums = [p]
    for _ in range(n - 1):
        if 2 * p <= q:
            p = two_a * p
        else:
            p = two_a * (q - p)
        q = b * q
        nums.append(p)
    # rescale x_k = nums[k] / (q0 * b**k) to the common denominator
    out = []
    scale = 1
    for k in range(n - 1, -1, -1):
        out.append(nums[k] * scale)
        scale *= b
    out.reverse()
    return out


def itinerary(p, q, a, b, depth, left_closed=True):
    """Branch bits (0 left, 1 right) of the first ``depth`` orbit points."""
    two_a = 2 * a
    bits = []
    for _ in range(depth):
        twice = 2 * p
        if twice < q or (left_closed and twice == q):
            bits.append(0)
            p = two_a * p
        else:
            bits.append(1)
            p = two_a * (q - p)
        q = b * q
    return bits
