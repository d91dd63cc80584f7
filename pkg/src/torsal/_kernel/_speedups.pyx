# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of torsal._kernel.pure.

Same functions, same term-dict representation, bit-identical results;
coefficients stay arbitrary-precision Python ints, the win is compiled
loop and dict traffic. Keep any behavioral change mirrored in pure.py.
"""

from math import gcd


def rat_norm(num, den):
    """Normalize num/den to lowest terms with a positive denominator."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    if num == 0:
        return (0, 1)
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return (num, den)


def rat_add(n1, d1, n2, d2):
    if d1 == d2:
        n = n1 + n2
        if n == 0:
            return (0, 1)
        g = gcd(n, d1)
        return (n // g, d1 // g) if g > 1 else (n, d1)
    n = n1 * d2 + n2 * d1
    if n == 0:
        return (0, 1)
    d = d1 * d2
    g = gcd(n, d)
    return (n // g, d // g) if g > 1 else (n, d)


def rat_mul(n1, d1, n2, d2):
    g1 = gcd(abs(n1), d2)
    g2 = gcd(abs(n2), d1)
    return ((n1 // g1) * (n2 // g2), (d1 // g2) * (d2 // g1))


def terms_add(dict a, dict b):
    """Sum of two term dicts; cancelled coefficients are dropped."""
    cdef dict out = dict(a)
    cdef tuple exps, cur, c2, s
    for exps, c2 in b.items():
        cur = out.get(exps)
        if cur is None:
            out[exps] = c2
        else:
            s = rat_add(cur[0], cur[1], c2[0], c2[1])
            if s[0] == 0:
                del out[exps]
            else:
                out[exps] = s
    return out


def terms_neg(dict a):
    cdef dict out = {}
    cdef tuple exps, c
    for exps, c in a.items():
        out[exps] = (-c[0], c[1])
    return out


def terms_scale(dict a, num, den):
    """Multiply every coefficient by num/den (zero scalar clears the dict)."""
    num, den = rat_norm(num, den)
    if num == 0:
        return {}
    cdef dict out = {}
    cdef tuple exps, c
    for exps, c in a.items():
        out[exps] = rat_mul(c[0], c[1], num, den)
    return out


def terms_mul(dict a, dict b):
    """Distributive product of two term dicts over one variable context."""
    cdef dict out = {}
    cdef tuple e1, e2, c1, c2, key, prod, cur, s
    cdef Py_ssize_t i, n
    if len(a) > len(b):
        a, b = b, a
    for e1, c1 in a.items():
        n = len(e1)
        for e2, c2 in b.items():
            key = tuple([e1[i] + e2[i] for i in range(n)])
            prod = rat_mul(c1[0], c1[1], c2[0], c2[1])
            cur = out.get(key)
            if cur is None:
                out[key] = prod
            else:
                s = rat_add(cur[0], cur[1], prod[0], prod[1])
                if s[0] == 0:
                    del out[key]
                else:
                    out[key] = s
    return out


def terms_pow(dict a, n, Py_ssize_t nvars):
    """a**n by binary powering; n must be a non-negative int."""
    if n < 0:
        raise ValueError("negative exponent")
    cdef dict result = {(0,) * nvars: (1, 1)}
    cdef dict base = a
    while n:
        if n & 1:
            result = terms_mul(result, base)
        n >>= 1
        if n:
            base = terms_mul(base, base)
    return result


def terms_eval(dict a, point):
    """Evaluate at a point given as a sequence of (num, den) pairs."""
    cdef tuple exps, c, pt
    cdef Py_ssize_t i
    acc_n, acc_d = 0, 1
    pts = list(point)
    for exps, c in a.items():
        n, d = c[0], c[1]
        for i in range(len(exps)):
            e = exps[i]
            if e:
                pt = pts[i]
                n, d = rat_mul(n, d, pt[0] ** e, pt[1] ** e)
        n, d = rat_norm(n, d)
        acc_n, acc_d = rat_add(acc_n, acc_d, n, d)
    return (acc_n, acc_d)
