"""Pure-Python term-arithmetic kernel.

Terms are plain dicts mapping exponent tuples to rational coefficients
stored as ``(numerator, denominator)`` int pairs: denominator positive,
lowest terms, numerator nonzero (zero coefficients are never stored).
Every polynomial operation in the package bottoms out in these loops,
so they stay on bare ints instead of fractions.Fraction.

``torsal._kernel._speedups`` is the compiled twin of this module and
must stay behaviorally identical; the kernel test suite compares both
backends term by term.
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
    # cross-reduce before multiplying; reduced inputs give a reduced result
    g1 = gcd(abs(n1), d2)
    g2 = gcd(abs(n2), d1)
    return ((n1 // g1) * (n2 // g2), (d1 // g2) * (d2 // g1))


def terms_add(a, b):
    """Sum of two term dicts; cancelled coefficients are dropped."""
    out = dict(a)
    for exps, (n2, d2) in b.items():
        cur = out.get(exps)
        if cur is None:
            out[exps] = (n2, d2)
        else:
            s = rat_add(cur[0], cur[1], n2, d2)
            if s[0] == 0:
                del out[exps]
            else:
                out[exps] = s
    return out


def terms_neg(a):
    return {exps: (-n, d) for exps, (n, d) in a.items()}


def terms_scale(a, num, den):
    """Multiply every coefficient by num/den (zero scalar clears the dict)."""
    num, den = rat_norm(num, den)
    if num == 0:
        return {}
    return {exps: rat_mul(n, d, num, den) for exps, (n, d) in a.items()}


def terms_mul(a, b):
    """Distributive product of two term dicts over one variable context."""
    if len(a) > len(b):
        a, b = b, a
    out = {}
    for e1, (n1, d1) in a.items():
        for e2, (n2, d2) in b.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            n, d = rat_mul(n1, d1, n2, d2)
            cur = out.get(key)
            if cur is None:
                out[key] = (n, d)
            else:
                s = rat_add(cur[0], cur[1], n, d)
                if s[0] == 0:
                    del out[key]
                else:
                    out[key] = s
    return out


def terms_pow(a, n, nvars):
    """a**n by binary powering; n must be a non-negative int."""
    if n < 0:
        raise ValueError("negative exponent")
    result = {(0,) * nvars: (1, 1)}
    base = a
    while n:
        if n & 1:
            result = terms_mul(result, base)
        n >>= 1
        if n:
            base = terms_mul(base, base)
    return result


def terms_eval(a, point):
    """Evaluate at a point given as a sequence of (num, den) pairs."""
    acc_n, acc_d = 0, 1
    for exps, (n, d) in a.items():
        for i, e in enumerate(exps):
            if e:
                pn, pd = point[i]
                n, d = rat_mul(n, d, pn ** e, pd ** e)
        n, d = rat_norm(n, d)
        acc_n, acc_d = rat_add(acc_n, acc_d, n, d)
    return (acc_n, acc_d)
