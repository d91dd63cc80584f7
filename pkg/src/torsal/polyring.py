"""Exact multivariate polynomial ring over arbitrary-precision rationals.

Polynomials are immutable values in canonical form: a fixed variable
context, terms stored in descending graded-lexicographic order, no zero
coefficients, coefficients in lowest terms. Structural equality is the
identity test; there is no floating point anywhere.

Coefficients are exposed as fractions.Fraction at the API boundary and
held as (numerator, denominator) int pairs inside the term kernel (see
torsal._kernel). Cross-context arithmetic is a hard error, never a
coercion.

Sign conventions, fixed here and relied on by callers:

* ``sylvester_resultant(f, g, var)`` is the determinant of the Sylvester
  matrix whose first deg_var(g) rows carry the coefficients of f
  (descending powers of var) and whose last deg_var(f) rows carry those
  of g. In particular Res(p - a, p - b) = a - b, and for a quadratic
  f = a*p^2 + b*p + c one has Res_p(f, df/dp) = -a*(b^2 - 4*a*c).
* ``discriminant(f, var)`` is b^2 - 4*a*c from the var-coefficients,
  i.e. -Res_var(f, df/dvar) / a for the quadratic case handled here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from torsal import _kernel as K
from torsal.errors import (
    ContextMismatchError,
    DegreeError,
    MissingAssignmentError,
    UnknownVariableError,
)

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class VarContext:
    """An ordered, immutable list of distinct variable names.

    Exponent vectors of monomials index into it; two contexts compare
    equal exactly when their name tuples match.
    """

    __slots__ = ("names", "_index")

    def __init__(self, names):
        names = tuple(names)
        if not names:
            raise ValueError("a variable context needs at least one name")
        for n in names:
            if not isinstance(n, str) or not _NAME_RE.match(n):
                raise ValueError(f"invalid variable name {n!r}")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.names = names
        self._index = {n: i for i, n in enumerate(names)}

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownVariableError(name, self) from None

    def __len__(self):
        return len(self.names)

    def __contains__(self, name):
        return name in self._index

    def __eq__(self, other):
        return isinstance(other, VarContext) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"VarContext({', '.join(self.names)})"

    def variable(self, name: str) -> "Polynomial":
        """The variable `name` as a polynomial."""
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(self.names)))
        return Polynomial._make(self, {exps: (1, 1)})

    def variables(self) -> tuple["Polynomial", ...]:
        """All context variables, in order, as polynomials."""
        return tuple(self.variable(n) for n in self.names)


def _grlex_key(exps):
    return (sum(exps), exps)


@total_ordering
@dataclass(frozen=True)
class Monomial:
    """Exponent vector of one term; ordered graded-lexicographically."""

    exponents: tuple

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        if any((not isinstance(e, int)) or e < 0 for e in self.exponents):
            raise ValueError(f"exponents must be non-negative ints: {self.exponents}")

    @property
    def total_degree(self) -> int:
        return sum(self.exponents)

    def __lt__(self, other):
        return _grlex_key(self.exponents) < _grlex_key(other.exponents)


def _coeff_pair(value):
    if isinstance(value, int):
        return (value, 1)
    if isinstance(value, Fraction):
        return (value.numerator, value.denominator)
    raise TypeError(f"coefficient must be int or Fraction, got {type(value).__name__}")


class Polynomial:
    """Canonical sparse polynomial over the rationals in a fixed context."""

    __slots__ = ("context", "_terms", "_hash")

    def __init__(self, context: VarContext, terms=None):
        kterms = {}
        n = len(context)
        for key, value in (terms or {}).items():
            exps = key.exponents if isinstance(key, Monomial) else tuple(key)
            if len(exps) != n:
                raise ValueError(
                    f"exponent vector {exps} does not match context of size {n}"
                )
            if any((not isinstance(e, int)) or e < 0 for e in exps):
                raise ValueError(f"exponents must be non-negative ints: {exps}")
            pair = K.rat_norm(*_coeff_pair(value))
            if pair[0]:
                cur = kterms.get(exps)
                kterms[exps] = pair if cur is None else K.rat_add(*cur, *pair)
                if kterms[exps][0] == 0:
                    del kterms[exps]
        self.context = context
        self._terms = dict(
            sorted(kterms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
        )
        self._hash = None

    @classmethod
    def _make(cls, context, kterms):
        # internal: kterms already normalized by the kernel
        self = object.__new__(cls)
        self.context = context
        self._terms = dict(
            sorted(kterms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
        )
        self._hash = None
        return self

    @classmethod
    def zero(cls, context: VarContext) -> "Polynomial":
        return cls._make(context, {})

    @classmethod
    def constant(cls, context: VarContext, value) -> "Polynomial":
        pair = K.rat_norm(*_coeff_pair(value))
        if pair[0] == 0:
            return cls.zero(context)
        return cls._make(context, {(0,) * len(context): pair})

    @classmethod
    def one(cls, context: VarContext) -> "Polynomial":
        return cls.constant(context, 1)

    # -- views ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def total_degree(self) -> int:
        """Largest term degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        if not self._terms:
            return Fraction(0)
        (n, d), = self._terms.values()
        return Fraction(n, d)

    def sorted_terms(self):
        """Terms as (Monomial, Fraction) pairs, descending graded-lex."""
        return [(Monomial(e), Fraction(n, d)) for e, (n, d) in self._terms.items()]

    def coefficient(self, key) -> Fraction:
        exps = key.exponents if isinstance(key, Monomial) else tuple(key)
        pair = self._terms.get(exps)
        return Fraction(*pair) if pair else Fraction(0)

    def leading_monomial(self) -> Monomial:
        if not self._terms:
            raise ValueError("zero polynomial has no leading monomial")
        return Monomial(next(iter(self._terms)))

    def leading_coefficient(self) -> Fraction:
        if not self._terms:
            return Fraction(0)
        return Fraction(*next(iter(self._terms.values())))

    def variables_present(self) -> tuple:
        """Names of variables that occur with positive exponent."""
        present = [False] * len(self.context)
        for exps in self._terms:
            for i, e in enumerate(exps):
                if e:
                    present[i] = True
        return tuple(n for n, p in zip(self.context.names, present) if p)

    def term_count(self) -> int:
        return len(self._terms)

    def degree_in(self, var: str) -> int:
        """Largest exponent of `var` (0 when absent); -1 for the zero polynomial."""
        i = self.context.index(var)
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def coefficients_in(self, var: str) -> list:
        """Coefficients of var^0, var^1, ... as polynomials (var removed)."""
        i = self.context.index(var)
        deg = self.degree_in(var)
        buckets = [dict() for _ in range(max(deg, 0) + 1)]
        for exps, pair in self._terms.items():
            rest = exps[:i] + (0,) + exps[i + 1:]
            buckets[exps[i]][rest] = pair
        return [Polynomial._make(self.context, b) for b in buckets]

    # -- arithmetic ----------------------------------------------------

    def _check_context(self, other):
        if self.context != other.context:
            raise ContextMismatchError(
                f"context ({', '.join(self.context.names)}) vs "
                f"({', '.join(other.context.names)})"
            )

    def _promote(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.context, other)
        return None

    def __add__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        self._check_context(other)
        return Polynomial._make(self.context, K.terms_add(self._terms, other._terms))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._make(self.context, K.terms_neg(self._terms))

    def __sub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        self._check_context(other)
        return Polynomial._make(
            self.context, K.terms_add(self._terms, K.terms_neg(other._terms))
        )

    def __rsub__(self, other):
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            pair = _coeff_pair(other)
            return Polynomial._make(self.context, K.terms_scale(self._terms, *pair))
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_context(other)
        return Polynomial._make(self.context, K.terms_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self * (Fraction(1) / Fraction(other))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial exponent must be a non-negative int")
        return Polynomial._make(
            self.context, K.terms_pow(self._terms, n, len(self.context))
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.context, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.context == other.context and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(
                (self.context.names, frozenset(self._terms.items()))
            )
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_polynomial(self)

    # -- calculus and structure ----------------------------------------

    def partial_derivative(self, var: str) -> "Polynomial":
        """Formal partial derivative with respect to `var`."""
        i = self.context.index(var)
        out = {}
        for exps, (n, d) in self._terms.items():
            e = exps[i]
            if e:
                key = exps[:i] + (e - 1,) + exps[i + 1:]
                out[key] = K.rat_norm(n * e, d)
        return Polynomial._make(self.context, out)

    def substitute(self, assignment, target_context: VarContext | None = None):
        """Ring-homomorphic image under var -> polynomial replacement.

        Every variable that occurs in f must have an image; images may be
        polynomials (sharing one target context) or plain rationals.
        """
        images = {}
        for name, img in assignment.items():
            self.context.index(name)  # validates the name
            images[name] = img
        target = target_context
        for img in images.values():
            if isinstance(img, Polynomial):
                if target is None:
                    target = img.context
                elif target != img.context:
                    raise ContextMismatchError(
                        f"substitution images mix contexts "
                        f"({', '.join(target.names)}) vs "
                        f"({', '.join(img.context.names)})"
                    )
        if target is None:
            raise ValueError(
                "substitute() needs at least one polynomial image or an "
                "explicit target_context"
            )
        needed = self.variables_present()
        for name in needed:
            if name not in images:
                raise MissingAssignmentError(
                    f"no image for variable {name!r} occurring in f"
                )
        poly_images = {}
        for name in needed:
            img = images[name]
            if not isinstance(img, Polynomial):
                img = Polynomial.constant(target, img)
            poly_images[name] = img

        nvars_t = len(target)
        one = {(0,) * nvars_t: (1, 1)}
        powers = {name: [one] for name in needed}

        def power_of(name, e):
            cache = powers[name]
            base = poly_images[name]._terms
            while len(cache) <= e:
                cache.append(K.terms_mul(cache[-1], base))
            return cache[e]

        acc = {}
        for exps, pair in self._terms.items():
            term = {(0,) * nvars_t: pair}
            for i, e in enumerate(exps):
                if e:
                    term = K.terms_mul(term, power_of(self.context.names[i], e))
            acc = K.terms_add(acc, term)
        return Polynomial._make(target, acc)

    def evaluate(self, point) -> Fraction:
        """Exact value at a rational point (one entry per context variable)."""
        point = list(point)
        if len(point) != len(self.context):
            raise ValueError(
                f"point has {len(point)} entries, context has {len(self.context)}"
            )
        pairs = [_coeff_pair(x if isinstance(x, (int, Fraction)) else Fraction(x))
                 for x in point]
        return Fraction(*K.terms_eval(self._terms, pairs))

    def homogenize(self, new_var: str, degree: int | None = None) -> "Polynomial":
        """Homogenize to `degree` with `new_var` prepended to the context."""
        if new_var in self.context:
            raise ValueError(f"variable {new_var!r} already in context")
        d = self.total_degree()
        if degree is None:
            degree = max(d, 0)
        if degree < d:
            raise DegreeError(
                f"target degree {degree} below total degree {d}"
            )
        ctx = VarContext((new_var,) + self.context.names)
        out = {}
        for exps, pair in self._terms.items():
            out[(degree - sum(exps),) + exps] = pair
        return Polynomial._make(ctx, out)

    def dehomogenize(self, var: str) -> "Polynomial":
        """Set `var` to 1 and drop it from the context."""
        i = self.context.index(var)
        names = self.context.names[:i] + self.context.names[i + 1:]
        ctx = VarContext(names)
        out = {}
        for exps, pair in self._terms.items():
            key = exps[:i] + exps[i + 1:]
            cur = out.get(key)
            if cur is None:
                out[key] = pair
            else:
                s = K.rat_add(*cur, *pair)
                if s[0] == 0:
                    del out[key]
                else:
                    out[key] = s
        return Polynomial._make(ctx, out)

    def rename(self, new_names) -> "Polynomial":
        """Same polynomial over a context with positionally renamed variables."""
        ctx = VarContext(new_names)
        if len(ctx) != len(self.context):
            raise ValueError(
                f"renaming needs {len(self.context)} names, got {len(ctx)}"
            )
        return Polynomial._make(ctx, dict(self._terms))


# -- module-level operation surface ------------------------------------


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def partial_derivative(f: Polynomial, var: str) -> Polynomial:
    return f.partial_derivative(var)


def substitute(f: Polynomial, assignment, target_context=None) -> Polynomial:
    return f.substitute(assignment, target_context)


def evaluate(f: Polynomial, point) -> Fraction:
    return f.evaluate(point)


def homogenize(f: Polynomial, new_var: str, degree=None) -> Polynomial:
    return f.homogenize(new_var, degree)


def dehomogenize(f: Polynomial, var: str) -> Polynomial:
    return f.dehomogenize(var)


def det_over_ring(rows):
    """Determinant by cofactor expansion along the sparsest row.

    Entries need +, *, unary -, and truthiness (zero is falsy); works for
    Fraction and Polynomial alike. Adequate for the <= 6x6 matrices here.
    """
    rows = [list(r) for r in rows]
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("determinant needs a non-empty square matrix")
    return _det(rows)


def _det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    best = min(range(n), key=lambda i: sum(1 for x in rows[i] if x))
    row = rows[best]
    rest = [r for k, r in enumerate(rows) if k != best]
    total = None
    for j, entry in enumerate(row):
        if not entry:
            continue
        minor = [[r[k] for k in range(n) if k != j] for r in rest]
        term = entry * _det(minor)
        if (best + j) % 2:
            term = -term
        total = term if total is None else total + term
    if total is None:
        return rows[0][0] * 0  # a zero row: determinant is the ring zero
    return total


def sylvester_resultant(f: Polynomial, g: Polynomial, var: str) -> Polynomial:
    """Resultant of f and g with respect to `var`.

    Standard Sylvester layout (f-rows first, descending coefficients);
    see the module docstring for the resulting sign convention.
    """
    f._check_context(g)
    m = f.degree_in(var)
    n = g.degree_in(var)
    if m < 1:
        raise DegreeError(f"first input has degree {m} in {var!r}; need >= 1")
    if n < 1:
        raise DegreeError(f"second input has degree {n} in {var!r}; need >= 1")
    fc = f.coefficients_in(var)[::-1]  # [a_m, ..., a_0]
    gc = g.coefficients_in(var)[::-1]
    size = m + n
    zero = Polynomial.zero(f.context)
    rows = []
    for i in range(n):
        rows.append([zero] * i + fc + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + gc + [zero] * (size - n - 1 - i))
    return det_over_ring(rows)


def discriminant(f: Polynomial, var: str) -> Polynomial:
    """b^2 - 4*a*c of a polynomial quadratic in `var`."""
    if f.degree_in(var) != 2:
        raise DegreeError(
            f"discriminant needs degree exactly 2 in {var!r}, "
            f"got {f.degree_in(var)}"
        )
    c0, c1, c2 = f.coefficients_in(var)
    return c1 * c1 - 4 * c2 * c0


def equal_up_to_scalar(f: Polynomial, g: Polynomial):
    """Whether f = c*g for a nonzero rational c; returns (bool, c or None)."""
    f._check_context(g)
    if f.is_zero() and g.is_zero():
        return True, Fraction(1)
    if f.is_zero() or g.is_zero():
        return False, None
    if f._terms.keys() != g._terms.keys():
        return False, None
    c = f.leading_coefficient() / g.leading_coefficient()
    if f == g * c:
        return True, c
    return False, None


def content(f: Polynomial) -> Fraction:
    """Positive rational content: gcd of numerators over lcm of denominators."""
    if f.is_zero():
        return Fraction(0)
    from math import gcd, lcm

    nums = [abs(n) for (n, _) in f._terms.values()]
    dens = [d for (_, d) in f._terms.values()]
    g = 0
    for x in nums:
        g = gcd(g, x)
    l = 1
    for x in dens:
        l = lcm(l, x)
    return Fraction(g, l)


def primitive_part(f: Polynomial) -> Polynomial:
    """f divided by its content (coprime integer coefficients); 0 stays 0."""
    c = content(f)
    if c == 0:
        return f
    return f * (1 / c)


# -- canonical text rendering ------------------------------------------


def format_polynomial(f: Polynomial) -> str:
    """Canonical text form, descending graded-lex, reparseable by the CLI grammar.

    Coefficients print as "n" or "n/d"; a denominator only appears when it
    is not 1, and such strings are output-only (the input grammar has no
    '/'). A leading negative unit coefficient is written explicitly as
    "-1*" when the first variable factor carries an exponent, because the
    grammar binds unary minus tighter than '^'.
    """
    if f.is_zero():
        return "0"
    names = f.context.names
    pieces = []
    for idx, (exps, (num, den)) in enumerate(f._terms.items()):
        coef = Fraction(num, den)
        factors = []
        for name, e in zip(names, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(coef)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
            if idx == 0 and coef < 0 and "^" in factors[0]:
                body = "1*" + body
        else:
            body = str(mag) + "*" + "*".join(factors)
        if idx == 0:
            pieces.append(body if coef > 0 else "-" + body)
        else:
            pieces.append((" + " if coef > 0 else " - ") + body)
    return "".join(pieces)
