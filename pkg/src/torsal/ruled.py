"""Ruled and torsal structure of hypersurfaces in P^4.

Gauss maps and their generic rank, envelopes of line families, focal
systems of the line foliation, and the pencil-decomposition certificate.
Every certificate is a polynomial identity; rank statements use exact
rational sampling with a fixed seed.

Rank convention: the rank of a projective map is computed as
rank([Jacobian | image vector]) - 1 at a sample point. The generic rank
is the maximum over SAMPLE_COUNT seeded rational points; lower-rank loci
are proper closed subsets, so the max attains the generic value unless
every sample lands in a measure-zero set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from torsal.errors import (
    BaseLocusError,
    DegreeError,
    NotContainedError,
    VerificationError,
)
from torsal.hypersurface import Hypersurface, ParamMap, contains_parametrized, gradient
from torsal.polyring import (
    Polynomial,
    VarContext,
    discriminant,
    equal_up_to_scalar,
    primitive_part,
    sylvester_resultant,
)
from torsal.projgeom import ProjPoint, adjugate, rank

SAMPLE_COUNT = 7
DEFAULT_SEED = 1729

CHART_NOTE = (
    "lam is an affine coordinate on the generator through frame rows 1 and 2; "
    "the point at lam = infinity (frame row 2) is not examined"
)


def _sample_point(rng, n):
    # small numerators and denominators keep the exact arithmetic cheap
    return [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n)]


class LineFamily:
    """A family of lines in a plane: linear in three plane coordinates,
    polynomial in one family parameter."""

    __slots__ = ("f", "param", "plane_vars")

    def __init__(self, f: Polynomial, param: str):
        names = f.context.names
        if len(names) != 4:
            raise ValueError(
                f"a LineFamily context has the parameter plus 3 plane "
                f"coordinates; got {len(names)} variables"
            )
        f.context.index(param)  # validates
        plane = tuple(n for n in names if n != param)
        plane_idx = [f.context.index(n) for n in plane]
        for mono, _ in f.sorted_terms():
            d = sum(mono.exponents[i] for i in plane_idx)
            if d != 1:
                raise DegreeError(
                    f"term {mono.exponents} has joint degree {d} in the plane "
                    f"coordinates {plane}; a line family needs exactly 1"
                )
        self.f = f
        self.param = param
        self.plane_vars = plane

    def __repr__(self):
        return f"LineFamily({self.f}; param={self.param})"


class GaussImage:
    """The gradient of a hypersurface composed with a parametrization."""

    __slots__ = ("map",)

    def __init__(self, pm: ParamMap):
        self.map = pm

    @property
    def components(self):
        return self.map.components

    @property
    def context(self):
        return self.map.context

    @property
    def params(self):
        return self.map.params

    def __repr__(self):
        return f"GaussImage({', '.join(str(c) for c in self.components)})"


class FocalSystem:
    """2x2 linear system cutting out the focal points on a generator."""

    __slots__ = ("matrix", "determinant")

    def __init__(self, matrix, determinant: Polynomial):
        matrix = tuple(tuple(r) for r in matrix)
        if len(matrix) != 2 or any(len(r) != 2 for r in matrix):
            raise ValueError("focal system matrix is 2x2")
        self.matrix = matrix
        m = matrix
        recomputed = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if recomputed != determinant:
            raise VerificationError(
                "stored focal determinant does not match the matrix"
            )
        self.determinant = determinant


@dataclass(frozen=True)
class FocalPoint:
    lam: Fraction
    multiplicity: int
    point: ProjPoint
    at_infinity: bool


@dataclass(frozen=True)
class FocalReport:
    p: Fraction
    q: Fraction
    roots: tuple
    residual: Polynomial | None
    chart_note: str


@dataclass(frozen=True)
class PencilReport:
    checks: tuple
    conic: Polynomial
    verdict: str


# -- Gauss map and rank --------------------------------------------------


def gauss_map(h: Hypersurface, pm: ParamMap) -> GaussImage:
    """Each gradient component composed with pm.

    Requires pm to lie on h identically (NotContainedError otherwise):
    off the surface the gradient is not a tangent-hyperplane field.
    """
    if not contains_parametrized(h, pm):
        raise NotContainedError(
            "parametrization does not lie on the hypersurface; "
            "its Gauss image is undefined"
        )
    assignment = dict(zip(h.context.names, pm.components))
    comps = [g.substitute(assignment, target_context=pm.context) for g in gradient(h)]
    return GaussImage(ParamMap(comps))


def jacobian(pm) -> list:
    """5 x #params matrix of Polynomials; column j is d(pm)/d(param j)."""
    comps = pm.components
    params = pm.params
    return [[c.partial_derivative(name) for name in params] for c in comps]


def generic_rank(gi, seed: int = DEFAULT_SEED, sample_count: int = SAMPLE_COUNT) -> int:
    """Generic rank of the projectivized map: max over seeded samples of
    rank([Jacobian | image]) - 1.

    Samples with a zero image vector (base locus) are skipped; if every
    sample lands there, BaseLocusError advises retrying with a new seed.
    """
    comps = gi.components
    params = gi.params
    jac = jacobian(gi)
    rng = random.Random(seed)
    best = None
    for _ in range(sample_count):
        point = _sample_point(rng, len(params))
        image = [c.evaluate(point) for c in comps]
        if not any(image):
            continue
        rows = [
            [entry.evaluate(point) for entry in jrow] + [img]
            for jrow, img in zip(jac, image)
        ]
        r = rank(rows) - 1
        best = r if best is None else max(best, r)
    if best is None:
        raise BaseLocusError(seed)
    return best


# -- envelopes and the conic ---------------------------------------------


def envelope(lf: LineFamily, param: str | None = None) -> Polynomial:
    """Envelope of the family: discriminant in the parameter.

    The quadratic case is primary; higher degrees fall back to the
    resultant of (f, df/dparam) with integer content removed. Families
    of degree < 2 in the parameter have no envelope (DegreeError).
    """
    var = param if param is not None else lf.param
    f = lf.f
    d = f.degree_in(var)
    if d == 2:
        return discriminant(f, var)
    if d > 2:
        return primitive_part(
            sylvester_resultant(f, f.partial_derivative(var), var)
        )
    raise DegreeError(
        f"family has degree {d} in {var!r}; an envelope needs degree >= 2"
    )


def conic_tangency_point(p) -> ProjPoint:
    """Where the moving line touches its envelope: (0, 1, -2p, -p^2, 0)."""
    p = Fraction(p)
    return ProjPoint((Fraction(0), Fraction(1), -2 * p, -p * p, Fraction(0)))


def conic_tangency_map(param: str = "p") -> ParamMap:
    """The symbolic tangency point as a one-parameter ParamMap."""
    ctx = VarContext([param])
    p = ctx.variable(param)
    zero = Polynomial.zero(ctx)
    return ParamMap([zero, Polynomial.one(ctx), -2 * p, -(p ** 2), zero])


def infinity_line_family(h: Hypersurface, param: str = "p") -> LineFamily:
    """Restrict h to the slice {first coordinate = 1, last = param}: the
    induced family of loci in the middle three coordinates.

    For a surface ruled over the line spanned by the first and last
    basis points this is a family of lines (LineFamily validates)."""
    names = h.context.names
    mid = names[1:4]
    ctx = VarContext((param,) + mid)
    p = ctx.variable(param)
    assignment = {
        names[0]: Polynomial.one(ctx),
        names[4]: p,
        names[1]: ctx.variable(mid[0]),
        names[2]: ctx.variable(mid[1]),
        names[3]: ctx.variable(mid[2]),
    }
    restricted = h.f.substitute(assignment, target_context=ctx)
    return LineFamily(restricted, param)


def implicitize_plane_family(lf: LineFamily, outer=("z0", "z4")) -> Hypersurface:
    """Implicitize the union of planes spanned by the moving line lf (in
    the plane at infinity) and the moving proper point (1,0,0,0,t).

    Eliminates the family parameter t from {line equation, t*z0 - z4 = 0}
    by the resultant, then certifies the result: it must be homogeneous
    and must contain the triangular parametrization read off by solving
    the line equation for a plane coordinate with constant coefficient.
    Only that triangular shape is supported.
    """
    t = lf.param
    z0_name, z4_name = outer
    plane = lf.plane_vars
    names6 = (t, z0_name) + plane + (z4_name,)
    ctx6 = VarContext(names6)
    f6 = lf.f.substitute(
        {n: ctx6.variable(n) for n in lf.f.context.names}, target_context=ctx6
    )
    tv = ctx6.variable(t)
    g = tv * ctx6.variable(z0_name) - ctx6.variable(z4_name)
    r = sylvester_resultant(f6, g, t)
    result = r.dehomogenize(t)  # t no longer occurs; this just drops it
    h = Hypersurface(result)

    # certify: solve the line for a plane variable whose coefficient is a
    # nonzero constant (the triangular structure), parametrize, substitute
    pivot = None
    for name in plane:
        coeffs = lf.f.coefficients_in(name)
        if len(coeffs) >= 2 and coeffs[1].is_constant() and not coeffs[1].is_zero():
            pivot = name
            break
    if pivot is None:
        raise DegreeError(
            "no plane coordinate has a constant nonzero coefficient; "
            "only the triangular family shape is supported"
        )
    free = [n for n in plane if n != pivot]
    pctx = VarContext(("alpha", "beta", "gamma", t))
    alpha = pctx.variable("alpha")
    free_images = dict(zip(free, (pctx.variable("beta"), pctx.variable("gamma"))))
    c_pivot = lf.f.coefficients_in(pivot)[1].constant_value()
    rest = lf.f.substitute(
        {
            t: pctx.variable(t),
            pivot: Polynomial.zero(pctx),
            **free_images,
        },
        target_context=pctx,
    )
    pivot_image = -rest / c_pivot
    plane_images = dict(free_images)
    plane_images[pivot] = pivot_image
    components = {
        z0_name: alpha,
        z4_name: pctx.variable(t) * alpha,
        **plane_images,
    }
    pm = ParamMap([components[n] for n in h.context.names])
    if not contains_parametrized(h, pm):
        raise VerificationError(
            "implicitization certificate failed: the triangular "
            "parametrization does not satisfy the eliminated equation"
        )
    return h


# -- symbolic frame and focal analysis ------------------------------------


def _symbolic_frame(ctx: VarContext, p_name: str = "p", q_name: str = "q"):
    """Frame rows B0..B4 with Polynomial entries over ctx."""
    p = ctx.variable(p_name)
    q = ctx.variable(q_name)
    one = Polynomial.one(ctx)
    zero = Polynomial.zero(ctx)
    return [
        [one, zero, zero, zero, p],
        [zero, one, -2 * p, -(p ** 2), zero],
        [q, zero, one, p, p * q],
        [zero, zero, zero, one, zero],
        [zero, zero, zero, zero, one],
    ]


def generator_map(p_name: str = "p", q_name: str = "q", lam_name: str = "lam") -> ParamMap:
    """The moving point Z = B1 + lam*B2 on the generator, in fixed coordinates."""
    ctx = VarContext([p_name, q_name, lam_name])
    frame = _symbolic_frame(ctx, p_name, q_name)
    lam = ctx.variable(lam_name)
    return ParamMap(
        [b1 + lam * b2 for b1, b2 in zip(frame[1], frame[2])]
    )


def focal_system(q_name: str = "q", lam_name: str = "lam") -> FocalSystem:
    """Derive the focal system of the line foliation symbolically.

    Differentiates Z = B1 + lam*B2 by (p, q, lam), rewrites each partial
    in the moving frame via the exact frame inverse, checks that
    d(Z)/d(lam) is B2 and that everything else lives in
    span{B0, B1, B2, B3 + q*B4}, and returns the 2x2 coefficient system
    of the motion transverse to the generator. Entries end up in the
    (q, lam) ring; the determinant is -lam^2.
    """
    ctx = VarContext(["p", q_name, lam_name])
    frame = _symbolic_frame(ctx, "p", q_name)
    lam = ctx.variable(lam_name)
    q = ctx.variable(q_name)
    zero = Polynomial.zero(ctx)

    det = _frame_det(frame)
    if det != Polynomial.one(ctx):
        raise VerificationError("frame determinant is not 1")
    inv = adjugate(frame)  # equals the inverse since det = 1

    Z = [b1 + lam * b2 for b1, b2 in zip(frame[1], frame[2])]

    def in_frame(vec):
        # row vector of A-coordinates -> row vector of frame coordinates
        return [
            sum((vec[j] * inv[j][k] for j in range(5)), zero) for k in range(5)
        ]

    d_lam = in_frame([c.partial_derivative(lam_name) for c in Z])
    if d_lam != [zero, zero, Polynomial.one(ctx), zero, zero]:
        raise VerificationError("d(Z)/d(lam) is not the frame point B2")

    rows = []
    for var in ("p", q_name):
        coeffs = in_frame([c.partial_derivative(var) for c in Z])
        # transverse part: B1, B2 components are motion along the
        # generator itself and are discarded
        b0, b3, b4 = coeffs[0], coeffs[3], coeffs[4]
        if b4 != q * b3:
            raise VerificationError(
                "transverse motion is not in span{B0, B3 + q*B4}"
            )
        rows.append((b0, b3))
    matrix = [[rows[0][0], rows[1][0]], [rows[0][1], rows[1][1]]]

    ctx2 = VarContext([q_name, lam_name])
    out = []
    for row in matrix:
        out_row = []
        for entry in row:
            if "p" in entry.variables_present():
                raise VerificationError("focal entries unexpectedly involve p")
            out_row.append(entry.dehomogenize("p"))
        out.append(out_row)
    det2 = out[0][0] * out[1][1] - out[0][1] * out[1][0]
    return FocalSystem(out, det2)


def _frame_det(rows):
    from torsal.polyring import det_over_ring

    return det_over_ring(rows)


def rational_roots(f: Polynomial, var: str):
    """All rational roots of a univariate polynomial, with multiplicity.

    Returns (roots, residual): roots as (Fraction, multiplicity) pairs
    sorted ascending, and the residual factor (None when the polynomial
    splits completely over the rationals, up to a constant).
    """
    if len(f.context) != 1 or f.context.names[0] != var:
        f = f.substitute(
            {var: VarContext([var]).variable(var)},
            target_context=VarContext([var]),
        )
    if f.is_zero():
        raise ValueError("the zero polynomial has every rational as a root")
    coeffs = [f.coefficient((k,)) for k in range(f.total_degree() + 1)]
    roots = []

    # root at 0: multiplicity = number of leading zero coefficients
    mult0 = 0
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))

    def integerize(cs):
        from math import lcm

        scale = lcm(*(c.denominator for c in cs))
        ints = [int(c * scale) for c in cs]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        return [x // (g or 1) for x in ints]

    def divisors(n):
        n = abs(n)
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    while len(coeffs) > 1:
        ints = integerize(coeffs)
        found = None
        for den in divisors(ints[-1]):
            for num in divisors(ints[0]):
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    val = Fraction(0)
                    for c in reversed(ints):
                        val = val * cand + c
                    if val == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        mult = 0
        # exact synthetic division by (x - found), repeated while it divides
        while True:
            out = []
            acc = Fraction(0)
            for c in reversed(coeffs):
                acc = acc * found + c
                out.append(acc)
            rem = out.pop()
            if rem != 0:
                break
            coeffs = list(reversed(out))
            mult += 1
            if len(coeffs) == 1:
                break
        roots.append((found, mult))

    roots.sort(key=lambda rm: rm[0])
    residual = None
    if len(coeffs) > 1:
        ctx1 = VarContext([var])
        residual = Polynomial(
            ctx1, {(k,): c for k, c in enumerate(coeffs)}
        )
        residual = primitive_part(residual)
    return roots, residual


def focal_points_on_generator(h: Hypersurface, p, q) -> FocalReport:
    """Roots of the focal determinant on the (p, q) generator, with the
    corresponding points and their at-infinity status.

    Verifies first that the generator actually lies on h."""
    p, q = Fraction(p), Fraction(q)
    gm = generator_map()
    lam_ctx = VarContext(["lam"])
    lam = lam_ctx.variable("lam")
    line = ParamMap(
        [
            c.substitute(
                {"p": p, "q": q, "lam": lam}, target_context=lam_ctx
            )
            for c in gm.components
        ]
    )
    if not contains_parametrized(h, line):
        raise NotContainedError(
            f"the generator at (p, q) = ({p}, {q}) does not lie on the "
            "hypersurface"
        )
    fs = focal_system()
    det_q = fs.determinant.substitute(
        {"q": q, "lam": lam}, target_context=lam_ctx
    )
    roots, residual = rational_roots(det_q, "lam")
    frame_rows = _numeric_frame(p, q)
    out = []
    for lam0, mult in roots:
        coords = tuple(
            b1 + lam0 * b2 for b1, b2 in zip(frame_rows[1], frame_rows[2])
        )
        pt = ProjPoint(coords)
        at_inf = coords[0] == 0 and coords[4] == 0
        out.append(FocalPoint(lam0, mult, pt, at_inf))
    return FocalReport(p, q, tuple(out), residual, CHART_NOTE)


def _numeric_frame(p: Fraction, q: Fraction):
    from torsal.projgeom import frame_bourgain

    return frame_bourgain(p, q).rows


# -- pencil decomposition certificate --------------------------------------


PENCIL_VERDICT = "torsal: pencils of lines, centers on conic C"


def pencil_structure_report(h: Hypersurface) -> PencilReport:
    """Certify that the two-parameter generator family decomposes into
    plane pencils: for fixed p all generators pass through one center
    lying on the envelope conic, inside one moving 2-plane contained in h.

    Every check is a symbolic polynomial identity. Only the standard
    cubic (in any variable names) is accepted; anything else raises
    VerificationError.
    """
    n = h.context.names
    v = [h.context.variable(name) for name in n]
    std = v[1] * v[4] ** 2 + v[0] * v[2] * v[4] - v[0] ** 2 * v[3]
    if h.f != std:
        raise VerificationError(
            "pencil structure is certified only for the standard ruled "
            "cubic; got a different polynomial"
        )

    checks = []

    lf = infinity_line_family(h)
    checks.append(("slice at infinity is a family of lines", True))

    conic = envelope(lf)

    ctx = VarContext(["p", "q"])
    frame = _symbolic_frame(ctx)
    b0, b1, b2 = frame[0], frame[1], frame[2]
    center_fixed = all(c.partial_derivative("q").is_zero() for c in b1)
    checks.append(("pencil center does not move with q", center_fixed))

    q = ctx.variable("q")
    db1 = [c.partial_derivative("p") for c in b1]
    in_plane = all(
        b2j == q * b0j - db1j / 2 for b2j, b0j, db1j in zip(b2, b0, db1)
    )
    checks.append(
        ("generators lie in the plane of the center, its tangent "
         "direction, and the moving point", in_plane)
    )

    pctx = VarContext(["alpha", "beta", "gamma", "p"])
    alpha, beta, gamma = (pctx.variable(s) for s in ("alpha", "beta", "gamma"))
    fr = _symbolic_frame_p(pctx)
    b0p, b1p = fr[0], fr[1]
    db1p = [c.partial_derivative("p") for c in b1p]
    plane_map = ParamMap(
        [
            alpha * a + beta * b - gamma * d / 2
            for a, b, d in zip(b0p, b1p, db1p)
        ]
    )
    checks.append(
        ("moving 2-plane lies on the hypersurface",
         contains_parametrized(h, plane_map))
    )

    tangency = conic_tangency_map()
    tctx = tangency.context
    center_on_conic = conic.substitute(
        {
            lf.param: tctx.variable("p"),
            lf.plane_vars[0]: tangency.components[1],
            lf.plane_vars[1]: tangency.components[2],
            lf.plane_vars[2]: tangency.components[3],
        },
        target_context=tctx,
    ).is_zero()
    checks.append(("pencil centers lie on the envelope conic", center_on_conic))

    if not all(ok for _, ok in checks):
        failed = [name for name, ok in checks if not ok]
        raise VerificationError("pencil certificate failed: " + "; ".join(failed))
    return PencilReport(tuple(checks), conic, PENCIL_VERDICT)


def _symbolic_frame_p(ctx: VarContext):
    """Frame rows over a context whose last variable plays the role of p
    and that has no q (the q-dependent entries are set with q = 0)."""
    p = ctx.variable("p")
    one = Polynomial.one(ctx)
    zero = Polynomial.zero(ctx)
    return [
        [one, zero, zero, zero, p],
        [zero, one, -2 * p, -(p ** 2), zero],
        [zero, zero, one, p, zero],
        [zero, zero, zero, one, zero],
        [zero, zero, zero, zero, one],
    ]
