"""Ruling structure: rank, envelopes, focal points, pencil certificates."""

import random
from fractions import Fraction

import pytest

from torsal import catalog
from torsal.errors import (
    DegreeError,
    NotContainedError,
    SingularPointError,
    VerificationError,
)
from torsal.hypersurface import ParamMap, tangent_hyperplane
from torsal.polyring import Polynomial, VarContext, equal_up_to_scalar
from torsal.projgeom import ProjPoint
from torsal.ruled import (
    CHART_NOTE,
    DEFAULT_SEED,
    PENCIL_VERDICT,
    SAMPLE_COUNT,
    LineFamily,
    conic_tangency_map,
    conic_tangency_point,
    envelope,
    focal_points_on_generator,
    focal_system,
    gauss_map,
    generator_map,
    generic_rank,
    implicitize_plane_family,
    infinity_line_family,
    jacobian,
    pencil_structure_report,
    rational_roots,
)


@pytest.fixture(scope="module")
def bourgain():
    return catalog.hypersurface("bourgain")


def ruling_map():
    ctx = VarContext(["p", "u", "v"])
    p, u, v = ctx.variables()
    return ParamMap([Polynomial.one(ctx), u, v - p * u, p * v, p])


def cylinder_map():
    ctx = VarContext(["t", "u", "v"])
    t, u, v = ctx.variables()
    return ParamMap([Polynomial.one(ctx), t, u, v, t ** 2])


def quadric_map():
    ctx = VarContext(["t", "u", "v"])
    t, u, v = ctx.variables()
    return ParamMap(
        [Polynomial.one(ctx), t, u, v, t ** 2 + u ** 2 + v ** 2]
    )


class TestGaussRank:
    def test_rank_triple_through_one_code_path(self, bourgain):
        cases = [
            (bourgain, ruling_map(), 2),
            (catalog.hypersurface("cylinder-control"), cylinder_map(), 1),
            (catalog.hypersurface("quadric-control"), quadric_map(), 3),
        ]
        for h, pm, expected in cases:
            gi = gauss_map(h, pm)
            assert generic_rank(gi) == expected

    def test_rank_is_seed_deterministic(self, bourgain):
        gi = gauss_map(bourgain, ruling_map())
        first = generic_rank(gi, seed=DEFAULT_SEED)
        second = generic_rank(gi, seed=DEFAULT_SEED)
        assert first == second == 2
        assert generic_rank(gi, seed=42) == 2

    def test_sample_count_constant(self):
        assert SAMPLE_COUNT == 7

    def test_noncontained_map_is_rejected(self, bourgain):
        with pytest.raises(NotContainedError):
            gauss_map(bourgain, cylinder_map())

    def test_gauss_image_components(self, bourgain):
        gi = gauss_map(bourgain, ruling_map())
        ctx = gi.components[0].context
        p, u, v = ctx.variables()
        expected = [
            -(p ** 2) * u - p * v,
            p ** 2,
            p,
            -Polynomial.one(ctx),
            p * u + v,
        ]
        assert list(gi.components) == expected

    def test_jacobian_shape(self):
        pm = cylinder_map()
        rows = jacobian(pm)
        assert len(rows) == 5 and all(len(r) == 3 for r in rows)
        # d(t^2)/dt = 2t in the last component
        t = pm.context.variable("t")
        assert rows[4][0] == 2 * t


class TestEnvelope:
    def test_line_family_needs_joint_degree_one(self):
        ctx = VarContext(["p", "z1", "z2", "z3"])
        p, z1, z2, z3 = ctx.variables()
        family = LineFamily(p ** 2 * z1 + p * z2 - z3, "p")
        assert family.plane_vars == ("z1", "z2", "z3")
        with pytest.raises(DegreeError):
            LineFamily(p * z1 ** 2 - z3, "p")
        with pytest.raises(DegreeError):
            LineFamily(z1 * z2 + z3, "p")

    def test_quadratic_family_envelope_is_the_conic(self):
        ctx = VarContext(["p", "z1", "z2", "z3"])
        p, z1, z2, z3 = ctx.variables()
        family = LineFamily(p ** 2 * z1 + p * z2 - z3, "p")
        assert envelope(family) == z2 ** 2 + 4 * z1 * z3

    def test_envelope_eliminates_the_parameter(self):
        ctx = VarContext(["p", "z1", "z2", "z3"])
        p, z1, z2, z3 = ctx.variables()
        family = LineFamily(p ** 3 * z1 + p * z2 - z3, "p")
        env = envelope(family)
        assert env.degree_in("p") == 0
        # Res_p(a p^3 + c p + d, 3 a p^2 + c) = a^2 (4 c^3 + 27 a d^2)
        expected = z1 ** 2 * (4 * z2 ** 3 + 27 * z1 * z3 ** 2)
        same, _ = equal_up_to_scalar(env, expected)
        assert same

    def test_degree_one_family_has_no_envelope(self):
        ctx = VarContext(["p", "z1", "z2", "z3"])
        p, z1, z2, z3 = ctx.variables()
        family = LineFamily(p * z1 - z3, "p")
        with pytest.raises(DegreeError):
            envelope(family)

    def test_infinity_slice_of_the_cubic(self, bourgain):
        family = infinity_line_family(bourgain)
        f = family.f
        ctx = f.context
        p, z1, z2, z3 = (ctx.variable(n) for n in ("p", "z1", "z2", "z3"))
        assert f == p ** 2 * z1 + p * z2 - z3
        assert envelope(family) == z2 ** 2 + 4 * z1 * z3


class TestTangency:
    def test_tangency_point_is_on_line_and_conic_symbolically(self):
        pm = conic_tangency_map()
        ctx = pm.context
        p = ctx.variable("p")
        # line: p^2 z1 + p z2 - z3 at (z1, z2, z3) = components 1..3
        _, c1, c2, c3, _ = pm.components
        assert (p ** 2 * c1 + p * c2 - c3).is_zero()
        # conic: z2^2 + 4 z1 z3
        assert (c2 ** 2 + 4 * c1 * c3).is_zero()

    def test_numeric_tangency_points(self):
        rng = random.Random(84)
        for _ in range(10):
            p = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            pt = conic_tangency_point(p)
            assert pt == ProjPoint([0, 1, -2 * p, -(p ** 2), 0])

    def test_dual_constancy_along_generators(self, bourgain):
        """Two distinct affine points of one generator share their dual."""
        rng = random.Random(85)
        gmap = generator_map()
        for _ in range(10):
            p = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            q = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            lam1 = Fraction(rng.randint(1, 9))
            lam2 = -Fraction(rng.randint(1, 9), 2)
            pt1 = ProjPoint(gmap.evaluate([p, q, lam1]))
            pt2 = ProjPoint(gmap.evaluate([p, q, lam2]))
            assert pt1 != pt2
            dual1 = tangent_hyperplane(bourgain, pt1)
            dual2 = tangent_hyperplane(bourgain, pt2)
            assert dual1 == dual2

    def test_generator_center_is_singular_and_on_conic(self, bourgain):
        rng = random.Random(86)
        gmap = generator_map()
        for _ in range(10):
            p = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            q = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            center = ProjPoint(gmap.evaluate([p, q, Fraction(0)]))
            assert center == ProjPoint([0, 1, -2 * p, -(p ** 2), 0])
            with pytest.raises(SingularPointError) as exc_info:
                tangent_hyperplane(bourgain, center)
            z0, z1, z2, z3, z4 = exc_info.value.point
            assert z0 == 0 and z4 == 0
            assert z2 ** 2 + 4 * z1 * z3 == 0


class TestFocal:
    def test_matrix_and_determinant(self):
        system = focal_system()
        ctx = system.determinant.context
        q = ctx.variable("q")
        lam = ctx.variable("lam")
        assert system.matrix[0] == (2 * q, lam)
        assert system.matrix[1] == (lam, Polynomial.zero(ctx))
        assert system.determinant == -(lam ** 2)

    def test_focal_report_for_seeded_pairs(self, bourgain):
        rng = random.Random(87)
        for _ in range(10):
            p = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            q = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            report = focal_points_on_generator(bourgain, p, q)
            assert report.residual is None
            assert report.chart_note == CHART_NOTE
            (root,) = report.roots
            assert root.lam == 0 and root.multiplicity == 2
            assert root.at_infinity
            assert root.point == ProjPoint([0, 1, -2 * p, -(p ** 2), 0])

    def test_focal_rejects_surface_without_that_generator(self):
        quadric = catalog.hypersurface("quadric-control")
        with pytest.raises(NotContainedError):
            focal_points_on_generator(quadric, Fraction(1), Fraction(1))


class TestRationalRoots:
    def test_known_factorization(self):
        ctx = VarContext(["x"])
        x = ctx.variable("x")
        f = (2 * x - 3) ** 2 * (x + 1) * (x ** 2 - 2)
        roots, residual = rational_roots(f, "x")
        assert roots == [(Fraction(-1), 1), (Fraction(3, 2), 2)]
        same, _ = equal_up_to_scalar(residual, x ** 2 - 2)
        assert same

    def test_fully_split(self):
        ctx = VarContext(["lam"])
        lam = ctx.variable("lam")
        roots, residual = rational_roots(lam ** 2 * (lam - 1), "lam")
        assert roots == [(Fraction(0), 2), (Fraction(1), 1)]
        assert residual is None

    def test_no_rational_roots(self):
        ctx = VarContext(["x"])
        x = ctx.variable("x")
        roots, residual = rational_roots(x ** 2 + 1, "x")
        assert roots == []
        same, _ = equal_up_to_scalar(residual, x ** 2 + 1)
        assert same


class TestPencilReport:
    def test_all_checks_pass_for_the_cubic(self, bourgain):
        report = pencil_structure_report(bourgain)
        assert len(report.checks) == 5
        assert all(passed for _, passed in report.checks)
        ctx = report.conic.context
        z1, z2, z3 = (ctx.variable(n) for n in ("z1", "z2", "z3"))
        assert report.conic == z2 ** 2 + 4 * z1 * z3
        assert report.verdict == PENCIL_VERDICT

    def test_other_surfaces_are_rejected(self):
        with pytest.raises(VerificationError):
            pencil_structure_report(catalog.hypersurface("cylinder-control"))


class TestImplicitization:
    def test_triangular_family_recovers_the_cubic(self, bourgain):
        family = infinity_line_family(bourgain)
        recovered = implicitize_plane_family(family)
        assert recovered.f == bourgain.f

    def test_certificate_rejects_wrong_pivot(self, bourgain):
        family = infinity_line_family(bourgain)
        with pytest.raises((VerificationError, DegreeError, ValueError)):
            implicitize_plane_family(family, outer=("z1", "z3"))


class TestGeneratorMap:
    def test_components_match_the_frame_rows(self):
        gmap = generator_map()
        ctx = gmap.context
        p, q, lam = ctx.variables()
        expected = [
            lam * q,
            Polynomial.one(ctx),
            -2 * p + lam,
            -(p ** 2) + lam * p,
            lam * p * q,
        ]
        assert list(gmap.components) == expected

    def test_derivative_in_lam_is_the_second_frame_row(self):
        gmap = generator_map()
        ctx = gmap.context
        p, q, lam = ctx.variables()
        derivs = [c.partial_derivative("lam") for c in gmap.components]
        assert derivs == [q, Polynomial.zero(ctx), Polynomial.one(ctx), p, p * q]
