"""Hypersurfaces: gradients, containment, tangent hyperplanes."""

import random
from fractions import Fraction

import pytest

from conftest import make_random_homogeneous
from torsal import catalog
from torsal.errors import (
    NonHomogeneousError,
    PointNotOnSurfaceError,
    SingularPointError,
)
from torsal.hypersurface import (
    Hypersurface,
    ParamMap,
    contains_parametrized,
    contains_point,
    gradient,
    singular_locus_generators,
    tangent_hyperplane,
)
from torsal.polyring import Polynomial, VarContext
from torsal.projgeom import ProjPoint


@pytest.fixture
def cubic(zctx):
    z0, z1, z2, z3, z4 = zctx.variables()
    return Hypersurface(z1 * z4 ** 2 + z0 * z2 * z4 - z0 ** 2 * z3)


class TestConstruction:
    def test_rejects_non_homogeneous(self, zctx):
        z0 = zctx.variable("z0")
        with pytest.raises(NonHomogeneousError) as exc_info:
            Hypersurface(z0 ** 2 + z0)
        assert exc_info.value.offending_terms

    def test_rejects_zero_and_wrong_arity(self):
        with pytest.raises(ValueError):
            Hypersurface(Polynomial.zero(VarContext(["z0", "z1", "z2", "z3", "z4"])))
        ctx3 = VarContext(["x", "y", "z"])
        with pytest.raises(ValueError):
            Hypersurface(ctx3.variable("x") ** 2)

    def test_basic_accessors(self, cubic):
        assert cubic.degree == 3
        assert cubic.context.names == ("z0", "z1", "z2", "z3", "z4")


class TestGradient:
    def test_cubic_gradient_is_the_frozen_quintuple(self, cubic, zctx):
        z0, z1, z2, z3, z4 = zctx.variables()
        expected = [
            -2 * z0 * z3 + z2 * z4,
            z4 ** 2,
            z0 * z4,
            -(z0 ** 2),
            z0 * z2 + 2 * z1 * z4,
        ]
        assert list(gradient(cubic)) == expected
        assert list(singular_locus_generators(cubic)) == expected

    def test_euler_identity(self, cubic, zctx):
        euler = sum(
            (v * g for v, g in zip(zctx.variables(), gradient(cubic))),
            Polynomial.zero(zctx),
        )
        assert euler == 3 * cubic.f

    def test_euler_identity_for_random_homogeneous(self, zctx, rand_homog):
        rng = random.Random(83)
        for _ in range(10):
            d = rng.randint(1, 4)
            h = Hypersurface(rand_homog(rng, zctx, d))
            euler = sum(
                (v * g for v, g in zip(zctx.variables(), gradient(h))),
                Polynomial.zero(zctx),
            )
            assert euler == d * h.f


class TestSingularPlane:
    def test_generators_vanish_on_symbolic_plane(self, cubic):
        plane_ctx = VarContext(["a", "b", "c"])
        a, b, c = plane_ctx.variables()
        zero = Polynomial.zero(plane_ctx)
        images = dict(zip(cubic.context.names, [zero, a, b, c, zero]))
        for g in singular_locus_generators(cubic):
            assert g.substitute(images, target_context=plane_ctx).is_zero()

    def test_gradient_nonzero_at_smooth_point(self, cubic):
        values = [g.evaluate((1, 1, 0, 1, 1)) for g in gradient(cubic)]
        assert values == [-2, 1, 1, -1, 2]

    def test_controls_have_different_singular_behavior(self):
        quadric = catalog.hypersurface("quadric-control")
        # smooth: gradient vanishes only at the origin, which is not a point
        values = [g.evaluate((1, 0, 0, 0, 0)) for g in gradient(quadric)]
        assert any(values)


class TestContainment:
    def test_point_membership(self, cubic):
        assert contains_point(cubic, ProjPoint([0, 1, 5, -2, 0]))
        assert contains_point(cubic, ProjPoint([1, 0, 0, 0, 0]))
        assert not contains_point(cubic, ProjPoint([1, 1, 1, 1, 1]))

    def test_membership_is_scale_invariant(self, cubic):
        pt = ProjPoint([1, Fraction(1, 3), 2, Fraction(7, 9), 1])
        assert contains_point(cubic, pt) == contains_point(cubic, pt.scaled(-6))

    def test_ruling_parametrization_is_contained(self, cubic):
        ctx = VarContext(["p", "u", "v"])
        p, u, v = ctx.variables()
        pm = ParamMap([Polynomial.one(ctx), u, v - p * u, p * v, p])
        assert contains_parametrized(cubic, pm)

    def test_plane_family_parametrization_is_contained(self, cubic):
        ctx = VarContext(["alpha", "beta", "gamma", "p"])
        alpha, beta, gamma, p = ctx.variables()
        pm = ParamMap(
            [alpha, beta, gamma - 2 * p * beta, p * (gamma - p * beta), p * alpha]
        )
        assert contains_parametrized(cubic, pm)

    def test_noncontained_map_is_detected(self, cubic):
        ctx = VarContext(["p", "u", "v"])
        p, u, v = ctx.variables()
        pm = ParamMap([Polynomial.one(ctx), u, v, p * v, p])
        assert not contains_parametrized(cubic, pm)


class TestParamMap:
    def test_validation(self):
        ctx = VarContext(["t"])
        t = ctx.variable("t")
        with pytest.raises(ValueError):
            ParamMap([t, t])
        with pytest.raises(ValueError):
            ParamMap([Polynomial.zero(ctx)] * 5)

    def test_evaluate(self):
        ctx = VarContext(["t"])
        t = ctx.variable("t")
        pm = ParamMap([Polynomial.one(ctx), t, t ** 2, t ** 3, t ** 4])
        assert pm.evaluate([Fraction(2)]) == (1, 2, 4, 8, 16)


class TestTangentHyperplane:
    def test_dual_is_constant_along_a_generator(self, cubic):
        # the line lam -> (lam, 1, lam, 0, 0) lies on the surface and its
        # dual (0, 0, 0, -lam^2, lam^2) is projectively constant off lam=0
        for lam in (Fraction(1), Fraction(-3, 2), Fraction(7, 5)):
            pt = ProjPoint([lam, 1, lam, 0, 0])
            dual = tangent_hyperplane(cubic, pt)
            assert dual == ProjPoint([0, 0, 0, -1, 1])

    def test_point_off_surface_is_rejected(self, cubic):
        with pytest.raises(PointNotOnSurfaceError):
            tangent_hyperplane(cubic, ProjPoint([1, 1, 1, 1, 1]))

    def test_singular_point_error_carries_the_point(self, cubic):
        with pytest.raises(SingularPointError) as exc_info:
            tangent_hyperplane(cubic, ProjPoint([0, 1, 2, 3, 0]))
        assert exc_info.value.point == (0, 1, 2, 3, 0)

    def test_quadric_dual(self):
        quadric = catalog.hypersurface("quadric-control")
        dual = tangent_hyperplane(quadric, ProjPoint([1, 0, 0, 0, 0]))
        assert dual == ProjPoint([0, 0, 0, 0, 1])
