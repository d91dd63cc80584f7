"""Homogeneous hypersurfaces in P^4 and parametrized families on them.

A Hypersurface wraps a nonzero homogeneous polynomial in five variables;
a ParamMap is a 5-tuple of polynomials in a shared parameter context.
Containment of a parametrized family is decided by exact substitution —
the result must be the zero polynomial, an identity in all parameters.
"""

from __future__ import annotations

from torsal.errors import (
    NonHomogeneousError,
    PointNotOnSurfaceError,
    SingularPointError,
)
from torsal.polyring import Polynomial, VarContext, format_polynomial
from torsal.projgeom import ProjPoint


class Hypersurface:
    """A projective hypersurface {f = 0} with f homogeneous and nonzero."""

    __slots__ = ("f", "degree")

    def __init__(self, f: Polynomial):
        if not isinstance(f, Polynomial):
            raise TypeError("Hypersurface needs a Polynomial")
        if len(f.context) != 5:
            raise ValueError(
                f"hypersurface polynomial must have 5 variables, "
                f"got {len(f.context)}"
            )
        if f.is_zero():
            raise ValueError("the zero polynomial defines no hypersurface")
        if not f.is_homogeneous():
            lead_deg = f.leading_monomial().total_degree
            offending = [
                _monomial_str(f.context, m.exponents)
                for m, _ in f.sorted_terms()
                if m.total_degree != lead_deg
            ]
            raise NonHomogeneousError(offending)
        self.f = f
        self.degree = f.total_degree()

    @property
    def context(self) -> VarContext:
        return self.f.context

    def __eq__(self, other):
        if not isinstance(other, Hypersurface):
            return NotImplemented
        return self.f == other.f

    def __hash__(self):
        return hash(self.f)

    def __repr__(self):
        return f"Hypersurface({self.f})"


def _monomial_str(context, exps):
    factors = []
    for name, e in zip(context.names, exps):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors) if factors else "1"


class ParamMap:
    """Five polynomial components over one shared parameter context."""

    __slots__ = ("components", "params")

    def __init__(self, components):
        components = tuple(components)
        if len(components) != 5:
            raise ValueError(f"a ParamMap needs 5 components, got {len(components)}")
        ctx = None
        for comp in components:
            if not isinstance(comp, Polynomial):
                raise TypeError("ParamMap components must be Polynomials")
            if ctx is None:
                ctx = comp.context
            elif comp.context != ctx:
                raise ValueError("ParamMap components must share one context")
        if all(c.is_zero() for c in components):
            raise ValueError("all-zero components do not define a map to P^4")
        self.components = components
        self.params = ctx.names

    @property
    def context(self) -> VarContext:
        return self.components[0].context

    def evaluate(self, point) -> tuple:
        """All five components at one rational parameter point."""
        return tuple(c.evaluate(point) for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, ParamMap):
            return NotImplemented
        return self.components == other.components

    def __repr__(self):
        return "ParamMap(" + ", ".join(str(c) for c in self.components) + ")"


def gradient(h: Hypersurface) -> tuple:
    """The ordered tuple of partial derivatives of the defining polynomial."""
    return tuple(h.f.partial_derivative(name) for name in h.context.names)


def singular_locus_generators(h: Hypersurface) -> tuple:
    """Generators of the singular ideal: the gradient components.

    A point is singular iff all five vanish there; callers certify loci
    by identical vanishing under symbolic substitution.
    """
    return gradient(h)


def contains_point(h: Hypersurface, pt: ProjPoint) -> bool:
    """Whether f(pt) = 0 (well-defined by homogeneity)."""
    return h.f.evaluate(pt.coords) == 0


def contains_parametrized(h: Hypersurface, pm: ParamMap) -> bool:
    """Whether f composed with pm is the zero polynomial — an identity
    in all parameters, not a sampled check."""
    return _pullback(h, pm).is_zero()


def _pullback(h: Hypersurface, pm: ParamMap) -> Polynomial:
    assignment = dict(zip(h.context.names, pm.components))
    return h.f.substitute(assignment, target_context=pm.context)


def tangent_hyperplane(h: Hypersurface, pt: ProjPoint) -> ProjPoint:
    """The tangent hyperplane at pt, as dual projective coordinates.

    The gradient vector at pt. Raises PointNotOnSurfaceError off the
    surface and SingularPointError where the gradient vanishes — the two
    cases stay distinct because focal analysis keys on the latter.
    """
    if not contains_point(h, pt):
        raise PointNotOnSurfaceError(
            f"point {pt!r} is not on the hypersurface "
            f"({format_polynomial(h.f)} = 0)"
        )
    values = tuple(g.evaluate(pt.coords) for g in gradient(h))
    if not any(values):
        raise SingularPointError(pt.coords)
    return ProjPoint(values)
