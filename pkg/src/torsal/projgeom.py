"""Projective points in P^4, exact 5x5 frames, fraction-free rank.

Everything here is plain rational linear algebra: points up to scalar,
invertible frame matrices whose rows express new-frame points in
old-frame coordinates, pullback of polynomials along such a change of
coordinates, and exact rank of arbitrary rational matrices.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from torsal.errors import ContextMismatchError, SingularMatrixError
from torsal.polyring import Polynomial, det_over_ring


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"rational entry expected, got {type(x).__name__}")


class ProjPoint:
    """A point of P^4: five rational coordinates up to a nonzero scalar."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        coords = tuple(_frac(c) for c in coords)
        if len(coords) != 5:
            raise ValueError(f"a ProjPoint needs 5 coordinates, got {len(coords)}")
        if not any(coords):
            raise ValueError("all-zero coordinates do not define a point")
        self.coords = coords

    def canonical(self) -> "ProjPoint":
        """Representative scaled so the first nonzero coordinate is 1."""
        pivot = next(c for c in self.coords if c)
        return ProjPoint(tuple(c / pivot for c in self.coords))

    def scaled(self, c) -> "ProjPoint":
        c = _frac(c)
        if not c:
            raise ValueError("scaling a point by zero")
        return ProjPoint(tuple(x * c for x in self.coords))

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.canonical().coords == other.canonical().coords

    def __hash__(self):
        return hash(self.canonical().coords)

    def __repr__(self):
        return f"ProjPoint({':'.join(str(c) for c in self.coords)})"


class FrameMatrix:
    """Invertible 5x5 rational matrix; row i = new frame point i in old coordinates."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_frac(x) for x in r) for r in rows)
        if len(rows) != 5 or any(len(r) != 5 for r in rows):
            raise ValueError("a FrameMatrix is 5x5")
        self.rows = rows
        if not det_over_ring(rows):
            raise SingularMatrixError("frame matrix has determinant 0")

    @classmethod
    def identity(cls) -> "FrameMatrix":
        return cls(
            [[Fraction(int(i == j)) for j in range(5)] for i in range(5)]
        )

    def det(self) -> Fraction:
        return det_over_ring(self.rows)

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def __matmul__(self, other):
        if not isinstance(other, FrameMatrix):
            return NotImplemented
        prod = [
            [
                sum(self.rows[i][k] * other.rows[k][j] for k in range(5))
                for j in range(5)
            ]
            for i in range(5)
        ]
        return FrameMatrix(prod)

    def invert(self) -> "FrameMatrix":
        """Exact inverse by Gauss-Jordan elimination over the rationals."""
        a = [list(r) for r in self.rows]
        b = [[Fraction(int(i == j)) for j in range(5)] for i in range(5)]
        for col in range(5):
            piv = next((r for r in range(col, 5) if a[r][col]), None)
            if piv is None:  # unreachable: determinant checked at construction
                raise SingularMatrixError("frame matrix has determinant 0")
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv = Fraction(1) / a[col][col]
            a[col] = [x * inv for x in a[col]]
            b[col] = [x * inv for x in b[col]]
            for r in range(5):
                if r != col and a[r][col]:
                    factor = a[r][col]
                    a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                    b[r] = [x - factor * y for x, y in zip(b[r], b[col])]
        return FrameMatrix(b)

    def __eq__(self, other):
        if not isinstance(other, FrameMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(
            "(" + ", ".join(str(x) for x in r) + ")" for r in self.rows
        )
        return f"FrameMatrix({body})"


def frame_bourgain(p, q) -> FrameMatrix:
    """Moving frame B0..B4 adapted to the cubic's ruling, at parameters (p, q).

    Row i gives B_i in the fixed A-frame; the determinant is 1 for all
    (p, q), so this is always a frame.
    """
    p, q = _frac(p), _frac(q)
    return FrameMatrix(
        [
            [1, 0, 0, 0, p],
            [0, 1, -2 * p, -p * p, 0],
            [q, 0, 1, p, p * q],
            [0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1],
        ]
    )


def change_polynomial_coordinates(f: Polynomial, m: FrameMatrix) -> Polynomial:
    """Pull f back along m: variable i is replaced by sum_j m[i][j] * var_j.

    The context (and variable names) are unchanged; degree and
    homogeneity are preserved because every image is a linear form.
    """
    names = f.context.names
    if len(names) != 5:
        raise ContextMismatchError(
            f"coordinate change needs a 5-variable context, got {len(names)}"
        )
    variables = f.context.variables()
    assignment = {}
    for i, name in enumerate(names):
        form = Polynomial.zero(f.context)
        for j in range(5):
            if m.rows[i][j]:
                form = form + variables[j] * m.rows[i][j]
        assignment[name] = form
    return f.substitute(assignment, target_context=f.context)


def rank(matrix) -> int:
    """Exact rank of a rational matrix of any shape.

    Rows are cleared to integers, then reduced by multiply-only
    elimination (no rational division inside the loop), with a gcd
    squeeze per row to keep entries small.
    """
    rows = []
    for r in matrix:
        r = [_frac(x) for x in r]
        scale = lcm(*(x.denominator for x in r)) if r else 1
        ints = [int(x * scale) for x in r]
        g = 0
        for x in ints:
            g = gcd(g, abs(x))
        if g > 1:
            ints = [x // g for x in ints]
        rows.append(ints)
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")

    rk = 0
    top = 0
    for col in range(ncols):
        piv = next((r for r in range(top, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[top], rows[piv] = rows[piv], rows[top]
        pv = rows[top][col]
        for r in range(top + 1, len(rows)):
            if rows[r][col]:
                rv = rows[r][col]
                new = [pv * a - rv * b for a, b in zip(rows[r], rows[top])]
                g = 0
                for x in new:
                    g = gcd(g, abs(x))
                if g > 1:
                    new = [x // g for x in new]
                rows[r] = new
        rk += 1
        top += 1
        if top == len(rows):
            break
    return rk


def adjugate(rows):
    """Adjugate (transposed cofactor matrix) over any commutative ring.

    adj(M) . M = det(M) . I; used where a frame must be inverted with
    polynomial entries and division is unavailable.
    """
    rows = [list(r) for r in rows]
    n = len(rows)
    if n < 2 or any(len(r) != n for r in rows):
        raise ValueError("adjugate needs a square matrix of size >= 2")
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [
                [rows[r][c] for c in range(n) if c != j]
                for r in range(n)
                if r != i
            ]
            cof = det_over_ring(minor)
            if (i + j) % 2:
                cof = -cof
            adj[j][i] = cof
    return adj
