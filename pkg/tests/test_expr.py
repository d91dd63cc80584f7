"""Expression grammar: parsing, round-trips, and byte-offset errors."""

import random

import pytest

from conftest import make_random_polynomial
from torsal.errors import ExprSyntaxError, UnknownVariableError
from torsal.expr import parse, parse_polynomial, to_polynomial
from torsal.polyring import Polynomial, VarContext, format_polynomial

XY = VarContext(["x", "y"])


class TestBasics:
    def test_numbers_and_precedence(self):
        ctx = VarContext(["x"])
        x = ctx.variable("x")
        assert parse_polynomial("2^3", ctx) == 8
        assert parse_polynomial("1 + 2*3", ctx) == 7
        assert parse_polynomial("2*x^3", ctx) == 2 * x ** 3
        assert parse_polynomial("(1 + x)^2", ctx) == 1 + 2 * x + x ** 2
        assert parse_polynomial("x^0", ctx) == 1

    def test_whitespace_insensitive(self):
        a = parse_polynomial("x*y+  2", XY)
        b = parse_polynomial("x * y + 2", XY)
        assert a == b

    def test_unary_minus_binds_before_power(self):
        # '-x^2' is (-x)^2 because '-' is part of the base
        ctx = VarContext(["x"])
        x = ctx.variable("x")
        assert parse_polynomial("-x^2", ctx) == x ** 2
        assert parse_polynomial("-(x^2)", ctx) == -(x ** 2)
        assert parse_polynomial("--x", ctx) == x
        assert parse_polynomial("1 - -x", ctx) == 1 + x

    def test_subtraction_chains_left(self):
        ctx = VarContext(["x"])
        x = ctx.variable("x")
        assert parse_polynomial("x - 1 - 2", ctx) == x - 3

    def test_multicharacter_identifiers(self):
        ctx = VarContext(["lam", "x10"])
        lam, x10 = ctx.variables()
        assert parse_polynomial("lam^2*x10", ctx) == lam ** 2 * x10

    def test_unknown_variable(self):
        with pytest.raises(UnknownVariableError):
            parse_polynomial("x + q", XY)

    def test_ast_reuse(self):
        node = parse("x + y")
        assert to_polynomial(node, XY) == XY.variable("x") + XY.variable("y")
        other = VarContext(["x", "y", "z"])
        assert to_polynomial(node, other) == other.variable("x") + other.variable("y")


class TestErrors:
    @pytest.mark.parametrize(
        "text,offset",
        [
            ("", 0),
            ("x +", 3),
            ("(x", 2),
            ("x^y", 2),
            ("x^-2", 2),
            ("x*", 2),
            ("2x", 1),
            ("x y", 2),
            ("x$", 1),
            ("x/y", 1),
            ("z*α", 2),
        ],
    )
    def test_byte_offsets(self, text, offset):
        with pytest.raises(ExprSyntaxError) as exc_info:
            parse(text)
        assert exc_info.value.offset == offset
        assert f"byte offset {offset}" in str(exc_info.value)

    def test_implicit_multiplication_is_rejected(self):
        with pytest.raises(ExprSyntaxError):
            parse_polynomial("2*z1 + 3z1", VarContext(["z1"]))

    def test_division_is_rejected(self):
        with pytest.raises(ExprSyntaxError):
            parse("1/2")


def random_expression(rng, names, depth=3):
    """Random string produced from the grammar productions themselves."""

    def base(d):
        roll = rng.random()
        if d <= 0 or roll < 0.3:
            return str(rng.randint(0, 99))
        if roll < 0.6:
            return rng.choice(names)
        if roll < 0.8:
            return "(" + expr(d - 1) + ")"
        return "-" + base(d - 1)

    def factor(d):
        text = base(d)
        if rng.random() < 0.4:
            text += "^" + str(rng.randint(0, 4))
        return text

    def term(d):
        parts = [factor(d) for _ in range(rng.randint(1, 3))]
        return "*".join(parts)

    def expr(d):
        pieces = [term(d)]
        for _ in range(rng.randint(0, 3)):
            pieces.append(rng.choice(["+", "-"]))
            pieces.append(term(d))
        sep = rng.choice(["", " "])
        return sep.join(pieces) if sep else "".join(pieces)

    return expr(depth)


class TestRoundTrip:
    def test_fifty_expression_corpus(self):
        """format(parse(s)) parses back to an equal polynomial, 50 times."""
        rng = random.Random(424242)
        contexts = [
            VarContext(["x"]),
            VarContext(["x", "y"]),
            VarContext(["p", "z1", "z2", "z3"]),
            VarContext(["lam", "u", "v"]),
            VarContext(["z0", "z1", "z2", "z3", "z4"]),
        ]
        for i in range(50):
            ctx = contexts[i % len(contexts)]
            source = random_expression(rng, list(ctx.names))
            f = parse_polynomial(source, ctx)
            text = format_polynomial(f)
            g = parse_polynomial(text, ctx)
            assert g == f, f"round-trip failed for {source!r} -> {text!r}"
            assert format_polynomial(g) == text

    def test_integer_coefficient_polynomials_round_trip(self):
        rng = random.Random(515151)
        ctx = VarContext(["p", "u", "v"])
        for _ in range(25):
            f = make_random_polynomial(rng, ctx, max_terms=6, max_exp=3)
            f = sum(
                (
                    coef.numerator * Polynomial(ctx, {mono.exponents: 1})
                    for mono, coef in f.sorted_terms()
                ),
                Polynomial.zero(ctx),
            )
            assert parse_polynomial(format_polynomial(f), ctx) == f

    def test_round_trip_hits_negative_leading_terms(self):
        ctx = VarContext(["x", "y"])
        x, y = ctx.variables()
        for f in (-x ** 2, -x * y + y, -3 * x ** 2 + x, -x - 1):
            assert parse_polynomial(format_polynomial(f), ctx) == f
