"""Polynomial expression parsing: tokenizer, recursive descent, AST.

Grammar (whitespace-insensitive, no implicit multiplication, no division):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := base ('^' nat)?
    base   := nat | ident | '(' expr ')' | '-' base

'^' takes a bare natural-number literal and binds *looser* than unary
minus: "-z1^2" is (-z1)^2, which is why the canonical formatter writes
such leading terms as "-1*z1^2". Syntax errors carry the byte offset of
the offending input.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from torsal.errors import ExprSyntaxError
from torsal.polyring import Polynomial, VarContext

# -- AST ----------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Sub:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


Node = Union[Num, Var, Neg, Pow, Add, Sub, Mul]

# -- tokenizer ------------------------------------------------------------

_OPS = "+-*^()"
_DIGITS = "0123456789"
_ALPHA = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_"


@dataclass(frozen=True)
class _Token:
    kind: str  # 'nat' | 'ident' | one of _OPS | 'end'
    text: str
    offset: int  # byte offset into the original input


def _tokenize(text: str) -> list[_Token]:
    # byte offset of each character position, so errors point into the
    # raw input even when it contains multi-byte junk
    offsets = [0]
    for ch in text:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch in " \t\r\n":
            i += 1
        elif ch in _DIGITS:
            j = i
            while j < n and text[j] in _DIGITS:
                j += 1
            toks.append(_Token("nat", text[i:j], offsets[i]))
            i = j
        elif ch in _ALPHA:
            j = i
            while j < n and text[j] in _ALPHA + _DIGITS:
                j += 1
            toks.append(_Token("ident", text[i:j], offsets[i]))
            i = j
        elif ch in _OPS:
            toks.append(_Token(ch, ch, offsets[i]))
            i += 1
        else:
            raise ExprSyntaxError(f"unexpected character {ch!r}", offsets[i])
    toks.append(_Token("end", "", offsets[n]))
    return toks


# -- parser ---------------------------------------------------------------


class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def take(self) -> _Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            what = "end of input" if tok.kind == "end" else repr(tok.text)
            raise ExprSyntaxError(f"expected {kind!r}, found {what}", tok.offset)
        return self.take()

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind in "+-":
            op = self.take().kind
            rhs = self.term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek().kind == "*":
            self.take()
            node = Mul(node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.base()
        if self.peek().kind == "^":
            self.take()
            tok = self.peek()
            if tok.kind != "nat":
                what = "end of input" if tok.kind == "end" else repr(tok.text)
                raise ExprSyntaxError(
                    f"expected a natural-number exponent after '^', found {what}",
                    tok.offset,
                )
            self.take()
            node = Pow(node, int(tok.text))
        return node

    def base(self) -> Node:
        tok = self.peek()
        if tok.kind == "nat":
            self.take()
            return Num(int(tok.text))
        if tok.kind == "ident":
            self.take()
            return Var(tok.text)
        if tok.kind == "(":
            self.take()
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "-":
            self.take()
            return Neg(self.base())
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExprSyntaxError(f"expected a value, found {what}", tok.offset)


def parse(text: str) -> Node:
    """Parse expression text to an AST; ExprSyntaxError on bad input."""
    p = _Parser(_tokenize(text))
    node = p.expr()
    tok = p.peek()
    if tok.kind != "end":
        raise ExprSyntaxError(f"trailing input {tok.text!r}", tok.offset)
    return node


def to_polynomial(node: Node, context: VarContext) -> Polynomial:
    """Evaluate an AST in the polynomial ring of `context`.

    Raises UnknownVariableError for identifiers outside the context.
    """
    if isinstance(node, Num):
        return Polynomial.constant(context, node.value)
    if isinstance(node, Var):
        return context.variable(node.name)
    if isinstance(node, Neg):
        return -to_polynomial(node.operand, context)
    if isinstance(node, Pow):
        return to_polynomial(node.base, context) ** node.exponent
    if isinstance(node, Add):
        return to_polynomial(node.left, context) + to_polynomial(node.right, context)
    if isinstance(node, Sub):
        return to_polynomial(node.left, context) - to_polynomial(node.right, context)
    if isinstance(node, Mul):
        return to_polynomial(node.left, context) * to_polynomial(node.right, context)
    raise TypeError(f"not an expression node: {node!r}")


def parse_polynomial(text: str, context: VarContext) -> Polynomial:
    """parse() followed by to_polynomial()."""
    return to_polynomial(parse(text), context)
