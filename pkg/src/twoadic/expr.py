"""Expression language for compatible self-maps of the 2-adic integers.

Grammar (precedence from loosest to tightest):

    expr     := or_expr
    or_expr  := xor_expr ("or" xor_expr)*
    xor_expr := and_expr ("xor" and_expr)*
    and_expr := sum ("and" sum)*
    sum      := prod (("+" | "-") prod)*
    prod     := unary ("*" unary)*
    unary    := ("-" | "not") unary | power
    power    := atom ("**" uint)?
    atom     := "x" | uint | "inv" "(" const_expr ")" | "(" expr ")"

``uint`` is a decimal or 0x-hex literal; ``const_expr`` is an expression
containing no ``x``.  Every construct preserves compatibility (output mod 2^k
depends on input mod 2^k only), so any parse result denotes a 1-Lipschitz map.
Power uses ``**``, never ``^``; XOR is the keyword ``xor``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import (
    EvenInvConstant,
    MapSyntaxError,
    NonConstantExponent,
    NonConstantInvArgument,
)

# ---------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Unary:
    op: str  # "-" or "not"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str  # "+", "-", "*", "and", "xor", "or"
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Inv:
    operand: "Expr"  # contains no Var; evaluates to an odd constant


Expr = Union[Var, Lit, Unary, Binary, Power, Inv]

X = Var()


def contains_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Lit):
        return False
    if isinstance(e, Unary):
        return contains_var(e.operand)
    if isinstance(e, Binary):
        return contains_var(e.left) or contains_var(e.right)
    if isinstance(e, Power):
        return contains_var(e.base)
    if isinstance(e, Inv):
        return contains_var(e.operand)
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# Evaluation modulo 2^k

def eval_expr(e: Expr, x: int, k: int) -> int:
    """Value of the expression at x, reduced mod 2^k."""
    mod = 1 << k
    if isinstance(e, Var):
        return x % mod
    if isinstance(e, Lit):
        return e.value % mod
    if isinstance(e, Unary):
        v = eval_expr(e.operand, x, k)
        if e.op == "-":
            return (-v) % mod
        # bitwise complement; -1 is the all-ones word at any precision
        return mod - 1 - v
    if isinstance(e, Binary):
        a = eval_expr(e.left, x, k)
        b = eval_expr(e.right, x, k)
        if e.op == "+":
            return (a + b) % mod
        if e.op == "-":
            return (a - b) % mod
        if e.op == "*":
            return (a * b) % mod
        if e.op == "and":
            return a & b
        if e.op == "or":
            return a | b
        if e.op == "xor":
            return a ^ b
        raise TypeError(f"unknown operator {e.op!r}")
    if isinstance(e, Power):
        return pow(eval_expr(e.base, x, k), e.exponent, mod)
    if isinstance(e, Inv):
        c = eval_expr(e.operand, x, k)
        # odd by construction (checked at parse time / constructor)
        return pow(c, -1, mod)
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# Tokenizer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>0[xX][0-9a-fA-F]+|\d+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<pow>\*\*)
  | (?P<op>[-+*()])
    """,
    re.VERBOSE,
)

_KEYWORDS = {"x", "inv", "and", "or", "xor", "not"}


@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    pos: int
    value: int = 0


def _tokenize(source: str) -> list:
    tokens = []
    pos = 0
    while pos < len(source):
        m = _TOKEN_RE.match(source, pos)
        if m is None:
            raise MapSyntaxError(pos, f"unexpected character {source[pos]!r}")
        if m.lastgroup == "ws":
            pos = m.end()
            continue
        text = m.group()
        if m.lastgroup == "int":
            tokens.append(_Token("int", text, pos, int(text, 0)))
        elif m.lastgroup == "name":
            if text not in _KEYWORDS:
                raise MapSyntaxError(pos, f"unknown identifier {text!r}")
            tokens.append(_Token("name", text, pos))
        elif m.lastgroup == "pow":
            tokens.append(_Token("op", "**", pos))
        else:
            tokens.append(_Token("op", text, pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(source)))
    return tokens


# ---------------------------------------------------------------------------
# Parser (recursive descent following the grammar above)


class _Parser:
    def __init__(self, source: str):
        self.tokens = _tokenize(source)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> _Token:
        tok = self.peek()
        if tok.text != text:
            raise MapSyntaxError(
                tok.pos, f"expected {text!r}, found {tok.text or 'end of input'!r}",
                expected=[text],
            )
        return self.advance()

    def at(self, *texts: str) -> bool:
        return self.peek().text in texts

    def parse(self) -> Expr:
        e = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise MapSyntaxError(tok.pos, f"unexpected trailing input {tok.text!r}")
        return e

    def expr(self) -> Expr:
        e = self.xor_expr()
        while self.at("or"):
            self.advance()
            e = Binary("or", e, self.xor_expr())
        return e

    def xor_expr(self) -> Expr:
        e = self.and_expr()
        while self.at("xor"):
            self.advance()
            e = Binary("xor", e, self.and_expr())
        return e

    def and_expr(self) -> Expr:
        e = self.sum_expr()
        while self.at("and"):
            self.advance()
            e = Binary("and", e, self.sum_expr())
        return e

    def sum_expr(self) -> Expr:
        e = self.prod()
        while self.at("+", "-"):
            op = self.advance().text
            e = Binary(op, e, self.prod())
        return e

    def prod(self) -> Expr:
        e = self.unary()
        while self.at("*"):
            self.advance()
            e = Binary("*", e, self.unary())
        return e

    def unary(self) -> Expr:
        if self.at("-", "not"):
            op = self.advance().text
            return Unary(op, self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.at("**"):
            self.advance()
            tok = self.peek()
            if tok.kind != "int":
                raise NonConstantExponent(tok.pos)
            self.advance()
            return Power(base, tok.value)
        return base

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "int":
            self.advance()
            return Lit(tok.value)
        if tok.text == "x":
            self.advance()
            return X
        if tok.text == "inv":
            self.advance()
            self.expect("(")
            inner = self.expr()
            close = self.expect(")")
            if contains_var(inner):
                raise NonConstantInvArgument(tok.pos)
            if eval_expr(inner, 0, 1) == 0:  # parity is precision-independent
                raise EvenInvConstant(tok.pos)
            return Inv(inner)
        if tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise MapSyntaxError(
            tok.pos,
            f"expected 'x', a number, 'inv' or '(', found {tok.text or 'end of input'!r}",
            expected=["x", "uint", "inv", "("],
        )


def parse_map(source: str) -> Expr:
    """Parse source text into an expression AST."""
    return _Parser(source).parse()


# ---------------------------------------------------------------------------
# Printing (round-trips through parse_map to a structurally equal AST)

_PREC_OR = 1
_PREC_XOR = 2
_PREC_AND = 3
_PREC_SUM = 4
_PREC_PROD = 5
_PREC_UNARY = 6
_PREC_ATOM = 7

_BIN_PREC = {"or": _PREC_OR, "xor": _PREC_XOR, "and": _PREC_AND,
             "+": _PREC_SUM, "-": _PREC_SUM, "*": _PREC_PROD}


def to_source(e: Expr, _min_prec: int = _PREC_OR) -> str:
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Lit):
        return str(e.value)
    if isinstance(e, Inv):
        return f"inv({to_source(e.operand)})"
    if isinstance(e, Power):
        # the grammar admits only atoms as power bases
        return _wrap(f"{to_source(e.base, _PREC_ATOM)} ** {e.exponent}",
                     _PREC_UNARY, _min_prec)
    if isinstance(e, Unary):
        body = to_source(e.operand, _PREC_UNARY)
        text = f"-{body}" if e.op == "-" else f"not {body}"
        return _wrap(text, _PREC_UNARY, _min_prec)
    if isinstance(e, Binary):
        prec = _BIN_PREC[e.op]
        # left-associative: right operand needs strictly tighter binding
        text = f"{to_source(e.left, prec)} {e.op} {to_source(e.right, prec + 1)}"
        return _wrap(text, prec, _min_prec)
    raise TypeError(f"not an expression node: {e!r}")


def _wrap(text: str, prec: int, min_prec: int) -> str:
    return f"({text})" if prec < min_prec else text
