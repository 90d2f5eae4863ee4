"""A tiny formula language for analytic functions of ``z``.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('-')? power
    power  := atom ('^' factor)?
    atom   := number | 'i' | 'z' | ident '(' expr ')' | '(' expr ')'
    ident  := 'exp' | 'log' | 'sqrt' | 'tan'

A number may carry an ``i`` suffix (``4i``) to denote an imaginary literal,
so ``3+4i`` reads as ``3 + 4i``.  There is no implicit multiplication.
Expressions are evaluated over :class:`~bmapoles.jets.Jet3`, which gives the
value and three derivatives at once.
"""
from __future__ import annotations

import cmath
import re
from dataclasses import dataclass
from typing import Union

from . import jets
from .jets import Jet3

FUNCTIONS = ("exp", "log", "sqrt", "tan")


class FormulaSyntaxError(SyntaxError):
    """Malformed formula.  ``offset`` is a byte offset into the UTF-8 source."""

    def __init__(self, message, offset, expected=()):
        super().__init__(message)
        self.msg = message
        self.offset = offset
        self.expected = frozenset(expected)

    def __str__(self):
        exp = ", ".join(sorted(self.expected))
        tail = f" (expected one of: {exp})" if exp else ""
        return f"{self.msg} at byte {self.offset}{tail}"


class UnknownFunction(FormulaSyntaxError):
    pass


# AST ---------------------------------------------------------------------
@dataclass(frozen=True)
class Const:
    value: complex


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    arg: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str  # add, sub, mul, div, pow
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Expr"


Expr = Union[Const, Var, Neg, BinOp, Call]

_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/", "pow": "^"}


# tokenizer ---------------------------------------------------------------
_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # num, name, op, end
    text: str
    pos: int  # byte offset


def _tokenize(src: str):
    toks = []
    i = 0
    byte = 0
    while True:
        m = _TOKEN.match(src, i)
        if m is None or m.end() == i:
            rest = src[i:]
            if not rest.strip():
                break
            j = i + (len(rest) - len(rest.lstrip()))
            raise FormulaSyntaxError(f"unexpected character {src[j]!r}",
                                     byte + len(src[i:j].encode()),
                                     {"number", "i", "z", "(", "-"} | set(FUNCTIONS))
        kind = m.lastgroup
        start = m.start(kind)
        pos = byte + len(src[i:start].encode())
        toks.append(_Tok(kind, m.group(kind), pos))
        byte = pos + len(m.group(kind).encode())
        i = m.end()
    toks.append(_Tok("end", "", byte))
    return toks


class _Parser:
    def __init__(self, src):
        self.toks = _tokenize(src)
        self.k = 0

    @property
    def tok(self):
        return self.toks[self.k]

    def advance(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, text):
        if self.tok.text != text or self.tok.kind != "op":
            raise FormulaSyntaxError(f"expected {text!r}", self.tok.pos, {text})
        return self.advance()

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = "add" if self.advance().text == "+" else "sub"
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = "mul" if self.advance().text == "*" else "div"
            node = BinOp(op, node, self.factor())
        return node

    def factor(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            return Neg(self.power())
        return self.power()

    def power(self):
        base = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            return BinOp("pow", base, self.factor())
        return base

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.advance()
            if t.text.endswith("i"):
                return Const(complex(0, float(t.text[:-1])))
            return Const(complex(float(t.text)))
        if t.kind == "name":
            self.advance()
            if t.text == "z":
                return Var()
            if t.text == "i":
                return Const(1j)
            if t.text not in FUNCTIONS:
                raise UnknownFunction(f"unknown identifier {t.text!r}", t.pos,
                                      set(FUNCTIONS) | {"z", "i"})
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(t.text, arg)
        if t.kind == "op" and t.text == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        raise FormulaSyntaxError("unexpected " + (repr(t.text) if t.text else "end of input"),
                                 t.pos, {"number", "i", "z", "("} | set(FUNCTIONS))


def parse(src) -> Expr:
    """Parse ``src`` (str or UTF-8 bytes) into an expression tree."""
    if isinstance(src, (bytes, bytearray)):
        try:
            src = bytes(src).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise FormulaSyntaxError("invalid UTF-8", exc.start) from None
    if not src.strip():
        raise FormulaSyntaxError("empty formula", 0, {"number", "i", "z", "("})
    p = _Parser(src)
    node = p.expr()
    if p.tok.kind != "end":
        raise FormulaSyntaxError(f"unexpected {p.tok.text!r}", p.tok.pos,
                                 {"+", "-", "*", "/", "^", "end of input"})
    return node


def to_source(e: Expr) -> str:
    """Fully parenthesized source text; ``parse(to_source(e)) == e`` for parsed trees."""
    if isinstance(e, Var):
        return "z"
    if isinstance(e, Const):
        c = complex(e.value)
        if c.imag == 0 and c.real >= 0:
            return repr(c.real)
        if c.real == 0 and c.imag >= 0:
            return repr(c.imag) + "i"
        # not produced by the parser; prints an equivalent sum
        sign = "+" if c.imag >= 0 else "-"
        return f"({_num(c.real)}{sign}{abs(c.imag)!r}i)"
    if isinstance(e, Neg):
        return f"(-{to_source(e.arg)})"
    if isinstance(e, BinOp):
        return f"({to_source(e.left)}{_SYMBOL[e.op]}{to_source(e.right)})"
    if isinstance(e, Call):
        return f"{e.fn}({to_source(e.arg)})"
    raise TypeError(f"not an expression: {e!r}")


def _num(x):
    return repr(x) if x >= 0 else f"(-{-x!r})"


def _depends_on_z(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Const):
        return False
    if isinstance(e, Neg):
        return _depends_on_z(e.arg)
    if isinstance(e, BinOp):
        return _depends_on_z(e.left) or _depends_on_z(e.right)
    return _depends_on_z(e.arg)


_JET_FN = {"exp": jets.jet_exp, "log": jets.jet_log, "sqrt": jets.jet_sqrt, "tan": jets.jet_tan}


def _const_value(e: Expr) -> complex:
    return complex(evaluate(e, 0j))


def eval_jet(e: Expr, z0) -> Jet3:
    """Order-3 jet of the expression at ``z0`` (scalar or array)."""
    if isinstance(e, str):
        e = parse(e)
    return _jet(e, Jet3.variable(z0))


def _jet(e, z):
    if isinstance(e, Var):
        return z
    if isinstance(e, Const):
        return Jet3.constant(e.value + 0 * z.v)
    if isinstance(e, Neg):
        return -_jet(e.arg, z)
    if isinstance(e, Call):
        return _JET_FN[e.fn](_jet(e.arg, z))
    a = _jet(e.left, z)
    if e.op == "pow":
        if not _depends_on_z(e.right):
            return jets.jet_pow(a, _const_value(e.right))
        return jets.jet_exp(_jet(e.right, z) * jets.jet_log(a))
    b = _jet(e.right, z)
    if e.op == "add":
        return a + b
    if e.op == "sub":
        return a - b
    if e.op == "mul":
        return a * b
    return a / b


def evaluate(e: Expr, z: complex) -> complex:
    """Plain scalar evaluation with principal branches."""
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, Var):
        return complex(z)
    if isinstance(e, Const):
        return complex(e.value)
    if isinstance(e, Neg):
        return -evaluate(e.arg, z)
    if isinstance(e, Call):
        return getattr(cmath, e.fn)(evaluate(e.arg, z))
    a = evaluate(e.left, z)
    b = evaluate(e.right, z)
    if e.op == "add":
        return a + b
    if e.op == "sub":
        return a - b
    if e.op == "mul":
        return a * b
    if e.op == "div":
        return a / b
    return a ** b
