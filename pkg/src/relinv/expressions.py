"""Variable tables and the textual expression language.

Grammar (EBNF, also reproduced in the README)::

    expr     = term , { ("+" | "-") , term } ;
    term     = unary , { ("*" | "/") , unary } ;
    unary    = "-" , unary | power ;
    power    = atom , [ "^" , unary ] ;
    atom     = integer | identifier | "(" , expr , ")" ;
    integer  = digit , { digit } ;
    identifier = letter , { letter | digit | "_" } ;

Exponents must evaluate to integer constants.  Implicit multiplication
("2x") is a syntax error.

>>> t = VariableTable.of("x", "y")
>>> render(parse_expression("x^2 - 1/2*y", t), t)
'x^2 - 1/2*y'
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import Poly, RatFunc
from .algebra.poly import mono_key

ROLES = ("base", "fiber", "jet", "parameter")


class ExpressionError(ValueError):
    """A positioned diagnostic for malformed expression text."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(self.__str__())

    def __str__(self) -> str:
        s = f"{self.message} at position {self.position}"
        if self.text:
            s += f"\n  {self.text}\n  {' ' * self.position}^"
        return s


@dataclass(frozen=True)
class VariableTable:
    """Ordered variable names; the order fixes the monomial ordering."""

    names: Tuple[str, ...]
    roles: Tuple[str, ...]
    orders: Tuple[int, ...] = ()
    _index: Dict[str, int] = field(default=None, compare=False, repr=False)  # type: ignore[assignment]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError(f"duplicate variable names in {self.names}")
        if len(self.roles) != len(self.names):
            raise ValueError("one role per variable required")
        for r in self.roles:
            if r not in ROLES:
                raise ValueError(f"unknown role {r!r}")
        for n in self.names:
            if not _IDENT.fullmatch(n):
                raise ValueError(f"invalid variable name {n!r}")
        if not self.orders:
            object.__setattr__(self, "orders", tuple(0 for _ in self.names))
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    @classmethod
    def of(cls, *names: str, role: str = "base") -> "VariableTable":
        return cls(tuple(names), tuple(role for _ in names))

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def with_parameters(self, params: Sequence[str]) -> "VariableTable":
        extra = [p for p in params if p not in self._index]
        return VariableTable(self.names + tuple(extra), self.roles + tuple("parameter" for _ in extra),
                             self.orders + tuple(0 for _ in extra))

    def indices_with_role(self, *roles: str) -> List[int]:
        return [i for i, r in enumerate(self.roles) if r in roles]


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Var:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"
    pos: int


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: int
    pos: int


Node = Union[Num, Var, Neg, BinOp, Pow]

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str):
    toks = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            toks.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            toks.append(("id", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExpressionError(f"unexpected character {ch!r}", m.start(3), text)
            toks.append(("op", ch, m.start(3)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, pos=None):
        if pos is None:
            pos = self.peek()[2]
        raise ExpressionError(msg, pos, self.text)

    def parse(self) -> Node:
        if self.peek()[0] == "end":
            self.error("empty expression")
        node = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            if kind in ("num", "id") or val == "(":
                self.error("implicit multiplication is not allowed; use '*'")
            self.error(f"unexpected {val!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self) -> Node:
        kind, val, pos = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return Neg(self.unary(), pos)
        if kind == "op" and val == "+":
            self.error("unary '+' is not part of the grammar")
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            _, _, pos = self.take()
            epos = self.peek()[2]
            exp_node = self.unary()
            value = _eval(exp_node, None, self.text)
            if not value.is_constant():
                raise ExpressionError("exponent must be a constant", epos, self.text)
            c = value.constant_value()
            if isinstance(c, Fraction):
                raise ExpressionError("non-integer exponent", epos, self.text)
            return Pow(base, int(c), pos)
        return base

    def atom(self) -> Node:
        kind, val, pos = self.take()
        if kind == "num":
            return Num(int(val), pos)
        if kind == "id":
            return Var(val, pos)
        if kind == "op" and val == "(":
            node = self.expr()
            k2, v2, p2 = self.take()
            if v2 != ")":
                raise ExpressionError("expected ')'", p2, self.text)
            return node
        if kind == "end":
            raise ExpressionError("unexpected end of expression", pos, self.text)
        raise ExpressionError(f"unexpected {val!r}", pos, self.text)


def _eval(node: Node, table: Optional[VariableTable], text: str) -> RatFunc:
    if isinstance(node, Num):
        return RatFunc.const(node.value)
    if isinstance(node, Var):
        if table is None or node.name not in table:
            raise ExpressionError(f"unknown identifier {node.name!r}", node.pos, text)
        return RatFunc.var(table.index(node.name))
    if isinstance(node, Neg):
        return -_eval(node.operand, table, text)
    if isinstance(node, Pow):
        base = _eval(node.base, table, text)
        if node.exponent < 0 and base.is_zero():
            raise ExpressionError("division by the zero polynomial", node.pos, text)
        return base ** node.exponent
    a = _eval(node.left, table, text)
    b = _eval(node.right, table, text)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if b.is_zero():
        raise ExpressionError("division by the zero polynomial", node.pos, text)
    return a / b


def parse_ast(text: str) -> Node:
    return _Parser(text).parse()


def parse_expression(text: str, table: VariableTable) -> RatFunc:
    """Parse ``text`` into a reduced rational function over ``table``."""
    if not isinstance(text, str):
        raise ExpressionError("expression must be a string", 0, str(text))
    return _eval(parse_ast(text), table, text)


def parse_poly(text: str, table: VariableTable) -> Poly:
    r = parse_expression(text, table)
    if not r.is_poly():
        raise ExpressionError("expected a polynomial", 0, text)
    return r.num


# ---------------------------------------------------------------- rendering

def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def _fmt_mono(m, table: VariableTable) -> str:
    parts = []
    for v, e in m:
        nm = table.name(v)
        parts.append(nm if e == 1 else f"{nm}^{e}")
    return "*".join(parts)


def render_poly(p: Poly, table: VariableTable) -> str:
    if p.is_zero():
        return "0"
    out = []
    for k, (m, c) in enumerate(sorted(p.terms.items(), key=lambda t: mono_key(t[0]), reverse=True)):
        neg = c < 0
        a = -c if neg else c
        ms = _fmt_mono(m, table)
        if not ms:
            body = _fmt_coeff(a)
        elif a == 1:
            body = ms
        else:
            body = f"{_fmt_coeff(a)}*{ms}"
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def render(r, table: VariableTable) -> str:
    """Text form of a Poly or RatFunc that parses back to an equal value."""
    if isinstance(r, Poly):
        return render_poly(r, table)
    if r.is_poly():
        return render_poly(r.num, table)
    num = render_poly(r.num, table)
    den = render_poly(r.den, table)
    if len(r.num) > 1:
        num = f"({num})"
    if len(r.den) > 1 or "*" in den or "/" in den:
        den = f"({den})"
    return f"{num}/{den}"


def parse_many(texts: Iterable[str], table: VariableTable) -> List[RatFunc]:
    return [parse_expression(t, table) for t in texts]
