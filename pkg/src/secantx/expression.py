"""Recursive-descent parser and evaluator for single-variable expressions.

Grammar (``^`` is right-associative and binds tighter than unary minus)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | base ('^' factor)?
    base   := number | 'x' | '(' expr ')' | ident '(' expr ')'

Functions: ``exp``, ``ln``, ``sin``, ``cos``. A non-integer exponent is
accepted only when the base is provably positive (a positive literal or an
``exp(...)`` call).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Union

from .errors import ExpressionSyntaxError, UnknownIdentifier
from .realnum import Real, RealContext

FUNCTIONS = ("exp", "ln", "sin", "cos")
VARIABLE = "x"

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()−])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExpressionSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            tok = m.group()
            if tok == "−":
                tok = "-"
            tokens.append(Token(kind, tok, pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


# -- syntax tree -----------------------------------------------------------


@dataclass(frozen=True)
class Num:
    text: str


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"


Node = Union[Num, Var, Neg, BinOp, Call]


def _is_integer_literal(node: Node) -> bool:
    if isinstance(node, Neg):
        return _is_integer_literal(node.operand)
    return isinstance(node, Num) and re.fullmatch(r"\d+", node.text) is not None


def _is_positive(node: Node) -> bool:
    if isinstance(node, Num):
        return float(node.text) > 0
    return isinstance(node, Call) and node.name == "exp"


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> ExpressionSyntaxError:
        tok = tok or self.tok
        if tok.kind == "end":
            message = f"{message}, found end of input"
        else:
            message = f"{message}, found {tok.text!r}"
        return ExpressionSyntaxError(message, tok.pos, self.text)

    def accept(self, text: str) -> Token | None:
        if self.tok.kind == "op" and self.tok.text == text:
            tok = self.tok
            self.i += 1
            return tok
        return None

    def expect(self, text: str) -> Token:
        tok = self.accept(text)
        if tok is None:
            raise self.error(f"expected {text!r}")
        return tok

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error("unexpected token")
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            if self.accept("+"):
                node = BinOp("+", node, self.term())
            elif self.accept("-"):
                node = BinOp("-", node, self.term())
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            if self.accept("*"):
                node = BinOp("*", node, self.factor())
            elif self.accept("/"):
                node = BinOp("/", node, self.factor())
            else:
                return node

    def factor(self) -> Node:
        if self.accept("-"):
            return Neg(self.factor())
        base = self.base()
        caret = self.accept("^")
        if caret is None:
            return base
        exponent = self.factor()
        if not _is_integer_literal(exponent) and not _is_positive(base):
            raise ExpressionSyntaxError(
                "non-integer exponent needs a provably positive base", caret.pos, self.text
            )
        return BinOp("^", base, exponent)

    def base(self) -> Node:
        tok = self.tok
        if tok.kind == "number":
            self.i += 1
            return Num(tok.text)
        if tok.kind == "ident":
            self.i += 1
            if tok.text == VARIABLE:
                return Var()
            if tok.text not in FUNCTIONS:
                raise UnknownIdentifier(f"unknown identifier {tok.text!r}", tok.pos, self.text)
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Call(tok.text, arg)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        raise self.error("expected a number, 'x', a function call or '('")


# -- printing --------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return _PREC["neg"]
    return 5


def to_text(node: Node) -> str:
    """Render ``node`` with the minimum parentheses that re-parse to the same tree."""
    if isinstance(node, Num):
        return node.text
    if isinstance(node, Var):
        return VARIABLE
    if isinstance(node, Call):
        return f"{node.name}({to_text(node.arg)})"
    if isinstance(node, Neg):
        inner = to_text(node.operand)
        return f"-({inner})" if _prec(node.operand) < 3 else f"-{inner}"

    p = _PREC[node.op]
    left, right = to_text(node.left), to_text(node.right)
    if node.op == "^":
        if _prec(node.left) <= p:
            left = f"({left})"
        if _prec(node.right) < 3:
            right = f"({right})"
        return f"{left}^{right}"
    if _prec(node.left) < p:
        left = f"({left})"
    if _prec(node.right) <= p:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# -- evaluation ------------------------------------------------------------

_ARITH = {"+": "add", "-": "sub", "*": "mul", "/": "div"}


def evaluate(node: Node, x: Real, ctx: RealContext) -> Real:
    if isinstance(node, Num):
        return ctx.parse(node.text)
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        return -evaluate(node.operand, x, ctx)
    if isinstance(node, Call):
        return ctx.transcendental(evaluate(node.arg, x, ctx), node.name)
    left = evaluate(node.left, x, ctx)
    right = evaluate(node.right, x, ctx)
    if node.op == "^":
        return ctx.real_pow(left, right)
    return ctx.arith(left, right, _ARITH[node.op])


class Expression:
    """A parsed expression in the variable ``x``.

    Calling it evaluates at a context-bound real; the value's own context
    decides the working precision.
    """

    def __init__(self, text: str, tree: Node):
        self.text = text
        self.tree = tree

    def __call__(self, x: Real, ctx: RealContext | None = None) -> Real:
        if ctx is None:
            ctx = x.context
        return evaluate(self.tree, x, ctx)

    def __str__(self) -> str:
        return to_text(self.tree)

    def __repr__(self) -> str:
        return f"Expression({self.text!r})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Expression) and self.tree == other.tree

    def __hash__(self) -> int:
        return hash(self.tree)


def parse(text: str) -> Expression:
    return Expression(text, _Parser(text).parse())
