#!/usr/bin/env python
# Created by "Thieu" at 11:05, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Scalar constraint expressions.

Grammar (whitespace is ignored)::

    expr  := term (("+" | "-") term)*
    term  := unary ("*" unary)*
    unary := "-" unary | power
    power := atom ("^" INT)?
    atom  := NUMBER | VAR | FUNC "(" expr ("," expr)* ")" | "(" expr ")"
    VAR   := "x1" | "x2" | ...
    FUNC  := "abs" | "sqrt" | "min" | "max"

Evaluation is vectorised: a (k, n) array of points gives k values.
"""

import re
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from tancert.utils import constant as co
from tancert.utils.exception import ExprSyntaxError, EvalDomainError, InputError

FUNC_ARITY = {"abs": (1, 1), "sqrt": (1, 1), "min": (2, None), "max": (2, None)}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^(),])
""", re.VERBOSE)
_VAR = re.compile(r"x([1-9][0-9]*)\Z")


class Node:
    """Base class of expression nodes; subclasses are frozen dataclasses."""

    def _eval(self, X):
        raise NotImplementedError

    def _render(self):
        raise NotImplementedError

    def children(self):
        return ()


def _wrap(node):
    text = node._render()
    return text if isinstance(node, (Const, Var, Func)) else f"({text})"


@dataclass(frozen=True)
class Const(Node):
    value: float

    def _eval(self, X):
        return np.full(X.shape[0], self.value)

    def _render(self):
        v = float(self.value)
        return str(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)


@dataclass(frozen=True)
class Var(Node):
    index: int          # 1-based, x1 is column 0

    def _eval(self, X):
        return X[:, self.index - 1].copy()

    def _render(self):
        return f"x{self.index}"


@dataclass(frozen=True)
class Neg(Node):
    arg: Node

    def _eval(self, X):
        return -self.arg._eval(X)

    def _render(self):
        return f"-{_wrap(self.arg)}"

    def children(self):
        return (self.arg,)


@dataclass(frozen=True)
class _Binary(Node):
    left: Node
    right: Node

    def children(self):
        return self.left, self.right


@dataclass(frozen=True)
class Add(_Binary):
    def _eval(self, X):
        return self.left._eval(X) + self.right._eval(X)

    def _render(self):
        return f"{_wrap(self.left)} + {_wrap(self.right)}"


@dataclass(frozen=True)
class Sub(_Binary):
    def _eval(self, X):
        return self.left._eval(X) - self.right._eval(X)

    def _render(self):
        return f"{_wrap(self.left)} - {_wrap(self.right)}"


@dataclass(frozen=True)
class Mul(_Binary):
    def _eval(self, X):
        return self.left._eval(X) * self.right._eval(X)

    def _render(self):
        return f"{_wrap(self.left)} * {_wrap(self.right)}"


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int

    def _eval(self, X):
        return self.base._eval(X) ** self.exponent

    def _render(self):
        return f"{_wrap(self.base)}^{self.exponent}"

    def children(self):
        return (self.base,)


@dataclass(frozen=True)
class Func(Node):
    name: str
    args: Tuple[Node, ...]

    def _eval(self, X):
        values = [arg._eval(X) for arg in self.args]
        if self.name == "abs":
            return np.abs(values[0])
        if self.name == "min":
            return np.minimum.reduce(values)
        if self.name == "max":
            return np.maximum.reduce(values)
        v = values[0]
        if np.any(v < -co.TOL_EVAL):
            raise EvalDomainError(f"sqrt of negative value {float(np.min(v)):.3e}")
        return np.sqrt(np.clip(v, 0, None))

    def _render(self):
        return f"{self.name}({', '.join(arg._render() for arg in self.args)})"

    def children(self):
        return self.args


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = self._tokenize(text)
        self.pos = 0

    def _offset(self, idx):
        return len(self.text[:idx].encode("utf-8"))

    def _tokenize(self, text):
        tokens, idx = [], 0
        while idx < len(text):
            m = _TOKEN.match(text, idx)
            if m is None:
                raise ExprSyntaxError(f"unexpected character {text[idx]!r}", self._offset(idx), text)
            if m.lastgroup != "ws":
                tokens.append((m.lastgroup, m.group(), self._offset(idx)))
            idx = m.end()
        tokens.append(("eof", "", self._offset(len(text))))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = self.peek() if tok is None else tok
        found = "end of input" if tok[0] == "eof" else repr(tok[1])
        return ExprSyntaxError(f"{message}, found {found}", tok[2], self.text)

    def expect(self, value):
        if self.peek()[1] != value:
            raise self.error(f"expected {value!r}")
        return self.advance()

    def parse(self):
        node = self.parse_expr()
        if self.peek()[0] != "eof":
            raise self.error("expected operator or end of input")
        return node

    def parse_expr(self):
        node = self.parse_term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.advance()[1]
            right = self.parse_term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def parse_term(self):
        node = self.parse_unary()
        while self.peek()[:2] == ("op", "*"):
            self.advance()
            node = Mul(node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Neg(self.parse_unary())
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            tok = self.peek()
            if tok[0] != "number" or not tok[1].isdigit():
                raise self.error("exponent must be a non-negative integer literal")
            self.advance()
            return Pow(base, int(tok[1]))
        return base

    def parse_atom(self):
        tok = self.peek()
        kind, value, offset = tok
        if kind == "number":
            self.advance()
            return Const(float(value))
        if kind == "ident":
            self.advance()
            m = _VAR.match(value)
            if m:
                return Var(int(m.group(1)))
            if value not in FUNC_ARITY:
                raise ExprSyntaxError(f"unknown identifier {value!r}", offset, self.text)
            return self.parse_call(value, offset)
        if (kind, value) == ("op", "("):
            self.advance()
            node = self.parse_expr()
            self.expect(")")
            return node
        raise self.error("expected a number, variable, function or '('")

    def parse_call(self, name, offset):
        self.expect("(")
        args = [self.parse_expr()]
        while self.peek()[:2] == ("op", ","):
            self.advance()
            args.append(self.parse_expr())
        self.expect(")")
        lo, hi = FUNC_ARITY[name]
        if len(args) < lo or (hi is not None and len(args) > hi):
            raise ExprSyntaxError(f"{name} takes {lo if hi == lo else f'at least {lo}'} "
                                  f"argument(s), got {len(args)}", offset, self.text)
        return Func(name, tuple(args))


def parse(text):
    """
    Parse constraint expression text into an immutable AST.

    Args:
        text (str): Expression such as "abs(x2) - x1"

    Returns:
        Node: The root node
    """
    if not isinstance(text, str):
        raise TypeError(f"Expression must be a string, got {type(text).__name__}.")
    if text.strip() == "":
        raise ExprSyntaxError("empty expression", 0, text)
    return _Parser(text).parse()


def render(e):
    """Text form of an AST; parse(render(e)) == e."""
    return e._render()


def variables(e):
    """Largest variable index used by e (0 for constants)."""
    if isinstance(e, Var):
        return e.index
    return max((variables(child) for child in e.children()), default=0)


def evaluate(e, p):
    """
    Evaluate e at one point (returns a float) or at the rows of a (k, n) array (returns k values).
    """
    X = np.asarray(p, dtype=float)
    single = X.ndim <= 1
    X = X.reshape(1, -1) if single else X
    if variables(e) > X.shape[1]:
        raise InputError(f"Expression uses x{variables(e)} but points have dimension {X.shape[1]}.")
    values = e._eval(X)
    return float(values[0]) if single else values
