"""A small arithmetic-expression language for user-supplied right-hand sides:
numbers, names, + - * /, powers written ^ or **, parentheses and unary signs,
evaluated in mpmath"""
from __future__ import annotations
import re
import typing as ty
import attrs
import mpmath
from rk10.core.exceptions import Rk10FormatError, Rk10UsageError

CONSTANTS = {"pi": lambda: +mpmath.pi, "e": lambda: +mpmath.e}

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<number>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>\*\*|[-+*/^()]))"
)


class Expression:
    def evaluate(self, env: ty.Mapping[str, ty.Any]) -> ty.Any:
        raise NotImplementedError

    def names(self) -> ty.Set[str]:
        return set()


@attrs.frozen
class Number(Expression):

    text: str

    def evaluate(self, env: ty.Mapping[str, ty.Any]) -> ty.Any:
        return mpmath.mpf(self.text)


@attrs.frozen
class Name(Expression):

    name: str

    def evaluate(self, env: ty.Mapping[str, ty.Any]) -> ty.Any:
        if self.name in env:
            return env[self.name]
        if self.name in CONSTANTS:
            return CONSTANTS[self.name]()
        raise Rk10UsageError(f"unknown name '{self.name}' in expression")

    def names(self) -> ty.Set[str]:
        return {self.name}


@attrs.frozen
class Negate(Expression):

    operand: Expression

    def evaluate(self, env: ty.Mapping[str, ty.Any]) -> ty.Any:
        return -self.operand.evaluate(env)

    def names(self) -> ty.Set[str]:
        return self.operand.names()


@attrs.frozen
class BinaryOp(Expression):

    op: str
    left: Expression
    right: Expression

    def evaluate(self, env: ty.Mapping[str, ty.Any]) -> ty.Any:
        a = self.left.evaluate(env)
        b = self.right.evaluate(env)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            if not b:
                raise Rk10UsageError("division by zero while evaluating expression")
            return a / b
        return mpmath.power(a, b)

    def names(self) -> ty.Set[str]:
        return self.left.names() | self.right.names()


def tokenize(text: str) -> ty.List[ty.Tuple[str, str]]:
    tokens = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN_RE.match(stripped, pos)
        if not match or match.end() == pos:
            raise Rk10FormatError(
                f"unexpected character '{stripped[pos:].strip()[:1]}' at position "
                f"{pos} of expression '{text}'"
            )
        kind = match.lastgroup
        assert kind is not None
        tokens.append((kind, match.group(kind)))
        pos = match.end()
    return tokens


class _Parser:
    """Recursive descent over

        expr   := term (("+" | "-") term)*
        term   := factor (("*" | "/") factor)*
        factor := ("+" | "-") factor | power
        power  := atom (("^" | "**") factor)?
        atom   := number | name | "(" expr ")"
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> ty.Optional[ty.Tuple[str, str]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> ty.Tuple[str, str]:
        token = self.peek()
        if token is None:
            raise Rk10FormatError(f"unexpected end of expression '{self.text}'")
        self.pos += 1
        return token

    def accept(self, *ops: str) -> ty.Optional[str]:
        token = self.peek()
        if token is not None and token[0] == "op" and token[1] in ops:
            self.pos += 1
            return token[1]
        return None

    def parse(self) -> Expression:
        expression = self.expr()
        leftover = self.peek()
        if leftover is not None:
            raise Rk10FormatError(
                f"unexpected '{leftover[1]}' in expression '{self.text}'"
            )
        return expression

    def expr(self) -> Expression:
        node = self.term()
        while True:
            op = self.accept("+", "-")
            if op is None:
                return node
            node = BinaryOp(op, node, self.term())

    def term(self) -> Expression:
        node = self.factor()
        while True:
            op = self.accept("*", "/")
            if op is None:
                return node
            node = BinaryOp(op, node, self.factor())

    def factor(self) -> Expression:
        op = self.accept("+", "-")
        if op == "-":
            return Negate(self.factor())
        if op == "+":
            return self.factor()
        return self.power()

    def power(self) -> Expression:
        base = self.atom()
        if self.accept("^", "**"):
            return BinaryOp("^", base, self.factor())
        return base

    def atom(self) -> Expression:
        kind, value = self.take()
        if kind == "number":
            return Number(value)
        if kind == "name":
            return Name(value)
        if value == "(":
            node = self.expr()
            if not self.accept(")"):
                raise Rk10FormatError(f"missing ')' in expression '{self.text}'")
            return node
        raise Rk10FormatError(f"unexpected '{value}' in expression '{self.text}'")


def parse_expression(text: str) -> Expression:
    if not text.strip():
        raise Rk10FormatError("empty expression")
    return _Parser(text).parse()


def evaluate_constant(text: str, digits: int = 60) -> mpmath.mpf:
    """Value of an expression without free variables, such as "pi/2" or "1/3" """
    with mpmath.workdps(digits + 10):
        return parse_expression(text).evaluate({})
