"""Tiny infix expression grammar shared by the CLI.

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := unary ("^" int)?
    unary  := "-" unary | atom
    atom   := int ("/" int)? | ident | "(" expr ")"

Identifiers are resolved at evaluation time against an environment
(``c1``..``cr`` for Chern polynomials, generator names for classes).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Mapping, Optional, Tuple, Union

from .chern_ring import ChernPoly
from .errors import ParseError, UnknownGeneratorError

TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


@dataclass(frozen=True)
class Number:
    value: Fraction
    position: int


@dataclass(frozen=True)
class Name:
    name: str
    position: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: 'Node'
    right: 'Node'
    position: int


@dataclass(frozen=True)
class Neg:
    operand: 'Node'
    position: int


@dataclass(frozen=True)
class Power:
    base: 'Node'
    exponent: int
    position: int


Node = Union[Number, Name, BinOp, Neg, Power]


def tokenize(text: str) -> List[Token]:
    text = text.replace('−', '-')
    tokens: List[Token] = []
    position = 0
    while position < len(text):
        match = TOKEN_RE.match(text, position)
        if match is None or match.end() == position:
            break
        number, ident, other = match.groups()
        start = match.start(match.lastindex) if match.lastindex else position
        if number is not None:
            tokens.append(Token('int', number, start))
        elif ident is not None:
            tokens.append(Token('ident', ident, start))
        elif other is not None and not other.isspace():
            tokens.append(Token('op', other, start))
        position = match.end()
    tokens.append(Token('end', '', len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect_op(self, symbol: str) -> Token:
        token = self.current
        if token.kind != 'op' or token.text != symbol:
            raise ParseError(f"Expected {symbol!r}", token.position, token.text)
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        if self.current.kind != 'end':
            raise ParseError("Unexpected token", self.current.position, self.current.text)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.kind == 'op' and self.current.text in '+-':
            token = self.advance()
            node = BinOp(token.text, node, self.term(), token.position)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.current.kind == 'op' and self.current.text == '*':
            token = self.advance()
            node = BinOp('*', node, self.factor(), token.position)
        return node

    def factor(self) -> Node:
        node = self.unary()
        if self.current.kind == 'op' and self.current.text == '^':
            token = self.advance()
            exponent = self.current
            if exponent.kind != 'int':
                raise ParseError("Expected integer exponent", exponent.position, exponent.text)
            self.advance()
            node = Power(node, int(exponent.text), token.position)
        return node

    def unary(self) -> Node:
        if self.current.kind == 'op' and self.current.text == '-':
            token = self.advance()
            return Neg(self.unary(), token.position)
        return self.atom()

    def atom(self) -> Node:
        token = self.current
        if token.kind == 'int':
            self.advance()
            value = Fraction(int(token.text))
            if self.current.kind == 'op' and self.current.text == '/':
                self.advance()
                denominator = self.current
                if denominator.kind != 'int' or int(denominator.text) == 0:
                    raise ParseError("Expected non-zero denominator", denominator.position, denominator.text)
                self.advance()
                value = value / int(denominator.text)
            return Number(value, token.position)
        if token.kind == 'ident':
            self.advance()
            return Name(token.text, token.position)
        if token.kind == 'op' and token.text == '(':
            self.advance()
            node = self.expr()
            self.expect_op(')')
            return node
        raise ParseError("Unexpected token", token.position, token.text)


def parse_expression(text: str) -> Node:
    """Parse ``text`` into an expression tree.

    Raises:
        ParseError: naming the offending token and its position
    """
    return _Parser(text).parse()


def names_in(node: Node) -> List[Tuple[str, int]]:
    """Identifiers used in an expression, with positions, in reading order."""
    if isinstance(node, Name):
        return [(node.name, node.position)]
    if isinstance(node, BinOp):
        return names_in(node.left) + names_in(node.right)
    if isinstance(node, Neg):
        return names_in(node.operand)
    if isinstance(node, Power):
        return names_in(node.base)
    return []


def evaluate_expression(node: Node, env: Mapping[str, Any], one: Any) -> Any:
    """Evaluate an expression tree in the ring of ``one``.

    Raises:
        UnknownGeneratorError: for identifiers missing from ``env``
    """
    if isinstance(node, Number):
        return node.value * one
    if isinstance(node, Name):
        if node.name not in env:
            raise UnknownGeneratorError(
                f"Unknown name {node.name!r} (known: {', '.join(sorted(env))})",
                node.position, node.name
            )
        return env[node.name]
    if isinstance(node, Neg):
        return -evaluate_expression(node.operand, env, one)
    if isinstance(node, Power):
        base = evaluate_expression(node.base, env, one)
        result = one
        for _ in range(node.exponent):
            result = result * base
        return result
    left = evaluate_expression(node.left, env, one)
    right = evaluate_expression(node.right, env, one)
    if node.op == '+':
        return left + right
    if node.op == '-':
        return left - right
    return left * right


CHERN_NAME_RE = re.compile(r"^c(\d+)$")


def parse_chern_poly(text: str, rank: Optional[int] = None) -> ChernPoly:
    """Parse an infix polynomial in c1..cr, inferring r from the largest index if not given."""
    node = parse_expression(text)
    indices = []
    for name, position in names_in(node):
        match = CHERN_NAME_RE.match(name)
        if match is None or int(match.group(1)) == 0:
            raise UnknownGeneratorError(f"Unknown Chern variable {name!r}", position, name)
        indices.append((int(match.group(1)), position, name))
    if rank is None:
        rank = max([index for index, _, _ in indices], default=1)
    for index, position, name in indices:
        if index > rank:
            raise UnknownGeneratorError(f"Chern variable {name!r} exceeds rank {rank}", position, name)
    env = {f"c{i}": ChernPoly.chern(i, rank) for i in range(1, rank + 1)}
    return evaluate_expression(node, env, ChernPoly.constant(1, rank))
