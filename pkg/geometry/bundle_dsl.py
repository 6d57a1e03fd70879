"""Parser for the bundle-spec mini language.

    bundle := term ("+" term)* twist?
    term   := "O" "(" int ("," int)* ")" | "T"
    twist  := "<" rat "*" ident ("+" rat "*" ident)* ">"
    rat    := int | int "/" int

Integers may carry a leading minus sign (ASCII or U+2212). ``O(a)`` lives on
P^n, ``O(a_1,...,a_m)`` on an m-fold product; ``T`` is the tangent bundle
of P^n.
"""

import logging
import re
from fractions import Fraction
from typing import List, Tuple

from algebra.errors import ParseError, UnknownGeneratorError, UnsupportedBundleError

from .bundles import BundleModel, Summand, split_bundle
from .variety import CohomClass, VarietyModel

logger = logging.getLogger(__name__)

TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_RE.match(text, position)
        if match is None:
            break
        number, ident, other = match.groups()
        if number is not None:
            tokens.append(('int', number, match.start(1)))
        elif ident is not None:
            tokens.append(('ident', ident, match.start(2)))
        elif other is not None:
            tokens.append(('op', other, match.start(3)))
        position = match.end()
    tokens.append(('end', '', len(text)))
    return tokens


class _BundleParser:
    def __init__(self, text: str, variety: VarietyModel):
        self.text = text
        self.variety = variety
        self.tokens = _tokenize(text.replace('−', '-'))
        self.index = 0

    @property
    def current(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def error(self, message: str) -> ParseError:
        _, token, position = self.current
        return ParseError(message, position, token)

    def accept(self, symbol: str) -> bool:
        kind, token, _ = self.current
        if kind in ('op', 'ident') and token == symbol:
            self.index += 1
            return True
        return False

    def expect(self, symbol: str):
        if not self.accept(symbol):
            raise self.error(f"Expected {symbol!r}")

    def integer(self) -> int:
        sign = -1 if self.accept('-') else 1
        kind, token, _ = self.current
        if kind != 'int':
            raise self.error("Expected integer")
        self.index += 1
        return sign * int(token)

    def rational(self) -> Fraction:
        numerator = self.integer()
        if self.accept('/'):
            _, _, position = self.current
            denominator = self.integer()
            if denominator == 0:
                raise ParseError("Zero denominator", position, "0")
            return Fraction(numerator, denominator)
        return Fraction(numerator)

    def term(self) -> Summand:
        kind, token, position = self.current
        if kind == 'ident' and token == 'T':
            self.index += 1
            if self.variety.factors is None or len(self.variety.factors) != 1:
                raise UnsupportedBundleError(
                    f"Tangent bundle requested at position {position} on {self.variety.name}; only P^n is supported"
                )
            return Summand((1,), tangent=True)
        if kind == 'ident' and token == 'O':
            self.index += 1
            self.expect('(')
            _, _, start = self.current
            degrees = [self.integer()]
            while self.accept(','):
                degrees.append(self.integer())
            width = len(self.variety.generators)
            if len(degrees) != width:
                raise ParseError(
                    f"{self.variety.name} needs {width} degree(s) per line bundle, got {len(degrees)}",
                    start, self.text[start:self.current[2]].strip()
                )
            self.expect(')')
            return Summand(tuple(degrees))
        raise self.error("Expected 'O(...)' or 'T'")

    def twist(self) -> CohomClass:
        total = self.variety.zero(1)
        while True:
            coefficient = self.rational()
            self.expect('*')
            kind, name, position = self.current
            if kind != 'ident':
                raise self.error("Expected generator name")
            if name not in self.variety.generators:
                raise UnknownGeneratorError(
                    f"Unknown generator {name!r} on {self.variety.name} "
                    f"(known: {', '.join(self.variety.generators)})",
                    position, name
                )
            self.index += 1
            total = total + self.variety.generator(name) * coefficient
            if not self.accept('+'):
                break
        self.expect('>')
        return total

    def parse(self) -> BundleModel:
        summands = [self.term()]
        while self.accept('+'):
            summands.append(self.term())
        twist = None
        if self.accept('<'):
            twist = self.twist()
        if self.current[0] != 'end':
            raise self.error("Unexpected token")
        return split_bundle(self.variety, summands, spec=self.text.strip(), twist=twist)


def parse_bundle(spec: str, variety: VarietyModel) -> BundleModel:
    """Build a BundleModel from its DSL text.

    Raises:
        ParseError: with the offending token and position
        UnknownGeneratorError: if a twist names a missing generator
        UnsupportedBundleError: for ``T`` off P^n
    """
    bundle = _BundleParser(spec, variety).parse()
    logger.debug(f"Parsed bundle {spec!r} on {variety.name}: rank {bundle.rank}")
    return bundle
