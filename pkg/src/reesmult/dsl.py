"""Recursive-descent parser for session files.

Grammar::

    session   := { statement }
    statement := "ring" NAME "=" ringspec ";"
               | "ideal" NAME "=" expr ";"
    ringspec  := "polynomial_local" "(" NAT ")"
               | "numerical_semigroup" "(" NAT { "," NAT } ")"
    expr      := term { "+" term }
    term      := factor { "*" factor }
    factor    := primary [ "^" NAT ]
    primary   := NAME
               | "[" gen { "," gen } "]" "in" NAME
               | "maximal" "(" NAME ")"
               | "(" expr ")"
    gen       := NAT | "(" NAT { "," NAT } ")"

``#`` starts a comment that runs to the end of the line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from reesmult.errors import (
    ArityMismatch,
    DSLSyntaxError,
    DuplicateName,
    ParseError,
    ReesMultError,
    UndeclaredIdeal,
    UndeclaredRing,
    UsageError,
)
from reesmult.lattice import (
    MonomialIdeal,
    Ring,
    ideal_from_gens,
    ideal_sum,
    maximal_ideal,
    numerical_semigroup,
    polynomial_local,
    power,
    product,
)

KEYWORDS = {"ring", "ideal", "in"}
MAX_DIMENSION = 16
MAX_SEMIGROUP_GEN = 1000
MAX_POWER = 100
MAX_DEPTH = 64
MAX_PRODUCT_PAIRS = 100_000

_TOKEN = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+|\n)
  | (?P<comment>\#[^\n]*)
  | (?P<NAT>[0-9]+)
  | (?P<NAME>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<PUNCT>[;=()\[\],+*^])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            if m.group() == "\n":
                line += 1
                line_start = m.end()
        elif kind != "comment":
            value = m.group()
            tokens.append(Token(value if kind == "PUNCT" else kind, value, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


@dataclass
class Session:
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    spans: dict = field(default_factory=dict)

    def ideal(self, name: str) -> MonomialIdeal:
        try:
            return self.ideals[name]
        except KeyError:
            known = ", ".join(sorted(self.ideals)) or "none"
            raise UsageError(f"no ideal named {name!r} (declared: {known})") from None


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.session = Session()
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message, expected=(), tok=None, cls=DSLSyntaxError):
        tok = tok or self.tok
        raise cls(message, tok.line, tok.col, expected)

    def expect(self, kind: str) -> Token:
        tok = self.tok
        if tok.kind != kind:
            found = tok.text or "end of input"
            self.fail(f"unexpected {found!r}", [kind])
        self.i += 1
        return tok

    def accept(self, kind: str) -> Token | None:
        if self.tok.kind == kind:
            self.i += 1
            return self.tokens[self.i - 1]
        return None

    def keyword(self, word: str) -> Token:
        tok = self.tok
        if tok.kind != "NAME" or tok.text != word:
            self.fail(f"unexpected {tok.text or 'end of input'!r}", [word])
        self.i += 1
        return tok

    def nat(self, limit=None, what="number") -> int:
        tok = self.expect("NAT")
        if len(tok.text) > 12:
            self.fail(f"{what} {tok.text[:12]}... is too large", tok=tok)
        value = int(tok.text)
        if limit is not None and value > limit:
            self.fail(f"{what} {value} exceeds the limit {limit}", tok=tok)
        return value

    def name(self) -> Token:
        tok = self.expect("NAME")
        if tok.text in KEYWORDS:
            self.fail(f"{tok.text!r} is a reserved word", ["NAME"], tok=tok)
        return tok

    # -- statements

    def parse(self) -> Session:
        while self.tok.kind != "EOF":
            tok = self.tok
            if tok.kind == "NAME" and tok.text == "ring":
                self.ring_statement()
            elif tok.kind == "NAME" and tok.text == "ideal":
                self.ideal_statement()
            else:
                self.fail(f"unexpected {tok.text!r}", ["ring", "ideal"])
        return self.session

    def declare(self, tok: Token):
        s = self.session
        if tok.text in s.rings or tok.text in s.ideals:
            line, col = s.spans[tok.text]
            self.fail(f"{tok.text!r} already declared at {line}:{col}", tok=tok, cls=DuplicateName)
        s.spans[tok.text] = (tok.line, tok.col)

    def ring_statement(self):
        self.keyword("ring")
        name = self.name()
        self.expect("=")
        kind = self.tok
        if kind.kind == "NAME" and kind.text == "polynomial_local":
            self.i += 1
            self.expect("(")
            d = self.nat(MAX_DIMENSION, "dimension")
            self.expect(")")
            ring = self.wrap(lambda: polynomial_local(d), kind)
        elif kind.kind == "NAME" and kind.text == "numerical_semigroup":
            self.i += 1
            self.expect("(")
            gens = [self.nat(MAX_SEMIGROUP_GEN, "generator")]
            while self.accept(","):
                gens.append(self.nat(MAX_SEMIGROUP_GEN, "generator"))
            self.expect(")")
            ring = self.wrap(lambda: numerical_semigroup(*gens), kind)
        else:
            self.fail(f"unexpected {kind.text or 'end of input'!r}", ["polynomial_local", "numerical_semigroup"])
        self.expect(";")
        self.declare(name)
        self.session.rings[name.text] = ring

    def ideal_statement(self):
        self.keyword("ideal")
        name = self.name()
        self.expect("=")
        value = self.expr()
        self.expect(";")
        self.declare(name)
        self.session.ideals[name.text] = value

    def wrap(self, fn, tok):
        try:
            return fn()
        except ParseError:
            raise
        except ReesMultError as exc:
            self.fail(str(exc), tok=tok, cls=ParseError)

    # -- expressions

    def expr(self) -> MonomialIdeal:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            self.fail("expression nested too deeply")
        value = self.term()
        while True:
            op = self.accept("+")
            if op is None:
                break
            rhs = self.term()
            value = self.wrap(lambda: ideal_sum(value, rhs), op)
        self.depth -= 1
        return value

    def term(self) -> MonomialIdeal:
        value = self.factor()
        while True:
            op = self.accept("*")
            if op is None:
                break
            rhs = self.factor()
            value = self.multiply(value, rhs, op)
        return value

    def factor(self) -> MonomialIdeal:
        value = self.primary()
        op = self.accept("^")
        if op is not None:
            n = self.nat(MAX_POWER, "exponent")
            if n == 0:
                self.wrap(lambda: power(value, 0), op)
            base = value
            for _ in range(n - 1):
                value = self.multiply(value, base, op)
        return value

    def multiply(self, a: MonomialIdeal, b: MonomialIdeal, op: Token) -> MonomialIdeal:
        if len(a.gens) * len(b.gens) > MAX_PRODUCT_PAIRS:
            self.fail(f"product of ideals with {len(a.gens)} and {len(b.gens)} generators is too large",
                      tok=op, cls=ParseError)
        return self.wrap(lambda: product(a, b), op)

    def ring_ref(self) -> Ring:
        tok = self.name()
        ring = self.session.rings.get(tok.text)
        if ring is None:
            self.fail(f"undeclared ring {tok.text!r}", tok=tok, cls=UndeclaredRing)
        return ring

    def primary(self) -> MonomialIdeal:
        tok = self.tok
        if self.accept("("):
            value = self.expr()
            self.expect(")")
            return value
        if self.accept("["):
            gens = [self.gen()]
            while self.accept(","):
                gens.append(self.gen())
            self.expect("]")
            self.keyword("in")
            ring = self.ring_ref()
            return self.wrap(lambda: ideal_from_gens(ring, [self.check_arity(ring, g) for g in gens]), tok)
        if tok.kind == "NAME" and tok.text == "maximal":
            self.i += 1
            self.expect("(")
            ring = self.ring_ref()
            self.expect(")")
            return maximal_ideal(ring)
        if tok.kind == "NAME" and tok.text not in KEYWORDS:
            self.i += 1
            ideal = self.session.ideals.get(tok.text)
            if ideal is None:
                cls = UndeclaredRing if tok.text in self.session.rings else UndeclaredIdeal
                self.fail(f"{tok.text!r} is not a declared ideal", tok=tok, cls=cls)
            return ideal
        self.fail(f"unexpected {tok.text or 'end of input'!r}", ["NAME", "[", "(", "maximal"])

    def gen(self):
        tok = self.tok
        if self.accept("("):
            values = [self.nat()]
            while self.accept(","):
                values.append(self.nat())
            self.expect(")")
            return tok, tuple(values)
        return tok, self.nat()

    def check_arity(self, ring: Ring, gen):
        tok, value = gen
        if ring.is_semigroup:
            if isinstance(value, tuple):
                if len(value) != 1:
                    self.fail(f"semigroup generators are single values, got {len(value)} entries",
                              tok=tok, cls=ArityMismatch)
                value = value[0]
            return value
        if isinstance(value, int):
            value = (value,)
        if len(value) != ring.d:
            self.fail(f"exponent vector has {len(value)} entries, ring has d = {ring.d}",
                      tok=tok, cls=ArityMismatch)
        return value


def parse_session(text: str) -> Session:
    """Parse session text; every failure is a :class:`ParseError` with a position."""
    return _Parser(text).parse()


def parse_generators(text: str, ring: Ring) -> list:
    """Parse a bare comma-separated generator list such as ``(1,0),(0,2)`` or ``4,8``."""
    p = _Parser(text)
    gens = [p.check_arity(ring, p.gen())]
    while p.accept(","):
        gens.append(p.check_arity(ring, p.gen()))
    p.expect("EOF")
    return [ring.check_monomial(g) for g in gens]
