"""Canonical text form for observables, and the matching expression parser.

Grammar (used both in problem-spec files and in printed residuals):

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' integer)?
    atom   := rational | 'i' | 'L' | coordinate | '(' expr ')' | '-' factor

Coordinates are x1..x2n; q/p (and q1..qn / p1..pn) are accepted as aliases
for x1..xn / x(n+1)..x2n. 'L' (or 'lambda') is the formal parameter.
Printing is deterministic: terms sorted lexicographically in the exponent
tuple, then by ascending lambda power, so reports are byte-stable and every
printed value re-parses to the exact same observable.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import SpecError
from .observables import PolyObservable, SymplecticVectorSpace
from .scalars import GaussianRational, LambdaSeries

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


def _coeff_str(c: GaussianRational) -> str:
    return str(c)


def format_observable(f: PolyObservable) -> str:
    """Canonical string; parse_observable inverts it exactly."""
    parts: list[str] = []
    for exp, series in f.sorted_items():
        mono = []
        if sum(exp):
            for i, e in enumerate(exp):
                if e == 1:
                    mono.append(f"x{i + 1}")
                elif e > 1:
                    mono.append(f"x{i + 1}^{e}")
        for k, c in enumerate(series.coeffs):
            if c.is_zero():
                continue
            factors = []
            if k == 1:
                factors.append("L")
            elif k > 1:
                factors.append(f"L^{k}")
            factors.extend(mono)
            if not factors:
                parts.append(_coeff_str(c))
                continue
            if c == GaussianRational(1):
                parts.append("*".join(factors))
            elif c == GaussianRational(-1):
                parts.append("-" + "*".join(factors))
            else:
                parts.append("*".join([_coeff_str(c)] + factors))
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


def format_series(s: LambdaSeries) -> str:
    return str(s)


class _Parser:
    def __init__(self, text: str, space: SymplecticVectorSpace, order: int | None):
        self.space = space
        self.order = order
        self.tokens: list[str] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise SpecError(f"bad character at position {pos}: {text[pos:]!r}")
                break
            self.tokens.append(m.group(m.lastgroup))
            pos = m.end()
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise SpecError("unexpected end of expression")
        self.pos += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise SpecError(f"expected {tok!r}, got {got!r}")

    def parse(self) -> PolyObservable:
        out = self.expr()
        if self.peek() is not None:
            raise SpecError(f"trailing input from token {self.peek()!r}")
        return out

    def expr(self) -> PolyObservable:
        out = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> PolyObservable:
        out = self.factor()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.take()
                out = out * self.factor()
            elif nxt == "/":
                self.take()
                out = out * self._reciprocal(self.factor())
            else:
                return out

    def _reciprocal(self, f: PolyObservable) -> PolyObservable:
        series = f.constant_series()
        if not f.is_constant() or series.degree() > 0 or series.is_zero():
            raise SpecError("division only by nonzero numeric literals")
        return PolyObservable.constant(
            self.space, GaussianRational(1) / series[0], self.order
        )

    def factor(self) -> PolyObservable:
        out = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if not tok.isdigit():
                raise SpecError(f"exponent must be a non-negative integer, got {tok!r}")
            power = int(tok)
            result = PolyObservable.one(self.space, self.order)
            for _ in range(power):
                result = result * out
            return result
        return out

    def atom(self) -> PolyObservable:
        tok = self.take()
        if tok == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if tok == "-":
            return -self.factor()
        if tok.isdigit():
            return PolyObservable.constant(self.space, Fraction(int(tok)), self.order)
        if tok == "i":
            return PolyObservable.constant(self.space, GaussianRational(0, 1), self.order)
        if tok in ("L", "lambda"):
            return PolyObservable.constant(
                self.space, LambdaSeries.lam(order=self.order)
            )
        index = self._coordinate_index(tok)
        if index is not None:
            return self.space.coordinate(index, self.order)
        raise SpecError(f"unknown symbol {tok!r}")

    def _coordinate_index(self, name: str) -> int | None:
        n = self.space.n
        m = re.fullmatch(r"x(\d+)", name)
        if m:
            k = int(m.group(1))
            if not 1 <= k <= 2 * n:
                raise SpecError(f"coordinate {name} out of range for 2n={2 * n}")
            return k - 1
        m = re.fullmatch(r"q(\d*)", name)
        if m:
            k = int(m.group(1) or "1")
            if not 1 <= k <= n:
                raise SpecError(f"coordinate {name} out of range for n={n}")
            return k - 1
        m = re.fullmatch(r"p(\d*)", name)
        if m:
            k = int(m.group(1) or "1")
            if not 1 <= k <= n:
                raise SpecError(f"coordinate {name} out of range for n={n}")
            return n + k - 1
        return None


def parse_observable(
    text: str, space: SymplecticVectorSpace, order: int | None = None
) -> PolyObservable:
    return _Parser(text, space, order).parse()


def parse_series(text: str, order: int | None = None) -> LambdaSeries:
    """Parse a coordinate-free expression into a LambdaSeries."""
    space = SymplecticVectorSpace(1)
    poly = parse_observable(text, space, order)
    if not poly.is_constant():
        raise SpecError(f"expected a scalar series, got {format_observable(poly)!r}")
    return poly.constant_series()
