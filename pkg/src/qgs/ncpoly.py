"""Noncommutative polynomials with exact rational coefficients.

A word is a tuple of generator indices; the empty tuple is the unit.  An
:class:`NcPoly` maps words to nonzero :class:`fractions.Fraction`
coefficients and knows how many generators its ambient free algebra has,
so that polynomials from different presentations cannot be mixed by
accident.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

Word = tuple
Scalar = Union[int, Fraction]


class GeneratorMismatch(ValueError):
    """Raised when polynomials over different generator sets are combined."""


def deglex_key(w: Word) -> tuple:
    """Sort key realising the degree-lexicographic order on words."""
    return (len(w), w)


def deglex_compare(u: Word, v: Word) -> int:
    """Return -1, 0 or 1 as ``u`` is smaller, equal or larger than ``v``."""
    ku, kv = deglex_key(u), deglex_key(v)
    return (ku > kv) - (ku < kv)


def max_word(words: Iterable[Word]) -> Word:
    return max(words, key=deglex_key)


class NcPoly:
    """Element of the free algebra on ``ngens`` self-adjoint generators."""

    __slots__ = ("_terms", "ngens", "_hash")

    def __init__(self, terms: Mapping[Word, Scalar] | None = None, ngens: int = 0):
        clean = {}
        if terms:
            for w, c in terms.items():
                w = tuple(w)
                if any(not (0 <= g < ngens) for g in w):
                    raise GeneratorMismatch(f"word {w} outside {ngens} generators")
                c = Fraction(c)
                if c:
                    clean[w] = clean.get(w, 0) + c
            clean = {w: c for w, c in clean.items() if c}
        self._terms = clean
        self.ngens = ngens
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, ngens: int) -> NcPoly:
        # trusted constructor: terms already clean
        p = cls.__new__(cls)
        p._terms = terms
        p.ngens = ngens
        p._hash = None
        return p

    @classmethod
    def one(cls, ngens: int) -> NcPoly:
        return cls._raw({(): Fraction(1)}, ngens)

    @classmethod
    def zero(cls, ngens: int) -> NcPoly:
        return cls._raw({}, ngens)

    @classmethod
    def gen(cls, index: int, ngens: int) -> NcPoly:
        if not 0 <= index < ngens:
            raise GeneratorMismatch(f"generator {index} outside {ngens} generators")
        return cls._raw({(index,): Fraction(1)}, ngens)

    @classmethod
    def word(cls, w: Sequence[int], ngens: int, coeff: Scalar = 1) -> NcPoly:
        return cls({tuple(w): coeff}, ngens)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict:
        """Copy of the word -> coefficient map."""
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Word, Fraction]]:
        """Terms in descending deglex order."""
        for w in sorted(self._terms, key=deglex_key, reverse=True):
            yield w, self._terms[w]

    def coeff(self, w: Word) -> Fraction:
        return self._terms.get(tuple(w), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def leading_word(self) -> Word:
        if not self._terms:
            raise ValueError("zero polynomial has no leading word")
        return max_word(self._terms)

    def leading_coeff(self) -> Fraction:
        return self._terms[self.leading_word()]

    def degree(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def monic(self) -> NcPoly:
        if not self._terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return NcPoly._raw({w: c / lc for w, c in self._terms.items()}, self.ngens)

    def sort_key(self) -> tuple:
        return tuple((deglex_key(w), c) for w, c in self.items())

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: NcPoly) -> None:
        if self.ngens != other.ngens:
            raise GeneratorMismatch(
                f"polynomials over {self.ngens} and {other.ngens} generators")

    def _coerce(self, other) -> NcPoly:
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return NcPoly({(): other}, self.ngens)
        return NotImplemented

    def __add__(self, other) -> NcPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, 0) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NcPoly._raw(out, self.ngens)

    __radd__ = __add__

    def __neg__(self) -> NcPoly:
        return NcPoly._raw({w: -c for w, c in self._terms.items()}, self.ngens)

    def __sub__(self, other) -> NcPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> NcPoly:
        return (-self) + other

    def scale(self, c: Scalar) -> NcPoly:
        c = Fraction(c)
        if not c:
            return NcPoly.zero(self.ngens)
        return NcPoly._raw({w: c * v for w, v in self._terms.items()}, self.ngens)

    def __mul__(self, other) -> NcPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, NcPoly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u + v
                s = out.get(w, 0) + a * b
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NcPoly._raw(out, self.ngens)

    def __rmul__(self, other) -> NcPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int) -> NcPoly:
        out = NcPoly.one(self.ngens)
        for _ in range(k):
            out = out * self
        return out

    def lrmul(self, left: Word, right: Word) -> NcPoly:
        """Return ``left * self * right`` for words ``left`` and ``right``."""
        return NcPoly._raw({left + w + right: c for w, c in self._terms.items()}, self.ngens)

    def __eq__(self, other) -> bool:
        if isinstance(other, NcPoly):
            return self.ngens == other.ngens and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == ({(): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ngens, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"NcPoly({format_poly(self)!r}, ngens={self.ngens})"


def involution(p: NcPoly) -> NcPoly:
    """Star of ``p`` when every generator is self-adjoint.

    Words are reversed; rational coefficients are their own conjugates.
    """
    return NcPoly._raw({w[::-1]: c for w, c in p._terms.items()}, p.ngens)


def commutator(a: NcPoly, b: NcPoly) -> NcPoly:
    return a * b - b * a


# -- text syntax ------------------------------------------------------------

def default_labels(ngens: int) -> list[str]:
    return [f"g{i}" for i in range(ngens)]


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: NcPoly, labels: Sequence[str] | None = None) -> str:
    """Render ``p`` in the CLI polynomial syntax, highest term first."""
    if labels is None:
        labels = default_labels(p.ngens)
    if not p:
        return "0"
    parts = []
    for w, c in p.items():
        sign = "-" if c < 0 else "+"
        a = abs(c)
        factors = [labels[g] for g in w]
        if not factors:
            body = _fmt_coeff(a)
        elif a == 1:
            body = "*".join(factors)
        else:
            body = _fmt_coeff(a) + "*" + "*".join(factors)
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<label>[A-Za-z_][A-Za-z_0-9]*(?:\[\s*\d+\s*(?:,\s*\d+\s*)*\])?)"
    r"|(?P<op>[-+*/^()]))")


class PolySyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolySyntaxError(f"unexpected character at column {pos + 1}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        value = m.group(kind)
        if kind == "label":
            value = re.sub(r"\s+", "", value)
        tokens.append((kind, value))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens, index: Mapping[str, int], ngens: int):
        self.tokens = tokens
        self.pos = 0
        self.index = index
        self.ngens = ngens

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, value = self.take()
        if value != op:
            raise PolySyntaxError(f"expected {op!r}, got {value!r}")

    def expr(self) -> NcPoly:
        sign = 1
        kind, value = self.peek()
        if value in ("+", "-"):
            self.take()
            sign = -1 if value == "-" else 1
        out = self.term().scale(sign)
        while True:
            kind, value = self.peek()
            if value not in ("+", "-"):
                return out
            self.take()
            t = self.term()
            out = out + t if value == "+" else out - t

    def term(self) -> NcPoly:
        out = self.power()
        while self.peek()[1] == "*":
            self.take()
            out = out * self.power()
        return out

    def power(self) -> NcPoly:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, value = self.take()
            if kind != "num":
                raise PolySyntaxError("exponent must be a nonnegative integer")
            base = base ** int(value)
        return base

    def atom(self) -> NcPoly:
        kind, value = self.take()
        if kind == "num":
            num = int(value)
            if self.peek()[1] == "/":
                self.take()
                k2, den = self.take()
                if k2 != "num" or int(den) == 0:
                    raise PolySyntaxError("bad rational denominator")
                return NcPoly({(): Fraction(num, int(den))}, self.ngens)
            return NcPoly({(): num}, self.ngens)
        if kind == "label":
            if value not in self.index:
                raise PolySyntaxError(f"unknown generator {value!r}")
            return NcPoly.gen(self.index[value], self.ngens)
        if value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if value == "-":
            return -self.atom()
        raise PolySyntaxError(f"unexpected token {value!r}")


def parse_poly(text: str, labels: Sequence[str]) -> NcPoly:
    """Parse ``text`` such as ``3/2*X[1,2]*X[3,4] + 1`` over ``labels``.

    Grammar::

        expr   := ['+'|'-'] term (('+'|'-') term)*
        term   := power ('*' power)*
        power  := atom ['^' INT]
        atom   := INT ['/' INT] | LABEL | '(' expr ')' | '-' atom

    Labels are matched after removing whitespace, so ``X[1, 2]`` and
    ``X[1,2]`` are the same generator.
    """
    index = {lab: i for i, lab in enumerate(labels)}
    tokens = _tokenize(text)
    if not tokens:
        raise PolySyntaxError("empty polynomial")
    parser = _Parser(tokens, index, len(labels))
    out = parser.expr()
    if parser.pos != len(tokens):
        raise PolySyntaxError(f"trailing input at token {parser.pos + 1}: {tokens[parser.pos][1]!r}")
    return out
