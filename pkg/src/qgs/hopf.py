"""Coproduct, counit and antipode on matrix-generated free algebras.

The maps are defined on free-algebra representatives from the generator
formulas ``D(X[i,j]) = sum_k X[i,k] (x) X[k,j]``, ``e(X[i,j]) = delta_ij``
and ``S(X[i,j]) = X[j,i]``.  :func:`verify_hopf_descent` checks that each
of them kills the defining ideal, i.e. that they pass to the quotient.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ncpoly import NcPoly, deglex_key, format_poly, involution
from .verdict import Check, FAILED, INCONCLUSIVE, VERIFIED, overall, summarize


class UnsupportedFamily(ValueError):
    """Generators do not form a square matrix, so the Hopf maps are undefined."""


class InsufficientBound(ValueError):
    pass


def _matrix_size(p: NcPoly, n: int | None) -> int:
    if n is None:
        n = math.isqrt(p.ngens)
    if n * n != p.ngens or n < 1:
        raise UnsupportedFamily(f"{p.ngens} generators are not an {n} x {n} matrix")
    return n


def hopf_matrix_size(pres) -> int:
    if pres.family not in ("graph", "qperm") or pres.matrix_size is None:
        raise UnsupportedFamily(f"no Hopf structure defined on the {pres.family!r} presentation")
    return pres.matrix_size


class TensorPoly:
    """Sum of pure tensors of words; keys are tuples of words, one per factor."""

    __slots__ = ("terms", "ngens", "arity")

    def __init__(self, terms: dict, ngens: int, arity: int = 2):
        self.terms = {k: Fraction(c) for k, c in terms.items() if c}
        self.ngens = ngens
        self.arity = arity

    @classmethod
    def one(cls, ngens: int, arity: int = 2) -> TensorPoly:
        return cls({((),) * arity: 1}, ngens, arity)

    @classmethod
    def pure(cls, factors, ngens: int) -> TensorPoly:
        """Expand ``f1 (x) f2 (x) ...`` for NcPoly factors."""
        out: dict = {}
        for combo in itertools.product(*(f._terms.items() for f in factors)):
            key = tuple(w for w, _ in combo)
            c = math.prod((c for _, c in combo), start=Fraction(1))
            out[key] = out.get(key, 0) + c
        return cls(out, ngens, len(factors))

    def __add__(self, other: TensorPoly) -> TensorPoly:
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TensorPoly(out, self.ngens, self.arity)

    def __neg__(self) -> TensorPoly:
        return TensorPoly({k: -c for k, c in self.terms.items()}, self.ngens, self.arity)

    def __sub__(self, other: TensorPoly) -> TensorPoly:
        return self + (-other)

    def __mul__(self, other: TensorPoly) -> TensorPoly:
        out: dict = {}
        for k1, a in self.terms.items():
            for k2, b in other.terms.items():
                k = tuple(u + v for u, v in zip(k1, k2))
                out[k] = out.get(k, 0) + a * b
        return TensorPoly(out, self.ngens, self.arity)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TensorPoly) and self.arity == other.arity
                and self.ngens == other.ngens and self.terms == other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def factor_degrees(self) -> tuple[int, ...]:
        return tuple(max((len(k[i]) for k in self.terms), default=0) for i in range(self.arity))

    def items(self):
        for k in sorted(self.terms, key=lambda k: tuple(deglex_key(w) for w in k), reverse=True):
            yield k, self.terms[k]

    def map_factor(self, pos: int, f) -> TensorPoly:
        """Replace factor ``pos`` by ``f(word)``: a TensorPoly, NcPoly or scalar."""
        out: dict = {}
        for key, c in self.terms.items():
            img = f(key[pos])
            if isinstance(img, TensorPoly):
                parts = img.terms.items()
            elif isinstance(img, NcPoly):
                parts = (((w,), d) for w, d in img._terms.items())
            else:
                parts = [((), Fraction(img))]
            for sub, d in parts:
                k = key[:pos] + sub + key[pos + 1:]
                out[k] = out.get(k, 0) + c * d
        arity = len(next(iter(out))) if out else self.arity
        return TensorPoly(out, self.ngens, arity)

    def format(self, labels) -> str:
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.items():
            fs = " (x) ".join(format_poly(NcPoly._raw({w: Fraction(1)}, self.ngens), labels)
                              for w in key)
            parts.append(f"{c}*[{fs}]" if c != 1 else f"[{fs}]")
        return " + ".join(parts)

    def __repr__(self):
        return f"TensorPoly({len(self.terms)} terms, arity={self.arity})"


# -- the structure maps -------------------------------------------------------------


def _word_coproduct(w, n: int) -> dict:
    # D(X[i1,j1]...X[id,jd]) = sum over k: X[i1,k1]..X[id,kd] (x) X[k1,j1]..X[kd,jd]
    pairs = [divmod(g, n) for g in w]
    out = {}
    for ks in itertools.product(range(n), repeat=len(w)):
        left = tuple(i * n + k for (i, _), k in zip(pairs, ks))
        right = tuple(k * n + j for (_, j), k in zip(pairs, ks))
        out[(left, right)] = 1
    return out


def coproduct(p: NcPoly, n: int | None = None) -> TensorPoly:
    n = _matrix_size(p, n)
    out: dict = {}
    for w, c in p._terms.items():
        for key in _word_coproduct(w, n):
            out[key] = out.get(key, 0) + c
    return TensorPoly(out, p.ngens)


def word_coproduct(w, n: int) -> TensorPoly:
    return TensorPoly(_word_coproduct(tuple(w), n), n * n)


def counit(p: NcPoly, n: int | None = None) -> Fraction:
    n = _matrix_size(p, n)
    total = Fraction(0)
    for w, c in p._terms.items():
        if all(g // n == g % n for g in w):
            total += c
    return total


def word_counit(w, n: int) -> int:
    return int(all(g // n == g % n for g in w))


def antipode(p: NcPoly, n: int | None = None) -> NcPoly:
    n = _matrix_size(p, n)
    return NcPoly._raw({tuple((g % n) * n + g // n for g in reversed(w)): c
                        for w, c in p._terms.items()}, p.ngens)


def tensor_normal_form(t: TensorPoly, gb) -> TensorPoly:
    """Reduce every tensor factor modulo the ideal and recollect.

    Zero means ``t`` lies in the sum of ``I (x) F`` and ``F (x) I`` (and the
    analogues for higher arity).
    """
    bound = gb.degree_bound
    if not gb.closed and any(d > bound for d in t.factor_degrees()):
        raise InsufficientBound(f"tensor factor degree exceeds the basis bound {bound}")
    cache: dict = {}

    def nf(w):
        r = cache.get(w)
        if r is None:
            r = cache[w] = gb.normal_form(NcPoly._raw({w: Fraction(1)}, gb.ngens))._terms
        return r

    out: dict = {}
    for key, c in t.terms.items():
        for combo in itertools.product(*(nf(w).items() for w in key)):
            k = tuple(w for w, _ in combo)
            d = c * math.prod((x for _, x in combo), start=Fraction(1))
            s = out.get(k, 0) + d
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return TensorPoly(out, t.ngens, t.arity)


# -- descent ------------------------------------------------------------------------


@dataclass
class HopfReport:
    presentation: str
    degree_bound: int
    checks: list[Check] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        return overall(self.checks)

    @property
    def verified(self) -> bool:
        return self.verdict == VERIFIED

    def by_axiom(self) -> dict:
        groups: dict = {}
        for c in self.checks:
            groups.setdefault(c.name.split(":", 1)[0], []).append(c)
        return {k: {"verdict": overall(v), **summarize(v)} for k, v in groups.items()}

    def to_dict(self, detail: bool = True) -> dict:
        d = {"presentation": self.presentation, "degree_bound": self.degree_bound,
             "verdict": self.verdict, "axioms": self.by_axiom()}
        if detail:
            d["checks"] = [c.to_dict() for c in self.checks]
        return d


def _poly_check(name, nf, gb, labels):
    if not nf:
        return Check(name, VERIFIED)
    return Check(name, FAILED if gb.closed else INCONCLUSIVE, witness=format_poly(nf, labels))


def verify_hopf_descent(pres, gb) -> HopfReport:
    """Counit, antipode, coproduct and star must all kill every relation."""
    n = hopf_matrix_size(pres)
    if gb.degree_bound < 2 * pres.max_degree():
        raise InsufficientBound(
            f"bound {gb.degree_bound} below twice the relation degree {pres.max_degree()}")
    labels = pres.labels
    N = pres.ngens
    report = HopfReport(pres.name or pres.family, gb.degree_bound)
    for r in pres.relations:
        tag = format_poly(r, labels)
        eps = counit(r, n)
        report.checks.append(Check(f"counit:{tag}", VERIFIED if eps == 0 else FAILED,
                                   witness=None if eps == 0 else str(eps)))
        report.checks.append(_poly_check(f"antipode:{tag}", gb.normal_form(antipode(r, n)), gb, labels))
        t = tensor_normal_form(coproduct(r, n), gb)
        if t:
            report.checks.append(Check(f"coproduct:{tag}", FAILED if gb.closed else INCONCLUSIVE,
                                       witness=t.format(labels)))
        else:
            report.checks.append(Check(f"coproduct:{tag}", VERIFIED))
        report.checks.append(_poly_check(f"star:{tag}", gb.normal_form(involution(r)), gb, labels))
    one = NcPoly.one(N)
    for i in range(n):
        for j in range(n):
            delta = one if i == j else NcPoly.zero(N)
            left = sum((antipode(NcPoly.gen(i * n + k, N), n) * NcPoly.gen(k * n + j, N)
                        for k in range(n)), NcPoly.zero(N)) - delta
            right = sum((NcPoly.gen(i * n + k, N) * antipode(NcPoly.gen(k * n + j, N), n)
                         for k in range(n)), NcPoly.zero(N)) - delta
            report.checks.append(_poly_check(f"antipode-axiom:m(S(x)id)D[{i + 1},{j + 1}]",
                                             gb.normal_form(left), gb, labels))
            report.checks.append(_poly_check(f"antipode-axiom:m(id(x)S)D[{i + 1},{j + 1}]",
                                             gb.normal_form(right), gb, labels))
    return report
