"""Exact finite-dimensional matrix representations of presentations."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .graph import Graph
from .ncpoly import NcPoly, format_poly, involution
from .presentation import B0_LABELS, Presentation, _matrix_labels
from .verdict import Check, FAILED, INCONCLUSIVE, VERIFIED


class InvalidRepresentation(ValueError):
    pass


def qmatrix(rows) -> np.ndarray:
    """Object array of Fractions from nested rows (ints, Fractions or 'p/q' strings)."""
    return np.array([[Fraction(x) for x in row] for row in rows], dtype=object)


def is_zero(m: np.ndarray) -> bool:
    return all(x == 0 for x in m.flat)


def qeye(d: int) -> np.ndarray:
    return qmatrix([[int(i == j) for j in range(d)] for i in range(d)])


def matrix_to_strings(m: np.ndarray) -> list[list[str]]:
    return [[str(Fraction(x)) for x in row] for row in m]


@dataclass
class MatrixRep:
    """Assignment of d x d rational matrices to generator labels."""

    dim: int
    matrices: dict[str, np.ndarray]
    name: str = ""

    def __post_init__(self):
        for lab, m in self.matrices.items():
            if m.shape != (self.dim, self.dim):
                raise InvalidRepresentation(f"matrix for {lab} has shape {m.shape}, expected {self.dim}x{self.dim}")

    def to_dict(self) -> dict:
        return {"dim": self.dim, "matrices": {k: matrix_to_strings(v) for k, v in self.matrices.items()}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict, name: str = "") -> MatrixRep:
        return cls(int(data["dim"]), {k: qmatrix(v) for k, v in data["matrices"].items()}, name)

    @classmethod
    def from_json(cls, text: str, name: str = "") -> MatrixRep:
        return cls.from_dict(json.loads(text), name)


def _generator_matrices(rep: MatrixRep, labels) -> list[np.ndarray]:
    missing = [lab for lab in labels if lab not in rep.matrices]
    if missing:
        raise InvalidRepresentation(f"no matrix for generators {', '.join(missing)}")
    mats = [rep.matrices[lab] for lab in labels]
    for lab, m in zip(labels, mats):
        if m.shape != (rep.dim, rep.dim):
            raise InvalidRepresentation(f"matrix for {lab} has shape {m.shape}, expected {rep.dim}x{rep.dim}")
    return mats


def evaluate(rep: MatrixRep, p: NcPoly, labels=None, _mats=None) -> np.ndarray:
    """Matrix of ``p`` under ``rep``; ``labels`` default to the rep's key order."""
    mats = _mats if _mats is not None else _generator_matrices(rep, labels or list(rep.matrices))
    out = qmatrix([[0] * rep.dim for _ in range(rep.dim)])
    cache = {(): qeye(rep.dim)}
    for w, c in p.items():
        m = cache.get(w)
        if m is None:
            k = len(w) - 1
            while w[:k] not in cache:
                k -= 1
            m = cache[w[:k]]
            for j in range(k, len(w)):
                m = m.dot(mats[w[j]])
                cache[w[:j + 1]] = m
        out = out + m * c
    return out


def _bind(rep: MatrixRep, pres: Presentation):
    mats = _generator_matrices(rep, pres.labels)
    return lambda p: evaluate(rep, p, _mats=mats)


# -- invariant lines (2 x 2 only) ---------------------------------------------------


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    return Fraction(n, d) if n * n == q.numerator and d * d == q.denominator else None


def _eigenlines(m: np.ndarray) -> list[tuple[Fraction, Fraction]] | None:
    """Rational eigenlines of a non-scalar 2x2 matrix; None if irrational."""
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    tr, det = a + d, a * d - b * c
    root = _rational_sqrt(tr * tr - 4 * det)
    if root is None:
        return None
    lines = set()
    for lam in {(tr + root) / 2, (tr - root) / 2}:
        # kernel of m - lam
        if b != 0 or a - lam != 0:
            v = (b, lam - a)
        else:
            v = (lam - d, c)
        if v == (0, 0):
            v = (Fraction(1), Fraction(0))
        # normalise direction
        s = v[0] if v[0] != 0 else v[1]
        lines.add((v[0] / s, v[1] / s))
    return sorted(lines)


def invariant_lines(mats) -> list[tuple[Fraction, Fraction]] | None:
    """Lines invariant under every 2x2 matrix; None when undecidable over Q."""
    non_scalar = [m for m in mats if not (m[0, 1] == 0 and m[1, 0] == 0 and m[0, 0] == m[1, 1])]
    if not non_scalar:
        return None
    cands = _eigenlines(non_scalar[0])
    if cands is None:
        return None
    out = []
    for v in cands:
        vec = np.array(v, dtype=object)
        if all((lambda u: u[0] * v[1] - u[1] * v[0] == 0)(m.dot(vec)) for m in mats):
            out.append(v)
    return out


# -- verification -------------------------------------------------------------------


@dataclass
class RepReport:
    presentation: str
    dim: int
    failed_relations: list[tuple[str, list[list[str]]]] = field(default_factory=list)
    star_failures: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def valid(self) -> bool:
        return not self.failed_relations

    @property
    def star_compatible(self) -> bool:
        return not self.star_failures

    def to_dict(self) -> dict:
        return {"presentation": self.presentation, "dim": self.dim, "valid": self.valid,
                "relations_checked": self.checked,
                "failed_relations": [{"relation": r, "value": v} for r, v in self.failed_relations],
                "star_compatible": self.star_compatible, "star_failures": self.star_failures,
                "notes": self.notes}


def verify_rep(pres: Presentation, rep: MatrixRep) -> RepReport:
    """Evaluate every relation; star-compatibility is reported, not required."""
    ev = _bind(rep, pres)
    report = RepReport(pres.name or pres.family, rep.dim, checked=len(pres.relations))
    for r in pres.relations:
        v = ev(r)
        if not is_zero(v):
            report.failed_relations.append((pres.format(r), matrix_to_strings(v)))
    for lab in pres.labels:
        m = rep.matrices[lab]
        if not all(m[i, j] == m[j, i] for i in range(rep.dim) for j in range(rep.dim)):
            report.star_failures.append(lab)
            if is_zero(m.dot(m) - m):
                report.notes.append(f"image of {lab} is an idempotent that is not symmetric")
    if rep.dim == 2:
        mats = [rep.matrices[lab] for lab in pres.labels]
        lines = invariant_lines(mats)
        if lines is not None and len(lines) == 1:
            v = lines[0]
            report.notes.append(
                f"the only common invariant line is spanned by ({v[0]}, {v[1]}): "
                "the representation is reducible but not semisimple, so no inner "
                "product makes it a *-representation")
        elif lines is not None and len(lines) >= 2:
            report.notes.append("the representation splits into two invariant lines (semisimple)")
    return report


def commutator_witness(pres: Presentation, rep: MatrixRep, report: RepReport | None = None):
    """First generator pair with non-commuting images, or None.

    The representation must be valid: a witness then proves that the
    quotient algebra is noncommutative.
    """
    report = report or verify_rep(pres, rep)
    if not report.valid:
        raise InvalidRepresentation(
            f"representation violates {len(report.failed_relations)} relation(s), e.g. "
            f"{report.failed_relations[0][0]}")
    mats = _generator_matrices(rep, pres.labels)
    for a in range(pres.ngens):
        for b in range(a + 1, pres.ngens):
            c = mats[a].dot(mats[b]) - mats[b].dot(mats[a])
            if not is_zero(c):
                return (a, b), c
    return None


def pullback(rep: MatrixRep, f) -> MatrixRep:
    """Representation of ``f.source`` obtained by composing with ``f``."""
    ev = _bind(rep, f.target)
    mats = {lab: ev(img) for lab, img in zip(f.source.labels, f.images)}
    return MatrixRep(rep.dim, mats, name=f"{rep.name}o{f.name}")


# -- built-in representations ------------------------------------------------------


def paper_pi_rep() -> MatrixRep:
    """Two-dimensional lower-triangular representation of B0."""
    zero = [[0, 0], [0, 0]]
    mats = {lab: qmatrix(zero) for lab in B0_LABELS}
    mats["y1"] = qmatrix([[1, 0], [0, 0]])
    mats["y2"] = qmatrix([[0, 0], [0, 1]])
    mats["y7"] = qmatrix([[1, 0], [1, 0]])
    mats["y8"] = qmatrix([[0, 0], [-1, 1]])
    return MatrixRep(2, mats, name="pi")


def x4_witness_rep(letter: str = "x") -> MatrixRep:
    """Block magic unitary on a 4 x 4 matrix with non-commuting blocks."""
    p = qmatrix([[1, 0], [0, 0]])
    q = qmatrix([[Fraction(1, 2), Fraction(1, 2)], [Fraction(1, 2), Fraction(1, 2)]])
    one = qeye(2)
    zero = qmatrix([[0, 0], [0, 0]])
    blocks = {(1, 1): p, (1, 2): one - p, (2, 1): one - p, (2, 2): p,
              (3, 3): q, (3, 4): one - q, (4, 3): one - q, (4, 4): q}
    mats = {f"{letter}[{i},{j}]": blocks.get((i, j), zero) for i in range(1, 5) for j in range(1, 5)}
    return MatrixRep(2, mats, name="x4_witness")


def character_from_automorphism(g: Graph, sigma) -> MatrixRep:
    """One-dimensional assignment X[i,j] -> delta(i, sigma(j))."""
    n = g.n_vertices
    if sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")
    mats = {f"X[{i},{j}]": qmatrix([[int(i == sigma[j - 1])]])
            for i in range(1, n + 1) for j in range(1, n + 1)}
    return MatrixRep(1, mats, name=f"chi{tuple(sigma)}")


def counit_character(pres: Presentation) -> MatrixRep:
    n = pres.matrix_size
    labels = pres.labels
    return MatrixRep(1, {labels[(i - 1) * n + (j - 1)]: qmatrix([[int(i == j)]])
                         for i in range(1, n + 1) for j in range(1, n + 1)}, name="counit")


# -- edge magic unitary -------------------------------------------------------------


@dataclass
class EdgeReport:
    checks: list[Check]

    @property
    def verified(self) -> bool:
        return all(c.ok for c in self.checks)

    def families(self) -> dict:
        out: dict = {}
        for c in self.checks:
            fam = c.name.split(":", 1)[0]
            out[fam] = out.get(fam, True) and c.ok
        return out

    def to_dict(self, detail: bool = False) -> dict:
        d = {"verified": self.verified, "families": self.families(), "checks": len(self.checks)}
        if detail or not self.verified:
            d["failures"] = [c.to_dict() for c in self.checks if not c.ok]
        return d


def edge_products(g: Graph, pres: Presentation) -> dict[tuple[int, int], NcPoly]:
    """b[l, j] = X[s(l), s(j)] X[t(l), t(j)] for edges l, j (1-based)."""
    out = {}
    for l, (sl, tl) in enumerate(g.edges, start=1):
        for j, (sj, tj) in enumerate(g.edges, start=1):
            out[(l, j)] = pres.X(sl, sj) * pres.X(tl, tj)
    return out


def edge_magic_unitary_check(g: Graph, gb) -> EdgeReport:
    """The edge-product matrix is a magic unitary modulo the ideal."""
    if gb.degree_bound < 4:
        from .hopf import InsufficientBound
        raise InsufficientBound("edge checks need degree bound >= 4")
    pres = gb.presentation
    labels = pres.labels
    b = edge_products(g, pres)
    m = g.n_edges
    one = NcPoly.one(pres.ngens)

    def check(name, p):
        nf = gb.normal_form(p)
        if not nf:
            return Check(name, VERIFIED)
        return Check(name, FAILED if gb.closed else INCONCLUSIVE, witness=format_poly(nf, labels))

    checks = []
    for (l, j), blj in b.items():
        checks.append(check(f"self-adjoint:b[{l},{j}]", involution(blj) - blj))
    for l in range(1, m + 1):
        for j in range(1, m + 1):
            for j2 in range(1, m + 1):
                p = b[(l, j)] * b[(l, j2)]
                if j == j2:
                    p = p - b[(l, j)]
                checks.append(check(f"orthogonal:b[{l},{j}]b[{l},{j2}]", p))
    for j in range(1, m + 1):
        col = sum((b[(l, j)] for l in range(1, m + 1)), NcPoly.zero(pres.ngens)) - one
        row = sum((b[(j, l)] for l in range(1, m + 1)), NcPoly.zero(pres.ngens)) - one
        checks.append(check(f"sums:column {j}", col))
        checks.append(check(f"sums:row {j}", row))
    return EdgeReport(checks)
