"""Presentations of the quantum automorphism algebras and maps between them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .graph import Graph, builtin_graph
from .ncpoly import GeneratorMismatch, NcPoly, format_poly, involution, parse_poly
from .verdict import Check, FAILED, INCONCLUSIVE, VERIFIED


@dataclass(frozen=True)
class Presentation:
    """Generators plus relations ``r = 0``; all generators are self-adjoint.

    ``family`` is one of ``qperm``, ``graph``, ``b0`` or ``custom``;
    ``matrix_size`` is the n of an n x n generator matrix when there is one.
    """

    labels: tuple[str, ...]
    relations: tuple[NcPoly, ...]
    family: str = "custom"
    matrix_size: int | None = None
    raw_relation_count: int = 0
    name: str = ""
    graph: Graph | None = field(default=None, compare=False)

    @property
    def generator_count(self) -> int:
        return len(self.labels)

    @property
    def ngens(self) -> int:
        return len(self.labels)

    def gen(self, label: str) -> NcPoly:
        return NcPoly.gen(self.labels.index(label), self.ngens)

    def X(self, i: int, j: int) -> NcPoly:
        """Matrix generator in row i, column j (1-based)."""
        if self.matrix_size is None:
            raise ValueError(f"{self.family} presentation has no generator matrix")
        n = self.matrix_size
        return NcPoly.gen((i - 1) * n + (j - 1), self.ngens)

    def parse(self, text: str) -> NcPoly:
        return parse_poly(text, self.labels)

    def format(self, p: NcPoly) -> str:
        return format_poly(p, self.labels)

    def max_degree(self) -> int:
        return max((r.degree() for r in self.relations), default=0)

    def same_relations(self, other: Presentation) -> bool:
        return self.ngens == other.ngens and self.relations == other.relations

    def to_dict(self) -> dict:
        return {"generators": list(self.labels),
                "relations": [self.format(r) for r in self.relations]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def stats(self) -> dict:
        return {"family": self.family, "generators": self.ngens,
                "relations": len(self.relations), "raw_relations": self.raw_relation_count,
                "max_degree": self.max_degree()}


def normalize_relations(relations: Iterable[NcPoly]) -> tuple[NcPoly, ...]:
    """Monic, deduplicated, sorted by leading word (then the remaining terms)."""
    uniq = {r.monic() for r in relations if r}
    return tuple(sorted(uniq, key=NcPoly.sort_key))


def make_presentation(labels: Sequence[str], relations: Sequence[NcPoly], **kw) -> Presentation:
    relations = list(relations)
    for r in relations:
        if r.ngens != len(labels):
            raise GeneratorMismatch("relation over the wrong generator set")
    return Presentation(tuple(labels), normalize_relations(relations),
                        raw_relation_count=len(relations), **kw)


def presentation_from_dict(data: dict, name: str = "") -> Presentation:
    labels = list(data["generators"])
    rels = [parse_poly(s, labels) for s in data["relations"]]
    return make_presentation(labels, rels, family="custom", name=name)


def presentation_from_json(text: str, name: str = "") -> Presentation:
    return presentation_from_dict(json.loads(text), name)


# -- the three families -------------------------------------------------------------


def _matrix_labels(letter: str, n: int) -> list[str]:
    return [f"{letter}[{i},{j}]" for i in range(1, n + 1) for j in range(1, n + 1)]


def _magic_relations(n: int) -> list[NcPoly]:
    """Orthogonal-idempotent rows and columns summing to 1, generators row-major."""
    N = n * n

    def x(i, j):
        return (i - 1) * n + (j - 1)

    one = NcPoly.one(N)
    rels = []
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            for k in rng:
                r = NcPoly.word((x(i, j), x(i, k)), N)
                if j == k:
                    r = r - NcPoly.gen(x(i, j), N)
                rels.append(r)
    for i in rng:
        for j in rng:
            for k in rng:
                r = NcPoly.word((x(j, i), x(k, i)), N)
                if j == k:
                    r = r - NcPoly.gen(x(j, i), N)
                rels.append(r)
    for i in rng:
        rels.append(NcPoly({(x(i, l),): 1 for l in rng}, N) - one)
    for i in rng:
        rels.append(NcPoly({(x(l, i),): 1 for l in rng}, N) - one)
    return rels


def quantum_perm_presentation(n: int) -> Presentation:
    """Free algebra on an n x n magic unitary ``x[i,j]``."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    return make_presentation(_matrix_labels("x", n), _magic_relations(n), family="qperm",
                             matrix_size=n, name=f"qperm({n})")


def graph_relation_families(g: Graph) -> dict[str, list[NcPoly]]:
    """The four relation families for ``g``, before normalisation."""
    n = g.n_vertices
    N = n * n

    def X(i, j):
        return (i - 1) * n + (j - 1)

    def prod(a, b):
        return NcPoly.word((X(*a), X(*b)), N)

    one = NcPoly.one(N)
    fam: dict[str, list[NcPoly]] = {"magic": _magic_relations(n), "non_edge": [],
                                    "commute": [], "edge_sum": []}
    non_edges = g.non_edges()
    for s, t in g.edges:
        for i, k in non_edges:
            fam["non_edge"] += [prod((s, i), (t, k)), prod((t, k), (s, i)),
                                prod((i, s), (k, t)), prod((k, t), (i, s))]
    for sj, tj in g.edges:
        for sl, tl in g.edges:
            # corrected form of the printed relation (second factor t(j)t(l))
            fam["commute"].append(prod((sj, sl), (tj, tl)) - prod((tj, tl), (sj, sl)))
    for sj, tj in g.edges:
        col = sum((prod((sl, sj), (tl, tj)) for sl, tl in g.edges), NcPoly.zero(N))
        row = sum((prod((sj, sl), (tj, tl)) for sl, tl in g.edges), NcPoly.zero(N))
        fam["edge_sum"] += [col - one, row - one]
    return fam


def graph_presentation(g: Graph, families: Sequence[str] = ("magic", "non_edge", "commute", "edge_sum"),
                       name: str = "") -> Presentation:
    """Presentation of the quantum automorphism algebra of ``g``.

    ``families`` selects which relation families are included; dropping some
    of them gives the mutilated presentations used as negative controls.
    """
    fam = graph_relation_families(g)
    rels = [r for key in families for r in fam[key]]
    return make_presentation(_matrix_labels("X", g.n_vertices), rels, family="graph",
                             matrix_size=g.n_vertices, graph=g, name=name or "graph")


B0_LABELS = tuple(f"y{i}" for i in range(1, 9))

# unordered pairs {a, b} with y_a y_b = 0 = y_b y_a
B0_ORTHOGONAL = tuple(
    [(1, i) for i in range(2, 7)]
    + [(2, i) for i in range(3, 7)]
    + [(3, i) for i in (4, 7, 8)]
    + [(4, i) for i in (7, 8)]
    + [(5, i) for i in (6, 7, 8)]
    + [(6, i) for i in (7, 8)]
    + [(7, 8)]
)

B0_SUMS = ((1, 2, 3, 4), (1, 2, 5, 6), (3, 4, 7, 8), (5, 6, 7, 8))


def b0_presentation() -> Presentation:
    """Eight projections ``y1..y8`` with the listed orthogonalities and sums."""
    N = 8

    def y(i):
        return NcPoly.gen(i - 1, N)

    rels = [y(i) * y(i) - y(i) for i in range(1, 9)]
    for a, b in B0_ORTHOGONAL:
        rels += [y(a) * y(b), y(b) * y(a)]
    for quad in B0_SUMS:
        rels.append(sum((y(i) for i in quad), NcPoly.zero(N)) - 1)
    return make_presentation(B0_LABELS, rels, family="b0", name="B0")


def d4_presentation() -> Presentation:
    return graph_presentation(builtin_graph("d4_paper"), name="d4_paper")


# -- generator maps -----------------------------------------------------------------


@dataclass(frozen=True)
class GeneratorMap:
    source: Presentation
    target: Presentation
    images: tuple[NcPoly, ...]
    name: str = ""

    def __post_init__(self):
        if len(self.images) != self.source.ngens:
            raise GeneratorMismatch("need one image per source generator")
        for im in self.images:
            if im.ngens != self.target.ngens:
                raise GeneratorMismatch("image not over the target generators")

    def __call__(self, p: NcPoly) -> NcPoly:
        return apply_generator_map(self, p)


def apply_generator_map(f: GeneratorMap, p: NcPoly) -> NcPoly:
    """Extend the generator images to a unital algebra homomorphism."""
    if p.ngens != f.source.ngens:
        raise GeneratorMismatch(f"polynomial over {p.ngens} generators, map source has {f.source.ngens}")
    N = f.target.ngens
    out = NcPoly.zero(N)
    cache: dict[tuple, NcPoly] = {(): NcPoly.one(N)}
    for w, c in p.items():
        img = cache.get(w)
        if img is None:
            # prefixes are cached so shared stems are multiplied once
            k = len(w) - 1
            while w[:k] not in cache:
                k -= 1
            img = cache[w[:k]]
            for j in range(k, len(w)):
                img = img * f.images[w[j]]
                cache[w[:j + 1]] = img
        out = out + img.scale(c)
    return out


def identity_map(p: Presentation) -> GeneratorMap:
    return GeneratorMap(p, p, tuple(NcPoly.gen(i, p.ngens) for i in range(p.ngens)), "id")


def map_from_labels(source: Presentation, target: Presentation, images: dict[str, str],
                    name: str = "") -> GeneratorMap:
    return GeneratorMap(source, target, tuple(target.parse(images[lab]) for lab in source.labels), name)


PHI_IMAGES = {"y1": "X[1,1]", "y2": "X[1,2]", "y3": "X[1,3]", "y4": "X[1,4]",
              "y5": "X[3,1]", "y6": "X[3,2]", "y7": "X[3,3]", "y8": "X[3,4]"}

PSI_PAIRS = {"y1": ((1, 1), (2, 2)), "y2": ((1, 2), (2, 1)), "y3": ((1, 3), (2, 4)),
             "y4": ((1, 4), (2, 3)), "y5": ((3, 1), (4, 2)), "y6": ((3, 2), (4, 1)),
             "y7": ((3, 3), (4, 4)), "y8": ((3, 4), (4, 3))}


def phi_map(b0: Presentation | None = None, d4: Presentation | None = None) -> GeneratorMap:
    """B0 -> A(D4 graph) sending y_k to the first-row/third-row generators."""
    b0 = b0 or b0_presentation()
    d4 = d4 or d4_presentation()
    return map_from_labels(b0, d4, PHI_IMAGES, "phi")


def psi_map(d4: Presentation | None = None, b0: Presentation | None = None) -> GeneratorMap:
    """A(D4 graph) -> B0 identifying each generator with its partner."""
    b0 = b0 or b0_presentation()
    d4 = d4 or d4_presentation()
    images = {}
    for y, pairs in PSI_PAIRS.items():
        for i, j in pairs:
            images[f"X[{i},{j}]"] = y
    return map_from_labels(d4, b0, images, "psi")


def projection_map(qperm: Presentation, graph_pres: Presentation) -> GeneratorMap:
    """x[i,j] -> X[i,j]."""
    if qperm.ngens != graph_pres.ngens:
        raise GeneratorMismatch("matrix sizes differ")
    N = graph_pres.ngens
    return GeneratorMap(qperm, graph_pres, tuple(NcPoly.gen(i, N) for i in range(N)), "projection")


# -- verification -------------------------------------------------------------------


@dataclass
class MapReport:
    name: str
    well_defined: list[Check]
    inverse_checks: list[Check] = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return all(c.verdict == VERIFIED for c in self.well_defined + self.inverse_checks)

    def failures(self) -> list[Check]:
        return [c for c in self.well_defined + self.inverse_checks if c.verdict != VERIFIED]

    def to_dict(self) -> dict:
        return {"map": self.name, "verified": self.verified,
                "well_defined": [c.to_dict() for c in self.well_defined],
                "inverse_checks": [c.to_dict() for c in self.inverse_checks]}


def _vanishing_check(name: str, p: NcPoly, gb, pres: Presentation,
                     separators: Sequence[Callable[[NcPoly], bool]] = ()) -> Check:
    """Verified when NF(p) = 0; failed when certified nonzero; else inconclusive."""
    nf = gb.normal_form(p)
    if not nf:
        return Check(name, VERIFIED)
    witness = pres.format(nf)
    if gb.closed or any(sep(p) for sep in separators):
        return Check(name, FAILED, witness=witness)
    return Check(name, INCONCLUSIVE, witness=witness)


def verify_generator_map(f: GeneratorMap, gb_target, gb_source=None,
                         check_inverse: GeneratorMap | None = None,
                         target_reps: Sequence = (), source_reps: Sequence = ()) -> MapReport:
    """Check that ``f`` respects every source relation modulo the target ideal.

    With ``check_inverse`` (a map target -> source) both composites are
    compared with the identity on generators.  ``target_reps`` /
    ``source_reps`` are valid matrix representations used to certify a
    nonzero normal form as a genuine failure.
    """
    from .reps import _bind, is_zero

    if gb_target.presentation.labels != f.target.labels:
        raise GeneratorMismatch("target basis does not belong to the map target")
    if check_inverse is not None:
        if check_inverse.source.labels != f.target.labels or check_inverse.target.labels != f.source.labels:
            raise GeneratorMismatch("inverse map has incompatible presentations")
        if gb_source is None:
            raise ValueError("source basis needed to check composites")

    def separators(reps, pres):
        return [lambda p, ev=_bind(r, pres): not is_zero(ev(p)) for r in reps]

    tgt_sep = separators(target_reps, f.target)
    src_sep = separators(source_reps, f.source)
    src = f.source
    checks = [_vanishing_check(f"{f.name or 'map'}({src.format(r)})", f(r), gb_target, f.target, tgt_sep)
              for r in src.relations]
    inverse = []
    if check_inverse is not None:
        g = check_inverse
        for i, lab in enumerate(src.labels):
            x = NcPoly.gen(i, src.ngens)
            inverse.append(_vanishing_check(f"{g.name}({f.name}({lab})) - {lab}", g(f(x)) - x,
                                            gb_source, src, src_sep))
        tgt = f.target
        for i, lab in enumerate(tgt.labels):
            x = NcPoly.gen(i, tgt.ngens)
            inverse.append(_vanishing_check(f"{f.name}({g.name}({lab})) - {lab}", f(g(x)) - x,
                                            gb_target, tgt, tgt_sep))
    return MapReport(f.name, checks, inverse)


def star_ideal_check(pres: Presentation, gb) -> list[Check]:
    """Involution of every relation must lie in the ideal."""
    return [_vanishing_check(f"({pres.format(r)})*", involution(r), gb, pres) for r in pres.relations]
