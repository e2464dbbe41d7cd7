"""Degree-truncated two-sided Groebner bases in free algebras.

The engine is a Buchberger completion for the degree-lexicographic order.
Overlap obstructions are processed by degree, then by the overlap word;
obstructions above ``degree_bound`` are counted but never resolved, so a
truncated basis certifies membership (normal form zero) but not
non-membership, unless it turns out to be *closed*: no overlap between its
leading words exceeds the bound, in which case it is an honest Groebner
basis of the whole ideal.

Every element remembers how it was derived from earlier ones, which lets
:meth:`GroebnerBasis.certificate` rewrite any membership as an explicit sum
``sum c * u * r * v`` over the original relations.
"""

from __future__ import annotations

import heapq
import json
import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Sequence

from .ncpoly import NcPoly, deglex_key, format_poly, parse_poly

if TYPE_CHECKING:
    from .presentation import Presentation

DEFAULT_BOUND = 6
DEFAULT_STEP_CAP = 5_000_000


class BoundTooSmall(ValueError):
    pass


class DegreeBoundError(ValueError):
    """The polynomial is longer than the basis is trustworthy for."""


class ResourceLimitExceeded(RuntimeError):
    """The reduction step cap was hit before completion."""


def default_step_cap() -> int:
    env = os.environ.get("QGS_STEP_CAP")
    return int(env) if env else DEFAULT_STEP_CAP


def _hkey(w):
    # heap key popping the deglex-largest word first
    return (-len(w), tuple(-g for g in w), w)


def _overlaps(u, v):
    """Proper overlaps: yield ``k`` with suffix of ``u`` == prefix of ``v``, length k."""
    for k in range(1, min(len(u), len(v))):
        if u[-k:] == v[:k]:
            yield k


class _Engine:
    def __init__(self, ngens: int, bound: int, step_cap: int):
        self.ngens = ngens
        self.bound = bound
        self.step_cap = step_cap
        self.steps = 0
        # history[id] = ("input", k) | ("derived", [(coef, left, src_id, right), ...])
        self.history: list = []
        self.polys: dict[int, dict] = {}
        self.active: dict[tuple, int] = {}
        self.leads: dict[int, tuple] = {}
        self.lengths: dict[int, int] = {}
        self.queue: list = []
        self.todo: deque = deque()
        self.obstructions_processed = 0

    # -- reduction ------------------------------------------------------------

    def find(self, w):
        active = self.active
        n = len(w)
        if not n:
            # only the unit can divide the empty word
            eid = active.get(())
            return None if eid is None else (0, 0, eid)
        for i in range(n):
            for L in self._sorted_lengths:
                if i + L > n:
                    break
                eid = active.get(w[i:i + L])
                if eid is not None:
                    return i, L, eid
        return None

    def reduce(self, terms: dict, record: list | None):
        work = dict(terms)
        heap = [_hkey(w) for w in work]
        heapq.heapify(heap)
        out = {}
        polys = self.polys
        while heap:
            w = heapq.heappop(heap)[2]
            c = work.pop(w, None)
            if c is None:
                continue
            hit = self.find(w)
            if hit is None:
                out[w] = c
                continue
            self.steps += 1
            if self.steps > self.step_cap:
                raise ResourceLimitExceeded(
                    f"reduction step cap {self.step_cap} exceeded (set QGS_STEP_CAP to raise it)")
            i, L, eid = hit
            left, right = w[:i], w[i + L:]
            if record is not None:
                record.append((c, left, eid, right))
            lead = w[i:i + L]
            for v, d in polys[eid].items():
                if v == lead:
                    continue
                x = left + v + right
                old = work.get(x)
                if old is None:
                    work[x] = -c * d
                    heapq.heappush(heap, _hkey(x))
                else:
                    s = old - c * d
                    if s:
                        work[x] = s
                    else:
                        del work[x]
        return out

    # -- basis maintenance ------------------------------------------------------

    @property
    def _sorted_lengths(self):
        return self._lengths_cache

    def _refresh_lengths(self):
        self._lengths_cache = sorted(L for L, c in self.lengths.items() if c)

    def add_input(self, k: int, terms: dict):
        hid = len(self.history)
        self.history.append(("input", k))
        self.todo.append((terms, [(Fraction(1), (), hid, ())]))

    def _derive(self, base: list, record: list, nf: dict):
        """Register ``nf`` (monic-normalised) with its derivation; return id."""
        lead = max(nf, key=deglex_key)
        lc = nf[lead]
        inv = 1 / Fraction(lc)
        parts = [(coef * inv, left, src, right) for coef, left, src, right in base]
        parts += [(-c * inv, left, src, right) for c, left, src, right in record]
        hid = len(self.history)
        self.history.append(("derived", parts))
        monic = {w: c * inv for w, c in nf.items()} if lc != 1 else nf
        return hid, lead, monic

    def reduce_and_insert(self, terms: dict, base: list):
        record: list = []
        nf = self.reduce(terms, record)
        if nf:
            hid, lead, monic = self._derive(base, record, nf)
            self.insert(hid, lead, monic)

    def insert(self, hid: int, lead: tuple, poly: dict):
        # elements whose leading word contains the new one are now reducible
        L = len(lead)
        for other_lead in [u for u in self.active if len(u) > L]:
            if any(other_lead[i:i + L] == lead for i in range(len(other_lead) - L + 1)):
                oid = self.active.pop(other_lead)
                del self.leads[oid]
                self.lengths[len(other_lead)] -= 1
                self.todo.append((self.polys.pop(oid), [(Fraction(1), (), oid, ())]))
        self.active[lead] = hid
        self.leads[hid] = lead
        self.polys[hid] = poly
        self.lengths[L] = self.lengths.get(L, 0) + 1
        self._refresh_lengths()
        for other_lead, oid in self.active.items():
            for a, b, ia, ib in ((lead, other_lead, hid, oid), (other_lead, lead, oid, hid)):
                for k in _overlaps(a, b):
                    w = a + b[k:]
                    if len(w) <= self.bound:
                        heapq.heappush(self.queue, (len(w), w, ia, ib, k))
                if ia == ib:
                    break

    def drain_todo(self):
        while self.todo:
            terms, base = self.todo.popleft()
            self.reduce_and_insert(terms, base)

    def run(self):
        self._refresh_lengths()
        self.drain_todo()
        while self.queue:
            deg, w, ia, ib, k = heapq.heappop(self.queue)
            if ia not in self.polys or ib not in self.polys:
                continue
            self.obstructions_processed += 1
            A, B = self.polys[ia], self.polys[ib]
            left, right = w[:len(w) - len(self.leads[ib])], w[len(self.leads[ia]):]
            s: dict = {}
            for v, c in A.items():
                s[v + right] = s.get(v + right, 0) + c
            for v, c in B.items():
                x = left + v
                t = s.get(x, 0) - c
                if t:
                    s[x] = t
                else:
                    s.pop(x, None)
            base = [(Fraction(1), (), ia, right), (Fraction(-1), left, ib, ())]
            self.reduce_and_insert(s, base)
            self.drain_todo()

    def tail_reduce(self):
        for lead in sorted(self.active, key=deglex_key):
            hid = self.active[lead]
            poly = self.polys[hid]
            tail = {w: c for w, c in poly.items() if w != lead}
            record: list = []
            nf = self.reduce(tail, record)
            if nf == tail:
                continue
            nf[lead] = Fraction(1)
            parts = [(Fraction(1), (), hid, ())] + [(-c, l, e, r) for c, l, e, r in record]
            nid = len(self.history)
            self.history.append(("derived", parts))
            del self.polys[hid], self.leads[hid]
            self.polys[nid] = nf
            self.leads[nid] = lead
            self.active[lead] = nid


@dataclass
class Certificate:
    """``p = sum coef * left * relations[index] * right``."""

    terms: list  # [(coef, left, relation_index, right)]

    def expand(self, relations: Sequence[NcPoly], ngens: int) -> NcPoly:
        out: dict = {}
        for coef, left, k, right in self.terms:
            for w, c in relations[k]._terms.items():
                x = left + w + right
                s = out.get(x, 0) + coef * c
                if s:
                    out[x] = s
                else:
                    out.pop(x, None)
        return NcPoly._raw(out, ngens)

    def verify(self, relations: Sequence[NcPoly], p: NcPoly) -> bool:
        return self.expand(relations, p.ngens) == p

    def __len__(self):
        return len(self.terms)


@dataclass
class GroebnerBasis:
    """Reduced, degree-truncated basis of the ideal of a presentation."""

    presentation: "Presentation"
    degree_bound: int
    elements: list[NcPoly]
    complete_through: int
    closed: bool
    overlaps_above_bound: int
    steps: int = 0
    obstructions_processed: int = 0
    order: str = "deglex"
    _engine: _Engine | None = field(default=None, repr=False, compare=False)
    _expanded: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self._index = {g.leading_word(): g for g in self.elements}
        if self._engine is None:
            eng = _Engine(self.ngens, self.degree_bound, default_step_cap())
            for i, g in enumerate(self.elements):
                eng.history.append(("element", i))
                eng.polys[i] = dict(g._terms)
                eng.active[g.leading_word()] = i
                eng.leads[i] = g.leading_word()
                L = len(g.leading_word())
                eng.lengths[L] = eng.lengths.get(L, 0) + 1
            eng._refresh_lengths()
            eng.step_cap = float("inf")
            self._engine = eng
            self._tracked = False
        else:
            self._tracked = True

    @property
    def ngens(self) -> int:
        return self.presentation.generator_count

    @property
    def leading_words(self) -> list[tuple]:
        return [g.leading_word() for g in self.elements]

    def __len__(self):
        return len(self.elements)

    # -- reduction --------------------------------------------------------------

    def _check_degree(self, p: NcPoly):
        if p.ngens != self.ngens:
            from .ncpoly import GeneratorMismatch
            raise GeneratorMismatch(f"polynomial over {p.ngens} generators, basis over {self.ngens}")
        if p.degree() > self.degree_bound and not self.closed:
            raise DegreeBoundError(
                f"degree {p.degree()} exceeds the basis degree bound {self.degree_bound}")

    def _reduce(self, p: NcPoly, record=None) -> NcPoly:
        eng = self._engine
        eng.step_cap = float("inf")
        return NcPoly._raw(eng.reduce(p._terms, record), self.ngens)

    def normal_form(self, p: NcPoly) -> NcPoly:
        self._check_degree(p)
        return self._reduce(p)

    def is_normal_word(self, w) -> bool:
        return self._engine.find(tuple(w)) is None

    # -- certificates -------------------------------------------------------------

    def _expand_history(self, hid: int) -> dict:
        memo = self._expanded
        if hid in memo:
            return memo[hid]
        history = self._engine.history
        # iterative post-order to avoid deep recursion
        stack = [hid]
        while stack:
            top = stack[-1]
            if top in memo:
                stack.pop()
                continue
            kind, data = history[top]
            if kind == "input":
                memo[top] = {((), data, ()): Fraction(1)}
                stack.pop()
                continue
            if kind == "element":
                raise ValueError("basis was imported without derivations; certificates unavailable")
            missing = [src for _, _, src, _ in data if src not in memo]
            if missing:
                stack.extend(missing)
                continue
            out: dict = {}
            for coef, left, src, right in data:
                for (l2, k, r2), c2 in memo[src].items():
                    key = (left + l2, k, r2 + right)
                    s = out.get(key, 0) + coef * c2
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
            memo[top] = out
            stack.pop()
        return memo[hid]

    def certificate(self, p: NcPoly) -> Certificate | None:
        """Cofactor expression of ``p`` over the input relations, if NF(p) = 0."""
        if not self._tracked:
            raise ValueError("basis was imported without derivations; certificates unavailable")
        self._check_degree(p)
        record: list = []
        nf = self._reduce(p, record)
        if nf:
            return None
        out: dict = {}
        for c, left, eid, right in record:
            for (l2, k, r2), c2 in self._expand_history(eid).items():
                key = (left + l2, k, r2 + right)
                s = out.get(key, 0) + c * c2
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        terms = sorted(((c, l, k, r) for (l, k, r), c in out.items()),
                       key=lambda t: (t[2], deglex_key(t[1]), deglex_key(t[3])))
        return Certificate(terms)

    # -- export ---------------------------------------------------------------------

    def to_dict(self) -> dict:
        labels = self.presentation.labels
        return {
            "order": self.order,
            "degree_bound": self.degree_bound,
            "complete_through": self.complete_through,
            "closed": self.closed,
            "overlaps_above_bound": self.overlaps_above_bound,
            "generators": list(labels),
            "elements": [format_poly(g, labels) for g in self.elements],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, data: dict, presentation: "Presentation") -> "GroebnerBasis":
        if list(data["generators"]) != list(presentation.labels):
            raise ValueError("basis generators do not match the presentation")
        labels = presentation.labels
        elements = [parse_poly(s, labels) for s in data["elements"]]
        return cls(presentation, data["degree_bound"], elements, data["complete_through"],
                   data["closed"], data["overlaps_above_bound"], order=data.get("order", "deglex"))

    def summary(self) -> dict:
        return {
            "degree_bound": self.degree_bound,
            "elements": len(self.elements),
            "complete_through": self.complete_through,
            "closed": self.closed,
            "overlaps_above_bound": self.overlaps_above_bound,
            "max_leading_degree": max((len(w) for w in self.leading_words), default=0),
        }


def compute_gb(presentation: "Presentation", degree_bound: int = DEFAULT_BOUND,
               step_cap: int | None = None) -> GroebnerBasis:
    """Complete ``presentation``'s relations up to overlaps of ``degree_bound``."""
    max_deg = max((r.degree() for r in presentation.relations), default=0)
    if degree_bound < 1 or degree_bound < max_deg:
        raise BoundTooSmall(f"degree bound {degree_bound} is below the relation degree {max_deg}")
    eng = _Engine(presentation.generator_count, degree_bound,
                  step_cap if step_cap is not None else default_step_cap())
    for k, r in enumerate(presentation.relations):
        eng.add_input(k, r._terms)
    eng.run()
    eng.tail_reduce()
    leads = sorted(eng.active, key=deglex_key)
    elements = [NcPoly._raw(eng.polys[eng.active[u]], presentation.generator_count) for u in leads]
    above = sum(1 for u in leads for v in leads for k in _overlaps(u, v)
                if len(u) + len(v) - k > degree_bound)
    return GroebnerBasis(presentation, degree_bound, elements, degree_bound, above == 0, above,
                         steps=eng.steps, obstructions_processed=eng.obstructions_processed,
                         _engine=eng)


# -- queries --------------------------------------------------------------------


def normal_form(gb: GroebnerBasis, p: NcPoly) -> NcPoly:
    return gb.normal_form(p)


@dataclass
class Membership:
    status: str  # "member" | "not_member" | "inconclusive_at_bound"
    normal_form: NcPoly
    certificate: Certificate | None = None

    @property
    def is_member(self) -> bool:
        return self.status == "member"


def ideal_membership(gb: GroebnerBasis, p: NcPoly, certify: bool = False) -> Membership:
    """Decide ``p`` in the ideal as far as the truncated basis allows.

    Non-membership is only claimed when the basis is closed; otherwise a
    nonzero normal form is reported as inconclusive.
    """
    nf = gb.normal_form(p)
    if not nf:
        cert = gb.certificate(p) if certify else None
        return Membership("member", nf, cert)
    return Membership("not_member" if gb.closed else "inconclusive_at_bound", nf)


@dataclass
class Commutativity:
    commutative: bool
    upto: int | None = None
    witness: tuple[int, int] | None = None
    witness_nf: NcPoly | None = None
    certified_by: str | None = None  # "closed-basis" | "representation:<name>"

    @property
    def certified(self) -> bool:
        return self.certified_by is not None

    def describe(self, labels) -> str:
        if self.commutative:
            tag = "certified" if self.certified else "evidence-at-bound"
            return f"commutative_upto({self.upto}) [{tag}]"
        a, b = self.witness
        tag = f"certified by {self.certified_by}" if self.certified else "candidate"
        return f"witness({labels[a]}, {labels[b]}) [{tag}]"


def commutativity_check(gb: GroebnerBasis, reps: Sequence = ()) -> Commutativity:
    """Reduce all generator commutators to normal form.

    Without ``reps`` the first surviving commutator (canonical pair order)
    is the witness.  With valid representations of the presentation, the
    first pair whose images fail to commute is preferred, since that
    certifies noncommutativity on its own.
    """
    n = gb.ngens
    survivors = []
    for a in range(n):
        for b in range(a + 1, n):
            c = NcPoly._raw({(a, b): Fraction(1), (b, a): Fraction(-1)}, n)
            nf = gb.normal_form(c)
            if nf:
                survivors.append((a, b, nf))
                if not reps:
                    break
        if survivors and not reps:
            break
    if not survivors:
        return Commutativity(True, upto=gb.complete_through,
                             certified_by="closed-basis" if gb.closed else None)
    if reps:
        from .reps import _bind, is_zero
        evs = [(r.name or "rep", _bind(r, gb.presentation)) for r in reps]
        for a, b, nf in survivors:
            c = NcPoly._raw({(a, b): Fraction(1), (b, a): Fraction(-1)}, n)
            for name, ev in evs:
                if not is_zero(ev(c)):
                    return Commutativity(False, witness=(a, b), witness_nf=nf,
                                         certified_by=f"representation:{name}")
    a, b, nf = survivors[0]
    return Commutativity(False, witness=(a, b), witness_nf=nf,
                         certified_by="closed-basis" if gb.closed else None)


# -- census ---------------------------------------------------------------------


class _Automaton:
    """Aho-Corasick automaton over the leading words."""

    def __init__(self, words, alphabet: int):
        self.alphabet = alphabet
        goto = [dict()]
        terminal = [False]
        for w in words:
            s = 0
            for a in w:
                nxt = goto[s].get(a)
                if nxt is None:
                    goto.append(dict())
                    terminal.append(False)
                    nxt = len(goto) - 1
                    goto[s][a] = nxt
                s = nxt
            terminal[s] = True
        fail = [0] * len(goto)
        delta = [None] * len(goto)
        delta[0] = [goto[0].get(a, 0) for a in range(alphabet)]
        order = deque()
        for a in range(alphabet):
            s = goto[0].get(a)
            if s is not None:
                fail[s] = 0
                order.append(s)
        while order:
            s = order.popleft()
            terminal[s] = terminal[s] or terminal[fail[s]]
            delta[s] = [goto[s][a] if a in goto[s] else delta[fail[s]][a] for a in range(alphabet)]
            for a, t in goto[s].items():
                fail[t] = delta[fail[s]][a]
                order.append(t)
        self.delta = delta
        self.terminal = terminal


@dataclass
class Census:
    counts: list[int]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def cumulative(self) -> list[int]:
        out, s = [], 0
        for c in self.counts:
            s += c
            out.append(s)
        return out

    def to_dict(self) -> dict:
        return {"counts": self.counts, "cumulative": self.cumulative(), "total": self.total}


def normal_word_census(gb: GroebnerBasis, max_degree: int | None = None) -> Census:
    """Count words avoiding every leading word, per degree ``0..max_degree``."""
    top = gb.degree_bound if max_degree is None else max_degree
    leads = gb.leading_words
    if () in leads:
        return Census([0] * (top + 1))
    auto = _Automaton(leads, gb.ngens)
    cur = {0: 1}
    counts = [1]
    for _ in range(top):
        nxt: dict = {}
        for s, c in cur.items():
            for t in auto.delta[s]:
                if not auto.terminal[t]:
                    nxt[t] = nxt.get(t, 0) + c
        cur = nxt
        counts.append(sum(cur.values()))
    return Census(counts)


def normal_words(gb: GroebnerBasis, max_degree: int) -> list[tuple]:
    """All normal words up to ``max_degree`` in deglex order."""
    out = [()] if gb.is_normal_word(()) else []
    frontier = list(out)
    for _ in range(max_degree):
        frontier = [w + (a,) for w in frontier for a in range(gb.ngens)
                    if gb.is_normal_word(w + (a,))]
        out.extend(frontier)
    return out


@dataclass
class DimensionVerdict:
    kind: str  # "finite" | "growth_evidence" | "inconclusive"
    dim: int | None = None
    last_degrees: list[int] | None = None
    certified: bool = False

    def describe(self) -> str:
        if self.kind == "finite":
            tag = "certified" if self.certified else "evidence-at-bound"
            return f"finite({self.dim}) [{tag}]"
        if self.kind == "growth_evidence":
            return f"growth_evidence({self.last_degrees}) [evidence-at-bound]"
        return "inconclusive"


def dimension_verdict(gb: GroebnerBasis, census: Census, window: int = 2) -> DimensionVerdict:
    """Finite/growth verdict from a census; never a proof of infinitude.

    A finite verdict needs the top ``window`` degrees to carry no normal
    words and the basis to be complete through its bound; the count is then
    an upper bound on the dimension that is exact when the basis is closed.
    """
    counts = census.counts
    if counts and counts[0] == 0:
        return DimensionVerdict("finite", 0, certified=True)
    complete = gb.complete_through >= gb.degree_bound
    if len(counts) > window and all(c == 0 for c in counts[-window:]) and complete:
        return DimensionVerdict("finite", census.total, certified=gb.closed)
    if all(c > 0 for c in counts):
        return DimensionVerdict("growth_evidence", last_degrees=counts[-window:])
    return DimensionVerdict("inconclusive", last_degrees=counts[-window:])
