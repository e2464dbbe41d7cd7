"""Classical automorphism groups of finite directed graphs."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .graph import Graph

DEFAULT_VERTEX_LIMIT = 12

Permutation = tuple  # images of 1..n: perm[i-1] == sigma(i)


def compose(s: Permutation, t: Permutation) -> Permutation:
    """``s o t``: apply ``t`` first."""
    return tuple(s[t[i] - 1] for i in range(len(t)))


def inverse(s: Permutation) -> Permutation:
    out = [0] * len(s)
    for i, v in enumerate(s, start=1):
        out[v - 1] = i
    return tuple(out)


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def element_order(s: Permutation) -> int:
    e = identity(len(s))
    k, p = 1, s
    while p != e:
        p = compose(s, p)
        k += 1
    return k


def preserves_edges(g: Graph, s: Permutation) -> bool:
    n = g.n_vertices
    return all(g.has_edge(i, k) == g.has_edge(s[i - 1], s[k - 1])
               for i in range(1, n + 1) for k in range(1, n + 1))


@dataclass(frozen=True)
class AutGroup:
    elements: tuple[Permutation, ...]
    abelian: bool
    cyclic: bool
    dihedral: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    def to_dict(self) -> dict:
        return {"elements": [list(e) for e in self.elements], "order": self.order,
                "abelian": self.abelian, "cyclic": self.cyclic, "dihedral": self.dihedral}

    def summary(self) -> dict:
        d = self.to_dict()
        del d["elements"]
        return d


def _profile(g: Graph, v: int) -> tuple:
    out_deg = sum(1 for s, _ in g.edges if s == v)
    in_deg = sum(1 for _, t in g.edges if t == v)
    return out_deg, in_deg, g.has_edge(v, v)


def automorphism_list(g: Graph, limit: int = DEFAULT_VERTEX_LIMIT) -> list[Permutation]:
    """Edge-preserving permutations, sorted by image tuple.

    Plain backtracking; candidates for each vertex are restricted to
    vertices with the same (out-degree, in-degree, loop) profile.
    """
    n = g.n_vertices
    if n > limit:
        raise ValueError(f"{n} vertices exceeds the automorphism search limit {limit}")
    profiles = [_profile(g, v) for v in range(1, n + 1)]
    image = [0] * (n + 1)
    used = [False] * (n + 1)
    found: list[Permutation] = []

    def consistent(v: int, w: int) -> bool:
        if g.has_edge(v, v) != g.has_edge(w, w):
            return False
        for u in range(1, v):
            su = image[u]
            if g.has_edge(u, v) != g.has_edge(su, w) or g.has_edge(v, u) != g.has_edge(w, su):
                return False
        return True

    def extend(v: int):
        if v > n:
            found.append(tuple(image[1:]))
            return
        for w in range(1, n + 1):
            if not used[w] and profiles[w - 1] == profiles[v - 1] and consistent(v, w):
                image[v], used[w] = w, True
                extend(v + 1)
                used[w] = False
        image[v] = 0

    extend(1)
    return sorted(found)


def group_invariants(elements) -> tuple[bool, bool, bool]:
    """(abelian, cyclic, dihedral) for a finite permutation group."""
    elements = list(elements)
    size = len(elements)
    abelian = all(compose(a, b) == compose(b, a) for a, b in itertools.combinations(elements, 2))
    orders = {e: element_order(e) for e in elements}
    cyclic = any(o == size for o in orders.values())
    dihedral = False
    if size >= 4 and size % 2 == 0:
        k = size // 2
        for r in (e for e in elements if orders[e] == k):
            rotations = set()
            p = identity(len(r))
            for _ in range(k):
                rotations.add(p)
                p = compose(r, p)
            r_inv = inverse(r)
            if any(orders[s] == 2 and s not in rotations and compose(compose(s, r), s) == r_inv
                   for s in elements):
                dihedral = True
                break
    return abelian, cyclic, dihedral


def automorphisms(g: Graph, limit: int = DEFAULT_VERTEX_LIMIT) -> AutGroup:
    elements = automorphism_list(g, limit)
    return AutGroup(tuple(elements), *group_invariants(elements))


def all_permutations(n: int) -> list[Permutation]:
    return list(itertools.permutations(range(1, n + 1)))
