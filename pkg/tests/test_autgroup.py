from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given, strategies as st

from qgs.autgroup import (all_permutations, automorphism_list, automorphisms, compose, element_order,
                          group_invariants, identity, inverse, preserves_edges)
from qgs.graph import Graph, builtin_graph
from strategies import PROPERTY


def brute_force_aut(g):
    n = g.n_vertices
    edges = set(g.edges)
    return sorted(s for s in itertools.permutations(range(1, n + 1))
                  if {(s[a - 1], s[b - 1]) for a, b in edges} == edges)


def test_d4_group():
    G = automorphisms(builtin_graph("d4_paper"))
    assert G.order == 8
    assert not G.abelian and G.dihedral and not G.cyclic


def test_complete3():
    G = automorphisms(builtin_graph("complete", 3))
    assert G.order == 6 and not G.abelian and G.dihedral


def test_cycle4_generated_by_rotation():
    G = automorphisms(builtin_graph("cycle", 4))
    rot = (2, 3, 4, 1)
    assert G.order == 4 and G.cyclic and G.abelian
    powers = {identity(4)}
    p = rot
    while p != identity(4):
        powers.add(p)
        p = compose(rot, p)
    assert powers == set(G.elements)


def test_cycle5_and_empty2():
    G = automorphisms(builtin_graph("cycle", 5))
    assert G.order == 5 and G.cyclic and G.abelian and not G.dihedral
    E = automorphisms(builtin_graph("empty", 2))
    assert E.order == 2 and E.abelian and E.cyclic


def test_klein_four_is_dihedral():
    G = automorphisms(Graph(4, ((1, 2), (2, 1), (3, 4), (4, 3), (1, 1), (2, 2), (3, 3), (4, 4))))
    # the undirected matching with loops has the D4 group; drop the swap of pairs
    g = Graph(4, ((1, 2), (2, 1), (3, 4), (4, 3), (1, 1), (2, 2)))
    V = automorphisms(g)
    assert V.order == 4 and V.abelian and not V.cyclic and V.dihedral
    assert G.order == 8


@pytest.mark.parametrize("n", range(1, 7))
def test_empty_graph_full_symmetric(n):
    assert automorphisms(builtin_graph("empty", n)).order == math.factorial(n)


def test_vertex_limit():
    with pytest.raises(ValueError):
        automorphisms(builtin_graph("empty", 5), limit=4)


def test_permutation_helpers():
    s, t = (2, 3, 1), (2, 1, 3)
    assert compose(s, t) == (3, 2, 1)
    assert compose(s, inverse(s)) == identity(3)
    assert element_order(s) == 3 and element_order(t) == 2
    assert len(all_permutations(4)) == 24


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 5))
    pairs = [(s, t) for s in range(1, n + 1) for t in range(1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph(n, tuple(edges))


@PROPERTY
@given(graphs())
def test_matches_brute_force(g):
    found = automorphism_list(g)
    assert found == brute_force_aut(g)
    for s in found:
        assert preserves_edges(g, s)


@PROPERTY
@given(graphs())
def test_is_a_group(g):
    G = automorphisms(g)
    els = set(G.elements)
    assert identity(g.n_vertices) in els
    for a in G.elements:
        assert inverse(a) in els
        for b in G.elements:
            assert compose(a, b) in els
    abelian, cyclic, dihedral = group_invariants(G.elements)
    if cyclic:
        assert abelian
