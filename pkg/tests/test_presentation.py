from __future__ import annotations

import json

import pytest
from hypothesis import given

from qgs.gbasis import compute_gb
from qgs.graph import builtin_graph
from qgs.ncpoly import GeneratorMismatch, NcPoly, involution
from qgs.presentation import (GeneratorMap, apply_generator_map, b0_presentation, d4_presentation,
                              graph_presentation, graph_relation_families, identity_map, map_from_labels,
                              phi_map, presentation_from_json, projection_map, psi_map,
                              quantum_perm_presentation, star_ideal_check, verify_generator_map)
from qgs.reps import _bind, counit_character, is_zero, paper_pi_rep
from qgs.verdict import FAILED, VERIFIED
from strategies import PROPERTY, polys


def _brute_force_magic_count(n):
    # product relations x_ij x_ik and x_ji x_ki over all i, j, k, plus 2n sums
    return sum(1 for _ in range(2) for i in range(n) for j in range(n) for k in range(n)) + 2 * n


def test_qperm_counts():
    p = quantum_perm_presentation(2)
    assert p.raw_relation_count == 20 == _brute_force_magic_count(2)
    assert p.generator_count == 4
    assert p.labels == ("x[1,1]", "x[1,2]", "x[2,1]", "x[2,2]")


def test_qperm_one():
    p = quantum_perm_presentation(1)
    x = p.gen("x[1,1]")
    one = NcPoly.one(1)
    assert set(p.relations) == {x * x - x, x - one}


def test_qperm_rejects_zero():
    with pytest.raises(ValueError):
        quantum_perm_presentation(0)


@pytest.mark.parametrize("n", range(1, 6))
def test_empty_graph_is_qperm(n):
    g = graph_presentation(builtin_graph("empty", n))
    q = quantum_perm_presentation(n)
    assert [str(p.format(r)).replace("X", "x") for p, r in ((g, r) for r in g.relations)] == \
        [q.format(r) for r in q.relations]
    assert g.same_relations(q)


def test_relations_are_monic_sorted_unique():
    for pres in (d4_presentation(), b0_presentation(), quantum_perm_presentation(3)):
        rels = pres.relations
        assert len(set(rels)) == len(rels)
        assert all(r.leading_coeff() == 1 for r in rels)
        assert list(rels) == sorted(rels, key=lambda r: r.sort_key())


def test_d4_contains_cross_term():
    pres = d4_presentation()
    assert pres.parse("X[1,1]*X[2,3]") in pres.relations
    assert pres.parse("X[2,3]*X[1,1]") in pres.relations


def test_complete_graph_has_no_non_edge_family():
    for n in (1, 2, 3):
        assert graph_relation_families(builtin_graph("complete", n))["non_edge"] == []


def test_empty_graph_only_magic():
    fam = graph_relation_families(builtin_graph("empty", 3))
    assert fam["non_edge"] == fam["commute"] == fam["edge_sum"] == []


def test_commute_family_corrected_form():
    # for d4, edges (1,2) and (3,4): X[1,3] X[2,4] - X[2,4] X[1,3]
    pres = d4_presentation()
    r = pres.parse("X[1,3]*X[2,4] - X[2,4]*X[1,3]")
    assert r.monic() in pres.relations or (-r).monic() in pres.relations


def test_b0_relations():
    pres = b0_presentation()
    rels = set(pres.relations)
    for text in ("y1*y2", "y7*y8", "y8*y7", "y1*y1 - y1"):
        assert pres.parse(text) in rels
    s = pres.parse("y1 + y2 + y3 + y4 - 1")
    assert s in rels
    assert pres.parse("y1*y7") not in rels
    assert len(pres.relations) == 8 + 40 + 4


def test_json_round_trip():
    pres = d4_presentation()
    data = json.loads(pres.to_json())
    assert set(data) == {"generators", "relations"}
    back = presentation_from_json(pres.to_json())
    assert back.labels == pres.labels
    assert back.relations == pres.relations


def test_generator_map_examples():
    b0, d4 = b0_presentation(), d4_presentation()
    psi = psi_map(d4, b0)
    phi = phi_map(b0, d4)
    assert psi(d4.parse("X[1,1]*X[2,2]")) == b0.parse("y1*y1")
    assert phi(b0.parse("y7")) == d4.parse("X[3,3]")
    p = d4.parse("2*X[1,2]*X[3,4] - 1/3")
    assert apply_generator_map(identity_map(d4), p) == p


def test_map_mismatch():
    b0, d4 = b0_presentation(), d4_presentation()
    with pytest.raises(GeneratorMismatch):
        psi_map(d4, b0)(b0.parse("y1"))


@pytest.fixture(scope="module")
def bases():
    b0, d4 = b0_presentation(), d4_presentation()
    return b0, d4, compute_gb(b0, 6), compute_gb(d4, 6)


def test_phi_psi_isomorphism(bases):
    b0, d4, gb_b0, gb_d4 = bases
    rep = verify_generator_map(phi_map(b0, d4), gb_d4, gb_b0, check_inverse=psi_map(d4, b0))
    assert rep.verified
    assert len(rep.well_defined) == len(b0.relations)
    assert len(rep.inverse_checks) == 8 + 16
    rep2 = verify_generator_map(psi_map(d4, b0), gb_b0, gb_d4, check_inverse=phi_map(b0, d4))
    assert rep2.verified


def test_projection_well_defined():
    for g in (builtin_graph("d4_paper"), builtin_graph("cycle", 3), builtin_graph("complete", 2)):
        target = graph_presentation(g)
        q = quantum_perm_presentation(g.n_vertices)
        rep = verify_generator_map(projection_map(q, target), compute_gb(target, 4))
        assert rep.verified


def test_broken_map_fails_with_witness(bases):
    b0, d4, gb_b0, gb_d4 = bases
    psi = psi_map(d4, b0)
    images = list(phi_map(b0, d4).images)
    images[0] = d4.parse("X[1,2]")
    bad = GeneratorMap(b0, d4, tuple(images), name="bad")
    rep = verify_generator_map(bad, gb_d4, gb_b0, check_inverse=psi)
    failures = rep.failures()
    assert failures and all(c.verdict == FAILED for c in failures)
    assert failures[0].witness
    assert not rep.verified
    # independent oracle: the counit character of d4 does not kill bad(y1 + y2 + y3 + y4 - 1)
    ev = _bind(counit_character(d4), d4)
    assert not is_zero(ev(bad(b0.parse("y1 + y2 + y3 + y4 - 1"))))
    assert any(c.name == "bad(y4 + y3 + y2 + y1 - 1)" for c in failures)


def test_broken_map_separated_by_representation(bases):
    b0, d4, gb_b0, gb_d4 = bases
    # drop closure information: without it only a separating representation can certify failure
    from dataclasses import replace
    open_gb = replace(gb_b0, closed=False)
    images = {lab: lab for lab in b0.labels}
    images.update(y1="y7", y7="y1")
    bad = map_from_labels(b0, b0, images, name="swap17")
    pi = paper_pi_rep()
    rep = verify_generator_map(bad, open_gb, source_reps=(), target_reps=(pi,))
    verdicts = {c.verdict for c in rep.failures()}
    # y7 + y2 + y3 + y4 - 1 is not killed by pi
    assert FAILED in verdicts
    assert not rep.verified


@pytest.mark.parametrize("make", [
    lambda: quantum_perm_presentation(3),
    lambda: b0_presentation(),
    lambda: d4_presentation(),
    lambda: graph_presentation(builtin_graph("cycle", 4)),
    lambda: graph_presentation(builtin_graph("complete", 2)),
])
def test_star_ideal(make):
    pres = make()
    gb = compute_gb(pres, 4)
    checks = star_ideal_check(pres, gb)
    assert checks and all(c.verdict == VERIFIED for c in checks)


def test_star_reversal_is_exact_for_symmetric_relations():
    pres = b0_presentation()
    assert all(involution(r) in pres.relations for r in pres.relations)


_B0 = b0_presentation()
_D4 = d4_presentation()
_PHI = phi_map(_B0, _D4)


@PROPERTY
@given(polys(8, max_terms=3, max_len=2), polys(8, max_terms=3, max_len=2))
def test_map_multiplicative_unital(a, b):
    assert _PHI(a * b) == _PHI(a) * _PHI(b)
    assert _PHI(a + b) == _PHI(a) + _PHI(b)
    assert _PHI(NcPoly.one(8)) == NcPoly.one(16)
