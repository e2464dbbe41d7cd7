from __future__ import annotations

import jsonschema
import pytest

from qgs.analysis import classify, hopf_verified, registered_witnesses, report_schema
from qgs.graph import builtin_graph
from qgs.presentation import graph_presentation

SCHEMA = report_schema()


def check(report):
    jsonschema.validate(report.to_dict(), SCHEMA)
    return report.to_dict()


def test_d4_report():
    d = check(classify(builtin_graph("d4_paper"), timings=False))
    assert d["automorphisms"]["order"] == 8 and d["automorphisms"]["dihedral"]
    assert not d["automorphisms"]["abelian"]
    c = d["commutativity"]
    assert c["verdict"] == "noncommutative" and c["witness"] == ["X[1,1]", "X[3,3]"]
    assert c["provenance"] == "certified" and c["certified_by"] == "representation:pi o psi"
    assert d["dimension"]["verdict"] == "growth_evidence"
    assert d["dimension"]["provenance"] == "evidence-at-bound"
    assert d["hopf"]["verdict"] == "verified"
    assert d["edge_magic_unitary"]["verified"]
    assert d["spectrum"] == {"exhaustive": True, "permutations": 24, "characters_valid": 8,
                             "matches_automorphisms": True}
    [w] = d["witnesses"]
    assert w["valid"] and not w["star_compatible"]


def test_d4_report_bound_8():
    d = check(classify(builtin_graph("d4_paper"), degree_bound=8, timings=False))
    assert d["dimension"]["verdict"] == "growth_evidence"
    assert all(c > 0 for c in d["census"]["counts"])


def test_complete3_report():
    d = check(classify(builtin_graph("complete", 3), timings=False))
    assert d["commutativity"]["verdict"] == "commutative"
    assert d["commutativity"]["provenance"] == "certified"
    assert (d["dimension"]["verdict"], d["dimension"]["dim"]) == ("finite", 6)
    assert d["dimension"]["provenance"] == "certified"
    assert d["automorphisms"]["order"] == 6 and not d["automorphisms"]["abelian"]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_cycle_report(n):
    d = check(classify(builtin_graph("cycle", n), timings=False))
    assert d["commutativity"]["verdict"] == "commutative"
    assert (d["dimension"]["verdict"], d["dimension"]["dim"]) == ("finite", n)
    assert d["automorphisms"]["cyclic"] and d["automorphisms"]["order"] == n
    assert hopf_verified(classify(builtin_graph("cycle", n), timings=False))


def test_loops_report():
    d = check(classify(builtin_graph("loops", 3), timings=False))
    # the loops graph gives the quantum permutation group, commutative for n = 3
    assert d["commutativity"]["verdict"] == "commutative"
    assert d["dimension"]["dim"] == 6


def test_empty4_report():
    d = check(classify(builtin_graph("empty", 4), timings=False))
    c = d["commutativity"]
    assert c["verdict"] == "noncommutative" and c["witness"] == ["X[1,1]", "X[3,3]"]
    assert c["certified_by"] == "representation:x4_witness"
    assert d["dimension"]["verdict"] == "growth_evidence"
    assert d["automorphisms"]["order"] == 24
    [w] = d["witnesses"]
    assert w["commutator"] == [["0", "1/2"], ["-1/2", "0"]]


def test_witness_registry():
    assert registered_witnesses(builtin_graph("cycle", 4), graph_presentation(builtin_graph("cycle", 4))) == []
    d4 = builtin_graph("d4_paper")
    [rep] = registered_witnesses(d4, graph_presentation(d4))
    assert rep.name == "pi o psi"


def test_text_output():
    text = classify(builtin_graph("d4_paper"), timings=False).text()
    assert "noncommutative, witness (X[1,1], X[3,3])" in text
    assert "order 8 (nonabelian, dihedral)" in text
    assert "growth_evidence" in text and "evidence-at-bound" in text
    assert "timings" not in text


def test_jobs_matches_serial():
    g = builtin_graph("cycle", 4)
    assert classify(g, timings=False, jobs=2).to_dict() == classify(g, timings=False).to_dict()
