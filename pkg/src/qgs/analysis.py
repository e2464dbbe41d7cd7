"""The classify pipeline: one graph in, one versioned report out."""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import autgroup, gbasis, hopf, reps
from .graph import Graph, builtin_graph
from .presentation import graph_presentation, psi_map
from .verdict import CERTIFIED, EVIDENCE, UNDECIDED, VERIFIED

SCHEMA_VERSION = "1.0"

# exhaustive spectrum check runs over n! permutations
SPECTRUM_MAX_VERTICES = 7


def _d4_witness(pres) -> reps.MatrixRep:
    # pi on B0, transported to the D4 graph algebra through psi
    return reps.pullback(reps.paper_pi_rep(), psi_map(d4=pres))


def _x4_witness(pres) -> reps.MatrixRep:
    rep = reps.x4_witness_rep(letter="X")
    rep.name = "x4_witness"
    return rep


WITNESS_REGISTRY = {
    builtin_graph("d4_paper").canonical_hash(): ("pi o psi", _d4_witness),
    builtin_graph("empty", 4).canonical_hash(): ("x4_witness", _x4_witness),
}


def registered_witnesses(g: Graph, pres) -> list[reps.MatrixRep]:
    entry = WITNESS_REGISTRY.get(g.canonical_hash())
    if entry is None:
        return []
    name, build = entry
    rep = build(pres)
    rep.name = name
    return [rep]


def spectrum_check(g: Graph, pres, group: autgroup.AutGroup) -> dict:
    """Which permutations give valid characters; must be exactly Aut(g)."""
    n = g.n_vertices
    if n > SPECTRUM_MAX_VERTICES:
        return {"exhaustive": False, "characters_valid": sum(
            reps.verify_rep(pres, reps.character_from_automorphism(g, s)).valid
            for s in group.elements), "matches_automorphisms": None}
    valid = [s for s in autgroup.all_permutations(n)
             if reps.verify_rep(pres, reps.character_from_automorphism(g, s)).valid]
    return {"exhaustive": True, "permutations": math.factorial(n), "characters_valid": len(valid),
            "matches_automorphisms": sorted(valid) == list(group.elements)}


def _aut_stage(g: Graph, limit: int):
    group = autgroup.automorphisms(g, limit)
    pres = graph_presentation(g)
    return group, spectrum_check(g, pres, group)


def _commutativity_block(comm: gbasis.Commutativity, labels) -> dict:
    if comm.commutative:
        return {"verdict": "commutative", "upto": comm.upto,
                "provenance": CERTIFIED if comm.certified else EVIDENCE,
                "certified_by": comm.certified_by}
    a, b = comm.witness
    return {"verdict": "noncommutative", "witness": [labels[a], labels[b]],
            "provenance": CERTIFIED if comm.certified else UNDECIDED,
            "certified_by": comm.certified_by}


def _dimension_block(dim: gbasis.DimensionVerdict, group_order: int | None) -> dict:
    out = {"verdict": dim.kind, "dim": dim.dim, "last_degrees": dim.last_degrees}
    if dim.kind == "finite":
        # normal words span, so the count bounds the dimension from above;
        # distinct characters are linearly independent, bounding it from below
        lower_ok = group_order is not None and group_order == dim.dim
        out["provenance"] = CERTIFIED if (dim.certified or lower_ok) else EVIDENCE
        out["character_lower_bound"] = group_order
    elif dim.kind == "growth_evidence":
        out["provenance"] = EVIDENCE
        out["note"] = "positive normal-word counts up to the bound; evidence, not proof, of infinite dimension"
    else:
        out["provenance"] = UNDECIDED
    return out


@dataclass
class ClassifyReport:
    data: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return self.data

    def text(self) -> str:
        d = self.data
        g = d["graph"]
        lines = [f"graph: {g['vertices']} vertices, {g['n_edges']} edges {g['edges']}",
                 f"presentation: {d['presentation']['generators']} generators, "
                 f"{d['presentation']['relations']} relations",
                 f"groebner basis: {d['groebner']['elements']} elements, bound {d['groebner']['degree_bound']}, "
                 f"complete through {d['groebner']['complete_through']}, closed={d['groebner']['closed']}"]
        c = d["commutativity"]
        if c["verdict"] == "commutative":
            lines.append(f"commutativity: commutative up to degree {c['upto']} [{c['provenance']}]")
        else:
            lines.append(f"commutativity: noncommutative, witness ({', '.join(c['witness'])}) "
                         f"[{c['provenance']}{', ' + c['certified_by'] if c['certified_by'] else ''}]")
        dm = d["dimension"]
        if dm["verdict"] == "finite":
            lines.append(f"dimension: finite({dm['dim']}) [{dm['provenance']}]")
        else:
            lines.append(f"dimension: {dm['verdict']} {dm['last_degrees']} [{dm['provenance']}]")
        lines.append(f"census: {d['census']['counts']}")
        a = d["automorphisms"]
        flags = ["abelian" if a["abelian"] else "nonabelian"] + [k for k in ("cyclic", "dihedral") if a[k]]
        lines.append(f"automorphism group: order {a['order']} ({', '.join(flags)})")
        s = d["spectrum"]
        lines.append(f"spectrum: {s['characters_valid']} valid characters"
                     + (f" of {s['permutations']} permutations" if s.get("exhaustive") else ""))
        lines.append(f"hopf descent: {d['hopf']['verdict']}")
        lines.append(f"edge magic unitary: {'verified' if d['edge_magic_unitary']['verified'] else 'not verified'}")
        for w in d["witnesses"]:
            pair = f", non-commuting pair ({', '.join(w['pair'])})" if w["pair"] else ""
            lines.append(f"witness {w['name']}: valid={w['valid']}, star-compatible={w['star_compatible']}{pair}")
        if "timings" in d:
            lines.append("timings: " + ", ".join(f"{k} {v:.3f}s" for k, v in d["timings"].items()))
        return "\n".join(lines)


def classify(g: Graph, degree_bound: int = gbasis.DEFAULT_BOUND, window: int = 2,
             timings: bool = True, jobs: int = 1, step_cap: int | None = None,
             vertex_limit: int = autgroup.DEFAULT_VERTEX_LIMIT) -> ClassifyReport:
    clock: dict[str, float] = {}

    def tick(name, t0):
        clock[name] = time.perf_counter() - t0

    pool = ProcessPoolExecutor(max_workers=1) if jobs > 1 else None
    try:
        aut_future = pool.submit(_aut_stage, g, vertex_limit) if pool else None

        t0 = time.perf_counter()
        pres = graph_presentation(g)
        tick("presentation", t0)

        t0 = time.perf_counter()
        gb = gbasis.compute_gb(pres, degree_bound, step_cap)
        tick("groebner", t0)

        witnesses = registered_witnesses(g, pres)
        t0 = time.perf_counter()
        comm = gbasis.commutativity_check(gb, reps=witnesses)
        tick("commutativity", t0)

        t0 = time.perf_counter()
        census = gbasis.normal_word_census(gb)
        tick("census", t0)

        t0 = time.perf_counter()
        if aut_future is not None:
            group, spectrum = aut_future.result()
        else:
            group, spectrum = _aut_stage(g, vertex_limit)
        tick("automorphisms", t0)
    finally:
        if pool:
            pool.shutdown()

    dim = gbasis.dimension_verdict(gb, census, window)

    t0 = time.perf_counter()
    hopf_report = hopf.verify_hopf_descent(pres, gb)
    tick("hopf", t0)

    t0 = time.perf_counter()
    edge_report = reps.edge_magic_unitary_check(g, gb) if gb.degree_bound >= 4 else None
    tick("edge_magic_unitary", t0)

    wit_blocks = []
    for rep in witnesses:
        rr = reps.verify_rep(pres, rep)
        pair = comm_matrix = None
        if rr.valid:
            found = reps.commutator_witness(pres, rep, rr)
            if found:
                (a, b), m = found
                pair = [pres.labels[a], pres.labels[b]]
                comm_matrix = reps.matrix_to_strings(m)
        wit_blocks.append({"name": rep.name, "dim": rep.dim, "valid": rr.valid,
                           "star_compatible": rr.star_compatible, "star_failures": rr.star_failures,
                           "pair": pair, "commutator": comm_matrix, "notes": rr.notes})

    data = {
        "schema_version": SCHEMA_VERSION,
        "graph": g.summary(),
        "presentation": pres.stats(),
        "groebner": {**gb.summary(), "steps": gb.steps,
                     "obstructions_processed": gb.obstructions_processed},
        "commutativity": _commutativity_block(comm, pres.labels),
        "dimension": _dimension_block(dim, group.order),
        "census": census.to_dict(),
        "automorphisms": group.to_dict(),
        "spectrum": spectrum,
        "hopf": hopf_report.to_dict(detail=False),
        "edge_magic_unitary": (edge_report.to_dict() if edge_report is not None
                               else {"verified": False, "families": {}, "checks": 0}),
        "witnesses": wit_blocks,
    }
    if timings:
        data["timings"] = {k: round(v, 6) for k, v in clock.items()}
    return ClassifyReport(data)


def hopf_verified(report: ClassifyReport) -> bool:
    return report.data["hopf"]["verdict"] == VERIFIED


def report_schema() -> dict:
    import json
    from importlib import resources
    return json.loads(resources.files("qgs").joinpath("schemas/classify_report.json").read_text())
