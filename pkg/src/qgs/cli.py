"""Command-line interface: ``qgs <subcommand> ...``.

Exit codes: 0 on completion (whatever the verdicts), 1 on input or usage
errors, 2 when the Groebner step cap is exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import autgroup, gbasis, hopf, reps
from .analysis import classify
from .graph import GraphError, builtin_graph, graph_from_spec
from .ncpoly import PolySyntaxError
from .presentation import (b0_presentation, graph_presentation, presentation_from_json,
                           quantum_perm_presentation)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _load_graph(args):
    if args.graph is None:
        raise UsageError("--graph is required")
    if getattr(args, "no_loops", False) and args.graph.startswith("complete"):
        _, _, n = args.graph.partition(":")
        return builtin_graph("complete", int(n or 1), loops=False)
    return graph_from_spec(args.graph)


def _load_presentation(args):
    """--presentation NAME|FILE, else the graph presentation of --graph."""
    spec = getattr(args, "presentation", None)
    if spec is None:
        return graph_presentation(_load_graph(args))
    if spec == "b0":
        return b0_presentation()
    if spec.startswith("qperm:"):
        return quantum_perm_presentation(int(spec.split(":", 1)[1]))
    if spec in ("d4", "d4_paper"):
        return graph_presentation(builtin_graph("d4_paper"), name="d4_paper")
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"unknown presentation {spec!r} (use b0, qperm:N, d4 or a JSON file)")
    return presentation_from_json(path.read_text(), name=path.stem)


def _emit(args, data: dict, text: str):
    if args.format == "json":
        print(json.dumps(data, indent=1, sort_keys=True))
    else:
        print(text)


def _gb(args, pres):
    return gbasis.compute_gb(pres, args.degree_bound)


# -- subcommands --------------------------------------------------------------------


def cmd_present(args):
    pres = _load_presentation(args)
    data = {**pres.to_dict(), "stats": pres.stats()}
    text = "\n".join([f"# {pres.ngens} generators, {len(pres.relations)} relations"]
                     + [f"{pres.format(r)} = 0" for r in pres.relations])
    _emit(args, data, text)


def cmd_gb(args):
    pres = _load_presentation(args)
    gb = _gb(args, pres)
    if args.output:
        Path(args.output).write_text(gb.to_json())
    data = gb.to_dict()
    s = gb.summary()
    text = "\n".join([f"# {s['elements']} elements, bound {s['degree_bound']}, "
                      f"complete through {s['complete_through']}, closed={s['closed']}"]
                     + data["elements"])
    _emit(args, data, text)


def cmd_nf(args):
    pres = _load_presentation(args)
    gb = _gb(args, pres)
    p = pres.parse(args.poly)
    nf = gb.normal_form(p)
    _emit(args, {"input": pres.format(p), "normal_form": pres.format(nf)}, pres.format(nf))


def cmd_member(args):
    pres = _load_presentation(args)
    gb = _gb(args, pres)
    p = pres.parse(args.poly)
    res = gbasis.ideal_membership(gb, p, certify=args.certificate)
    data = {"input": pres.format(p), "status": res.status, "normal_form": pres.format(res.normal_form)}
    text = res.status
    if res.certificate is not None:
        ok = res.certificate.verify(pres.relations, p)
        data["certificate"] = {"terms": len(res.certificate), "verified": ok}
        text += f" (certificate: {len(res.certificate)} terms, re-verified={ok})"
    elif res.status != "member":
        text += f"; normal form {pres.format(res.normal_form)}"
    _emit(args, data, text)


def cmd_hopf(args):
    pres = _load_presentation(args)
    gb = _gb(args, pres)
    report = hopf.verify_hopf_descent(pres, gb)
    axes = report.by_axiom()
    text = "\n".join([f"hopf descent: {report.verdict}"]
                     + [f"  {k}: {v['verdict']} ({v['verified']}/{v['total']})" for k, v in axes.items()])
    _emit(args, report.to_dict(detail=args.detail), text)


def cmd_aut(args):
    g = _load_graph(args)
    group = autgroup.automorphisms(g, args.vertex_limit)
    flags = ["abelian" if group.abelian else "nonabelian"] + [k for k in ("cyclic", "dihedral")
                                                               if getattr(group, k)]
    text = f"order {group.order}, {', '.join(flags)}"
    if args.format == "text" and args.elements:
        text += "\n" + "\n".join(" ".join(map(str, e)) for e in group.elements)
    _emit(args, group.to_dict(), text)


def cmd_rep_check(args):
    pres = _load_presentation(args)
    rep = reps.MatrixRep.from_json(Path(args.matrices).read_text(), name=Path(args.matrices).stem)
    report = reps.verify_rep(pres, rep)
    data = report.to_dict()
    lines = [f"valid: {report.valid}" + ("" if report.valid else
                                         f" ({len(report.failed_relations)} relations fail, "
                                         f"first: {report.failed_relations[0][0]})")]
    lines.append("star-compatible: " + ("yes" if report.star_compatible
                                        else "no (" + ", ".join(report.star_failures) + ")"))
    if report.valid:
        found = reps.commutator_witness(pres, rep, report)
        if found:
            (a, b), m = found
            data["witness"] = {"pair": [pres.labels[a], pres.labels[b]],
                               "commutator": reps.matrix_to_strings(m)}
            lines.append(f"noncommutativity witness: ({pres.labels[a]}, {pres.labels[b]})")
        else:
            data["witness"] = None
            lines.append("noncommutativity witness: none (all images commute)")
    lines += [f"note: {n}" for n in report.notes]
    _emit(args, data, "\n".join(lines))


def cmd_census(args):
    pres = _load_presentation(args)
    gb = _gb(args, pres)
    census = gbasis.normal_word_census(gb)
    verdict = gbasis.dimension_verdict(gb, census, args.window)
    data = {**census.to_dict(), "verdict": verdict.kind, "dim": verdict.dim,
            "last_degrees": verdict.last_degrees}
    text = f"counts: {census.counts}\ncumulative: {census.cumulative()}\nverdict: {verdict.describe()}"
    _emit(args, data, text)


def cmd_classify(args):
    g = _load_graph(args)
    report = classify(g, args.degree_bound, args.window, timings=not args.no_timings, jobs=args.jobs)
    _emit(args, report.to_dict(), report.text())


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qgs", description="Quantum automorphism algebras of finite graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, graph=True, presentation=True, bound=True):
        if graph:
            p.add_argument("--graph", help="graph file (text or JSON) or family:n, e.g. cycle:5, d4_paper")
            p.add_argument("--no-loops", action="store_true", help="complete graph without loops")
        if presentation:
            p.add_argument("--presentation", help="b0, qperm:N, d4, or a presentation JSON file")
        if bound:
            p.add_argument("--degree-bound", type=int, default=gbasis.DEFAULT_BOUND)
        p.add_argument("--format", choices=("json", "text"), default="text")
        return p

    common(sub.add_parser("present", help="print a presentation"), bound=False).set_defaults(func=cmd_present)
    p = common(sub.add_parser("gb", help="compute a truncated Groebner basis"))
    p.add_argument("--output", help="write the basis JSON here")
    p.set_defaults(func=cmd_gb)
    p = common(sub.add_parser("nf", help="normal form of a polynomial"))
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_nf)
    p = common(sub.add_parser("member", help="ideal membership"))
    p.add_argument("--poly", required=True)
    p.add_argument("--certificate", action="store_true", help="build and re-verify a cofactor certificate")
    p.set_defaults(func=cmd_member)
    p = common(sub.add_parser("hopf-verify", help="check that the Hopf maps pass to the quotient"))
    p.add_argument("--detail", action="store_true", help="list every check in JSON output")
    p.set_defaults(func=cmd_hopf)
    p = common(sub.add_parser("aut", help="classical automorphism group"), presentation=False, bound=False)
    p.add_argument("--vertex-limit", type=int, default=autgroup.DEFAULT_VERTEX_LIMIT)
    p.add_argument("--elements", action="store_true", help="list the group elements")
    p.set_defaults(func=cmd_aut)
    p = common(sub.add_parser("rep-check", help="verify a matrix representation"), bound=False)
    p.add_argument("--matrices", required=True, help="MatrixRep JSON file")
    p.set_defaults(func=cmd_rep_check)
    p = common(sub.add_parser("census", help="normal-word census and dimension verdict"))
    p.add_argument("--window", type=int, default=2)
    p.set_defaults(func=cmd_census)
    p = common(sub.add_parser("classify", help="full analysis of a graph"), presentation=False)
    p.add_argument("--window", type=int, default=2)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--no-timings", action="store_true", help="omit timings (byte-identical output)")
    p.set_defaults(func=cmd_classify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(f"qgs: error: {exc}", file=sys.stderr)
        return 1
    except (GraphError, PolySyntaxError, reps.InvalidRepresentation, gbasis.DegreeBoundError,
            gbasis.BoundTooSmall, hopf.UnsupportedFamily, hopf.InsufficientBound,
            json.JSONDecodeError, OSError, KeyError, ValueError) as exc:
        print(f"qgs: error: {exc}", file=sys.stderr)
        return 1
    except gbasis.ResourceLimitExceeded as exc:
        print(f"qgs: resource limit: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
