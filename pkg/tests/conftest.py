from __future__ import annotations

import re

_results: dict[int, list] = {}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)", report.nodeid)
    if not m:
        return
    if report.when == "call" or report.outcome != "passed":
        entry = _results.setdefault(int(m.group(1)), [True, 0.0])
        entry[0] = entry[0] and report.outcome == "passed"
        entry[1] += report.duration


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    from test_acceptance import CRITERIA
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(CRITERIA):
        if k not in _results:
            tr.write_line(f"criterion {k:2d}  NOT RUN  {CRITERIA[k]}")
            continue
        ok, secs = _results[k]
        tr.write_line(f"criterion {k:2d}  {'PASS' if ok else 'FAIL'}  {secs:7.2f}s  {CRITERIA[k]}")
