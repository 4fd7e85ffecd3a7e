from __future__ import annotations

from collections import defaultdict

CRITERIA = {
    1: "mdr and freeness of L(d,d-1), L(d,d-2), LHAT, monomial families",
    2: "nu = ceil(3(d-1)^2/4) - tau = nu' for generic(3..8), monomial(2)",
    3: "L(7,5), L(9,7) exact nu'; L(8,6) lower bound, strict under any h1",
    4: "nu' = 0 on the free equality cases and the A(2,2,3)+line fixture",
    5: "conjecture3 CONSISTENT on catalog and fixtures; d=9 sextuple fixtures",
    6: "vanishing range, st <= 2d-4, st = 2d-4 for generic(3..6), cuspidal cubic",
    7: "property suites: two-route nu, spectrum sum, table shape, tau, mdr invariance, rank backends",
    8: "batch group check over coordinate variants",
}

_criterion_of: dict[str, int] = {}
_results: dict[int, dict[str, int]] = defaultdict(lambda: {"passed": 0, "failed": 0})


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is not None:
            _criterion_of[item.nodeid] = int(mark.args[0])


def pytest_runtest_logreport(report):
    n = _criterion_of.get(report.nodeid)
    if n is None:
        return
    if report.failed:
        _results[n]["failed"] += 1
    elif report.when == "call" and report.passed:
        _results[n]["passed"] += 1


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in _results:
            continue
        r = _results[n]
        status = "PASS" if r["failed"] == 0 else "FAIL"
        terminalreporter.write_line(
            f"criterion {n}: {status} ({r['passed']} passed, {r['failed']} failed) {CRITERIA[n]}"
        )
