"""Acceptance bookkeeping: every test tagged ``@pytest.mark.criterion(k)`` feeds
the PASS/FAIL line of criterion k printed at the end of the run."""

from __future__ import annotations

import pytest

CRITERIA = {
    1: "structure validity: d^2 = 0, integrability flags, nilpotent filtration",
    2: "fam5 astheno-Kaehler biconditional and dd^c F^3 bracket",
    3: "fam5 restricted family: F^2 and F^3 pluriclosed iff the four-equation system",
    4: "balanced plus astheno-Kaehler instance",
    5: "blowup ingredients and the y3 obstruction",
    6: "almost complex family has no 2-pluriclosed form",
    7: "fps6 SKT iff |A|^2+|D|^2+|E|^2+2Re(conj(B)C) = 0, for every metric",
    8: "ddbar vanishes on fps6 and gen_n; random metrics are BC-formal",
    9: "KT x KT Aeppli bases and nonzero triple product",
    10: "Inoue x Inoue Aeppli counts and nonzero triple product",
    11: "Inoue x KT Aeppli bases and nonzero triple product",
    12: "fam4 SKT, Aeppli bases and nonzero triple product",
    13: "Hodge theory: star, adjoints, harmonic = quotient, conjugation, duality",
    14: "certificate soundness under single-coefficient mutation",
}

_outcomes: dict[int, dict[str, str]] = {k: {} for k in CRITERIA}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): test contributes to acceptance criterion k")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    k = marker.args[0]
    prev = _outcomes[k].get(item.nodeid)
    if rep.failed:
        _outcomes[k][item.nodeid] = "failed"
    elif rep.skipped and prev is None:
        _outcomes[k][item.nodeid] = "skipped"
    elif rep.when == "call" and rep.passed and prev is None:
        _outcomes[k][item.nodeid] = "passed"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not any(_outcomes.values()):
        return
    tr = terminalreporter
    tr.section("acceptance criteria (exact arithmetic)")
    for k, label in CRITERIA.items():
        results = _outcomes[k]
        if not results:
            tr.write_line(f"criterion {k:2d}  NOT RUN  {label}")
            continue
        ok = all(v == "passed" for v in results.values())
        tr.write_line(f"criterion {k:2d}  {'PASS' if ok else 'FAIL'}     {label}")
        if not ok:
            for nodeid, v in results.items():
                if v != "passed":
                    tr.write_line(f"               {v}: {nodeid.split('::', 1)[-1]}")
