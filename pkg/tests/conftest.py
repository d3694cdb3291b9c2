"""Per-criterion summary for the acceptance tests.

Tests marked ``@pytest.mark.criterion(k)`` are grouped by k; after the run
one PASS/FAIL line is printed per criterion, with the largest deviation any
of its tests recorded via ``record_property("deviation", x)``.
"""

from collections import defaultdict

CRITERIA = {
    1: "critical angle counts, critical angles and volumes at alpha = 0 (abs 1e-4)",
    2: "cone and cover volumes at 2pi/k, k = 3..10, and the Euclidean flag (abs 1e-4)",
    3: "matrix oracle against P_2n, |n| <= 9, 100 random (alpha, rho) each (rel 1e-9)",
    4: "A-polynomial roots against holonomy images, |n| <= 5, three angles (1e-7)",
    5: "analytic anchors: exact discriminant zero, P_2 roots at B = 0, |L| = 1 at alpha0",
    6: "grid doubling, monotonicity, holonomy identity, SWc and longitude identities",
}

_outcomes = defaultdict(list)
_deviation = defaultdict(float)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number k")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args[0]))


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    k = props.get("criterion")
    if k is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _outcomes[k].append((report.nodeid, report.outcome))
    if "deviation" in props:
        _deviation[k] = max(_deviation[k], float(props["deviation"]))


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(CRITERIA):
        res = _outcomes.get(k)
        if not res:
            tr.write_line(f"criterion {k}: NOT RUN  {CRITERIA[k]}")
            continue
        failed = [nid for nid, outcome in res if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        dev = f"  worst deviation {_deviation[k]:.2e}" if k in _deviation else ""
        tr.write_line(f"criterion {k}: {status} ({len(res) - len(failed)}/{len(res)} checks){dev}  {CRITERIA[k]}")
        for nid in failed:
            tr.write_line(f"    failed: {nid}")
