import pytest

CRITERIA = {
    1: "rank table of the abelian enveloping algebras",
    2: "total dimensions for n = 1..5",
    3: "leading words of the completed basis",
    4: "complex algebra has dimension 9",
    5: "quaternion algebra has dimension 29",
    6: "octonion algebra: 65 over Q and F3, 113 over F2",
    7: "identity checker verdicts",
    8: "Dorofeev witness and solvability",
    9: "derivatives of bracketed powers and Leibniz rule",
    10: "cross-variety sanity",
    11: "normal words agree with brute-force row reduction",
    12: "thread count does not change JSON output",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if rep.when == "call" or rep.failed or rep.skipped:
        _outcomes.setdefault(n, []).append(rep.passed and not rep.skipped)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        if n not in _outcomes:
            continue
        res = _outcomes[n]
        ok = all(res)
        tr.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {CRITERIA[n]} "
                      f"({sum(res)}/{len(res)} checks)")
