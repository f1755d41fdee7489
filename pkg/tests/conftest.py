import pytest


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the n=512/1024 cases")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


# acceptance bookkeeping: tests marked ``criterion(k)`` are folded into one
# PASS/FAIL line per criterion in the terminal summary
_criteria: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(k): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        detail = ""
        if rep.failed:
            detail = str(rep.longrepr.reprcrash.message) if hasattr(rep.longrepr, "reprcrash") else "failed"
        _criteria.setdefault(mark.args[0], []).append((item.name, rep.outcome, detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for k in sorted(_criteria):
        runs = [r for r in _criteria[k] if r[1] != "skipped"]
        ok = bool(runs) and all(r[1] == "passed" for r in runs)
        skipped = len(_criteria[k]) - len(runs)
        note = f" ({skipped} slow case(s) skipped)" if skipped else ""
        tr.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  [{len(runs)} check(s)]{note}")
        for name, outcome, detail in runs:
            if outcome != "passed":
                tr.write_line(f"    {name}: {detail.splitlines()[0] if detail else outcome}")
