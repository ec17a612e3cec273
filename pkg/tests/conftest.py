import pytest

from pskew.groups import cyclic_group
from pskew.paction import SetPartialAction

_criteria: dict[int, list[bool]] = {}
_details: dict[int, str] = {}


def c4_action() -> SetPartialAction:
    """C4 on {1,2,3}: g sends 2->1, 3->2; g^2 swaps 1 and 3; g^3 is the inverse of g."""
    return SetPartialAction.build(cyclic_group(4), (1, 2, 3), {1: {2: 1, 3: 2}, 2: {1: 3, 3: 1}})


@pytest.fixture
def c4():
    return c4_action()


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    for key in report.keywords:
        if key.startswith("criterion_"):
            n = int(key.split("_")[1])
            _criteria.setdefault(n, []).append(report.passed)
            for line in report.capstdout.splitlines():
                if line.startswith(f"criterion {n}:"):
                    _details[n] = line.split(" - ", 1)[-1]


def pytest_collection_modifyitems(items):
    # expose criterion(n) as a keyword the log report can see
    for item in items:
        m = item.get_closest_marker("criterion")
        if m:
            item.keywords[f"criterion_{m.args[0]}"] = True


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok = all(_criteria[n])
        detail = _details.get(n, f"{len(_criteria[n])} test(s)")
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
