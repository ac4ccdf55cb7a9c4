import sys
from pathlib import Path

# make tests/support.py importable regardless of how pytest is invoked
sys.path.insert(0, str(Path(__file__).parent))

CRITERIA = {
    "1": "golden fixture", "2": "entailment oracle", "3": "cycle oracle",
    "4": "component properties", "5": "label-conflict oracle", "6": "echo fixtures",
    "7": "network determinism", "8": "report stability", "9": "scale smoke test",
}
_outcomes = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if not name.startswith("test_acceptance_"):
        return
    number = name.split("_")[2]
    if report.failed or (report.when == "call" and number not in _outcomes):
        _outcomes[number] = "FAIL" if report.failed else "PASS"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number, title in CRITERIA.items():
        if number in _outcomes:
            terminalreporter.write_line(
                f"criterion {number}/9 {title}: {_outcomes[number]}")
