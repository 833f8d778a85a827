"""Shared fixtures and the acceptance-criteria summary."""
import pytest

from lsentropy import load_karate


@pytest.fixture(scope="session")
def karate():
    return load_karate()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Print one PASS/FAIL line per acceptance test, plus soft notes."""
    lines = {}
    notes = {}
    for status, word in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            if "test_acceptance.py" not in nodeid:
                continue
            name = nodeid.split("::")[-1]
            if name not in lines or word == "FAIL":
                lines[name] = word
            for key, value in getattr(report, "user_properties", ()):
                if key == "soft_note":
                    notes[name] = value
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(lines):
        terminalreporter.write_line(f"{lines[name]} {name}")
        if name in notes:
            terminalreporter.write_line(f"     note: {notes[name]}")
