import pytest

from kmweights.rootsys import build_root_system

# criterion number -> (description, outcome); filled by tests in test_acceptance.py
ACCEPTANCE: dict = {}


@pytest.fixture
def acceptance_record():
    def record(number: int, description: str, passed: bool, detail: str = ""):
        ACCEPTANCE[number] = (description, passed, detail)
    return record


@pytest.fixture(scope="session")
def A1():
    return build_root_system("A1")


@pytest.fixture(scope="session")
def A2():
    return build_root_system("A2")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        desc, ok, detail = ACCEPTANCE[n]
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {desc}"
        if detail:
            line += f" ({detail})"
        terminalreporter.write_line(line)
