import pytest

# (criterion, passed) lines collected by test_acceptance.py
ACCEPTANCE_LINES: list[tuple[str, bool]] = []


def brute_v2(k: int):
    """Valuation by repeated halving; None for 0."""
    if k == 0:
        return None
    v = 0
    while k % 2 == 0:
        k //= 2
        v += 1
    return v


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}")


@pytest.fixture
def clean_env(monkeypatch):
    monkeypatch.delenv("POWERSUM_ORACLE_BUDGET", raising=False)
    monkeypatch.delenv("POWERSUM_MAX_PRECISION_BITS", raising=False)
    return monkeypatch
