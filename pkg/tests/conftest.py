from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

_acceptance_lines: list[str] = []


@pytest.fixture
def sample_csv_text() -> str:
    return (DATA / "sample_layout.csv").read_text(encoding="utf-8")


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line for the acceptance summary."""
    def record(name: str, passed: bool, detail: str = "") -> None:
        status = "PASS" if passed else "FAIL"
        _acceptance_lines.append(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
