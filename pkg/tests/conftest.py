"""Shared fixtures and the acceptance-verdict summary hook."""

from __future__ import annotations

from pathlib import Path

import pytest

from hiercomp.workbench import read_edgelist

FIXTURES = Path(__file__).parent / "fixtures"

_criterion_lines: list[tuple[int, str]] = []


@pytest.fixture
def record_criterion():
    """Callable(number, verdict_text) collecting one line per criterion.

    Lines are echoed in the terminal summary so the pass/fail verdicts are
    visible whether or not the underlying assertions succeed.
    """

    def _record(number: int, text: str) -> None:
        _criterion_lines.append((number, text))

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _criterion_lines:
        return
    terminalreporter.section("acceptance criteria")
    for number, text in sorted(_criterion_lines):
        terminalreporter.write_line(f"criterion {number:2d}: {text}")


@pytest.fixture(scope="session")
def sixnode_path() -> Path:
    return FIXTURES / "sixnode.txt"


@pytest.fixture(scope="session")
def sixnode(sixnode_path):
    return read_edgelist(sixnode_path)
