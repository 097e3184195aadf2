import functools

import pytest

RESULTS = []


def acceptance(number: int, title: str):
    """Record a one-line verdict for an acceptance criterion."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                out = fn(*args, **kwargs)
            except BaseException as exc:
                RESULTS.append((number, title, False, f"{type(exc).__name__}: {str(exc)[:120]}"))
                raise
            RESULTS.append((number, title, True, out or ""))

        return run

    return wrap


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, ok, note in sorted(RESULTS):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
        if note:
            line += f"  [{note}]"
        terminalreporter.write_line(line)


@pytest.fixture
def fixtures_dir():
    from pathlib import Path

    return Path(__file__).resolve().parents[1] / "fixtures"
