import numpy as np
import pytest

from chordcycle import census

CENSUS_MAX_N = 7

_criteria: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def record_criterion():
    """Register a criterion outcome; the terminal summary prints one line each."""

    def record(number: int, ok: bool, detail: str = "") -> None:
        _criteria[number] = (ok, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        ok, detail = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def census_flags():
    """{n: (masks, flags)} for every labelled graph on 1..7 vertices."""
    out = {}
    for n in range(1, CENSUS_MAX_N + 1):
        masks = census.all_masks(n)
        out[n] = (masks, census.classify_masks(n, masks))
    return out


def select(flags: np.ndarray, present=(), absent=(), connected=True) -> np.ndarray:
    keep = np.ones(len(flags), dtype=bool)
    if connected:
        keep &= flags[:, census.CONNECTED] == 1
    for col in present:
        keep &= flags[:, col] == 1
    for col in absent:
        keep &= flags[:, col] == 0
    return np.flatnonzero(keep)
