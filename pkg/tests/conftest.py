import time

import numpy as np
import pytest

from starroots.slice_function import StemPoly


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def cubic_stem():
    """(z^3 - 3z, 3z^2 - 1, 0, 0), the stem of (q + i)^3."""
    return StemPoly.from_components([0, -3, 0, 1], [-1, 0, 3])


@pytest.fixture
def quad_stem():
    """(z^2, -z, -z, 1), the stem of (q - i)(q - j) under the star-product."""
    return StemPoly.from_components([0, 0, 1], [0, -1], [0, -1], [1])


# acceptance report: one line per criterion, printed after the run

ACCEPTANCE_LINES = {}


class _Criterion:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.details = []

    def note(self, text):
        self.details.append(text)

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        ok = exc_type is None and elapsed < self.budget
        detail = "; ".join(self.details)
        if exc_type is not None:
            detail = f"{exc_type.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        line = (
            f"criterion {self.number} {'PASS' if ok else 'FAIL'} "
            f"[{self.title}] {elapsed:.2f}s / {self.budget:g}s"
            + (f" | {detail}" if detail else "")
        )
        ACCEPTANCE_LINES[self.number] = line
        print(line)
        if exc_type is None and not ok:
            raise AssertionError(f"criterion {self.number} took {elapsed:.2f}s, budget {self.budget:g}s")
        return False


@pytest.fixture
def criterion():
    return _Criterion


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
