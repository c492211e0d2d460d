from __future__ import annotations

import numpy as np
import pytest

from slicereg.hypercomplex import QUATERNION, Quaternion
from slicereg.slicepoly import SlicePolynomial, star_product

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def linear(root: Quaternion) -> SlicePolynomial:
    return SlicePolynomial.from_elements([-root, QUATERNION.one()])


@pytest.fixture
def cex() -> SlicePolynomial:
    """(q - i) * (q - j)."""
    return star_product(linear(Quaternion(0, 1, 0, 0)), linear(Quaternion(0, 0, 1, 0)))
