import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spseg.core import MarketVector, Segmentation, ValuationGrid  # noqa: E402


@pytest.fixture
def grid123():
    return ValuationGrid((F(1), F(2), F(3)))


@pytest.fixture
def example1(grid123):
    """Three equally sized valuation groups 1, 2, 3."""
    return MarketVector(grid123, (F(1, 3), F(1, 3), F(1, 3)))


@pytest.fixture
def high_price_seg(grid123):
    """Low and high types pooled at price 1, middle types alone at price 2."""
    return Segmentation.from_masses(grid123, [(F(1, 3), 0, F(1, 6)), (0, F(1, 3), F(1, 6))])


@pytest.fixture
def two_type():
    grid = ValuationGrid((F(1), F(2)))
    return MarketVector(grid, (F(2, 5), F(3, 5)))


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
