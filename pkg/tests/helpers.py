"""Random instance generators and brute-force oracles used across the tests.

The oracles deliberately avoid the symbolic shortcuts of the library: they
move an explicit finite mass, or scan explicit price candidates.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from spseg.core import MarketVector, Segmentation, ValuationGrid
from spseg.errors import DegenerateAssumption, NonUniqueOptimum
from spseg.pricing import aggregate_stats, min_optimal_price, revenue_at

F = Fraction


def random_grid(rng: random.Random, K: int, top: int = 10) -> ValuationGrid:
    return ValuationGrid(tuple(F(v) for v in sorted(rng.sample(range(1, top + 1), K))))


def random_market(rng: random.Random, grid: ValuationGrid, max_den: int = 12, p_zero=0.25) -> MarketVector:
    masses = []
    for _ in grid:
        if rng.random() < p_zero:
            masses.append(F(0))
        else:
            den = rng.randint(1, max_den)
            masses.append(F(rng.randint(1, den), den))
    return MarketVector(grid, tuple(masses))


def random_valid_aggregate(rng: random.Random, K: int, max_den: int = 12) -> MarketVector:
    """Resample until the optimal uniform price is unique and above v_1."""
    while True:
        grid = random_grid(rng, K)
        m = random_market(rng, grid, max_den, p_zero=0.0)
        try:
            aggregate_stats(m)
        except (NonUniqueOptimum, DegenerateAssumption):
            continue
        return m


def random_lattice_segmentation(rng: random.Random, K: int, n: int, q: int) -> Segmentation:
    grid = random_grid(rng, K, top=6)
    rows = [[F(0)] * K for _ in range(n)]
    for j in range(K):
        units = rng.randint(0, q)
        for _ in range(units):
            rows[rng.randrange(n)][j] += F(1, q)
    return Segmentation.from_masses(grid, rows)


def brute_optimal_prices(m: MarketVector) -> set[Fraction]:
    """Argmax of revenue over grid values plus off-grid candidates."""
    vals = list(m.grid)
    cands = set(vals)
    cands.add(vals[-1] + 1)
    cands.add(vals[0] / 2)
    for a, b in zip(vals, vals[1:]):
        cands.update({(a + b) / 2, a + (b - a) / 7})
    revs = {p: revenue_at(m, p) for p in cands}
    best = max(revs.values())
    return {p for p, r in revs.items() if r == best}


def revenue_gap(m: MarketVector) -> Fraction | None:
    revs = [revenue_at(m, v) for v in m.grid]
    best = max(revs)
    gaps = [best - r for r in revs if r != best]
    return min(gaps) if gaps else None


def finite_mass_deviations(s: Segmentation, cost=F(0)) -> list[tuple[int, int, int, Fraction]]:
    """Profitable moves found by actually moving a small explicit mass.

    The mass is chosen below the target's revenue gap over v_K, so that the
    post-entry min price is what it would be for every smaller mass.
    """
    grid = s.grid
    v_top = grid[len(grid) - 1]
    markets = list(s.markets)
    prices = [None if m.is_empty else min_optimal_price(m) for m in markets]
    targets = list(range(len(markets)))
    if not any(m.is_empty for m in markets):
        markets.append(MarketVector.zeros(grid))
        targets.append(len(markets) - 1)
    found = []
    for j, m_j in enumerate(s.markets):
        for k, x in enumerate(m_j.masses):
            if x == 0:
                continue
            stay = max(grid[k] - prices[j], 0)
            for i in targets:
                if i == j:
                    continue
                gap = revenue_gap(markets[i])
                mu = min(x / 2, (gap if gap is not None else F(1)) / (2 * v_top))
                joined = markets[i] + MarketVector.unit(grid, k, mu)
                move = max(grid[k] - min_optimal_price(joined), 0)
                if move - cost > stay:
                    found.append((j, k, i, move - cost - stay))
    return found


def labelled_splits(units: tuple[int, ...], n: int):
    """Every labelled assignment of each type's units to n markets."""
    per_type = []
    for u in units:
        per_type.append([c for c in product(range(u + 1), repeat=n) if sum(c) == u])
    for choice in product(*per_type):
        yield tuple(tuple(choice[j][i] for j in range(len(units))) for i in range(n))
