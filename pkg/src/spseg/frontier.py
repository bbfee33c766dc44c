"""Lattice enumeration of segmentations and sampling of the strategy-proof welfare set.

Masses are discretized to multiples of ``1/q``. Each type's units are
split among at most ``n`` markets and every segmentation is generated once,
with markets in lexicographically descending order. Filtering through the
verifier gives an inner approximation of the achievable (pi, u) set: only
the min-price rule is tried, although other rational pricing rules exist.

Keep instances small (K <= 3, q <= 18, n <= 3 runs in seconds).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterator

from spseg.core import MarketVector, RationalLike, Segmentation, as_rational
from spseg.errors import NonIntegralGrid
from spseg.pricing import welfare_of
from spseg.verifier import is_strategy_proof


@dataclass(frozen=True)
class FrontierConfig:
    denominator: int
    max_markets: int
    cost: Fraction = Fraction(0)

    def __post_init__(self):
        if self.denominator < 1:
            raise ValueError("denominator must be a positive integer")
        if self.max_markets < 1:
            raise ValueError("max_markets must be a positive integer")
        object.__setattr__(self, "cost", as_rational(self.cost))

    def units(self, aggregate: MarketVector) -> tuple[int, ...]:
        out = []
        for j, x in enumerate(aggregate.masses):
            scaled = x * self.denominator
            if scaled.denominator != 1:
                raise NonIntegralGrid(
                    f"mass {x} at valuation index {j} is not a multiple of 1/{self.denominator}"
                )
            out.append(int(scaled))
        return tuple(out)


@dataclass(frozen=True)
class FrontierPoint:
    pi: Fraction
    u: Fraction
    representative: Segmentation


def _vectors_below(remaining: tuple[int, ...], upper: tuple[int, ...] | None) -> Iterator[tuple[int, ...]]:
    # componentwise <= remaining, lexicographically <= upper, in descending lex order
    ranges = [range(r, -1, -1) for r in remaining]
    for vec in product(*ranges):
        if upper is not None and vec > upper:
            continue
        yield vec


def _split(remaining: tuple[int, ...], slots: int, upper: tuple[int, ...] | None):
    if slots == 1:
        if upper is None or remaining <= upper:
            yield (remaining,)
        return
    for head in _vectors_below(remaining, upper):
        rest = tuple(r - h for r, h in zip(remaining, head))
        for tail in _split(rest, slots - 1, head):
            yield (head,) + tail


def enumerate_grid_segmentations(
    aggregate: MarketVector, config: FrontierConfig
) -> Iterator[Segmentation]:
    """Yield every unordered split of the aggregate into ``max_markets`` lattice markets.

    Segmentations with fewer nonempty markets appear padded with empty ones.
    """
    units = config.units(aggregate)
    q = config.denominator
    grid = aggregate.grid
    for rows in _split(units, config.max_markets, None):
        yield Segmentation(
            grid, tuple(MarketVector(grid, tuple(Fraction(c, q) for c in row)) for row in rows)
        )


def count_grid_segmentations(aggregate: MarketVector, config: FrontierConfig) -> int:
    return sum(1 for _ in enumerate_grid_segmentations(aggregate, config))


def sp_region_sample(aggregate: MarketVector, config: FrontierConfig) -> list[FrontierPoint]:
    """Distinct welfare points of strategy-proof lattice segmentations, sorted by (pi, u).

    The representative of each point is the first segmentation reaching it in
    enumeration order, so the output is fully deterministic.
    """
    points: dict[tuple[Fraction, Fraction], Segmentation] = {}
    for seg in enumerate_grid_segmentations(aggregate, config):
        if not is_strategy_proof(seg, config.cost):
            continue
        w = welfare_of(seg)
        points.setdefault(w.point, seg)
    return [FrontierPoint(pi, u, points[(pi, u)]) for pi, u in sorted(points)]
