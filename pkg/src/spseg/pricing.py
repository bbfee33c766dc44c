"""Monopoly pricing on a finite valuation grid.

Only grid values are ever candidate prices: any price strictly between two
valuations sells to the same consumers as the next valuation up and earns
less, and a price above the top valuation sells nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from spseg.core import (
    MarketVector,
    RationalLike,
    Segmentation,
    WelfareOutcome,
    as_rational,
)
from spseg.errors import (
    DegenerateAssumption,
    DegenerateMarket,
    NonRationalAssignment,
    NonUniqueOptimum,
)

PriceAssignment = tuple[Fraction, ...]


def demand_at_index(m: MarketVector, j: int) -> Fraction:
    """Mass of consumers valuing at least ``grid[j]``."""
    return sum(m.masses[j:], Fraction(0))


def revenue(m: MarketVector, price_index: int) -> Fraction:
    if not 0 <= price_index < len(m):
        raise IndexError(f"price index {price_index} outside grid of size {len(m)}")
    return m.grid[price_index] * demand_at_index(m, price_index)


def revenue_at(m: MarketVector, price: RationalLike) -> Fraction:
    """Revenue at an arbitrary nonnegative price, on or off the grid."""
    p = as_rational(price)
    return p * sum((x for v, x in zip(m.grid, m.masses) if v >= p), Fraction(0))


def revenues(m: MarketVector) -> list[Fraction]:
    # suffix sums, one pass
    out = [Fraction(0)] * len(m)
    tail = Fraction(0)
    for j in range(len(m) - 1, -1, -1):
        tail += m.masses[j]
        out[j] = m.grid[j] * tail
    return out


def max_revenue(m: MarketVector) -> Fraction:
    return max(revenues(m))


def optimal_price_set(m: MarketVector) -> frozenset[int]:
    """Indices of revenue-maximizing grid prices.

    For the all-zero market every price earns zero, so the whole grid is
    returned; use ``m.is_empty`` to detect that degenerate case.
    """
    revs = revenues(m)
    best = max(revs)
    return frozenset(j for j, r in enumerate(revs) if r == best)


def is_optimal_price(m: MarketVector, price: RationalLike) -> bool:
    return revenue_at(m, price) == max_revenue(m)


def min_optimal_index(m: MarketVector) -> int:
    if m.is_empty:
        raise DegenerateMarket("the all-zero market has no meaningful minimum optimal price")
    return min(optimal_price_set(m))


def min_optimal_price(m: MarketVector) -> Fraction:
    """The price chosen by the minimum-optimal-price rule."""
    return m.grid[min_optimal_index(m)]


def max_optimal_price(m: MarketVector) -> Fraction:
    return m.grid[max(optimal_price_set(m))]


def perturbed_min_price_limit_index(m: MarketVector, k: int) -> int:
    optimal = optimal_price_set(m)
    v_k = m.grid[k]
    # entrant's contribution to revenue at price p is proportional to p * 1{v_k >= p}
    score = {j: (m.grid[j] if m.grid[j] <= v_k else Fraction(0)) for j in optimal}
    best = max(score.values())
    return min(j for j, s in score.items() if s == best)


def perturbed_min_price_limit(m: MarketVector, k: int) -> Fraction:
    """Limit of the minimum optimal price as an infinitesimal mass of type ``k`` joins.

    Evaluated symbolically: among the currently optimal prices, keep those
    that collect the most revenue from the entrant, then take the smallest.
    Agrees with ``min_optimal_price(m + eps * e_k)`` whenever ``eps * v_K`` is
    below the market's revenue gap.
    """
    if not 0 <= k < len(m):
        raise IndexError(f"valuation index {k} outside grid of size {len(m)}")
    return m.grid[perturbed_min_price_limit_index(m, k)]


def market_revenue_gap(m: MarketVector) -> Fraction | None:
    """Smallest revenue shortfall of a non-optimal grid price; None if all tie."""
    revs = revenues(m)
    best = max(revs)
    gaps = [best - r for r in revs if r != best]
    return min(gaps) if gaps else None


def min_revenue_gap(s: Segmentation) -> Fraction | None:
    """Minimum revenue gap over the nonempty markets of ``s``.

    Returns None (the "infinite" sentinel) when every grid price is optimal
    in every nonempty market.
    """
    gaps = [g for m in s if not m.is_empty for g in [market_revenue_gap(m)] if g is not None]
    return min(gaps) if gaps else None


def consumer_surplus_at(m: MarketVector, price: RationalLike) -> Fraction:
    p = as_rational(price)
    return sum(((v - p) * x for v, x in zip(m.grid, m.masses) if v > p), Fraction(0))


def served_value_at(m: MarketVector, price: RationalLike) -> Fraction:
    p = as_rational(price)
    return sum((v * x for v, x in zip(m.grid, m.masses) if v >= p), Fraction(0))


Point = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class AggregateStats:
    """Uniform-monopoly benchmark of an aggregate market.

    ``triangle`` maps the labels A-D to (producer, consumer) surplus pairs:
    A uniform monopoly, B first-degree discrimination, C buyer-optimal,
    D minimum total surplus.
    """

    v_star: Fraction
    v_star_index: int
    pi_star: Fraction
    u_star: Fraction
    w_bar: Fraction
    triangle: dict[str, Point]

    @property
    def buyer_optimal_u(self) -> Fraction:
        return self.w_bar - self.pi_star


def aggregate_stats(aggregate: MarketVector) -> AggregateStats:
    if aggregate.total_mass() <= 0:
        raise DegenerateMarket("aggregate market must have positive total mass")
    opt = sorted(optimal_price_set(aggregate))
    if len(opt) > 1:
        prices = ", ".join(str(aggregate.grid[j]) for j in opt)
        raise NonUniqueOptimum(f"optimal uniform price is not unique: {prices}")
    j = opt[0]
    if j == 0:
        raise DegenerateAssumption(
            f"optimal uniform price equals the lowest valuation {aggregate.grid[0]}"
        )
    v_star = aggregate.grid[j]
    pi_star = revenue(aggregate, j)
    u_star = consumer_surplus_at(aggregate, v_star)
    w_bar = served_value_at(aggregate, 0)
    triangle = {
        "A": (pi_star, u_star),
        "B": (w_bar, Fraction(0)),
        "C": (pi_star, w_bar - pi_star),
        "D": (pi_star, Fraction(0)),
    }
    return AggregateStats(v_star, j, pi_star, u_star, w_bar, triangle)


def min_price_assignment(s: Segmentation) -> PriceAssignment:
    """Minimum optimal price per market; empty slots get the lowest valuation."""
    return tuple(
        s.grid[0] if m.is_empty else min_optimal_price(m) for m in s.markets
    )


def check_rational(s: Segmentation, prices: Sequence[RationalLike]) -> PriceAssignment:
    prices = tuple(as_rational(p) for p in prices)
    if len(prices) != s.n:
        raise NonRationalAssignment(f"{len(prices)} prices given for {s.n} markets")
    for i, (m, p) in enumerate(zip(s.markets, prices)):
        if p < 0 or not is_optimal_price(m, p):
            raise NonRationalAssignment(f"price {p} is not optimal in market {i}")
    return prices


def welfare_of(s: Segmentation, prices: Sequence[RationalLike] | None = None) -> WelfareOutcome:
    """Producer, consumer and total surplus when each market i is priced at prices[i].

    Defaults to the minimum-optimal-price rule. Raises NonRationalAssignment
    if any price is not optimal in its market.
    """
    prices = min_price_assignment(s) if prices is None else check_rational(s, prices)
    pi = sum((revenue_at(m, p) for m, p in zip(s, prices)), Fraction(0))
    u = sum((consumer_surplus_at(m, p) for m, p in zip(s, prices)), Fraction(0))
    w = sum((served_value_at(m, p) for m, p in zip(s, prices)), Fraction(0))
    assert w == pi + u
    return WelfareOutcome(pi, u, w)
