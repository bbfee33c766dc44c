"""Extremal markets, the greedy segmentation and the merged family built on it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from spseg.core import (
    MarketVector,
    RationalLike,
    Segmentation,
    ValuationGrid,
    as_rational,
    market_sum,
)
from spseg.errors import TargetOutOfRange
from spseg.pricing import (
    AggregateStats,
    aggregate_stats,
    consumer_surplus_at,
    min_optimal_price,
    welfare_of,
)


def _extremal_weights(grid: ValuationGrid, support: list[int]) -> dict[int, Fraction]:
    """Mass per unit share at each support point: min S * (1/v - 1/next(v))."""
    low = grid[support[0]]
    weights = {}
    for pos, j in enumerate(support):
        nxt = Fraction(1) / grid[support[pos + 1]] if pos + 1 < len(support) else Fraction(0)
        weights[j] = low * (Fraction(1) / grid[j] - nxt)
    return weights


def extremal_market(grid: ValuationGrid, S: Iterable[int], a: RationalLike) -> MarketVector:
    """Market supported on ``S`` with total mass ``a`` where every price in S is optimal.

    Each price in S earns ``a * min(S)``.
    """
    support = sorted(set(S))
    if not support:
        raise ValueError("extremal market needs a nonempty support")
    if support[0] < 0 or support[-1] >= len(grid):
        raise IndexError("support index outside the valuation grid")
    a = as_rational(a)
    if a <= 0:
        raise ValueError(f"extremal market share must be positive, got {a}")
    w = _extremal_weights(grid, support)
    return MarketVector(grid, tuple(a * w[j] if j in w else Fraction(0) for j in range(len(grid))))


@dataclass(frozen=True)
class GreedyResult:
    aggregate: MarketVector
    stats: AggregateStats
    markets: tuple[MarketVector, ...]
    shares: tuple[Fraction, ...]

    @property
    def t(self) -> int:
        return len(self.markets)

    @property
    def grid(self) -> ValuationGrid:
        return self.aggregate.grid

    def default_slots(self) -> int:
        return max(len(self.grid), self.t + 1)

    def segmentation(self, n: int | None = None) -> Segmentation:
        s = Segmentation(self.grid, self.markets)
        return s.padded(self.default_slots() if n is None else n)


def greedy_segmentation(aggregate: MarketVector) -> GreedyResult:
    """Repeatedly peel off the largest extremal market on the residual's support.

    The aggregate must have a unique optimal uniform price above the lowest
    valuation (checked via :func:`aggregate_stats`).
    """
    stats = aggregate_stats(aggregate)
    grid = aggregate.grid
    residual = aggregate
    markets, shares = [], []
    while not residual.is_empty:
        support = sorted(residual.support())
        w = _extremal_weights(grid, support)
        a = min(residual[j] / w[j] for j in support)
        piece = extremal_market(grid, support, a)
        residual = residual - piece
        markets.append(piece)
        shares.append(a)
    return GreedyResult(aggregate, stats, tuple(markets), tuple(shares))


@dataclass(frozen=True)
class FamilyParams:
    k: int
    alpha: Fraction
    psi: Fraction


def _check_family_args(greedy: GreedyResult, k: int, alpha: Fraction) -> None:
    if greedy.t < 2:
        raise ValueError("the merged family needs a greedy run of at least two rounds")
    if not 1 <= k <= greedy.t - 1:
        raise ValueError(f"k must lie in [1, {greedy.t - 1}], got {k}")
    if not 0 <= alpha <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")


def last_market_share(greedy: GreedyResult, k: int, alpha: RationalLike) -> Fraction:
    alpha = as_rational(alpha)
    _check_family_args(greedy, k, alpha)
    return sum(greedy.shares[k:], Fraction(0)) + (1 - alpha) * greedy.shares[k - 1]


def family_segmentation(
    greedy: GreedyResult, k: int, alpha: RationalLike, n: int | None = None
) -> Segmentation:
    """Keep greedy markets 1..k-1, scale market k by alpha, merge everything after.

    ``k`` is one-based, ranging over 1..t-1. The merged (last) market is
    always priced at the uniform monopoly price under the min-price rule.
    """
    alpha = as_rational(alpha)
    _check_family_args(greedy, k, alpha)
    g = greedy.markets
    kept = list(g[: k - 1]) + [g[k - 1].scale(alpha)]
    merged = market_sum(greedy.grid, g[k:]) + g[k - 1].scale(1 - alpha)
    s = Segmentation(greedy.grid, tuple(kept) + (merged,))
    return s.padded(greedy.default_slots() if n is None else n)


def _family_u(greedy: GreedyResult, k: int, alpha: Fraction) -> Fraction:
    # closed form: extremal markets at their min price, merged market at v*
    v_star = greedy.stats.v_star
    g = greedy.markets
    u = sum((consumer_surplus_at(m, min_optimal_price(m)) for m in g[: k - 1]), Fraction(0))
    u += alpha * consumer_surplus_at(g[k - 1], min_optimal_price(g[k - 1]))
    merged = market_sum(greedy.grid, g[k:]) + g[k - 1].scale(1 - alpha)
    return u + consumer_surplus_at(merged, v_star)


def solve_target_u(
    greedy: GreedyResult, u_target: RationalLike, n: int | None = None
) -> tuple[FamilyParams, Segmentation]:
    """Find the family member whose consumer surplus is exactly ``u_target``.

    Consumer surplus is linear in alpha for fixed k and continuous across
    consecutive k, rising from u* at (1, 0) to the buyer-optimal level at
    (t-1, 1). When several parameters hit the target, the one with the
    largest last-market share is returned.
    """
    u_target = as_rational(u_target)
    stats = greedy.stats
    if not stats.u_star <= u_target <= stats.buyer_optimal_u:
        raise TargetOutOfRange(
            f"target consumer surplus {u_target} outside [{stats.u_star}, {stats.buyer_optimal_u}]"
        )
    for k in range(1, greedy.t):
        u0 = _family_u(greedy, k, Fraction(0))
        u1 = _family_u(greedy, k, Fraction(1))
        if u_target > u1:
            continue
        alpha = Fraction(0) if u1 == u0 else (u_target - u0) / (u1 - u0)
        params = FamilyParams(k, alpha, last_market_share(greedy, k, alpha))
        seg = family_segmentation(greedy, k, alpha, n)
        assert welfare_of(seg).consumer_surplus == u_target
        return params, seg
    raise AssertionError("unreachable: target within range but no segment matched")
