"""Strategy-proofness and subgame-perfection checks for a segmentation.

Two independent routes decide strategy-proofness under the min-price rule:

* :func:`indifference_check` inspects price orderings and optimal-price sets
  across market pairs, never simulating a move;
* :func:`deviation_search` probes every single-type move of an infinitesimal
  mass and reports the moves that strictly pay off net of the cost.

At zero cost the two must agree, which the test-suite exercises at random.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from spseg.core import DeviationWitness, MarketVector, RationalLike, Segmentation, as_rational
from spseg.pricing import (
    check_rational,
    max_optimal_price,
    min_optimal_price,
    min_price_assignment,
    optimal_price_set,
    perturbed_min_price_limit,
)


class OffPathPolicy(enum.Enum):
    """Price charged to a lone consumer who joins a market off the equilibrium path."""

    LIMIT_MIN_PRICE = "limit-min-price"
    MAX_OPTIMAL_PRICE = "max-optimal-price"


class Mode(enum.Enum):
    STRATEGY_PROOF = "strategy-proof"
    SPE = "spe"


@dataclass(frozen=True)
class VerifierConfig:
    cost: Fraction = Fraction(0)
    mode: Mode = Mode.STRATEGY_PROOF
    off_path_policy: OffPathPolicy = OffPathPolicy.LIMIT_MIN_PRICE

    def __post_init__(self):
        cost = as_rational(self.cost)
        if cost < 0:
            raise ValueError(f"deviation cost must be nonnegative, got {cost}")
        object.__setattr__(self, "cost", cost)


@dataclass(frozen=True)
class IndifferenceViolation:
    """Type ``valuation_index`` of market ``high_market`` is not optimal in ``low_market``."""

    low_market: int
    high_market: int
    valuation_index: int

    def label(self) -> str:
        return f"X{self.low_market + 1}, X{self.high_market + 1}, v{self.valuation_index + 1}"


@dataclass(frozen=True)
class IndifferenceResult:
    violations: tuple[IndifferenceViolation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed


def indifference_check(s: Segmentation) -> IndifferenceResult:
    """Check the indifference condition under the min-price rule.

    For every pair of nonempty markets priced p_i < p_j, each valuation v in
    the support of market j with p_i < v <= p_j must also be an optimal price
    of market i.
    """
    grid = s.grid
    live = [(i, m, min_optimal_price(m), optimal_price_set(m)) for i, m in enumerate(s) if not m.is_empty]
    out = []
    for i, _, p_i, opt_i in live:
        for j, m_j, p_j, _ in live:
            if not p_i < p_j:
                continue
            for k in sorted(m_j.support()):
                if p_i < grid[k] <= p_j and k not in opt_i:
                    out.append(IndifferenceViolation(i, j, k))
    return IndifferenceResult(tuple(sorted(out, key=lambda v: (v.low_market, v.high_market, v.valuation_index))))


def _probe(
    s: Segmentation,
    on_path: Sequence[Fraction],
    entry_price: Callable[[MarketVector, int], Fraction],
    cost: Fraction,
) -> list[DeviationWitness]:
    grid = s.grid
    targets = list(enumerate(s.markets))
    if not any(m.is_empty for m in s.markets):
        # a fresh empty slot is always available to a deviator
        targets.append((s.n, MarketVector.zeros(grid)))
    witnesses = []
    for j, m_j in enumerate(s.markets):
        for k in sorted(m_j.support()):
            v = grid[k]
            stay = max(v - on_path[j], 0)
            for i, m_i in targets:
                if i == j:
                    continue
                move = max(v - entry_price(m_i, k), 0)
                gain = move - cost - stay
                if gain > 0:
                    witnesses.append(DeviationWitness(j, k, i, gain))
    return witnesses


def deviation_search(s: Segmentation, cost: RationalLike = 0) -> list[DeviationWitness]:
    """All profitable single-type moves under the min-price rule.

    A type-k consumer leaving market j pays the on-path min price of j; after
    joining market i it faces the limit of the min price of i as its own mass
    shrinks to zero. Payoff comparisons are affine in the deviating mass, so a
    strict gain in the limit persists for every small enough mass. Witnesses
    come back ordered by (source, type, target).
    """
    cost = as_rational(cost)
    if cost < 0:
        raise ValueError("deviation cost must be nonnegative")
    return _probe(s, min_price_assignment(s), perturbed_min_price_limit, cost)


@dataclass(frozen=True)
class StrategyProofResult:
    strategy_proof: bool
    cost: Fraction
    witnesses: tuple[DeviationWitness, ...]
    indifference: IndifferenceResult = field(default_factory=IndifferenceResult)

    def __bool__(self) -> bool:
        return self.strategy_proof

    @property
    def routes_agree(self) -> bool:
        """Both routes reach the same verdict (only guaranteed at zero cost)."""
        return self.strategy_proof == self.indifference.passed


def is_strategy_proof(s: Segmentation, cost: RationalLike = 0) -> StrategyProofResult:
    cost = as_rational(cost)
    witnesses = deviation_search(s, cost)
    return StrategyProofResult(not witnesses, cost, tuple(witnesses), indifference_check(s))


@dataclass(frozen=True)
class SPEResult:
    passed: bool
    policy: OffPathPolicy
    witnesses: tuple[DeviationWitness, ...]

    def __bool__(self) -> bool:
        return self.passed


def _entry_rule(policy: OffPathPolicy) -> Callable[[MarketVector, int], Fraction]:
    if policy is OffPathPolicy.LIMIT_MIN_PRICE:
        return perturbed_min_price_limit
    if policy is OffPathPolicy.MAX_OPTIMAL_PRICE:
        return lambda m, k: max_optimal_price(m)
    raise ValueError(f"unknown off-path policy {policy!r}")


def spe_check(
    s: Segmentation,
    on_path: Sequence[RationalLike] | None = None,
    policy: OffPathPolicy | str = OffPathPolicy.LIMIT_MIN_PRICE,
) -> SPEResult:
    """Can a single zero-measure consumer gain by switching markets?

    A lone consumer leaves every canonical vector unchanged, so what matters
    is the price the off-path policy quotes when type k shows up in market i.
    Deviation cost is fixed at zero. ``on_path`` defaults to min prices and
    must be rational (NonRationalAssignment otherwise).
    """
    policy = OffPathPolicy(policy)
    prices = min_price_assignment(s) if on_path is None else check_rational(s, on_path)
    witnesses = _probe(s, prices, _entry_rule(policy), Fraction(0))
    return SPEResult(not witnesses, policy, tuple(witnesses))
