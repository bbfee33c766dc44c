"""Exact construction and verification of strategy-proof market segmentations."""

from spseg.constructions import (
    FamilyParams,
    GreedyResult,
    extremal_market,
    family_segmentation,
    greedy_segmentation,
    solve_target_u,
)
from spseg.core import (
    DeviationWitness,
    MarketVector,
    Segmentation,
    ValuationGrid,
    WelfareOutcome,
    support,
    total_mass,
    validate_segmentation,
)
from spseg.frontier import FrontierConfig, FrontierPoint, enumerate_grid_segmentations, sp_region_sample
from spseg.pricing import (
    AggregateStats,
    aggregate_stats,
    min_optimal_price,
    min_revenue_gap,
    optimal_price_set,
    perturbed_min_price_limit,
    revenue,
    welfare_of,
)
from spseg.verifier import (
    OffPathPolicy,
    deviation_search,
    indifference_check,
    is_strategy_proof,
    spe_check,
)

__version__ = "0.1.0"
