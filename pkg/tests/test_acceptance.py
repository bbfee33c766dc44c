"""Acceptance gate: one test per criterion, exact equalities, wall-clock budgets.

Run alone with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per
criterion is printed in the terminal summary.
"""

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction as F

import pytest

from conftest import ACCEPTANCE_LINES
from helpers import random_lattice_segmentation, random_market, random_grid, random_valid_aggregate, revenue_gap
from spseg import cli
from spseg.constructions import family_segmentation, greedy_segmentation, solve_target_u
from spseg.core import MarketVector, Segmentation, ValuationGrid
from spseg.frontier import FrontierConfig, sp_region_sample
from spseg.pricing import (
    aggregate_stats,
    min_optimal_price,
    perturbed_min_price_limit,
    welfare_of,
)
from spseg.verifier import (
    OffPathPolicy,
    deviation_search,
    indifference_check,
    is_strategy_proof,
    spe_check,
)

GRID = ValuationGrid((F(1), F(2), F(3)))
EX1 = MarketVector(GRID, (F(1, 3), F(1, 3), F(1, 3)))


@contextmanager
def criterion(number, title, budget):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"[{number}] FAIL  {title}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    ACCEPTANCE_LINES.append(
        f"[{number}] {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f} s, budget {budget} s)"
    )
    assert ok, f"criterion {number} took {elapsed:.2f} s (budget {budget} s)"


def cli_json(capsys, tmp_path, *argv):
    code = cli.main(list(argv) + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def ex1_file(tmp_path):
    p = tmp_path / "example1.json"
    p.write_text(json.dumps({"values": ["1", "2", "3"], "masses": ["1/3", "1/3", "1/3"]}))
    return str(p)


# builders shared with criterion 9


def suite2():
    return [greedy_segmentation(EX1).segmentation()]


def suite3():
    g = greedy_segmentation(EX1)
    targets = [F(1, 3) + F(1, 3) * F(i, 19) for i in range(20)]
    return [(t, solve_target_u(g, t)[1]) for t in targets]


def suite5():
    rng = random.Random(20240601)
    out = []
    for _ in range(200):
        agg = random_valid_aggregate(rng, rng.choice([2, 3, 4]))
        g = greedy_segmentation(agg)
        segs = [g.segmentation()]
        for _ in range(3):
            k = rng.randint(1, g.t - 1)
            den = rng.randint(1, 12)
            segs.append(family_segmentation(g, k, F(rng.randint(0, den), den)))
        out.append((agg, segs))
    return out


SEG5 = Segmentation.from_masses(GRID, [(F(1, 3), 0, F(1, 6)), (0, F(1, 3), F(1, 6))])


def test_c1_example1_statistics(capsys, tmp_path, ex1_file):
    with criterion(1, "Example 1 statistics v*=2, pi*=4/3, u*=1/3, w_bar=2", 1):
        code, doc = cli_json(capsys, tmp_path, "analyze", ex1_file)
        assert code == 0
        assert (doc["v_star"], doc["pi_star"], doc["u_star"], doc["w_bar"]) == ("2", "4/3", "1/3", "2")
        st = aggregate_stats(EX1)
        assert (st.v_star, st.pi_star, st.u_star, st.w_bar) == (F(2), F(4, 3), F(1, 3), F(2))


def test_c2_greedy_reproduction():
    with criterion(2, "greedy on Example 1: three extremal markets, (4/3, 2/3), strategy-proof", 1):
        (s,) = suite2()
        assert [m.masses for m in s if not m.is_empty] == [
            (F(1, 3), F(1, 9), F(2, 9)),
            (0, F(1, 18), F(1, 9)),
            (0, F(1, 6), 0),
        ]
        assert welfare_of(s).point == (F(4, 3), F(2, 3))
        assert is_strategy_proof(s, 0).strategy_proof


def test_c3_target_inversion(capsys, tmp_path, ex1_file):
    with criterion(3, "target inversion: u=1/2 via CLI and 20 targets in [1/3, 2/3], exact", 2):
        code, doc = cli_json(capsys, tmp_path, "construct", ex1_file, "--target-u", "1/2")
        assert code == 0
        assert (doc["u"], doc["pi"], doc["strategy_proof"]) == ("1/2", "4/3", True)
        cases = suite3()
        assert len(cases) == 20
        for target, seg in cases:
            assert F(1, 3) <= target <= F(2, 3)
            assert welfare_of(seg).point == (F(4, 3), target)
            assert is_strategy_proof(seg, 0).strategy_proof


def test_c4_high_profit_counterexample():
    with criterion(4, "pooled-extremes segmentation: pi=3/2, not strategy-proof, survives SPE (max price)", 1):
        assert welfare_of(SEG5, (1, 2)).producer_surplus == F(3, 2)
        res = is_strategy_proof(SEG5, 0)
        assert not res.strategy_proof
        assert [(w.source_market, w.valuation_index, w.target_market) for w in res.witnesses] == [(1, 1, 0)]
        assert spe_check(SEG5, (1, 2), OffPathPolicy.MAX_OPTIMAL_PRICE).passed


def test_c5_theorem_property_suite():
    with criterion(5, "200 random instances: greedy + 3 family members pass with pi=pi*, u in range, max price v*", 10):
        for agg, segs in suite5():
            st = aggregate_stats(agg)
            for s in segs:
                assert is_strategy_proof(s, 0).strategy_proof
                w = welfare_of(s)
                assert w.producer_surplus == st.pi_star
                assert st.u_star <= w.consumer_surplus <= st.buyer_optimal_u
                assert max(min_optimal_price(m) for m in s if not m.is_empty) == st.v_star


def test_c6_route_equivalence():
    with criterion(6, "1000 random lattice segmentations: indifference check <=> no deviation witness", 30):
        rng = random.Random(7)
        disagreements, failing = 0, 0
        for _ in range(1000):
            s = random_lattice_segmentation(rng, rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 9))
            ic = indifference_check(s).passed
            ds = not deviation_search(s, 0)
            disagreements += ic != ds
            failing += not ds
        assert disagreements == 0
        assert 0 < failing < 1000


def test_c7_perturbed_limit_consistency():
    with criterion(7, "500 random (market, type): symbolic limit = min price after eps entry", 5):
        rng = random.Random(11)
        for _ in range(500):
            grid = random_grid(rng, rng.randint(1, 4))
            m = random_market(rng, grid)
            k = rng.randrange(len(grid))
            gap = revenue_gap(m)
            top = grid[len(grid) - 1]
            eps_list = [F(1), F(1, 997)] if gap is None else [gap / (2 * top), gap / (4 * top)]
            for eps in eps_list:
                assert perturbed_min_price_limit(m, k) == min_optimal_price(m + MarketVector.unit(grid, k, eps))


def test_c8_cost_regions():
    with criterion(8, "SP(c) samples on Example 1: c=0 segment, c=1 trapezoid, c=2 triangle, nesting", 60):
        pts0 = sp_region_sample(EX1, FrontierConfig(18, 3, F(0)))
        assert all(p.pi == F(4, 3) for p in pts0)
        assert min(p.u for p in pts0) == F(1, 3) and max(p.u for p in pts0) == F(2, 3)

        sets = {}
        for c in (F(0), F(1), F(2)):
            sets[c] = {(p.pi, p.u) for p in sp_region_sample(EX1, FrontierConfig(3, 3, c))}
        assert (F(5, 3), F(1, 3)) in sets[F(1)]
        assert all(F(4, 3) <= pi <= F(5, 3) and pi + u <= 2 for pi, u in sets[F(1)])
        assert (F(2), F(0)) in sets[F(2)]
        assert sets[F(0)] <= sets[F(1)] <= sets[F(2)]


def test_c9_strategy_proof_implies_spe():
    with criterion(9, "every strategy-proof segmentation of suites 2-5 passes SPE (limit-min policy)", 15):
        segs = list(suite2()) + [s for _, s in suite3()]
        segs += [s for _, group in suite5() for s in group]
        assert len(segs) == 1 + 20 + 800
        for s in segs:
            assert is_strategy_proof(s, 0).strategy_proof
            assert spe_check(s, None, OffPathPolicy.LIMIT_MIN_PRICE).passed
        # suite 4's segmentation is not strategy-proof, so it is exempt
        assert not is_strategy_proof(SEG5, 0)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
