"""
Greedy extremal segmentation and the merged family
==================================================

The greedy procedure splits the aggregate into markets where every
supported valuation is an optimal price. Merging its later markets traces
out every consumer surplus between the uniform monopoly level and the
buyer-optimal level, with producer surplus pinned at pi*.
"""

# %%
from fractions import Fraction as F

from spseg import (
    ValuationGrid,
    family_segmentation,
    greedy_segmentation,
    is_strategy_proof,
    solve_target_u,
    welfare_of,
)

grid = ValuationGrid((F(1), F(2), F(3)))
aggregate = grid.market((F(1, 3), F(1, 3), F(1, 3)))

g = greedy_segmentation(aggregate)
for m, a in zip(g.markets, g.shares):
    print("market", [str(x) for x in m.masses], "share", a)
print("welfare:", *welfare_of(g.segmentation()).point)
print("strategy-proof:", bool(is_strategy_proof(g.segmentation())))

# %%
# Sweep the merge weight alpha with k = 1.
for i in range(5):
    alpha = F(i, 4)
    s = family_segmentation(g, 1, alpha)
    w = welfare_of(s)
    print(f"alpha={alpha}: pi={w.producer_surplus}, u={w.consumer_surplus}, SP={bool(is_strategy_proof(s))}")

# %%
# Hit an exact consumer surplus.
params, seg = solve_target_u(g, F(5, 9))
print(f"k={params.k}, alpha={params.alpha}, last share={params.psi}")
print("u =", welfare_of(seg).consumer_surplus)
