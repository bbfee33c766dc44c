"""
Welfare samples under costly deviation
======================================

Enumerate every segmentation of the three-type example on a 1/q mass
lattice, keep the strategy-proof ones at a given deviation cost, and plot
the resulting (pi, u) points inside the surplus triangle.
"""

# %%
from fractions import Fraction as F
from pathlib import Path

from spseg import FrontierConfig, ValuationGrid, aggregate_stats, sp_region_sample
from spseg.plot import surplus_svg

grid = ValuationGrid((F(1), F(2), F(3)))
aggregate = grid.market((F(1, 3), F(1, 3), F(1, 3)))
stats = aggregate_stats(aggregate)

# %%
for cost in (F(0), F(1), F(2)):
    pts = sp_region_sample(aggregate, FrontierConfig(denominator=3, max_markets=3, cost=cost))
    print(f"cost {cost}: {len(pts)} points")
    print("   ", ", ".join(f"({p.pi}, {p.u})" for p in pts))

# %%
# A finer lattice at zero cost stays on the vertical segment pi = pi*.
fine = sp_region_sample(aggregate, FrontierConfig(denominator=18, max_markets=3))
print("pi values:", *sorted({p.pi for p in fine}), "| u from", min(p.u for p in fine), "to", max(p.u for p in fine))

out = Path("cost1_sample.svg")
out.write_text(surplus_svg(stats, sp_region_sample(aggregate, FrontierConfig(3, 3, F(1))), "cost 1"))
print("wrote", out)
