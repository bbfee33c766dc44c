"""
Uniform monopoly benchmark and the surplus triangle
===================================================

Three equally large groups of consumers value the good at 1, 2 and 3.
We compute the uniform monopoly outcome and the four corners of the set
of welfare pairs any segmentation could produce.
"""

# %%
from fractions import Fraction as F

from spseg import ValuationGrid, aggregate_stats, optimal_price_set, revenue

grid = ValuationGrid((F(1), F(2), F(3)))
aggregate = grid.market((F(1, 3), F(1, 3), F(1, 3)))

# %%
# Revenue at each candidate price. Only valuations need checking.
for j, v in enumerate(grid):
    print(f"price {v}: revenue {revenue(aggregate, j)}")
print("optimal:", [str(grid[j]) for j in sorted(optimal_price_set(aggregate))])

# %%
stats = aggregate_stats(aggregate)
print(f"v* = {stats.v_star}, pi* = {stats.pi_star}, u* = {stats.u_star}, w_bar = {stats.w_bar}")
for label, (pi, u) in stats.triangle.items():
    print(f"  {label}: producer {pi}, consumers {u}")
