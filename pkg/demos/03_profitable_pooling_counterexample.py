"""
A segmentation that raises profit but is not strategy-proof
===========================================================

Pool the low types with half of the high types (price 1) and put the
middle types with the rest of the high types (price 2). Profit exceeds the
uniform monopoly level. A small mass of middle types moving to the pooled
market keeps its price at 1, so the arrangement unravels. Under a pricing
rule that punishes a lone entrant with the highest optimal price, it
survives as a subgame perfect equilibrium.
"""

# %%
from fractions import Fraction as F

from spseg import OffPathPolicy, Segmentation, ValuationGrid, is_strategy_proof, spe_check, welfare_of

grid = ValuationGrid((F(1), F(2), F(3)))
seg = Segmentation.from_masses(grid, [(F(1, 3), 0, F(1, 6)), (0, F(1, 3), F(1, 6))])

print("welfare at prices (1, 2):", *welfare_of(seg, (1, 2)).point)

# %%
res = is_strategy_proof(seg)
print("strategy-proof:", res.strategy_proof)
for w in res.witnesses:
    print("  witness", w.label())
print("indifference violations:", [v.label() for v in res.indifference.violations])

# %%
for policy in OffPathPolicy:
    print(policy.value, "->", "survives" if spe_check(seg, (1, 2), policy) else "breaks")
