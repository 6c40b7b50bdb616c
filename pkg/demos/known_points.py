"""
Measures at a few well-known points
===================================

The PR box sits on a vertex of the expectation cube and is as contextual as a
rank-4 system can be. The Tsirelson point is the quantum maximum. Below we
compute both measures in closed form and check them against the linear
programs that define them.
"""

import math

import numpy as np

from cyclic_cbd.core import consistent_system
from cyclic_cbd.lp.oracle import cnt1_lp, cnt2_lp, ncnt2_lp
from cyclic_cbd.measures import measure

# fair coins everywhere; only the bunch products differ
pr = consistent_system([0.5] * 4, e_b=[1, 1, 1, -1], label="PR box")
h = math.sqrt(2) / 2
tsirelson = consistent_system([0.5] * 4, e_b=[h, h, h, -h], label="Tsirelson")

for system in (pr, tsirelson):
    r = measure(system)
    print(f"{system.label:>10}: s1 = {r.s1_b:.6f}, Delta = {r.Delta:g}, "
          f"CNT2 = {r.cnt_e_units:.6f} (closed form)")
    # the LP works in probability units, a quarter of expectation units
    print(f"{'':>10}  CNT2 = {4 * cnt2_lp(system):.6f}, CNT1 = {4 * cnt1_lp(system):.6f} (LP)")

# %%
# At the centre of the box, with all bunch products zero, the system is as
# far from contextual as it gets along a diagonal: NCNT2 = min(n - 2, 1).

for n in range(2, 7):
    centre = consistent_system([0.5] * n, e_b=np.zeros(n))
    r = measure(centre)
    print(f"rank {n}: NCNT2 = {r.ncnt_e_units:g} via {r.ncnt_branch}, LP {ncnt2_lp(centre):g}")
