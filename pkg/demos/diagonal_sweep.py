"""
Walking across the box
======================

Along a diagonal of the box of admissible bunch expectations, the signed
measure (CNT2 where contextual, -NCNT2 elsewhere) is one continuous,
piecewise linear curve. We print a coarse version of it for a few ranks.
"""

from cyclic_cbd.sweep import continuity, max_margin_on_diagonal, sweep

for mode in ("consistent", "inconsistent"):
    print(f"\n{mode} marginals")
    for n in (3, 4, 5):
        rows = sweep(n, mode, steps=11)
        curve = " ".join(f"{r.signed_measure:+.2f}" for r in rows)
        print(f"  rank {n}: {curve}")

# %%
# With inconsistent marginals the diagonal only reaches the contextual region
# at low rank. The largest value of s1 - Delta on the diagonal tells us why.

for n in range(2, 8):
    rows = sweep(n, "inconsistent")
    rep = continuity(rows, n, "inconsistent")
    print(f"rank {n}: max s1 - Delta = {max_margin_on_diagonal(n, 'inconsistent'):+.3f}, "
          f"crosses zero: {rep.crosses_zero}, max jump {rep.max_jump:.4f} (step {rep.step:.4f})")
