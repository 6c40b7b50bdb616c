"""
Systems that are not cyclic
===========================

Two small systems show that the cyclic picture does not carry over
unchanged. The tripartite system is contextual although each of its cyclic
subsystems is not. In the star system, the two LP measures order the
contextual systems differently.
"""

from cyclic_cbd.general import (
    aligned_pairs,
    blocking_analysis,
    cyclic_subsystems,
    is_contextual_general,
    star_scan,
    tripartite_system,
)
from cyclic_cbd.measures import bell_criterion

tri = tripartite_system()
print("tripartite contextual:", is_contextual_general(tri, mode="exact"))
for sub in cyclic_subsystems(tri):
    c = bell_criterion(sub)
    print(f"  cycle {sub.label}: s1 - Delta = {c.margin:+.3f}")

# %%
# Why: equal same-content variables force values in two contexts, and they
# disagree about q4.

rep = blocking_analysis(tri)
print("forced values:", rep.forced)
print("conflicts:", rep.conflicts)

# %%
# A short scan of the star system. Pairs with equal CNT1 but different CNT2
# (and the other way round) show the measures are not monotone in each other.

samples = star_scan(seed=7, samples=60)
same1, same2 = aligned_pairs(samples, tie=1e-6, gap=1e-3)
print(f"{sum(s.contextual for s in samples)}/{len(samples)} contextual, "
      f"{len(same1)} pairs equal in CNT1, {len(same2)} equal in CNT2")
if same1:
    i, j = same1[0]
    a, b = samples[i], samples[j]
    print(f"  e.g. CNT1 {a.cnt1:.4f} = {b.cnt1:.4f} but CNT2 {a.cnt2:.4f} vs {b.cnt2:.4f}")
