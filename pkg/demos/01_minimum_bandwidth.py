"""
Minimum reachable bandwidth of a particle group
===============================================

Sort by deadline, take the largest prefix average. Compare against brute
force over every subset, then look at where the requirement drops.
"""

#
from fractions import Fraction

from particle_access import (
    access_efficiency,
    analyze,
    average_bandwidth,
    is_principal_prefix,
    is_reachable,
    make_group,
)
from particle_access.oracle import brute_force_peak, edf_feasible

#
group = make_group(
    ("a", 2, 1),
    ("b", 1, 2),
    ("c", 3, 4),
    ("d", 1, 6),
)
print("sorted:", group.ids)
print("prefix bits:", [str(x) for x in group.prefix_bits])

#
r = analyze(group)
print("prefix averages:", [str(x) for x in r.prefix_averages])
print("b_min =", r.b_min, " principal prefixes:", r.principal_prefixes, " inflection:", r.inflection)
print("alpha (after the inflection deadline) =", r.alpha)

# 2^N - 1 subsets should agree with the N prefixes
scan = brute_force_peak(group)
print("brute force:", scan.best_value, "from", scan.best_subset)

# b_min is exactly the edge of feasibility
print("reachable at b_min:", is_reachable(group, r.b_min))
print("reachable just below:", is_reachable(group, r.b_min - Fraction(1, 10**9)))

# EDF at b_min: principal prefixes finish right on their deadline
run = edf_feasible(group, r.b_min)
for k, (p, done) in enumerate(zip(group, run.completions), start=1):
    tag = "principal" if is_principal_prefix(group, k) else ""
    print(f"  {p.id}: done {str(done):>5}  due {p.deadline}  {tag}")

#
print("average requirement", average_bandwidth(group), "-> efficiency at b_min", access_efficiency(group, r.b_min))
