"""
Admitting a new particle under a budget
=======================================

Given spare bandwidth, either find the earliest deadline a new particle can
be promised, or the most bits it may carry for a fixed deadline.
"""

#
from fractions import Fraction

from particle_access import analyze, make_group, max_feasible_bits, min_feasible_deadline
from particle_access.admission import combined_group

group = make_group(("a", 2, 1), ("b", 1, 2), ("c", 3, 4))
b_min = analyze(group).b_min
budget = b_min * Fraction(3, 2)
print("b_min", b_min, "budget", budget)

#
for bits in (Fraction(1, 10), 1, 3, 10):
    res = min_feasible_deadline(group, bits, budget)
    print(f"  {str(bits):>5} bits -> earliest deadline {res.admitted_value}, b_min becomes {res.resulting_b_min}")

#
for deadline in (Fraction(1, 2), 1, 2, 5):
    res = max_feasible_bits(group, deadline, budget)
    print(f"  deadline {str(deadline):>3} -> at most {res.admitted_value} bits, b_min becomes {res.resulting_b_min}")

# the deadline answer is a sharp boundary
res = min_feasible_deadline(group, 3, budget)
for t in (res.admitted_value - Fraction(1, 1000), res.admitted_value):
    print(f"  t={t}: b_min {analyze(combined_group(group, 3, t)).b_min}")
