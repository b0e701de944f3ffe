#!/usr/bin/env python3
"""Numeric bounds on the maximum packing size.

Everything is reported per element in natural-log space: a bound B means
the family size behaves like exp(B*n).  The lower bound comes from
counting (vertices over degree); the upper bounds come from a direct
inner-product argument (c > alpha) and an entropy argument (c <= alpha).
"""
from fractions import Fraction

from setpack import (
    bound_report,
    entropy,
    finite_n_upper_bound,
    lower_bound_T,
    optimal_c,
    upper_bound_entropy,
    upper_bound_small_c,
)

alpha = 1 / 3

print("=== the counting lower bound and its optimal density ===")
c_star = optimal_c(alpha)
log_pn, base = lower_bound_T(c_star, alpha)
print(f"alpha = 1/3: optimal c = {c_star:.6f}")
print(f"family size at least {base:.5f}^n  (log per element {log_pn:.6f})")

print()
print("=== the two entropy endpoints ===")
for c in (0.0825, 0.1476):
    ub = upper_bound_entropy(c, alpha)
    print(f"c = {c}: size at most {ub.base:.5f}^n + o(1), "
          f"via d' = {ub.d_prime:.5f} ({ub.d_prime_label})")

print()
print("=== lower vs upper across the whole density range ===")
print(f"{'c':>8} {'lower':>9} {'upper':>9}")
for i in range(0, 11):
    c = 0.01 + i * (0.32 - 0.01) / 10
    lo, lo_base = lower_bound_T(c, alpha)
    ub = upper_bound_entropy(c, alpha)
    print(f"{c:>8.4f} {lo_base:>9.5f} {ub.base:>9.5f}")

print()
print("=== the dense regime caps at a constant ===")
for c in (0.4, 0.5, 0.75, 1.0):
    print(f"c = {c}: at most {upper_bound_small_c(c, alpha):.3f} blocks, any n")

print()
print("=== exact finite-n caps ===")
# restrict every block between a small witness core and a window
value = finite_n_upper_bound(28, 4, Fraction(1, 2), 0, 7)
print(f"n=28, blocks of 4, alpha=1/2, window (0, 7): at most {value} blocks")
print(f"  (the explicit construction achieves 49)")

print()
print("=== entropy function sanity ===")
print(f"I(1/2) = {entropy(0.5):.6f} (= ln 2)")
print(f"I(x) = I(1-x): {entropy(0.3):.6f} vs {entropy(0.7):.6f}")

print()
print("=== one-call report ===")
report = bound_report(alpha)
for key, value in report.as_dict().items():
    print(f"  {key} = {value}")
