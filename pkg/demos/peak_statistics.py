"""
Cycle-peak statistics and the coefficient table
===============================================

The coefficients of the cumulant polynomials, rewritten in the basis
m^a (1-m)^b, form a triangle of nonnegative integers.  This script builds
that triangle from the polynomials alone, compares it with exhaustive
permutation enumeration, and reports which indexing convention makes the
two sides meet.
"""

import math

from thetakit import count_profiles, cycle_peaks, peak_numbers, reconcile_thm11

print("== cycle peaks of a single permutation ==")
perm = (3, 2, 4, 1, 6, 5)
odd, even = cycle_peaks(perm)
print(f"perm = {perm}: {odd} odd-valued and {even} even-valued cycle peaks")

print()
print("== exhaustive profiles ==")
for n in range(1, 7):
    profile = count_profiles(n)
    assert profile.total() == math.factorial(n)
    print(f"n = {n}: total {profile.total():4d} = {n}!  counts = "
          + str(dict(sorted(profile.counts.items()))))

print()
print("== the coefficient triangle, straight from the polynomials ==")
for n in range(1, 7):
    row = peak_numbers(n)
    print(f"row {n}: {list(row)}  (sum = {sum(row)})")
# row sums are half tangent numbers; rows are symmetric and nonnegative

print()
print("== which convention matches? ==")
report = reconcile_thm11(3)
for verdict in report.verdicts:
    status = "all orders" if all(verdict.matches.values()) else (
        "orders " + ", ".join(str(n) for n, ok in verdict.matches.items() if ok)
        if any(verdict.matches.values()) else "none")
    print(f"  exponents={verdict.exponents:14s} sign={verdict.sign:10s} matches: {status}")
print()
print(f"winner: exponents={report.winner[0]} sign={report.winner[1]}")
print(report.printed_note)
print(report.enumeration_note)
print()
print(f"Q projection of the rows: {report.q_projection}")
print(f"reference Q values:       {report.q_reference}")
