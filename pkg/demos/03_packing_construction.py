#!/usr/bin/env python3
"""Building explicit packings and the no-three-invertible collections.

A packing at (n, c, alpha) is a family of cn-subsets with every pairwise
intersection below alpha*c*n.  The recursive construction splits the
ground set into 2k parts (k = 1/alpha), packs each part at alpha/2, then
takes one sub-block per part along lines over a prime field, squaring the
family size per level.
"""
from fractions import Fraction

from setpack import (
    Collection,
    decide_invertible,
    greedy_independent_set,
    packing_graph_stats,
    verify_packing,
)
from setpack.pack import (
    construct_packing_traced,
    no_three_invertible_family,
    residue_family,
    shared_constituent_violations,
)

print("=== the packing graph at a glance ===")
st = packing_graph_stats(8, 2, Fraction(1, 2))
print(f"2-subsets of 8 points, collide when sharing >= 1 element:")
print(f"  N = {st.N} vertices, common degree D = {st.D}")
print(f"  independence floor N/(D+1) = {st.N / (st.D + 1):.2f}")
fam = greedy_independent_set(8, 2, Fraction(1, 2))
print(f"  greedy finds {len(fam.blocks)} disjoint pairs: "
      f"{[b.elements() for b in fam.blocks]}")

print()
print("=== one level of the product construction ===")
fam, trace = construct_packing_traced(28, Fraction(1, 2))
rep = verify_packing(fam)
print(f"n=28, alpha=1/2: {len(fam.blocks)} blocks of size {fam.block_size}, "
      f"c = {fam.achieved_c}")
print(f"  prime q = {trace.q}, line coefficients {trace.coefficients}")
print(f"  {rep.summary()}")
print(f"  blocks sharing 2+ constituents: {shared_constituent_violations(trace)}")
print("  sample blocks:", [b.elements() for b in fam.blocks[:3]])

print()
print("=== two levels: the size squares ===")
fam, trace = construct_packing_traced(56, Fraction(1, 1))
print(f"n=56, alpha=1: level sizes "
      f"{trace.sub.size} -> {trace.size} (= {trace.q}^2, prime rounding of {trace.sub.size}^2)")
print(f"  verified: {verify_packing(fam).ok}")

print()
print("=== a large one-level family ===")
fam, trace = construct_packing_traced(2000, Fraction(1, 16))
print(f"n=2000 requested, {trace.used_n} used: {len(fam.blocks)} blocks "
      f"of size {fam.block_size}")
print(f"  max intersection allowed: < {fam.declared_alpha * fam.block_size}")

print()
print("=== no three invertible, every two invertible ===")
col = no_three_invertible_family(12, 3, residue_family(12, 3))
print(f"n=12, k=3 gives {col.m} half-size sets:")
for s in col.sets:
    print("  ", s.elements())
triple = decide_invertible(col)
print("whole triple invertible?", triple.invertible)
pair = decide_invertible(Collection(12, col.sets[:2]))
print("first pair invertible?", pair.invertible)
