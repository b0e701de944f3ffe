"""Exact counting of simple permutations and a derandomized inverting search.

A simple permutation consists of floor(n/2) disjoint 2-cycles (one fixed
point remains when n is odd).  Averaging over that class yields a lower
bound on the maximum number of collection members a single permutation
can invert; the greedy search below fixes one 2-cycle at a time by exact
conditional expectation, so the bound is met constructively on every
input.

Everything here counts in exact integers and rationals: factorials
overflow any fixed width around n = 21, and the greedy's tie-breaking
must never depend on floating-point rounding.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import ceil, comb, factorial
from typing import Iterator, Mapping

from .setcore import Collection, Permutation, inverts

DEFAULT_EXHAUSTIVE_LIMIT = 8


def sigma(n: int) -> int:
    """Number of simple permutations of n points: n! / (2^floor(n/2) floor(n/2)!)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    h = n // 2
    return factorial(n) // ((1 << h) * factorial(h))


def lambda_simple(n: int, i: int) -> int:
    """Number of simple permutations of n points inverting a fixed i-subset.

    (n-i)! / (2^(floor(n/2)-i) (floor(n/2)-i)!); zero when i > floor(n/2)
    (no permutation can move that many points off the set).  The count is
    the same for every i-subset by symmetry.
    """
    if n < 0 or i < 0:
        raise ValueError("n and i must be non-negative")
    h = n // 2
    if i > h:
        return 0
    return factorial(n - i) // ((1 << (h - i)) * factorial(h - i))


@dataclass(frozen=True)
class SizeProfile:
    """Ground size n plus counts[i-1] = number of sets of cardinality i,
    for i = 1 .. floor(n/2).  Larger sets can never be inverted and must
    be accounted for separately by the caller."""

    n: int
    counts: tuple[int, ...]

    def __post_init__(self):
        if len(self.counts) != self.n // 2:
            raise ValueError("counts must cover exactly i = 1 .. floor(n/2)")
        if any(m < 0 for m in self.counts):
            raise ValueError("counts must be non-negative")

    @classmethod
    def of(cls, n: int, m: Mapping[int, int]) -> "SizeProfile":
        h = n // 2
        for i in m:
            if not 1 <= i <= h:
                raise ValueError(f"cardinality {i} outside 1 .. floor(n/2) = {h}")
        return cls(n, tuple(m.get(i, 0) for i in range(1, h + 1)))

    @classmethod
    def from_collection(cls, c: Collection) -> "SizeProfile":
        """Profile of c; empty and over-half-size sets are dropped."""
        h = c.n // 2
        counts = [0] * h
        for s in c.sets:
            k = s.cardinality()
            if 1 <= k <= h:
                counts[k - 1] += 1
        return cls(c.n, tuple(counts))

    @classmethod
    def full(cls, n: int) -> "SizeProfile":
        """m_i = C(n, i): one set of every admissible nonempty cardinality."""
        return cls(n, tuple(comb(n, i) for i in range(1, n // 2 + 1)))


def oversized_count(c: Collection) -> int:
    """Sets with more than floor(n/2) elements; never invertible (pigeonhole)."""
    return sum(1 for s in c.sets if s.cardinality() > c.n // 2)


def kappa_lower_bound(p: SizeProfile) -> Fraction:
    """Average number of sets inverted by a uniform simple permutation:
    sum_i m_i * lambda_simple(n, i) / sigma(n), exactly."""
    num = sum(m * lambda_simple(p.n, i) for i, m in enumerate(p.counts, start=1))
    return Fraction(num, sigma(p.n))


def simple_permutations(n: int) -> Iterator[Permutation]:
    """All simple permutations of [0, n), in a fixed deterministic order.

    The lowest free point is paired with each larger free point in turn
    (or left fixed, when the remaining count is odd).
    """
    image = list(range(n))

    def rec(free: list[int]) -> Iterator[Permutation]:
        if not free:
            yield Permutation(n, tuple(image), is_simple=True)
            return
        a = free[0]
        for idx in range(1, len(free)):
            b = free[idx]
            image[a], image[b] = b, a
            yield from rec(free[1:idx] + free[idx + 1 :])
            image[a], image[b] = a, b
        if len(free) % 2 == 1:
            yield from rec(free[1:])

    yield from rec(list(range(n)))


def exhaustive_kappa(
    c: Collection, simple_only: bool, limit: int = DEFAULT_EXHAUSTIVE_LIMIT
) -> tuple[Permutation, int]:
    """Maximize the inverted-set count by enumeration (testing oracle).

    Returns the first maximizer in enumeration order; n is capped.
    """
    if c.n > limit:
        raise ValueError(f"n={c.n} exceeds exhaustive limit {limit}")
    if simple_only:
        candidates: Iterator[Permutation] = simple_permutations(c.n)
    else:
        candidates = (Permutation(c.n, img) for img in permutations(range(c.n)))
    best: Permutation | None = None
    best_count = -1
    for p in candidates:
        count = sum(1 for s in c.sets if inverts(p, s))
        if count > best_count:
            best, best_count = p, count
    assert best is not None, "at least the identity arrangement exists"
    return best, best_count


_FIXED = -1  # virtual partner: anchor stays a fixed point


def find_simple_permutation(c: Collection) -> tuple[Permutation, int]:
    """Simple permutation inverting at least ceil(kappa_lower_bound) sets.

    Derandomizes the averaging argument by conditional expectation.  At
    each step the lowest-index free element a is paired with the partner b
    (or, when the free count is odd, left as the single fixed point)
    maximizing the expected number of sets inverted by a uniformly random
    completion.  With u live elements of a set S among f free points, the
    completion inverts S with probability lambda_simple(f, u) / sigma(f);
    a set dies once a chosen 2-cycle lies inside it, or the fixed point
    lands in it.  Branch expectations share the denominator sigma(f'), so
    candidates compare by integer numerator alone and the choice is exact.

    The chosen branch's expectation never drops below the pre-branch
    expectation (the branches partition the uniform measure); this is
    asserted at every step, which makes the returned count >= the ceiling
    of the profile bound unconditionally.
    """
    n = c.n
    lam = [[lambda_simple(f, u) for u in range(f + 1)] for f in range(n + 1)]
    sig = [sigma(f) for f in range(n + 1)]

    set_bits = [s.bits for s in c.sets]
    alive = [True] * len(set_bits)
    ucount = [s.cardinality() for s in c.sets]

    free = list(range(n))
    image = list(range(n))

    def branch_numerator(a_in: list[bool], b: int, f2: int) -> int:
        num = 0
        if b == _FIXED:
            for t in range(len(set_bits)):
                if alive[t] and not a_in[t]:
                    num += lam[f2][ucount[t]]
        else:
            for t, bits in enumerate(set_bits):
                if not alive[t]:
                    continue
                b_in = (bits >> b) & 1
                if a_in[t] and b_in:
                    continue  # 2-cycle inside the set: dead
                num += lam[f2][ucount[t] - a_in[t] - b_in]
        return num

    while free:
        f = len(free)
        pre_num = sum(lam[f][u] for t, u in enumerate(ucount) if alive[t])
        a = free[0]
        a_in = [bool((bits >> a) & 1) for bits in set_bits]

        best_b = None
        best_num = -1
        best_f2 = f - 2
        for b in free[1:]:
            num = branch_numerator(a_in, b, f - 2)
            if num > best_num:
                best_b, best_num = b, num
        if f % 2 == 1:
            num = branch_numerator(a_in, _FIXED, f - 1)
            # different denominator: compare num/sig[f-1] with best/sig[f-2]
            if best_b is None or num * sig[f - 2] > best_num * sig[f - 1]:
                best_b, best_num, best_f2 = _FIXED, num, f - 1

        assert best_b is not None
        # conditional expectation may only rise: best/sig[f2] >= pre/sig[f]
        assert best_num * sig[f] >= pre_num * sig[best_f2], "greedy step lost expectation"

        if best_b == _FIXED:
            for t, bits in enumerate(set_bits):
                if alive[t] and a_in[t]:
                    alive[t] = False
            free = free[1:]
        else:
            image[a], image[best_b] = best_b, a
            for t, bits in enumerate(set_bits):
                if not alive[t]:
                    continue
                b_in = (bits >> best_b) & 1
                if a_in[t] and b_in:
                    alive[t] = False
                else:
                    ucount[t] -= a_in[t] + b_in
            free = [x for x in free[1:] if x != best_b]

    perm = Permutation(n, tuple(image), is_simple=True)
    count = sum(1 for s in c.sets if inverts(perm, s))
    bound = kappa_lower_bound(SizeProfile.from_collection(c))
    assert count >= ceil(bound), "derandomization guarantee violated"
    return perm, count
