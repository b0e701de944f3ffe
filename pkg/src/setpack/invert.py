"""Deciding invertibility of a set collection by bipartite matching.

A permutation pi inverts a set S when pi(S) and S are disjoint; a
collection is invertible when one permutation inverts every member at
once.  Invertibility is equivalent to a perfect matching in the conflict
graph: two copies of the ground set, with (i, j) an edge iff no member
set contains both i and j.  A perfect matching read as i -> match[i] is
exactly an inverting permutation, and a failed matching yields a Hall
violator certificate (a left set I with |N(I)| < |I|).

Adjacency is kept as bit vectors so the dense conflict graphs scan a
whole neighbourhood per word; the matching itself is a layered
(Hopcroft-Karp style) augmenting-path search.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .setcore import Collection, Permutation, Subset, inverts, iter_bits

DEFAULT_BRUTE_LIMIT = 8


@dataclass(frozen=True)
class ConflictGraph:
    """Bipartite graph on two copies of [0, n); adjacency[i] = allowed partners."""

    n: int
    adjacency: tuple[Subset, ...]

    def __post_init__(self):
        if len(self.adjacency) != self.n:
            raise ValueError("adjacency must list one row per left vertex")

    def degree(self, i: int) -> int:
        return self.adjacency[i].cardinality()


@dataclass(frozen=True)
class MatchingResult:
    """Either a perfect matching as a Permutation or a Hall violator."""

    matched: Permutation | None
    certificate: Subset | None

    def __post_init__(self):
        if (self.matched is None) == (self.certificate is None):
            raise ValueError("exactly one of matched/certificate must be present")

    @property
    def invertible(self) -> bool:
        return self.matched is not None


def conflict_graph(c: Collection) -> ConflictGraph:
    """adjacency[i] = V minus the union of all member sets containing i."""
    full = (1 << c.n) - 1
    blocked = [0] * c.n
    for s in c.sets:
        for i in iter_bits(s.bits):
            blocked[i] |= s.bits
    rows = tuple(Subset(c.n, full & ~blocked[i]) for i in range(c.n))
    return ConflictGraph(c.n, rows)


def max_bipartite_matching(adj: Sequence[int], n_right: int) -> tuple[list[int], list[int]]:
    """Maximum matching for bitmask adjacency rows; returns (match_l, match_r).

    Layered phases: a BFS from the free left vertices fixes the shortest
    augmenting length, then depth-first searches augment along strictly
    layer-increasing edges only.  Unmatched entries are -1.
    """
    n_left = len(adj)
    match_l = [-1] * n_left
    match_r = [-1] * n_right
    INF = n_left + n_right + 1
    dist = [INF] * n_left

    def bfs() -> int | None:
        queue: deque[int] = deque()
        for u in range(n_left):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        shortest = INF
        while queue:
            u = queue.popleft()
            if dist[u] >= shortest:
                continue
            for j in iter_bits(adj[u]):
                w = match_r[j]
                if w == -1:
                    shortest = min(shortest, dist[u] + 1)
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return None if shortest == INF else shortest

    def dfs(u: int, shortest: int) -> bool:
        for j in iter_bits(adj[u]):
            w = match_r[j]
            if w == -1:
                if dist[u] + 1 != shortest:
                    continue
            elif dist[w] != dist[u] + 1 or not dfs(w, shortest):
                continue
            match_l[u] = j
            match_r[j] = u
            return True
        dist[u] = INF
        return False

    while True:
        shortest = bfs()
        if shortest is None:
            break
        for u in range(n_left):
            if match_l[u] == -1:
                dfs(u, shortest)
    return match_l, match_r


def _hall_violator(adj: Sequence[int], match_l: list[int], match_r: list[int], start: int) -> int:
    """Left vertices alternating-reachable from the unmatched vertex ``start``.

    Every right neighbour of the returned set is matched (else an
    augmenting path existed), and matched back inside it, so the set has
    exactly |I| - 1 neighbours.
    """
    left = 1 << start
    right_seen = 0
    frontier = [start]
    while frontier:
        reach = 0
        for u in frontier:
            reach |= adj[u]
        reach &= ~right_seen
        right_seen |= reach
        frontier = []
        for j in iter_bits(reach):
            w = match_r[j]
            assert w != -1, "free right vertex reachable from a free left vertex"
            if not (left >> w) & 1:
                left |= 1 << w
                frontier.append(w)
    return left


def maximum_matching(g: ConflictGraph) -> MatchingResult:
    """Perfect matching as a Permutation, or a deterministic Hall violator.

    The certificate is grown from the lowest-index unmatched left vertex.
    """
    adj = [row.bits for row in g.adjacency]
    match_l, match_r = max_bipartite_matching(adj, g.n)
    unmatched = [u for u in range(g.n) if match_l[u] == -1]
    if not unmatched:
        return MatchingResult(Permutation(g.n, tuple(match_l)), None)
    violator = _hall_violator(adj, match_l, match_r, unmatched[0])
    neighbourhood = 0
    for u in iter_bits(violator):
        neighbourhood |= adj[u]
    assert neighbourhood.bit_count() < violator.bit_count()
    return MatchingResult(None, Subset(g.n, violator))


def decide_invertible(c: Collection) -> MatchingResult:
    """Decide invertibility; a returned permutation is re-verified on every set."""
    result = maximum_matching(conflict_graph(c))
    if result.matched is not None:
        for i, s in enumerate(c.sets):
            if not inverts(result.matched, s):
                raise RuntimeError(
                    f"matching postcondition violated: permutation fails set {i}"
                )
    return result


def brute_force_invertible(c: Collection, limit: int = DEFAULT_BRUTE_LIMIT) -> Permutation | None:
    """Lexicographically first permutation inverting every set, or None.

    Enumerates image arrays in lexicographic order, abandoning a prefix as
    soon as some assigned point x has pi(x) in a common set with x (no
    completion can repair that).  Testing oracle; n is capped.
    """
    n = c.n
    if n > limit:
        raise ValueError(f"n={n} exceeds brute-force limit {limit}")
    set_bits = [s.bits for s in c.sets]
    image = [-1] * n

    def extend(x: int, used: int) -> bool:
        if x == n:
            return True
        for y in range(n):
            if (used >> y) & 1:
                continue
            if any((b >> x) & 1 and (b >> y) & 1 for b in set_bits):
                continue
            image[x] = y
            if extend(x + 1, used | (1 << y)):
                return True
        image[x] = -1
        return False

    if extend(0, 0):
        return Permutation(n, tuple(image))
    return None


def check_disjoint_criterion(c: Collection) -> bool:
    """For pairwise disjoint sets: invertible iff every |S_i| <= n/2."""
    seen = 0
    for i, s in enumerate(c.sets):
        if seen & s.bits:
            raise ValueError(f"set {i} overlaps an earlier set; criterion needs disjoint sets")
        seen |= s.bits
    return all(2 * s.cardinality() <= c.n for s in c.sets)


def triple_intersection_sizes(c: Collection) -> tuple[int, int]:
    """(|S1^S2^S3|, |~S1^~S2^~S3|) for a three-set collection."""
    if len(c.sets) != 3:
        raise ValueError("exactly three sets required")
    full = (1 << c.n) - 1
    a = (c.sets[0].bits & c.sets[1].bits & c.sets[2].bits).bit_count()
    b = (full & ~c.sets[0].bits & ~c.sets[1].bits & ~c.sets[2].bits).bit_count()
    return a, b


def check_triple(c: Collection) -> bool:
    """Invertibility condition for three equal-size sets: with
    a = |S1^S2^S3| and b = |~S1^~S2^~S3|, require a <= b <= a + (3/2)(n - 2k).

    The right inequality is compared as 2b <= 2a + 3(n - 2k) so odd n - 2k
    never leaves the integers.
    """
    k = c.sets[0].cardinality() if c.sets else 0
    if len(c.sets) != 3:
        raise ValueError("condition applies to exactly three sets")
    if any(s.cardinality() != k for s in c.sets):
        raise ValueError("condition applies to equal-cardinality sets")
    a, b = triple_intersection_sizes(c)
    return a <= b and 2 * b <= 2 * a + 3 * (c.n - 2 * k)


def membership_signatures(c: Collection) -> dict[int, int]:
    """Map each m-bit membership signature to the number of elements carrying it.

    Bit i of the signature is set when the element lies in c.sets[i]; at
    most n signatures are populated regardless of 2^m.
    """
    counts: dict[int, int] = {}
    for x in range(c.n):
        sig = 0
        for i, s in enumerate(c.sets):
            if (s.bits >> x) & 1:
                sig |= 1 << i
        counts[sig] = counts.get(sig, 0) + 1
    return counts


def check_halfsize_conditions(c: Collection) -> bool:
    """For n = 2k and all sets of size exactly k: invertible iff the sizes of
    complementary membership atoms agree (signature s and ~s equal counts)."""
    if c.n % 2:
        raise ValueError("ground set must have even size")
    k = c.n // 2
    if any(s.cardinality() != k for s in c.sets):
        raise ValueError("every set must have cardinality n/2")
    counts = membership_signatures(c)
    full = (1 << len(c.sets)) - 1
    return all(counts.get(full ^ sig, 0) == cnt for sig, cnt in counts.items())


def all_pairs_invertible(n: int, max_size: int | None = None) -> bool:
    """Exhaustively confirm that any two sets of size <= n/2 are invertible.

    Test helper for the half-size pair property; quadratic in the number
    of admissible subsets, so keep n small.
    """
    cap = n // 2 if max_size is None else max_size
    admissible = []
    for size in range(cap + 1):
        admissible.extend(
            sum(1 << x for x in combo) for combo in combinations(range(n), size)
        )
    for b1, b2 in combinations(admissible, 2):
        c = Collection(n, (Subset(n, b1), Subset(n, b2)))
        if not decide_invertible(c).invertible:
            return False
    return True
