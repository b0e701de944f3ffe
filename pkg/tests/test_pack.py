import random
from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from setpack import (
    Collection,
    PackingFamily,
    check_triple,
    construct_packing,
    decide_invertible,
    greedy_independent_set,
    packing_graph_stats,
    verify_packing,
)
from setpack.pack import (
    construct_packing_traced,
    no_three_invertible_family,
    parse_family,
    residue_family,
    serialize_family,
    shared_constituent_violations,
)


def brute_force_packing_graph(n, cn_size, alpha):
    """Build the whole graph explicitly; returns (vertex count, degree list)."""
    verts = [sum(1 << x for x in cmb) for cmb in combinations(range(n), cn_size)]
    deg = []
    for v in verts:
        d = sum(
            1
            for w in verts
            if w != v and Fraction((v & w).bit_count()) >= alpha * cn_size
        )
        deg.append(d)
    return len(verts), deg


def test_stats_against_explicit_graph():
    st = packing_graph_stats(8, 2, Fraction(1, 2))
    assert (st.N, st.D) == (28, 12)
    n_verts, degs = brute_force_packing_graph(8, 2, Fraction(1, 2))
    assert n_verts == 28
    assert set(degs) == {12}  # vertex-transitive: one common degree

    for n, s, alpha in [(6, 3, Fraction(1, 3)), (7, 3, Fraction(2, 3)), (6, 2, Fraction(1, 2))]:
        st = packing_graph_stats(n, s, alpha)
        n_verts, degs = brute_force_packing_graph(n, s, alpha)
        assert st.N == n_verts
        assert set(degs) == {st.D}, (n, s, alpha)


def test_stats_edge_cases():
    assert packing_graph_stats(4, 2, Fraction(1)).D == 0
    # threshold above the block size: nothing is adjacent
    assert packing_graph_stats(6, 2, Fraction(1, 1)).D == 0
    with pytest.raises(ValueError):
        packing_graph_stats(4, 0, Fraction(1, 2))
    with pytest.raises(ValueError):
        packing_graph_stats(4, 2, Fraction(3, 2))


def test_degree_summands_decrease_geometrically():
    # for alpha > c the degree-sum terms drop by at least the fixed factor
    # q = alpha(1-2c+alpha*c) / (c(1-alpha)^2) > 1 past the first index
    from math import ceil

    for n in (20, 40, 60):
        for c_num, alpha in [(2, Fraction(1, 2)), (3, Fraction(2, 3)), (1, Fraction(1, 4))]:
            cn = n * c_num // 10
            c = Fraction(cn, n)
            assert alpha > c
            q = alpha * (1 - 2 * c + alpha * c) / (c * (1 - alpha) ** 2)
            assert q > 1
            for i in range(ceil(alpha * cn), cn):
                term = comb(cn, i) * comb(n - cn, cn - i)
                nxt = comb(cn, i + 1) * comb(n - cn, cn - i - 1)
                assert Fraction(term) > q * nxt, (n, cn, alpha, i)


def test_verify_packing():
    fam = PackingFamily.of(6, [[0, 1], [2, 3], [4, 5]], Fraction(1, 2))
    rep = verify_packing(fam)
    assert rep.ok and rep.max_intersection == 0 and rep.pairs_checked == 3

    dup = PackingFamily.of(6, [[0, 1], [0, 1]], Fraction(1, 2))
    rep = verify_packing(dup)
    assert not rep.ok and not rep.distinct

    singletons = PackingFamily.of(5, [[0], [2], [4]], Fraction(1, 10))
    assert verify_packing(singletons).ok

    crossing = PackingFamily.of(6, [[0, 1, 2], [0, 1, 3]], Fraction(1, 3))
    rep = verify_packing(crossing)
    assert not rep.ok and rep.max_intersection == 2


def test_construct_base_case():
    fam = construct_packing(4, Fraction(1, 1))
    assert len(fam.blocks) == 4
    assert all(b.cardinality() == 1 for b in fam.blocks)


def test_construct_49_blocks():
    fam, trace = construct_packing_traced(28, Fraction(1, 2))
    assert fam.n == 28
    assert len(fam.blocks) == 49
    assert fam.block_size == 4
    assert fam.achieved_c == Fraction(1, 7)
    rep = verify_packing(fam)
    assert rep.ok and rep.max_intersection == 1
    assert trace.q == 7 and trace.coefficients == (2, 3)
    assert shared_constituent_violations(trace) == 0
    # exhaustive structural cross-check: no two blocks share 2+ sub-blocks
    for t1, t2 in combinations(trace.constituents, 2):
        assert sum(1 for a, b in zip(t1, t2) if a == b) <= 1


def test_construct_two_levels_squares_size():
    # family size squares per level, up to prime rounding
    fam, trace = construct_packing_traced(56, Fraction(1, 1))
    sub = trace.sub
    assert sub.size == 49
    assert trace.size == 47**2  # largest prime <= 49
    assert trace.size <= sub.size**2
    assert verify_packing(fam).ok
    assert shared_constituent_violations(trace) == 0


def test_construct_truncates_to_feasible_n():
    fam, trace = construct_packing_traced(30, Fraction(1, 2))
    assert fam.n == 28  # 4 parts of 7
    assert verify_packing(fam).ok


def test_construct_fallback_without_usable_prime():
    # parts of size 2 leave no prime above 2k: the sub-family is returned
    fam, trace = construct_packing_traced(10, Fraction(1, 2))
    assert trace.fallback
    assert all(b.cardinality() == 1 for b in fam.blocks)
    assert verify_packing(fam).ok


def test_construct_rejects_bad_alpha():
    with pytest.raises(ValueError):
        construct_packing(10, Fraction(2, 3))
    with pytest.raises(ValueError):
        construct_packing(0, Fraction(1, 2))


def test_greedy_examples():
    fam = greedy_independent_set(8, 2, Fraction(1, 2))
    assert [b.elements() for b in fam.blocks] == [[0, 1], [2, 3], [4, 5], [6, 7]]
    st = packing_graph_stats(8, 2, Fraction(1, 2))
    assert len(fam.blocks) * (st.D + 1) >= st.N

    fam = greedy_independent_set(6, 3, Fraction(1, 3))
    assert len(fam.blocks) == 2  # only disjoint triples qualify

    fam = greedy_independent_set(5, 2, Fraction(3, 2))
    assert len(fam.blocks) == comb(5, 2)  # threshold above size: keep all

    with pytest.raises(ValueError):
        greedy_independent_set(40, 20, Fraction(1, 2), budget=1000)


def test_greedy_result_is_maximal_packing():
    rng = random.Random(15)
    for _ in range(20):
        n = rng.randint(4, 10)
        s = rng.randint(1, n // 2)
        alpha = Fraction(rng.randint(1, s), s)
        fam = greedy_independent_set(n, s, alpha)
        assert verify_packing(fam).ok
        kept = {b.bits for b in fam.blocks}
        # maximality: every rejected subset collides with a kept one
        for cmb in combinations(range(n), s):
            bits = sum(1 << x for x in cmb)
            if bits in kept:
                continue
            assert any(
                Fraction((bits & b).bit_count()) >= alpha * s for b in kept
            )


def test_no_three_family_example():
    rs = PackingFamily.of(12, [[3, 4, 5], [6, 7, 8], [9, 10, 11]], Fraction(1, 3))
    col = no_three_invertible_family(12, 3, rs)
    assert col.m == 3
    assert all(s.cardinality() == 6 for s in col.sets)
    assert col.sets[0].elements() == [0, 1, 2, 3, 4, 5]
    # triple fails both the condition and real invertibility
    assert not check_triple(col)
    assert not decide_invertible(col).invertible
    for i, j in combinations(range(3), 2):
        pair = Collection(12, (col.sets[i], col.sets[j]))
        assert decide_invertible(pair).invertible


def test_no_three_family_validation():
    rs = PackingFamily.of(12, [[3, 4, 5], [5, 6, 7]], Fraction(1, 3))
    with pytest.raises(ValueError):
        no_three_invertible_family(12, 3, rs)  # intersection 1 >= k/3
    rs = PackingFamily.of(12, [[0, 4, 5], [6, 7, 8]], Fraction(1, 3))
    with pytest.raises(ValueError):
        no_three_invertible_family(12, 3, rs)  # intrudes into the core
    rs = PackingFamily.of(12, [[3, 4, 5], [6, 7, 8]], Fraction(1, 3))
    col = no_three_invertible_family(12, 3, rs)  # two sets: vacuous triples
    assert col.m == 2


def test_residue_family_default():
    rs = residue_family(12, 3)
    assert [b.elements() for b in rs.blocks] == [[3, 4, 5], [6, 7, 8], [9, 10, 11]]
    col = no_three_invertible_family(12, 3, rs)
    assert col.m == 3


def test_family_serialization_roundtrip():
    fam = construct_packing(28, Fraction(1, 2))
    text = serialize_family(fam)
    back = parse_family(text)
    assert back.n == fam.n
    assert back.blocks == fam.blocks
    assert back.declared_alpha == fam.declared_alpha
    # explicit alpha overrides the header
    loose = parse_family(text, Fraction(3, 4))
    assert loose.declared_alpha == Fraction(3, 4)
