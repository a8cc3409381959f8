import pytest
from hypothesis import given, settings, strategies as st

from segre_syzygies.errors import InvalidParameters, OutOfTheoremRange
from segre_syzygies.koszul import (BidegreeTable, KoszulEngine, betti_number, bidegree_table,
                                   block_bidegrees, closed_form_a2, closed_form_first_row,
                                   dual_position, euler_characteristic, full_betti_table,
                                   koszul_block, koszul_strand)
from segre_syzygies.linalg import GF, QQ, homology_dim
from segre_syzygies.cache import BlockCache
from segre_syzygies.rings import Bidegree, scroll, scroll_module, segre, segre_scroll


def test_strand_degree_one_generation():
    blocks = koszul_strand(segre(1, 1), 0, 1)
    assert sum(homology_dim(b.d_in, b.d_out) for b in blocks) == 0


@pytest.mark.parametrize("a,b,p,q", [(2, 2, 3, 1), (1, 3, 2, 2), (2, 3, 4, 1)])
def test_block_bidegrees_in_range(a, b, p, q):
    for u in block_bidegrees(segre(a, b), p, q):
        assert 0 <= u[0] <= (p + q) * a and 0 <= u[1] <= (p + q) * b


def test_blocks_are_complexes():
    for blk in koszul_strand(segre(2, 2), 2, 1):
        assert (blk.d_out @ blk.d_in).is_zero()


@pytest.mark.parametrize("alg,p,q,want", [
    (segre(3, 3), 11, 1, 22),
    (segre(3, 3), 12, 1, 0),
    (segre(2, 2), 5, 1, 20),
    (segre(1, 1), 1, 1, 1),
    (segre_scroll(3, 4), 14, 1, 14 * 16),
])
def test_betti_examples(alg, p, q, want):
    assert betti_number(alg, p, q) == want


def test_scroll_first_row_formula():
    # the scroll P^a x P^1 has kappa_{p,1} = p C(f, p+1)
    from math import comb
    for e in [(1, 2), (2, 2), (1, 1, 2)]:
        f = sum(e)
        for p in range(1, f):
            assert betti_number(scroll(e), p, 1) == p * comb(f, p + 1)


def test_cross_table():
    t = bidegree_table(segre(3, 3), 11, 1)
    assert t.total == 22
    assert t.entries[(18, 18)] == 2
    assert all(d == 1 for u, d in t.entries.items() if u != (18, 18))
    assert all(18 in u for u in t.entries)


def test_single_row_at_the_end():
    t = bidegree_table(segre(3, 4), 15, 1)
    assert sorted(t.entries.values()) == [1] * 15
    # constant u1: one row of the rotated grid
    assert len({u[0] for u in t.entries}) == 1


def test_two_two_table():
    t = bidegree_table(segre(2, 2), 5, 1)
    assert t.total == 20 and t.entries[(6, 6)] == 4


def test_full_tables():
    t = full_betti_table(segre(2, 2))
    for (p, q), k in t.entries.items():
        assert k == closed_form_a2(2, p, q)
    t11 = full_betti_table(segre(1, 1))
    assert t11[(1, 1)] == 1
    assert all(t11[(p, q)] == 0 for p in range(2, t11.max_p + 1) for q in (1, 2))
    for alg in (segre(1, 2), segre(2, 3)):
        t = full_betti_table(alg, max_p=3)
        assert t.row(0)[0] == 1 and not any(t.row(0)[1:])


def test_closed_forms():
    assert closed_form_first_row(3, 3, 11) == 22
    assert closed_form_first_row(3, 4, 14) == 238
    assert closed_form_first_row(3, 4, 15) == 15
    assert closed_form_a2(2, 5, 1) == 20
    assert closed_form_a2(2, 1, 2) == 0
    assert closed_form_a2(3, 8, 2) == 9
    assert betti_number(segre(2, 3), 8, 2) == 9
    with pytest.raises(OutOfTheoremRange):
        closed_form_first_row(2, 3, 10)
    with pytest.raises(OutOfTheoremRange):
        closed_form_first_row(3, 3, 10)


ROUTE_CASES = [(segre(1, 2), 2, 1), (segre(2, 2), 3, 1), (segre(2, 2), 5, 2),
               (segre(2, 3), 4, 1), (segre(1, 3), 3, 2), (scroll((1, 2)), 1, 1),
               (scroll_module((2, 2), 1), 2, 1), (segre_scroll(2, 2), 3, 1)]


@pytest.mark.parametrize("alg,p,q", ROUTE_CASES)
def test_routes_agree(alg, p, q):
    methods = ["direct", "euler"] + (["dual"] if alg.canonical_module() is not None else [])
    tables = [bidegree_table(alg, p, q, method=m).entries for m in methods]
    assert all(t == tables[0] for t in tables)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 2), st.integers(1, 3), st.integers(0, 6), st.integers(0, 3))
def test_direct_and_dual_agree(a, b, p, q):
    if a > b:
        a, b = b, a
    alg = segre(a, b)
    if p > alg.num_generators - alg.krull_dim:
        return
    assert (bidegree_table(alg, p, q, method="direct").entries
            == bidegree_table(alg, p, q, method="dual").entries)


@pytest.mark.parametrize("a,b", [(1, 2), (2, 3)])
def test_swap_symmetry(a, b):
    for p in range(1, 6):
        t1 = bidegree_table(segre(a, b), p, 1)
        t2 = bidegree_table(segre(b, a), p, 1)
        assert t1.entries == {Bidegree(u[1], u[0]): d for u, d in t2.entries.items()}


@pytest.mark.parametrize("a,b,n", [(1, 2, 3), (2, 2, 4), (2, 2, 6)])
def test_euler_characteristic(a, b, n):
    alg = segre(a, b)
    eng = KoszulEngine()
    chi = {}
    for p in range(n + 1):
        for u, d in eng.bidegree_table(alg, p, n - p, method="direct").entries.items():
            chi[u] = chi.get(u, 0) + (-1) ** p * d
    for u in set(chi) | set(block_bidegrees(alg, 0, n)):
        assert chi.get(u, 0) == euler_characteristic(alg, n, u)


def test_rational_field_agrees():
    for p in range(1, 6):
        assert betti_number(segre(2, 2), p, 1, QQ) == betti_number(segre(2, 2), p, 1, GF(101))


def test_dual_position():
    omega, pp, qq, s = dual_position(segre(2, 2), 5, 1)
    assert (pp, qq) == (6 - 5, 3 - 1) and s == (9, 9)
    assert omega.dim(1) == 1


def test_threads_and_cache_give_the_same_table(tmp_path):
    alg = segre(2, 3)
    plain = KoszulEngine().bidegree_table(alg, 6, 1)
    threaded = KoszulEngine(threads=3).bidegree_table(alg, 6, 1)
    cache = BlockCache(tmp_path)
    cold = KoszulEngine(cache=cache).bidegree_table(alg, 6, 1)
    n = len(cache)
    warm = KoszulEngine(cache=BlockCache(tmp_path)).bidegree_table(alg, 6, 1)
    assert n > 0 and len(BlockCache(tmp_path)) == n
    assert plain == threaded == cold == warm


def test_engine_validation():
    with pytest.raises(InvalidParameters):
        KoszulEngine(threads=0)
    with pytest.raises(InvalidParameters):
        bidegree_table(segre(2, 2), -1, 1)
    with pytest.raises(InvalidParameters):
        bidegree_table(segre(2, 2), 2, 1, method="guess")


def test_shape_of_known_tables():
    for a, b in [(1, 1), (2, 2), (1, 3)]:
        assert full_betti_table(segre(a, b)).shape_violations() == []


def test_bidegree_table_json_blocks_sorted():
    t = BidegreeTable(1, 1, {Bidegree(2, 1): 3, Bidegree(1, 5): 1})
    assert [b["bidegree"] for b in t.blocks()] == [[1, 5], [2, 1]]
    assert t.total == 4


def test_block_matches_engine():
    alg = segre(2, 2)
    eng = KoszulEngine()
    for u in block_bidegrees(alg, 4, 1):
        blk = koszul_block(alg, 4, 1, u)
        assert homology_dim(blk.d_in, blk.d_out) == eng.block_result(alg, 4, 1, u).homology
