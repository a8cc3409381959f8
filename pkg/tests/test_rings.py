import itertools

import pytest

from segre_syzygies.errors import BothModuleElements, InvalidParameters
from segre_syzygies.rings import (Bidegree, ScrollBasisElement, SegreBasisElement,
                                  generator_bidegree, scroll, scroll_invariants, scroll_module,
                                  scroll_multiply, scroll_projection, segre, segre_graded_basis,
                                  segre_multiply, segre_scroll)


def test_segre_basis_sizes():
    assert len(segre_graded_basis(1, 1, 1)) == 4
    assert len(segre_graded_basis(3, 3, 0)) == 1
    assert len(segre_graded_basis(3, 4, 2)) == 63


@pytest.mark.parametrize("a,b", [(0, 1), (2, 1), (-1, 3)])
def test_segre_rejects_bad_ab(a, b):
    with pytest.raises(InvalidParameters):
        segre_graded_basis(a, b, 1)


def test_segre_multiply():
    a, b = 3, 4
    assert segre_multiply(SegreBasisElement(1, 0, 0), SegreBasisElement(1, a, b)) == (2, a, b)
    x = SegreBasisElement(2, 1, 3)
    assert segre_multiply(SegreBasisElement(0, 0, 0), x) == x
    assert segre_multiply(SegreBasisElement(1, 1, 0), SegreBasisElement(1, 0, 1)) == (2, 1, 1)


def test_scroll_multiply():
    x = ScrollBasisElement((1,), 0, 1)
    y = ScrollBasisElement((1,), 0, 2)
    assert scroll_multiply(x, y) == ScrollBasisElement((1, 1), 0, 3)
    unit = ScrollBasisElement((), 0, 0)
    z = ScrollBasisElement((2,), 1, 4)
    assert scroll_multiply(unit, z) == z
    inv = scroll_invariants((2, 3, 3))
    prod = scroll_multiply(ScrollBasisElement((1,), 0, 0), ScrollBasisElement((2,), 0, 3))
    assert prod == ScrollBasisElement((1, 2), 0, 3)
    assert prod.j <= inv.e_of(1) + inv.e_of(2)


def test_two_module_elements_rejected():
    with pytest.raises(BothModuleElements):
        scroll_multiply(ScrollBasisElement((1,), 1, 0), ScrollBasisElement((1,), 2, 0))


def test_scroll_projection():
    a, b, n = 3, 3, 4
    assert scroll_projection(ScrollBasisElement((0,) * n, 0, 2), a, b) == (n, 0, 2)
    assert scroll_projection(ScrollBasisElement((1, 2), 0, 5), a, b) == (2, 3, 5)
    deg1 = {scroll_projection(ScrollBasisElement((i,), 0, j), a, b)
            for i in range(a + 1) for j in range(b + 1)}
    assert deg1 == set(segre_graded_basis(a, b, 1))


def test_generator_bidegrees():
    assert generator_bidegree(segre(3, 3), (0, 0)) == (0, 0)
    assert generator_bidegree(segre(3, 4), (3, 4)) == (3, 4)
    R = segre_scroll(3, 4)
    for g in R.generators:
        assert generator_bidegree(R, g) == R.generator_bidegree(g)
    assert sorted(R.generator_bidegrees) == sorted(segre(3, 4).generator_bidegrees)


@pytest.mark.parametrize("a,b,n", [(1, 1, 3), (2, 3, 2), (3, 3, 2)])
def test_segre_ring_hilbert_function(a, b, n):
    assert segre(a, b).dim(n) == (n * a + 1) * (n * b + 1)


@pytest.mark.parametrize("e,c,n", [((1, 2), 0, 3), ((2, 3, 3), 1, 2), ((1, 1, 1), 4, 2)])
def test_scroll_module_hilbert_function(e, c, n):
    # one b_{I,c,j} per multiset I and 0 <= j <= e_I + c
    inv = scroll_invariants(e)
    want = sum(sum(inv.e_of(i) for i in idx) + c + 1
               for idx in itertools.combinations_with_replacement(inv.labels, n))
    assert scroll_module(e, c).dim(n) == want


def test_scroll_ring_surjects_on_segre():
    # the degree-n map R_bbar -> R_{a,b} is onto
    a, b = 2, 3
    R, S = segre_scroll(a, b), segre(a, b)
    for n in range(4):
        assert R.dim(n) >= S.dim(n)


def test_multiplication_is_associative_and_commutative():
    for alg in (segre(2, 3), scroll((1, 2)), scroll_module((2, 2), 2)):
        gens = alg.generators
        for key in alg.basis(1):
            for g, h in itertools.product(gens[:4], gens[-3:]):
                assert alg.multiply(g, alg.multiply(h, key)) == alg.multiply(h, alg.multiply(g, key))


def test_key_bidegree_is_additive():
    alg = segre(2, 3)
    for key in alg.basis(2):
        for g in alg.generators:
            assert alg.key_bidegree(alg.multiply(g, key)) == alg.key_bidegree(key) + alg.generator_bidegree(g)


def test_canonical_module_is_interior():
    om = segre(2, 2).canonical_module()
    # interior points of the dilated rectangle: (n a - 1)(n b - 1) in degree n
    assert [om.dim(n) for n in range(4)] == [0, 1, 9, 25]


def test_bidegree_arithmetic():
    assert Bidegree(1, 2) + (3, 4) == (4, 6)
    assert Bidegree(1, 2) - (1, 1) == (0, 1)


def test_scroll_generator_matches_projection():
    a, b = 3, 4
    R = segre_scroll(a, b)
    for i in range(a + 1):
        for j in range(b + 1):
            img = scroll_projection(ScrollBasisElement((i,), 0, j), a, b)
            assert generator_bidegree(R, (i, j)) == img.bidegree == (i, j)
