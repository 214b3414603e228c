from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from trisieve.setcore import (
    InvalidSubsetError,
    SetFunction,
    ShapeError,
    j_support,
    members,
    rank_index,
    rank_subset,
    subset_masks,
    symmetric_difference,
    to_mask,
    unrank_subset,
)


def test_rank_examples():
    assert rank_subset([0, 1], 4) == 0
    assert rank_subset([1, 3], 4) == 4
    assert rank_subset([2, 3], 4) == 5
    assert rank_subset([], 3) == 0


def test_rank_independent_of_universe():
    for n in range(4, 10):
        assert rank_subset([1, 3], n) == 4


def test_rank_rejects_bad_subsets():
    with pytest.raises(InvalidSubsetError):
        rank_subset([0, 0], 3)
    with pytest.raises(InvalidSubsetError):
        rank_subset([0, 5], 4)


def test_unrank_out_of_range():
    with pytest.raises(IndexError):
        unrank_subset(comb(5, 2), 5, 2)
    with pytest.raises(IndexError):
        unrank_subset(-1, 5, 2)


@given(st.integers(1, 12).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))).flatmap(
    lambda nq: st.tuples(st.just(nq[0]), st.just(nq[1]), st.integers(0, comb(nq[0], nq[1]) - 1))
))
def test_rank_unrank_roundtrip(nqr):
    n, q, r = nqr
    sub = unrank_subset(r, n, q)
    assert sub == sorted(sub) and len(set(sub)) == q
    assert rank_subset(sub, n) == r


def test_colex_is_numeric_order():
    for n in range(1, 8):
        for q in range(n + 1):
            masks = subset_masks(n, q)
            assert list(masks) == sorted(masks)
            assert len(masks) == comb(n, q)
            assert [rank_subset(m, n) for m in masks] == list(range(len(masks)))
            assert rank_index(n, q) == {m: i for i, m in enumerate(masks)}


def test_subset_masks_empty_when_q_exceeds_n():
    assert subset_masks(3, 4) == ()


def test_symmetric_difference_and_support():
    assert symmetric_difference([0, 1], [1, 2]) == [0, 2]
    assert j_support(2) == [0, 2, 4, 6]
    assert j_support(1) == [1, 3]
    assert j_support(0) == [0]


def test_mask_helpers():
    assert to_mask([0, 2]) == 5
    assert members(5) == [0, 2]
    with pytest.raises(InvalidSubsetError):
        to_mask([1, 1])
    with pytest.raises(InvalidSubsetError):
        to_mask([3], 3)


def test_setfunction_shape_checked():
    with pytest.raises(ShapeError):
        SetFunction(4, 2, (1, 2, 3))
    with pytest.raises(ValueError):
        SetFunction(0, 0, (1,))
    with pytest.raises(ValueError):
        SetFunction(65, 0, (1,))


def test_setfunction_lookup_and_builders():
    f = SetFunction.from_mapping(4, 2, {(0, 3): 7, frozenset({1, 2}): -2})
    assert f[[0, 3]] == 7
    assert f[{1, 2}] == -2
    assert f[[0, 1]] == 0
    assert f.total() == 5
    with pytest.raises(InvalidSubsetError):
        f[[0]]
    with pytest.raises(InvalidSubsetError):
        SetFunction.from_mapping(4, 2, {(0,): 1})
    p = SetFunction.point(5, [1, 4], 3)
    assert p.q == 2 and p[[1, 4]] == 3 and p.total() == 3
    assert (f + f)[[0, 3]] == 14
    assert SetFunction.constant(4, 2, 2).total() == 12
    assert SetFunction.zeros(3, 1).values == (0, 0, 0)


def test_setfunction_q_zero():
    f = SetFunction(3, 0, (9,))
    assert f[[]] == 9
    assert list(f.items()) == [(0, 9)]


def test_add_requires_same_shape():
    with pytest.raises(ShapeError):
        SetFunction.zeros(3, 1) + SetFunction.zeros(4, 1)


def test_unrank_and_xor_examples():
    assert rank_subset([], 5) == 0
    assert unrank_subset(0, 5, 0) == []
    assert unrank_subset(0, 4, 2) == [0, 1]
    assert unrank_subset(4, 4, 2) == [1, 3]
    assert symmetric_difference([0, 1], [0, 1]) == []
    assert symmetric_difference([0, 1], [2, 3]) == [0, 1, 2, 3]
