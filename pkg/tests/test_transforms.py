import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisieve.oracle import naive_intersection, naive_parity
from trisieve.setcore import SetFunction
from trisieve.transforms import SupersetSums, intersection_transform, parity_transform

from conftest import random_setfunction


def rows(table):
    return [list(r) for r in table.values]


def test_examples_all_ones():
    f = SetFunction.constant(4, 2)
    t = intersection_transform(f, 1)
    assert t.at([0], 1) == 3
    assert t.at([0], 0) == 3
    p = parity_transform(f, 1)
    assert p.at([0], 0) == 3 and p.at([0], 1) == 3


def test_empty_index_set():
    f = SetFunction(5, 2, tuple(range(10)))
    assert intersection_transform(f, 0).at([], 0) == 45
    p = parity_transform(f, 0)
    assert (p.at([], 0), p.at([], 1)) == (45, 0)


def test_single_point_even_intersection():
    f = SetFunction.point(4, [0, 1], 5)
    p = parity_transform(f, 2)
    assert (p.at([0, 1], 0), p.at([0, 1], 1)) == (5, 0)


def test_range_errors():
    f = SetFunction.constant(3, 1)
    with pytest.raises(ValueError):
        intersection_transform(f, 4)
    with pytest.raises(ValueError):
        parity_transform(f, -1)


@pytest.mark.parametrize("n", range(1, 9))
def test_matches_naive(n, rng, kernel):
    for q in range(min(n, 3) + 1):
        f = random_setfunction(rng, n, q)
        sums = SupersetSums(f)
        for s in range(min(n, 4) + 1):
            assert rows(intersection_transform(f, s)) == naive_intersection(f, s)
            assert rows(parity_transform(f, s, sums=sums)) == naive_parity(f, s)


def test_row_sums_and_signed_difference(rng):
    from trisieve.setcore import subset_masks

    f = random_setfunction(rng, 7, 3)
    total = f.total()
    for s in range(5):
        it = intersection_transform(f, s)
        pt = parity_transform(f, s)
        for z, row, (p0, p1) in zip(subset_masks(7, s), it.values, pt.values):
            assert sum(row) == total
            signed = sum(v * (-1) ** bin(a & z).count("1") for a, v in f.items())
            assert p0 - p1 == signed


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.data())
def test_linearity(n, data):
    q = data.draw(st.integers(0, min(n, 3)))
    s = data.draw(st.integers(0, min(n, 4)))
    size = len(SetFunction.zeros(n, q).values)
    vals = st.lists(st.integers(-50, 50), min_size=size, max_size=size)
    f = SetFunction(n, q, tuple(data.draw(vals)))
    g = SetFunction(n, q, tuple(data.draw(vals)))
    lhs = rows(intersection_transform(f + g, s))
    a, b = rows(intersection_transform(f, s)), rows(intersection_transform(g, s))
    assert lhs == [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def test_column_access():
    f = SetFunction.constant(4, 2)
    t = intersection_transform(f, 2)
    assert t.column(2) == [1] * 6
    assert sum(t.column(1)) == 6 * 4
