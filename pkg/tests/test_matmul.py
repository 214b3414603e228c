import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trisieve.matmul import BACKENDS, IntMatrix, matmul
from trisieve.setcore import ShapeError


def rand_matrix(rng, r, c, lo=-99, hi=99):
    return IntMatrix(r, c, tuple(rng.randint(lo, hi) for _ in range(r * c)))


def test_small_example():
    a = IntMatrix.from_rows([[1, 2], [3, 4]])
    b = IntMatrix.from_rows([[5, 6], [7, 8]])
    for be in BACKENDS:
        assert matmul(a, b, be).to_rows() == [[19, 22], [43, 50]]


def test_identity_and_transpose(rng):
    a = rand_matrix(rng, 5, 3)
    assert matmul(IntMatrix.identity(5), a) == a
    assert a.transpose().transpose() == a
    assert a.transpose()[2, 4] == a[4, 2]


def test_shape_mismatch():
    with pytest.raises(ShapeError):
        matmul(IntMatrix.identity(2), IntMatrix.identity(3))
    with pytest.raises(ValueError):
        matmul(IntMatrix.identity(2), IntMatrix.identity(2), "fast")
    with pytest.raises(ShapeError):
        IntMatrix(2, 2, (1, 2, 3))


@pytest.mark.parametrize("shape", [(7, 3, 7), (1, 1, 1), (0, 3, 2), (3, 0, 4), (65, 70, 67), (4, 300, 5), (130, 2, 129)])
def test_backends_agree(shape, rng, kernel):
    r, m, c = shape
    a, b = rand_matrix(rng, r, m), rand_matrix(rng, m, c)
    ref = matmul(a, b, "naive")
    for be in BACKENDS:
        assert matmul(a, b, be) == ref


def test_big_integers_exact(kernel):
    big = 2**70
    a = IntMatrix.from_rows([[big, 1], [1, big]])
    b = IntMatrix.from_rows([[big, -1], [3, big]])
    want = [[big * big + 3, 0], [big + 3 * big, big * big - 1]]
    for be in BACKENDS:
        assert matmul(a, b, be).to_rows() == want


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 9), st.integers(1, 9), st.integers(1, 9), st.randoms(use_true_random=False))
def test_strassen_random(r, m, c, rnd):
    a, b = rand_matrix(rnd, r, m), rand_matrix(rnd, m, c)
    assert matmul(a, b, "strassen") == matmul(a, b, "naive")
