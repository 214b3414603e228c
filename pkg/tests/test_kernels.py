import os
import subprocess
import sys

import pytest

from trisieve import _pykernels, kernels
from trisieve.selftest import random_setfunction
from trisieve.setcore import subset_masks
from trisieve.transforms import intersection_transform

native = pytest.mark.skipif(not kernels.native_available(), reason="compiled kernels not built")


def test_select_and_restore():
    before = kernels.active()
    with kernels.using("python"):
        assert kernels.active() == "python"
    assert kernels.active() == before
    with pytest.raises(ValueError):
        kernels.select("gpu")


@native
def test_native_matches_python(rng):
    from trisieve import _ckernels

    a = [rng.randint(-99, 99) for _ in range(6 * 5)]
    b = [rng.randint(-99, 99) for _ in range(5 * 4)]
    assert list(_ckernels.matmul(a, b, 6, 5, 4)) == list(_pykernels.matmul(a, b, 6, 5, 4))
    f = random_setfunction(rng, 9, 3)
    masks = subset_masks(9, 3)
    for w in range(4):
        down_c = _ckernels.scatter_down(masks, f.values, w, 9)
        down_p = _pykernels.scatter_down(masks, f.values, w, 9)
        assert list(down_c) == list(down_p)
        big = subset_masks(9, 4)
        assert list(_ckernels.gather_up(down_p, big, w, 9)) == list(_pykernels.gather_up(down_p, big, w, 9))


@native
def test_overflow_falls_back_to_python(rng):
    huge = 2**62
    a = [huge, huge]
    b = [huge, huge]
    from trisieve import _ckernels

    with pytest.raises(OverflowError):
        _ckernels.matmul(a, b, 1, 2, 1)
    with kernels.using("native"):
        assert list(kernels.matmul(a, b, 1, 2, 1)) == [2 * huge * huge]


@native
def test_transform_tables_agree_across_kernels(rng):
    f = random_setfunction(rng, 10, 3, -10**12, 10**12)
    out = {}
    for kind in ("native", "python"):
        with kernels.using(kind):
            out[kind] = [intersection_transform(f, s).values for s in range(5)]
    assert out["native"] == out["python"]


def test_pure_environment_variable():
    env = dict(os.environ, TRISIEVE_PURE="1")
    code = "from trisieve import kernels; print(kernels.active())"
    proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert proc.stdout.strip() == "python"
