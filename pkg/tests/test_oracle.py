from itertools import combinations

import pytest

from trisieve.oracle import (
    as_dict,
    brute_automorphisms,
    brute_delta,
    brute_injective_homs,
    brute_packing_count,
    brute_subgraph_count,
    brute_tuple_counts,
    brute_xj,
)
from trisieve.setcore import ScopeError, SetFunction, ShapeError


def test_delta_examples():
    ones = SetFunction.constant(3, 1)
    assert brute_delta(ones, ones, ones) == 6
    f = SetFunction.constant(5, 2)
    assert brute_delta(f, f, f) == 0
    a, b, c = SetFunction.point(6, [0], 2), SetFunction.point(6, [3], 5), SetFunction.point(6, [4], -1)
    assert brute_delta(a, b, c) == -10
    with pytest.raises(ShapeError):
        brute_delta(ones, ones, SetFunction.constant(4, 1))


def test_xj_examples():
    ones2 = SetFunction.constant(2, 1)
    assert brute_xj(ones2, ones2, ones2) == {1: 8, 3: 0}
    ones3 = SetFunction.constant(3, 1)
    x = brute_xj(ones3, ones3, ones3)
    assert x == {1: 21, 3: 6} and sum(x.values()) == 27


def test_xj_total_is_product_of_sums(rng):
    from conftest import triple

    f, g, h = triple(rng, 6, 2)
    assert sum(brute_xj(f, g, h).values()) == f.total() * g.total() * h.total()


def test_as_dict_colex():
    f = SetFunction(4, 2, tuple(range(6)))
    d = as_dict(f)
    assert d[frozenset({0, 1})] == 0 and d[frozenset({1, 3})] == 4


def test_packing_examples():
    assert brute_packing_count([[0], [1], [2]], 3) == 6
    assert brute_packing_count(list(combinations(range(6), 2)), 3) == 90
    assert brute_packing_count(list(combinations(range(5), 2)), 3) == 0


def test_subgraph_examples():
    k3 = list(combinations(range(3), 2))
    k4 = list(combinations(range(4), 2))
    assert brute_subgraph_count(3, [(0, 1), (1, 2)], 3, k3) == 3
    assert brute_subgraph_count(3, k3, 4, k4) == 4
    assert brute_subgraph_count(4, [(0, 1), (2, 3)], 4, k4) == 3


def test_automorphism_and_homs():
    assert brute_automorphisms(3, [(0, 1), (1, 2)]) == 2
    assert brute_automorphisms(4, [(0, 1), (2, 3)]) == 8
    assert brute_injective_homs([0, 1], [(0, 1)], range(3), [(0, 1), (1, 2), (0, 2)]) == 6
    assert brute_injective_homs([0, 1], [(0, 1)], range(3), [(0, 1)], {0: 2}) == 0


def test_tuple_counts():
    assert brute_tuple_counts(3, 0) == {0: 1}
    assert brute_tuple_counts(3, 2) == {0: 3, 2: 6}


def test_scope_guards():
    with pytest.raises(ScopeError):
        brute_subgraph_count(9, [], 10, [])
    with pytest.raises(ScopeError):
        brute_packing_count([[i] for i in range(100)], 4)
    with pytest.raises(ScopeError):
        brute_tuple_counts(10, 8)


def test_oracle_module_is_independent():
    import ast
    import inspect

    import trisieve.oracle as mod

    tree = ast.parse(inspect.getsource(mod))
    imported = {n.module for n in ast.walk(tree) if isinstance(n, ast.ImportFrom)}
    assert imported <= {"__future__", "itertools", "setcore"}
