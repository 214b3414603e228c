import pytest

from trisieve import io
from trisieve.subgraph import Graph, PathDecomposition


def test_setfunction_roundtrip(rng):
    from conftest import random_setfunction

    f = random_setfunction(rng, 6, 2)
    assert io.parse_setfunction(io.format_setfunction(f)) == f


def test_setfunction_sparse_and_comments():
    text = "# weights\nsetfn n=4 q=2\n0,3: 5   # one entry\n\n1,2: -1\n"
    f = io.parse_setfunction(text)
    assert f[[0, 3]] == 5 and f[[1, 2]] == -1 and f.total() == 4


def test_setfunction_q_zero():
    assert io.parse_setfunction("setfn n=3 q=0\n: 7\n").values == (7,)


@pytest.mark.parametrize(
    "text,line,fragment",
    [
        ("", 1, "empty file"),
        ("setfn n=3\n", 1, "missing q"),
        ("family n=3 s=1\n", 1, "expected header"),
        ("setfn n=3 q=1\n0: 1\n1 1\n", 3, "expected 'e1"),
        ("setfn n=3 q=1\n0,1: 1\n", 2, "does not have 1"),
        ("setfn n=3 q=2\n0,0: 1\n", 2, "repeated"),
        ("setfn n=3 q=1\n5: 1\n", 2, "outside"),
        ("setfn n=3 q=1\n1: x\n", 2, "not an integer"),
        ("setfn n=3 q=1\n1: 1\n1: 2\n", 3, "twice"),
        ("setfn n=3 q=1 z\n", 1, "bad header"),
    ],
)
def test_setfunction_errors(text, line, fragment):
    with pytest.raises(io.ParseError) as err:
        io.parse_setfunction(text, "f.txt")
    assert err.value.line == line and fragment in str(err.value)
    assert str(err.value).startswith(f"f.txt:{line}:")


def test_family_parse():
    fam = io.parse_family("family n=4 s=2\n0,1\n2,3\n")
    assert fam.as_sets() == [[0, 1], [2, 3]]
    with pytest.raises(io.ParseError) as err:
        io.parse_family("family n=4 s=2\n0,1\n1,0\n")
    assert err.value.line == 3
    with pytest.raises(io.ParseError):
        io.parse_family("family n=4 s=2\n0,4\n")


def test_graph_roundtrip_and_errors():
    g = Graph(4, ((0, 1), (2, 3)))
    assert io.parse_graph(io.format_graph(g)) == g
    for text, line in (("graph n=3\n0 0\n", 2), ("graph n=3\n0 1\n1 0\n", 3), ("graph n=3\n0 7\n", 2), ("graph n=3\n0\n", 2)):
        with pytest.raises(io.ParseError) as err:
            io.parse_graph(text)
        assert err.value.line == line


def test_decomposition_roundtrip():
    pd = PathDecomposition((frozenset({0, 1}), frozenset({1, 2})))
    assert io.parse_decomposition(io.format_decomposition(pd)) == pd
    with pytest.raises(io.ParseError):
        io.parse_decomposition("bags\n0,1\n")


def test_read_missing_file(tmp_path):
    with pytest.raises(io.ParseError):
        io.read(tmp_path / "nope.txt", io.parse_graph)
