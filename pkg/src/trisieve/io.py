"""Plain-text formats for set functions, set families, graphs and path decompositions.

Every format starts with a header line; blank lines and ``#`` comments are
ignored.  Errors carry the file name and 1-based line number.
"""

from __future__ import annotations

import re
from pathlib import Path

from .packing import SetFamily
from .setcore import InvalidSubsetError, SetFunction, ShapeError, members
from .subgraph import Graph, PathDecomposition


class ParseError(ValueError):
    def __init__(self, source: str, line: int, message: str):
        super().__init__(f"{source}:{line}: {message}")
        self.source = source
        self.line = line


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line


def _header(lines, source: str, word: str, keys: tuple[str, ...]) -> dict[str, int]:
    try:
        no, line = next(lines)
    except StopIteration:
        raise ParseError(source, 1, f"empty file, expected '{word}' header") from None
    parts = line.split()
    if parts[0] != word:
        raise ParseError(source, no, f"expected header starting with '{word}', got {parts[0]!r}")
    found = {}
    for tok in parts[1:]:
        m = re.fullmatch(r"(\w+)=(-?\d+)", tok)
        if not m:
            raise ParseError(source, no, f"bad header field {tok!r}")
        found[m.group(1)] = int(m.group(2))
    missing = [k for k in keys if k not in found]
    if missing:
        raise ParseError(source, no, f"header missing {', '.join(missing)}")
    return found


def _int_list(text: str, source: str, no: int) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ParseError(source, no, f"expected comma-separated integers, got {text!r}") from None


def parse_setfunction(text: str, source: str = "<string>") -> SetFunction:
    lines = _lines(text)
    hdr = _header(lines, source, "setfn", ("n", "q"))
    n, q = hdr["n"], hdr["q"]
    entries = {}
    for no, line in lines:
        if ":" not in line:
            raise ParseError(source, no, "expected 'e1,...,eq: value'")
        key, val = line.rsplit(":", 1)
        elems = _int_list(key, source, no)
        if len(elems) != q:
            raise ParseError(source, no, f"subset {elems} does not have {q} elements")
        try:
            value = int(val)
        except ValueError:
            raise ParseError(source, no, f"value {val.strip()!r} is not an integer") from None
        k = frozenset(elems)
        if len(k) != q:
            raise ParseError(source, no, f"repeated element in {elems}")
        if any(not 0 <= e < n for e in elems):
            raise ParseError(source, no, f"subset {elems} outside universe of size {n}")
        if k in entries:
            raise ParseError(source, no, f"subset {sorted(k)} listed twice")
        entries[k] = value
    try:
        return SetFunction.from_mapping(n, q, entries)
    except (InvalidSubsetError, ShapeError, ValueError) as exc:
        raise ParseError(source, 1, str(exc)) from None


def format_setfunction(f: SetFunction) -> str:
    out = [f"setfn n={f.n} q={f.q}"]
    for mask, v in f.items():
        if v:
            out.append(f"{','.join(map(str, members(mask)))}: {v}")
    return "\n".join(out) + "\n"


def parse_family(text: str, source: str = "<string>") -> SetFamily:
    lines = _lines(text)
    hdr = _header(lines, source, "family", ("n", "s"))
    n, s = hdr["n"], hdr["s"]
    sets = []
    for no, line in lines:
        elems = _int_list(line, source, no)
        if len(elems) != s or len(set(elems)) != s:
            raise ParseError(source, no, f"member {elems} does not have {s} distinct elements")
        if any(not 0 <= e < n for e in elems):
            raise ParseError(source, no, f"member {elems} outside universe of size {n}")
        if frozenset(elems) in map(frozenset, sets):
            raise ParseError(source, no, f"member {sorted(elems)} listed twice")
        sets.append(elems)
    try:
        return SetFamily.from_sets(n, s, sets)
    except ValueError as exc:
        raise ParseError(source, 1, str(exc)) from None


def parse_graph(text: str, source: str = "<string>") -> Graph:
    lines = _lines(text)
    n = _header(lines, source, "graph", ("n",))["n"]
    if n < 0:
        raise ParseError(source, 1, "vertex count must be nonnegative")
    edges = []
    seen = set()
    for no, line in lines:
        parts = line.split()
        try:
            u, v = (int(p) for p in parts)
        except ValueError:
            raise ParseError(source, no, f"expected 'u v', got {line!r}") from None
        if u == v:
            raise ParseError(source, no, f"self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(source, no, f"edge ({u}, {v}) outside {n} vertices")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(source, no, f"duplicate edge {e}")
        seen.add(e)
        edges.append(e)
    return Graph(n, tuple(edges))


def format_graph(g: Graph) -> str:
    return "\n".join([f"graph n={g.n}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def parse_decomposition(text: str, source: str = "<string>") -> PathDecomposition:
    lines = _lines(text)
    try:
        no, line = next(lines)
    except StopIteration:
        raise ParseError(source, 1, "empty file, expected 'pathdecomp' header") from None
    if line.split()[0] != "pathdecomp":
        raise ParseError(source, no, f"expected 'pathdecomp' header, got {line!r}")
    bags = []
    for no, line in lines:
        bag = _int_list(line, source, no)
        if not bag:
            raise ParseError(source, no, "empty bag")
        bags.append(frozenset(bag))
    return PathDecomposition(tuple(bags))


def format_decomposition(pd: PathDecomposition) -> str:
    return "\n".join(["pathdecomp"] + [",".join(map(str, sorted(b))) for b in pd.bags]) + "\n"


def read(path, parser):
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(str(p), 0, exc.strerror or str(exc)) from None
    return parser(text, str(p))
