"""graph6 and edge-list readers/writers.

Edge-list format: a header line ``V E`` (optionally ``V E C`` with C free
circles) followed by E lines ``u v`` with 0-based vertex ids; a loop is
``u u``.  Several graphs may follow each other in one file.  Lines starting
with ``#`` and blank lines are ignored.
"""
from __future__ import annotations

from typing import Iterator

from .graph import MultiGraph


class ParseError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


# ------------------------------------------------------------------- graph6

def _n_to_graph6(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: MultiGraph) -> str:
    if not g.is_simple():
        raise ValueError("graph6 encodes simple graphs only")
    adj = set()
    for u, v in g.edges:
        adj.add((min(u, v), max(u, v)))
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if (i, j) in adj else 0)
    bits += [0] * (-len(bits) % 6)
    body = bytes(63 + int("".join(map(str, bits[k:k + 6])), 2) for k in range(0, len(bits), 6))
    return (_n_to_graph6(g.n) + body).decode("ascii")


def from_graph6(s: str, line: int = 1) -> MultiGraph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = s.encode("ascii")
    if not data or any(b < 63 or b > 126 for b in data):
        raise ParseError("invalid graph6 characters", line)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) > 1 and data[1] != 126:
        if len(data) < 4:
            raise ParseError("truncated graph6 size field", line)
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        if len(data) < 8:
            raise ParseError("truncated graph6 size field", line)
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        pos = 8
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {need}", line)
    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return MultiGraph(n, tuple(edges))


def read_graph6(text: str) -> Iterator[MultiGraph]:
    for ln, raw in enumerate(text.splitlines(), 1):
        if raw.strip() and not raw.startswith("#"):
            yield from_graph6(raw, ln)


# ----------------------------------------------------------------- edge list

def to_edgelist(g: MultiGraph) -> str:
    head = f"{g.n} {g.E}" + (f" {g.free_circles}" if g.free_circles else "")
    return "\n".join([head] + [f"{u} {v}" for u, v in g.edges]) + "\n"


def _ints(tokens, ln):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", ln) from None


def read_edgelist(text: str) -> Iterator[MultiGraph]:
    lines = [(ln, raw.split()) for ln, raw in enumerate(text.splitlines(), 1)
             if raw.strip() and not raw.lstrip().startswith("#")]
    i = 0
    while i < len(lines):
        ln, tok = lines[i]
        if len(tok) not in (2, 3):
            raise ParseError("header must be 'V E' or 'V E C'", ln)
        vals = _ints(tok, ln)
        n, m = vals[0], vals[1]
        circles = vals[2] if len(vals) == 3 else 0
        if n < 0 or m < 0 or circles < 0:
            raise ParseError("negative count in header", ln)
        edges = []
        for k in range(m):
            if i + 1 + k >= len(lines):
                raise ParseError(f"expected {m} edge lines, found {k}", ln)
            eln, etok = lines[i + 1 + k]
            if len(etok) != 2:
                raise ParseError("edge line must be 'u v'", eln)
            u, v = _ints(etok, eln)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex out of range 0..{n - 1}", eln)
            edges.append((u, v))
        yield MultiGraph(n, tuple(edges), circles)
        i += 1 + m


def read_graphs(text: str, fmt: str) -> list:
    if fmt == "graph6":
        return list(read_graph6(text))
    if fmt == "edgelist":
        return list(read_edgelist(text))
    raise ValueError(f"unknown format {fmt!r}")


def sniff_format(text: str) -> str:
    first = next((l for l in text.splitlines() if l.strip() and not l.startswith("#")), "")
    return "edgelist" if all(t.lstrip("-").isdigit() for t in first.split()) else "graph6"
