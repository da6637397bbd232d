"""graph6 short-form codec (orders 1..62) and graph6 file reading."""

from __future__ import annotations

from pathlib import Path
from typing import Iterator

from .graph import Graph

MAX_G6_ORDER = 62


class Graph6Error(ValueError):
    """Base class for graph6 decoding and encoding failures."""


class EmptyInputError(Graph6Error):
    pass


class OrderRangeError(Graph6Error):
    pass


class PayloadLengthError(Graph6Error):
    pass


class PaddingError(Graph6Error):
    pass


class InvalidByteError(Graph6Error):
    pass


def _payload_length(n: int) -> int:
    return (n * (n - 1) // 2 + 5) // 6


def parse_graph6(text: str | bytes) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise EmptyInputError("empty graph6 input")
    for pos, ch in enumerate(text):
        if not 63 <= ord(ch) <= 126:
            raise InvalidByteError(f"byte {ord(ch)} at position {pos} is outside 63..126")
    n = ord(text[0]) - 63
    if not 1 <= n <= MAX_G6_ORDER:
        raise OrderRangeError(f"order field {n} outside supported range 1..{MAX_G6_ORDER}")
    payload = text[1:]
    expected = _payload_length(n)
    if len(payload) != expected:
        raise PayloadLengthError(f"order {n} needs {expected} payload bytes, got {len(payload)}")

    stream = 0
    for ch in payload:
        stream = stream << 6 | (ord(ch) - 63)
    nbits = n * (n - 1) // 2
    pad = 6 * expected - nbits
    if stream & ((1 << pad) - 1):
        raise PaddingError("nonzero padding bits")
    stream >>= pad

    rows = [0] * n
    pos = nbits - 1
    for v in range(1, n):
        for u in range(v):
            if stream >> pos & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            pos -= 1
    return Graph(n, tuple(rows))


def emit_graph6(g: Graph) -> str:
    if not 1 <= g.n <= MAX_G6_ORDER:
        raise OrderRangeError(f"order {g.n} outside supported range 1..{MAX_G6_ORDER}")
    out = [chr(63 + g.n)]
    acc = nacc = 0
    for v in range(1, g.n):
        row = g.adj[v]
        for u in range(v):
            acc = acc << 1 | (row >> u & 1)
            nacc += 1
            if nacc == 6:
                out.append(chr(63 + acc))
                acc = nacc = 0
    if nacc:
        out.append(chr(63 + (acc << (6 - nacc))))
    return "".join(out)


def read_graph6_lines(lines) -> Iterator[Graph]:
    """Decode newline-separated graph6 records, skipping blanks and ``#`` comments."""
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield parse_graph6(line)


def read_graph6_file(path: str | Path) -> list[Graph]:
    with open(path, encoding="ascii", errors="replace") as fh:
        return list(read_graph6_lines(fh))
