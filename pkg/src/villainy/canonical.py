"""Canonical forms and isomorph-free enumeration of small graphs.

The canonical form is the smallest graph6 string over all labelings reachable
by degree-seeded partition refinement followed by individualization of one
vertex at a time. Every labeling considered is defined from the graph
structure alone, so the minimum is a relabeling invariant.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterator, Optional

from .graph import Graph, _popcount
from .graph6 import emit_graph6, parse_graph6

MAX_CANONICAL_ORDER = 10
MAX_ENUMERATION_ORDER = 8


class CanonicalOrderError(ValueError):
    pass


class EnumerationBoundError(ValueError):
    pass


def _refine(adj: tuple[int, ...], cells: list[list[int]]) -> list[list[int]]:
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        out: list[list[int]] = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                sig = tuple(_popcount(adj[v] & m) for m in masks)
                groups.setdefault(sig, []).append(v)
            if len(groups) > 1:
                changed = True
            out.extend(groups[sig] for sig in sorted(groups))
        cells = out
        if not changed:
            return cells


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    # order[i] = vertex receiving label i; bits follow graph6 column order
    code = 0
    for j in range(1, len(order)):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def _twins(adj: tuple[int, ...], u: int, w: int) -> bool:
    return adj[u] & ~(1 << w) == adj[w] & ~(1 << u)


def canonical_labeling(g: Graph) -> list[int]:
    """Return ``perm`` with ``g.relabel(perm)`` equal to the canonical representative."""
    if g.n > MAX_CANONICAL_ORDER:
        raise CanonicalOrderError(
            f"canonical forms are supported up to n={MAX_CANONICAL_ORDER}, got n={g.n}")
    adj = g.adj
    by_degree: dict[int, list[int]] = {}
    for v in range(g.n):
        by_degree.setdefault(_popcount(adj[v]), []).append(v)
    start = [by_degree[d] for d in sorted(by_degree)]

    best_code: Optional[int] = None
    best_order: list[int] = []

    def search(cells: list[list[int]]) -> None:
        nonlocal best_code, best_order
        cells = _refine(adj, cells)
        for idx, cell in enumerate(cells):
            if len(cell) > 1:
                break
        else:
            order = [cell[0] for cell in cells]
            code = _code(adj, order)
            if best_code is None or code < best_code:
                best_code, best_order = code, order
            return
        tried: list[int] = []
        for v in cell:
            if any(_twins(adj, v, t) for t in tried):
                continue
            tried.append(v)
            rest = [u for u in cell if u != v]
            search(cells[:idx] + [[v], rest] + cells[idx + 1:])

    search(start)
    perm = [0] * g.n
    for label, v in enumerate(best_order):
        perm[v] = label
    return perm


def canonical_graph(g: Graph) -> Graph:
    return g.relabel(canonical_labeling(g))


def canonical_form(g: Graph) -> bytes:
    """Opaque comparable key; equal exactly when two graphs are isomorphic."""
    return emit_graph6(canonical_graph(g)).encode("ascii")


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.num_edges() == h.num_edges() and canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def _level(n: int) -> tuple[Graph, ...]:
    if n == 1:
        return (Graph.empty(1),)
    seen: dict[bytes, Graph] = {}
    for base in _level(n - 1):
        for nbrs in range(1 << (n - 1)):
            rows = list(base.adj) + [nbrs]
            for u in range(n - 1):
                if nbrs >> u & 1:
                    rows[u] |= 1 << (n - 1)
            key = canonical_form(Graph(n, tuple(rows)))
            if key not in seen:
                seen[key] = parse_graph6(key.decode("ascii"))
    return tuple(seen[key] for key in sorted(seen))


def enumerate_nonisomorphic(
    n: int, predicate: Optional[Callable[[Graph], bool]] = None
) -> Iterator[Graph]:
    """Yield one canonical representative per isomorphism class of order ``n``.

    Representatives come out sorted by canonical form, and each one is already
    in canonical labeling (its graph6 string is its canonical form).
    """
    if n < 1:
        raise EnumerationBoundError("order must be at least 1")
    if n > MAX_ENUMERATION_ORDER:
        raise EnumerationBoundError(
            f"enumeration is limited to n <= {MAX_ENUMERATION_ORDER}; "
            "for larger orders generate graphs externally and pass a graph6 file with --input")
    for g in _level(n):
        if predicate is None or predicate(g):
            yield g
