"""Exact chromatic number and enumeration of proper colorings.

Colorings are plain tuples ``c`` with ``c[v]`` in ``0..k-1``. Multiplicity
vectors are tuples of per-color counts; profiles are multiplicity vectors
sorted nonincreasing (color labels forgotten).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Optional, Sequence

import numpy as np

from .graph import Graph, bits


def multiplicities(coloring: Sequence[int], k: int) -> tuple[int, ...]:
    counts = [0] * k
    for col in coloring:
        counts[col] += 1
    return tuple(counts)


def profile(coloring: Sequence[int], k: int) -> tuple[int, ...]:
    return tuple(sorted(multiplicities(coloring, k), reverse=True))


def greedy_clique(g: Graph) -> int:
    """Size of a clique grown greedily from each vertex; a lower bound on chi."""
    best = 1
    for s in range(g.n):
        clique, cand = 1, g.adj[s]
        while cand:
            v = max(bits(cand), key=lambda u: (bin(g.adj[u] & cand).count("1"), -u))
            clique += 1
            cand &= g.adj[v]
        best = max(best, clique)
    return best


def dsatur_greedy(g: Graph) -> list[int]:
    colors = [-1] * g.n
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if colors[u] < 0),
            key=lambda u: (len({colors[w] for w in bits(g.adj[u]) if colors[w] >= 0}), g.degree(u), -u),
        )
        used = {colors[w] for w in bits(g.adj[v])}
        col = 0
        while col in used:
            col += 1
        colors[v] = col
    return colors


def _colorable(g: Graph, k: int) -> bool:
    colors = [-1] * g.n
    # per-vertex bitmask of colors already taken by neighbours
    forbidden = [0] * g.n
    degrees = g.degrees()

    def pick() -> int:
        best, key = -1, None
        for u in range(g.n):
            if colors[u] < 0:
                cand = (bin(forbidden[u]).count("1"), degrees[u], -u)
                if key is None or cand > key:
                    best, key = u, cand
        return best

    def backtrack(done: int, used: int) -> bool:
        if done == g.n:
            return True
        v = pick()
        # a fresh color is interchangeable with any other fresh one
        for col in range(min(k, used + 1)):
            if forbidden[v] >> col & 1:
                continue
            colors[v] = col
            touched = []
            for u in bits(g.adj[v]):
                if colors[u] < 0 and not forbidden[u] >> col & 1:
                    forbidden[u] |= 1 << col
                    touched.append(u)
            if backtrack(done + 1, max(used, col + 1)):
                return True
            for u in touched:
                forbidden[u] &= ~(1 << col)
            colors[v] = -1
        return False

    return backtrack(0, 0)


@lru_cache(maxsize=4096)
def chromatic_number(g: Graph) -> int:
    lower = greedy_clique(g)
    upper = max(dsatur_greedy(g)) + 1
    for k in range(lower, upper):
        if _colorable(g, k):
            return k
    return upper


def enumerate_proper_colorings(
    g: Graph, k: int, m: Optional[Sequence[int]] = None
) -> Iterator[tuple[int, ...]]:
    """Yield every proper coloring over palette ``0..k-1`` in lexicographic order.

    With ``m`` given, only colorings in which color ``i`` is used exactly
    ``m[i]`` times are produced. An infeasible request yields nothing.
    """
    if k < 1:
        raise ValueError("palette size must be positive")
    if m is not None:
        if len(m) != k or sum(m) != g.n or min(m) < 0:
            return
        budget = list(m)
    coloring = [0] * g.n

    def extend(v: int) -> Iterator[tuple[int, ...]]:
        if v == g.n:
            yield tuple(coloring)
            return
        earlier = g.adj[v] & ((1 << v) - 1)
        taken = {coloring[u] for u in bits(earlier)}
        for col in range(k):
            if col in taken:
                continue
            if m is not None:
                if not budget[col]:
                    continue
                budget[col] -= 1
            coloring[v] = col
            yield from extend(v + 1)
            if m is not None:
                budget[col] += 1

    yield from extend(0)


def coloring_array(g: Graph, k: int, m: Optional[Sequence[int]] = None) -> np.ndarray:
    """All proper colorings as a ``(count, n)`` int8 array, rows in lexicographic order."""
    rows = list(enumerate_proper_colorings(g, k, None if m is None else tuple(m)))
    if not rows:
        return np.zeros((0, g.n), dtype=np.int8)
    return np.array(rows, dtype=np.int8)


def _profiles(g: Graph, k: int) -> frozenset[tuple[int, ...]]:
    found: set[tuple[int, ...]] = set()
    coloring = [0] * g.n
    counts = [0] * k

    def extend(v: int, used: int) -> None:
        if v == g.n:
            if used == k:
                found.add(tuple(sorted(counts, reverse=True)))
            return
        # not enough vertices left to open the missing colors
        if k - used > g.n - v:
            return
        earlier = g.adj[v] & ((1 << v) - 1)
        taken = {coloring[u] for u in bits(earlier)}
        for col in range(min(k, used + 1)):
            if col in taken:
                continue
            coloring[v] = col
            counts[col] += 1
            extend(v + 1, max(used, col + 1))
            counts[col] -= 1

    extend(0, 0)
    return frozenset(found)


@lru_cache(maxsize=4096)
def feasible_multiplicities(g: Graph) -> frozenset[tuple[int, ...]]:
    """Sorted class-size profiles realized by proper colorings with exactly chi colors."""
    return _profiles(g, chromatic_number(g))
