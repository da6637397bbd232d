from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .graph import Graph, bits


@dataclass(frozen=True)
class StructureReport:
    components: tuple[tuple[int, ...], ...]
    bipartition: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    degrees: tuple[int, ...]
    isolated: int
    matching_size: int

    @property
    def connected(self) -> bool:
        return len(self.components) == 1

    @property
    def bipartite(self) -> bool:
        return self.bipartition is not None

    def component_sizes(self) -> list[int]:
        return sorted((len(c) for c in self.components), reverse=True)


def components(g: Graph) -> tuple[tuple[int, ...], ...]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(tuple(bits(comp)))
    return tuple(out)


def _two_color(g: Graph, comp: tuple[int, ...]) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    side = {comp[0]: 0}
    stack = [comp[0]]
    while stack:
        v = stack.pop()
        for u in bits(g.adj[v]):
            if u not in side:
                side[u] = 1 - side[v]
                stack.append(u)
            elif side[u] == side[v]:
                return None
    a = tuple(sorted(v for v in comp if side[v] == 0))
    b = tuple(sorted(v for v in comp if side[v] == 1))
    return a, b


def bipartition(g: Graph) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Return ``(X, Y)`` with ``|X|`` minimal, or ``None`` if ``g`` has an odd cycle.

    Each component contributes its smaller side to ``X``; on a tie the side
    holding the component's smallest vertex goes to ``X``. For a connected
    graph this is the unique bipartition, ordered smaller part first.
    """
    xs: list[int] = []
    ys: list[int] = []
    for comp in components(g):
        sides = _two_color(g, comp)
        if sides is None:
            return None
        a, b = sides
        if len(b) < len(a):
            a, b = b, a
        xs.extend(a)
        ys.extend(b)
    return tuple(sorted(xs)), tuple(sorted(ys))


def maximum_matching_size(g: Graph) -> int:
    nxg = nx.Graph()
    nxg.add_nodes_from(range(g.n))
    nxg.add_edges_from(g.edges())
    return len(nx.max_weight_matching(nxg, maxcardinality=True))


def analyze_structure(g: Graph) -> StructureReport:
    degrees = g.degrees()
    return StructureReport(
        components=components(g),
        bipartition=bipartition(g),
        degrees=degrees,
        isolated=sum(1 for d in degrees if d == 0),
        matching_size=maximum_matching_size(g),
    )
