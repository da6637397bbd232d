from __future__ import annotations

import itertools

from hypothesis import strategies as st

from villainy.graph import Graph


def naive_proper(g: Graph, k: int):
    """Every proper k-coloring by plain product enumeration (no pruning)."""
    return [h for h in itertools.product(range(k), repeat=g.n) if all(h[u] != h[v] for u, v in g.edges())]


def naive_repair_distance(g: Graph, c, k: int, strong: bool) -> int:
    counts = sorted(c)
    best = -1
    for h in naive_proper(g, k):
        if strong and sorted(h) != counts:
            continue
        best = max(best, sum(1 for a, b in zip(c, h) if a == b))
    return g.n - best


def naive_chromatic(g: Graph) -> int:
    for k in range(1, g.n + 1):
        if naive_proper(g, k):
            return k
    return g.n


def naive_villainy(g: Graph, strong: bool = True) -> int:
    """Max repair distance over all rearrangements of every optimal coloring's multiset."""
    k = naive_chromatic(g)
    proper = naive_proper(g, k)
    multisets = {tuple(sorted(h)) for h in proper if len(set(h)) == k}
    best = 0
    for ms in multisets:
        for c in set(itertools.permutations(ms)):
            d = naive_repair_distance(g, c, k, strong)
            best = max(best, d)
    return best


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 6):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", "call") == "call" and "test_acceptance.py" in rep.nodeid:
                lines.append((rep.nodeid.split("::", 1)[1], outcome.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{'PASS' if outcome == 'PASSED' else 'FAIL'}  {name}")
