import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings

from villainy.canonical import (
    CanonicalOrderError,
    EnumerationBoundError,
    canonical_form,
    enumerate_nonisomorphic,
)
from villainy.families import build_family, complete, cycle, path, parse_family
from villainy.graph import Graph

from .conftest import graphs


def _labeled_class_count(n: int) -> int:
    """Filter every labeled graph on n vertices down to distinct canonical forms."""
    pairs = list(itertools.combinations(range(n), 2))
    forms = set()
    for mask in range(1 << len(pairs)):
        forms.add(canonical_form(Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])))
    return len(forms)


def test_path_relabelings_agree():
    a = Graph.from_edges(3, [(0, 1), (1, 2)])
    b = Graph.from_edges(3, [(0, 2), (2, 1)])
    assert canonical_form(a) == canonical_form(b)


def test_triangle_differs_from_path():
    assert canonical_form(build_family(complete(3))) != canonical_form(build_family(path(3)))


def test_four_cycle_labelings():
    a = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    b = Graph.from_edges(4, [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert canonical_form(a) == canonical_form(b)


@pytest.mark.parametrize(
    "expr",
    ["cycle(8)", "complete_bipartite(4, 4)", "empty(7)", "complete(6)", "path(7)",
     "complete(3)+complete(3)+complete(2)", "star(6)", "cycle(5)+cycle(5)"],
)
def test_relabeling_invariance_fifty_random(expr):
    g = build_family(parse_family(expr))
    rng = random.Random(expr)
    base = canonical_form(g)
    for _ in range(50):
        perm = list(range(g.n))
        rng.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == base


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=7))
def test_canonical_agrees_with_networkx_isomorphism(g):
    rng = random.Random(sum(row << (7 * v) for v, row in enumerate(g.adj)))
    perm = list(range(g.n))
    rng.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    # an edge flip that changes the isomorphism class must change the form
    other = Graph.from_edges(g.n, g.edges()[1:]) if g.edges() else None
    if other is not None:
        assert canonical_form(other) != canonical_form(g)


def test_enumeration_small_orders():
    names = {g.num_edges() for g in enumerate_nonisomorphic(3)}
    assert names == {0, 1, 2, 3}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_counts_match_labeled_filtering_oracle(n):
    expected = _labeled_class_count(n)
    assert sum(1 for _ in enumerate_nonisomorphic(n)) == expected


@pytest.mark.parametrize("n", [4, 5])
def test_counts_match_networkx_isomorphism_oracle(n):
    reps = []
    for edges in itertools.chain.from_iterable(
        itertools.combinations(itertools.combinations(range(n), 2), m) for m in range(n * (n - 1) // 2 + 1)
    ):
        g = nx.Graph()
        g.add_nodes_from(range(n))
        g.add_edges_from(edges)
        if not any(nx.is_isomorphic(g, r) for r in reps):
            reps.append(g)
    assert len(reps) == sum(1 for _ in enumerate_nonisomorphic(n))


def test_counts_through_seven():
    assert [sum(1 for _ in enumerate_nonisomorphic(n)) for n in range(1, 8)] == [1, 2, 4, 11, 34, 156, 1044]


def test_enumeration_sorted_and_canonical():
    reps = list(enumerate_nonisomorphic(5))
    forms = [canonical_form(g) for g in reps]
    assert forms == sorted(forms)
    assert len(set(forms)) == len(forms)


def test_predicate_filter():
    def connected(g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges())
        return nx.is_connected(h)

    assert len(list(enumerate_nonisomorphic(4, connected))) == 6


def test_bounds():
    with pytest.raises(EnumerationBoundError, match="--input"):
        next(enumerate_nonisomorphic(9))
    with pytest.raises(CanonicalOrderError):
        canonical_form(build_family(cycle(11)))
