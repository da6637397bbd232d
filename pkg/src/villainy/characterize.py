"""Fast predicates for the closed-form villainy results.

Covers the zero-villainy characterization, the weak-villainy-one family,
the connected bipartite formulas, the twelve-case list of candidate graphs
with villainy 2, and the lower-bound lemmas used to derive that list.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from math import ceil, floor
from typing import Optional

from .canonical import canonical_form
from .coloring import chromatic_number, feasible_multiplicities
from .families import build_family, parse_family
from .graph import Graph
from .structure import analyze_structure, bipartition, components


class ClassLabel(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    CASE5 = "Case5"
    CASE6 = "Case6"
    CASE7 = "Case7"
    CASE8 = "Case8"
    CASE9 = "Case9"
    CASE10 = "Case10"
    CASE11 = "Case11"
    CASE12 = "Case12"
    NONE = "NONE"


CASE_DESCRIPTIONS = {
    ClassLabel.CASE1: "star K_{1,t}, t >= 2",
    ClassLabel.CASE2: "connected bipartite on 6 vertices with parts 3|3",
    ClassLabel.CASE3: "P_4, P_4+K_1 or P_4+K_2",
    ClassLabel.CASE4: "C_4, C_4+K_1 or C_4+K_2",
    ClassLabel.CASE5: "C_5",
    ClassLabel.CASE6: "2K_2 or 3K_2",
    ClassLabel.CASE7: "K_3+K_2",
    ClassLabel.CASE8: "K_3+K_3",
    ClassLabel.CASE9: "2K_2+K_1",
    ClassLabel.CASE10: "n >= 4, a vertex of degree <= 1 whose removal leaves a complete graph",
    ClassLabel.CASE11: "P_3+rK_1, r >= 1",
    ClassLabel.CASE12: "K_2+rK_1, r >= 1",
}

_FIXED_TARGETS = {
    ClassLabel.CASE3: ("path(4)", "path(4)+empty(1)", "path(4)+complete(2)"),
    ClassLabel.CASE4: ("cycle(4)", "cycle(4)+empty(1)", "cycle(4)+complete(2)"),
    ClassLabel.CASE5: ("cycle(5)",),
    ClassLabel.CASE6: ("complete(2)+complete(2)", "complete(2)+complete(2)+complete(2)"),
    ClassLabel.CASE7: ("complete(3)+complete(2)",),
    ClassLabel.CASE8: ("complete(3)+complete(3)",),
    ClassLabel.CASE9: ("complete(2)+complete(2)+empty(1)",),
}


@lru_cache(maxsize=None)
def _target_forms(label: ClassLabel) -> frozenset[bytes]:
    return frozenset(canonical_form(build_family(parse_family(e))) for e in _FIXED_TARGETS[label])


def _matches_fixed(g: Graph, label: ClassLabel) -> bool:
    if g.n > 6:
        return False
    return canonical_form(g) in _target_forms(label)


def is_star(g: Graph) -> bool:
    if g.n < 3 or g.num_edges() != g.n - 1:
        return False
    degs = g.degrees()
    return max(degs) == g.n - 1 and degs.count(1) == g.n - 1


def complete_after_low_degree_vertex(g: Graph) -> Optional[int]:
    """A vertex of degree 0 or 1 whose deletion leaves a complete graph, if any."""
    for v in range(g.n):
        if g.degree(v) <= 1 and g.n > 1 and g.remove_vertex(v).is_complete():
            return v
    return None


def is_path3_plus_isolated(g: Graph) -> bool:
    edges = g.edges()
    return g.n >= 4 and len(edges) == 2 and len(set(edges[0]) & set(edges[1])) == 1


def is_edge_plus_isolated(g: Graph) -> bool:
    return g.n >= 3 and g.num_edges() == 1


def is_bipartite_three_three(g: Graph) -> bool:
    """Connected bipartite graph on 6 vertices whose parts both have 3 vertices."""
    if g.n != 6 or len(components(g)) != 1:
        return False
    parts = bipartition(g)
    return parts is not None and len(parts[0]) == 3


def classify_theorem5(g: Graph) -> ClassLabel:
    """First matching case of the villainy-2 candidate list, or NONE."""
    if is_star(g):
        return ClassLabel.CASE1
    if is_bipartite_three_three(g):
        return ClassLabel.CASE2
    for label in (ClassLabel.CASE3, ClassLabel.CASE4, ClassLabel.CASE5, ClassLabel.CASE6,
                  ClassLabel.CASE7, ClassLabel.CASE8, ClassLabel.CASE9):
        if _matches_fixed(g, label):
            return label
    if g.n >= 4 and complete_after_low_degree_vertex(g) is not None:
        return ClassLabel.CASE10
    if is_path3_plus_isolated(g):
        return ClassLabel.CASE11
    if is_edge_plus_isolated(g):
        return ClassLabel.CASE12
    return ClassLabel.NONE


@dataclass(frozen=True)
class KnownValue:
    quantity: str
    value: int
    source: str

    def to_dict(self) -> dict:
        return {"quantity": self.quantity, "value": self.value, "source": self.source}


def _connected_bipartite_sizes(g: Graph) -> Optional[tuple[int, int]]:
    if g.n < 3 or len(components(g)) != 1:
        return None
    parts = bipartition(g)
    if parts is None:
        return None
    return len(parts[0]), g.n


def bipartite_villainy_formula(x: int, n: int) -> int:
    return 2 * x if x < n - x else 2 * ceil(n / 4)


def bipartite_weak_villainy_formula(x: int, n: int) -> int:
    if n % 4 == 3:
        return min(2 * x, 2 * floor(n / 4) + 1)
    return min(2 * x, 2 * floor(n / 4))


def is_weak_villainy_one_family(g: Graph) -> bool:
    """One edge or two incident edges (n >= 3), or K_{n-1} plus an isolated or pendant vertex (n >= 4)."""
    m = g.num_edges()
    if g.n >= 3 and m == 1:
        return True
    if g.n >= 3 and m == 2:
        (a, b), (c, d) = g.edges()
        if len({a, b} & {c, d}) == 1:
            return True
    return g.n >= 4 and complete_after_low_degree_vertex(g) is not None


def known_villainy(g: Graph) -> Optional[KnownValue]:
    if g.is_complete() or g.is_edgeless():
        return KnownValue("B", 0, "complete-or-edgeless")
    sizes = _connected_bipartite_sizes(g)
    if sizes is not None:
        return KnownValue("B", bipartite_villainy_formula(*sizes), "connected-bipartite")
    return None


def known_weak_villainy(g: Graph) -> Optional[KnownValue]:
    if g.is_complete() or g.is_edgeless():
        return KnownValue("B_w", 0, "complete-or-edgeless")
    if is_weak_villainy_one_family(g):
        return KnownValue("B_w", 1, "weak-villainy-one")
    sizes = _connected_bipartite_sizes(g)
    if sizes is not None:
        return KnownValue("B_w", bipartite_weak_villainy_formula(*sizes), "connected-bipartite")
    return None


LEMMAS = ("triangle", "class-size-4", "diamond", "matching", "order-7", "order-6", "order-le-5", "chi-ge-4")


@dataclass(frozen=True)
class LemmaImplication:
    """A lemma whose hypothesis holds on a graph.

    ``bound`` is the asserted lower bound on B, or ``None`` when the graph is
    one of the lemma's listed exceptions.
    """

    lemma: str
    bound: Optional[int]
    witness: dict = field(default_factory=dict, compare=False)

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "bound": self.bound, "witness": self.witness}


def _profile_with(profiles, pred) -> Optional[tuple[int, ...]]:
    for p in sorted(profiles):
        if pred(p):
            return p
    return None


def _order_le5_exception(g: Graph) -> Optional[str]:
    if g.n == 3 and g.is_complete():
        return "C_3"
    names = {
        "C_5": "cycle(5)",
        "C_3+K_2": "complete(3)+complete(2)",
        "C_3+K_1": "complete(3)+empty(1)",
    }
    form = canonical_form(g)
    for name, expr in names.items():
        h = build_family(parse_family(expr))
        if h.n == g.n and canonical_form(h) == form:
            return name
    paw = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    if g.n == 4 and canonical_form(paw) == form:
        return "triangle with pendant edge"
    return None


def lemma_implications(g: Graph) -> list[LemmaImplication]:
    chi = chromatic_number(g)
    profiles = feasible_multiplicities(g)
    triangles = g.triangles()
    out: list[LemmaImplication] = []

    if triangles:
        p = _profile_with(profiles, lambda p: p[0] >= 3)
        if p is not None:
            out.append(LemmaImplication("triangle", 4, {"triangle": list(triangles[0]), "profile": list(p)}))

    if chi >= 3:
        p = _profile_with(profiles, lambda p: p[0] >= 4)
        if p is not None:
            out.append(LemmaImplication("class-size-4", 4, {"chi": chi, "profile": list(p)}))

    hub = next(((t, v) for t in triangles for v in t if g.degree(v) >= 3), None)
    if hub is not None:
        p = _profile_with(profiles, lambda p: sum(1 for s in p if s >= 2) >= 2)
        if p is not None:
            out.append(LemmaImplication("diamond", 3, {"triangle": list(hub[0]), "vertex": hub[1], "profile": list(p)}))

    matching = analyze_structure(g).matching_size
    if matching >= 3:
        p = _profile_with(profiles, lambda p: sum(1 for s in p if s >= 2) >= 3)
        if p is not None:
            out.append(LemmaImplication("matching", 3, {"matching_size": matching, "profile": list(p)}))

    if chi == 3 and g.n >= 7:
        out.append(LemmaImplication("order-7", 3, {"n": g.n, "chi": chi}))

    if chi == 3 and g.n == 6:
        two_triangles = canonical_form(g) == canonical_form(build_family(parse_family("complete(3)+complete(3)")))
        if two_triangles:
            out.append(LemmaImplication("order-6", None, {"exception": "2K_3"}))
        else:
            out.append(LemmaImplication("order-6", 3, {"n": 6, "chi": 3}))

    if chi == 3 and g.n <= 5:
        exc = _order_le5_exception(g)
        if exc is not None:
            out.append(LemmaImplication("order-le-5", None, {"exception": exc}))
        else:
            out.append(LemmaImplication("order-le-5", 3, {"n": g.n, "chi": 3}))

    if chi >= 4:
        v = complete_after_low_degree_vertex(g)
        if g.is_complete():
            out.append(LemmaImplication("chi-ge-4", None, {"exception": "complete"}))
        elif v is not None:
            out.append(LemmaImplication("chi-ge-4", None, {"exception": "low-degree vertex over a clique", "vertex": v}))
        else:
            out.append(LemmaImplication("chi-ge-4", 3, {"chi": chi}))
    return out
