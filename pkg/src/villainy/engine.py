"""Exact villainy and weak villainy with self-checking certificates.

For a coloring ``c`` the repair distance is ``n`` minus the best agreement
between ``c`` and any admissible proper coloring ``h``. STRONG repairs must
keep every color's count; WEAK repairs only have to stay inside the palette.
The villainy of a graph maximizes that distance over every rearrangement of
every optimal proper coloring's color multiset.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .coloring import chromatic_number, coloring_array, feasible_multiplicities, multiplicities, profile
from .graph import Graph

DEFAULT_EXACT_BOUND = 8


class RepairMode(str, enum.Enum):
    STRONG = "strong"
    WEAK = "weak"


class InfeasibleRepair(ValueError):
    """No proper coloring satisfies the repair constraint."""


class InfeasibleMultiplicity(ValueError):
    pass


class OrderBoundExceeded(ValueError):
    pass


@dataclass(frozen=True)
class VillainyCertificate:
    value: int
    worst: tuple[int, ...]
    repair: tuple[int, ...]
    changed: tuple[int, ...]
    mode: RepairMode
    k: int
    exhaustive: bool = True
    domain: str = "permutation"

    def violations(self, g: Graph) -> list[str]:
        """Re-derive every certificate invariant from scratch; empty means valid."""
        problems = []
        if len(self.worst) != g.n or len(self.repair) != g.n:
            return ["coloring length does not match graph order"]
        if any(not 0 <= col < self.k for col in self.worst + self.repair):
            problems.append("color outside palette")
        if not g.is_proper(self.repair):
            problems.append("repair is not proper")
        diff = tuple(v for v in range(g.n) if self.worst[v] != self.repair[v])
        if diff != tuple(sorted(self.changed)):
            problems.append("changed set does not match the coloring difference")
        if len(self.changed) != self.value:
            problems.append("value differs from number of changed vertices")
        if self.mode is RepairMode.STRONG and multiplicities(self.worst, self.k) != multiplicities(self.repair, self.k):
            problems.append("strong repair alters color multiplicities")
        if self.k != chromatic_number(g):
            problems.append("palette size differs from chromatic number")
        elif profile(self.worst, self.k) not in feasible_multiplicities(g):
            problems.append("worst coloring's profile is not realized by an optimal coloring")
        return problems

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "mode": self.mode.value,
            "k": self.k,
            "worst": list(self.worst),
            "repair": list(self.repair),
            "changed": list(self.changed),
            "exhaustive": self.exhaustive,
            "domain": self.domain,
        }


def _stream(g: Graph, k: int, counts: Sequence[int], mode: RepairMode) -> np.ndarray:
    return coloring_array(g, k, counts if mode is RepairMode.STRONG else None)


def repair_distance(
    g: Graph, c: Sequence[int], mode: RepairMode, k: Optional[int] = None
) -> tuple[int, tuple[int, ...]]:
    """Return ``(distance, repair)``; ties go to the lexicographically smallest repair."""
    k = chromatic_number(g) if k is None else k
    c = tuple(c)
    if len(c) != g.n or any(not 0 <= col < k for col in c):
        raise ValueError("coloring does not match graph order or palette")
    colorings = _stream(g, k, multiplicities(c, k), mode)
    if not len(colorings):
        raise InfeasibleRepair(f"no proper {k}-coloring with multiplicities {multiplicities(c, k)}")
    agreement = (colorings == np.array(c, dtype=np.int8)).sum(axis=1)
    best = int(np.argmax(agreement))
    return g.n - int(agreement[best]), tuple(int(x) for x in colorings[best])


def _search_worst(colorings: np.ndarray, counts: Sequence[int], n: int, k: int) -> tuple[tuple[int, ...], int]:
    """Branch and bound over assignments of ``counts`` to vertices ``0..n-1``.

    Agreement with every candidate repair is tracked incrementally. For a
    prefix, a repair ``h`` is guaranteed at least its prefix agreement plus a
    pigeonhole term on the unassigned suffix, which caps the distance any
    completion can reach.
    """
    eq = [[(colorings[:, v] == col).astype(np.int16) for col in range(k)] for v in range(n)]
    # suffix[d][h, col] = #{v >= d : h(v) = col}
    suffix = np.zeros((n + 1, len(colorings), k), dtype=np.int16)
    for d in range(n - 1, -1, -1):
        suffix[d] = suffix[d + 1]
        for col in range(k):
            suffix[d][:, col] += eq[d][col]

    # equal-count colors are interchangeable: force first occurrences in increasing order
    twin_of = [col - 1 if col and counts[col] == counts[col - 1] else -1 for col in range(k)]

    remaining = np.array(counts, dtype=np.int16)
    assignment = [0] * n
    best_value = -1
    best: tuple[int, ...] = ()

    def bound(depth: int, agree: np.ndarray) -> int:
        slack = np.maximum(remaining + suffix[depth] - (n - depth), 0).sum(axis=1)
        return n - int((agree + slack).max())

    def descend(depth: int, agree: np.ndarray) -> None:
        nonlocal best_value, best
        if depth == n:
            value = n - int(agree.max())
            if value > best_value:
                best_value, best = value, tuple(assignment)
            return
        for col in range(k):
            if not remaining[col]:
                continue
            prev = twin_of[col]
            if prev >= 0 and remaining[prev] == counts[prev]:
                continue
            if bound(depth, agree) <= best_value:
                return
            assignment[depth] = col
            remaining[col] -= 1
            nxt = agree + eq[depth][col]
            if depth + 1 == n or bound(depth + 1, nxt) > best_value:
                descend(depth + 1, nxt)
            remaining[col] += 1

    descend(0, np.zeros(len(colorings), dtype=np.int16))
    return best, best_value


def worst_assignment(
    g: Graph, m: Sequence[int], mode: RepairMode
) -> tuple[tuple[int, ...], int]:
    """Lexicographically smallest assignment of color counts ``m`` maximizing repair distance."""
    k = chromatic_number(g)
    m = tuple(m)
    if len(m) != k or tuple(sorted(m, reverse=True)) not in feasible_multiplicities(g):
        raise InfeasibleMultiplicity(f"{m} is not the profile of an optimal proper coloring")
    colorings = _stream(g, k, m, mode)
    return _search_worst(colorings, m, g.n, k)


def _trivial(g: Graph, mode: RepairMode, domain: str) -> VillainyCertificate:
    ident = tuple(range(g.n))
    return VillainyCertificate(0, ident, ident, (), mode, g.n, True, domain)


def _graph_villainy(g: Graph, mode: RepairMode, max_order: int, domain: str) -> VillainyCertificate:
    if g.n > max_order:
        raise OrderBoundExceeded(
            f"order {g.n} exceeds the exact-search bound {max_order}; raise the bound to proceed")
    if domain not in ("permutation", "proper"):
        raise ValueError(f"unknown outer domain {domain!r}")
    k = chromatic_number(g)
    if k == g.n:
        return _trivial(g, mode, domain)

    best: Optional[tuple[int, tuple[int, ...]]] = None
    for prof in sorted(feasible_multiplicities(g)):
        if domain == "proper":
            # literal reading: c itself ranges over the optimal proper colorings
            candidates = coloring_array(g, k, prof)
            worst = tuple(int(x) for x in candidates[0])
            value = 0
        else:
            worst, value = worst_assignment(g, prof, mode)
        if best is None or value > best[0] or (value == best[0] and worst < best[1]):
            best = (value, worst)

    value, worst = best
    distance, repair = repair_distance(g, worst, mode, k)
    if distance != value:
        raise AssertionError("search value disagrees with direct repair distance")
    changed = tuple(v for v in range(g.n) if worst[v] != repair[v])
    return VillainyCertificate(value, worst, repair, changed, mode, k, True, domain)


def villainy(g: Graph, max_order: int = DEFAULT_EXACT_BOUND, domain: str = "permutation") -> VillainyCertificate:
    """B(G) with a witness.

    ``domain="proper"`` takes the worst case over proper colorings only, the
    literal alternative reading of the definition; it is always 0 and exists
    for comparison.
    """
    return _graph_villainy(g, RepairMode.STRONG, max_order, domain)


def weak_villainy(g: Graph, max_order: int = DEFAULT_EXACT_BOUND, domain: str = "permutation") -> VillainyCertificate:
    return _graph_villainy(g, RepairMode.WEAK, max_order, domain)
