"""Named graph families and a tiny constructor-expression language.

Expressions look like ``cycle(5)`` or ``disjoint_union(complete(3), path(2))``;
``a + b`` is accepted as shorthand for a two-term disjoint union.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass

from .graph import MAX_ORDER, Graph, GraphError

_ARITY = {
    "complete": 1,
    "path": 1,
    "cycle": 1,
    "star": 1,
    "empty": 1,
    "complete_bipartite": 2,
}


class FamilySpecError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    args: tuple = ()

    def order(self) -> int:
        if self.kind == "disjoint_union":
            return sum(part.order() for part in self.args)
        if self.kind == "star":
            return self.args[0] + 1
        if self.kind == "complete_bipartite":
            return self.args[0] + self.args[1]
        return self.args[0]

    def validate(self) -> None:
        if self.kind == "disjoint_union":
            if not self.args:
                raise FamilySpecError("disjoint_union needs at least one part")
            for part in self.args:
                part.validate()
        elif self.kind in _ARITY:
            if len(self.args) != _ARITY[self.kind]:
                raise FamilySpecError(f"{self.kind} takes {_ARITY[self.kind]} size argument(s)")
            for a in self.args:
                if not isinstance(a, int) or a < 1:
                    raise FamilySpecError(f"{self.kind}: size parameters must be >= 1, got {a!r}")
        else:
            raise FamilySpecError(f"unknown family {self.kind!r}")
        if self.order() > MAX_ORDER:
            raise FamilySpecError(f"total order {self.order()} exceeds {MAX_ORDER}")

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(str(a) for a in self.args)})"


def complete(n: int) -> FamilySpec:
    return FamilySpec("complete", (n,))


def path(n: int) -> FamilySpec:
    return FamilySpec("path", (n,))


def cycle(n: int) -> FamilySpec:
    return FamilySpec("cycle", (n,))


def star(t: int) -> FamilySpec:
    return FamilySpec("star", (t,))


def empty(r: int) -> FamilySpec:
    return FamilySpec("empty", (r,))


def complete_bipartite(m: int, n: int) -> FamilySpec:
    return FamilySpec("complete_bipartite", (m, n))


def disjoint_union(*parts: FamilySpec) -> FamilySpec:
    return FamilySpec("disjoint_union", tuple(parts))


def _block_edges(spec: FamilySpec) -> tuple[int, list[tuple[int, int]]]:
    kind, args = spec.kind, spec.args
    if kind == "complete":
        n = args[0]
        return n, [(u, v) for u in range(n) for v in range(u + 1, n)]
    if kind == "path":
        n = args[0]
        return n, [(i, i + 1) for i in range(n - 1)]
    if kind == "cycle":
        n = args[0]
        if n < 3:
            raise FamilySpecError("cycle needs at least 3 vertices")
        return n, [(i, (i + 1) % n) for i in range(n)]
    if kind == "star":
        t = args[0]
        return t + 1, [(0, i) for i in range(1, t + 1)]
    if kind == "empty":
        return args[0], []
    if kind == "complete_bipartite":
        a, b = args
        return a + b, [(u, a + v) for u in range(a) for v in range(b)]
    n, edges = 0, []
    for part in args:
        m, sub = _block_edges(part)
        edges.extend((u + n, v + n) for u, v in sub)
        n += m
    return n, edges


def build_family(spec: FamilySpec) -> Graph:
    """Build ``spec``; union blocks are labeled consecutively in spec order."""
    spec.validate()
    n, edges = _block_edges(spec)
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise FamilySpecError(str(exc)) from exc


def _convert(node: ast.AST):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return node.value
    if isinstance(node, ast.BinOp) and isinstance(node.op, ast.Add):
        left, right = _convert(node.left), _convert(node.right)
        if not (isinstance(left, FamilySpec) and isinstance(right, FamilySpec)):
            raise FamilySpecError("'+' joins two graph expressions")
        parts = []
        for side in (left, right):
            parts.extend(side.args if side.kind == "disjoint_union" else (side,))
        return disjoint_union(*parts)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and not node.keywords:
        name = node.func.id
        if name != "disjoint_union" and name not in _ARITY:
            raise FamilySpecError(f"unknown family {name!r}")
        args = tuple(_convert(a) for a in node.args)
        if name == "disjoint_union":
            if not all(isinstance(a, FamilySpec) for a in args):
                raise FamilySpecError("disjoint_union takes graph expressions")
        elif not all(isinstance(a, int) for a in args):
            raise FamilySpecError(f"{name} takes integer sizes")
        return FamilySpec(name, args)
    raise FamilySpecError(f"unsupported syntax: {ast.dump(node)}")


def parse_family(text: str) -> FamilySpec:
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise FamilySpecError(f"cannot parse family expression {text!r}") from exc
    spec = _convert(tree.body)
    if not isinstance(spec, FamilySpec):
        raise FamilySpecError("expression does not describe a graph")
    spec.validate()
    return spec


def diamond() -> Graph:
    """K_4 with one edge removed."""
    return Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])
