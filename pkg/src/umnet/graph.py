"""Directed multigraph with indexed parallel edges.

Node names are nonempty tokens over [A-Za-z0-9_+-].  Parallel edges
between a fixed (tail, head) pair carry 1-based indices that always form
a contiguous range; graphs are immutable after construction, so every
operation is a pure function returning plain values or a new graph.
"""

from __future__ import annotations

import heapq
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

_NAME_RE = re.compile(r"^[A-Za-z0-9_+-]+$")


class ValidationError(ValueError):
    """A graph or network constraint was violated."""


def check_node_name(name: str) -> str:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise ValidationError(f"invalid node name: {name!r}")
    return name


@dataclass(frozen=True, order=True)
class Edge:
    """One parallel edge; (tail, head, index) is unique within a graph."""

    tail: str
    head: str
    index: int


@dataclass(frozen=True)
class Cycle:
    """Witness returned by MultiGraph.topological_order on a cyclic graph.

    vertices lists one directed cycle in path order (closing edge back to
    the first entry is implied).
    """

    vertices: tuple[str, ...]


class MultiGraph:
    """Immutable directed multigraph; parallel edges stored as multiplicities."""

    __slots__ = ("_vertices", "_succ", "_pred", "_n_edges")

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str]] = ()):
        verts = {check_node_name(v) for v in vertices}
        succ: dict[str, dict[str, int]] = {v: {} for v in verts}
        pred: dict[str, dict[str, int]] = {v: {} for v in verts}
        n = 0
        for tail, head in edges:
            if tail not in verts:
                raise ValidationError(f"unknown node id: {tail!r}")
            if head not in verts:
                raise ValidationError(f"unknown node id: {head!r}")
            if tail == head:
                raise ValidationError(f"self-loop rejected at {tail!r}")
            succ[tail][head] = succ[tail].get(head, 0) + 1
            pred[head][tail] = pred[head].get(tail, 0) + 1
            n += 1
        self._vertices = frozenset(verts)
        self._succ = succ
        self._pred = pred
        self._n_edges = n

    @classmethod
    def from_counts(
        cls, vertices: Iterable[str], counts: Mapping[tuple[str, str], int]
    ) -> "MultiGraph":
        """Build from a {(tail, head): multiplicity} mapping."""
        pairs = []
        for (tail, head), m in counts.items():
            if m < 1:
                raise ValidationError(f"multiplicity must be >= 1 for ({tail}, {head})")
            pairs.extend([(tail, head)] * m)
        return cls(vertices, pairs)

    # -- basic accessors ------------------------------------------------

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def n_edges(self) -> int:
        return self._n_edges

    def has_vertex(self, v: str) -> bool:
        return v in self._vertices

    def _require(self, v: str) -> None:
        if v not in self._vertices:
            raise ValidationError(f"unknown node id: {v!r}")

    def multiplicity(self, tail: str, head: str) -> int:
        """|[tail, head]|: number of parallel edges tail -> head."""
        self._require(tail)
        self._require(head)
        return self._succ[tail].get(head, 0)

    def edge_counts(self) -> dict[tuple[str, str], int]:
        """{(tail, head): multiplicity} for all pairs with at least one edge."""
        return {
            (u, v): m
            for u in sorted(self._succ)
            for v, m in sorted(self._succ[u].items())
        }

    def edges(self) -> list[Edge]:
        """All edges, sorted by (tail, head, index)."""
        return [
            Edge(u, v, i)
            for (u, v), m in self.edge_counts().items()
            for i in range(1, m + 1)
        ]

    def iter_out_edges(self, v: str) -> Iterator[Edge]:
        self._require(v)
        for head in sorted(self._succ[v]):
            for i in range(1, self._succ[v][head] + 1):
                yield Edge(v, head, i)

    def iter_in_edges(self, v: str) -> Iterator[Edge]:
        self._require(v)
        for tail in sorted(self._pred[v]):
            for i in range(1, self._pred[v][tail] + 1):
                yield Edge(tail, v, i)

    # -- spec operations -------------------------------------------------

    def edges_between(self, a: Iterable[str], b: Iterable[str]) -> set[Edge]:
        """All edges with tail in a and head in b."""
        a = set(a)
        b = set(b)
        for v in a | b:
            self._require(v)
        found = set()
        for u in a:
            for v, m in self._succ[u].items():
                if v in b:
                    found.update(Edge(u, v, i) for i in range(1, m + 1))
        return found

    def remove_vertices(self, drop: Iterable[str]) -> "MultiGraph":
        """Graph minus the given vertices and every edge incident to them."""
        drop = set(drop)
        for v in drop:
            self._require(v)
        keep = self._vertices - drop
        counts = {
            (u, v): m
            for u in keep
            for v, m in self._succ[u].items()
            if v in keep
        }
        return MultiGraph.from_counts(keep, counts)

    def parents(self, v: str) -> set[str]:
        self._require(v)
        return set(self._pred[v])

    def children(self, v: str) -> set[str]:
        self._require(v)
        return set(self._succ[v])

    def indegree(self, v: str) -> int:
        """Incoming edges counted with multiplicity."""
        self._require(v)
        return sum(self._pred[v].values())

    def outdegree(self, v: str) -> int:
        """Outgoing edges counted with multiplicity."""
        self._require(v)
        return sum(self._succ[v].values())

    def topological_order(self) -> list[str] | Cycle:
        """Kahn's algorithm; lexicographically smallest vertex first on ties.

        Returns the total order for acyclic graphs, or a Cycle witness.
        """
        remaining = {v: sum(self._pred[v].values()) for v in self._vertices}
        ready = [v for v, d in remaining.items() if d == 0]
        heapq.heapify(ready)
        order = []
        while ready:
            v = heapq.heappop(ready)
            order.append(v)
            for w, m in self._succ[v].items():
                remaining[w] -= m
                if remaining[w] == 0:
                    heapq.heappush(ready, w)
        if len(order) == len(self._vertices):
            return order
        return self._find_cycle({v for v, d in remaining.items() if d > 0})

    def _find_cycle(self, candidates: set[str]) -> Cycle:
        """One directed cycle inside the given vertex set (all lie on cycles
        or on paths into cycles after Kahn peeling)."""
        start = min(candidates)
        seen: dict[str, int] = {}
        walk: list[str] = []
        v = start
        while v not in seen:
            seen[v] = len(walk)
            walk.append(v)
            v = min(w for w in self._succ[v] if w in candidates)
        cycle = walk[seen[v]:]
        # canonical rotation: start the cycle at its smallest vertex
        k = cycle.index(min(cycle))
        return Cycle(tuple(cycle[k:] + cycle[:k]))

    # -- equality / repr --------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._succ == other._succ

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(sorted(self.edge_counts().items()))))

    def __repr__(self) -> str:
        return f"MultiGraph({len(self._vertices)} vertices, {self._n_edges} edges)"
