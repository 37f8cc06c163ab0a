"""Edge and vertex connectivity with witness extraction.

Max flow is plain BFS augmenting paths on integer capacities (parallel
edges collapse to a multiplicity per arc), which is exact and more than
fast enough at the scale this package targets.  All tie-breaking is
lexicographic, so witnesses and path families are deterministic.

Edge-disjoint path counts come straight from the flow value; the
internally-disjoint count splits every intermediate vertex into an
in/out pair joined by a unit arc, after first peeling off parallel
source->sink edges (each of which is one internally-disjoint path on its
own).  Minimum vertex separators are read off the split graph's residual
cut, whose crossing arcs are all unit vertex arcs by construction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable

from .graph import Edge, MultiGraph, ValidationError


@dataclass(frozen=True)
class CutWitness:
    """A source-side vertex set with its crossing edges; value = |crossing|."""

    value: int
    side_s: frozenset[str]
    crossing: frozenset[Edge]


@dataclass(frozen=True)
class VertexCutWitness:
    """A separating vertex set; removing it severs every source->sink path."""

    value: int
    separator: frozenset[str]


@dataclass(frozen=True)
class PathFamily:
    """Pairwise disjoint directed paths; kind names the disjointness."""

    kind: str  # "edge-disjoint" | "internally-disjoint"
    paths: tuple[tuple[str, ...], ...]

    def count(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class MinTailCut:
    """Minimum tail-size edge cut: value = |tail(crossing)| with the source
    not among the tails; cut is the realizing edge cut."""

    value: int
    cut: CutWitness


# -- internal flow machinery -------------------------------------------------

Cap = dict  # node -> {node: int}


def _neighbor_lists(cap: Cap) -> dict:
    nbrs: dict[Hashable, set] = {u: set() for u in cap}
    for u, arcs in cap.items():
        for v in arcs:
            nbrs[u].add(v)
            nbrs.setdefault(v, set()).add(u)
    return {u: sorted(vs) for u, vs in nbrs.items()}


def _max_flow(cap: Cap, s, t) -> tuple[int, Cap]:
    """Edmonds-Karp; returns (value, residual capacities)."""
    residual: Cap = {u: dict(arcs) for u, arcs in cap.items()}
    for u in list(residual):
        for v in residual[u]:
            residual.setdefault(v, {})
    nbrs = _neighbor_lists(residual)
    value = 0
    while True:
        parent = {s: None}
        queue = deque([s])
        reached = False
        while queue and not reached:
            u = queue.popleft()
            for v in nbrs[u]:
                if v not in parent and residual[u].get(v, 0) > 0:
                    parent[v] = u
                    if v == t:
                        reached = True
                        break
                    queue.append(v)
        if not reached:
            return value, residual
        arcs = []
        v = t
        while parent[v] is not None:
            u = parent[v]
            arcs.append((u, v))
            v = u
        push = min(residual[u][v] for u, v in arcs)
        for u, v in arcs:
            residual[u][v] -= push
            residual[v][u] = residual[v].get(u, 0) + push
        value += push


def _residual_reachable(residual: Cap, s) -> set:
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v, r in residual[u].items():
            if r > 0 and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def _flow_from_residual(cap: Cap, residual: Cap) -> Cap:
    flow: Cap = {}
    for u, arcs in cap.items():
        for v, c in arcs.items():
            f = c - residual[u].get(v, 0)
            if f > 0:
                flow.setdefault(u, {})[v] = f
    return flow


def _decompose_paths(flow: Cap, s, t, n_paths: int) -> list[list]:
    """Split an integer s-t flow into n_paths unit paths.

    Walks follow the smallest available successor; any cycle met along the
    way is cancelled (it carries no s-t value) and the walk resumes.
    """
    out = {u: dict(arcs) for u, arcs in flow.items()}
    paths = []
    for _ in range(n_paths):
        walk = [s]
        at = {s: 0}
        u = s
        while u != t:
            v = min(w for w, f in out.get(u, {}).items() if f > 0)
            if v in at:
                cycle = walk[at[v]:] + [v]
                for a, b in zip(cycle, cycle[1:]):
                    out[a][b] -= 1
                walk = walk[: at[v] + 1]
                at = {w: i for i, w in enumerate(walk)}
                u = v
                continue
            at[v] = len(walk)
            walk.append(v)
            u = v
        for a, b in zip(walk, walk[1:]):
            out[a][b] -= 1
        paths.append(walk)
    return paths


def _fresh_key(taken: Iterable[str], base: str) -> str:
    taken = set(taken)
    name = base
    while name in taken:
        name += "-x"
    return name


def _remove_edges_path_check(g: MultiGraph, crossing: frozenset[Edge], sources: set[str], t: str) -> bool:
    """True iff t is reachable from sources once the crossing edges are gone."""
    drop: dict[tuple[str, str], int] = {}
    for e in crossing:
        drop[(e.tail, e.head)] = drop.get((e.tail, e.head), 0) + 1
    caps = g.adjacency()
    for (u, v), m in drop.items():
        caps[u][v] -= m
    seen = set(sources)
    queue = deque(sources)
    while queue:
        u = queue.popleft()
        for v, c in caps[u].items():
            if c > 0 and v not in seen:
                if v == t:
                    return True
                seen.add(v)
                queue.append(v)
    return t in seen


def _has_path(g: MultiGraph, s: str, t: str, skip: frozenset[str] = frozenset()) -> bool:
    if s in skip or t in skip:
        return False
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if u == t:
            return True
        for v in g.children(u):
            if v not in seen and v not in skip:
                seen.add(v)
                queue.append(v)
    return False


# -- edge connectivity ---------------------------------------------------------


def min_edge_cut(g: MultiGraph, s: str, t: str) -> CutWitness:
    """Minimum s,t-edge cut (unit capacity per parallel edge) with witness."""
    if s == t:
        raise ValidationError("min_edge_cut needs distinct endpoints")
    for v in (s, t):
        if not g.has_vertex(v):
            raise ValidationError(f"unknown node id: {v!r}")
    value, residual = _max_flow(g.adjacency(), s, t)
    side = _residual_reachable(residual, s)
    crossing = g.edges_between(side, g.vertices - side)
    if len(crossing) != value:
        raise RuntimeError("flow/cut mismatch (internal error)")
    if _remove_edges_path_check(g, frozenset(crossing), {s}, t):
        raise RuntimeError("cut witness does not disconnect (internal error)")
    return CutWitness(value=value, side_s=frozenset(side), crossing=frozenset(crossing))


def min_edge_cut_from_set(g: MultiGraph, a: Iterable[str], t: str) -> CutWitness:
    """Minimum edge cut separating the whole set a from t.

    A virtual super-source with effectively unlimited parallel edges into
    every node of a forces the source side to contain all of a; the virtual
    node is stripped from the returned witness.
    """
    a = set(a)
    if not a:
        raise ValidationError("source set must be nonempty")
    for v in a:
        if not g.has_vertex(v):
            raise ValidationError(f"unknown node id: {v!r}")
    if not g.has_vertex(t):
        raise ValidationError(f"unknown node id: {t!r}")
    if t in a:
        raise ValidationError("sink may not belong to the source set")
    virtual = _fresh_key(g.vertices, "virtual-source")
    caps = g.adjacency()
    bulk = g.n_edges + 1
    caps[virtual] = {v: bulk for v in sorted(a)}
    value, residual = _max_flow(caps, virtual, t)
    side = _residual_reachable(residual, virtual) - {virtual}
    if not a <= side:
        raise RuntimeError("super-source cut separated the source set (internal error)")
    crossing = g.edges_between(side, g.vertices - side)
    if len(crossing) != value:
        raise RuntimeError("flow/cut mismatch (internal error)")
    if _remove_edges_path_check(g, frozenset(crossing), a, t):
        raise RuntimeError("cut witness does not disconnect (internal error)")
    return CutWitness(value=value, side_s=frozenset(side), crossing=frozenset(crossing))


def max_edge_disjoint_paths(g: MultiGraph, s: str, t: str) -> PathFamily:
    """A maximum family of pairwise edge-disjoint s->t paths, from flow
    decomposition; its size equals the minimum edge cut."""
    if s == t:
        raise ValidationError("max_edge_disjoint_paths needs distinct endpoints")
    for v in (s, t):
        if not g.has_vertex(v):
            raise ValidationError(f"unknown node id: {v!r}")
    cap = g.adjacency()
    value, residual = _max_flow(cap, s, t)
    flow = _flow_from_residual(cap, residual)
    paths = _decompose_paths(flow, s, t, value)
    return PathFamily("edge-disjoint", tuple(sorted(tuple(p) for p in paths)))


# -- vertex connectivity -------------------------------------------------------


def _split_network(g: MultiGraph, s: str, t: str) -> Cap:
    """Vertex-split copy of g minus its direct s->t edges.

    Intermediate vertices become ("in", v) -> ("out", v) unit arcs; original
    arcs get capacity above any possible cut so that minimum cuts cross only
    vertex arcs.  Arcs into s and out of t are dropped (no simple s->t path
    uses them).
    """
    big = g.n_edges + 1
    caps: Cap = {}
    for v in g.vertices:
        if v not in (s, t):
            caps.setdefault(("in", v), {})[("out", v)] = 1
    for (u, v), m in g.edge_counts().items():
        if u == t or v == s or (u == s and v == t):
            continue
        ukey = ("out", u)
        vkey = ("in", v)
        caps.setdefault(ukey, {})[vkey] = big
    caps.setdefault(("out", s), {})
    caps.setdefault(("in", t), {})
    return caps


def max_internally_disjoint_paths(g: MultiGraph, s: str, t: str) -> PathFamily:
    """A maximum family of pairwise internally-disjoint s->t paths.

    Parallel s->t edges each contribute a one-hop path; the rest come from
    unit flow through the vertex-split graph.
    """
    if s == t:
        raise ValidationError("max_internally_disjoint_paths needs distinct endpoints")
    for v in (s, t):
        if not g.has_vertex(v):
            raise ValidationError(f"unknown node id: {v!r}")
    m = g.multiplicity(s, t)
    caps = _split_network(g, s, t)
    value, residual = _max_flow(caps, ("out", s), ("in", t))
    flow = _flow_from_residual(caps, residual)
    split_paths = _decompose_paths(flow, ("out", s), ("in", t), value)
    paths = [(s, t)] * m
    for walk in split_paths:
        paths.append(tuple([s] + [v for side, v in walk if side == "in"]))
    return PathFamily("internally-disjoint", tuple(sorted(paths)))


def min_vertex_cut(g: MultiGraph, s: str, t: str) -> VertexCutWitness:
    """Minimum s,t-vertex separator; defined only when t is not a child of s."""
    if s == t:
        raise ValidationError("min_vertex_cut needs distinct endpoints")
    for v in (s, t):
        if not g.has_vertex(v):
            raise ValidationError(f"unknown node id: {v!r}")
    if g.multiplicity(s, t) > 0:
        raise ValidationError("vertex cut undefined: t adjacent to s")
    caps = _split_network(g, s, t)
    value, residual = _max_flow(caps, ("out", s), ("in", t))
    reach = _residual_reachable(residual, ("out", s))
    separator = frozenset(
        v
        for v in g.vertices - {s, t}
        if ("in", v) in reach and ("out", v) not in reach
    )
    if len(separator) != value:
        raise RuntimeError("split cut crossed a non-vertex arc (internal error)")
    if _has_path(g, s, t, skip=separator):
        raise RuntimeError("separator does not disconnect (internal error)")
    return VertexCutWitness(value=value, separator=separator)


def min_tail_over_edge_cuts(g: MultiGraph, s: str, t: str) -> MinTailCut:
    """Minimum |tail(crossing)| over s,t-edge cuts whose tails avoid s.

    The minimum equals the internally-disjoint path count; the realizing
    cut is rebuilt around a minimum vertex separator: its source side is
    the separator plus everything still reachable from s without it.
    """
    if g.multiplicity(s, t) > 0:
        raise ValidationError("vertex cut undefined: t adjacent to s")
    witness = min_vertex_cut(g, s, t)
    if witness.value == 0 and not _has_path(g, s, t):
        side = _closure(g, s, frozenset())
        return MinTailCut(0, CutWitness(0, frozenset(side), frozenset()))
    side = _closure(g, s, witness.separator) | witness.separator
    crossing = g.edges_between(side, g.vertices - side)
    tails = {e.tail for e in crossing}
    if tails != set(witness.separator):
        raise RuntimeError("tail set does not match separator (internal error)")
    return MinTailCut(
        witness.value,
        CutWitness(value=len(crossing), side_s=frozenset(side), crossing=frozenset(crossing)),
    )


def _closure(g: MultiGraph, s: str, skip: frozenset[str]) -> set[str]:
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in g.children(u):
            if v not in seen and v not in skip:
                seen.add(v)
                queue.append(v)
    return seen


def is_minimal_vertex_cut(g: MultiGraph, s: str, t: str, separator: Iterable[str]) -> bool:
    """True iff separator is an s,t-vertex cut and no proper subset is."""
    separator = frozenset(separator)
    for v in separator:
        if not g.has_vertex(v):
            raise ValidationError(f"unknown node id: {v!r}")
    if s in separator or t in separator:
        return False
    if _has_path(g, s, t, skip=separator):
        return False
    return all(_has_path(g, s, t, skip=separator - {v}) for v in separator)
