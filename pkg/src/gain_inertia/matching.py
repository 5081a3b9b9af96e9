"""Maximum matching on general graphs and matching-theoretic predicates.

The production matcher is Edmonds' blossom algorithm (maximum
cardinality, O(V^3)): alternating BFS forests with blossom contraction
through a ``base`` array.  Gains play no role here; only the underlying
graph matters.  A backtracking enumerator over edge subsets serves as an
independent oracle for small graphs.

Iteration is ordered by vertex id throughout, so results are
deterministic; all predicates depend only on the matching number.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graphs import (
    GainGraph,
    GraphConstructionError,
    VertexPair,
    delete_edges,
    delete_vertex,
    delete_vertices,
)

#: Edge-count ceiling for the exhaustive oracle.
BRUTE_FORCE_EDGE_LIMIT = 24


@dataclass(frozen=True)
class MatchingResult:
    """A maximum matching: its size, edges, and saturated vertices."""

    size: int
    edges: frozenset[VertexPair]
    saturated: frozenset[int]


def max_matching(graph: GainGraph) -> MatchingResult:
    """A maximum matching via the blossom algorithm."""
    mate = _blossom_mates(graph)
    edges = frozenset((v, mate[v]) for v in range(graph.vertex_count) if v < mate[v])
    saturated = frozenset(v for v in range(graph.vertex_count) if mate[v] != -1)
    return MatchingResult(len(edges), edges, saturated)


def matching_number(graph: GainGraph) -> int:
    return max_matching(graph).size


def _blossom_mates(graph: GainGraph) -> list[int]:
    """mate[v] = matched partner of v, or -1 if exposed."""
    n = graph.vertex_count
    adjacency = graph.neighbors
    mate = [-1] * n

    # Greedy warm start saves most augmentation rounds.
    for v in range(n):
        if mate[v] == -1:
            for w in adjacency[v]:
                if mate[w] == -1:
                    mate[v] = w
                    mate[w] = v
                    break

    parent = [-1] * n
    base = list(range(n))
    in_queue = [False] * n

    def lowest_common_base(a: int, b: int) -> int:
        marked = [False] * n
        while True:
            a = base[a]
            marked[a] = True
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if marked[b]:
                return b
            b = parent[mate[b]]

    def mark_blossom_path(v: int, stem: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != stem:
            in_blossom[base[v]] = True
            in_blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    def augment_from(root: int) -> bool:
        for i in range(n):
            parent[i] = -1
            base[i] = i
            in_queue[i] = False
        in_queue[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in adjacency[v]:
                if base[v] == base[w] or mate[v] == w:
                    continue
                if w == root or (mate[w] != -1 and parent[mate[w]] != -1):
                    # Both endpoints are outer: an odd cycle; contract it.
                    stem = lowest_common_base(v, w)
                    in_blossom = [False] * n
                    mark_blossom_path(v, stem, w, in_blossom)
                    mark_blossom_path(w, stem, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = stem
                            if not in_queue[i]:
                                in_queue[i] = True
                                queue.append(i)
                elif parent[w] == -1:
                    parent[w] = v
                    if mate[w] == -1:
                        # Exposed vertex reached: flip the alternating path.
                        u = w
                        while u != -1:
                            prev = parent[u]
                            nxt = mate[prev]
                            mate[u] = prev
                            mate[prev] = u
                            u = nxt
                        return True
                    if not in_queue[mate[w]]:
                        in_queue[mate[w]] = True
                        queue.append(mate[w])
        return False

    for v in range(n):
        if mate[v] == -1:
            augment_from(v)
    return mate


def matching_number_bruteforce(graph: GainGraph) -> int:
    """Exhaustive maximum over independent edge subsets.

    Backtracks over edges in index order, pruning branches that cannot
    beat the best matching found so far; only valid up to
    ``BRUTE_FORCE_EDGE_LIMIT`` edges.
    """
    edges = [(u, v) for u, v, _ in graph.edges]
    if len(edges) > BRUTE_FORCE_EDGE_LIMIT:
        raise ValueError(
            f"brute-force oracle limited to {BRUTE_FORCE_EDGE_LIMIT} edges, "
            f"got {len(edges)}"
        )
    hard_cap = min(len(edges), graph.vertex_count // 2)
    best = 0

    def extend(start: int, used: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        for j in range(start, len(edges)):
            if best == hard_cap or count + (len(edges) - j) <= best:
                return
            u, v = edges[j]
            bits = (1 << u) | (1 << v)
            if used & bits:
                continue
            extend(j + 1, used | bits, count + 1)

    extend(0, 0, 0)
    return best


def exists_max_matching_avoiding(graph: GainGraph, avoid: Iterable[VertexPair]) -> bool:
    """Whether some maximum matching of the graph avoids all given edges.

    Equivalent to the matching number staying unchanged after those
    edges are removed.  Raises if any pair is not an edge.
    """
    pairs = {(min(u, v), max(u, v)) for u, v in avoid}
    missing = pairs - graph.vertex_pairs()
    if missing:
        raise GraphConstructionError(f"not edges of the graph: {sorted(missing)}")
    return matching_number(delete_edges(graph, pairs)) == matching_number(graph)


def every_max_matching_saturates(graph: GainGraph, v: int) -> bool:
    """Whether every maximum matching covers ``v``.

    Holds exactly when deleting ``v`` drops the matching number.
    """
    if not (0 <= v < graph.vertex_count):
        raise GraphConstructionError(f"vertex {v} is not in the graph")
    return matching_number(delete_vertex(graph, v)) == matching_number(graph) - 1


def edge_in_some_max_matching(graph: GainGraph, u: int, v: int) -> bool:
    """Whether the edge ``uv`` belongs to at least one maximum matching.

    Forcing ``uv`` in leaves a maximum matching of the rest, so the test
    is whether deleting both endpoints costs exactly one matched edge.
    """
    if not graph.has_edge(u, v):
        raise GraphConstructionError(f"no edge between {u} and {v}")
    rest = delete_vertices(graph, [u, v]).graph
    return matching_number(rest) == matching_number(graph) - 1
