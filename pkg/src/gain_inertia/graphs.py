"""Gain graph data model and combinatorial structure.

A gain graph is a finite simple undirected graph whose edges carry
unit-modulus complex gains; querying an edge against its stored
orientation conjugates the gain.  Everything here is purely
combinatorial: connected components, cyclomatic number, biconnected
blocks, the cycle structure under the pairwise-vertex-disjoint
hypothesis, and the contraction of cycles to single vertices.

All types are immutable after construction; operations that "modify" a
graph return a new one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .gains import Gain, cycle_gain_product

Edge = tuple[int, int, Gain]
VertexPair = tuple[int, int]


class GraphConstructionError(ValueError):
    """Raised for loops, duplicate edges, bad vertex ids, or bad gains."""


@dataclass(frozen=True)
class GainGraph:
    """Immutable simple graph with a unit gain on each edge.

    ``edges`` stores each edge once as ``(u, v, gain)`` with ``u < v``;
    the stored gain is the gain of traversing ``u -> v``, and the reverse
    traversal yields the conjugate.  ``neighbors[v]`` lists the adjacent
    vertices of ``v`` in increasing order.
    """

    vertex_count: int
    edges: tuple[Edge, ...]
    neighbors: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self._edge_index()

    def gain_of(self, u: int, v: int) -> Gain:
        """Gain of traversing the edge from ``u`` to ``v``."""
        index = self._edge_index()
        if u < v:
            if (u, v) not in index:
                raise GraphConstructionError(f"no edge between {u} and {v}")
            return index[(u, v)]
        if (v, u) not in index:
            raise GraphConstructionError(f"no edge between {u} and {v}")
        return index[(v, u)].conjugate()

    def _edge_index(self) -> dict[VertexPair, Gain]:
        index = getattr(self, "_edge_index_cache", None)
        if index is None:
            index = {(u, v): g for u, v, g in self.edges}
            object.__setattr__(self, "_edge_index_cache", index)
        return index

    def vertex_pairs(self) -> frozenset[VertexPair]:
        """The underlying edge set as unordered ``(min, max)`` pairs."""
        return frozenset((u, v) for u, v, _ in self.edges)

    def __repr__(self) -> str:
        return f"GainGraph(n={self.vertex_count}, m={self.edge_count})"


def build_graph(
    vertex_count: int,
    edge_list: Iterable[tuple[int, int, object]],
) -> GainGraph:
    """Validate and freeze a gain graph.

    Each entry of ``edge_list`` is ``(u, v, gain_spec)`` where the gain
    spec is anything :meth:`Gain.coerce` accepts and the stored gain means
    the gain of ``u -> v``.  Loops, duplicate unordered pairs, out-of-range
    vertex ids, and non-unit gains are rejected.
    """
    if vertex_count < 0:
        raise GraphConstructionError("vertex count must be non-negative")
    seen: set[VertexPair] = set()
    edges: list[Edge] = []
    for u, v, spec in edge_list:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise GraphConstructionError(
                f"edge ({u}, {v}) uses a vertex id outside [0, {vertex_count})"
            )
        if u == v:
            raise GraphConstructionError(f"loop edge at vertex {u}")
        gain = Gain.coerce(spec)
        if u > v:
            u, v, gain = v, u, gain.conjugate()
        if (u, v) in seen:
            raise GraphConstructionError(f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v, gain))
    edges.sort(key=lambda e: (e[0], e[1]))
    adjacency: list[list[int]] = [[] for _ in range(vertex_count)]
    for u, v, _ in edges:
        adjacency[u].append(v)
        adjacency[v].append(u)
    neighbors = tuple(tuple(sorted(a)) for a in adjacency)
    return GainGraph(vertex_count, tuple(edges), neighbors)


def graph_equal(a: GainGraph, b: GainGraph, tol: float = 1e-12) -> bool:
    """Labeled equality: same vertex ids, same edges, gains within ``tol``."""
    if a.vertex_count != b.vertex_count or a.edge_count != b.edge_count:
        return False
    index_b = {(u, v): g for u, v, g in b.edges}
    for u, v, g in a.edges:
        other = index_b.get((u, v))
        if other is None or not g.approx_eq(other, tol):
            return False
    return True


def connected_components(graph: GainGraph) -> list[frozenset[int]]:
    """Partition of the vertex set into connected components."""
    seen = [False] * graph.vertex_count
    components: list[frozenset[int]] = []
    for start in range(graph.vertex_count):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        component = [start]
        while stack:
            v = stack.pop()
            for w in graph.neighbors[v]:
                if not seen[w]:
                    seen[w] = True
                    component.append(w)
                    stack.append(w)
        components.append(frozenset(component))
    return components


def component_count(graph: GainGraph) -> int:
    return len(connected_components(graph))


def is_connected(graph: GainGraph) -> bool:
    """True for 0 or 1 connected components (the empty graph counts)."""
    return component_count(graph) <= 1


def cyclomatic_number(graph: GainGraph) -> int:
    """|E| - |V| + (number of components); the count of independent cycles."""
    return graph.edge_count - graph.vertex_count + component_count(graph)


@dataclass(frozen=True)
class Block:
    """One biconnected component: its vertices and its edges."""

    vertices: frozenset[int]
    edge_pairs: frozenset[VertexPair]

    @property
    def is_cycle(self) -> bool:
        return len(self.edge_pairs) >= 3 and len(self.edge_pairs) == len(self.vertices)

    @property
    def is_single_edge(self) -> bool:
        return len(self.edge_pairs) == 1


class BlockDecomposition(NamedTuple):
    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]


def block_decomposition(graph: GainGraph) -> BlockDecomposition:
    """Biconnected components and cut vertices (iterative Hopcroft-Tarjan).

    Every edge belongs to exactly one block; isolated vertices belong to
    no block.
    """
    n = graph.vertex_count
    disc = [-1] * n
    low = [0] * n
    cut = [False] * n
    edge_stack: list[VertexPair] = []
    blocks: list[Block] = []

    def emit_block(limit: VertexPair) -> None:
        members: list[VertexPair] = []
        while True:
            e = edge_stack.pop()
            members.append(e)
            if e == limit:
                break
        vertices = frozenset(v for e in members for v in e)
        blocks.append(Block(vertices, frozenset(members)))

    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        root_children = 0
        # Stack entries: (vertex, parent, iterator position over neighbors).
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, i = stack.pop()
            if i < len(graph.neighbors[v]):
                stack.append((v, parent, i + 1))
                w = graph.neighbors[v][i]
                if w == parent:
                    continue
                if disc[w] == -1:
                    pair = (min(v, w), max(v, w))
                    edge_stack.append(pair)
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, 0))
                elif disc[w] < disc[v]:
                    pair = (min(v, w), max(v, w))
                    edge_stack.append(pair)
                    low[v] = min(low[v], disc[w])
            else:
                if parent != -1:
                    low[parent] = min(low[parent], low[v])
                    if low[v] >= disc[parent]:
                        if parent != root:
                            cut[parent] = True
                        emit_block((min(parent, v), max(parent, v)))
        if root_children > 1:
            cut[root] = True
    cut_vertices = frozenset(v for v in range(n) if cut[v])
    return BlockDecomposition(tuple(blocks), cut_vertices)


@dataclass(frozen=True)
class CycleStructure:
    """The cycles of a graph when they are pairwise vertex-disjoint.

    ``vertex_disjoint`` is true exactly when every block is a single edge
    or a single cycle and no vertex lies in two cycle-blocks; only then
    are the remaining fields populated:

    - ``cycles``: one vertex sequence per cycle (closed implicitly);
    - ``cycle_vertices``: the union of all cycle vertices;
    - ``boundary_edges``: edges with exactly one endpoint on a cycle;
    - ``contraction``: map from each vertex to its vertex in the
      contracted graph, where each cycle collapses to one vertex;
    - ``contracted_graph``: the contraction itself (all gains 1), which
      is always acyclic.
    """

    cycles: tuple[tuple[int, ...], ...]
    vertex_disjoint: bool
    cycle_vertices: frozenset[int] | None
    boundary_edges: frozenset[VertexPair] | None
    contraction: tuple[int, ...] | None
    contracted_graph: GainGraph | None


def _cycle_order(block: Block) -> tuple[int, ...]:
    """Vertices of a cycle block in traversal order, smallest id first."""
    adjacency: dict[int, list[int]] = {v: [] for v in block.vertices}
    for u, v in block.edge_pairs:
        adjacency[u].append(v)
        adjacency[v].append(u)
    start = min(block.vertices)
    order = [start]
    prev, current = -1, start
    while len(order) < len(block.vertices):
        a, b = sorted(adjacency[current])
        nxt = b if a == prev else a
        order.append(nxt)
        prev, current = current, nxt
    return tuple(order)


def cycle_structure(graph: GainGraph) -> CycleStructure:
    """Cycle list, O(G), F(G), and the contraction map, when well defined.

    Inputs whose cycles share vertices are reported with
    ``vertex_disjoint=False`` and no further detail; that is not an
    error, because the inertia bounds still apply to such graphs.
    """
    decomposition = block_decomposition(graph)
    cycle_blocks: list[Block] = []
    for block in decomposition.blocks:
        if block.is_single_edge:
            continue
        if not block.is_cycle:
            # A denser-than-cycle block contains two cycles sharing vertices.
            return CycleStructure((), False, None, None, None, None)
        cycle_blocks.append(block)
    seen_cycle_vertices: set[int] = set()
    for block in cycle_blocks:
        if seen_cycle_vertices & block.vertices:
            return CycleStructure((), False, None, None, None, None)
        seen_cycle_vertices |= block.vertices
    cycles = tuple(sorted(_cycle_order(b) for b in cycle_blocks))
    cycle_vertices = frozenset(seen_cycle_vertices)
    boundary = frozenset(
        (u, v)
        for u, v, _ in graph.edges
        if (u in cycle_vertices) != (v in cycle_vertices)
    )

    # Contract each cycle to a fresh vertex; other vertices keep distinct ids.
    mapping = [-1] * graph.vertex_count
    next_id = 0
    for cycle in cycles:
        for v in cycle:
            mapping[v] = next_id
        next_id += 1
    for v in range(graph.vertex_count):
        if mapping[v] == -1:
            mapping[v] = next_id
            next_id += 1
    contracted_pairs = {
        (min(mapping[u], mapping[v]), max(mapping[u], mapping[v]))
        for u, v, _ in graph.edges
        if mapping[u] != mapping[v]
    }
    contracted = build_graph(next_id, [(u, v, "+1") for u, v in sorted(contracted_pairs)])
    if cyclomatic_number(contracted) != 0:
        raise AssertionError("contraction of vertex-disjoint cycles must be acyclic")
    return CycleStructure(
        cycles, True, cycle_vertices, boundary, tuple(mapping), contracted
    )


def gain_of_cycle(graph: GainGraph, cycle: Sequence[int]) -> Gain:
    """Product of gains along one traversal of ``cycle``.

    The sequence must be a simple cycle of the graph with at least three
    vertices; the result is rotation-invariant and conjugated by
    traversal reversal.
    """
    if len(cycle) < 3 or len(set(cycle)) != len(cycle):
        raise GraphConstructionError("sequence is not a simple cycle")
    gains = []
    for i, u in enumerate(cycle):
        v = cycle[(i + 1) % len(cycle)]
        gains.append(graph.gain_of(u, v))
    return cycle_gain_product(gains)


class VertexDeletion(NamedTuple):
    graph: GainGraph
    old_to_new: dict[int, int]


def delete_vertices(graph: GainGraph, remove: Iterable[int]) -> VertexDeletion:
    """Induced subgraph on the complement of ``remove``, with relabeled ids.

    Returns the new graph together with the old-id -> new-id map of the
    surviving vertices.
    """
    removed = set(remove)
    for v in removed:
        if not (0 <= v < graph.vertex_count):
            raise GraphConstructionError(f"vertex {v} is not in the graph")
    kept = [v for v in range(graph.vertex_count) if v not in removed]
    old_to_new = {v: i for i, v in enumerate(kept)}
    edges = [
        (old_to_new[u], old_to_new[v], g)
        for u, v, g in graph.edges
        if u not in removed and v not in removed
    ]
    return VertexDeletion(build_graph(len(kept), edges), old_to_new)


def delete_vertex(graph: GainGraph, v: int) -> GainGraph:
    return delete_vertices(graph, [v]).graph


def induced_subgraph(graph: GainGraph, keep: Iterable[int]) -> VertexDeletion:
    keep_set = set(keep)
    return delete_vertices(graph, set(range(graph.vertex_count)) - keep_set)


def delete_edges(graph: GainGraph, pairs: Iterable[VertexPair]) -> GainGraph:
    """Same vertex set with the given unordered edge pairs removed."""
    drop = {(min(u, v), max(u, v)) for u, v in pairs}
    missing = drop - graph.vertex_pairs()
    if missing:
        raise GraphConstructionError(f"not edges of the graph: {sorted(missing)}")
    return build_graph(
        graph.vertex_count,
        [(u, v, g) for u, v, g in graph.edges if (u, v) not in drop],
    )


def pendant_vertices(graph: GainGraph) -> frozenset[int]:
    """Vertices of degree one."""
    return frozenset(v for v in range(graph.vertex_count) if graph.degree(v) == 1)


def quasi_pendant_vertices(graph: GainGraph) -> frozenset[int]:
    """Vertices adjacent to a pendant vertex."""
    pendants = pendant_vertices(graph)
    return frozenset(graph.neighbors[p][0] for p in pendants)


def vertices_on_cycles(graph: GainGraph) -> frozenset[int]:
    """All vertices lying on at least one cycle (no disjointness needed).

    A vertex is on a cycle exactly when it belongs to a block that
    contains a cycle, i.e. a block with at least as many edges as
    vertices.
    """
    on_cycle: set[int] = set()
    for block in block_decomposition(graph).blocks:
        if len(block.edge_pairs) >= len(block.vertices) >= 3:
            on_cycle |= block.vertices
    return frozenset(on_cycle)


def has_mixed_cycle_component(graph: GainGraph) -> bool:
    """True when cycles are disjoint, at least one exists, and some
    component is neither a bare cycle nor a tree.

    This is the hypothesis class of the pendant-structure condition used
    by the contraction-matching checks; the definition follows the
    literal reading (no connectivity requirement on the whole graph).
    """
    structure = cycle_structure(graph)
    if not structure.vertex_disjoint or not structure.cycles:
        return False
    for component in connected_components(graph):
        edges_in = sum(1 for u, v, _ in graph.edges if u in component)
        is_tree = edges_in == len(component) - 1
        is_cycle = (
            edges_in == len(component) >= 3
            and all(graph.degree(v) == 2 for v in component)
        )
        if not (is_tree or is_cycle):
            return True
    return False


@dataclass(frozen=True)
class GraphInvariants:
    """Bundle of the basic numeric invariants of one graph."""

    vertex_count: int
    edge_count: int
    component_count: int
    cyclomatic: int
    matching: int
    pendant_vertices: frozenset[int]
    quasi_pendant_vertices: frozenset[int]


def graph_invariants(graph: GainGraph, matching_number: int) -> GraphInvariants:
    """Assemble the invariant bundle; the matching number is supplied by
    the caller because matching lives in its own module."""
    return GraphInvariants(
        vertex_count=graph.vertex_count,
        edge_count=graph.edge_count,
        component_count=component_count(graph),
        cyclomatic=cyclomatic_number(graph),
        matching=matching_number,
        pendant_vertices=pendant_vertices(graph),
        quasi_pendant_vertices=quasi_pendant_vertices(graph),
    )
