"""Immutable simple undirected graphs, edge-list IO, and small generators.

Nodes are always the contiguous ints ``0..n-1``.  Loading an edge list
compacts arbitrary non-negative ids into that range and returns the id map
(compact id -> original id) alongside the graph, so results can always be
reported in the caller's original vocabulary.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

import numpy as np

from .errors import EmptyGraphError, InvalidNodeError, ParseError

Edge = tuple[int, int]
IdMap = tuple[int, ...]


class Graph:
    """A simple undirected graph with set-based adjacency.

    The constructor canonicalises its input: arcs are symmetrised, duplicate
    edges merged and self-loops dropped.  Instances are immutable; rewiring
    produces new graphs.
    """

    __slots__ = ("_sets", "_neighbors", "_edge_count")

    def __init__(self, node_count: int, edges: Iterable[Edge] = ()):
        if not isinstance(node_count, int) or node_count < 0:
            raise InvalidNodeError(f"node_count must be a non-negative int, got {node_count!r}")
        sets = [set() for _ in range(node_count)]
        for u, v in edges:
            if not (0 <= u < node_count and 0 <= v < node_count):
                raise InvalidNodeError(f"edge ({u}, {v}) out of range for {node_count} nodes")
            if u == v:
                continue
            sets[u].add(v)
            sets[v].add(u)
        self._sets: tuple[frozenset[int], ...] = tuple(frozenset(s) for s in sets)
        self._neighbors: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in sets)
        self._edge_count = sum(len(s) for s in sets) // 2

    @property
    def node_count(self) -> int:
        return len(self._sets)

    @property
    def edge_count(self) -> int:
        return self._edge_count

    def degree(self, i: int) -> int:
        self._check_node(i)
        return len(self._sets[i])

    def neighbors(self, i: int) -> tuple[int, ...]:
        """Neighbours of ``i`` in increasing order."""
        self._check_node(i)
        return self._neighbors[i]

    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        """The full adjacency as one frozenset per node (cheap, shared)."""
        return self._sets

    def has_edge(self, u: int, v: int) -> bool:
        self._check_node(u)
        self._check_node(v)
        return v in self._sets[u]

    def edges(self) -> tuple[Edge, ...]:
        """All edges as (u, v) with u < v, in lexicographic order."""
        return tuple((u, v) for u in range(self.node_count) for v in self._neighbors[u] if u < v)

    def two_hop(self, i: int) -> frozenset[int]:
        """Nodes at distance exactly two from ``i``."""
        self._check_node(i)
        reach: set[int] = set()
        for nb in self._sets[i]:
            reach |= self._sets[nb]
        return frozenset(reach - self._sets[i] - {i})

    def subgraph(self, nodes: Iterable[int]) -> tuple["Graph", IdMap]:
        """Induced subgraph on ``nodes`` with ids compacted in sorted order.

        Returns the subgraph and the id map (new id -> id in this graph).
        """
        keep = sorted(set(nodes))
        for i in keep:
            self._check_node(i)
        pos = {old: new for new, old in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        return Graph(len(keep), edges), tuple(keep)

    def _check_node(self, i: int) -> None:
        if not (isinstance(i, (int, np.integer)) and 0 <= i < self.node_count):
            raise InvalidNodeError(f"node {i!r} not in 0..{self.node_count - 1}")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._sets == other._sets

    def __hash__(self) -> int:
        return hash(self._sets)

    def __repr__(self) -> str:
        return f"Graph(node_count={self.node_count}, edge_count={self.edge_count})"


@dataclass(frozen=True)
class LabeledGraph:
    """A graph plus one non-negative integer class label per node."""

    graph: Graph
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != self.graph.node_count:
            raise ValueError(
                f"expected {self.graph.node_count} labels, got {len(self.labels)}"
            )
        for lab in self.labels:
            if lab < 0:
                raise ValueError(f"labels must be non-negative, got {lab}")


def load_edge_list(path, directed_input: bool = False) -> tuple[Graph, IdMap]:
    """Parse a whitespace-separated edge list into a compacted graph.

    One edge per line as ``u v``; ``#`` starts a comment; blank lines are
    ignored.  Ids may be arbitrary non-negative ints and are compacted to
    0..n-1 in sorted order.  Arcs of a directed file are symmetrised
    (construction is symmetric either way; the flag documents intent).
    Duplicate edges and self-loops are dropped.
    """
    pairs: list[Edge] = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(path, lineno, f"expected two node ids, got {len(parts)} fields")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(path, lineno, f"node ids must be integers: {line!r}") from None
            if u < 0 or v < 0:
                raise ParseError(path, lineno, f"node ids must be non-negative: {line!r}")
            pairs.append((u, v))
    if not pairs:
        raise EmptyGraphError(f"{path}: no edges found")
    ids = sorted({u for u, _ in pairs} | {v for _, v in pairs})
    pos = {old: new for new, old in enumerate(ids)}
    graph = Graph(len(ids), [(pos[u], pos[v]) for u, v in pairs])
    return graph, tuple(ids)


def save_edge_list(graph: Graph, path) -> None:
    """Write ``u v`` lines (u < v, lexicographic) so output is reproducible."""
    with open(path, "w", encoding="utf-8") as fh:
        for u, v in graph.edges():
            fh.write(f"{u} {v}\n")


def load_labels(path) -> dict[int, int]:
    """Parse ``node_id label`` lines (same comment rules as edge lists)."""
    labels: dict[int, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ParseError(path, lineno, f"expected 'node_id label', got {line!r}")
            try:
                node, lab = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(path, lineno, f"ids and labels must be integers: {line!r}") from None
            if node < 0 or lab < 0:
                raise ParseError(path, lineno, f"ids and labels must be non-negative: {line!r}")
            labels[node] = lab
    return labels


def attach_labels(graph: Graph, id_map: IdMap, labels: Mapping[int, int]) -> LabeledGraph:
    """Build a LabeledGraph from labels keyed by *original* node ids."""
    out = []
    for compact, original in enumerate(id_map):
        if original not in labels:
            raise ValueError(f"no label for node {original} (compact id {compact})")
        out.append(labels[original])
    return LabeledGraph(graph, tuple(out))


def write_id_map(id_map: IdMap, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["compact_id", "original_id"])
        for compact, original in enumerate(id_map):
            writer.writerow([compact, original])


def read_id_map(path) -> IdMap:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["compact_id", "original_id"]:
        raise ParseError(path, 1, "expected header 'compact_id,original_id'")
    out = []
    for lineno, row in enumerate(rows[1:], 2):
        try:
            compact, original = int(row[0]), int(row[1])
        except (ValueError, IndexError):
            raise ParseError(path, lineno, f"bad id map row {row!r}") from None
        if compact != len(out):
            raise ParseError(path, lineno, f"compact ids must be 0,1,2,...; got {compact}")
        out.append(original)
    return tuple(out)


def connected_components(graph: Graph) -> list[list[int]]:
    """Components as sorted node lists, discovered in increasing node order."""
    seen = [False] * graph.node_count
    comps: list[list[int]] = []
    for start in range(graph.node_count):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        comp = []
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in graph.neighbors(u):
                if not seen[v]:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


def largest_connected_component(graph: Graph) -> tuple[Graph, IdMap]:
    """Largest component (ties: smallest minimum node id) as a compacted graph.

    The id map sends new ids to ids in ``graph``; compose with the loader's
    map to get back to original file ids.
    """
    comps = connected_components(graph)
    if not comps:
        return Graph(0), ()
    best = min(comps, key=lambda c: (-len(c), c[0]))
    return graph.subgraph(best)


# --- small deterministic generators used by tests, docs and the CLI ---


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 nodes")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    """Node 0 joined to ``leaves`` degree-one nodes."""
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def double_star(degree: int) -> Graph:
    """Two adjacent hubs 0 and 1, each of the given degree via leaves.

    Node 0 carries leaves ``2..degree``; node 1 carries the rest.  Every
    edge is a bridge, so the graph has no triangles and no four-cycles.
    """
    if degree < 1:
        raise ValueError("hub degree must be >= 1")
    edges = [(0, 1)]
    edges += [(0, leaf) for leaf in range(2, degree + 1)]
    edges += [(1, leaf) for leaf in range(degree + 1, 2 * degree)]
    return Graph(2 * degree, edges)


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    """G(n, p) sampled pair by pair from ``rng`` (deterministic given state)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must be in [0, 1], got {p}")
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < p
    ]
    return Graph(n, edges)
