"""Input validation helpers shared by the public API and the estimator."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .errors import InvalidNodeError, MissingEdgeError
from .graph import Edge, Graph


def check_graph(graph) -> Graph:
    """Verify ``graph`` is a structurally sound :class:`Graph` and return it.

    Construction already canonicalises, so this is a cheap re-check used at
    API boundaries (estimator ``fit``, trace replay, file round-trips).
    """
    if not isinstance(graph, Graph):
        raise TypeError(f"expected a curvkit Graph, got {type(graph).__name__}")
    sets = graph.neighbor_sets()
    for u, nbrs in enumerate(sets):
        if u in nbrs:
            raise InvalidNodeError(f"self-loop at node {u}")
        for v in nbrs:
            if not 0 <= v < graph.node_count:
                raise InvalidNodeError(f"neighbor {v} of {u} out of range")
            if u not in sets[v]:
                raise InvalidNodeError(f"adjacency not symmetric at ({u}, {v})")
    return graph


def check_node(graph: Graph, i: int) -> int:
    if not (isinstance(i, (int, np.integer)) and 0 <= i < graph.node_count):
        raise InvalidNodeError(f"node {i!r} not in 0..{graph.node_count - 1}")
    return int(i)


def check_edge(graph: Graph, edge: Edge) -> Edge:
    """Validate that ``edge`` is a present undirected edge; keeps orientation."""
    try:
        u, v = edge
    except (TypeError, ValueError):
        raise MissingEdgeError(f"an edge must be a pair of node ids, got {edge!r}") from None
    u, v = check_node(graph, u), check_node(graph, v)
    if not graph.has_edge(u, v):
        raise MissingEdgeError(f"({u}, {v}) is not an edge of the graph")
    return (u, v)


def check_samples(values) -> np.ndarray:
    """Coerce a sample collection to a finite, non-empty float array."""
    arr = np.asarray(getattr(values, "values", values), dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("sample set is empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError("sample set contains non-finite values")
    return arr


def check_fraction(f: float, name: str = "fraction") -> float:
    f = float(f)
    if not (0.0 < f <= 1.0) or math.isnan(f):
        raise ValueError(f"{name} must lie in (0, 1], got {f}")
    return f
