"""Stochastic discrete Ricci flow (SDRF) graph rewiring.

Each iteration targets the lowest-curvature edge, scores candidate edge
additions between the closed neighbourhoods of its endpoints by how much
they would raise that edge's curvature, samples one addition through a
temperature softmax, and (optionally) removes the highest-curvature edge
when it exceeds an upper threshold.  Every run is driven by a single
seeded generator (numpy PCG64), so identical parameters give identical
graphs and traces.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .curvature import CurvatureKind, _curvature, as_kind
from .errors import CurvkitError
from .graph import Edge, Graph
from .validation import check_graph

_FLOAT = float | int


@dataclass(frozen=True)
class SdrfParams:
    """Rewiring hyperparameters.

    c_plus is the removal threshold; None disables removals entirely.
    The seed is mandatory unless kind is 'none' (identity rewiring):
    stochastic runs must be reproducible, so there is no silent default.
    """

    kind: CurvatureKind
    max_iterations: int
    tau: float
    c_plus: float | None = None
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", as_kind(self.kind))
        if self.kind is CurvatureKind.NONE:
            return
        if not isinstance(self.max_iterations, int) or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be an int >= 1, got {self.max_iterations!r}")
        tau = float(self.tau)
        if not tau > 0 or not np.isfinite(tau):
            raise ValueError(f"tau must be a positive finite real, got {self.tau!r}")
        if self.c_plus is not None and np.isnan(float(self.c_plus)):
            raise ValueError("c_plus must be a real number or None")
        if self.seed is None:
            raise ValueError("a seed is required for stochastic rewiring (kind != 'none')")
        if not isinstance(self.seed, int):
            raise ValueError(f"seed must be an int, got {self.seed!r}")


@dataclass(frozen=True, slots=True)
class TraceStep:
    """One rewiring iteration: what was targeted, added, and removed."""

    iteration: int
    target: Edge
    target_curvature: float
    added: Edge | None
    improvement: float | None
    removed: Edge | None
    removed_curvature: float | None

    def to_json(self) -> dict:
        return {
            "iter": self.iteration,
            "target": list(self.target),
            "target_curv": self.target_curvature,
            "added": None if self.added is None else list(self.added),
            "improvement": self.improvement,
            "removed": None if self.removed is None else list(self.removed),
            "removed_curv": self.removed_curvature,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TraceStep":
        def pair(x):
            return None if x is None else (int(x[0]), int(x[1]))

        return cls(
            iteration=int(obj["iter"]),
            target=pair(obj["target"]),
            target_curvature=float(obj["target_curv"]),
            added=pair(obj["added"]),
            improvement=None if obj["improvement"] is None else float(obj["improvement"]),
            removed=pair(obj["removed"]),
            removed_curvature=None if obj["removed_curv"] is None else float(obj["removed_curv"]),
        )


RewiringTrace = tuple[TraceStep, ...]


def softmax_probabilities(values: Sequence[_FLOAT], tau: float) -> np.ndarray:
    """Temperature softmax, max-shifted so large tau*value cannot overflow."""
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        raise ValueError("cannot take a softmax over zero values")
    if not tau > 0:
        raise ValueError(f"tau must be positive, got {tau}")
    z = tau * arr
    z = z - z.max()
    e = np.exp(z)
    return e / e.sum()


def softmax_sample(values: Sequence[_FLOAT], tau: float, rng: np.random.Generator) -> int:
    """Sample an index with probability proportional to exp(tau * value)."""
    probs = softmax_probabilities(values, tau)
    r = rng.random()
    idx = int(np.searchsorted(np.cumsum(probs), r, side="right"))
    return min(idx, len(probs) - 1)  # guard the r ~ 1.0 rounding edge


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _ball2(adj: Sequence[set], x: int) -> set[int]:
    """Nodes within distance two of x, x included."""
    out = {x} | adj[x]
    for nb in adj[x]:
        out |= adj[nb]
    return out


def _recompute(
    curv: dict[Edge, float],
    adj: Sequence[set],
    kind: CurvatureKind,
    touched: set[int] | None,
) -> None:
    """Refresh cached curvatures.

    touched = None forces a full pass; otherwise only edges with an
    endpoint within two hops of a mutated endpoint are refreshed.  Every
    measure here depends only on edges between the closed neighbourhoods
    of its endpoints, so that radius is sufficient.
    """
    for u, v in curv:
        if touched is None or u in touched or v in touched:
            curv[(u, v)] = _curvature(adj, u, v, kind)


def sdrf(
    graph: Graph, params: SdrfParams, *, full_recompute: bool = False
) -> tuple[Graph, RewiringTrace]:
    """Rewire ``graph`` and return the new graph plus the per-iteration trace.

    Runs exactly ``params.max_iterations`` iterations unless the edge set
    empties out (only possible through removals).  Ties in the min/max edge
    selection break lexicographically.  An iteration whose candidate set is
    empty records a no-op step (added = None) and moves on.  With
    ``full_recompute`` the curvature cache is rebuilt after every mutation
    instead of locally refreshed; results must be identical.
    """
    check_graph(graph)
    if params.kind is CurvatureKind.NONE:
        return graph, ()
    rng = np.random.Generator(np.random.PCG64(params.seed))
    kind = params.kind
    adj: list[set[int]] = [set(s) for s in graph.neighbor_sets()]
    curv: dict[Edge, float] = {
        (u, v): _curvature(adj, u, v, kind) for u, v in graph.edges()
    }
    steps: list[TraceStep] = []

    for iteration in range(params.max_iterations):
        if not curv:
            break
        target, target_curv = min(curv.items(), key=lambda kv: (kv[1], kv[0]))
        i, j = target

        candidates = sorted(
            {
                _norm(k, l)
                for k in adj[i] | {i}
                for l in adj[j] | {j}
                if k != l and l not in adj[k]
            }
        )
        added: Edge | None = None
        improvement: float | None = None
        if candidates:
            improvements = []
            for k, l in candidates:
                adj[k].add(l)
                adj[l].add(k)
                improvements.append(_curvature(adj, i, j, kind) - target_curv)
                adj[k].remove(l)
                adj[l].remove(k)
            pick = softmax_sample(improvements, params.tau, rng)
            added = candidates[pick]
            improvement = improvements[pick]
            k, l = added
            adj[k].add(l)
            adj[l].add(k)
            curv[added] = 0.0  # placeholder; refreshed below
            _recompute(curv, adj, kind, None if full_recompute else _ball2(adj, k) | _ball2(adj, l))

        removed: Edge | None = None
        removed_curv: float | None = None
        if params.c_plus is not None and curv:
            worst, worst_curv = min(curv.items(), key=lambda kv: (-kv[1], kv[0]))
            if worst_curv > params.c_plus:
                removed, removed_curv = worst, worst_curv
                u, v = worst
                touched = None if full_recompute else _ball2(adj, u) | _ball2(adj, v)
                adj[u].remove(v)
                adj[v].remove(u)
                del curv[worst]
                _recompute(curv, adj, kind, touched)

        steps.append(
            TraceStep(iteration, target, target_curv, added, improvement, removed, removed_curv)
        )

    out = Graph(
        graph.node_count,
        [(u, v) for u in range(graph.node_count) for v in adj[u] if u < v],
    )
    return out, tuple(steps)


def replay_trace(graph: Graph, trace: Iterable[TraceStep]) -> Graph:
    """Apply a recorded trace to ``graph`` and return the resulting graph.

    Validates the trace against the evolving edge set: targets and removed
    edges must be present, added edges absent.
    """
    check_graph(graph)
    adj = [set(s) for s in graph.neighbor_sets()]
    for step in trace:
        ti, tj = step.target
        if tj not in adj[ti]:
            raise CurvkitError(f"trace step {step.iteration}: target {step.target} not an edge")
        if step.added is not None:
            k, l = step.added
            if l in adj[k]:
                raise CurvkitError(f"trace step {step.iteration}: added edge {step.added} already present")
            adj[k].add(l)
            adj[l].add(k)
        if step.removed is not None:
            u, v = step.removed
            if v not in adj[u]:
                raise CurvkitError(f"trace step {step.iteration}: removed edge {step.removed} not present")
            adj[u].remove(v)
            adj[v].remove(u)
    return Graph(
        graph.node_count,
        [(u, v) for u in range(graph.node_count) for v in adj[u] if u < v],
    )


def write_trace(trace: Iterable[TraceStep], path) -> None:
    """One JSON object per line, in iteration order."""
    with open(path, "w", encoding="utf-8") as fh:
        for step in trace:
            fh.write(json.dumps(step.to_json()) + "\n")


def read_trace(path) -> RewiringTrace:
    steps = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line:
                steps.append(TraceStep.from_json(json.loads(line)))
    return tuple(steps)


class SDRF(TransformerMixin, BaseEstimator):
    """Scikit-learn style wrapper around :func:`sdrf`.

    The transformer is stateless: ``fit`` validates input and parameters,
    ``transform`` rewires a graph and returns the new one.  The trace of
    the most recent ``transform`` is kept on ``trace_`` for inspection.

    >>> SDRF(kind="bfc3", max_iterations=1, tau=500.0, seed=0).fit_transform(g)
    """

    def __init__(
        self,
        kind="bfc",
        max_iterations: int = 10,
        tau: float = 20.0,
        c_plus: float | None = None,
        seed: int | None = None,
        full_recompute: bool = False,
    ):
        self.kind = kind
        self.max_iterations = max_iterations
        self.tau = tau
        self.c_plus = c_plus
        self.seed = seed
        self.full_recompute = full_recompute

    def _make_params(self) -> SdrfParams:
        return SdrfParams(
            kind=self.kind,
            max_iterations=self.max_iterations,
            tau=self.tau,
            c_plus=self.c_plus,
            seed=self.seed,
        )

    def fit(self, graph: Graph, y=None) -> "SDRF":
        check_graph(graph)
        self._make_params()
        return self

    def transform(self, graph: Graph) -> Graph:
        out, trace = sdrf(graph, self._make_params(), full_recompute=self.full_recompute)
        self.trace_ = trace
        return out

    def __sklearn_is_fitted__(self) -> bool:
        # Stateless transformer: nothing is learned in fit.
        return True
