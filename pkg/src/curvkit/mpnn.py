"""Numerical verification of the curvature-based Jacobian bound.

A minimal message-passing network with scalar node features:

    h_i^(l+1) = phi(h_i^(l), sum_j A_hat[i, j] * psi(h_i^(l), h_j^(l)))

where A_hat is the symmetric degree-normalised adjacency with self-loops
and the layer family is phi(a, b) = phi_slope * sigma(b), psi(a, b) =
psi_slope * sigma(b) with sigma either the identity or tanh.  The declared
bounds alpha >= |phi_slope| and beta >= |psi_slope| dominate the layer
gradients, so the two-layer Jacobian obeys

    mean over k in Q_j of |d h_k^(l0+2) / d h_i^(l0)| < (alpha*beta)^2 * delta^(1/4)

whenever delta = bfc(i, j) + 2 satisfies delta < 1/sqrt(max(d_i, d_j)) and
delta < 1/gamma_max, and Q_j (the tree-like neighbours of j as seen from i)
has more than 1/delta members.  ``verify_bound`` checks the inequality with
central finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .audit import audit_edge
from .curvature import _cycle_pairs
from .errors import ConditionNotMetError, EmptyGraphError
from .graph import Edge, Graph
from .validation import check_edge, check_graph, check_node

FD_STEP = 1e-5

_ACTIVATIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "identity": lambda x: x,
    "tanh": np.tanh,
}


@dataclass(frozen=True)
class MpnnConfig:
    """Network shape plus the gradient bounds entering the right-hand side.

    alpha and beta are the declared bounds on |grad phi| and |grad psi|.
    phi_slope / psi_slope are the slopes actually used by the layers and
    default to the bounds; they may be smaller (e.g. psi_slope = 0 gives
    the zero message map) but never larger, so the bounds stay honest.
    """

    depth: int = 2
    alpha: float = 1.0
    beta: float = 1.0
    l0: int = 0
    nonlinearity: str = "identity"
    phi_slope: float | None = None
    psi_slope: float | None = None

    def __post_init__(self):
        if not isinstance(self.depth, int) or self.depth < 2:
            raise ValueError(f"depth must be an int >= 2, got {self.depth!r}")
        if not self.alpha > 0 or not self.beta > 0:
            raise ValueError("alpha and beta must be positive")
        if not isinstance(self.l0, int) or not 0 <= self.l0 <= self.depth - 2:
            raise ValueError(f"l0 must satisfy 0 <= l0 <= depth-2, got {self.l0!r}")
        if self.nonlinearity not in _ACTIVATIONS:
            raise ValueError(f"nonlinearity must be one of {sorted(_ACTIVATIONS)}")
        if abs(self._phi) > self.alpha or abs(self._psi) > self.beta:
            raise ValueError("layer slopes may not exceed the declared bounds")

    @property
    def _phi(self) -> float:
        return self.alpha if self.phi_slope is None else float(self.phi_slope)

    @property
    def _psi(self) -> float:
        return self.beta if self.psi_slope is None else float(self.psi_slope)


def normalized_adjacency(graph: Graph) -> np.ndarray:
    """A_hat = D~^(-1/2) (A + I) D~^(-1/2) with D~ = D + I, as a dense array.

    Symmetric, spectral radius <= 1, and A_hat[i, i] = 1 / (degree(i) + 1).
    """
    check_graph(graph)
    n = graph.node_count
    if n == 0:
        raise EmptyGraphError("normalized adjacency needs at least one node")
    a = np.eye(n)
    for u, v in graph.edges():
        a[u, v] = 1.0
        a[v, u] = 1.0
    scale = 1.0 / np.sqrt(np.array([graph.degree(i) + 1.0 for i in range(n)]))
    return scale[:, None] * a * scale[None, :]


def _layer(a_hat: np.ndarray, state: np.ndarray, cfg: MpnnConfig) -> np.ndarray:
    sigma = _ACTIVATIONS[cfg.nonlinearity]
    return cfg._phi * sigma(a_hat @ (cfg._psi * sigma(state)))


def mpnn_forward(graph: Graph, features: Sequence[float], cfg: MpnnConfig) -> list[np.ndarray]:
    """All layer states h^(0) .. h^(depth) for scalar per-node features."""
    a_hat = normalized_adjacency(graph)
    state = np.asarray(features, dtype=float)
    if state.shape != (graph.node_count,):
        raise ValueError(
            f"features must be one scalar per node ({graph.node_count}), got shape {state.shape}"
        )
    states = [state]
    for _ in range(cfg.depth):
        state = _layer(a_hat, state, cfg)
        states.append(state)
    return states


def _base_state(a_hat: np.ndarray, cfg: MpnnConfig) -> np.ndarray:
    """All-ones input propagated to layer l0: the linearisation point."""
    state = np.ones(a_hat.shape[0])
    for _ in range(cfg.l0):
        state = _layer(a_hat, state, cfg)
    return state


def jacobian_from_source(graph: Graph, cfg: MpnnConfig, source: int) -> np.ndarray:
    """d h^(l0+2) / d h_source^(l0) for every target node, by central FD."""
    check_node(graph, source)
    a_hat = normalized_adjacency(graph)
    base = _base_state(a_hat, cfg)
    bump = np.zeros_like(base)
    bump[source] = FD_STEP
    plus = _layer(a_hat, _layer(a_hat, base + bump, cfg), cfg)
    minus = _layer(a_hat, _layer(a_hat, base - bump, cfg), cfg)
    return (plus - minus) / (2.0 * FD_STEP)


def jacobian_entry(graph: Graph, cfg: MpnnConfig, source: int, target: int) -> float:
    """One finite-difference Jacobian entry; equals (A_hat^2)[target, source]
    for identity layers with unit slopes."""
    check_node(graph, target)
    return float(jacobian_from_source(graph, cfg, source)[target])


def tree_like_set(graph: Graph, edge: Edge) -> frozenset[int]:
    """Q_j: neighbours of j at distance two from i that sit on no triangle
    and no diagonal-free four-cycle based at (i, j)."""
    i, j = check_edge(graph, edge)
    adj = graph.neighbor_sets()
    cycle_w = {w for _, w in _cycle_pairs(adj, i, j)}
    return frozenset(adj[j] - adj[i] - {i} - cycle_w)


@dataclass(frozen=True, slots=True)
class BoundReport:
    """Outcome of one bound verification."""

    lhs: float
    rhs: float
    q_size: int
    one_over_delta: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "lhs": self.lhs,
            "rhs": self.rhs,
            "q_size": self.q_size,
            "one_over_delta": self.one_over_delta,
            "pass": self.passed,
        }


def verify_bound(graph: Graph, edge: Edge, cfg: MpnnConfig) -> BoundReport:
    """Check the two-layer Jacobian bound across ``edge`` = (i, j).

    Information flows from i; the Jacobian is averaged over the tree-like
    set on j's side.  Requires delta = bfc(i, j) + 2 to lie strictly inside
    (0, min(1/sqrt(max degree), 1/gamma_max)); otherwise the bound's
    hypotheses fail and ConditionNotMetError is raised.  ``passed`` demands
    both the averaged-Jacobian inequality and |Q_j| > 1/delta.
    """
    i, j = check_edge(graph, edge)
    record = audit_edge(graph, (i, j))
    if not record.cond2:
        raise ConditionNotMetError(
            f"edge ({i}, {j}) violates the bound's hypotheses: delta_max={record.delta_max:.6f}, "
            f"1/sqrt(deg)={record.inv_sqrt_deg:.6f}, 1/gamma_max={record.inv_gamma_max:.6f}"
        )
    delta = record.delta_max
    q = tree_like_set(graph, (i, j))
    jac = jacobian_from_source(graph, cfg, source=i)
    lhs = float(np.mean([abs(jac[k]) for k in sorted(q)])) if q else 0.0
    rhs = (cfg.alpha * cfg.beta) ** 2 * delta**0.25
    one_over_delta = 1.0 / delta
    passed = len(q) > one_over_delta and lhs < rhs
    return BoundReport(lhs=lhs, rhs=rhs, q_size=len(q), one_over_delta=one_over_delta, passed=passed)
