"""Oversquashing-condition audits of rewiring runs.

For an edge (i, j) let delta_max = bfc(i, j) + 2, the largest curvature
slack admitted by the bound machinery.  Two sufficient conditions are
checked against the local structure:

    cond2  : delta_max < 1/sqrt(max(d_i, d_j))  and  delta_max < 1/gamma_max
    cond2b : delta_max <= 1/#T                  and  delta_max < 1/gamma_max

Vanishing counts make a bound vacuous: #T = 0 or gamma_max = 0 turn the
corresponding reciprocal into +inf, so the comparison is trivially true.
delta_max is always computed from bfc, whatever measure drove the rewiring,
and always against the graph as it stood when the edge was selected.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from typing import AbstractSet, Sequence

from .curvature import _bfc, _stats
from .errors import ParseError
from .graph import Edge, Graph
from .rewiring import SdrfParams, sdrf
from .validation import check_edge, check_graph


@dataclass(frozen=True, slots=True)
class AuditRecord:
    """Condition check of one edge against a snapshot of the graph."""

    edge: Edge
    step_fraction: float
    delta_max: float
    inv_sqrt_deg: float
    inv_triangles: float
    inv_gamma_max: float
    delta_valid: bool
    cond2: bool
    cond2b: bool


@dataclass(frozen=True, slots=True)
class AuditSummary:
    edges_rewired: int
    cond2_count: int
    cond2_percent: float
    cond2b_count: int
    cond2b_percent: float


def _condition_flags(
    delta_max: float, inv_sqrt_deg: float, inv_triangles: float, inv_gamma_max: float
) -> tuple[bool, bool, bool]:
    """(delta_valid, cond2, cond2b) from the record's bound fields.

    delta_max <= 0 marks the record invalid and fails both conditions.
    """
    valid = delta_max > 0.0
    cond2 = valid and delta_max < inv_sqrt_deg and delta_max < inv_gamma_max
    cond2b = valid and delta_max <= inv_triangles and delta_max < inv_gamma_max
    return valid, cond2, cond2b


def _audit_from_adj(
    adj: Sequence[AbstractSet[int]], edge: Edge, step_fraction: float
) -> AuditRecord:
    i, j = edge
    st = _stats(adj, i, j)
    delta_max = _bfc(adj, i, j) + 2.0
    inv_sqrt_deg = 1.0 / math.sqrt(max(st.d_i, st.d_j))
    inv_triangles = math.inf if st.triangles == 0 else 1.0 / st.triangles
    inv_gamma_max = math.inf if st.gamma_max == 0 else 1.0 / st.gamma_max
    valid, cond2, cond2b = _condition_flags(delta_max, inv_sqrt_deg, inv_triangles, inv_gamma_max)
    return AuditRecord(
        edge=(i, j),
        step_fraction=step_fraction,
        delta_max=delta_max,
        inv_sqrt_deg=inv_sqrt_deg,
        inv_triangles=inv_triangles,
        inv_gamma_max=inv_gamma_max,
        delta_valid=valid,
        cond2=cond2,
        cond2b=cond2b,
    )


def audit_edge(graph: Graph, edge: Edge, step_fraction: float = 0.0) -> AuditRecord:
    """Audit a single existing edge on the graph as given."""
    edge = check_edge(graph, edge)
    return _audit_from_adj(graph.neighbor_sets(), edge, step_fraction)


def audit_rewiring(
    graph: Graph, params: SdrfParams, *, full_recompute: bool = False
) -> tuple[AuditSummary, list[AuditRecord]]:
    """Rewire with ``params`` and audit every targeted edge.

    Each iteration's target is audited against the graph as it stood at
    selection time (before that iteration's addition and removal), which is
    reconstructed by replaying the trace.  Auditing is a pure observer: it
    never touches the rewiring run's generator, so the rewired graph is the
    same with or without it.
    """
    check_graph(graph)
    _, trace = sdrf(graph, params, full_recompute=full_recompute)
    adj = [set(s) for s in graph.neighbor_sets()]
    records: list[AuditRecord] = []
    for step in trace:
        fraction = step.iteration / params.max_iterations
        records.append(_audit_from_adj(adj, step.target, fraction))
        if step.added is not None:
            k, l = step.added
            adj[k].add(l)
            adj[l].add(k)
        if step.removed is not None:
            u, v = step.removed
            adj[u].remove(v)
            adj[v].remove(u)
    return summarize(records), records


def summarize(records: Sequence[AuditRecord]) -> AuditSummary:
    n = len(records)
    c2 = sum(1 for r in records if r.cond2)
    c2b = sum(1 for r in records if r.cond2b)
    return AuditSummary(
        edges_rewired=n,
        cond2_count=c2,
        cond2_percent=100.0 * c2 / n if n else 0.0,
        cond2b_count=c2b,
        cond2b_percent=100.0 * c2b / n if n else 0.0,
    )


def summary_json(summary: AuditSummary, dataset: str, kind: str) -> dict:
    """The wire format used by the CLI's summary.json."""
    return {
        "dataset": dataset,
        "kind": kind,
        "edges_rewired": summary.edges_rewired,
        "cond2": {"count": summary.cond2_count, "percent": summary.cond2_percent},
        "cond2b": {"count": summary.cond2b_count, "percent": summary.cond2b_percent},
    }


def write_summary_json(summary: AuditSummary, dataset: str, kind: str, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary_json(summary, dataset, kind), fh, indent=2, sort_keys=True)
        fh.write("\n")


_SCATTER_HEADER = ["delta_max", "inv_triangles", "inv_gamma_max", "step_fraction", "cond2b"]


def _fmt(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.6f}"


def export_condition_scatter(records: Sequence[AuditRecord], path) -> None:
    """Per-record scatter data (the audit's plottable view); +inf stays "inf"."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(_SCATTER_HEADER)
        for r in records:
            writer.writerow(
                [
                    _fmt(r.delta_max),
                    _fmt(r.inv_triangles),
                    _fmt(r.inv_gamma_max),
                    _fmt(r.step_fraction),
                    "1" if r.cond2b else "0",
                ]
            )


def read_condition_scatter(path) -> list[tuple[float, float, float, float, bool]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != _SCATTER_HEADER:
        raise ParseError(path, 1, f"expected header {','.join(_SCATTER_HEADER)}")
    out = []
    for lineno, row in enumerate(rows[1:], 2):
        try:
            out.append((float(row[0]), float(row[1]), float(row[2]), float(row[3]), row[4] == "1"))
        except (ValueError, IndexError):
            raise ParseError(path, lineno, f"bad scatter row {row!r}") from None
    return out
