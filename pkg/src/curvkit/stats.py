"""Evaluation statistics: homophily, spectral gap, Wasserstein distances,
saturation curves and top-fraction summaries for hyperparameter sweeps."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import DisconnectedGraphError, EmptyGraphError, ParseError
from .graph import Graph, LabeledGraph
from .validation import check_fraction, check_graph, check_samples

_ZERO_EIG = 1e-9


@dataclass(frozen=True)
class SampleSet:
    """A batch of scalar samples plus a provenance tag (file stem, sweep id)."""

    values: np.ndarray
    tag: str = ""

    def __post_init__(self):
        object.__setattr__(self, "values", check_samples(self.values))


def load_samples(path) -> SampleSet:
    """Read a ``config_id,accuracy`` CSV into a SampleSet (original order)."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["config_id", "accuracy"]:
        raise ParseError(path, 1, "expected header 'config_id,accuracy'")
    values = []
    for lineno, row in enumerate(rows[1:], 2):
        try:
            values.append(float(row[1]))
        except (ValueError, IndexError):
            raise ParseError(path, lineno, f"bad sample row {row!r}") from None
    if not values:
        raise ParseError(path, len(rows), "no samples in file")
    tag = str(path)
    return SampleSet(np.asarray(values, dtype=float), tag)


def homophily(labeled: LabeledGraph) -> float:
    """Mean, over non-isolated nodes, of the fraction of same-label neighbours.

    Isolated nodes have no neighbour fraction and are excluded from the
    average; a graph with only isolated nodes has no defined homophily.
    """
    g = check_graph(labeled.graph)
    labels = labeled.labels
    ratios = []
    for v in range(g.node_count):
        nbrs = g.neighbors(v)
        if not nbrs:
            continue
        same = sum(1 for u in nbrs if labels[u] == labels[v])
        ratios.append(same / len(nbrs))
    if not ratios:
        raise ValueError("homophily undefined: every node is isolated")
    return float(np.mean(ratios))


def spectral_gap(graph: Graph) -> float:
    """Smallest non-zero eigenvalue of the normalised Laplacian
    L = I - D^(-1/2) A D^(-1/2).

    Eigenvalues below 1e-9 count as zero.  A connected graph has exactly
    one zero eigenvalue; more than one means the graph is disconnected and
    the gap is not the bottleneck proxy you want -- extract the largest
    connected component first.
    """
    check_graph(graph)
    n = graph.node_count
    if n == 0:
        raise EmptyGraphError("spectral gap needs at least one node")
    if any(graph.degree(i) == 0 for i in range(n)):
        raise DisconnectedGraphError(
            "graph has isolated nodes; extract the largest connected component first"
        )
    a = np.zeros((n, n))
    for u, v in graph.edges():
        a[u, v] = 1.0
        a[v, u] = 1.0
    scale = 1.0 / np.sqrt(np.array([graph.degree(i) for i in range(n)], dtype=float))
    lap = np.eye(n) - scale[:, None] * a * scale[None, :]
    eigs = np.linalg.eigvalsh(lap)
    nonzero = eigs[eigs >= _ZERO_EIG]
    if len(eigs) - len(nonzero) > 1:
        raise DisconnectedGraphError(
            "graph is disconnected (multiple zero eigenvalues); "
            "extract the largest connected component first"
        )
    if nonzero.size == 0:
        raise ValueError("spectral gap undefined for a single-node graph")
    return float(nonzero[0])


def wasserstein_1d(a, b) -> float:
    """Exact 1-D Wasserstein-1 distance between two empirical distributions.

    Computed as the area between the two empirical CDFs over the merged
    sorted sample grid; sample sets may have different sizes.
    """
    av = np.sort(check_samples(a))
    bv = np.sort(check_samples(b))
    grid = np.sort(np.concatenate([av, bv]))
    # CDF value of each sample set just after every grid point.
    cdf_a = np.searchsorted(av, grid, side="right") / av.size
    cdf_b = np.searchsorted(bv, grid, side="right") / bv.size
    widths = np.diff(grid)
    return float(np.sum(np.abs(cdf_a[:-1] - cdf_b[:-1]) * widths))


@dataclass(frozen=True, slots=True)
class SaturationRow:
    """Summary of one growing prefix of a sweep, in sweep order."""

    fraction: float
    count: int
    mean: float
    std: float
    wasserstein_from_prev: float | None


def saturation_analysis(samples, checkpoints) -> list[SaturationRow]:
    """Prefix statistics showing whether a sweep's distribution has settled.

    ``checkpoints`` must be strictly increasing fractions in (0, 1]; the
    prefix at fraction f is the first ceil(f * n) samples in their original
    order.  Each row reports mean, population std, and the Wasserstein
    distance from the previous prefix (None for the first row).
    """
    values = check_samples(samples)
    fracs = [check_fraction(c, "checkpoint") for c in checkpoints]
    if not fracs:
        raise ValueError("at least one checkpoint is required")
    if any(b <= a for a, b in zip(fracs, fracs[1:])):
        raise ValueError(f"checkpoints must be strictly increasing, got {list(checkpoints)}")
    rows: list[SaturationRow] = []
    prev: np.ndarray | None = None
    for frac in fracs:
        count = math.ceil(frac * values.size)
        prefix = values[:count]
        rows.append(
            SaturationRow(
                fraction=frac,
                count=count,
                mean=float(prefix.mean()),
                std=float(prefix.std(ddof=0)),
                wasserstein_from_prev=None if prev is None else wasserstein_1d(prev, prefix),
            )
        )
        prev = prefix
    return rows


def write_saturation_csv(rows, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["fraction", "count", "mean", "std", "wasserstein_from_prev"])
        for r in rows:
            wass = "" if r.wasserstein_from_prev is None else f"{r.wasserstein_from_prev:.6f}"
            writer.writerow([f"{r.fraction:.6f}", r.count, f"{r.mean:.6f}", f"{r.std:.6f}", wass])


def top_fraction_summary(samples, fraction: float, ddof: int = 0) -> tuple[float, float]:
    """Mean and std of the ceil(fraction * n) largest samples.

    Population std by default; pass ddof=1 for the sample convention.
    """
    values = check_samples(samples)
    fraction = check_fraction(fraction)
    count = math.ceil(fraction * values.size)
    top = np.sort(values)[-count:]
    if ddof >= top.size:
        raise ValueError(f"ddof={ddof} needs more than {top.size} samples")
    return float(top.mean()), float(top.std(ddof=ddof))
