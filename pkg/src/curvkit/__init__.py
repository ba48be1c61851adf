"""curvkit: discrete graph curvature, stochastic Ricci-flow rewiring,
oversquashing-condition audits, and sweep statistics."""

from .audit import (
    AuditRecord,
    AuditSummary,
    audit_edge,
    audit_rewiring,
    export_condition_scatter,
    read_condition_scatter,
    summarize,
    summary_json,
)
from .curvature import (
    CurvatureKind,
    EdgeLocalStats,
    afc3,
    afc4,
    bfc,
    bfc3,
    bfc_mod,
    curvature,
    curvature_distribution,
    edge_local_stats,
    jlc,
    write_curvature_csv,
)
from .errors import (
    ConditionNotMetError,
    CurvkitError,
    DisconnectedGraphError,
    EmptyGraphError,
    InvalidNodeError,
    MissingEdgeError,
    ParseError,
)
from .graph import (
    Graph,
    LabeledGraph,
    attach_labels,
    complete_graph,
    connected_components,
    cycle_graph,
    double_star,
    erdos_renyi,
    largest_connected_component,
    load_edge_list,
    load_labels,
    path_graph,
    read_id_map,
    save_edge_list,
    star_graph,
    write_id_map,
)
from .mpnn import (
    BoundReport,
    MpnnConfig,
    jacobian_entry,
    jacobian_from_source,
    mpnn_forward,
    normalized_adjacency,
    tree_like_set,
    verify_bound,
)
from .rewiring import (
    SDRF,
    RewiringTrace,
    SdrfParams,
    TraceStep,
    read_trace,
    replay_trace,
    sdrf,
    softmax_probabilities,
    softmax_sample,
    write_trace,
)
from .stats import (
    SampleSet,
    SaturationRow,
    homophily,
    load_samples,
    saturation_analysis,
    spectral_gap,
    top_fraction_summary,
    wasserstein_1d,
    write_saturation_csv,
)
from .validation import check_edge, check_graph, check_node, check_samples

__version__ = "0.1.0"

__all__ = [
    "AuditRecord",
    "AuditSummary",
    "BoundReport",
    "ConditionNotMetError",
    "CurvatureKind",
    "CurvkitError",
    "DisconnectedGraphError",
    "EdgeLocalStats",
    "EmptyGraphError",
    "Graph",
    "InvalidNodeError",
    "LabeledGraph",
    "MissingEdgeError",
    "MpnnConfig",
    "ParseError",
    "RewiringTrace",
    "SDRF",
    "SampleSet",
    "SaturationRow",
    "SdrfParams",
    "TraceStep",
    "afc3",
    "afc4",
    "attach_labels",
    "audit_edge",
    "audit_rewiring",
    "bfc",
    "bfc3",
    "bfc_mod",
    "check_edge",
    "check_graph",
    "check_node",
    "check_samples",
    "complete_graph",
    "connected_components",
    "curvature",
    "curvature_distribution",
    "cycle_graph",
    "double_star",
    "edge_local_stats",
    "erdos_renyi",
    "export_condition_scatter",
    "homophily",
    "jacobian_entry",
    "jacobian_from_source",
    "jlc",
    "largest_connected_component",
    "load_edge_list",
    "load_labels",
    "load_samples",
    "mpnn_forward",
    "normalized_adjacency",
    "path_graph",
    "read_condition_scatter",
    "read_id_map",
    "read_trace",
    "replay_trace",
    "saturation_analysis",
    "save_edge_list",
    "sdrf",
    "softmax_probabilities",
    "softmax_sample",
    "spectral_gap",
    "star_graph",
    "summarize",
    "summary_json",
    "top_fraction_summary",
    "tree_like_set",
    "verify_bound",
    "wasserstein_1d",
    "write_curvature_csv",
    "write_id_map",
    "write_saturation_csv",
    "write_trace",
]
