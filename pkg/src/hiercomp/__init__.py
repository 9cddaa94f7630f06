"""Hierarchical complexity measures for undirected networks."""

from .attachment import (
    MECHANISMS,
    SweepStep,
    SweepTrace,
    add_edges,
    density_sweep,
    edge_weights,
)
from .complexity import (
    ComplexityReport,
    column_sigmas,
    complexity_report,
    hc_global,
    hc_k,
    nhc_alt_sqrtk,
    nhc_global,
    nhc_k,
)
from .generators import ModelSpec, gen_config, gen_er, gen_rgg, gen_rhgg, generate
from .graph import (
    Graph,
    NdsMatrix,
    build_graph,
    component_count,
    degree_support_d2,
    nds,
    nds_matrix,
)
from .theory import (
    BinomialDistribution,
    TheoryApprox,
    UniformDistribution,
    corollary_bound,
    gaussian_pmf_at_quantile,
    nhc_global_approx,
    nhc_k_approx,
    order_stat_sigma,
)
from .workbench import (
    NetworkRecord,
    read_edgelist,
    record_for,
    residual_correlation,
    spearman,
    write_edgelist,
)

__version__ = "0.1.0"

__all__ = [
    "Graph", "NdsMatrix", "build_graph", "nds", "nds_matrix",
    "degree_support_d2", "component_count",
    "column_sigmas", "hc_k", "hc_global", "nhc_k", "nhc_global",
    "nhc_alt_sqrtk", "ComplexityReport", "complexity_report",
    "ModelSpec", "gen_er", "gen_rgg", "gen_rhgg", "gen_config", "generate",
    "BinomialDistribution", "UniformDistribution", "order_stat_sigma",
    "nhc_k_approx", "nhc_global_approx", "corollary_bound",
    "gaussian_pmf_at_quantile", "TheoryApprox",
    "MECHANISMS", "edge_weights", "add_edges", "density_sweep",
    "SweepStep", "SweepTrace",
    "read_edgelist", "write_edgelist", "spearman", "residual_correlation",
    "NetworkRecord", "record_for",
]
