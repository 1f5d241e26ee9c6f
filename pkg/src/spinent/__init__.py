"""Thermal-equilibrium entanglement of dipolar-coupled spin-1/2 clusters.

The package builds small spin clusters (pairs, chains, circles, custom
geometries), assembles their dimensionless Zeeman plus full dipolar
Hamiltonians, forms equilibrium states at positive or negative inverse
temperature, and evaluates the pairwise Wootters concurrence, including
temperature/field sweeps and entanglement phase boundaries.
"""

from .analytic import (
    InFieldEigenvalues,
    PhysicalUnits,
    beta_to_temperature,
    critical_beta,
    critical_beta_zero_field_exact,
    infield_discrepancy,
    two_spin_infield_concurrence_analytic,
    two_spin_infield_eigs,
    zero_field_concurrence_analytic,
    zero_field_partition,
)
from .entanglement import (
    ConcurrenceBreakdown,
    concurrence,
    pair_concurrence,
    partial_trace_pair,
    spin_flip,
)
from .errors import (
    BetaRangeError,
    ClusterParseError,
    ContractViolationError,
    DomainError,
    SpinentError,
)
from .geometry import (
    PairGeometry,
    SpinCluster,
    build_chain,
    build_circle,
    cluster_from_positions,
    pair_geometry,
    parse_cluster_config,
    serialize_cluster,
)
from .hamiltonian import (
    ModelParams,
    dipolar_hamiltonian,
    pair_coupling,
    total_hamiltonian,
    zeeman_hamiltonian,
)
from .operators import (
    EigenSystem,
    hermitian_eigensystem,
    matrix_function,
    psd_sqrt,
    spin_operator,
)
from .sweep import (
    GridSpec,
    PhaseBoundary,
    SweepRow,
    SweepTable,
    phase_diagram,
    read_csv,
    sweep_beta,
    sweep_grid,
    trace_phase_boundary,
    write_csv,
)
from .thermal import gibbs_state, limit_state, validate_density_matrix
from .version import __version__

__all__ = [
    "BetaRangeError",
    "ClusterParseError",
    "ConcurrenceBreakdown",
    "ContractViolationError",
    "DomainError",
    "EigenSystem",
    "GridSpec",
    "InFieldEigenvalues",
    "ModelParams",
    "PairGeometry",
    "PhaseBoundary",
    "PhysicalUnits",
    "SpinCluster",
    "SpinentError",
    "SweepRow",
    "SweepTable",
    "__version__",
    "beta_to_temperature",
    "build_chain",
    "build_circle",
    "cluster_from_positions",
    "concurrence",
    "critical_beta",
    "critical_beta_zero_field_exact",
    "dipolar_hamiltonian",
    "gibbs_state",
    "hermitian_eigensystem",
    "infield_discrepancy",
    "limit_state",
    "matrix_function",
    "pair_concurrence",
    "pair_coupling",
    "pair_geometry",
    "parse_cluster_config",
    "partial_trace_pair",
    "phase_diagram",
    "psd_sqrt",
    "read_csv",
    "serialize_cluster",
    "spin_flip",
    "spin_operator",
    "sweep_beta",
    "sweep_grid",
    "total_hamiltonian",
    "trace_phase_boundary",
    "two_spin_infield_concurrence_analytic",
    "two_spin_infield_eigs",
    "validate_density_matrix",
    "write_csv",
    "zeeman_hamiltonian",
    "zero_field_concurrence_analytic",
    "zero_field_partition",
]
