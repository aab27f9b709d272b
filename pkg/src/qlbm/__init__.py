"""Quantum lattice Boltzmann pipeline for low-Reynolds 2D flows.

Builds the linearized D2Q9 collision and streaming-with-boundary matrices,
factorizes them into dilated unitaries via SVD plus a two-term diagonal
split, evolves an exact complex statevector through the resulting circuit,
and validates against a classical LBM oracle and analytic flow solutions.
"""

from .lattice import LatticeModel, d2q9, opposite
from .grid import GridSpec, PaddingIndexError, coords_of, flat_index
from .operators import (
    AffineCorrection,
    BcSpec,
    CollisionKernel,
    LbOperator,
    Wall,
    PERIODIC,
    build_collision_operator,
    build_streaming_operator,
    collision_kernel,
    forcing_vector,
    moment_matrices,
    moving_wall_correction,
)
from .operators import advection_collision_kernel
from .oracle import (
    analytic_couette,
    analytic_gaussian,
    analytic_poiseuille,
    classical_step,
    equilibrium,
    l2_relative_error,
    moments,
)
from .factorize import (
    DecomposedOperator,
    DilatedOperator,
    FactorizationError,
    OrthogonalFactor,
    UnitaryTriple,
    decompose_operator,
    dilate_diagonal,
    dilate_orthogonal,
    lcu_diagonal,
    svd_decompose,
)
from .engine import (
    EngineError,
    QState,
    apply_dilated,
    apply_hadamard_ancilla,
    broken_step_no_hadamard,
    broken_step_zero_padding,
    encode,
    qlb_step,
    readout,
    sample_counts,
)
from .cases import (
    CaseConfig,
    ade_case,
    boundary_spec,
    cavity_case,
    couette_case,
    initial_df,
    poiseuille_case,
)
from .bench import ConfigError, RunReport, gate_count_estimate, run_case

__all__ = [
    "LatticeModel", "d2q9", "opposite",
    "GridSpec", "PaddingIndexError", "coords_of", "flat_index",
    "AffineCorrection", "BcSpec", "CollisionKernel", "LbOperator", "Wall",
    "PERIODIC", "build_collision_operator", "build_streaming_operator",
    "collision_kernel", "advection_collision_kernel", "forcing_vector",
    "moment_matrices", "moving_wall_correction",
    "analytic_couette", "analytic_gaussian", "analytic_poiseuille",
    "classical_step", "equilibrium", "l2_relative_error", "moments",
    "DecomposedOperator", "DilatedOperator", "FactorizationError",
    "OrthogonalFactor", "UnitaryTriple", "decompose_operator",
    "dilate_diagonal", "dilate_orthogonal", "lcu_diagonal", "svd_decompose",
    "EngineError", "QState", "apply_dilated", "apply_hadamard_ancilla",
    "broken_step_no_hadamard", "broken_step_zero_padding", "encode",
    "qlb_step", "readout", "sample_counts",
    "CaseConfig", "ade_case", "boundary_spec", "cavity_case", "couette_case",
    "initial_df", "poiseuille_case",
    "ConfigError", "RunReport", "gate_count_estimate", "run_case",
]

__version__ = "0.1.0"
