"""Calibration and verification of CNOT gates for detuned, weakly coupled
phase qubits in the rotating-wave approximation.

The package computes closed-form gate times and propagators for the
two-step (entangle / pi-pulse / entangle) sequence, numerically calibrates
the single-step (drive plus coupling) sequence, tracks local equivalence
classes through Makhlin invariants and Weyl-chamber coordinates, fits the
local rotations that turn an entangler into the canonical CNOT, and
evaluates the intrinsic gate fidelity.  A CLI (``cnotsteer``) regenerates
the reference tables, gates, and steering trajectories as CSV/JSON.
"""

from .equivclass import (
    InvariantPair,
    TrajectorySample,
    WeylPoint,
    canonical_class_gate,
    cnot_distance,
    invariants_from_weyl,
    makhlin_invariants,
    trajectory_to_csv,
    two_step_invariants_closed,
    weyl_coordinates,
    weyl_trajectory,
)
from .model import GeneratorName, SystemParams, generator, h_rwa_frame1, h_rwa_frame2
from .optimize import (
    CalibrationResult,
    calibrate_single_step,
    calibrate_two_step,
    results_to_csv,
    sweep,
)
from .propagate import UVPair, entangling_u_frame1, entangling_u_frame2, evolve_stepwise, uv_coefficients
from .qmat import ContractViolationError, expm_skew, frob_dist, kron2
from .sequences import (
    CNOT,
    DetuningOutOfRangeError,
    FidelityUndefinedError,
    FitResult,
    GateRecipe,
    LocalRotationSpec,
    UnsupportedCouplingError,
    assemble_two_step,
    canonical_cnot,
    fidelity,
    fit_local_rotations,
    single_step_rotations,
    single_step_u,
    two_step_entangler,
    two_step_rotations_frame1,
    two_step_rotations_frame2,
    two_step_time,
)
from .simplex import NMOptions, NMResult, nelder_mead

__version__ = "0.1.0"

__all__ = [
    "CNOT",
    "CalibrationResult",
    "ContractViolationError",
    "DetuningOutOfRangeError",
    "FidelityUndefinedError",
    "FitResult",
    "GateRecipe",
    "GeneratorName",
    "InvariantPair",
    "LocalRotationSpec",
    "NMOptions",
    "NMResult",
    "SystemParams",
    "TrajectorySample",
    "UVPair",
    "UnsupportedCouplingError",
    "WeylPoint",
    "assemble_two_step",
    "calibrate_single_step",
    "calibrate_two_step",
    "canonical_class_gate",
    "canonical_cnot",
    "cnot_distance",
    "entangling_u_frame1",
    "entangling_u_frame2",
    "evolve_stepwise",
    "expm_skew",
    "fidelity",
    "fit_local_rotations",
    "frob_dist",
    "generator",
    "h_rwa_frame1",
    "h_rwa_frame2",
    "invariants_from_weyl",
    "kron2",
    "makhlin_invariants",
    "nelder_mead",
    "results_to_csv",
    "single_step_rotations",
    "single_step_u",
    "sweep",
    "trajectory_to_csv",
    "two_step_entangler",
    "two_step_invariants_closed",
    "two_step_rotations_frame1",
    "two_step_rotations_frame2",
    "two_step_time",
    "uv_coefficients",
    "weyl_coordinates",
    "weyl_trajectory",
    "__version__",
]
