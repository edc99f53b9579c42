"""Berry connections, curvatures and geometric phases for su(n) adiabatic
evolutions, computed from the fundamental Kahler potentials of the flag
manifold G/H and cross-validated against two independent numerical oracles."""

import json as _json

from ._core import (
    AdiabaticityLostError,
    CartanWeylBasis,
    ChartError,
    ClosedCurve,
    ConnectionSample,
    CosetChart,
    CurvatureSample,
    EvolutionResult,
    EvolveOptions,
    GaugeCheckReport,
    HamiltonianPath,
    JobValidationError,
    KahlerPotentials,
    MackeyFactors,
    NonConvergenceError,
    NotUnitaryError,
    QuadratureOptions,
    SingularDecompositionError,
    TauSweepRow,
    TauSweepTable,
    angle_distance,
    cartan_element,
    commutator,
    connection,
    curvature,
    curvature_grid_csv,
    curvature_plane_flux,
    decompose_json,
    default_beta,
    dominant_eigenvector_index,
    dominant_weight,
    evolve,
    fundamental_label,
    fundamental_weights,
    gauge_check,
    hamiltonian_at,
    k_l_potential,
    mackey_decompose,
    matrix_exp,
    nilpotent_rep,
    phase_line_integral,
    projected_det,
    projection_matrices,
    q_vector_direct,
    roots_of,
    run_job_json,
    serialize_job_json,
    su_basis,
    tau_sweep,
    trace_form,
    wirtinger_derivatives,
    wrap_angle,
)

__version__ = "0.1.0"


def run_job(job, with_ode=True):
    """Run a job given as a dict (see docs/job_schema.json); returns the
    report as a dict."""
    return _json.loads(run_job_json(_json.dumps(job), with_ode))


def decompose(job, samples=8):
    """Mackey factors sampled along the job's curve, as a list of dicts."""
    return _json.loads(decompose_json(_json.dumps(job), samples))
