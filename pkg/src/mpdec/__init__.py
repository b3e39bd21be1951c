"""Conservative, positivity-preserving time integration for
production-destruction ODE systems, at arbitrary order."""

from .backend import active_backend_name, available_backends
from .baselines import (
    classical_dec_step,
    explicit_euler_step,
    modified_patankar_euler_step,
    patankar_euler_step,
    ssprk104_integrate,
    ssprk104_step,
)
from .dec_tables import DecTables, build_tables, dump_tables_csv, lagrange_basis_value
from .exceptions import (
    NonFiniteRateError,
    NumericalError,
    PositivityError,
    SingularMatrixError,
)
from .harness import (
    ErrorReport,
    ErrorRow,
    convergence_study,
    discrete_l2_error,
    emit_csv,
    final_time_error,
    pairwise_slope,
    read_trajectory_csv,
    successive_refinement_error,
)
from .linsolve import is_column_diagonally_dominant, jacobi_inverse_iteration, solve
from .pds import (
    ProductionDestructionSystem,
    StructureReport,
    check_conservative_structure,
    evaluate_rates,
    system_from_table,
    total_exchange,
)
from .problems import (
    BenchmarkProblem,
    get_problem,
    linear_problem,
    nonlinear_problem,
    problem_names,
    robertson_problem,
)
from .scheme import (
    POSITIVITY_FLOOR,
    CorrectionGrid,
    MPDeCConfig,
    StepSchedule,
    Trajectory,
    assemble_mass_matrix,
    correction_sweep,
    gamma,
    integrate,
    mpdec_step,
)

__version__ = "0.1.0"

__all__ = [
    "BenchmarkProblem",
    "CorrectionGrid",
    "DecTables",
    "ErrorReport",
    "ErrorRow",
    "MPDeCConfig",
    "NonFiniteRateError",
    "NumericalError",
    "POSITIVITY_FLOOR",
    "PositivityError",
    "ProductionDestructionSystem",
    "SingularMatrixError",
    "StepSchedule",
    "StructureReport",
    "Trajectory",
    "active_backend_name",
    "assemble_mass_matrix",
    "available_backends",
    "build_tables",
    "check_conservative_structure",
    "classical_dec_step",
    "convergence_study",
    "correction_sweep",
    "discrete_l2_error",
    "dump_tables_csv",
    "emit_csv",
    "evaluate_rates",
    "explicit_euler_step",
    "final_time_error",
    "gamma",
    "get_problem",
    "integrate",
    "is_column_diagonally_dominant",
    "jacobi_inverse_iteration",
    "lagrange_basis_value",
    "linear_problem",
    "modified_patankar_euler_step",
    "mpdec_step",
    "nonlinear_problem",
    "pairwise_slope",
    "patankar_euler_step",
    "problem_names",
    "read_trajectory_csv",
    "robertson_problem",
    "solve",
    "ssprk104_integrate",
    "ssprk104_step",
    "successive_refinement_error",
    "system_from_table",
    "total_exchange",
]
