"""Fault-tolerant quantum attack cost estimation for symmetric ciphers,
hash functions, and RSA/ECC public-key schemes."""

from .catalog import (
    Catalog,
    CatalogError,
    CircuitKind,
    LogicalCircuitSpec,
    default_catalog,
    ecc_logical_qubits,
    load_catalog,
    parse_catalog,
    rsa_logical_qubits,
    serialize_catalog,
)
from .grover import (
    GroverPlan,
    LogicalIterationCost,
    MachineLogicalTotals,
    OracleWrappingCosts,
    iteration_logical_cost,
    iterations_parallel,
    iterations_single,
    machine_logical_totals,
    parallel_success_probability,
    success_probability,
)
from .surface import (
    AttackEstimate,
    BudgetInfeasibleError,
    DistillationDepthError,
    DistillationStack,
    ExecutionProfile,
    FTVariant,
    LogicalTotals,
    PhysicalAssumptions,
    build_distillation_stack,
    calibrated_assumptions,
    execution_profile,
    grover_attack_estimate,
    logical_error_rate,
    required_distance,
    shor_attack_estimate,
)
from .tradeoff import (
    CubicFit,
    CurvePoint,
    DeadlineUnreachableError,
    FitError,
    GroverSweep,
    KnobKind,
    ONE_DAY_LOG2_SECONDS,
    ShorSweepPolicy,
    TradeoffCurve,
    eval_fit,
    fit_cubic,
    one_day_qubits_log2,
    processors_to_deadline,
    rescale_cycle_time,
    security_parameter,
    sweep_grover,
    sweep_shor,
)

__version__ = "0.1.0"
