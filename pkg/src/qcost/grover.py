"""Parallel Grover search: iteration counts, success probabilities, and
per-machine logical resource totals.

Iteration counts are computed as exact integers (floor of pi/4 * sqrt(N/K))
with pure big-integer arithmetic, so log2 values stay accurate to well below
1e-6 for search spaces up to 2^256. All functions are pure and hold no
global state, so sweeps may call them from any number of threads.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .catalog import CircuitKind, LogicalCircuitSpec

# floor(pi * 2^400): enough bits that the one-sided rounding error below is
# < 2^-199, far from any integer boundary for spaces up to 2^256.
_PI_BITS = 400
_PI_SCALED = 8112377246730971238862271351300894519161151600179265203591191037615230905373990498745523360926816815427566779727327576236
_SQRT_GUARD_BITS = 200


def _floor_quarter_pi_sqrt(numerator: int, denominator: int = 1) -> int:
    """Exact floor((pi/4) * sqrt(numerator/denominator)) for integer inputs.

    Uses pi/4 * sqrt(n/d) = pi * sqrt(n*d) / (4*d) with isqrt on a widened
    operand; both truncations are downward and jointly below 2^-199, so the
    integer floor is exact.
    """
    if numerator == 0:
        return 0
    widened_root = math.isqrt(numerator * denominator << (2 * _SQRT_GUARD_BITS))
    return (_PI_SCALED * widened_root) // (
        (denominator << (_PI_BITS + _SQRT_GUARD_BITS + 2))
    )


def iterations_single(k: int, marked: int = 1) -> int:
    """Grover iterations floor((pi/4) * sqrt(2^k / M)) for one machine."""
    if k < 0:
        raise ValueError(f"search space bits must be >= 0, got {k}")
    space = 1 << k
    if not 1 <= marked <= space:
        raise ValueError(f"marked count {marked} outside [1, 2^{k}]")
    return _floor_quarter_pi_sqrt(space, marked)


def iterations_parallel(k: int, processors: int) -> int:
    """Per-machine iterations when 2^k is partitioned over K machines.

    K must be a power of two with K <= 2^k; each machine searches a
    partition of size 2^k / K, costing floor((pi/4) * sqrt(2^k / K)).
    """
    if k < 0:
        raise ValueError(f"search space bits must be >= 0, got {k}")
    if processors < 1 or processors & (processors - 1) != 0:
        raise ValueError(f"processor count must be a power of two, got {processors}")
    if processors > (1 << k):
        raise ValueError(f"more processors ({processors}) than search space 2^{k}")
    return _floor_quarter_pi_sqrt(1 << k, processors)


def success_probability(m: int, space: int, marked: int = 1) -> float:
    """Closed-form Grover success probability sin^2((2m+1) * asin(sqrt(M/N)))."""
    if space < 1:
        raise ValueError(f"search space must be >= 1, got {space}")
    if not 1 <= marked <= space:
        raise ValueError(f"marked count {marked} outside [1, {space}]")
    if m < 0:
        raise ValueError(f"iteration count must be >= 0, got {m}")
    theta = math.asin(math.sqrt(marked) / math.sqrt(space))
    return math.sin((2 * m + 1) * theta) ** 2


def parallel_success_probability(k: int, processors: int, m: int) -> float:
    """Success probability of the machine whose partition holds the target."""
    if processors < 1 or processors & (processors - 1) != 0:
        raise ValueError(f"processor count must be a power of two, got {processors}")
    if processors > (1 << k):
        raise ValueError(f"more processors ({processors}) than search space 2^{k}")
    return success_probability(m, (1 << k) // processors, 1)


@dataclass(frozen=True)
class GroverPlan:
    """One parallel-search configuration: K machines over a 2^k space."""

    search_space_bits: int
    processors: int
    iterations_per_machine: int
    marked_items: int = 1

    @classmethod
    def build(cls, k: int, processors: int) -> "GroverPlan":
        return cls(
            search_space_bits=k,
            processors=processors,
            iterations_per_machine=iterations_parallel(k, processors),
        )


@dataclass(frozen=True)
class OracleWrappingCosts:
    """Comparator and diffusion costs added around the two oracle calls.

    Defaults model each as a Toffoli ladder over the k-bit register:
    7 T gates and T-depth 3 per Toffoli, ~16 elementary gates per Toffoli,
    plus the diffusion basis changes. These are model inputs, not published
    figures, and can be overridden.
    """

    t_per_toffoli: int = 7
    t_depth_per_toffoli: int = 3
    gates_per_toffoli: int = 16

    def comparator_t_count(self, k: int) -> int:
        return self.t_per_toffoli * max(k - 1, 0)

    def comparator_t_depth(self, k: int) -> int:
        return self.t_depth_per_toffoli * max(k - 1, 0)

    def comparator_gates(self, k: int) -> int:
        return self.gates_per_toffoli * max(k - 1, 0)

    def diffusion_t_count(self, k: int) -> int:
        return self.t_per_toffoli * max(k - 1, 0)

    def diffusion_t_depth(self, k: int) -> int:
        return self.t_depth_per_toffoli * max(k - 1, 0)

    def diffusion_gates(self, k: int) -> int:
        # Hadamard/X conjugation on the register plus the reflection ladder.
        return self.gates_per_toffoli * max(k - 1, 0) + 4 * k


DEFAULT_WRAPPING = OracleWrappingCosts()


@dataclass(frozen=True)
class LogicalIterationCost:
    """Logical cost of one Grover iteration (two oracle calls + wrapping)."""

    t_count_per_iteration: int
    t_depth_per_iteration: int
    gate_count_per_iteration: int
    logical_qubits: int


def iteration_logical_cost(
    spec: LogicalCircuitSpec,
    wrapping: OracleWrappingCosts = DEFAULT_WRAPPING,
) -> LogicalIterationCost:
    """Per-iteration cost for a search-family catalog entry.

    A trivial oracle contributes gate count 1 per iteration (the black-box
    convention); its fault-tolerant T cost is the wrapping alone.
    """
    if spec.kind not in (CircuitKind.GROVER_ORACLE, CircuitKind.TRIVIAL_ORACLE):
        raise ValueError(f"{spec.name}: not a search-family entry ({spec.kind.value})")
    k = spec.search_space_bits or 0
    wrap_t = wrapping.comparator_t_count(k) + wrapping.diffusion_t_count(k)
    wrap_depth = wrapping.comparator_t_depth(k) + wrapping.diffusion_t_depth(k)
    if spec.kind is CircuitKind.TRIVIAL_ORACLE:
        gates = 1
    else:
        oracle_gates = spec.t_count + (spec.clifford_count or 0)
        gates = 2 * oracle_gates + wrapping.comparator_gates(k) + wrapping.diffusion_gates(k)
    return LogicalIterationCost(
        t_count_per_iteration=2 * spec.t_count + wrap_t,
        t_depth_per_iteration=2 * spec.t_depth + wrap_depth,
        gate_count_per_iteration=gates,
        logical_qubits=spec.logical_qubits,
    )


@dataclass(frozen=True)
class MachineLogicalTotals:
    """Per-machine logical totals for a whole parallel search run."""

    scheme: str
    search_space_bits: int
    processors: int
    iterations: int
    t_count: int
    t_depth: int
    gate_count: int
    logical_qubits: int


def machine_logical_totals(
    spec: LogicalCircuitSpec,
    k: int,
    processors: int,
    wrapping: OracleWrappingCosts = DEFAULT_WRAPPING,
) -> MachineLogicalTotals:
    """Totals for one machine: iterations x per-iteration costs (exact ints)."""
    plan = GroverPlan.build(k, processors)
    per_iteration = iteration_logical_cost(spec, wrapping)
    m = plan.iterations_per_machine
    return MachineLogicalTotals(
        scheme=spec.name,
        search_space_bits=k,
        processors=processors,
        iterations=m,
        t_count=m * per_iteration.t_count_per_iteration,
        t_depth=m * per_iteration.t_depth_per_iteration,
        gate_count=m * per_iteration.gate_count_per_iteration,
        logical_qubits=per_iteration.logical_qubits,
    )
