"""Report generation: summary tables, plot-data files, and anchor validation.

Everything emitted here is deterministic: identical catalog, assumptions and
arguments produce byte-identical files (no wall-clock stamps inside outputs).
"""
from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, fields as dataclass_fields
from importlib import resources

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .catalog import Catalog
from .surface import (
    FTVariant,
    PhysicalAssumptions,
    calibrated_assumptions,
    shor_attack_estimate,
)
from .tradeoff import (
    CubicFit,
    TradeoffCurve,
    fit_cubic,
    one_day_qubits_log2,
    processors_to_deadline,
    security_parameter,
    sweep_shor,
)

GROVER_TABLE_ERROR_RATE = 1e-4
SHOR_TABLE_ERROR_RATE = 1e-3
SECONDS_PER_YEAR = 365.25 * 24 * 3600.0

GROVER_TABLE_SCHEMES = ("AES-128", "AES-192", "AES-256", "SHA-256", "SHA3-256", "BITCOIN-POW")
RSA_TABLE_SCHEMES = ("RSA-1024", "RSA-2048", "RSA-3072", "RSA-4096", "RSA-7680", "RSA-15360")
ECC_TABLE_SCHEMES = ("P-160", "P-192", "P-224", "P-256", "P-384", "P-521")


class ConfigError(ValueError):
    """Malformed assumptions configuration document."""


def assumptions_from_config(text: str, base: PhysicalAssumptions) -> PhysicalAssumptions:
    """Apply a TOML config over `base`. Unknown keys are rejected."""
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"malformed config: {exc}") from exc
    known = {f.name for f in dataclass_fields(PhysicalAssumptions)}
    unknown = set(doc) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    values = {f.name: getattr(base, f.name) for f in dataclass_fields(PhysicalAssumptions)}
    values.update(doc)
    try:
        return PhysicalAssumptions(**values)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid assumptions: {exc}") from exc


def assumptions_digest(assumptions: PhysicalAssumptions) -> str:
    """Stable hash of every model constant, for report traceability."""
    payload = ",".join(
        f"{f.name}={getattr(assumptions, f.name)!r}"
        for f in sorted(dataclass_fields(PhysicalAssumptions), key=lambda f: f.name)
    )
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]


# -- Tables ---------------------------------------------------------------

@dataclass(frozen=True)
class SecurityTableRow:
    scheme: str
    qs_bits: float


@dataclass(frozen=True)
class ShorTableRow:
    scheme: str
    one_day_qubits: float
    t_count: int
    cycles: float
    classical_security_bits: int
    fit: CubicFit


def security_table(
    catalog: Catalog, assumptions: PhysicalAssumptions
) -> tuple[SecurityTableRow, ...]:
    """Quantum security parameter per search-family scheme."""
    rows = []
    for name in GROVER_TABLE_SCHEMES:
        spec = catalog.get(name)
        rows.append(SecurityTableRow(name, security_parameter(spec, assumptions)))
    return tuple(rows)


def shor_table(
    catalog: Catalog, assumptions: PhysicalAssumptions, schemes
) -> tuple[ShorTableRow, ...]:
    """Footprint/cycles/T-count summary for factoring or dlog schemes."""
    rows = []
    for name in schemes:
        spec = catalog.get(name)
        est = shor_attack_estimate(spec, assumptions, FTVariant.SURGERY, 1)
        curve = sweep_shor(spec, assumptions)
        fit = fit_cubic(curve)
        rows.append(ShorTableRow(
            scheme=name,
            one_day_qubits=2.0 ** one_day_qubits_log2(fit),
            t_count=spec.t_count,
            cycles=est.cycles_per_cpu,
            classical_security_bits=spec.classical_security_bits,
            fit=fit,
        ))
    return tuple(rows)


def render_security_table(rows) -> str:
    lines = ["scheme        qs", "------------  -----"]
    for r in rows:
        lines.append(f"{r.scheme:<12s}  {r.qs_bits:5.1f}")
    return "\n".join(lines) + "\n"


def render_shor_table(rows) -> str:
    lines = [
        "scheme      one-day qubits  T count     cycles      s",
        "----------  --------------  ----------  ----------  ---",
    ]
    for r in rows:
        lines.append(
            f"{r.scheme:<10s}  {r.one_day_qubits:>14.3g}  {r.t_count:>10.3g}  "
            f"{r.cycles:>10.3g}  {r.classical_security_bits:>3d}"
        )
    return "\n".join(lines) + "\n"


# -- Curve emission -------------------------------------------------------

def _format_number(value: float) -> str:
    return f"{value:.6g}"


def curve_filename(curve: TradeoffCurve) -> str:
    scheme = curve.scheme.lower().replace("/", "-")
    return f"{scheme}_pg{curve.p_g:.0e}_{curve.series_label}.csv"


def emit_curves(curves, destination) -> list[str]:
    """Write one delimited file per series: a header row, then
    knob_log2, x_log2_seconds, y_value, series_label with 6 significant
    digits. Re-running with identical inputs is byte-identical."""
    curves = list(curves)
    if not curves:
        raise ValueError("no curves to emit")
    os.makedirs(destination, exist_ok=True)
    written = []
    for curve in curves:
        path = os.path.join(destination, curve_filename(curve))
        lines = ["knob_log2,x_log2_seconds,y_value,series_label"]
        for p in curve.points:
            lines.append(
                f"{_format_number(p.knob_log2)},{_format_number(p.x_log2_seconds)},"
                f"{_format_number(p.y_value)},{curve.series_label}"
            )
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write("\n".join(lines) + "\n")
        written.append(path)
    return written


def read_curve_points(path) -> list[tuple[float, float]]:
    """Read (x_log2_seconds, y_value) pairs from an emitted curve file."""
    points = []
    with open(path, "r", encoding="utf-8") as handle:
        header = handle.readline().strip().split(",")
        if header[:3] != ["knob_log2", "x_log2_seconds", "y_value"]:
            raise ValueError(f"{path}: not a curve file (bad header)")
        for line in handle:
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            points.append((float(parts[1]), float(parts[2])))
    return points


# -- Report bundle --------------------------------------------------------

@dataclass(frozen=True)
class ReportBundle:
    """Everything one run produced, machine-readable."""

    catalog_version: str
    assumptions_digest: str
    timestamp: str
    tables: dict
    curves: tuple[TradeoffCurve, ...]
    fits: dict

    def to_json(self) -> str:
        def fit_dict(fit: CubicFit) -> dict:
            return {
                "alpha": fit.alpha, "beta": fit.beta, "gamma": fit.gamma,
                "delta": fit.delta, "r_squared": fit.r_squared,
                "x_min": fit.x_min, "x_max": fit.x_max,
            }

        payload = {
            "catalog_version": self.catalog_version,
            "assumptions_digest": self.assumptions_digest,
            "timestamp": self.timestamp,
            "tables": self.tables,
            "curves": [
                {
                    "scheme": c.scheme,
                    "variant": c.variant.value,
                    "p_g": c.p_g,
                    "knob": c.knob.value,
                    "series_label": c.series_label,
                    "points": [
                        [p.knob_log2, p.x_log2_seconds, p.y_value] for p in c.points
                    ],
                }
                for c in self.curves
            ],
            "fits": {name: fit_dict(fit) for name, fit in self.fits.items()},
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def build_tables_bundle(
    catalog: Catalog,
    grover_assumptions: PhysicalAssumptions,
    shor_assumptions: PhysicalAssumptions,
    timestamp: str = "",
) -> tuple[ReportBundle, str]:
    """The three summary tables plus their serialized text form."""
    qs_rows = security_table(catalog, grover_assumptions)
    rsa_rows = shor_table(catalog, shor_assumptions, RSA_TABLE_SCHEMES)
    ecc_rows = shor_table(catalog, shor_assumptions, ECC_TABLE_SCHEMES)
    tables = {
        "security": [{"scheme": r.scheme, "qs": r.qs_bits} for r in qs_rows],
        "rsa": [
            {
                "scheme": r.scheme, "one_day_qubits": r.one_day_qubits,
                "t_count": r.t_count, "cycles": r.cycles,
                "classical_security_bits": r.classical_security_bits,
            }
            for r in rsa_rows
        ],
        "ecc": [
            {
                "scheme": r.scheme, "one_day_qubits": r.one_day_qubits,
                "t_count": r.t_count, "cycles": r.cycles,
                "classical_security_bits": r.classical_security_bits,
            }
            for r in ecc_rows
        ],
    }
    fits = {f"{r.scheme}@{shor_assumptions.p_g:g}": r.fit for r in rsa_rows + ecc_rows}
    bundle = ReportBundle(
        catalog_version=catalog.source_version,
        assumptions_digest=assumptions_digest(shor_assumptions),
        timestamp=timestamp,
        tables=tables,
        curves=(),
        fits=fits,
    )
    text = (
        f"# catalog {catalog.source_version}, assumptions {bundle.assumptions_digest}\n\n"
        f"Search-family security parameter (p_g = {grover_assumptions.p_g:g})\n"
        + render_security_table(qs_rows)
        + f"\nFactoring schemes, 24 h footprint (p_g = {shor_assumptions.p_g:g})\n"
        + render_shor_table(rsa_rows)
        + f"\nElliptic-curve schemes, 24 h footprint (p_g = {shor_assumptions.p_g:g})\n"
        + render_shor_table(ecc_rows)
    )
    return bundle, text


# -- Anchor validation ----------------------------------------------------

@dataclass(frozen=True)
class Anchor:
    scheme: str
    p_g: float
    quantity: str
    expected: float
    tolerance: float
    locator: str


@dataclass(frozen=True)
class AnchorResult:
    anchor: Anchor
    measured: float
    error: float
    passed: bool

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        a = self.anchor
        return (
            f"{status} {a.scheme:<12s} {a.quantity:<16s} pg={a.p_g:<8g} "
            f"measured={self.measured:.6g} expected={a.expected:.6g} "
            f"err={self.error:+.3f} tol={a.tolerance:g} [{a.locator}]"
        )


def load_anchors(text: str | None = None) -> tuple[Anchor, ...]:
    if text is None:
        text = resources.files("qcost.data").joinpath("anchors.toml").read_text("utf-8")
    doc = tomllib.loads(text)
    anchors = []
    for record in doc.get("anchor", []):
        anchors.append(Anchor(
            scheme=record["scheme"],
            p_g=float(record["p_g"]),
            quantity=record["quantity"],
            expected=float(record["expected"]),
            tolerance=float(record["tolerance"]),
            locator=record.get("locator", ""),
        ))
    return tuple(anchors)


def evaluate_anchor(anchor: Anchor, catalog: Catalog) -> AnchorResult:
    """Measure one anchored quantity and compare at its stated tolerance.

    Exact quantities (tolerance 0) compare directly; `log2` quantities
    compare log2(measured / expected); bit-valued quantities compare the
    plain difference.
    """
    spec = catalog.get(anchor.scheme)
    q = anchor.quantity
    if q == "logical_qubits":
        measured, error = float(spec.logical_qubits), float(spec.logical_qubits - anchor.expected)
    elif q == "t_count":
        measured, error = float(spec.t_count), float(spec.t_count - anchor.expected)
    elif q == "scc":
        a = calibrated_assumptions(anchor.p_g)
        est = shor_attack_estimate(spec, a, FTVariant.SURGERY, 1)
        measured = est.cycles_per_cpu
        error = math.log2(measured / anchor.expected)
    elif q == "one_day_qubits":
        a = calibrated_assumptions(anchor.p_g)
        fit = fit_cubic(sweep_shor(spec, a))
        measured = 2.0 ** one_day_qubits_log2(fit)
        error = math.log2(measured / anchor.expected)
    elif q == "fit_r_squared":
        a = calibrated_assumptions(anchor.p_g)
        fit = fit_cubic(sweep_shor(spec, a))
        measured = fit.r_squared
        # one-sided: anything >= expected passes
        error = min(0.0, measured - anchor.expected)
    elif q == "qs":
        a = calibrated_assumptions(anchor.p_g)
        measured = security_parameter(spec, a)
        error = measured - anchor.expected
    elif q == "blackbox_log2_at_2e50":
        from .grover import iterations_parallel

        measured = math.log2(iterations_parallel(spec.search_space_bits, 2**50))
        error = measured - anchor.expected
    elif q == "ideal_gates_log2_at_2e50":
        from .grover import iteration_logical_cost, iterations_parallel

        per_iter = iteration_logical_cost(spec).gate_count_per_iteration
        measured = math.log2(iterations_parallel(spec.search_space_bits, 2**50) * per_iter)
        error = measured - anchor.expected
    elif q == "one_year_kappa":
        a = calibrated_assumptions(anchor.p_g)
        measured = float(processors_to_deadline(spec, a, SECONDS_PER_YEAR))
        error = measured - anchor.expected
    else:
        raise ValueError(f"unknown anchor quantity: {q}")
    return AnchorResult(anchor, measured, error, passed=abs(error) <= anchor.tolerance)


def validate_anchors(catalog: Catalog, anchors=None) -> list[AnchorResult]:
    if anchors is None:
        anchors = load_anchors()
    return [evaluate_anchor(a, catalog) for a in anchors]
