"""Command-line interface.

Subcommands:
  grover SCHEME    four-curve parallel-search sweep plus reference lines
  shor SCHEME      factory sweep, cubic fit, one-day footprint
  tables           reproduce the three summary tables
  fit FILE         fit a cubic to an emitted curve file
  validate         run every anchor check and print one line per anchor

Exit codes: 0 success, 1 validation failure, 2 usage/input error.
"""
from __future__ import annotations

import argparse
import sys

from .catalog import (
    Catalog,
    CatalogError,
    CircuitKind,
    LogicalCircuitSpec,
    default_catalog,
    load_catalog,
)
from .report import (
    ConfigError,
    GROVER_TABLE_ERROR_RATE,
    SHOR_TABLE_ERROR_RATE,
    assumptions_from_config,
    build_tables_bundle,
    emit_curves,
    load_anchors,
    read_curve_points,
    validate_anchors,
)
from .surface import (
    BudgetInfeasibleError,
    DistillationDepthError,
    FTVariant,
    calibrated_assumptions,
)
from .tradeoff import (
    FitError,
    fit_cubic,
    one_day_qubits_log2,
    sweep_grover,
    sweep_shor,
)

USAGE_ERROR = 2
VALIDATION_ERROR = 1


class UsageError(Exception):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcost",
        description="Fault-tolerant quantum attack cost estimates for cryptographic schemes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_pg, default_variant):
        p.add_argument("--pg", type=float, default=default_pg,
                       help=f"physical error rate per gate (default {default_pg:g})")
        p.add_argument("--variant", choices=["braiding", "surgery"], default=default_variant)
        p.add_argument("--cycle-ns", type=float, default=None,
                       help="surface code cycle time in ns (default 200)")
        p.add_argument("--catalog", default=None, help="path to a catalog document")
        p.add_argument("--config", default=None, help="path to an assumptions config")
        p.add_argument("--out", default="qcost-out", help="output directory")

    p_grover = sub.add_parser("grover", help="parallel-search sweep for one scheme")
    p_grover.add_argument("scheme")
    common(p_grover, 1e-4, "braiding")

    p_shor = sub.add_parser("shor", help="factory sweep and fit for one scheme")
    p_shor.add_argument("scheme")
    common(p_shor, 1e-3, "surgery")

    p_tables = sub.add_parser("tables", help="reproduce the summary tables")
    common(p_tables, GROVER_TABLE_ERROR_RATE, "braiding")
    p_tables.add_argument("--pg-shor", type=float, default=SHOR_TABLE_ERROR_RATE,
                          help="error rate for the factoring/dlog tables")

    p_fit = sub.add_parser("fit", help="fit a cubic to a curve file")
    p_fit.add_argument("file")

    p_validate = sub.add_parser("validate", help="run all anchor checks")
    p_validate.add_argument("--catalog", default=None)
    p_validate.add_argument("--anchors", default=None, help="path to an anchor document")
    return parser


def _load_catalog(args) -> Catalog:
    if getattr(args, "catalog", None):
        return load_catalog(args.catalog)
    return default_catalog()


def _assumptions(args, p_g: float):
    assumptions = calibrated_assumptions(p_g)
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as handle:
            assumptions = assumptions_from_config(handle.read(), assumptions)
    if getattr(args, "cycle_ns", None):
        from dataclasses import replace

        assumptions = replace(assumptions, cycle_time_ns=args.cycle_ns)
    return assumptions


def _get_scheme(catalog: Catalog, name: str, kinds) -> LogicalCircuitSpec:
    try:
        spec = catalog.get(name)
    except KeyError:
        raise UsageError(
            f"unknown scheme: {name} (known: {', '.join(catalog.names())})"
        ) from None
    if spec.kind not in kinds:
        wanted = "/".join(k.value for k in kinds)
        raise UsageError(f"{name} is a {spec.kind.value} entry; this command needs {wanted}")
    return spec


def _cmd_grover(args) -> int:
    catalog = _load_catalog(args)
    spec = _get_scheme(
        catalog, args.scheme, (CircuitKind.GROVER_ORACLE, CircuitKind.TRIVIAL_ORACLE)
    )
    assumptions = _assumptions(args, args.pg)
    sweep = sweep_grover(spec, assumptions, variant=FTVariant(args.variant))
    paths = emit_curves(sweep.all_curves(), args.out)
    qs_curve = sweep.series[0]
    print(f"{spec.name}: swept K = 2^0 .. 2^{spec.search_space_bits} at p_g = {args.pg:g}")
    print(f"security parameter (K = 1): {qs_curve.points[0].y_value:.1f} bits")
    for path in paths:
        print(f"wrote {path}")
    return 0


def _cmd_shor(args) -> int:
    catalog = _load_catalog(args)
    spec = _get_scheme(
        catalog, args.scheme, (CircuitKind.SHOR_FACTORING, CircuitKind.SHOR_ECDLP)
    )
    assumptions = _assumptions(args, args.pg)
    curve = sweep_shor(spec, assumptions, FTVariant(args.variant))
    fit = fit_cubic(curve)
    paths = emit_curves([curve], args.out)
    one_day = one_day_qubits_log2(fit)
    print(f"{spec.name} at p_g = {args.pg:g} ({args.variant}):")
    print(f"  fit: y = {fit.alpha:.6g} x^3 + {fit.beta:.6g} x^2 + "
          f"{fit.gamma:.6g} x + {fit.delta:.6g}   (R^2 = {fit.r_squared:.5f})")
    print(f"  one-day footprint: 2^{one_day:.2f} = {2.0**one_day:.3g} physical qubits")
    for path in paths:
        print(f"wrote {path}")
    return 0


def _cmd_tables(args) -> int:
    import os

    catalog = _load_catalog(args)
    grover_a = _assumptions(args, args.pg)
    shor_a = _assumptions(args, args.pg_shor)
    bundle, text = build_tables_bundle(catalog, grover_a, shor_a)
    os.makedirs(args.out, exist_ok=True)
    table_path = os.path.join(args.out, "tables.txt")
    json_path = os.path.join(args.out, "report.json")
    with open(table_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    with open(json_path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(bundle.to_json())
    print(text, end="")
    print(f"wrote {table_path}")
    print(f"wrote {json_path}")
    return 0


def _cmd_fit(args) -> int:
    try:
        points = read_curve_points(args.file)
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc}") from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    fit = fit_cubic(points)
    print(f"fit over {len(points)} points, x in [{fit.x_min:.3f}, {fit.x_max:.3f}]:")
    print(f"  alpha = {fit.alpha:.8g}")
    print(f"  beta  = {fit.beta:.8g}")
    print(f"  gamma = {fit.gamma:.8g}")
    print(f"  delta = {fit.delta:.8g}")
    print(f"  R^2   = {fit.r_squared:.6f}")
    print(f"  one-day point: {one_day_qubits_log2(fit):.4f}")
    return 0


def _cmd_validate(args) -> int:
    catalog = _load_catalog(args)
    anchors = None
    if args.anchors:
        with open(args.anchors, "r", encoding="utf-8") as handle:
            anchors = load_anchors(handle.read())
    results = validate_anchors(catalog, anchors)
    failures = 0
    for result in results:
        print(result.line())
        failures += not result.passed
    print(f"{len(results) - failures}/{len(results)} anchors passed")
    return VALIDATION_ERROR if failures else 0


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; normalize other codes
        return USAGE_ERROR if exc.code not in (0, None) else 0
    handlers = {
        "grover": _cmd_grover,
        "shor": _cmd_shor,
        "tables": _cmd_tables,
        "fit": _cmd_fit,
        "validate": _cmd_validate,
    }
    try:
        return handlers[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (CatalogError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (BudgetInfeasibleError, DistillationDepthError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except FitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
