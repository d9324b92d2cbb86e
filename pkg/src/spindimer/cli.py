"""Command-line front end: fits, sweeps, and critical-field queries.

Exit codes: 0 success, 2 usage error (argparse or invalid ranges), 3 data
error (bad files, unphysical inputs), 4 numeric failure (underflow, oracle
disagreement, unconverged fit).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .constants import OERSTED_PER_TESLA, TOOL_VERSION, constants_summary
from .core import Basis, DimerParams
from .errors import DataError, NumericError
from .fitting import coherence_series, fit_bleaney_bowers, load_series
from .models import ChiUnit, critical_field
from .sweep import (
    PressureTable,
    SweepSpec,
    SweepTable,
    SweepVariable,
    emit,
    pressure_to_j,
    render_table,
    run_sweep,
)

OUT_DIR_ENV = "SPINDIMER_OUT_DIR"

_UNIT_BY_FLAG = {"emu": ChiUnit.EMU_PER_MOL, "si": ChiUnit.SI_M3_PER_MOL}


def _resolve_out(out: str | None) -> Path | None:
    """Relative --out paths land in $SPINDIMER_OUT_DIR when it is set."""
    if out is None:
        return None
    path = Path(out)
    base = os.environ.get(OUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    return path


def _deliver(table: SweepTable, args: argparse.Namespace) -> None:
    out = _resolve_out(args.out)
    if out is None:
        sys.stdout.write(render_table(table, args.format))
    else:
        emit(table, args.format, out)
        print(f"wrote {out}")


def _fixed_field_tesla(args: argparse.Namespace) -> float:
    if getattr(args, "b_oe", None) is not None:
        return args.b_oe / OERSTED_PER_TESLA
    if getattr(args, "b_tesla", None) is not None:
        return args.b_tesla
    return 0.0


def _cmd_critical_field(args: argparse.Namespace) -> int:
    bc = critical_field(args.j_kelvin, args.g)
    print(f"B_c = {bc.tesla!r} T")
    print(f"B_c = {bc.oersted!r} Oe")
    print(f"bisection agreement: {abs(bc.tesla - bc.tesla_bisection):.3e} T")
    return 0


def _cmd_fit(args: argparse.Namespace) -> int:
    unit = _UNIT_BY_FLAG[args.unit]
    series = load_series(args.csv, unit)
    init = None
    if args.init_j is not None or args.init_g is not None:
        if args.init_j is None or args.init_g is None:
            raise ValueError("--init-j and --init-g must be given together")
        init = (args.init_j, args.init_g)
    fit = fit_bleaney_bowers(series, init)
    print(f"sample = {series.sample_id} ({len(series.points)} points)")
    print(f"J/k_B = {fit.j_over_kb!r} +/- {fit.stderr_j:.3g} K")
    print(f"g = {fit.g!r} +/- {fit.stderr_g:.3g}")
    print(f"rss = {fit.rss!r} ({args.unit} units squared)")
    print(f"iterations = {fit.iterations}, converged = {fit.converged}")
    if not fit.converged:
        raise NumericError("fit did not converge within the iteration budget")
    if args.out is not None:
        table = coherence_series(series, fit)
        _deliver(table, args)
    return 0


def _cmd_sweep_temp(args: argparse.Namespace) -> int:
    fixed = DimerParams(
        j_over_kb=args.j_kelvin,
        g=args.g,
        temperature=1.0,
        b_field=_fixed_field_tesla(args),
    )
    spec = SweepSpec(
        variable=SweepVariable.TEMPERATURE,
        minimum=args.t_min,
        maximum=args.t_max,
        steps=args.t_steps,
        fixed=fixed,
        basis=Basis(args.basis),
    )
    _deliver(run_sweep(spec), args)
    return 0


def _cmd_sweep_field(args: argparse.Namespace) -> int:
    scale = 1.0 if args.field_unit == "tesla" else 1.0 / OERSTED_PER_TESLA
    basis = Basis(args.basis)
    variable = (
        SweepVariable.FIELD_LONGITUDINAL
        if basis is Basis.SZ
        else SweepVariable.FIELD_TRANSVERSE
    )
    fixed = DimerParams(
        j_over_kb=args.j_kelvin,
        g=args.g,
        temperature=args.t_kelvin,
        b_field=0.0,
    )
    spec = SweepSpec(
        variable=variable,
        minimum=args.b_min * scale,
        maximum=args.b_max * scale,
        steps=args.b_steps,
        fixed=fixed,
        basis=basis,
    )
    _deliver(run_sweep(spec), args)
    return 0


def _cmd_sweep_pressure(args: argparse.Namespace) -> int:
    table = PressureTable.from_csv(args.pressure_table)
    fixed = DimerParams(
        j_over_kb=pressure_to_j(table, args.p_min),
        g=args.g,
        temperature=args.t_kelvin,
        b_field=_fixed_field_tesla(args),
    )
    spec = SweepSpec(
        variable=SweepVariable.PRESSURE,
        minimum=args.p_min,
        maximum=args.p_max,
        steps=args.p_steps,
        fixed=fixed,
        basis=Basis(args.basis),
    )
    _deliver(run_sweep(spec, table), args)
    return 0


def _add_output_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument(
        "--out",
        help=f"output file; relative paths resolve under ${OUT_DIR_ENV}",
    )


def _add_fixed_field_flags(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--b-tesla", type=float, help="held field in tesla")
    group.add_argument("--b-oe", type=float, help="held field in oersted")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spindimer",
        description="Thermal coherence of a spin-1/2 dimer: sweeps and fits.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"spindimer {TOOL_VERSION}\n{constants_summary()}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cf = sub.add_parser("critical-field", help="singlet/triplet crossing field")
    p_cf.add_argument("--j-kelvin", type=float, required=True)
    p_cf.add_argument("--g", type=float, default=2.0)
    p_cf.set_defaults(func=_cmd_critical_field)

    p_fit = sub.add_parser("fit", help="fit (J, g) to a chi(T) CSV")
    p_fit.add_argument("csv", help="input file per the T_kelvin,chi contract")
    p_fit.add_argument("--unit", choices=("emu", "si"), default="emu")
    p_fit.add_argument("--init-j", type=float, help="starting J/k_B in kelvin")
    p_fit.add_argument("--init-g", type=float, help="starting g-factor")
    _add_output_flags(p_fit)
    p_fit.set_defaults(func=_cmd_fit)

    p_sweep = sub.add_parser("sweep", help="grid evaluation of the coherence")
    sweep_sub = p_sweep.add_subparsers(dest="sweep_variable", required=True)

    p_temp = sweep_sub.add_parser("temp", help="sweep temperature at fixed field")
    p_temp.add_argument("--t-min", type=float, required=True)
    p_temp.add_argument("--t-max", type=float, required=True)
    p_temp.add_argument("--t-steps", type=int, required=True)
    p_temp.add_argument("--j-kelvin", type=float, required=True)
    p_temp.add_argument("--g", type=float, default=2.0)
    p_temp.add_argument("--basis", choices=("z", "x"), default="z")
    _add_fixed_field_flags(p_temp)
    _add_output_flags(p_temp)
    p_temp.set_defaults(func=_cmd_sweep_temp)

    p_field = sweep_sub.add_parser("field", help="sweep field at fixed temperature")
    p_field.add_argument("--b-min", type=float, required=True)
    p_field.add_argument("--b-max", type=float, required=True)
    p_field.add_argument("--b-steps", type=int, required=True)
    p_field.add_argument("--field-unit", choices=("tesla", "oe"), default="tesla")
    p_field.add_argument("--t-kelvin", type=float, required=True)
    p_field.add_argument("--j-kelvin", type=float, required=True)
    p_field.add_argument("--g", type=float, default=2.0)
    p_field.add_argument("--basis", choices=("z", "x"), default="z")
    _add_output_flags(p_field)
    p_field.set_defaults(func=_cmd_sweep_field)

    p_press = sweep_sub.add_parser(
        "pressure", help="sweep pressure through a J(P) table"
    )
    p_press.add_argument("--p-min", type=float, required=True)
    p_press.add_argument("--p-max", type=float, required=True)
    p_press.add_argument("--p-steps", type=int, required=True)
    p_press.add_argument("--pressure-table", required=True)
    p_press.add_argument("--t-kelvin", type=float, required=True)
    p_press.add_argument("--g", type=float, default=2.0)
    p_press.add_argument("--basis", choices=("z", "x"), default="z")
    _add_fixed_field_flags(p_press)
    _add_output_flags(p_press)
    p_press.set_defaults(func=_cmd_sweep_pressure)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
