"""Command-line interface.

Subcommands: synth, sweep, fit-energy, threshold, quartic-fit,
validate-noise, compare-bounds. Exit codes: 0 success, 2 schema/fixture
error, 3 resource ceiling, 4 insufficient data.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    BudgetInfeasible,
    CandidateLimitExceeded,
    FactorTimeout,
    FixtureError,
    InsufficientData,
    TooManyQubits,
)
from .experiments import (
    bounds_to_csv,
    compare_bounds,
    fit_energy,
    format_float,
    ideal_reference,
    load_system,
    quartic_extrapolate,
    quartic_fit,
    rows_from_csv,
    run_sweep,
    sweep_to_csv,
    threshold_nt,
)
from .noise_model import validate_noise_report
from .synthesis import SynthesisRequest, synthesize_budgeted

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_RESOURCE = 3
EXIT_INSUFFICIENT = 4


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _rows_to_json(columns, rows) -> str:
    return json.dumps([dict(zip(columns, row)) for row in rows], sort_keys=True)


def _nt_range(args) -> list[int]:
    return list(range(args.nt_min, args.nt_max + 1, args.nt_step))


def cmd_synth(args) -> int:
    res = synthesize_budgeted(SynthesisRequest(args.theta, args.nt, seed=args.seed))
    _emit(res.to_json(), args.out)
    return EXIT_OK


def cmd_sweep(args) -> int:
    system = load_system(args.fixture)
    rows = run_sweep(system, _nt_range(args), seed=args.seed)
    if args.format == "json":
        payload = json.dumps(
            [
                {k: getattr(r, k) for k in (
                    "system", "n_qubits", "L", "n_t", "eps_max", "eps_mean",
                    "total_t_count", "energy", "fidelity", "wall_time_s")}
                for r in rows
            ],
            sort_keys=True,
        )
        _emit(payload, args.out)
    else:
        _emit(sweep_to_csv(rows), args.out)
    return EXIT_OK


def cmd_fit_energy(args) -> int:
    text = Path(args.sweep).read_text()
    rows = rows_from_csv(text)
    fit = fit_energy(
        [(r.n_t, r.energy) for r in rows],
        e_ideal=args.e_ideal,
        L=args.L if args.L is not None else rows[0].L,
        nt_fit_min=args.nt_fit_min,
        abs_model=args.abs_model,
    )
    _emit(
        json.dumps(
            {
                "c": fit.c,
                "e_ideal": fit.e_ideal,
                "L": fit.L,
                "residual_rms": fit.residual,
                "n_points": fit.n_points,
                "abs_model": args.abs_model,
            },
            sort_keys=True,
        ),
        args.out,
    )
    return EXIT_OK


def cmd_threshold(args) -> int:
    rows = rows_from_csv(Path(args.sweep).read_text())
    if args.f_ideal is not None:
        f_ideal = args.f_ideal
    elif args.fixture:
        _, f_ideal, _ = ideal_reference(load_system(args.fixture))
    else:
        raise InsufficientData("provide --f-ideal or --fixture")
    stable, first = threshold_nt([(r.n_t, r.fidelity) for r in rows], f_ideal)
    _emit(
        json.dumps(
            {
                "f_ideal": f_ideal,
                "threshold_stable": stable,
                "threshold_first_crossing": first,
            },
            sort_keys=True,
        ),
        args.out,
    )
    return EXIT_OK


def cmd_quartic_fit(args) -> int:
    points = []
    for spec in args.point:
        n_str, _, y_str = spec.partition(":")
        points.append((int(n_str), float(y_str)))
    a = quartic_fit(points)
    payload = {"a": a, "points": points}
    if args.extrapolate_n is not None:
        payload["extrapolation_n"] = args.extrapolate_n
        payload["extrapolated_t_count"] = quartic_extrapolate(a, args.extrapolate_n)
    _emit(json.dumps(payload, sort_keys=True), args.out)
    return EXIT_OK


def cmd_validate_noise(args) -> int:
    reports = [
        validate_noise_report(d, args.samples, seed=args.seed) for d in args.delta
    ]
    _emit(json.dumps(reports, sort_keys=True), args.out)
    return EXIT_OK


def cmd_compare_bounds(args) -> int:
    system = load_system(args.fixture)
    rows = compare_bounds(system, _nt_range(args), seed=args.seed)
    if args.format == "json":
        _emit(json.dumps(rows, sort_keys=True), args.out)
    else:
        _emit(bounds_to_csv(rows), args.out)
    return EXIT_OK


def _add_common(p: argparse.ArgumentParser, fixture: bool = False,
                nt_range: bool = False) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    if fixture:
        p.add_argument("--fixture", type=str, required=True,
                       help="packaged system (h2/h4/h6) or fixture path")
    if nt_range:
        p.add_argument("--nt-min", type=int, default=22)
        p.add_argument("--nt-max", type=int, default=50)
        p.add_argument("--nt-step", type=int, default=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cliffordt",
        description="Clifford+T synthesis and decomposition-error experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="approximate Rz(theta) within a T budget")
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--nt", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sweep", help="decompose/simulate a fixture over N_T")
    _add_common(p, fixture=True, nt_range=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("fit-energy", help="fit the depolarizing energy model")
    p.add_argument("--sweep", type=str, required=True, help="sweep CSV path")
    p.add_argument("--e-ideal", type=float, required=True)
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--nt-fit-min", type=int, default=32)
    p.add_argument("--abs-model", action="store_true",
                   help="fit with |E_ideal| in the deviation term")
    _add_common(p)
    p.set_defaults(func=cmd_fit_energy)

    p = sub.add_parser("threshold", help="fidelity threshold from a sweep CSV")
    p.add_argument("--sweep", type=str, required=True)
    p.add_argument("--f-ideal", type=float, default=None)
    p.add_argument("--fixture", type=str, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=str, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("quartic-fit", help="least squares a for y = a*n^4")
    p.add_argument("--point", action="append", required=True,
                   metavar="N:Y", help="repeatable, e.g. --point 4:320")
    p.add_argument("--extrapolate-n", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_quartic_fit)

    p = sub.add_parser("validate-noise", help="MC check of the averaged channel")
    p.add_argument("--delta", type=float, action="append", required=True)
    p.add_argument("--samples", type=int, default=10**6)
    _add_common(p)
    p.set_defaults(func=cmd_validate_noise)

    p = sub.add_parser("compare-bounds", help="measured vs bound energy errors")
    _add_common(p, fixture=True, nt_range=True)
    p.set_defaults(func=cmd_compare_bounds)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FixtureError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (TooManyQubits, CandidateLimitExceeded, FactorTimeout,
            BudgetInfeasible) as exc:
        print(f"resource ceiling: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except InsufficientData as exc:
        print(f"insufficient data: {exc}", file=sys.stderr)
        return EXIT_INSUFFICIENT


if __name__ == "__main__":
    sys.exit(main())
