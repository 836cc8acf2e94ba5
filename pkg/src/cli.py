#!/usr/bin/env python3
"""
EIT Heat Engine command line
Spectra, reference tables, mirror modulation, invariant checks and entropy bounds
"""

import argparse
import csv
import io
import logging
import math
import sys
from pathlib import Path

import yaml

from src.analyzers import EngineVerifier, ObservableAnalyzer, TableRecomputer, entropy_bounds
from src.config import RunConfig, dump_effective, load_config, to_params, with_overrides
from src.errors import EngineError
from src.models.params import warn_if_not_perturbative
from src.models.results import SpectrumRow
from src.units import thermal_exponent
from src.validation import ValidationError, error_report, parse_grid

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ACCEPTANCE = 3

SPECTRUM_COLUMNS = (
    "sigma_abs", "sigma_em", "brightness", "brightness_over_n41",
    "mod_amplitude", "mod_phase_over_pi", "flags",
)
METHOD_SUFFIXES = {"closed-form": "_closed_form", "floquet": "_floquet"}


def _number(value: float | None) -> str:
    if value is None:
        return ""
    return "{:.8e}".format(value)


def _phase_over_pi(row: SpectrumRow) -> float | None:
    return None if row.mod_phase is None else row.mod_phase / math.pi


def _row_fields(row: SpectrumRow) -> list[str]:
    return [
        _number(row.sigma_abs),
        _number(row.sigma_em),
        _number(row.brightness),
        _number(row.brightness_over_n41),
        _number(row.mod_amplitude),
        _number(_phase_over_pi(row)),
        "|".join(row.flags),
    ]


def _methods(config: RunConfig) -> list[str]:
    if config.method == "both":
        return ["closed-form", "floquet"]
    return [config.method]


def _single_method(config: RunConfig, command: str) -> str:
    if config.method == "both":
        raise ValidationError(f"method 'both' is only available for the spectrum command, not {command}")
    return config.method


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text)
    logger.info(f"Wrote {out}")


def _csv_text(header: list[str], rows: list[list[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def cmd_spectrum(config: RunConfig, out: str | None) -> int:
    """Brightness spectrum over the detuning grid"""
    params = to_params(config)
    methods = _methods(config)
    sweeps = {
        method: ObservableAnalyzer(method, config.harmonics).sweep(params, config.grid()) for method in methods
    }

    if len(methods) == 1:
        header = ["delta_pr_2pi_mhz", *SPECTRUM_COLUMNS]
    else:
        header = ["delta_pr_2pi_mhz"] + [
            column + METHOD_SUFFIXES[method] for method in methods for column in SPECTRUM_COLUMNS
        ]

    rows = []
    for index, delta in enumerate(config.grid().values()):
        line = [_number(float(delta))]
        for method in methods:
            line.extend(_row_fields(sweeps[method][index]))
        rows.append(line)

    _emit(_csv_text(header, rows), out)
    return EXIT_OK


def cmd_modulation(config: RunConfig, out: str | None) -> int:
    """Amplitude and phase of the emitted coherence modulation per grid point"""
    method = _single_method(config, "modulation")
    spectrum = ObservableAnalyzer(method, config.harmonics).sweep(to_params(config), config.grid())
    rows = [
        [_number(row.delta_pr), _number(row.mod_amplitude), _number(_phase_over_pi(row))]
        for row in spectrum
    ]
    _emit(_csv_text(["delta_pr_2pi_mhz", "mod_amplitude", "mod_phase_over_pi"], rows), out)
    return EXIT_OK


def cmd_table(config: RunConfig, table_id: int, out: str | None) -> int:
    """Recompute a reference table; exit 3 when any row or ordering check fails"""
    method = _single_method(config, "table")
    result = TableRecomputer(config.grid(), method, config.harmonics).compute(table_id)

    header = ["serial", "omega_m", "field_over_gamma41"]
    for quantity in ("t_max_over_t0", "entropy", "emission_rate"):
        header += [f"{quantity}_reference", f"{quantity}_computed", f"{quantity}_relative_error"]
    header += ["passed", "note"]

    rows = []
    for row in result.rows:
        line = [str(row.serial), _number(row.omega_m), _number(row.field_over_gamma41)]
        errors = row.relative_errors
        for position in range(3):
            line += [
                _number(row.reference[position]),
                _number(row.computed[position] if row.computed else None),
                _number(errors[position] if errors else None),
            ]
        line += [str(row.passed).lower(), row.note]
        rows.append(line)
    _emit(_csv_text(header, rows), out)

    for check in result.orderings:
        if not check.passed:
            logger.warning(f"Ordering check {check.name} failed ({check.detail})")
    return EXIT_OK if result.passed else EXIT_ACCEPTANCE


def cmd_verify(config: RunConfig, out: str | None) -> int:
    """Invariant suite as a YAML report; exit 3 when a gating check fails"""
    report = EngineVerifier(config.harmonics, config.grid()).run(to_params(config))
    document = {
        "variant": config.variant,
        "passed": report.passed,
        "checks": [
            {
                "name": check.name,
                "residual": float(check.residual),
                "threshold": float(check.threshold),
                "status": check.status,
                "detail": check.detail,
            }
            for check in report.checks
        ],
    }
    _emit(yaml.safe_dump(document, sort_keys=False), out)
    return EXIT_OK if report.passed else EXIT_ACCEPTANCE


def cmd_bounds(config: RunConfig, out: str | None) -> int:
    """Thermal exponents and second-law entropy bounds of the variant"""
    variant = config.engine_variant
    reservoirs = config.reservoirs()
    upper, lower = entropy_bounds(variant, reservoirs)
    document = {
        "variant": variant.value,
        "thermal_exponents": {
            f"channel_4{channel}": thermal_exponent(reservoirs.frequency(channel), reservoirs.temperature(channel))
            for channel in variant.channels
        },
        "entropy_upper": upper,
        "entropy_lower": lower,
    }
    _emit(yaml.safe_dump(document, sort_keys=False), out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="YAML configuration file")
    common.add_argument("--out", help="Output file (default: stdout)")
    common.add_argument("--method", choices=sorted(["closed-form", "floquet", "both"]))
    common.add_argument("--grid", help="Probe detuning grid as min:max:points in 2π·MHz")
    common.add_argument("--harmonics", type=int, help="Harmonic truncation order L")
    common.add_argument("--dump-config", help="Write the effective configuration to this path")

    parser = argparse.ArgumentParser(prog="eit-engine", description=__doc__.strip().splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)
    commands.add_parser("spectrum", parents=[common], help="Brightness spectrum CSV")
    table = commands.add_parser("table", parents=[common], help="Recompute a reference table")
    table.add_argument("--table-id", type=int, choices=[1, 2, 3], required=True)
    commands.add_parser("modulation", parents=[common], help="Mirror modulation per detuning")
    commands.add_parser("verify", parents=[common], help="Invariant checks as YAML")
    commands.add_parser("bounds", parents=[common], help="Entropy bounds as YAML")
    return parser


def _configure(args: argparse.Namespace) -> RunConfig:
    config = load_config(args.config)
    grid = {}
    if args.grid is not None:
        grid_min, grid_max, grid_points = parse_grid(args.grid)
        grid = {"grid_min": grid_min, "grid_max": grid_max, "grid_points": grid_points}
    return with_overrides(config, method=args.method, harmonics=args.harmonics, **grid)


def main(argv: list[str] | None = None) -> int:
    """Run one command; returns the process exit status"""
    logging.basicConfig(level=logging.INFO)
    args = build_parser().parse_args(argv)

    try:
        config = _configure(args)
        warn_if_not_perturbative(to_params(config))
        if args.dump_config:
            dump_effective(config, args.dump_config)
        out = args.out or config.output

        if args.command == "spectrum":
            return cmd_spectrum(config, out)
        if args.command == "table":
            return cmd_table(config, args.table_id, out)
        if args.command == "modulation":
            return cmd_modulation(config, out)
        if args.command == "verify":
            return cmd_verify(config, out)
        return cmd_bounds(config, out)
    except ValidationError as e:
        report = error_report(e, args.command)
        logger.warning(f"Invalid configuration for {args.command}: {report['message']}")
        return report["exit_code"]
    except EngineError as e:
        report = error_report(e, args.command)
        logger.error(f"{report['kind']} in {args.command}: {report['message']}")
        return report["exit_code"]
    except Exception as e:
        report = error_report(e, args.command)
        logger.error(f"Error running {args.command}: {report['message']}")
        return report["exit_code"]


if __name__ == "__main__":
    sys.exit(main())
