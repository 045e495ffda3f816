# securebeam/cli.py
"""Command-line entry point: one subcommand per experiment, CSV outputs."""
from __future__ import annotations

import argparse
import sys

from .config import ConfigError, InfeasibleGeometryError
from .experiments import (
    ExperimentKind,
    _parse_kv_file,
    run_experiment,
    spec_from_values,
)

_SUBCOMMANDS = {
    "gamma-surface": ExperimentKind.GAMMA_SURFACE,
    "sinr-surface": ExperimentKind.SINR_SURFACE,
    "sr-vs-snr": ExperimentKind.SR_VS_SNR,
    "sr-vs-n": ExperimentKind.SR_VS_N,
    "ber-vs-snr": ExperimentKind.BER_VS_SNR,
}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    parser.add_argument("--method", help="comma-separated subset of ea,min_tp,min_rtp")
    parser.add_argument("--seed", type=int, help="RNG seed (subcarrier draw and BER noise)")
    parser.add_argument("--out", help="output directory (default 'out')")
    parser.add_argument("--snr-list", help="comma-separated SNR values in dB")
    parser.add_argument("--n-list", help="comma-separated antenna counts")
    parser.add_argument("--mc-symbols", type=int, help="QPSK symbols per BER point")
    parser.add_argument(
        "--grid", help="gamma grid as MAX:POINTS, e.g. 3:31 (gamma-surface only)"
    )
    parser.add_argument("--beta", type=float, help="power fraction for the message beam")
    parser.add_argument("--n-antennas", type=int, help="number of transmit antennas")
    parser.add_argument("--snr-db", type=float, help="fixed SNR in dB (surfaces)")
    parser.add_argument("--gamma-cm", type=float, help="message-beam regularization")
    parser.add_argument("--gamma-an", type=float, help="jamming-beam regularization")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="securebeam",
        description="Reproduce secrecy-rate, SINR-field, and BER experiments for "
        "null-steered precise jamming and communication.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _SUBCOMMANDS:
        p = sub.add_parser(name, help=f"run the {name.replace('-', ' ')} experiment")
        _add_common(p)
    return parser


def _values_from_args(args: argparse.Namespace) -> dict[str, str]:
    values: dict[str, str] = {}
    if args.config:
        values.update(_parse_kv_file(args.config))
    values["experiment"] = _SUBCOMMANDS[args.command].value
    overrides = {
        "methods": args.method,
        "seed": args.seed,
        "out_dir": args.out,
        "snr_list": args.snr_list,
        "n_list": args.n_list,
        "mc_symbols": args.mc_symbols,
        "beta": args.beta,
        "n_antennas": args.n_antennas,
        "snr_db": args.snr_db,
        "gamma_cm": args.gamma_cm,
        "gamma_an": args.gamma_an,
    }
    if args.grid is not None:
        try:
            gmax, gpoints = args.grid.split(":", 1)
        except ValueError as exc:
            raise ConfigError(f"--grid expects MAX:POINTS, got {args.grid!r}") from exc
        overrides["gamma_max"] = gmax
        overrides["gamma_points"] = gpoints
    for key, value in overrides.items():
        if value is not None:
            values[key] = str(value)
    return values


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        spec = spec_from_values(_values_from_args(args))
        manifest = run_experiment(spec)
    except ConfigError as exc:
        print(f"securebeam: config error: {exc}", file=sys.stderr)
        return 2
    except InfeasibleGeometryError as exc:
        print(f"securebeam: infeasible geometry: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"securebeam: i/o error: {exc}", file=sys.stderr)
        return 4
    for path in manifest.outputs:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
