"""``zeno`` command line entry point.

Exit codes: 0 success, 2 usage or parse error, 3 capacity error,
4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

from .errors import UsageError, ZenoError
from .experiments import (
    BACKENDS,
    DEFAULT_SHOTS,
    SweepConfig,
    build_qze_circuit,
    build_rabi_circuit,
    build_sliced_rotation_circuit,
    rabi_summary,
    run_sweep,
    verify_decomposition,
)
from .serialize import emit_csv, emit_json, emit_qasm, emit_svg, format_angle, parse_angle, print_trace

SEED_ENV = "ZENO_SEED"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_INVARIANT = 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ZenoError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _n_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:(?:\.\.|-|:)\s*(\d+))?\s*", text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    return lo, hi


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env is None or not env.strip():
        return 0
    try:
        return int(env, 0)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={env!r} is not an integer") from None


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        # newline="" keeps the bytes identical across platforms
        with open(Path(out), "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zeno", description="Quantum Zeno effect circuits: exact simulation and sampling.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, shots=True):
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        if shots:
            p.add_argument("--shots", type=int, default=DEFAULT_SHOTS)
            p.add_argument("--seed", type=lambda s: int(s, 0), default=None,
                           help=f"sampling seed (falls back to ${SEED_ENV}, then 0)")

    p = sub.add_parser("sweep", help="survival probability against n for one or more angles")
    p.add_argument("--theta", type=_angle, action="append",
                   help="total rotation, e.g. pi/2; repeat for several series (default pi/2)")
    p.add_argument("--n", type=_n_range, default=(1, 14), help="n or n range A..B (default 1..14)")
    p.add_argument("--format", choices=("csv", "json", "svg"), default="csv")
    p.add_argument("--backends", default=",".join(BACKENDS),
                   help="comma-separated subset of " + ",".join(BACKENDS))
    p.add_argument("--workers", type=int, default=1)
    common(p)

    p = sub.add_parser("rabi", help="single-gate Rabi circuit")
    p.add_argument("--theta", type=_angle, default=parse_angle("pi/2"))
    p.add_argument("--format", choices=("text", "json"), default="text")
    common(p)

    p = sub.add_parser("trace", help="state after every gate of a Zeno circuit")
    p.add_argument("--theta", type=_angle, default=parse_angle("pi/2"))
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--format", choices=("text",), default="text")
    common(p, shots=False)

    p = sub.add_parser("verify-decomp", help="compare one rotation against equal slices")
    p.add_argument("--theta", type=_angle, default=parse_angle("pi/2"))
    p.add_argument("--slices", type=int, default=8)
    p.add_argument("--format", choices=("text", "json"), default="text")
    common(p, shots=False)

    p = sub.add_parser("qasm", help="emit OpenQASM 2.0 for a circuit")
    p.add_argument("--theta", type=_angle, default=parse_angle("pi/2"))
    group = p.add_mutually_exclusive_group()
    group.add_argument("--n", type=int, default=None, help="Zeno circuit with n measured slices")
    group.add_argument("--slices", type=int, default=None, help="sliced rotation without ancillas")
    p.add_argument("--format", choices=("qasm",), default="qasm")
    common(p, shots=False)
    return parser


def _cmd_sweep(args) -> str:
    thetas = args.theta or [parse_angle("pi/2")]
    backends = tuple(b.strip() for b in args.backends.split(",") if b.strip())
    n_min, n_max = args.n
    seed = _seed(args)
    curves = [
        run_sweep(SweepConfig(theta, n_min, n_max, args.shots, seed, backends, args.workers))
        for theta in thetas
    ]
    if args.format == "csv":
        return emit_csv(curves)
    if args.format == "json":
        return emit_json(curves[0] if len(curves) == 1 else curves)
    return emit_svg(curves)


def _cmd_rabi(args) -> str:
    summary = rabi_summary(args.theta, args.shots, _seed(args))
    if args.format == "json":
        return json.dumps(summary, indent=2) + "\n"
    return (
        f"theta={format_angle(args.theta)}\n"
        f"p_exact={summary['p_exact']:.12f}\n"
        f"counts0={summary['counts0']} counts1={summary['counts1']} shots={summary['shots']} seed={summary['seed']}\n"
        f"p_sampled={summary['p_sampled']:.6f}\n"
    )


def _cmd_trace(args) -> str:
    return print_trace(build_qze_circuit(args.theta, args.n))


def _cmd_verify(args) -> str:
    report = verify_decomposition(args.theta, args.slices)
    data = {
        "theta": report.theta_total,
        "n_slices": report.n_slices,
        "p_single": report.p_single,
        "p_sliced": report.p_sliced,
        "probability_gap": report.probability_gap,
        "max_entrywise_gate_gap": report.max_entrywise_gate_gap,
    }
    if args.format == "json":
        return json.dumps(data, indent=2) + "\n"
    return (
        f"theta={format_angle(report.theta_total)} slices={report.n_slices}\n"
        f"p_single={report.p_single:.12f}\n"
        f"p_sliced={report.p_sliced:.12f}\n"
        f"probability_gap={report.probability_gap:.3e}\n"
        f"max_entrywise_gate_gap={report.max_entrywise_gate_gap:.3e}\n"
    )


def _cmd_qasm(args) -> str:
    if args.n is not None:
        circuit = build_qze_circuit(args.theta, args.n)
    elif args.slices is not None:
        circuit = build_sliced_rotation_circuit(args.theta, args.slices)
    else:
        circuit = build_rabi_circuit(args.theta)
    return emit_qasm(circuit)


_COMMANDS = {
    "sweep": _cmd_sweep,
    "rabi": _cmd_rabi,
    "trace": _cmd_trace,
    "verify-decomp": _cmd_verify,
    "qasm": _cmd_qasm,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        text = _COMMANDS[args.command](args)
        _write(text, args.out)
    except ZenoError as exc:
        print(f"zeno: error: {exc}", file=sys.stderr)
        return exc.exit_code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
