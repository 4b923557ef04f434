"""Command line front end.

Subcommands: lll, hc, ldsf, hybrid, sweep, freq, oracle.  Every command
reads the bracketed lattice format via --in, honors --seed and --alpha,
and can emit a structured JSON report (--report) and/or CSV (--out-csv).
Exit codes: 0 success, 1 usage or input error, 2 computation error.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal
from typing import Sequence

from . import serialize
from .bench import improvement_frequency, radius_sweep
from .core import Basis, metrics, svp_oracle
from .errors import (
    BadBlockingError,
    BadStageParamsError,
    DegreeMismatchError,
    DegreeTooSmallError,
    InfeasibleRadiusError,
    LatticeError,
    NotPrimeError,
    ParseError,
    RankDeficientError,
    StageInfeasibleError,
)
from .hillclimb import (
    FixedRadius,
    HcConfig,
    Psl2,
    VariableRadius,
    hc_fixed,
    hc_psl2,
    hc_variable,
)
from .latfile import load_lattice
from .ldsf import LdsfConfig, ldsf_run
from .lll import LllParams, lll_reduce
from .pipeline import run_pipeline, stage_from_dict

USAGE_ERRORS = (
    ParseError,
    RankDeficientError,
    InfeasibleRadiusError,
    NotPrimeError,
    DegreeMismatchError,
    DegreeTooSmallError,
    BadBlockingError,
    BadStageParamsError,
    StageInfeasibleError,
    ValueError,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; the contract here is 1.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_with(message))

    def exit_with(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return 1


def _radii(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad radius list {text!r}") from exc


def _decimal(text: str) -> Decimal:
    try:
        return Decimal(text)
    except ArithmeticError as exc:
        raise argparse.ArgumentTypeError(f"bad decimal {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--alpha",
        default="3/4",
        help="reduction parameter as an exact rational, e.g. 3/4 or 0.9999",
    )
    common.add_argument("--seed", type=int, default=0, help="64-bit experiment seed")
    common.add_argument("--in", dest="infile", required=True, help="lattice file")
    common.add_argument("--out-csv", help="write tabular output to this CSV file")
    common.add_argument("--report", help="write a JSON report to this file")

    parser = _Parser(prog="latforge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("lll", parents=[common], help="single reduction")

    hc = sub.add_parser("hc", parents=[common], help="hill climbing reduction")
    hc.add_argument("--radius", type=int, help="fixed-radius walk")
    hc.add_argument("--r0", type=int, help="starting radius of a variable walk")
    hc.add_argument("--rstep", type=int, default=1, help="radius increment per step")
    hc.add_argument("--psl2", type=int, help="prime p for the PSL(2,p) walk")
    hc.add_argument("--k", type=int, default=10, help="permutations per step")
    hc.add_argument("--p", type=int, default=5, help="maximum steps")
    hc.add_argument("--target", type=_decimal, help="stop once this length is reached")

    ld = sub.add_parser("ldsf", parents=[common], help="diffusion/fusion reduction")
    ld.add_argument("--blocks", type=int, required=True, help="initial block count")
    ld.add_argument("--beta", type=int, default=2, help="declared block size")
    ld.add_argument("--inner", type=int, default=1, help="inner iterations M")
    ld.add_argument("--outer", type=int, default=1, help="outer iterations N")
    ld.add_argument("--target", type=_decimal, help="stop once this length is reached")

    hy = sub.add_parser("hybrid", parents=[common], help="multistage pipeline")
    hy.add_argument("--stages", required=True, help="JSON stage list file")

    sw = sub.add_parser("sweep", parents=[common], help="shortest-length statistics per radius")
    sw.add_argument("--radii", type=_radii, required=True, help="e.g. 5,10,15")
    sw.add_argument("--samples", type=int, default=100, help="permutations per radius")

    fr = sub.add_parser("freq", parents=[common], help="improvement frequency per radius")
    fr.add_argument("--radii", type=_radii, required=True, help="e.g. 5,10,15")
    fr.add_argument("--samples", type=int, default=100, help="permutations per radius")

    orc = sub.add_parser("oracle", parents=[common], help="exhaustive shortest vector")
    orc.add_argument("--bound", type=int, default=2, help="coefficient box half-width")
    orc.add_argument(
        "--budget", type=int, default=10_000_000, help="enumeration budget"
    )
    return parser


def _write(path: str | None, content: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(content)
    else:
        sys.stdout.write(content)


def _emit_report(args, payload: dict) -> None:
    payload = dict(payload)
    payload["seed"] = args.seed
    payload["alpha"] = str(LllParams(args.alpha).alpha)
    payload["input"] = args.infile
    if args.report:
        _write(args.report, serialize.to_json(payload))


def _cmd_lll(args, basis: Basis) -> int:
    params = LllParams(args.alpha)
    reduced = lll_reduce(basis, params)
    after = metrics(reduced)
    print(
        f"lll: shortest={after.shortest:.6g} longest={after.longest:.6g} "
        f"log10_weight={after.log10_weight:.6g}"
    )
    _emit_report(
        args,
        {
            "command": "lll",
            "before": serialize.metrics_dict(metrics(basis)),
            "after": serialize.metrics_dict(after),
            "basis": serialize.basis_entries(reduced),
        },
    )
    return 0


def _cmd_hc(args, basis: Basis) -> int:
    chosen = [x for x in (args.radius, args.r0, args.psl2) if x is not None]
    if len(chosen) != 1:
        raise ValueError("pass exactly one of --radius, --r0, --psl2")
    if args.radius is not None:
        kind = FixedRadius(args.radius)
        runner = hc_fixed
    elif args.r0 is not None:
        kind = VariableRadius(args.r0, args.rstep)
        runner = hc_variable
    else:
        kind = Psl2(args.psl2)
        runner = hc_psl2
    cfg = HcConfig(
        kind=kind,
        sample_size=args.k,
        max_steps=args.p,
        alpha=LllParams(args.alpha),
        target_bound=args.target,
        seed=args.seed,
    )
    trace = runner(basis, cfg)
    print(
        f"hc: best shortest={trace.best_metrics.shortest:.6g} "
        f"steps={len(trace.steps)} reached_target={trace.reached_target}"
    )
    _emit_report(args, {"command": "hc", **serialize.hc_trace_dict(trace)})
    return 0


def _cmd_ldsf(args, basis: Basis) -> int:
    cfg = LdsfConfig(
        servers=args.blocks,
        block_rows=args.beta,
        inner_iters=args.inner,
        outer_iters=args.outer,
        alpha=LllParams(args.alpha),
        target_bound=args.target,
        seed=args.seed,
    )
    trace = ldsf_run(basis, cfg)
    print(
        f"ldsf: best shortest={trace.best_vector_norm:.6g} "
        f"rounds={len(trace.rounds)} reached_target={trace.reached_target}"
    )
    _emit_report(args, {"command": "ldsf", **serialize.ldsf_trace_dict(trace)})
    return 0


def _cmd_hybrid(args, basis: Basis) -> int:
    with open(args.stages, "r", encoding="utf-8") as fh:
        raw = json.load(fh)
    if not isinstance(raw, list):
        raise BadStageParamsError("stage file must hold a JSON list")
    default_alpha = LllParams(args.alpha)
    stages = [stage_from_dict(entry, default_alpha) for entry in raw]
    report = run_pipeline(basis, stages, seed=args.seed)
    last = report.stage_reports[-1]
    print(
        f"hybrid: stages={len(report.stage_reports)} "
        f"final shortest={last.after.shortest:.6g}"
    )
    _emit_report(args, {"command": "hybrid", **serialize.pipeline_report_dict(report)})
    return 0


def _cmd_sweep(args, basis: Basis) -> int:
    result = radius_sweep(
        basis, args.radii, args.samples, LllParams(args.alpha), seed=args.seed
    )
    _write(args.out_csv, result.to_csv())
    _emit_report(args, {"command": "sweep", **serialize.sweep_dict(result)})
    return 0


def _cmd_freq(args, basis: Basis) -> int:
    freqs = improvement_frequency(
        basis, args.radii, args.samples, LllParams(args.alpha), seed=args.seed
    )
    lines = ["radius,frequency"]
    lines.extend(f"{r},{freqs[r]:g}" for r in args.radii)
    _write(args.out_csv, "\n".join(lines) + "\n")
    _emit_report(
        args,
        {
            "command": "freq",
            "frequencies": {str(r): freqs[r] for r in args.radii},
        },
    )
    return 0


def _cmd_oracle(args, basis: Basis) -> int:
    result = svp_oracle(basis, args.bound, budget=args.budget)
    print(
        f"oracle: lambda1={result.lambda1:.6g} "
        f"checked={result.count_checked} vector={list(result.vector)}"
    )
    _emit_report(args, {"command": "oracle", **serialize.svp_dict(result)})
    return 0


_COMMANDS = {
    "lll": _cmd_lll,
    "hc": _cmd_hc,
    "ldsf": _cmd_ldsf,
    "hybrid": _cmd_hybrid,
    "sweep": _cmd_sweep,
    "freq": _cmd_freq,
    "oracle": _cmd_oracle,
}


def cli_main(argv: Sequence[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 1
        return 0 if code == 0 else 1
    try:
        basis = load_lattice(args.infile).basis
        return _COMMANDS[args.command](args, basis)
    except USAGE_ERRORS as exc:
        print(f"latforge {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except LatticeError as exc:
        print(f"latforge {args.command}: computation failed: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"latforge {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # pragma: no cover - defensive
        print(f"latforge {args.command}: internal error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
