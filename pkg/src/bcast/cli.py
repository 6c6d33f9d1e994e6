"""Command line entry point: ``bcast <subcommand> ...``.

Exit codes: 0 clean, 1 usage error, 2 instance above the exact limit,
3 mismatch or violation found.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from bcast.broadcast import BroadcastError, from_witness_json, to_witness_json
from bcast.constructions import (
    ConstructionError,
    NoConstructionError,
    ReductionNotApplicable,
    construct_witness,
    reduce_to_2bounded,
)
from bcast.exact_solver import broadcast_independence, max_independent_set
from bcast.formulas import coverage_matrix_csv, predict_alpha, predict_beta
from bcast.graph_core import GraphError, SizeLimitError, build_circulant
from bcast import harness

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SIZE = 2
EXIT_MISMATCH = 3

DEFAULT_SEED = 20240601


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _gens(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad generator list {text!r}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        try:
            Path(out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot write {out}: {exc}") from exc
    else:
        sys.stdout.write(text)


def _generators(args: argparse.Namespace) -> list[int]:
    if args.gens:
        return args.gens
    if args.a is not None:
        return [1, args.a]
    raise UsageError("give --gens or --a")


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError("missing " + ", ".join(missing))


def cmd_exact(args: argparse.Namespace) -> int:
    _need(args, "n")
    g = build_circulant(args.n, _generators(args))
    if args.bound == 1:
        res = max_independent_set(g)
    else:
        res = broadcast_independence(g, args.bound, workers=args.workers)
    if args.format == "json":
        payload = {"graph": str(g), "bound": args.bound, "value": res.value,
                   "nodes_explored": res.nodes_explored,
                   "witness": json.loads(to_witness_json(res.witness))}
        _emit(json.dumps(payload) + "\n", args.out)
    else:
        bound = "none" if args.bound is None else str(args.bound)
        print(f"{g} bound={bound} value={res.value} nodes={res.nodes_explored}")
        _emit(to_witness_json(res.witness), args.out)
    return EXIT_OK


def _prediction_dict(p) -> dict:
    return {"value": p.value, "kind": p.kind, "theorem": p.theorem_id, "note": p.note}


def cmd_predict(args: argparse.Namespace) -> int:
    _need(args, "n", "a")
    beta, alpha = predict_beta(args.n, args.a), predict_alpha(args.n, args.a)
    if args.format == "json":
        text = json.dumps({"n": args.n, "a": args.a, "beta": _prediction_dict(beta),
                           "alpha": _prediction_dict(alpha)}) + "\n"
    else:
        def show(p) -> str:
            v = "unknown" if p.value is None else str(p.value)
            note = f" ({p.note})" if p.note else ""
            return f"{v} [{p.kind}, {p.theorem_id}]{note}"

        text = f"C({args.n};1,{args.a})\nbeta_b: {show(beta)}\nalpha: {show(alpha)}\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_construct(args: argparse.Namespace) -> int:
    _need(args, "n", "a")
    _emit(to_witness_json(construct_witness(args.n, args.a)), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    _need(args, "n_max")
    records = harness.sweep(args.n_max, bounded_only=args.bounded_only)
    text = harness.records_json(records) if args.format == "json" else harness.records_csv(records)
    _emit(text, args.out)
    print(harness.summary(records), file=sys.stderr if not args.out else sys.stdout)
    return EXIT_MISMATCH if any(r.status == harness.MISMATCH for r in records) else EXIT_OK


def cmd_check_2bounded(args: argparse.Namespace) -> int:
    _need(args, "n_max")
    records = harness.check_2bounded(args.n_max)
    lines = [r.line() for r in records]
    violations = sum(r.violation for r in records)
    gaps = sum(1 for r in records if r.gap)
    lines.append(f"checked={len(records)} gaps={gaps} violations={violations}")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_MISMATCH if violations else EXIT_OK


def cmd_reduce(args: argparse.Namespace) -> int:
    if args.sample is not None:
        samples = harness.reduction_property_run(args.sample, args.seed,
                                                 n_max=args.n_max or 40)
        bad = [s for s in samples if s.failures]
        lines = [f"C({s.n};1,{s.a}) cost {s.cost_before} -> {s.cost_after}: "
                 + "; ".join(s.failures) for s in bad]
        lines.append(f"samples={len(samples)} seed={args.seed} failures={len(bad)}")
        _emit("\n".join(lines) + "\n", args.out)
        return EXIT_MISMATCH if bad else EXIT_OK
    if args.input and args.input != "-":
        try:
            text = Path(args.input).read_text(encoding="utf-8")
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from exc
    else:
        text = sys.stdin.read()
    b = from_witness_json(text)
    _emit(to_witness_json(reduce_to_2bounded(b)), args.out)
    return EXIT_OK


def cmd_errata(args: argparse.Namespace) -> int:
    report = harness.errata_probe(args.n_max or 22, seed=args.seed)
    _emit(report.text(), args.out)
    return EXIT_OK


def cmd_coverage(args: argparse.Namespace) -> int:
    _emit(coverage_matrix_csv(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int)
    common.add_argument("--a", type=int)
    common.add_argument("--gens", type=_gens, help="comma-separated generators, e.g. 1,2")
    common.add_argument("--bound", type=int)
    common.add_argument("--n-max", dest="n_max", type=int)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--out")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = _Parser(prog="bcast", description="Broadcast independence of circulant graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("exact", parents=[common], help="exact alpha / beta_b by search")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_exact)
    sub.add_parser("predict", parents=[common], help="closed-form prediction").set_defaults(
        func=cmd_predict)
    sub.add_parser("construct", parents=[common], help="emit an optimal witness").set_defaults(
        func=cmd_construct)
    p = sub.add_parser("verify", parents=[common], help="sweep formulas vs. exact search")
    p.add_argument("--bounded-only", action="store_true",
                   help="use the 2-bounded optimum where it is known to equal beta_b")
    p.set_defaults(func=cmd_verify)
    sub.add_parser("check-2bounded", parents=[common],
                   help="compare beta_b with the 2-bounded optimum").set_defaults(
        func=cmd_check_2bounded)
    p = sub.add_parser("reduce", parents=[common], help="reduce a witness to a 2-bounded one")
    p.add_argument("--in", dest="input", help="witness JSON path, '-' or absent for stdin")
    p.add_argument("--sample", type=int, help="run N random reductions instead")
    p.set_defaults(func=cmd_reduce)
    sub.add_parser("errata", parents=[common], help="cross-check report").set_defaults(
        func=cmd_errata)
    sub.add_parser("coverage", parents=[common], help="theorem coverage matrix").set_defaults(
        func=cmd_coverage)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help and usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except SizeLimitError as exc:
        print(f"bcast: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (UsageError, GraphError, BroadcastError, NoConstructionError,
            ReductionNotApplicable, ConstructionError, ValueError) as exc:
        print(f"bcast: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
