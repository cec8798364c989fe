"""Command line front end.

Exit status: 0 on success, 1 when a checked property is violated, 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import bench
from .dyadic import DyadicInterval, StepFunction
from .greedy import Basis, CanonicalLp, HaarXp, SummingBasis, element_from_dict
from .haar import HaarExpansion, indicator_sum_norm, xp_norm
from .oracle import DEFAULT_TOL, d_pcc, sigma
from .weights import (
    DyadicWeight,
    IndexedSequence,
    apd_constant,
    carleson_constant,
    reverse_doubling_delta,
)


class UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in str(text).split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from exc


def load_weight(path) -> DyadicWeight:
    try:
        return DyadicWeight(StepFunction.from_json(Path(path).read_text()))
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read weight file {path}: {exc}") from exc


def parse_basis(spec: str, weight: DyadicWeight | None = None, weight_file: str | None = None) -> Basis:
    """``lp:P:N``, ``summing:N`` or ``haar:P:L``."""
    parts = spec.split(":")
    try:
        if parts[0] == "lp" and len(parts) == 3:
            return CanonicalLp(float(parts[1]), int(parts[2]))
        if parts[0] == "summing" and len(parts) == 2:
            return SummingBasis(int(parts[1]))
        if parts[0] == "haar" and len(parts) == 3:
            return HaarXp(float(parts[1]), weight, int(parts[2]), weight_file=weight_file)
    except ValueError as exc:
        raise UsageError(f"bad basis spec {spec!r}: {exc}") from exc
    raise UsageError(f"bad basis spec {spec!r}; use lp:P:N, summing:N or haar:P:L")


def _basis_from_args(args) -> Basis:
    weight = load_weight(args.weight) if getattr(args, "weight", None) else None
    return parse_basis(args.basis, weight, getattr(args, "weight", None))


def _emit(args, payload: dict) -> None:
    text = json.dumps(payload, indent=2, default=_json_default)
    print(text)
    if args.out:
        Path(args.out).write_text(text + "\n")


def _json_default(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    raise TypeError(f"not serializable: {type(obj).__name__}")


# ---------------------------------------------------------------- commands


def cmd_check_weight(args) -> int:
    weight = load_weight(args.weight)
    level = weight.level if args.level is None else args.level
    if level > weight.level:
        raise UsageError(f"--level {level} exceeds the weight resolution {weight.level}")
    payload = {
        "level": level,
        "apd": {str(p): apd_constant(weight, p, level) for p in args.p},
        "delta": reverse_doubling_delta(weight, level) if level >= 1 else None,
        "carleson": {str(a): carleson_constant(weight, a, level) for a in args.alpha},
    }
    if payload["delta"] is not None:
        payload["reverse_doubling"] = payload["delta"] < 1
    _emit(args, payload)
    return 0


def cmd_haar_norms(args) -> int:
    weight = load_weight(args.weight) if args.weight else DyadicWeight.constant(1.0)
    level = args.level if args.level is not None else max(weight.level, 3)
    payload = {"level": level, "p": args.p}
    if args.expansion:
        e = HaarExpansion.from_json(Path(args.expansion).read_text())
        payload["xp_norm"] = {str(p): xp_norm(e, p, weight) for p in args.p}
    rows = []
    deepest = level - 1
    for m in range(1, (1 << deepest) + 1):
        family = [DyadicInterval(deepest, j) for j in range(m)]
        rows.append({
            "m": m,
            **{f"norm_p{p}": indicator_sum_norm(family, p, weight) for p in args.p},
            **{f"m^(1/p{p})": m ** (1 / p) for p in args.p},
        })
    payload["indicator_sums"] = rows
    _emit(args, payload)
    return 0


_ESTIMATORS = ("suppression", "symmetry", "democracy", "w-democracy", "greedy", "pccg")


def cmd_estimate(args) -> int:
    basis = _basis_from_args(args)
    if args.const == "suppression":
        est = bench.estimate_suppression_constant(basis, args.samples, args.seed)
    elif args.const == "symmetry":
        est = bench.estimate_symmetry_largest(basis, args.samples, args.seed)
    elif args.const == "democracy":
        est = bench.estimate_democracy(basis, "cardinality", args.samples, args.seed)
    elif args.const == "w-democracy":
        est = bench.estimate_democracy(basis, "weight", args.samples, args.seed)
    elif args.const == "greedy":
        est = bench.estimate_greedy_constant(basis, args.t, args.budget, args.samples, args.seed, args.tol)
    else:
        est = bench.estimate_pccg_constant(basis, args.t, args.budget, args.samples, args.seed, args.tol)
    if args.csv and est.rows:
        bench.write_csv(est.rows, args.csv)
    _emit(args, est.summary())
    return 0


def cmd_verify_theorem3(args) -> int:
    basis = _basis_from_args(args)
    report = bench.verify_theorem3(
        basis, args.s, args.t, args.samples, args.seed, d_hat=args.d_hat, tol=args.tol
    )
    _emit(args, report.summary())
    return 0 if report.consistent else 1


def cmd_haar_suite(args) -> int:
    weight = load_weight(args.weight)
    level = weight.level if args.level is None else args.level
    index_weights = None
    if args.index_weights:
        try:
            index_weights = IndexedSequence.from_json(Path(args.index_weights).read_text())
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read index weights {args.index_weights}: {exc}") from exc
        if index_weights.level < level - 1:
            raise UsageError("index weights must cover every Haar interval")
        if index_weights.level < level:
            # pad so the sequence covers levels 0..level
            index_weights = IndexedSequence(
                list(index_weights.levels) + [np.ones(1 << n) for n in range(index_weights.level + 1, level + 1)]
            )
    report = bench.haar_weight_suite(
        weight, tuple(args.p), tuple(args.alpha), level, args.samples, args.seed,
        index_weights, tuple(args.t), control_levels=tuple(range(1, level + 1)) if args.control else (),
    )
    _emit(args, report.summary())
    return 0 if report.violations == 0 else 1


def cmd_oracle(args) -> int:
    if args.element:
        try:
            basis, x = element_from_dict(json.loads(Path(args.element).read_text()), Path(args.element).parent)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read element {args.element}: {exc}") from exc
    else:
        if not args.basis or args.x is None:
            raise UsageError("oracle needs --element or both --basis and --x")
        basis = _basis_from_args(args)
        x = np.asarray(args.x, dtype=float)
        if x.size != basis.dim:
            raise UsageError(f"--x has {x.size} entries, basis dimension is {basis.dim}")
    if (args.m is None) == (args.delta is None):
        raise UsageError("give exactly one of --m or --delta")
    budget = {"m": args.m} if args.m is not None else {"delta": args.delta}
    if args.kind == "sigma":
        res = sigma(basis, x, tol=args.tol, widen=args.widen, **budget)
    else:
        res = d_pcc(basis, x, tol=args.tol, widen=args.widen, exact_size=args.exact_size, **budget)
    _emit(args, res.to_dict())
    return 0


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=200)
    common.add_argument("--tol", type=float, default=DEFAULT_TOL)
    common.add_argument("--level", type=int, default=None)
    common.add_argument("--out", default=None, help="also write the JSON result here")
    common.add_argument("--config", default=None, help="JSON file whose keys override flags")

    parser = argparse.ArgumentParser(prog="mterm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-weight", parents=[common], help="A_p^d, reverse doubling and Carleson constants")
    p.add_argument("--weight", required=True)
    p.add_argument("--p", type=_floats, default=[2.0])
    p.add_argument("--alpha", type=_floats, default=[0.5, 1.0, 2.0])
    p.set_defaults(func=cmd_check_weight)

    p = sub.add_parser("haar-norms", parents=[common], help="X^p(w) norms and indicator-sum tables")
    p.add_argument("--weight", default=None)
    p.add_argument("--p", type=_floats, default=[2.0])
    p.add_argument("--expansion", default=None, help="Haar expansion JSON file")
    p.set_defaults(func=cmd_haar_norms)

    p = sub.add_parser("estimate", parents=[common], help="estimate a basis constant")
    p.add_argument("--const", choices=_ESTIMATORS, required=True)
    p.add_argument("--basis", required=True, help="lp:P:N | summing:N | haar:P:L")
    p.add_argument("--weight", default=None, help="weight file for haar bases")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--budget", choices=("cardinality", "weight"), default="cardinality")
    p.add_argument("--csv", default=None, help="per-sample CSV output")
    p.set_defaults(func=cmd_estimate)

    p = sub.add_parser("verify-theorem3", parents=[common], help="PCCG => weak greedy proof checks")
    p.add_argument("--basis", required=True)
    p.add_argument("--weight", default=None)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--d-hat", type=float, default=None)
    p.set_defaults(func=cmd_verify_theorem3)

    p = sub.add_parser("haar-suite", parents=[common], help="weight constants, indicator-sum inequalities and Haar PCCG bound")
    p.add_argument("--weight", required=True)
    p.add_argument("--index-weights", default=None)
    p.add_argument("--p", type=_floats, default=[1.5, 2.0, 3.0])
    p.add_argument("--alpha", type=_floats, default=[0.5, 1.0, 2.0])
    p.add_argument("--t", type=_floats, default=[0.5, 1.0])
    p.add_argument("--control", action="store_true", help="also tabulate a non-Carleson weight")
    p.set_defaults(func=cmd_haar_suite)

    p = sub.add_parser("oracle", parents=[common], help="one-shot sigma / D query")
    p.add_argument("--kind", choices=("sigma", "dstar"), required=True)
    p.add_argument("--element", default=None, help="element JSON file")
    p.add_argument("--basis", default=None)
    p.add_argument("--weight", default=None)
    p.add_argument("--x", type=_floats, default=None, help="comma-separated coefficients")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--widen", action="store_true")
    p.add_argument("--exact-size", action="store_true")
    p.set_defaults(func=cmd_oracle)
    return parser


def _apply_config(args) -> None:
    path = Path(args.config)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from exc
    try:
        config = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(config, dict):
        raise UsageError(f"{path}:1:1: config must be a JSON object")
    lines = text.splitlines()
    for key, value in config.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest) or dest in ("func", "command", "config"):
            lineno = next((i + 1 for i, line in enumerate(lines) if f'"{key}"' in line), 1)
            raise UsageError(f"{path}:{lineno}: unknown option {key!r} for {args.command}")
        if dest in ("p", "alpha", "t", "x") and isinstance(getattr(args, dest), list):
            value = value if isinstance(value, list) else [value]
        setattr(args, dest, value)


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.config:
            _apply_config(args)
        return args.func(args)
    except UsageError as exc:
        print(f"mterm: error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"mterm: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
