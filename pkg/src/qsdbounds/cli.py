"""Command-line front end: single-shot computations and experiment batches.

Exit codes: 0 success, 1 usage error, 2 numeric or I/O error, 3 a verified
bound was violated (so automation can gate on the checks).
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .discrimination import Ensemble, bound_report
from .experiments import (
    Fig1Config,
    Fig2Config,
    default_r_grid,
    run_fig1,
    run_fig2,
    sample_fig1_ensemble,
    tail_is_monotone,
    verify_theorems,
)
from .robustness import rre
from .states import DensityMatrix, SeededRng, bell_state, child_seed, maximally_mixed, random_mixed_rank

FIG1_HEADER = ["index", "seed", "rank1", "rank2", "is_product", "p1", "R1", "R2", "Rmax", "p_eta", "p_eps", "gamma"]
FIG2_HEADER = [
    "r", "deltaP", "p1", "lambda1", "lambda2",
    "angle1", "angle2", "angle3", "angle4", "angle5", "angle6",
    "best_restart", "iterations",
]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2
EXIT_VIOLATION = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _default_seed() -> int:
    return int(os.environ.get("QSD_SEED", "0"))


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _full(x: float) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# state and ensemble serialization
# ---------------------------------------------------------------------------

def density_to_json(rho: DensityMatrix) -> dict:
    pairs = [[float(z.real), float(z.imag)] for z in rho.matrix.reshape(-1)]
    return {"dims": list(rho.dims), "matrix": pairs}


def density_from_json(obj: dict) -> DensityMatrix:
    try:
        da, db = (int(x) for x in obj["dims"])
        entries = np.array([complex(re, im) for re, im in obj["matrix"]])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state object: {exc}") from exc
    d = da * db
    if entries.size != d * d:
        raise ValueError(f"state has {entries.size} entries, expected {d * d} for dims {da}x{db}")
    rho = DensityMatrix((da, db), entries.reshape(d, d))
    lam = rho.min_eigenvalue()
    if lam < -1e-10:
        raise ValueError(f"state is not positive semidefinite: min eigenvalue {lam:.3e}")
    return rho


def load_state_file(path: str) -> DensityMatrix:
    with open(path, encoding="utf-8") as fh:
        return density_from_json(json.load(fh))


def load_ensemble_file(path: str) -> Ensemble:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    try:
        items = [(float(item["probability"]), density_from_json(item["state"])) for item in obj["items"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed ensemble file: {exc}") from exc
    return Ensemble(tuple(items))


# ---------------------------------------------------------------------------
# manifest
# ---------------------------------------------------------------------------

def write_manifest(out_path: str, command: str, config: dict, seed: int, started: str, outputs: list[str]):
    manifest = {
        "command": command,
        "config": config,
        "seed": seed,
        "version": __version__,
        "started": started,
        "finished": datetime.now(timezone.utc).isoformat(),
        "outputs": outputs,
    }
    path = out_path + ".manifest.json"
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2)
        fh.write("\n")
    return path


# ---------------------------------------------------------------------------
# rre command
# ---------------------------------------------------------------------------

def _state_from_args(args) -> DensityMatrix:
    if args.bell:
        return bell_state(args.bell).density()
    if args.maximally_mixed:
        return maximally_mixed()
    if args.random:
        rng = SeededRng(args.seed)
        return random_mixed_rank((2, 2), args.rank, rng)
    return load_state_file(args.state)


def cmd_rre(args) -> int:
    rho = _state_from_args(args)
    result = rre(rho)
    if args.json:
        payload = {
            "value": result.value,
            "method": result.method,
            "closest_separable": density_to_json(result.closest_separable),
        }
        print(json.dumps(payload))
    else:
        print(f"random robustness: {_fmt(result.value)}")
        print(f"method: {result.method}")
        print("closest separable state:")
        for row in result.closest_separable.matrix:
            print("  " + "  ".join(f"{z.real:+.12g}{z.imag:+.12g}j" for z in row))
    return EXIT_OK


# ---------------------------------------------------------------------------
# bounds command
# ---------------------------------------------------------------------------

def _builtin_ensemble(name: str) -> Ensemble:
    bell = Ensemble.two_state(0.5, bell_state("phi+").density(), bell_state("phi-").density())
    if name == "bell":
        return bell
    # the separable twins of the Bell pair
    return Ensemble.two_state(
        0.5, rre(bell.items[0][1]).closest_separable, rre(bell.items[1][1]).closest_separable
    )


def _ensemble_from_args(args) -> Ensemble:
    if args.builtin:
        return _builtin_ensemble(args.builtin)
    if args.random:
        rank1, rank2 = args.ranks
        return sample_fig1_ensemble(child_seed(args.seed, 0), rank1, rank2, False)
    return load_ensemble_file(args.ensemble)


def _report_payload(rep) -> dict:
    return {
        "p_eta": rep.p_eta,
        "p_eps": rep.p_eps,
        "r_values": list(rep.r_values),
        "r_max": rep.r_max,
        "r_min": rep.r_min,
        "gamma": rep.gamma,
        "thm1_upper": rep.thm1_upper,
        "thm2_lower": rep.thm2_lower,
        "thm4_lower_diff": rep.thm4_lower_diff,
        "thm1_ok": rep.thm1_ok,
        "thm2_ok": rep.thm2_ok,
        "thm3_applicable_and_ok": rep.thm3_applicable_and_ok,
        "thm4_ok": rep.thm4_ok,
    }


def cmd_bounds(args) -> int:
    eta = _ensemble_from_args(args)
    rep = bound_report(eta)
    if args.json:
        print(json.dumps(_report_payload(rep)))
    else:
        print(f"P(ensemble): {_fmt(rep.p_eta)}")
        print(f"P(closest separable ensemble): {_fmt(rep.p_eps)}")
        print(f"robustness values: {', '.join(_fmt(v) for v in rep.r_values)}")
        print(f"gamma: {_fmt(rep.gamma)}")
        print(f"upper bound (max-robustness): {_fmt(rep.thm1_upper)} ok={rep.thm1_ok}")
        print(f"lower bound (min-robustness): {_fmt(rep.thm2_lower)} ok={rep.thm2_ok}")
        if rep.thm3_applicable_and_ok is None:
            print("equal-robustness comparison: not applicable")
        else:
            print(f"equal-robustness comparison: ok={rep.thm3_applicable_and_ok}")
        if rep.thm4_ok is None:
            print("one-separable gap bound: not applicable")
        else:
            print(f"one-separable gap bound: {_fmt(rep.thm4_lower_diff)} ok={rep.thm4_ok}")
    return EXIT_OK if rep.all_applicable_ok() else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# experiment command
# ---------------------------------------------------------------------------

def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def cmd_experiment_fig1(args) -> int:
    started = datetime.now(timezone.utc).isoformat()
    panel = "mixed-ranks" if args.panel == "mixed" else "product-vs-rank"
    cfg = Fig1Config(
        panel=panel,
        ranks=tuple(args.ranks),
        n_ensembles=args.n,
        seed=args.seed,
        product_mode=args.product_mode,
    )
    records, summary = run_fig1(cfg, threads=args.threads)
    rows = [
        [
            rec.index, rec.seed, rec.rank1, rec.rank2, int(rec.is_product),
            _full(rec.p1), _full(rec.r1), _full(rec.r2), _full(rec.r_max),
            _full(rec.p_eta), _full(rec.p_eps), _full(rec.gamma),
        ]
        for rec in records
    ]
    _write_csv(args.out, FIG1_HEADER, rows)
    config = {
        "panel": panel,
        "ranks": list(cfg.ranks),
        "n": cfg.n_ensembles,
        "product_mode": cfg.product_mode,
        "threads": args.threads,
    }
    write_manifest(args.out, "experiment fig1", config, cfg.seed, started, [args.out])
    print(
        f"wrote {len(records)} rows to {args.out}; gamma>1 violations: {summary.gamma_above_one}; "
        f"below-reference-curve count: {summary.below_reference_curve}"
    )
    return EXIT_VIOLATION if summary.gamma_above_one else EXIT_OK


def cmd_experiment_fig2(args) -> int:
    started = datetime.now(timezone.utc).isoformat()
    grid = tuple(args.grid) if args.grid else default_r_grid()
    cfg = Fig2Config(
        r_grid=grid,
        restarts=args.restarts,
        max_iterations=args.max_iter,
        zero_tolerance=args.tol,
        seed=args.seed,
    )
    records, r_c = run_fig2(cfg, threads=args.threads)
    rows = [
        [_full(rec.r), _full(rec.delta_p), _full(rec.p1), _full(rec.lambda1), _full(rec.lambda2)]
        + [_full(a) for a in rec.angles]
        + [rec.best_restart, rec.iterations]
        for rec in records
    ]
    _write_csv(args.out, FIG2_HEADER, rows)
    config = {
        "grid": [rec.r for rec in records],
        "restarts": cfg.restarts,
        "max_iterations": cfg.max_iterations,
        "zero_tolerance": cfg.zero_tolerance,
        "threads": args.threads,
    }
    write_manifest(args.out, "experiment fig2", config, cfg.seed, started, [args.out])
    floor_violations = sum(rec.floor_violations for rec in records)
    monotone = tail_is_monotone(records, cfg.zero_tolerance)
    print(
        f"wrote {len(records)} rows to {args.out}; "
        f"r_c estimate: {_fmt(r_c) if r_c is not None else 'none'}; "
        f"tail monotone: {'yes' if monotone else 'no'}; "
        f"lower-bound floor violations: {floor_violations}"
    )
    return EXIT_VIOLATION if floor_violations else EXIT_OK


def cmd_experiment_verify(args) -> int:
    summary = verify_theorems(args.n, args.seed)
    print(
        f"samples per construction: {summary.n}\n"
        f"upper-bound violations: {summary.upper_violations} (worst margin {_fmt(summary.upper_margin)})\n"
        f"lower-bound violations: {summary.lower_violations} (worst margin {_fmt(summary.lower_margin)})\n"
        f"equal-robustness violations: {summary.equal_rre_violations} "
        f"(worst margin {_fmt(summary.equal_rre_margin)})\n"
        f"one-separable violations: {summary.one_separable_violations} "
        f"(worst margin {_fmt(summary.one_separable_margin)})"
    )
    return EXIT_VIOLATION if summary.total_violations else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _parse_ranks(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"ranks must be comma-separated integers, got {text!r}")


def _parse_grid(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated floats, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qsdbounds", description=__doc__)
    parser.add_argument("--version", action="version", version=f"qsdbounds {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rre = sub.add_parser("rre", help="random robustness of one two-qubit state")
    src = p_rre.add_mutually_exclusive_group(required=True)
    src.add_argument("--bell", choices=["phi+", "phi-", "psi+", "psi-"], help="builtin Bell state")
    src.add_argument("--maximally-mixed", action="store_true", help="the maximally mixed state")
    src.add_argument("--random", action="store_true", help="seeded random state (see --rank, --seed)")
    src.add_argument("--state", metavar="FILE", help="JSON state file")
    p_rre.add_argument("--rank", type=int, default=4, help="rank for --random (default 4)")
    p_rre.add_argument("--seed", type=int, default=_default_seed(), help="seed for --random")
    p_rre.add_argument("--json", action="store_true", help="machine-readable output")
    p_rre.set_defaults(func=cmd_rre)

    p_bounds = sub.add_parser("bounds", help="bound report for a two-state ensemble")
    src = p_bounds.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=["bell", "separable"], help="builtin ensemble")
    src.add_argument("--random", action="store_true", help="seeded random ensemble")
    src.add_argument("--ensemble", metavar="FILE", help="JSON ensemble file")
    p_bounds.add_argument("--ranks", type=_parse_ranks, default=[4, 4], help="ranks for --random, e.g. 2,3")
    p_bounds.add_argument("--seed", type=int, default=_default_seed())
    p_bounds.add_argument("--json", action="store_true")
    p_bounds.set_defaults(func=cmd_bounds)

    p_exp = sub.add_parser("experiment", help="batch experiments emitting CSV")
    exp_sub = p_exp.add_subparsers(dest="experiment", required=True)

    p_f1 = exp_sub.add_parser("fig1", help="bound-tightness scatter data")
    p_f1.add_argument("--panel", choices=["mixed", "product"], required=True)
    p_f1.add_argument("--ranks", type=_parse_ranks, required=True, help="e.g. 4,4 (mixed) or 4 (product)")
    p_f1.add_argument("--n", type=int, default=1000)
    p_f1.add_argument("--seed", type=int, default=_default_seed())
    p_f1.add_argument("--product-mode", choices=["identical", "independent"], default="identical")
    p_f1.add_argument("--threads", type=int, default=1)
    p_f1.add_argument("--out", required=True, help="output CSV path")
    p_f1.set_defaults(func=cmd_experiment_fig1)

    p_f2 = exp_sub.add_parser("fig2", help="distinguishability-gap threshold curve")
    p_f2.add_argument("--grid", type=_parse_grid, default=None, help="comma-separated grid values")
    p_f2.add_argument("--restarts", type=int, default=64)
    p_f2.add_argument("--max-iter", type=int, default=2000)
    p_f2.add_argument("--tol", type=float, default=1e-4)
    p_f2.add_argument("--seed", type=int, default=_default_seed())
    p_f2.add_argument("--threads", type=int, default=1)
    p_f2.add_argument("--out", required=True, help="output CSV path")
    p_f2.set_defaults(func=cmd_experiment_fig2)

    p_v = exp_sub.add_parser("verify", help="Monte-Carlo check of all four bounds")
    p_v.add_argument("--n", type=int, default=1000)
    p_v.add_argument("--seed", type=int, default=_default_seed())
    p_v.set_defaults(func=cmd_experiment_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
