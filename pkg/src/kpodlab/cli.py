"""Command-line interface.

Exit codes: 0 success, 1 tolerance exceeded (check-decomposition),
2 validation/config error, 3 insufficient complete cases.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import experiments as exp
from ._validation import DimensionError
from .io import load_mask_csv, load_matrix_csv, save_mask_csv, save_matrix_csv, split_nan
from .kmeans import FitOptions, km_fit
from .kpod import kpod_fit
from .metrics import decomposition_check, mc_expected_loss
from .missing import McarSpec, complete_case_indices, gen_mask
from .rng import derive_seed, rng_for
from .synthetic import GmmSpec, PRESET_NAMES, preset, sample_gmm

EXIT_OK = 0
EXIT_TOLERANCE = 1
EXIT_USAGE = 2
EXIT_INSUFFICIENT = 3

DECOMPOSITION_TOL = 1e-10


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _write_json(path, payload) -> None:
    with open(path, "w", newline="\n") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# fit

def _load_inputs(args):
    if args.mask is not None:
        X = load_matrix_csv(args.data, allow_nan=True)
        R = load_mask_csv(args.mask, shape=X.shape)
        X = np.where(R > 0, X, 0.0)
        if not np.all(np.isfinite(X)):
            raise ValueError("observed entries must be finite")
    else:
        raw = load_matrix_csv(args.data, allow_nan=True)
        X, R = split_nan(raw)
    return X, R


def _cmd_fit(args) -> int:
    try:
        X, R = _load_inputs(args)
        opts = FitOptions(k=args.k, restarts=args.restarts, seed=args.seed)
        full = bool(R.all())
        summary = {
            "method": args.method,
            "n": X.shape[0],
            "p": X.shape[1],
            "k": args.k,
            "restarts": args.restarts,
            "seed": args.seed,
        }
        if args.method == "kmeans":
            if not full:
                raise ValueError("method 'kmeans' needs complete data; "
                                 "use 'kpod' or 'complete-case'")
            result = km_fit(X, opts)
            labels = result.assignment
        elif args.method == "complete-case":
            idx = complete_case_indices(R)
            summary["complete_case_count"] = int(idx.size)
            if idx.size < args.k:
                print(f"error: only {idx.size} complete case(s) for k={args.k}",
                      file=sys.stderr)
                return EXIT_INSUFFICIENT
            result = km_fit(X[idx], opts)
            labels = np.full(X.shape[0], -1, dtype=np.int64)
            labels[idx] = result.assignment
        else:
            result = kpod_fit(X, R, opts)
            labels = result.assignment
            summary["degenerate_cells"] = [list(c) for c in result.degenerate_cells]
            summary["all_missing_rows"] = list(result.all_missing_rows)
    except (OSError, ValueError, DimensionError) as excinfo:
        return _fail(str(excinfo), EXIT_USAGE)

    summary.update(loss=result.loss, iterations=result.iterations,
                   restarts_run=result.restarts_run,
                   converged_by=result.converged_by)
    os.makedirs(args.out, exist_ok=True)
    save_matrix_csv(os.path.join(args.out, "centers.csv"), result.centers)
    with open(os.path.join(args.out, "labels.csv"), "w", newline="\n") as fh:
        for v in labels:
            fh.write(f"{int(v)}\n")
    _write_json(os.path.join(args.out, "summary.json"), summary)
    print(f"{args.method}: loss={result.loss!r} iterations={result.iterations} "
          f"-> {args.out}", file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# synth

def _cmd_synth(args) -> int:
    try:
        bundle = preset(args.preset)
        n = args.n if args.n is not None else bundle.default_n
        if args.missing_rate is not None:
            mcar = McarSpec.from_rate(args.missing_rate, bundle.gmm.p)
        elif bundle.mcar is not None:
            mcar = bundle.mcar
        else:
            raise ValueError(f"preset {args.preset!r} needs --missing-rate")
        X, labels = sample_gmm(bundle.gmm, n, derive_seed(args.seed, "synth-data"))
        R = gen_mask(n, mcar, derive_seed(args.seed, "synth-mask"))
    except ValueError as excinfo:
        return _fail(str(excinfo), EXIT_USAGE)
    os.makedirs(args.out, exist_ok=True)
    save_matrix_csv(os.path.join(args.out, "data.csv"), X)
    save_mask_csv(os.path.join(args.out, "mask.csv"), R)
    with open(os.path.join(args.out, "components.csv"), "w", newline="\n") as fh:
        for v in labels:
            fh.write(f"{int(v)}\n")
    _write_json(os.path.join(args.out, "meta.json"), {
        "preset": args.preset, "n": int(n), "p": bundle.gmm.p, "k": bundle.k,
        "q": list(mcar.q), "seed": args.seed,
        "complete_cases": int(R.all(axis=1).sum()),
    })
    print(f"synth {args.preset}: n={n} p={bundle.gmm.p} -> {args.out}",
          file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------
# experiment

def _cmd_experiment(args) -> int:
    try:
        cfgs = exp.load_config_file(args.config)
    except (OSError, exp.ConfigError) as excinfo:
        return _fail(str(excinfo), EXIT_USAGE)
    out_dir = args.out or next((c.out for c in cfgs if c.out), None)
    if out_dir is None:
        return _fail("no output directory: pass --out or set 'out' in the config",
                     EXIT_USAGE)
    os.makedirs(out_dir, exist_ok=True)
    cache_dir = os.path.join(out_dir, "oracle_cache")
    records, agg = exp.run_experiments(
        cfgs, jobs=args.jobs, timing=args.timing, cache_dir=cache_dir,
        log=lambda msg: print(msg, file=sys.stderr),
    )
    exp.write_runs_csv(os.path.join(out_dir, "runs.csv"), records)
    exp.write_aggregate_csv(os.path.join(out_dir, "aggregate.csv"), agg)
    print(exp.format_aggregate_table(agg))
    return EXIT_OK


# ---------------------------------------------------------------------------
# check-decomposition

def _cmd_check_decomposition(args) -> int:
    try:
        if args.q is not None and len(args.q) != args.p:
            raise ValueError(f"--q needs {args.p} values, got {len(args.q)}")
        if args.mc:
            return _mc_check(args)
    except ValueError as excinfo:
        return _fail(str(excinfo), EXIT_USAGE)

    worst = 0.0
    for trial in range(args.trials):
        rng = rng_for(args.seed, "check", trial)
        X = rng.normal(scale=2.0, size=(args.n, args.p))
        q = tuple(args.q) if args.q is not None else tuple(
            rng.uniform(0.2, 1.0, size=args.p))
        R = gen_mask(args.n, McarSpec(q), derive_seed(args.seed, "check-mask", trial))
        M = rng.normal(scale=2.0, size=(args.k, args.p))
        report = decomposition_check(X, R, M)
        worst = max(worst, report.scaled_diff())
    print(f"max scaled |lhs - rhs| over {args.trials} trials: {worst:.3e} "
          f"(tolerance {DECOMPOSITION_TOL:.0e})")
    return EXIT_OK if worst <= DECOMPOSITION_TOL else EXIT_TOLERANCE


def _mc_check(args) -> int:
    """p=1 specialization: the partial expected loss equals q times the
    complete one; checked by coupled Monte-Carlo estimates."""
    if args.p != 1:
        raise ValueError("--mc mode requires --p 1")
    q1 = args.q[0] if args.q is not None else 0.5
    rng = rng_for(args.seed, "mc-setup")
    spec = GmmSpec.isotropic([0.5, 0.5], [[-2.0], [2.0]])
    M = rng.normal(scale=2.0, size=(args.k, 1))
    est = mc_expected_loss(spec, McarSpec((q1,)), M, n_mc=args.n, seed=args.seed)
    gap = abs(est.kpod_mean - q1 * est.km_mean)
    budget = 4.0 * float(np.hypot(est.kpod_se, q1 * est.km_se))
    print(f"L_partial={est.kpod_mean:.5f} (se {est.kpod_se:.5f})  "
          f"q*L_complete={q1 * est.km_mean:.5f}  |gap|={gap:.5f}  4*se={budget:.5f}")
    return EXIT_OK if gap <= budget else EXIT_TOLERANCE


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpodlab",
        description="k-means / k-POD clustering for incomplete data and the "
                    "accompanying simulation harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fit = sub.add_parser("fit", help="fit one method to a data matrix")
    p_fit.add_argument("--data", required=True, help="headerless data CSV")
    p_fit.add_argument("--mask", help="0/1 response-indicator CSV; if omitted, "
                                      "NaN cells in --data mark missing entries")
    p_fit.add_argument("--k", type=int, required=True)
    p_fit.add_argument("--method", choices=("kmeans", "kpod", "complete-case"),
                       required=True)
    p_fit.add_argument("--restarts", type=int, default=30)
    p_fit.add_argument("--seed", type=int, default=0)
    p_fit.add_argument("--out", required=True, help="output directory")
    p_fit.set_defaults(func=_cmd_fit)

    p_synth = sub.add_parser("synth", help="generate a preset dataset and mask")
    p_synth.add_argument("--preset", choices=PRESET_NAMES, required=True)
    p_synth.add_argument("--n", type=int)
    p_synth.add_argument("--missing-rate", type=float)
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out", required=True)
    p_synth.set_defaults(func=_cmd_synth)

    p_exp = sub.add_parser("experiment", help="run a JSON experiment config")
    p_exp.add_argument("--config", required=True)
    p_exp.add_argument("--out", help="output directory (overrides config)")
    p_exp.add_argument("--jobs", type=int, default=1)
    p_exp.add_argument("--timing", action="store_true",
                       help="record wall times in runs.csv (breaks byte-level "
                            "reproducibility across runs)")
    p_exp.set_defaults(func=_cmd_experiment)

    p_chk = sub.add_parser("check-decomposition",
                           help="verify the pattern decomposition of the "
                                "partial-distance loss on random instances")
    p_chk.add_argument("--n", type=int, default=200)
    p_chk.add_argument("--p", type=int, default=3)
    p_chk.add_argument("--k", type=int, default=3)
    p_chk.add_argument("--q", type=float, nargs="+",
                       help="per-column observation probabilities")
    p_chk.add_argument("--seed", type=int, default=0)
    p_chk.add_argument("--trials", type=int, default=100)
    p_chk.add_argument("--mc", action="store_true",
                       help="p=1 Monte-Carlo expectation check instead of the "
                            "finite-sample identity")
    p_chk.set_defaults(func=_cmd_check_decomposition)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
