"""Declarative experiment runner.

A config describes a mixture, sample sizes, missing rates and fit options;
the runner draws data, applies MCAR masks, fits the three methods (k-means
on all data, k-means on complete cases, k-POD on the incomplete matrix),
scores each against the reference centers and aggregates over repetitions.

Repetitions are independent tasks; child seeds derive from (master seed,
setting id, n, rate, repetition, stage), so output is byte-identical for
any worker count. Timing is recorded in the CSV only on request, keeping
default output reproducible.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .kmeans import FitOptions, km_fit
from .kpod import kpod_fit
from .metrics import decomposition_check, mse_centers
from .missing import McarSpec, gen_mask
from .oracle import canonicalize_centers, estimate_reference
from .rng import derive_seed
from .synthetic import GmmSpec, preset, sample_gmm
from .io import atomic_write

METHODS = ("oracle", "complete_case", "kpod")
REFERENCE_MODES = ("fitted", "true-means")

RUNS_HEADER = ("setting,n,p,k,missing_rate,rep,method,mse,loss,iterations,"
               "complete_case_count,status,wall_time_ms")
AGG_COMMENT = ("# mse_mean/mse_std over repetitions with an MSE; mse_std is the "
               "sample standard deviation (ddof=1); fail_frac is the fraction "
               "of repetitions without one")
AGG_HEADER = "setting,n,missing_rate,method,mse_mean,mse_std,fail_frac"

IDENTITY_TOL = 1e-10


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FitParams:
    restarts: int = 30
    max_iters: int = 200
    rel_tol: float = 1e-8


@dataclass(frozen=True)
class ExperimentConfig:
    id: str
    gmm: GmmSpec
    k: int
    n_values: tuple[int, ...]
    variants: tuple[tuple[tuple[float, ...], float], ...]  # (q, rate label)
    repetitions: int = 100
    seed: int = 0
    fit: dict = field(default_factory=dict)  # method -> FitParams
    oracle_n: int = 100_000
    oracle_restarts: int = 10
    reference: str = "fitted"
    out: str | None = None

    def fit_params(self, method: str) -> FitParams:
        return self.fit.get(method, FitParams())


@dataclass(frozen=True)
class RunRecord:
    setting: str
    n: int
    p: int
    k: int
    missing_rate: float
    rep: int
    method: str
    mse: float | None
    loss: float | None
    iterations: int | None
    complete_case_count: int
    status: str
    wall_time_ms: float | None


@dataclass(frozen=True)
class AggregateRow:
    setting: str
    n: int
    missing_rate: float
    method: str
    mse_mean: float | None
    mse_std: float | None
    fail_frac: float


# ---------------------------------------------------------------------------
# Config parsing

_FIT_KEYS = {"restarts", "max_iters", "rel_tol"}
_TOP_KEYS = {"setting", "gmm", "id", "n", "missing_rate", "q", "k", "repetitions",
             "seed", "fit", "fit_overrides", "oracle", "reference", "out"}


def _reject_unknown(d: dict, allowed: set, where: str) -> None:
    unknown = set(d) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in {where}: {sorted(unknown)}")


def _fit_params_from(d: dict, where: str, base: FitParams = FitParams()) -> FitParams:
    if not isinstance(d, dict):
        raise ConfigError(f"{where} must be an object")
    _reject_unknown(d, _FIT_KEYS, where)
    try:
        return FitParams(
            restarts=int(d.get("restarts", base.restarts)),
            max_iters=int(d.get("max_iters", base.max_iters)),
            rel_tol=float(d.get("rel_tol", base.rel_tol)),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid {where}: {exc}") from exc


def _gmm_from(d: dict) -> GmmSpec:
    if not isinstance(d, dict):
        raise ConfigError("gmm must be an object")
    _reject_unknown(d, {"weights", "means", "covariances"}, "gmm")
    if "weights" not in d or "means" not in d:
        raise ConfigError("gmm requires 'weights' and 'means'")
    try:
        if "covariances" in d:
            return GmmSpec(d["weights"], d["means"], d["covariances"])
        return GmmSpec.isotropic(d["weights"], d["means"])
    except ValueError as exc:
        raise ConfigError(f"invalid gmm: {exc}") from exc


def config_from_dict(d: dict) -> ExperimentConfig:
    """Build a validated config from a plain dict; unknown keys rejected."""
    if not isinstance(d, dict):
        raise ConfigError("config must be an object")
    _reject_unknown(d, _TOP_KEYS, "config")
    if ("setting" in d) == ("gmm" in d):
        raise ConfigError("exactly one of 'setting' and 'gmm' is required")

    bundle = None
    if "setting" in d:
        try:
            bundle = preset(str(d["setting"]))
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        gmm = bundle.gmm
        default_id = bundle.name
    else:
        gmm = _gmm_from(d["gmm"])
        default_id = "custom"

    setting_id = str(d.get("id", default_id))
    k = int(d.get("k", gmm.k))
    if k < 1:
        raise ConfigError("k must be >= 1")

    n_raw = d.get("n", bundle.default_n if bundle is not None else None)
    if n_raw is None:
        raise ConfigError("'n' is required for inline gmm configs")
    n_values = tuple(int(v) for v in (n_raw if isinstance(n_raw, list) else [n_raw]))
    if not n_values or any(v < 1 for v in n_values):
        raise ConfigError("'n' must be a positive integer or list thereof")

    if "missing_rate" in d and "q" in d:
        raise ConfigError("'missing_rate' and 'q' are mutually exclusive")
    variants: list[tuple[tuple[float, ...], float]] = []
    if "missing_rate" in d:
        raw = d["missing_rate"]
        rates = raw if isinstance(raw, list) else [raw]
        for rate in rates:
            try:
                spec = McarSpec.from_rate(float(rate), gmm.p)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
            variants.append((spec.q, float(rate)))
    elif "q" in d:
        try:
            spec = McarSpec(d["q"])
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if spec.p != gmm.p:
            raise ConfigError(f"q has length {spec.p}, data has {gmm.p} columns")
        variants.append((spec.q, float(1.0 - np.mean(spec.q))))
    else:
        if bundle is None or bundle.mcar is None:
            raise ConfigError("a missing rate or q vector is required for this setting")
        variants.append((bundle.mcar.q, float(1.0 - np.mean(bundle.mcar.q))))

    base_fit = _fit_params_from(d.get("fit", {}), "fit")
    fit = {m: base_fit for m in METHODS}
    overrides = d.get("fit_overrides", {})
    if not isinstance(overrides, dict):
        raise ConfigError("fit_overrides must be an object")
    _reject_unknown(overrides, set(METHODS), "fit_overrides")
    for m, o in overrides.items():
        fit[m] = _fit_params_from(o, f"fit_overrides.{m}", base_fit)

    oracle_d = d.get("oracle", {})
    if not isinstance(oracle_d, dict):
        raise ConfigError("oracle must be an object")
    _reject_unknown(oracle_d, {"n", "restarts"}, "oracle")

    reference = str(d.get("reference", "fitted"))
    if reference not in REFERENCE_MODES:
        raise ConfigError(f"reference must be one of {REFERENCE_MODES}")

    repetitions = int(d.get("repetitions", 100))
    if repetitions < 1:
        raise ConfigError("repetitions must be >= 1")

    return ExperimentConfig(
        id=setting_id,
        gmm=gmm,
        k=k,
        n_values=n_values,
        variants=tuple(variants),
        repetitions=repetitions,
        seed=int(d.get("seed", 0)),
        fit=fit,
        oracle_n=int(oracle_d.get("n", 100_000)),
        oracle_restarts=int(oracle_d.get("restarts", 10)),
        reference=reference,
        out=str(d["out"]) if "out" in d else None,
    )


def load_config_file(path) -> list[ExperimentConfig]:
    """Parse a config file: a single config object or {"experiments": [...]}."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    if isinstance(doc, dict) and "experiments" in doc:
        _reject_unknown(doc, {"experiments"}, "bundle")
        if not isinstance(doc["experiments"], list) or not doc["experiments"]:
            raise ConfigError("'experiments' must be a non-empty list")
        return [config_from_dict(c) for c in doc["experiments"]]
    return [config_from_dict(doc)]


# ---------------------------------------------------------------------------
# Execution

def _reference_for(cfg: ExperimentConfig, cache_dir=None) -> np.ndarray:
    if cfg.reference == "true-means":
        return canonicalize_centers(cfg.gmm.means)
    opts = FitOptions(k=cfg.k, restarts=cfg.oracle_restarts,
                      seed=derive_seed(cfg.seed, "reference"))
    return estimate_reference(cfg.gmm, cfg.k, cfg.oracle_n, opts, cache_dir=cache_dir)


def _rep_task(task) -> list[RunRecord]:
    (setting_id, gmm, k, n, q, rate, rep, master_seed, fit_params,
     reference, timing) = task
    labels = (setting_id, f"n={n}", f"rate={rate!r}", f"rep={rep}")
    X, _ = sample_gmm(gmm, n, derive_seed(master_seed, *labels, "data"))
    R = gen_mask(n, McarSpec(q), derive_seed(master_seed, *labels, "mask"))
    cc_count = int(R.all(axis=1).sum())
    p = gmm.p
    records = []

    def record(method, mse, loss, iterations, status, ms):
        records.append(RunRecord(
            setting=setting_id, n=n, p=p, k=k, missing_rate=rate, rep=rep,
            method=method, mse=mse, loss=loss, iterations=iterations,
            complete_case_count=cc_count, status=status,
            wall_time_ms=ms if timing else None,
        ))

    def timed_fit(method, fit_call):
        t0 = time.perf_counter()
        try:
            result = fit_call()
        except Exception:
            record(method, None, None, None, "error", None)
            return None
        ms = (time.perf_counter() - t0) * 1e3
        record(method, mse_centers(result.centers, reference), result.loss,
               result.iterations, "ok", ms)
        return result

    fp = fit_params["oracle"]
    timed_fit("oracle", lambda: km_fit(X, FitOptions(
        k=k, restarts=fp.restarts, max_iters=fp.max_iters, rel_tol=fp.rel_tol,
        seed=derive_seed(master_seed, *labels, "fit-oracle"))))

    if cc_count >= k:
        Xcc = X[R.all(axis=1)]
        fp = fit_params["complete_case"]
        timed_fit("complete_case", lambda: km_fit(Xcc, FitOptions(
            k=k, restarts=fp.restarts, max_iters=fp.max_iters, rel_tol=fp.rel_tol,
            seed=derive_seed(master_seed, *labels, "fit-complete-case"))))
    else:
        record("complete_case", None, None, None, "insufficient", None)

    fp = fit_params["kpod"]
    kres = timed_fit("kpod", lambda: kpod_fit(X, R, FitOptions(
        k=k, restarts=fp.restarts, max_iters=fp.max_iters, rel_tol=fp.rel_tol,
        seed=derive_seed(master_seed, *labels, "fit-kpod"))))
    if kres is not None:
        report = decomposition_check(X, R, kres.centers)
        if report.scaled_diff() > IDENTITY_TOL:
            raise RuntimeError(
                f"loss decomposition identity violated: {report.abs_diff!r} "
                f"(setting={setting_id}, n={n}, rep={rep})")
    return records


_METHOD_ORDER = {m: i for i, m in enumerate(METHODS)}


def _sort_records(records: list[RunRecord]) -> list[RunRecord]:
    return sorted(records, key=lambda r: (r.setting, r.n, r.missing_rate, r.rep,
                                          _METHOD_ORDER[r.method]))


def run_experiments(
    cfgs: list[ExperimentConfig],
    jobs: int = 1,
    timing: bool = False,
    cache_dir=None,
    log=None,
) -> tuple[list[RunRecord], list[AggregateRow]]:
    """Run a list of configs; returns sorted per-repetition records and
    their aggregation. Output is independent of ``jobs``."""
    tasks = []
    for cfg in cfgs:
        reference = _reference_for(cfg, cache_dir=cache_dir)
        if log:
            log(f"[{cfg.id}] reference centers ready ({cfg.reference})")
        for n in cfg.n_values:
            for q, rate in cfg.variants:
                for rep in range(cfg.repetitions):
                    tasks.append((cfg.id, cfg.gmm, cfg.k, n, q, rate, rep,
                                  cfg.seed, {m: cfg.fit_params(m) for m in METHODS},
                                  reference, timing))
    records: list[RunRecord] = []
    if jobs <= 1:
        for t in tasks:
            records.extend(_rep_task(t))
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for recs in pool.map(_rep_task, tasks):
                records.extend(recs)
    records = _sort_records(records)
    agg = aggregate(records)
    if log:
        for row in agg:
            mean = "-" if row.mse_mean is None else f"{row.mse_mean:.4f}"
            log(f"[{row.setting}] n={row.n} rate={row.missing_rate:g} "
                f"{row.method}: mse_mean={mean} fail={row.fail_frac:.2f}")
    return records, agg


def run_table(cfg: ExperimentConfig, jobs: int = 1, **kw):
    """Table-style run: every (n, rate) combination of one config."""
    return run_experiments([cfg], jobs=jobs, **kw)


def run_trend(cfg: ExperimentConfig, jobs: int = 1, **kw):
    """Trend run over an ascending list of sample sizes."""
    if len(cfg.n_values) < 2 or list(cfg.n_values) != sorted(cfg.n_values):
        raise ConfigError("trend runs need an ascending list of sample sizes")
    return run_experiments([cfg], jobs=jobs, **kw)


def aggregate(records: list[RunRecord]) -> list[AggregateRow]:
    groups: dict[tuple, list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.setting, r.n, r.missing_rate, r.method), []).append(r)
    rows = []
    for (setting, n, rate, method), recs in sorted(
            groups.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2],
                                            _METHOD_ORDER[kv[0][3]])):
        mses = [r.mse for r in recs if r.mse is not None]
        rows.append(AggregateRow(
            setting=setting, n=n, missing_rate=rate, method=method,
            mse_mean=float(np.mean(mses)) if mses else None,
            mse_std=float(np.std(mses, ddof=1)) if len(mses) > 1 else None,
            fail_frac=1.0 - len(mses) / len(recs),
        ))
    return rows


# ---------------------------------------------------------------------------
# Serialization

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_runs_csv(path, records: list[RunRecord]) -> None:
    def write(p):
        with open(p, "w", newline="\n") as fh:
            fh.write(RUNS_HEADER + "\n")
            for r in records:
                fh.write(",".join(_cell(v) for v in (
                    r.setting, r.n, r.p, r.k, r.missing_rate, r.rep, r.method,
                    r.mse, r.loss, r.iterations, r.complete_case_count,
                    r.status, r.wall_time_ms)) + "\n")
    atomic_write(path, write)


def write_aggregate_csv(path, rows: list[AggregateRow]) -> None:
    def write(p):
        with open(p, "w", newline="\n") as fh:
            fh.write(AGG_COMMENT + "\n")
            fh.write(AGG_HEADER + "\n")
            for r in rows:
                fh.write(",".join(_cell(v) for v in (
                    r.setting, r.n, r.missing_rate, r.method,
                    r.mse_mean, r.mse_std, r.fail_frac)) + "\n")
    atomic_write(path, write)


def format_aggregate_table(rows: list[AggregateRow]) -> str:
    header = ("setting", "n", "rate", "method", "mse_mean", "mse_std", "fail")
    body = [(r.setting, str(r.n), f"{r.missing_rate:g}", r.method,
             "-" if r.mse_mean is None else f"{r.mse_mean:.4f}",
             "-" if r.mse_std is None else f"{r.mse_std:.4f}",
             f"{r.fail_frac:.2f}") for r in rows]
    widths = [max(len(h), *(len(b[i]) for b in body)) if body else len(h)
              for i, h in enumerate(header)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*header)]
    lines.extend(fmt.format(*b) for b in body)
    return "\n".join(lines)
