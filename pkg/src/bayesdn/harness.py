"""Experiment harness: synthetic benchmark, threshold study, real-data run.

Every run is reproducible from one master seed: per-task seeds are derived
through ``numpy.random.SeedSequence`` keyed by (structure index, dimension
index, replication index), aggregation happens after a deterministic sort
of the collected results, and files are written with round-tripping float
formatting.  The emitted bytes therefore do not depend on how many worker
processes executed the tasks.
"""

from __future__ import annotations

import dataclasses
import datetime
import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .diffnet import DN_MODES, dn_adjacency, estimate_bnet
from .gibbs import GibbsConfig, run_chain
from .ista import IstaConfig, estimate_dnet
from .linalg import mirror_lower
from .metrics import classification_scores, confusion, loss_report
from .pipeline import (
    boxs_m_test,
    moving_average,
    nonparanormal_transform,
    read_csv,
    split_phases,
    write_csv,
)
from .structures import KINDS, StructureSpec, make_structure, sample_gaussian
from .wishart import (
    DEFAULT_GRID,
    RATIO_FLOOR,
    ThresholdReport,
    edge_rule_ratio,
    posterior_partial_corr_mean,
    posterior_spec,
    threshold_sweep,
)

__all__ = [
    "ExperimentConfig",
    "RealAnalysisConfig",
    "ResultsTable",
    "StudyResult",
    "RealAnalysisResult",
    "task_seeds",
    "run_synthetic_experiment",
    "run_threshold_study",
    "run_real_analysis",
    "emit_outputs",
    "config_to_dict",
    "config_from_dict",
]

LOSS_METRICS = ("l1", "l2", "el1", "el2", "maxel1", "minel1")
SCORE_METRICS = ("sp", "se", "fnr", "f1", "mcc")
_BOOTSTRAP_RESAMPLES = 200


@dataclass(frozen=True)
class ExperimentConfig:
    """Configuration shared by the synthetic benchmark and threshold study.

    ``dims`` and ``sample_sizes`` are paired positionally.  ``estimators``
    selects which of the Bayesian network (bnet) and the proximal-gradient
    comparator (dnet) run.  ``rules`` selects the threshold-study edge
    rules: "mean" thresholds the posterior mean partial correlations,
    "ratio" thresholds them relative to a wide Wishart reference (and
    needs chains, so it is much slower).
    """

    structures: tuple[str, ...] = ("ar2",)
    dims: tuple[int, ...] = (10, 30, 100)
    sample_sizes: tuple[int, ...] = (50, 100, 200)
    replications: int = 40
    estimators: tuple[str, ...] = ("bnet", "dnet")
    gibbs: GibbsConfig = GibbsConfig()
    ista: IstaConfig = IstaConfig()
    eta: float = 0.3
    sweep_grid: tuple[float, ...] = tuple(float(x) for x in DEFAULT_GRID)
    rules: tuple[str, ...] = ("mean",)
    dn_mode: str = "union"
    wishart_draws: int = 1000
    eps: float = 0.001
    master_seed: int = 0

    def __post_init__(self):
        for s in self.structures:
            if s not in KINDS:
                raise ValueError(f"unknown structure {s!r}")
        if len(self.dims) != len(self.sample_sizes):
            raise ValueError("dims and sample_sizes must pair up")
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        for e in self.estimators:
            if e not in ("bnet", "dnet"):
                raise ValueError(f"unknown estimator {e!r}")
        for r in self.rules:
            if r not in ("mean", "ratio"):
                raise ValueError(f"unknown rule {r!r}")
        if self.dn_mode not in DN_MODES:
            raise ValueError(f"unknown dn_mode {self.dn_mode!r}")


@dataclass(frozen=True)
class RealAnalysisConfig:
    """Where the data lives and how to split it into the two groups.

    Either ``class_column`` (a column whose two values define the groups)
    or ``boundaries`` (ISO dates cutting the date-ordered rows into named
    phases, two of which are compared) must be given.
    """

    csv_path: str
    date_column: str | None = None
    class_column: str | None = None
    boundaries: tuple[str, ...] = ()
    phase_names: tuple[str, ...] | None = None
    compare: tuple[str, str] | None = None
    moving_average_window: int = 1
    gibbs: GibbsConfig = GibbsConfig()
    eta: float = 0.3
    dn_mode: str = "difference"
    wishart_draws: int = 1000
    eps: float = 0.001
    master_seed: int = 0

    def __post_init__(self):
        if (self.class_column is None) == (len(self.boundaries) == 0):
            raise ValueError("configure exactly one of class_column or boundaries")
        if self.dn_mode not in DN_MODES:
            raise ValueError(f"unknown dn_mode {self.dn_mode!r}")


@dataclass(frozen=True)
class ResultsTable:
    """Per-(structure, p, estimator, metric) medians and spreads.

    ``entries`` maps that key to a dict with the raw ``values`` plus
    ``median``, ``se_mad`` (scaled median absolute deviation over sqrt of
    the replication count) and ``se_boot`` (bootstrap standard error of
    the median).
    """

    entries: dict[tuple[str, int, str, str], dict]
    replications: int
    master_seed: int
    seeds: list[list[int]]


@dataclass(frozen=True)
class RuleStudy:
    median_sparsity_error: np.ndarray
    median_mcc: np.ndarray
    best_eta: float
    best_mcc: float
    per_rep_best_eta: list[float]


@dataclass(frozen=True)
class StudyResult:
    structure: str
    dim: int
    sample_size: int
    grid: np.ndarray
    rules: dict[str, RuleStudy]


@dataclass(frozen=True)
class RealAnalysisResult:
    columns: list[str]
    group_names: tuple[str, str]
    group_sizes: tuple[int, int]
    network: object
    box_m_statistic: float
    box_m_p_value: float


def task_seeds(
    master_seed: int,
    structure_index: int,
    dim_index: int,
    replication: int,
    count: int = 6,
) -> list[int]:
    """Derive ``count`` independent 63-bit seeds for one task.

    Uses ``SeedSequence(master_seed, spawn_key=(structure_index,
    dim_index, replication))``, so tasks get pairwise distinct streams and
    the derivation is a pure function of the four integers.
    """
    ss = np.random.SeedSequence(
        entropy=master_seed, spawn_key=(structure_index, dim_index, replication)
    )
    state = ss.generate_state(count, np.uint64)
    return [int(x >> 1) for x in state]


def _structure_spec(kind: str, dim: int, seed: int) -> StructureSpec:
    return StructureSpec(kind, dim, seed=seed)


def _synthetic_task(args) -> dict:
    cfg, si, structure, di, p, n, rep = args
    s_struct, s_x1, s_x2, s_chain, _, _ = task_seeds(cfg.master_seed, si, di, rep)
    pair = make_structure(_structure_spec(structure, p, s_struct))
    x1 = sample_gaussian(pair.theta1, n, seed=s_x1)
    x2 = sample_gaussian(pair.theta2, n, seed=s_x2)
    out: dict[str, dict[str, float]] = {}
    for est in cfg.estimators:
        if est == "bnet":
            dn = estimate_bnet(
                x1,
                x2,
                replace(cfg.gibbs, seed=s_chain),
                cfg.eta,
                mode=cfg.dn_mode,
                wishart_draws=cfg.wishart_draws,
                eps=cfg.eps,
            )
            delta, adj = dn.delta_hat, dn.adjacency
        else:
            delta, adj, _ = estimate_dnet(x1, x2, cfg.ista)
        losses = loss_report(delta, pair.true_delta)
        scores = classification_scores(confusion(adj, pair.true_adjacency))
        out[est] = {
            **losses.as_dict(),
            "sp": scores.sp,
            "se": scores.se,
            "fnr": scores.fnr,
            "f1": scores.f1,
            "mcc": scores.mcc,
        }
    return out


def _run_tasks(fn, argslist, threads: int):
    if threads <= 1:
        return [fn(a) for a in argslist]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, argslist))


def _median(values: np.ndarray) -> float:
    if np.all(np.isnan(values)):
        return float("nan")
    return float(np.nanmedian(values))


def _se_mad(values: np.ndarray) -> float:
    finite = values[~np.isnan(values)]
    if finite.size == 0:
        return float("nan")
    med = np.median(finite)
    mad = np.median(np.abs(finite - med))
    return float(1.4826 * mad / np.sqrt(finite.size))


def _se_boot(values: np.ndarray, rng: np.random.Generator) -> float:
    finite = values[~np.isnan(values)]
    if finite.size < 2:
        return float("nan")
    idx = rng.integers(0, finite.size, size=(_BOOTSTRAP_RESAMPLES, finite.size))
    meds = np.median(finite[idx], axis=1)
    return float(np.std(meds, ddof=1))


def run_synthetic_experiment(cfg: ExperimentConfig, threads: int = 1) -> ResultsTable:
    """Benchmark the requested estimators over structures and dimensions.

    For every (structure, dim, replication) triple: generate the model
    pair, sample the two datasets, run the estimators, score the point
    estimate against the true difference and the graph against the true
    support.  Medians and spreads aggregate over replications.
    """
    argslist = []
    seeds_used: list[list[int]] = []
    for si, structure in enumerate(cfg.structures):
        for di, (p, n) in enumerate(zip(cfg.dims, cfg.sample_sizes)):
            for rep in range(cfg.replications):
                argslist.append((cfg, si, structure, di, p, n, rep))
                seeds_used.append(task_seeds(cfg.master_seed, si, di, rep))
    try:
        results = _run_tasks(_synthetic_task, argslist, threads)
    except Exception as err:
        raise RuntimeError(f"synthetic experiment failed: {err}") from err

    entries: dict[tuple[str, int, str, str], dict] = {}
    boot_rng = np.random.default_rng(
        np.random.SeedSequence(entropy=cfg.master_seed, spawn_key=(0xB007,))
    )
    for si, structure in enumerate(cfg.structures):
        for di, (p, n) in enumerate(zip(cfg.dims, cfg.sample_sizes)):
            base = (si * len(cfg.dims) + di) * cfg.replications
            per_rep = results[base : base + cfg.replications]
            for est in cfg.estimators:
                for metric in LOSS_METRICS + SCORE_METRICS:
                    values = np.array([r[est][metric] for r in per_rep], dtype=float)
                    entries[(structure, p, est, metric)] = {
                        "n": n,
                        "values": values,
                        "median": _median(values),
                        "se_mad": _se_mad(values),
                        "se_boot": _se_boot(values, boot_rng),
                    }
    return ResultsTable(
        entries=entries,
        replications=cfg.replications,
        master_seed=cfg.master_seed,
        seeds=seeds_used,
    )


def _chain_partial_mean(x: np.ndarray, cfg: ExperimentConfig, seed: int) -> np.ndarray:
    scatter = mirror_lower(x.T @ x)
    chain = run_chain(scatter, x.shape[0], replace(cfg.gibbs, seed=seed))
    draws = chain.draws
    idx = np.arange(draws.shape[1])
    d = np.sqrt(draws[:, idx, idx])
    rho = -draws / (d[:, :, None] * d[:, None, :])
    mean = rho.mean(axis=0)
    np.fill_diagonal(mean, 1.0)
    return mean


def _ratio_difference_adjacency(rho1, rho2, eg1, eg2, eta, mode):
    if mode == "difference":
        num = np.abs(rho2 - rho1)
        den = np.maximum(np.abs(eg2 - eg1), RATIO_FLOOR)
        adj = num / den > eta
        np.fill_diagonal(adj, False)
        return adj
    a1 = edge_rule_ratio(rho1, eg1, eta)
    a2 = edge_rule_ratio(rho2, eg2, eta)
    return a1 ^ a2 if mode == "xor" else a1 | a2


def _study_task(args) -> dict:
    cfg, si, structure, di, p, n, rep = args
    s_struct, s_x1, s_x2, s_chain, s_w1, s_w2 = task_seeds(cfg.master_seed, si, di, rep)
    pair = make_structure(_structure_spec(structure, p, s_struct))
    x1 = sample_gaussian(pair.theta1, n, seed=s_x1)
    x2 = sample_gaussian(pair.theta2, n, seed=s_x2)
    scatter1 = mirror_lower(x1.T @ x1)
    scatter2 = mirror_lower(x2.T @ x2)
    eh1 = posterior_partial_corr_mean(
        posterior_spec(scatter1, n, cfg.eps), cfg.wishart_draws, np.random.default_rng(s_w1)
    )
    eh2 = posterior_partial_corr_mean(
        posterior_spec(scatter2, n, cfg.eps), cfg.wishart_draws, np.random.default_rng(s_w2)
    )
    grid = np.asarray(cfg.sweep_grid)
    reports: dict[str, ThresholdReport] = {}
    if "mean" in cfg.rules:
        reports["mean"] = threshold_sweep(
            pair.true_adjacency,
            lambda eta: dn_adjacency((eh1, eh2), eta, cfg.dn_mode),
            grid,
        )
    if "ratio" in cfg.rules:
        rho1 = _chain_partial_mean(x1, cfg, s_chain)
        rho2 = _chain_partial_mean(x2, cfg, s_chain + 1)
        eg1 = posterior_partial_corr_mean(
            posterior_spec(scatter1, n, 1.0), cfg.wishart_draws, np.random.default_rng(s_w1 + 1)
        )
        eg2 = posterior_partial_corr_mean(
            posterior_spec(scatter2, n, 1.0), cfg.wishart_draws, np.random.default_rng(s_w2 + 1)
        )
        reports["ratio"] = threshold_sweep(
            pair.true_adjacency,
            lambda eta: _ratio_difference_adjacency(rho1, rho2, eg1, eg2, eta, cfg.dn_mode),
            grid,
        )
    return {
        rule: {
            "sparsity_error": rep_.sparsity_error,
            "mcc": rep_.mcc,
            "best_eta": rep_.best_eta,
            "best_mcc": rep_.best_mcc,
        }
        for rule, rep_ in reports.items()
    }


def run_threshold_study(cfg: ExperimentConfig, threads: int = 1) -> list[StudyResult]:
    """Scan the threshold grid per structure and dimension.

    Returns, per (structure, dim) and per rule, the median curves over
    replications, the threshold maximizing the median MCC curve, and every
    replication's individually best threshold.
    """
    grid = np.asarray(cfg.sweep_grid)
    out: list[StudyResult] = []
    for si, structure in enumerate(cfg.structures):
        for di, (p, n) in enumerate(zip(cfg.dims, cfg.sample_sizes)):
            argslist = [
                (cfg, si, structure, di, p, n, rep) for rep in range(cfg.replications)
            ]
            results = _run_tasks(_study_task, argslist, threads)
            rules: dict[str, RuleStudy] = {}
            for rule in cfg.rules:
                sp = np.vstack([r[rule]["sparsity_error"] for r in results])
                mc = np.vstack([r[rule]["mcc"] for r in results])
                med_sp = np.median(sp, axis=0)
                with np.errstate(all="ignore"):
                    med_mc = np.array(
                        [_median(mc[:, k]) for k in range(grid.size)]
                    )
                best = None
                for k in range(grid.size):
                    if np.isnan(med_mc[k]):
                        continue
                    if best is None or med_mc[k] > med_mc[best]:
                        best = k
                rules[rule] = RuleStudy(
                    median_sparsity_error=med_sp,
                    median_mcc=med_mc,
                    best_eta=float(grid[best]) if best is not None else float(grid[0]),
                    best_mcc=float(med_mc[best]) if best is not None else float("nan"),
                    per_rep_best_eta=[float(r[rule]["best_eta"]) for r in results],
                )
            out.append(
                StudyResult(structure=structure, dim=p, sample_size=n, grid=grid, rules=rules)
            )
    return out


def _two_groups(cfg: RealAnalysisConfig) -> tuple[list[str], tuple[str, str], np.ndarray, np.ndarray]:
    ds = read_csv(cfg.csv_path, date_column=cfg.date_column)
    if cfg.class_column is not None:
        if cfg.class_column not in ds.columns:
            raise ValueError(f"class column {cfg.class_column!r} not found")
        ci = ds.columns.index(cfg.class_column)
        labels = ds.rows[:, ci]
        feature_idx = [k for k in range(len(ds.columns)) if k != ci]
        columns = [ds.columns[k] for k in feature_idx]
        uniq = sorted(set(labels.tolist()))
        if cfg.compare is not None:
            wanted = [float(v) for v in cfg.compare]
        else:
            if len(uniq) != 2:
                raise ValueError(f"class column has {len(uniq)} values; pass compare=(a, b)")
            wanted = uniq
        g1 = ds.rows[np.isclose(labels, wanted[0])][:, feature_idx]
        g2 = ds.rows[np.isclose(labels, wanted[1])][:, feature_idx]
        names = (str(wanted[0]), str(wanted[1]))
    else:
        boundaries = [datetime.date.fromisoformat(b) for b in cfg.boundaries]
        split = split_phases(ds, boundaries, list(cfg.phase_names) if cfg.phase_names else None)
        names_all = list(split.phases)
        if cfg.compare is not None:
            names = (cfg.compare[0], cfg.compare[1])
            for nm in names:
                if nm not in split.phases:
                    raise ValueError(f"phase {nm!r} not among {names_all}")
        else:
            if len(names_all) < 2:
                raise ValueError("need at least two phases")
            names = (names_all[0], names_all[1])
        columns = ds.columns
        g1 = split.rows(ds, names[0])
        g2 = split.rows(ds, names[1])
    return columns, names, g1, g2


def _preprocess(x: np.ndarray, window: int) -> np.ndarray:
    if window > 1:
        x = np.column_stack([moving_average(x[:, j], window) for j in range(x.shape[1])])
    return nonparanormal_transform(x)


def run_real_analysis(cfg: RealAnalysisConfig) -> RealAnalysisResult:
    """Differential network between two groups of one dataset.

    Each group is smoothed (optional trailing moving average), marginally
    Gaussianized, and fed to the Bayesian estimator; the homogeneity test
    runs on the two groups' sample covariances.
    """
    columns, names, g1, g2 = _two_groups(cfg)
    t1 = _preprocess(g1, cfg.moving_average_window)
    t2 = _preprocess(g2, cfg.moving_average_window)
    network = estimate_bnet(
        t1,
        t2,
        replace(cfg.gibbs, seed=cfg.master_seed),
        cfg.eta,
        mode=cfg.dn_mode,
        wishart_draws=cfg.wishart_draws,
        eps=cfg.eps,
    )
    cov1 = mirror_lower((t1 - t1.mean(axis=0)).T @ (t1 - t1.mean(axis=0)) / (t1.shape[0] - 1))
    cov2 = mirror_lower((t2 - t2.mean(axis=0)).T @ (t2 - t2.mean(axis=0)) / (t2.shape[0] - 1))
    stat, pval = boxs_m_test(cov1, t1.shape[0], cov2, t2.shape[0])
    return RealAnalysisResult(
        columns=columns,
        group_names=names,
        group_sizes=(t1.shape[0], t2.shape[0]),
        network=network,
        box_m_statistic=stat,
        box_m_p_value=pval,
    )


# ---------------------------------------------------------------------------
# Serialization and output files
# ---------------------------------------------------------------------------


def config_to_dict(cfg) -> dict:
    """Nested plain-dict form of a config dataclass (JSON-ready)."""
    out = {}
    for f in dataclasses.fields(cfg):
        v = getattr(cfg, f.name)
        if dataclasses.is_dataclass(v):
            out[f.name] = config_to_dict(v)
        elif isinstance(v, tuple):
            out[f.name] = list(v)
        elif isinstance(v, np.ndarray):
            out[f.name] = [float(x) for x in v]
        else:
            out[f.name] = v
    return out


def config_from_dict(d: dict, real: bool = False):
    """Rebuild an ExperimentConfig (or RealAnalysisConfig) from a dict."""
    d = dict(d)
    if "gibbs" in d and isinstance(d["gibbs"], dict):
        d["gibbs"] = GibbsConfig(**d["gibbs"])
    if "ista" in d and isinstance(d["ista"], dict):
        grid = d["ista"].get("penalty_grid")
        if grid is not None:
            d["ista"]["penalty_grid"] = np.asarray(grid, dtype=float)
        d["ista"] = IstaConfig(**d["ista"])
    cls = RealAnalysisConfig if real else ExperimentConfig
    for f in dataclasses.fields(cls):
        if f.name in d and isinstance(d[f.name], list):
            d[f.name] = tuple(d[f.name])
    return cls(**d)


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return [float(x) for x in obj]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    raise TypeError(f"not serializable: {type(obj)}")


def _dump_json(payload, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True, indent=1, default=_json_default)
        fh.write("\n")


def _fmt(x: float) -> str:
    return "NA" if isinstance(x, float) and np.isnan(x) else repr(float(x))


def write_manifest(outdir: str, config_dict: dict, seeds: list[list[int]]) -> str:
    """Write manifest.json with a canonical config hash and derived seeds."""
    canon = json.dumps(config_dict, sort_keys=True, separators=(",", ":"))
    digest = hashlib.sha256(canon.encode("utf-8")).hexdigest()
    path = os.path.join(outdir, "manifest.json")
    _dump_json({"config": config_dict, "config_hash": digest, "seeds": seeds}, path)
    return digest


def emit_results_table(table: ResultsTable, outdir: str) -> str:
    import csv as _csv

    path = os.path.join(outdir, "results.csv")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = _csv.writer(fh, lineterminator="\n")
        writer.writerow(
            ["structure", "p", "n", "estimator", "metric", "median", "se_mad", "se_boot"]
        )
        for key in sorted(table.entries):
            structure, p, est, metric = key
            e = table.entries[key]
            writer.writerow(
                [
                    structure,
                    p,
                    e["n"],
                    est,
                    metric,
                    _fmt(e["median"]),
                    _fmt(e["se_mad"]),
                    _fmt(e["se_boot"]),
                ]
            )
    return path


def emit_study(studies: list[StudyResult], outdir: str) -> str:
    payload = []
    for st in studies:
        rules = {}
        for rule, rs in st.rules.items():
            rules[rule] = {
                "median_sparsity_error": [float(x) for x in rs.median_sparsity_error],
                "median_mcc": [None if np.isnan(x) else float(x) for x in rs.median_mcc],
                "best_eta": rs.best_eta,
                "best_mcc": None if np.isnan(rs.best_mcc) else rs.best_mcc,
                "per_rep_best_eta": rs.per_rep_best_eta,
            }
        payload.append(
            {
                "structure": st.structure,
                "p": st.dim,
                "n": st.sample_size,
                "grid": [float(x) for x in st.grid],
                "rules": rules,
            }
        )
    path = os.path.join(outdir, "threshold_study.json")
    _dump_json(payload, path)
    return path


def emit_real(result: RealAnalysisResult, outdir: str) -> list[str]:
    net = result.network
    cols = result.columns
    paths = []

    def save(name, matrix):
        path = os.path.join(outdir, name)
        write_csv(path, cols, matrix)
        paths.append(path)

    save("delta_hat.csv", net.delta_hat)
    save("component_mean_1.csv", net.component_means[0])
    save("component_mean_2.csv", net.component_means[1])
    save("adjacency.csv", net.adjacency.astype(float))

    edge_path = os.path.join(outdir, "edges.txt")
    with open(edge_path, "w", encoding="utf-8") as fh:
        iu = np.triu_indices(len(cols), k=1)
        for i, j in zip(*iu):
            if net.adjacency[i, j]:
                fh.write(f"{i} {j} {cols[i]} {cols[j]} {repr(float(net.delta_hat[i, j]))}\n")
    paths.append(edge_path)

    _dump_json(
        {
            "groups": list(result.group_names),
            "group_sizes": list(result.group_sizes),
            "eta": net.eta,
            "mode": net.mode,
            "n_edges": int(np.count_nonzero(np.triu(net.adjacency, k=1))),
            "box_m_statistic": result.box_m_statistic,
            "box_m_p_value": result.box_m_p_value,
        },
        os.path.join(outdir, "summary.json"),
    )
    paths.append(os.path.join(outdir, "summary.json"))
    return paths


def _seeds_from_config_dict(config_dict: dict) -> list[list[int]]:
    structures = config_dict.get("structures", [])
    dims = config_dict.get("dims", [])
    reps = config_dict.get("replications", 0)
    master = config_dict.get("master_seed", 0)
    return [
        task_seeds(master, si, di, rep)
        for si in range(len(structures))
        for di in range(len(dims))
        for rep in range(reps)
    ]


def emit_outputs(results, outdir: str, config_dict: dict | None = None) -> list[str]:
    """Write whatever ``results`` is (table, study list, or real-analysis
    result) plus a manifest, and return the written paths."""
    os.makedirs(outdir, exist_ok=True)
    paths: list[str] = []
    seeds: list[list[int]] = []
    if isinstance(results, ResultsTable):
        paths.append(emit_results_table(results, outdir))
        seeds = results.seeds
    elif isinstance(results, RealAnalysisResult):
        paths.extend(emit_real(results, outdir))
    elif isinstance(results, list) and all(isinstance(r, StudyResult) for r in results):
        paths.append(emit_study(results, outdir))
        if config_dict is not None:
            seeds = _seeds_from_config_dict(config_dict)
    else:
        raise TypeError(f"cannot emit results of type {type(results)}")
    if config_dict is not None:
        write_manifest(outdir, config_dict, seeds)
        paths.append(os.path.join(outdir, "manifest.json"))
    return paths
