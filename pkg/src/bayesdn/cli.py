"""Command line interface.

Subcommands::

    bayesdn synthetic   loss/score benchmark over synthetic structures
    bayesdn sweep       threshold study over the eta grid
    bayesdn real        two-group differential network from a CSV
    bayesdn sample      one Gibbs chain over one CSV

Settings come from an optional JSON config file (same field names as the
config dataclasses, nested sections "gibbs" and "ista") with flag
overrides on top.  Desk-scale defaults (10 replications, 1000 burn-in,
2000 retained draws) keep runs in minutes; ``--paper-scale`` switches to
40 replications and 5000/10000 sweeps.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from .gibbs import GibbsConfig, posterior_mean, run_chain
from .harness import (
    ExperimentConfig,
    config_from_dict,
    config_to_dict,
    emit_outputs,
    run_real_analysis,
    run_synthetic_experiment,
    run_threshold_study,
    write_manifest,
)
from .linalg import NotPositiveDefiniteError, mirror_lower
from .pipeline import EmptyDataError, nonparanormal_transform, read_csv, write_csv

DESK_SCALE = {"replications": 10, "burn_in": 1000, "retained": 2000}
PAPER_SCALE = {"replications": 40, "burn_in": 5000, "retained": 10000}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="JSON config file")
    parser.add_argument("--seed", type=int, help="master seed override")
    parser.add_argument("--out", default="out", help="output directory")
    parser.add_argument("--threads", type=int, default=1, help="worker processes")
    parser.add_argument(
        "--paper-scale",
        action="store_true",
        help="full-size run: 40 replications, 5000 burn-in, 10000 retained",
    )


def _load_config_dict(path: str | None) -> dict:
    if path is None:
        return {}
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _experiment_config(args) -> ExperimentConfig:
    d = _load_config_dict(args.config)
    scale = PAPER_SCALE if args.paper_scale else DESK_SCALE
    d.setdefault("replications", scale["replications"])
    gibbs = d.get("gibbs", {})
    gibbs.setdefault("burn_in", scale["burn_in"])
    gibbs.setdefault("retained", scale["retained"])
    d["gibbs"] = gibbs
    if args.structures:
        d["structures"] = args.structures.split(",")
    if args.dims:
        d["dims"] = [int(x) for x in args.dims.split(",")]
    if args.sizes:
        d["sample_sizes"] = [int(x) for x in args.sizes.split(",")]
    if args.replications is not None:
        d["replications"] = args.replications
    if args.eta is not None:
        d["eta"] = args.eta
    if args.mode is not None:
        d["dn_mode"] = args.mode
    if args.estimators:
        d["estimators"] = args.estimators.split(",")
    if args.seed is not None:
        d["master_seed"] = args.seed
    return config_from_dict(d)


def _add_experiment_flags(parser) -> None:
    parser.add_argument("--structures", help="comma list, e.g. ar2,cluster")
    parser.add_argument("--dims", help="comma list of dimensions")
    parser.add_argument("--sizes", help="comma list of sample sizes (pairs with dims)")
    parser.add_argument("--replications", type=int)
    parser.add_argument("--eta", type=float)
    parser.add_argument("--mode", choices=("difference", "xor", "union"))
    parser.add_argument("--estimators", help="comma subset of bnet,dnet")


def _cmd_synthetic(args) -> int:
    cfg = _experiment_config(args)
    table = run_synthetic_experiment(cfg, threads=args.threads)
    emit_outputs(table, args.out, config_to_dict(cfg))
    print(f"wrote {os.path.join(args.out, 'results.csv')}")
    return 0


def _cmd_sweep(args) -> int:
    cfg = _experiment_config(args)
    studies = run_threshold_study(cfg, threads=args.threads)
    emit_outputs(studies, args.out, config_to_dict(cfg))
    for st in studies:
        for rule, rs in st.rules.items():
            print(
                f"{st.structure} p={st.dim} rule={rule}: "
                f"best eta {rs.best_eta:.2f} (median MCC {rs.best_mcc:.3f})"
            )
    return 0


def _cmd_real(args) -> int:
    d = _load_config_dict(args.config)
    if args.csv:
        d["csv_path"] = args.csv
    if args.seed is not None:
        d["master_seed"] = args.seed
    gibbs = d.get("gibbs", {})
    scale = PAPER_SCALE if args.paper_scale else DESK_SCALE
    gibbs.setdefault("burn_in", scale["burn_in"])
    gibbs.setdefault("retained", scale["retained"])
    d["gibbs"] = gibbs
    cfg = config_from_dict(d, real=True)
    result = run_real_analysis(cfg)
    emit_outputs(result, args.out, config_to_dict(cfg))
    print(
        f"groups {result.group_names} sizes {result.group_sizes}; "
        f"Box's M p-value {result.box_m_p_value:.4g}; "
        f"edges written to {os.path.join(args.out, 'edges.txt')}"
    )
    return 0


def _cmd_sample(args) -> int:
    ds = read_csv(args.csv, date_column=args.date_column)
    x = ds.rows
    if args.nonparanormal:
        x = nonparanormal_transform(x)
    scale = PAPER_SCALE if args.paper_scale else DESK_SCALE
    cfg = GibbsConfig(
        burn_in=args.burn_in if args.burn_in is not None else scale["burn_in"],
        retained=args.retained if args.retained is not None else scale["retained"],
        seed=args.seed if args.seed is not None else 0,
    )
    chain = run_chain(mirror_lower(x.T @ x), x.shape[0], cfg)
    mean = posterior_mean(chain)
    draws = chain.draws
    idx = np.arange(mean.shape[0])
    d = np.sqrt(draws[:, idx, idx])
    rho = (-draws / (d[:, :, None] * d[:, None, :])).mean(axis=0)
    np.fill_diagonal(rho, 1.0)
    os.makedirs(args.out, exist_ok=True)
    write_csv(os.path.join(args.out, "posterior_mean.csv"), ds.columns, mean)
    write_csv(os.path.join(args.out, "partial_correlation_mean.csv"), ds.columns, rho)
    payload = {"csv": args.csv, "n": int(x.shape[0]), **config_to_dict(cfg)}
    write_manifest(args.out, payload, [[cfg.seed]])
    print(f"wrote posterior summaries for {len(ds.columns)} columns to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bayesdn", description="Bayesian differential network estimation"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_syn = sub.add_parser("synthetic", help="synthetic loss/score benchmark")
    _add_common(p_syn)
    _add_experiment_flags(p_syn)
    p_syn.set_defaults(fn=_cmd_synthetic)

    p_sweep = sub.add_parser("sweep", help="threshold study over the eta grid")
    _add_common(p_sweep)
    _add_experiment_flags(p_sweep)
    p_sweep.set_defaults(fn=_cmd_sweep)

    p_real = sub.add_parser("real", help="two-group analysis of a CSV dataset")
    _add_common(p_real)
    p_real.add_argument("--csv", help="dataset path (overrides config csv_path)")
    p_real.set_defaults(fn=_cmd_real)

    p_sample = sub.add_parser("sample", help="run one Gibbs chain over one CSV")
    _add_common(p_sample)
    p_sample.add_argument("--csv", required=True)
    p_sample.add_argument("--date-column")
    p_sample.add_argument("--nonparanormal", action="store_true")
    p_sample.add_argument("--burn-in", type=int, dest="burn_in")
    p_sample.add_argument("--retained", type=int)
    p_sample.set_defaults(fn=_cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (EmptyDataError, FileNotFoundError) as err:
        print(f"data error: {err}", file=sys.stderr)
        return 3
    except NotPositiveDefiniteError as err:
        print(f"numerical error: {err}", file=sys.stderr)
        return 4
    except (ValueError, TypeError, KeyError, json.JSONDecodeError) as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    except RuntimeError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
