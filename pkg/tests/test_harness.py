import datetime
import json

import numpy as np
import pytest

import bayesdn.harness as harness
from bayesdn.diffnet import DifferentialNetwork
from bayesdn.gibbs import GibbsConfig
from bayesdn.harness import (
    ExperimentConfig,
    RealAnalysisConfig,
    ResultsTable,
    config_from_dict,
    config_to_dict,
    emit_outputs,
    run_real_analysis,
    run_synthetic_experiment,
    run_threshold_study,
    task_seeds,
)
from bayesdn.pipeline import read_csv, write_csv
from bayesdn.structures import StructureSpec, make_structure, sample_gaussian

TINY = ExperimentConfig(
    structures=("ar2",),
    dims=(6,),
    sample_sizes=(40,),
    replications=2,
    gibbs=GibbsConfig(burn_in=40, retained=80),
    wishart_draws=100,
    master_seed=7,
)


class TestSeeds:
    def test_deterministic_function(self):
        assert task_seeds(5, 1, 0, 3) == task_seeds(5, 1, 0, 3)

    def test_pairwise_distinct_within_run(self):
        seen = set()
        for si in range(3):
            for di in range(2):
                for rep in range(10):
                    s = tuple(task_seeds(0, si, di, rep))
                    assert s not in seen
                    seen.add(s)

    def test_changes_with_master_seed(self):
        assert task_seeds(0, 0, 0, 0) != task_seeds(1, 0, 0, 0)


class TestSyntheticExperiment:
    def test_deterministic(self):
        t1 = run_synthetic_experiment(TINY)
        t2 = run_synthetic_experiment(TINY)
        for key in t1.entries:
            np.testing.assert_array_equal(
                t1.entries[key]["values"], t2.entries[key]["values"]
            )

    def test_table_shape(self):
        table = run_synthetic_experiment(TINY)
        keys = set(table.entries)
        assert ("ar2", 6, "bnet", "l1") in keys
        assert ("ar2", 6, "dnet", "mcc") in keys
        for e in table.entries.values():
            assert e["values"].size == 2
            assert e["n"] == 40

    def test_error_context(self):
        bad = ExperimentConfig(
            structures=("ar2",),
            dims=(6,),
            sample_sizes=(0,),
            replications=1,
            gibbs=GibbsConfig(burn_in=1, retained=1),
        )
        with pytest.raises(RuntimeError):
            run_synthetic_experiment(bad)

    def test_mock_estimator_scores_perfectly(self, monkeypatch):
        cfg = TINY

        def perfect(x1, x2, gibbs_cfg, eta, **kwargs):
            pair = make_structure(StructureSpec("ar2", x1.shape[1]))
            eh = np.eye(x1.shape[1])
            return DifferentialNetwork(
                delta_hat=pair.true_delta,
                component_means=(pair.theta1, pair.theta2),
                component_partials=(eh, eh),
                adjacency=pair.true_adjacency,
                eta=eta,
                mode="union",
            )

        monkeypatch.setattr(harness, "estimate_bnet", perfect)
        table = run_synthetic_experiment(
            ExperimentConfig(
                structures=("ar2",),
                dims=(6,),
                sample_sizes=(40,),
                replications=2,
                estimators=("bnet",),
                gibbs=GibbsConfig(burn_in=1, retained=1),
                master_seed=3,
            )
        )
        for metric in ("l1", "l2", "el1", "el2", "maxel1", "minel1"):
            assert table.entries[("ar2", 6, "bnet", metric)]["median"] == 0.0
        assert table.entries[("ar2", 6, "bnet", "mcc")]["median"] == 1.0


class TestAggregation:
    def test_median_matches_sort_oracle(self):
        rng = np.random.default_rng(0)
        values = rng.standard_normal(11)
        ordered = sorted(values)
        assert harness._median(np.asarray(values)) == ordered[5]
        values = rng.standard_normal(8)
        ordered = sorted(values)
        assert harness._median(np.asarray(values)) == pytest.approx(
            0.5 * (ordered[3] + ordered[4])
        )

    def test_median_permutation_invariant(self):
        rng = np.random.default_rng(1)
        values = rng.standard_normal(9)
        m = harness._median(values)
        for _ in range(5):
            perm = rng.permutation(values)
            assert harness._median(perm) == m

    def test_median_with_nas(self):
        vals = np.array([1.0, np.nan, 3.0])
        assert harness._median(vals) == 2.0
        assert np.isnan(harness._median(np.array([np.nan, np.nan])))


class TestThresholdStudy:
    def test_reports_per_structure(self):
        cfg = ExperimentConfig(
            structures=("ar2", "cluster"),
            dims=(8,),
            sample_sizes=(100,),
            replications=2,
            estimators=("bnet",),
            gibbs=GibbsConfig(burn_in=10, retained=20),
            wishart_draws=200,
            master_seed=1,
        )
        studies = run_threshold_study(cfg)
        assert len(studies) == 2
        for st in studies:
            rs = st.rules["mean"]
            assert rs.median_mcc.size == len(cfg.sweep_grid)
            assert len(rs.per_rep_best_eta) == 2
            assert rs.best_eta in st.grid

    def test_ratio_rule_runs(self):
        cfg = ExperimentConfig(
            structures=("cluster",),
            dims=(6,),
            sample_sizes=(80,),
            replications=1,
            rules=("mean", "ratio"),
            gibbs=GibbsConfig(burn_in=30, retained=60),
            wishart_draws=100,
            master_seed=2,
        )
        studies = run_threshold_study(cfg)
        assert set(studies[0].rules) == {"mean", "ratio"}


class TestConfigSerialization:
    def test_round_trip(self):
        d = config_to_dict(TINY)
        back = config_from_dict(d)
        assert back == TINY

    def test_real_config_round_trip(self):
        cfg = RealAnalysisConfig(
            csv_path="x.csv",
            date_column="date",
            boundaries=("2020-06-06",),
            gibbs=GibbsConfig(burn_in=5, retained=10),
        )
        back = config_from_dict(config_to_dict(cfg), real=True)
        assert back == cfg

    def test_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig(structures=("nope",))
        with pytest.raises(ValueError):
            ExperimentConfig(dims=(10,), sample_sizes=(50, 100))
        with pytest.raises(ValueError):
            RealAnalysisConfig(csv_path="x.csv")  # neither split style


class TestEmit:
    def test_empty_table_header_only(self, tmp_path):
        table = ResultsTable(entries={}, replications=0, master_seed=0, seeds=[])
        emit_outputs(table, str(tmp_path), {"master_seed": 0})
        lines = (tmp_path / "results.csv").read_text().splitlines()
        assert lines == ["structure,p,n,estimator,metric,median,se_mad,se_boot"]
        assert (tmp_path / "manifest.json").exists()

    def test_manifest_hash_tracks_config(self, tmp_path):
        from bayesdn.harness import write_manifest

        h1 = write_manifest(str(tmp_path), {"a": 1}, [])
        h2 = write_manifest(str(tmp_path), {"a": 1}, [])
        h3 = write_manifest(str(tmp_path), {"a": 2}, [])
        assert h1 == h2 and h1 != h3

    def test_sweep_json_round_trip(self, tmp_path):
        cfg = ExperimentConfig(
            structures=("cluster",),
            dims=(6,),
            sample_sizes=(60,),
            replications=1,
            gibbs=GibbsConfig(burn_in=10, retained=20),
            wishart_draws=100,
            master_seed=4,
        )
        studies = run_threshold_study(cfg)
        emit_outputs(studies, str(tmp_path), config_to_dict(cfg))
        payload = json.loads((tmp_path / "threshold_study.json").read_text())
        st, rs = studies[0], studies[0].rules["mean"]
        got = payload[0]["rules"]["mean"]
        np.testing.assert_array_equal(got["median_sparsity_error"], rs.median_sparsity_error)
        recon = [np.nan if v is None else v for v in got["median_mcc"]]
        np.testing.assert_array_equal(np.isnan(recon), np.isnan(rs.median_mcc))
        np.testing.assert_array_equal(
            np.asarray(recon)[~np.isnan(rs.median_mcc)],
            rs.median_mcc[~np.isnan(rs.median_mcc)],
        )
        assert got["best_eta"] == rs.best_eta
        assert payload[0]["grid"] == [float(x) for x in st.grid]

    def test_byte_identical_across_thread_counts(self, tmp_path):
        out1, out2 = tmp_path / "t1", tmp_path / "t2"
        for out, threads in ((out1, 1), (out2, 2)):
            table = run_synthetic_experiment(TINY, threads=threads)
            emit_outputs(table, str(out), config_to_dict(TINY))
        for name in ("results.csv", "manifest.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def phase_csv(tmp_path, pair, n1=90, n2=110, identical=False):
    x1 = sample_gaussian(pair.theta1, n1, seed=31)
    x2 = x1.copy() if identical else sample_gaussian(pair.theta2, n2, seed=32)
    rows = np.vstack([x1, x2])
    start = datetime.date(2021, 1, 1)
    dates = [start + datetime.timedelta(days=k) for k in range(rows.shape[0])]
    path = tmp_path / "phases.csv"
    write_csv(path, [f"m{k}" for k in range(rows.shape[1])], rows, dates=dates)
    boundary = (start + datetime.timedelta(days=n1)).isoformat()
    return path, boundary


class TestRealAnalysis:
    def test_identical_phases_null(self, tmp_path):
        pair = make_structure(StructureSpec("ar1", 5))
        path, boundary = phase_csv(tmp_path, pair, n1=80, n2=80, identical=True)
        cfg = RealAnalysisConfig(
            csv_path=str(path),
            date_column="date",
            boundaries=(boundary,),
            gibbs=GibbsConfig(burn_in=50, retained=100),
            wishart_draws=500,
            dn_mode="difference",
            master_seed=9,
        )
        result = run_real_analysis(cfg)
        assert result.box_m_p_value == pytest.approx(1.0)
        assert not result.network.adjacency.any()

    def test_known_structures_recovered(self, tmp_path):
        pair = make_structure(StructureSpec("cluster", 6))
        path, boundary = phase_csv(tmp_path, pair, n1=150, n2=150)
        cfg = RealAnalysisConfig(
            csv_path=str(path),
            date_column="date",
            boundaries=(boundary,),
            gibbs=GibbsConfig(burn_in=100, retained=200),
            dn_mode="difference",
            master_seed=10,
        )
        result = run_real_analysis(cfg)
        from bayesdn.metrics import classification_scores, confusion

        mcc = classification_scores(
            confusion(result.network.adjacency, pair.true_adjacency)
        ).mcc
        assert mcc > 0.3
        assert result.box_m_p_value < 0.01

    def test_class_column_split(self, tmp_path):
        pair = make_structure(StructureSpec("cluster", 5))
        x1 = sample_gaussian(pair.theta1, 70, seed=41)
        x2 = sample_gaussian(pair.theta2, 90, seed=42)
        rows = np.vstack(
            [
                np.column_stack([x1, np.zeros(70)]),
                np.column_stack([x2, np.ones(90)]),
            ]
        )
        path = tmp_path / "labeled.csv"
        write_csv(path, ["a", "b", "c", "d", "e", "label"], rows)
        cfg = RealAnalysisConfig(
            csv_path=str(path),
            class_column="label",
            gibbs=GibbsConfig(burn_in=40, retained=80),
            wishart_draws=200,
            master_seed=12,
        )
        result = run_real_analysis(cfg)
        assert result.group_sizes == (70, 90)
        assert result.columns == ["a", "b", "c", "d", "e"]
        assert result.box_m_p_value < 0.05

    def test_outputs_round_trip(self, tmp_path):
        pair = make_structure(StructureSpec("ar1", 4))
        path, boundary = phase_csv(tmp_path, pair, n1=60, n2=60)
        cfg = RealAnalysisConfig(
            csv_path=str(path),
            date_column="date",
            boundaries=(boundary,),
            gibbs=GibbsConfig(burn_in=30, retained=60),
            wishart_draws=200,
            master_seed=11,
        )
        result = run_real_analysis(cfg)
        outdir = tmp_path / "out"
        emit_outputs(result, str(outdir), config_to_dict(cfg))
        back = read_csv(outdir / "delta_hat.csv")
        np.testing.assert_array_equal(back.rows, result.network.delta_hat)
        summary = json.loads((outdir / "summary.json").read_text())
        assert summary["group_sizes"] == [60, 60]


class TestCli:
    def test_synthetic_exit_zero(self, tmp_path):
        from bayesdn.cli import main

        rc = main(
            [
                "synthetic",
                "--structures",
                "ar2",
                "--dims",
                "6",
                "--sizes",
                "40",
                "--replications",
                "1",
                "--seed",
                "3",
                "--out",
                str(tmp_path / "o"),
                "--config",
                str(_tiny_cli_config(tmp_path)),
            ]
        )
        assert rc == 0
        assert (tmp_path / "o" / "results.csv").exists()

    def test_missing_csv_exit_code(self, tmp_path):
        from bayesdn.cli import main

        rc = main(["sample", "--csv", str(tmp_path / "absent.csv"), "--out", str(tmp_path)])
        assert rc == 3

    def test_bad_config_exit_code(self, tmp_path):
        from bayesdn.cli import main

        cfg = tmp_path / "bad.json"
        cfg.write_text('{"structures": ["nope"]}')
        rc = main(["synthetic", "--config", str(cfg), "--out", str(tmp_path)])
        assert rc == 2


def _tiny_cli_config(tmp_path):
    import json as _json

    path = tmp_path / "tiny.json"
    path.write_text(
        _json.dumps({"gibbs": {"burn_in": 20, "retained": 40}, "wishart_draws": 100})
    )
    return path
