""" End-to-end tests of the MfgpShm task runner """

import csv
import json
import os

import numpy as np
import pytest

import mfgp_shm as mfgp


FAST_OPTIMIZER = {"restarts": 2, "max_evals": 300, "tolerance": 1e-6}


def runner(tmp_path, stamp="run", **sections):
    body = {"output_dir": str(tmp_path / "results"), "use_prog_bar": False, "optimizer": dict(FAST_OPTIMIZER)}
    body.update(sections)
    config = mfgp.ExperimentConfig.from_dict(body)
    profile = mfgp.Profile(config.output_dir, 1, timestamp=stamp)
    return mfgp.MfgpShm(config, profile)


def read_rows(filename):
    with open(filename, newline='') as handle:
        return list(csv.reader(handle))


class TestSynth:

    def test_writes_dataset_and_truth(self, tmp_path):
        result = runner(tmp_path, task="synth", synth={"n_l1": 7, "n_realizations": 3}).run()
        run_dir = result["run_dir"]
        assert os.path.isfile(os.path.join(run_dir, "config.json"))
        rows = read_rows(os.path.join(run_dir, "synthetic_di.csv"))
        assert rows[0] == mfgp.DI_CSV_HEADER
        assert len(rows) - 1 == 7 + 4 * 3 == result["points"]
        truth = read_rows(os.path.join(run_dir, "truth.csv"))
        assert len(truth) == 202
        assert float(truth[1][1]) == pytest.approx(mfgp.forrester_high(0.0))

    def test_dataset_loads_back(self, tmp_path):
        result = runner(tmp_path, task="synth").run()
        dataset = mfgp.DiDataset.from_csv(result["files"][0], mfgp.DiKind.SYNTHETIC)
        assert len(dataset.subset(fidelity=mfgp.Fidelity.L1)) == 11


class TestFits:

    def test_fit_gp(self, tmp_path):
        result = runner(tmp_path, task="fit-gp").run()
        run_dir = result["run_dir"]
        table = mfgp.MetricsTable.from_csv(os.path.join(run_dir, "metrics.csv"))
        assert [row.model for row in table] == ["gp"]
        assert table.rows[0].n_sim_points == 0
        assert len(read_rows(os.path.join(run_dir, "curve_gp.csv"))) == 202
        with open(os.path.join(run_dir, "model_gp.json")) as handle:
            model = mfgp.TrainedGp.from_json(json.load(handle))
        assert len(model.data) == 4

    def test_fit_mfgp(self, tmp_path):
        result = runner(tmp_path, task="fit-mfgp").run()
        run_dir = result["run_dir"]
        curve = read_rows(os.path.join(run_dir, "curve_mfgp.csv"))
        assert curve[0] == mfgp.CURVE_CSV_HEADER
        for row in curve[1:]:
            state, mean, lower, upper, variance = (float(v) for v in row)
            assert lower <= mean <= upper
            assert variance >= 0.0
        assert result["rmse"] >= 0.0

    def test_fit_mfgp_from_di_csv(self, tmp_path):
        synth = runner(tmp_path, stamp="synth", task="synth", synth={"n_realizations": 4, "noise_l2": 0.05}).run()
        result = runner(tmp_path, task="fit-mfgp",
                        data={"source": "di_csv", "di_csv": synth["files"][0], "di_kind": "synthetic"}).run()
        table = mfgp.MetricsTable.from_csv(os.path.join(result["run_dir"], "metrics.csv"))
        assert table.rows[0].n_exp_sets == 4
        assert table.rows[0].n_sim_points == 11


class TestSignalSource:

    def data(self, root, **extra):
        body = {"source": "signals", "signal_root": root}
        body.update(extra)
        return body

    def test_two_paths_need_a_choice(self, tmp_path, signal_set_factory):
        root = signal_set_factory(tmp_path / "signals", states=(0.0, 1.0, 2.0), realizations=4,
                                  paths=("1-4", "2-5"))
        with pytest.raises(mfgp.ConfigError):
            runner(tmp_path, task="fit-gp", data=self.data(root)).run()

    def test_selected_path_is_fitted(self, tmp_path, signal_set_factory):
        root = signal_set_factory(tmp_path / "signals", states=(0.0, 1.0, 2.0), realizations=4,
                                  paths=("1-4", "2-5"))
        result = runner(tmp_path, task="fit-gp", data=self.data(root, path_ids=["2-5"])).run()
        table = mfgp.MetricsTable.from_csv(os.path.join(result["run_dir"], "metrics.csv"))
        assert table.rows[0].n_exp_sets == 3
        assert result["rmse"] >= 0.0


class TestTask1:

    def test_rows_and_curves(self, tmp_path):
        result = runner(tmp_path, task="task1", task1={"max_added": 3}).run()
        table = result["table"]
        assert [row.model for row in table] == ["gp", "mfgp", "mfgp", "mfgp", "mfgp"]
        assert [row.n_sim_points for row in table.for_model("mfgp")] == [0, 1, 2, 3]
        for k in range(4):
            assert len(read_rows(os.path.join(result["run_dir"], f"curve_mfgp_k{k}.csv"))) == 202

    def test_coverage_order_fills_gaps_first(self, tmp_path):
        result = runner(tmp_path, task="task1", task1={"max_added": 2}).run()
        assert result["added"] == pytest.approx([0.2, 0.8])

    def test_random_order_is_seeded(self, tmp_path):
        body = {"task": "task1", "task1": {"max_added": 4, "order": "random"}}
        first = runner(tmp_path / "a", seed=3, **body).run()
        second = runner(tmp_path / "b", seed=3, **body).run()
        pool = set(np.round(np.linspace(0.0, 1.0, 11), 12).tolist())
        assert first["added"] == second["added"]
        assert len(set(first["added"])) == 4
        assert set(np.round(first["added"], 12).tolist()) <= pool
        assert [row.n_sim_points for row in first["table"].for_model("mfgp")] == [0, 1, 2, 3, 4]

    def test_unknown_order(self, tmp_path):
        with pytest.raises(mfgp.ConfigError):
            runner(tmp_path, task="task1", task1={"order": "greedy"}).run()

    def test_too_many_added(self, tmp_path):
        with pytest.raises(mfgp.DataError):
            runner(tmp_path, task="task1", task1={"max_added": 12}).run()


class TestTask2:

    STATES = [0.0, 0.25, 0.5, 0.75, 1.0]

    def test_outside_in_replacement(self, tmp_path):
        result = runner(tmp_path, task="task2", synth={"l2_states": self.STATES}).run()
        assert result["replaced"] == [0.25, 0.75, 0.5]
        table = result["table"]
        assert len(table) == 8
        assert [row.n_exp_sets for row in table.for_model("gp")] == [5, 4, 3, 2]
        assert [row.n_exp_sets for row in table.for_model("mfgp")] == [5, 4, 3, 2]

    def test_mfgp_keeps_every_l1_point(self, tmp_path):
        table = runner(tmp_path, task="task2", synth={"l2_states": self.STATES}).run()["table"]
        assert [row.n_sim_points for row in table.for_model("mfgp")] == [11, 11, 11, 11]
        assert [row.n_sim_points for row in table.for_model("gp")] == [0, 0, 0, 0]

    def test_replaced_l1_data(self, tmp_path):
        result = runner(tmp_path, task="task2", synth={"l2_states": self.STATES},
                        task2={"l1_data": "replaced"}).run()
        assert [row.n_sim_points for row in result["table"].for_model("mfgp")] == [0, 1, 2, 3]

    def test_random_order_is_seeded(self, tmp_path):
        body = {"task": "task2", "synth": {"l2_states": self.STATES}, "task2": {"order": "random"}}
        first = runner(tmp_path / "a", seed=5, **body).run()["replaced"]
        second = runner(tmp_path / "b", seed=5, **body).run()["replaced"]
        assert first == second
        assert sorted(first) == [0.25, 0.5, 0.75]

    def test_unknown_l1_data(self, tmp_path):
        with pytest.raises(mfgp.ConfigError):
            runner(tmp_path, task="task2", task2={"l1_data": "some"}).run()


class TestTask3:

    def config(self, **task3):
        body = {"acquisitions": ["ucb", "max_variance"], "n_iterations": 3, "random_seeds": 2}
        body.update(task3)
        return body

    def test_histories_and_files(self, tmp_path):
        result = runner(tmp_path, task="task3", synth={"n_l1": 8}, task3=self.config()).run()
        run_dir = result["run_dir"]
        assert sorted(result["histories"]) == ["max_variance", "ucb"]
        assert sorted(result["random"]) == [0, 1]
        for label in ["ucb", "max_variance", "random_seed0", "random_seed1"]:
            rows = mfgp.ActiveLearningHistory.read_csv(os.path.join(run_dir, f"history_{label}.csv"))
            assert [row[0] for row in rows] == [1, 2, 3]
            assert os.path.isfile(os.path.join(run_dir, f"params_{label}.json"))
        trend = read_rows(os.path.join(run_dir, "trend.csv"))
        assert trend[0] == ["iteration", "ucb", "max_variance", "random_seed0", "random_seed1"]
        assert len(trend) == 4
        assert len(result["table"]) == 4

    def test_selected_states_come_from_pool(self, tmp_path):
        result = runner(tmp_path, task="task3", synth={"n_l1": 8}, task3=self.config()).run()
        pool_states = set(np.linspace(0.0, 1.0, 8)[1:-1].tolist())
        for history in list(result["histories"].values()) + list(result["random"].values()):
            picked = [r.selected_state for r in history.iterations]
            assert len(set(picked)) == 3
            assert all(any(abs(p - s) < 1e-12 for s in pool_states) for p in picked)

    def test_l2_loss_uses_truth(self, tmp_path):
        result = runner(tmp_path, task="task3", synth={"n_l1": 6},
                        task3=self.config(acquisitions=["l2_loss"], n_iterations=2, random_seeds=1)).run()
        assert len(result["histories"]["l2_loss"]) == 2

    def test_pool_too_small(self, tmp_path):
        with pytest.raises(mfgp.PoolExhausted):
            runner(tmp_path, task="task3", synth={"n_l1": 4}, task3=self.config()).run()

    def test_thread_workers_do_not_change_results(self, tmp_path):
        serial = runner(tmp_path / "a", task="task3", synth={"n_l1": 8},
                        task3=self.config(acquisitions=["ucb"], random_seeds=3)).run()
        body = {"output_dir": str(tmp_path / "b"), "use_prog_bar": False, "optimizer": dict(FAST_OPTIMIZER),
                "task": "task3", "synth": {"n_l1": 8}, "task3": self.config(acquisitions=["ucb"], random_seeds=3)}
        config = mfgp.ExperimentConfig.from_dict(body)
        threaded = mfgp.MfgpShm(config, mfgp.Profile(config.output_dir, 3, timestamp="run")).run()
        for seed in serial["random"]:
            assert serial["random"][seed].rmse_trend() == threaded["random"][seed].rmse_trend()


class TestExtractDi:

    def test_counts_and_summary(self, tmp_path, signal_root):
        result = runner(tmp_path, task="extract-di", data={"signal_root": signal_root}).run()
        assert len(result["files"]) == 1
        dataset = mfgp.DiDataset.from_csv(result["files"][0], mfgp.DiKind.JANAPATI)
        assert len(dataset) == 4
        values = dataset.values_by_state(mfgp.Fidelity.L2)
        assert values[0.0][0] == pytest.approx(0.0, abs=1e-12)
        assert min(values[2.0]) > max(values[0.0])
        assert os.path.isfile(os.path.join(result["run_dir"], "summary.json"))

    def test_rerun_is_byte_identical(self, tmp_path, signal_root):
        first = runner(tmp_path, stamp="one", task="extract-di", data={"signal_root": signal_root}).run()
        second = runner(tmp_path, stamp="two", task="extract-di", data={"signal_root": signal_root}).run()
        with open(first["files"][0], 'rb') as a, open(second["files"][0], 'rb') as b:
            assert a.read() == b.read()

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(mfgp.ManifestError):
            runner(tmp_path, task="extract-di", data={"signal_root": str(tmp_path / "nowhere")}).run()


class TestReconstruct:

    def test_reconstructed_set_feeds_extract_di(self, tmp_path, signal_root):
        compensation = {"a": -2.0, "b": -2.0, "k_phase": 1e-3, "segment_lengths": [0.3],
                        "strain_per_load": 1e-4, "loads": [0.0, 5.0, 10.0]}
        result = runner(tmp_path, stamp="rec", task="reconstruct", data={"signal_root": signal_root},
                        compensation=compensation).run()
        assert result["records"] == 3
        l1_root = os.path.dirname(result["manifest"])
        signals = mfgp.load_signal_set(l1_root)
        assert signals.state_unit == "kN"
        assert {r.fidelity for r in signals.records} == {mfgp.Fidelity.L1}

        extracted = runner(tmp_path, stamp="ext", task="extract-di", data={"signal_root": l1_root}).run()
        dataset = mfgp.DiDataset.from_csv(extracted["files"][0], mfgp.DiKind.JANAPATI)
        values = dataset.values_by_state(mfgp.Fidelity.L1)
        assert values[0.0] == [0.0]
        assert 0.0 < values[5.0][0] < values[10.0][0]


@pytest.mark.slow
class TestBenchmarks:

    def run(self, tmp_path, name, **body):
        body.update({"output_dir": str(tmp_path / name), "use_prog_bar": False})
        config = mfgp.ExperimentConfig.from_dict(body)
        return mfgp.MfgpShm(config, mfgp.Profile(config.output_dir, 1, timestamp="run")).run()

    def test_task1_mfgp_beats_gp(self, tmp_path):
        table = self.run(tmp_path, "t1", task="task1", synth={"noise_l2": 0.0}, task1={"max_added": 6})["table"]
        gp_rmse = table.for_model("gp")[0].rmse
        assert table.for_model("mfgp")[-1].rmse < gp_rmse

    @pytest.mark.parametrize("seed", range(5))
    def test_task2_mfgp_degrades_slower(self, tmp_path, seed):
        table = self.run(tmp_path, "t2", task="task2", seed=seed,
                         synth={"noise_l2": 0.01, "l2_states": [0.0, 0.2, 0.4, 0.6, 0.8, 1.0]})["table"]
        gp = [row.rmse for row in table.for_model("gp")]
        mf = [row.rmse for row in table.for_model("mfgp")]
        assert all(m <= g for m, g in zip(mf[2:], gp[2:]))

    def test_task3_ucb_more_stable_than_random(self, tmp_path):
        ucb, random = [], []
        for seed in range(10):
            result = self.run(tmp_path, f"t3_{seed}", task="task3", seed=seed, synth={"n_l1": 21},
                              task3={"acquisitions": ["ucb"], "n_iterations": 15, "random_seeds": 1})
            ucb.append(result["histories"]["ucb"].iterations[14].rmse)
            random.append(result["random"][seed].iterations[14].rmse)
        assert np.std(ucb) < np.std(random)

    def test_task3_histories_byte_identical(self, tmp_path):
        body = {"task": "task3", "seed": 7, "synth": {"n_l1": 21},
                "task3": {"acquisitions": ["ucb", "ei"], "n_iterations": 15, "random_seeds": 2}}
        first = self.run(tmp_path, "a", **body)["run_dir"]
        second = self.run(tmp_path, "b", **body)["run_dir"]
        for label in ["ucb", "ei", "random_seed7", "random_seed8"]:
            with open(os.path.join(first, f"history_{label}.csv"), 'rb') as a, \
                    open(os.path.join(second, f"history_{label}.csv"), 'rb') as b:
                assert a.read() == b.read()
