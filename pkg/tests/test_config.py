""" Tests for TOML experiment configuration """

import pytest

import mfgp_shm as mfgp


def write(tmp_path, text):
    filename = tmp_path / "config.toml"
    filename.write_text(text)
    return str(filename)


class TestReadConfigFile:

    def test_sections_and_defaults(self, tmp_path):
        config = mfgp.read_config_file(write(tmp_path, """
task = "task3"
seed = 4

[synth]
n_l1 = 21
noise_l2 = 0.02

[task3]
acquisitions = ["ucb"]
n_iterations = 5
"""))
        assert config.task == "task3"
        assert config.seed == 4
        assert config.synth.n_l1 == 21
        assert config.synth.noise_l2 == 0.02
        assert config.synth.l2_states == [0.0, 0.4, 0.6, 1.0]
        assert config.task3.acquisitions == ["ucb"]
        assert config.task3.random_seeds == 10
        config.validate()

    def test_integer_promoted_to_float(self, tmp_path):
        config = mfgp.read_config_file(write(tmp_path, "[split]\ntrain_fraction = 1\n"))
        assert isinstance(config.split.train_fraction, float)

    def test_missing_file(self, tmp_path):
        with pytest.raises(mfgp.ConfigError):
            mfgp.read_config_file(str(tmp_path / "missing.toml"))

    def test_bad_toml(self, tmp_path):
        with pytest.raises(mfgp.ConfigError):
            mfgp.read_config_file(write(tmp_path, "task = \n"))

    @pytest.mark.parametrize("text, key", [
        ("colour = 1\n", "colour"),
        ("[synth]\nn_l3 = 2\n", "synth.n_l3"),
        ("[plotting]\ndpi = 300\n", "plotting")
    ])
    def test_unknown_key_named(self, tmp_path, text, key):
        with pytest.raises(mfgp.ConfigError, match=key):
            mfgp.read_config_file(write(tmp_path, text))

    @pytest.mark.parametrize("text", [
        "seed = \"zero\"\n",
        "[synth]\nn_l1 = 2.5\n",
        "[variance_floor]\nenabled = 1\n",
        "[task3]\nacquisitions = \"ucb\"\n",
        "synth = 3\n"
    ])
    def test_type_errors(self, tmp_path, text):
        with pytest.raises(mfgp.ConfigError):
            mfgp.read_config_file(write(tmp_path, text))


class TestValidate:

    def config(self, **sections):
        return mfgp.ExperimentConfig.from_dict(sections)

    def test_unknown_task(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="task4").validate()

    def test_fraction_range(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="fit-gp", split={"train_fraction": 1.0}).validate()

    def test_di_csv_needs_path(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="fit-mfgp", data={"source": "di_csv"}).validate()

    def test_task3_rejects_random_and_unknown(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="task3", task3={"acquisitions": ["random"]}).validate()
        with pytest.raises(mfgp.ConfigError):
            self.config(task="task3", task3={"acquisitions": ["pi"]}).validate()

    def test_task2_order(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="task2", task2={"order": "sideways"}).validate()
        self.config(task="task2", task2={"order": "random"}).validate()

    def test_task2_l1_data(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="task2", task2={"l1_data": "half"}).validate()
        self.config(task="task2", task2={"l1_data": "replaced"}).validate()

    def test_task1_order(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="task1", task1={"order": "greedy"}).validate()
        self.config(task="task1", task1={"order": "random"}).validate()

    def test_signal_source_takes_one_path(self):
        data = {"source": "signals", "signal_root": "signals", "path_ids": ["1-4", "2-5"]}
        with pytest.raises(mfgp.ConfigError):
            self.config(task="fit-gp", data=data).validate()
        self.config(task="extract-di", data=data).validate()

    def test_extract_di_needs_signal_kind(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="extract-di", data={"signal_root": "signals", "di_kind": "synthetic"}).validate()
        self.config(task="extract-di", data={"signal_root": "signals", "di_kind": "rmsd"}).validate()

    def test_reconstruct_requirements(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="reconstruct", data={"signal_root": "signals"}).validate()
        self.config(task="reconstruct", data={"signal_root": "signals"},
                    compensation={"segment_lengths": [0.3], "loads": [0.0, 5.0], "a": 1e-6}).validate()

    def test_thread_workers_range(self):
        with pytest.raises(mfgp.ConfigError):
            self.config(task="synth", num_thread_workers=0).validate()

    def test_defaults_valid_for_every_model_task(self):
        for task in ["fit-gp", "fit-mfgp", "task1", "task2", "task3", "synth"]:
            self.config(task=task).validate()


class TestOverrides:

    def test_with_overrides(self):
        config = mfgp.ExperimentConfig(task="synth", seed=1)
        changed = config.with_overrides(task="task1", seed=None, output_dir="out")
        assert (changed.task, changed.seed, changed.output_dir) == ("task1", 1, "out")
        assert config.task == "synth"

    def test_to_dict_round_trip(self):
        config = mfgp.ExperimentConfig.from_dict({"task": "task2", "task2": {"order": "inside-out"}})
        assert mfgp.ExperimentConfig.from_dict(config.to_dict()) == config
