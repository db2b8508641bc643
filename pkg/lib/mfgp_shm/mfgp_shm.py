""" *******************************************************************************************************************
|
|  Name        :  mfgp_shm.py
|  Module      :  mfgp_shm
|  Description :  Experiment runner: one method per command-line verb.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import concurrent.futures
import csv
import datetime
import json
import logging
import os
from dataclasses import dataclass

import numpy as np
import progressbar

from .__version__ import __version__
from ._exceptions import *
from ._params import *
from ._profile import Profile
from ._config import ExperimentConfig
from ._signal import SignalRecord, SignalSet, load_signal_set, write_signal_set, extract_first_packet
from ._damage_index import DiDataset, build_di_dataset
from ._load_compensation import CompensationModel, StrainState, reconstruct
from ._gp_core import GpTrainingData, gp_fit, gp_predict
from ._mfgp import MfTrainingData, mf_fit, mf_predict, variance_floor
from ._optimizer import OptimizerConfig
from ._active_learning import *
from ._evaluation import *
from ._synth import SynthConfig, generate


CURVE_CSV_HEADER = ["state", "mean", "lower", "upper", "variance"]


@dataclass
class ModelInputs:

    """ Training data, held-out L2 test set and the variance floor for one run """

    train: MfTrainingData
    test_x: np.ndarray
    test_y: np.ndarray
    floor: float
    truth: object = None
    all_l2: tuple = None


def write_curve(filename, probes, prediction):

    """
    Write mean and 95% band (mean +/- 1.96 sigma) at each probe.

    :param filename:    Path to write to
    :type  filename:    str

    :param probes:      Probe states
    :type  probes:      np.ndarray

    :param prediction:  Prediction at the probes
    :type  prediction:  Prediction
    """

    lower, upper = prediction.interval()
    with open(filename, 'w', newline='') as csvfile:
        writer = csv.writer(csvfile, lineterminator='\n')
        writer.writerow(CURVE_CSV_HEADER)
        for row in zip(np.asarray(probes).ravel(), prediction.mean, lower, upper, prediction.variance):
            writer.writerow([repr(float(v)) for v in row])


def write_json(filename, data):
    with open(filename, 'w') as outfile:
        json.dump(data, outfile, indent=2, sort_keys=True)


class MfgpShm:

    """ MfgpShm class """

    def __init__(self, config, profile=None):

        """
        Initialize MfgpShm

        :param config:      Experiment configuration
        :type  config:      ExperimentConfig

        :param profile:     Run-time settings; built from the config when omitted
        :type  profile:     Profile

        :raises ConfigError:
        """

        self.__profile_name = "MfgpShm_v{}".format(__version__)
        self.config = config

        if profile is None:
            try:
                profile = Profile(config.output_dir, config.num_thread_workers, use_prog_bar=config.use_prog_bar)
            except ValueError as ex:
                raise ConfigError(f"Invalid run settings: {ex}")
        self.profile = profile

    def run(self):

        """
        Validate the configuration and run its task.

        :return:    Task summary
        :rtype:     dict

        :raises ConfigError:
        """

        self.config.validate()

        commands = {
            TaskName.EXTRACT_DI: self.extract_di,
            TaskName.FIT_GP: self.fit_gp,
            TaskName.FIT_MFGP: self.fit_mfgp,
            TaskName.TASK1: self.task1,
            TaskName.TASK2: self.task2,
            TaskName.TASK3: self.task3,
            TaskName.SYNTH: self.synth,
            TaskName.RECONSTRUCT: self.reconstruct
        }

        logging.info("%s running task %s (seed %d)", self.__profile_name, self.config.task, self.config.seed)

        return commands[self.config.task]()

# ---------------------------------------------------------------------------------------------------------------------

    def _run_directory(self, task_name):

        """ Create results/<task>/<timestamp>/ and copy the configuration into it """

        stamp = datetime.datetime.now().strftime("%Y%m%d-%H%M%S")
        run_dir = self.profile.run_directory(task_name, stamp)
        write_json(os.path.join(run_dir, "config.json"), self.config.to_dict())

        return run_dir

    def _optimizer_config(self):
        opt = self.config.optimizer
        return OptimizerConfig(restarts=opt.restarts, max_evals=opt.max_evals, tolerance=opt.tolerance,
                               seed=self.config.seed, workers=opt.workers)

    def _floor(self, l2_groups):
        if not self.config.variance_floor.enabled:
            return 0.0
        return variance_floor(l2_groups, self.config.variance_floor.multiplier)

    def _synth_config(self):
        synth = self.config.synth
        return SynthConfig(family=synth.family, noise_l2=synth.noise_l2, n_l1=synth.n_l1, n_l2=synth.n_l2,
                           seed=self.config.seed, domain=tuple(synth.domain), l2_states=tuple(synth.l2_states),
                           n_realizations=synth.n_realizations, rho_star=synth.rho_star, offset=synth.offset)

    def _load_dataset(self):

        """ DI dataset from a CSV file or extracted from a signal set; signal sets must resolve to one path """

        data = self.config.data
        if data.source == DataSource.DI_CSV:
            return DiDataset.from_csv(data.di_csv, data.di_kind)

        signals = load_signal_set(data.signal_root)
        path_ids = data.path_ids or signals.path_ids()
        if len(path_ids) != 1:
            raise ConfigError(f"Model tasks fit one path at a time; data.path_ids resolves to {list(path_ids)}. "
                              f"Set data.path_ids to a single path.")
        window = tuple(data.packet_window) if data.packet_window else None

        return build_di_dataset(signals, path_ids[0], data.di_kind, packet_window=window, taper=data.taper)

    def load_inputs(self):

        """
        Training and test data for the model tasks.  Synthetic runs test against the noiseless curve on
        n_test uniform probes; dataset runs split the L2 realizations per state.

        :return:    Model inputs
        :rtype:     ModelInputs

        :raises DataError:
        """

        data = self.config.data
        if data.source == DataSource.SYNTHETIC:
            synth = generate(self._synth_config())
            test_x, test_y = synth.test_set(data.n_test)
            return ModelInputs(train=synth.data, test_x=test_x, test_y=test_y,
                               floor=self._floor(synth.dataset.values_by_state(Fidelity.L2)),
                               truth=synth.truth, all_l2=(synth.data.x_l2.ravel(), synth.data.y_l2))

        dataset = self._load_dataset()
        split = SplitSpec(self.config.split.train_fraction, self.config.seed, frozenset(self.config.split.pinned_states))
        train, test = split_realizations(dataset, split)

        test_x, test_y = test.arrays(Fidelity.L2)
        if test_y.size == 0:
            raise DataError("The split left no L2 test realizations.")

        x_l1, y_l1 = train.arrays(Fidelity.L1)
        x_l2, y_l2 = train.arrays(Fidelity.L2)
        if y_l2.size == 0:
            raise DataError("The split left no L2 training realizations.")

        return ModelInputs(train=MfTrainingData(x_l1, y_l1, x_l2, y_l2), test_x=test_x, test_y=test_y,
                           floor=self._floor(train.values_by_state(Fidelity.L2)),
                           all_l2=dataset.arrays(Fidelity.L2))

    def _score_gp(self, data, inputs, probes=None):
        model, fit_seconds = timed(gp_fit, data, optimizer_config=self._optimizer_config(), noise_floor=inputs.floor)
        prediction, predict_seconds = timed(gp_predict, model, inputs.test_x)
        error, r2 = score_predictions(prediction, inputs.test_y)
        curve = gp_predict(model, probes) if probes is not None else None
        return model, (error, r2, fit_seconds, predict_seconds), curve

    def _score_mf(self, data, inputs, probes=None):
        model, fit_seconds = timed(mf_fit, data, floor=inputs.floor, optimizer_config=self._optimizer_config())
        prediction, predict_seconds = timed(mf_predict, model, inputs.test_x)
        error, r2 = score_predictions(prediction, inputs.test_y)
        curve = mf_predict(model, probes) if probes is not None else None
        return model, (error, r2, fit_seconds, predict_seconds), curve

# ---------------------------------------------------------------------------------------------------------------------

    def extract_di(self):

        """
        One DI CSV per path plus a summary JSON of per-state means and variances.

        :return:    Summary
        :rtype:     dict

        :raises DataError:
        """

        data = self.config.data
        signals = load_signal_set(data.signal_root)
        path_ids = data.path_ids or signals.path_ids()
        window = tuple(data.packet_window) if data.packet_window else None
        run_dir = self._run_directory(TaskName.EXTRACT_DI)

        summary = {}
        files = []

        prog_bar = None
        if self.profile.use_prog_bar:
            prog_bar = progressbar.ProgressBar(max_value=len(path_ids))

        for counter, path_id in enumerate(path_ids, start=1):
            try:
                dataset = build_di_dataset(signals, path_id, data.di_kind, packet_window=window, taper=data.taper)
            except DataError as ex:
                raise DataError(f"Path {path_id}: {ex}")
            filename = os.path.join(run_dir, f"di_{path_id}.csv")
            dataset.to_csv(filename)
            files.append(filename)
            summary[path_id] = dataset.state_summary()
            if self.profile.use_prog_bar:
                prog_bar.update(counter)

        if self.profile.use_prog_bar:
            prog_bar.finish()

        write_json(os.path.join(run_dir, "summary.json"), summary)

        return {"run_dir": run_dir, "files": files}

    def fit_gp(self):

        """ Standard GP on the L2 training data """

        inputs = self.load_inputs()
        run_dir = self._run_directory(TaskName.FIT_GP)
        train = inputs.train
        probes = probe_grid(train.all_states().ravel())

        model, scores, curve = self._score_gp(GpTrainingData(train.x_l2, train.y_l2), inputs, probes)

        table = MetricsTable([MetricsRow(ModelName.GP, len(np.unique(train.x_l2)), 0, *scores)])
        table.to_csv(os.path.join(run_dir, "metrics.csv"))
        write_curve(os.path.join(run_dir, "curve_gp.csv"), probes, curve)
        write_json(os.path.join(run_dir, "model_gp.json"), model.to_json())

        return {"run_dir": run_dir, "rmse": scores[0], "r2": scores[1]}

    def fit_mfgp(self):

        """ MF-GP on all L1 and L2 training data """

        inputs = self.load_inputs()
        run_dir = self._run_directory(TaskName.FIT_MFGP)
        train = inputs.train
        probes = probe_grid(train.all_states().ravel())

        model, scores, curve = self._score_mf(train, inputs, probes)

        table = MetricsTable([MetricsRow(ModelName.MFGP, len(np.unique(train.x_l2)), train.n_l1, *scores)])
        table.to_csv(os.path.join(run_dir, "metrics.csv"))
        write_curve(os.path.join(run_dir, "curve_mfgp.csv"), probes, curve)
        write_json(os.path.join(run_dir, "model_mfgp.json"), model.to_json())

        return {"run_dir": run_dir, "rmse": scores[0], "r2": scores[1]}

    def _l1_order(self, train):

        """ Indices of the L1 pool in the order task1 adds them """

        if self.config.task1.order == L1Order.RANDOM:
            return [int(i) for i in np.random.default_rng(self.config.seed).permutation(train.n_l1)]

        return coverage_order(train.x_l1.ravel(), np.unique(train.x_l2))

    def task1(self):

        """
        Fixed L2 data, growing L1 data: the GP baseline plus one MF-GP per number of added L1 points.
        L1 points are taken in farthest-point order from the L2 states, or in a seeded random order
        (batch learning with random selection).

        :return:    Summary with the metrics table and the L1 states in the order they were added
        :rtype:     dict

        :raises DataError:
        """

        inputs = self.load_inputs()
        train = inputs.train
        max_added = self.config.task1.max_added
        if max_added > train.n_l1:
            raise DataError(f"task1 needs {max_added} L1 points but only {train.n_l1} are available.")

        run_dir = self._run_directory(TaskName.TASK1)
        probes = probe_grid(train.all_states().ravel())
        n_exp_sets = len(np.unique(train.x_l2))
        order = self._l1_order(train)

        table = MetricsTable()
        _, scores, curve = self._score_gp(GpTrainingData(train.x_l2, train.y_l2), inputs, probes)
        table.append(MetricsRow(ModelName.GP, n_exp_sets, 0, *scores))
        write_curve(os.path.join(run_dir, "curve_gp.csv"), probes, curve)

        prog_bar = None
        if self.profile.use_prog_bar:
            prog_bar = progressbar.ProgressBar(max_value=max_added + 1)

        for k in range(max_added + 1):
            chosen = order[:k]
            data = MfTrainingData(train.x_l1[chosen], train.y_l1[chosen], train.x_l2, train.y_l2)
            _, scores, curve = self._score_mf(data, inputs, probes)
            table.append(MetricsRow(ModelName.MFGP, n_exp_sets, k, *scores))
            write_curve(os.path.join(run_dir, f"curve_mfgp_k{k}.csv"), probes, curve)
            logging.info("task1: %d L1 points added (%s order), MF-GP rmse %g", k, self.config.task1.order, scores[0])
            if self.profile.use_prog_bar:
                prog_bar.update(k + 1)

        if self.profile.use_prog_bar:
            prog_bar.finish()

        table.to_csv(os.path.join(run_dir, "metrics.csv"))

        return {"run_dir": run_dir, "table": table, "added": [float(train.x_l1[i, 0]) for i in order[:max_added]]}

    def _replacement_l1(self, train, replaced):

        """ L1 indices the MF-GP sees after each number of replacements, index 0 being none replaced """

        if self.config.task2.l1_data == L1Coverage.FULL:
            return [list(range(train.n_l1))] * (len(replaced) + 1)

        l1_states = train.x_l1.ravel()
        matches = []
        for state in replaced:
            free = [i for i in range(l1_states.size) if i not in matches]
            if not free:
                raise DataError(f"task2 ran out of L1 points while replacing state {state:g}.")
            matches.append(min(free, key=lambda i: (abs(l1_states[i] - state), l1_states[i])))

        return [matches[:step] for step in range(len(replaced) + 1)]

    def task2(self):

        """
        Constant number of states: L2 states are removed one at a time, boundary and pinned states excepted,
        and simulated data covers the gaps.  The GP sees the remaining L2 data; the MF-GP sees the same L2
        data plus every L1 point (l1_data = full) or the closest L1 point to each replaced state
        (l1_data = replaced).  Both models are refit after every replacement.

        :return:    Summary with the metrics table
        :rtype:     dict

        :raises DataError:
        """

        inputs = self.load_inputs()
        train = inputs.train
        if train.n_l1 == 0:
            raise DataError("task2 needs L1 data to replace L2 states with.")

        t2 = self.config.task2
        states = sorted({float(s) for s in train.x_l2.ravel()})
        pinned = {states[0], states[-1]} | {float(s) for s in self.config.split.pinned_states}
        replaced = replacement_order(states, pinned, t2.order, seed=self.config.seed)
        l1_sets = self._replacement_l1(train, replaced)

        run_dir = self._run_directory(TaskName.TASK2)
        probes = probe_grid(train.all_states().ravel())
        table = MetricsTable()

        prog_bar = None
        if self.profile.use_prog_bar:
            prog_bar = progressbar.ProgressBar(max_value=len(replaced) + 1)

        for step, chosen in enumerate(l1_sets):
            removed = set(replaced[:step])
            keep = np.array([float(s) not in removed for s in train.x_l2.ravel()])
            n_exp_sets = len(states) - step

            gp_data = GpTrainingData(train.x_l2[keep], train.y_l2[keep])
            _, gp_scores, gp_curve = self._score_gp(gp_data, inputs, probes)
            mf_data = MfTrainingData(train.x_l1[chosen], train.y_l1[chosen], train.x_l2[keep], train.y_l2[keep])
            _, mf_scores, mf_curve = self._score_mf(mf_data, inputs, probes)

            table.append(MetricsRow(ModelName.GP, n_exp_sets, 0, *gp_scores))
            table.append(MetricsRow(ModelName.MFGP, n_exp_sets, len(chosen), *mf_scores))
            write_curve(os.path.join(run_dir, f"curve_gp_r{step}.csv"), probes, gp_curve)
            write_curve(os.path.join(run_dir, f"curve_mfgp_r{step}.csv"), probes, mf_curve)
            logging.info("task2: %d replacements, GP rmse %g, MF-GP rmse %g", step, gp_scores[0], mf_scores[0])
            if self.profile.use_prog_bar:
                prog_bar.update(step + 1)

        if self.profile.use_prog_bar:
            prog_bar.finish()

        table.to_csv(os.path.join(run_dir, "metrics.csv"))

        return {"run_dir": run_dir, "table": table, "replaced": replaced}

    def _task3_setup(self, inputs):

        """ Initial training data (L2 plus L1 at the initial states) and the remaining pool """

        train = inputs.train
        if train.n_l1 == 0:
            raise DataError("task3 needs L1 data for the candidate pool.")

        l1_states = train.x_l1.ravel()
        initial_states = self.config.task3.initial_states or [float(np.min(l1_states)), float(np.max(l1_states))]

        taken = []
        for state in initial_states:
            free = [i for i in range(l1_states.size) if i not in taken]
            if not free:
                break
            taken.append(min(free, key=lambda i: (abs(l1_states[i] - state), l1_states[i])))

        rest = [i for i in range(l1_states.size) if i not in taken]
        initial = MfTrainingData(train.x_l1[taken], train.y_l1[taken], train.x_l2, train.y_l2)

        return initial, CandidatePool(l1_states[rest], train.y_l1[rest])

    def _base_curve(self, inputs):
        if inputs.truth is not None:
            return inputs.truth
        x_all, y_all = inputs.all_l2
        reference = gp_fit(GpTrainingData(x_all, y_all), optimizer_config=self._optimizer_config(),
                           noise_floor=inputs.floor)
        return lambda probes: gp_predict(reference, probes).mean

    def run_histories(self, inputs, kinds, random_seeds):

        """
        Active-learning histories for each scored acquisition kind and for random selection under each
        seed.  Random runs fan out over the profile's thread workers; results are ordered by seed.

        :return:    (kind -> history, seed -> random history)
        :rtype:     tuple
        """

        t3 = self.config.task3
        initial, pool = self._task3_setup(inputs)
        optimizer_config = self._optimizer_config()

        histories = {}
        for kind in kinds:
            base = self._base_curve(inputs) if kind == AcquisitionKind.L2_LOSS else None
            spec = AcquisitionSpec(kind, lam=t3.lam, xi=t3.xi, base_curve=base, seed=self.config.seed)
            histories[kind] = run_active_loop(initial, pool, spec, t3.n_iterations, inputs.test_x, inputs.test_y,
                                              floor=inputs.floor, optimizer_config=optimizer_config)

        def run_random(seed):
            spec = AcquisitionSpec(AcquisitionKind.RANDOM, seed=seed)
            return run_active_loop(initial, pool, spec, t3.n_iterations, inputs.test_x, inputs.test_y,
                                   floor=inputs.floor, optimizer_config=optimizer_config)

        random_histories = {}
        prog_bar = None
        if self.profile.use_prog_bar:
            prog_bar = progressbar.ProgressBar(max_value=len(random_seeds))

        with concurrent.futures.ThreadPoolExecutor(max_workers=self.profile.num_thread_workers) as executor:
            future_to_seed = {executor.submit(run_random, seed): seed for seed in random_seeds}
            for counter, future in enumerate(concurrent.futures.as_completed(future_to_seed), start=1):
                random_histories[future_to_seed[future]] = future.result()
                if self.profile.use_prog_bar:
                    prog_bar.update(counter)

        if self.profile.use_prog_bar:
            prog_bar.finish()

        return histories, {seed: random_histories[seed] for seed in sorted(random_histories)}

    def task3(self):

        """
        Active learning with each configured acquisition and a seeded random-selection baseline.  Emits
        one history CSV and parameter JSON per run, an RMSE trend CSV and a summary table.

        :return:    Summary
        :rtype:     dict

        :raises PoolExhausted:
        """

        t3 = self.config.task3
        inputs = self.load_inputs()
        seeds = [self.config.seed + s for s in range(t3.random_seeds)]
        histories, random_histories = self.run_histories(inputs, t3.acquisitions, seeds)
        run_dir = self._run_directory(TaskName.TASK3)

        labelled = [(kind, h) for kind, h in histories.items()]
        labelled += [(f"{AcquisitionKind.RANDOM}_seed{seed}", h) for seed, h in random_histories.items()]

        summary = MetricsTable()
        n_exp_sets = len(np.unique(inputs.train.x_l2))
        n_initial = self._task3_setup(inputs)[0].n_l1
        for label, history in labelled:
            history.to_csv(os.path.join(run_dir, f"history_{label}.csv"))
            history.write_params_json(os.path.join(run_dir, f"params_{label}.json"))
            best = history.best()
            if best is not None:
                summary.append(MetricsRow(label, n_exp_sets, n_initial + best.iteration, best.rmse, best.r2,
                                          sum(r.fit_seconds for r in history.iterations),
                                          sum(r.predict_seconds for r in history.iterations)))

        with open(os.path.join(run_dir, "trend.csv"), 'w', newline='') as csvfile:
            writer = csv.writer(csvfile, lineterminator='\n')
            writer.writerow(["iteration"] + [label for label, _ in labelled])
            for i in range(t3.n_iterations):
                writer.writerow([i + 1] + [repr(h.iterations[i].rmse) if i < len(h) else "" for _, h in labelled])

        summary.to_csv(os.path.join(run_dir, "summary.csv"))

        return {"run_dir": run_dir, "histories": histories, "random": random_histories, "table": summary}

    def synth(self):

        """ Synthetic DI dataset CSV plus the noiseless curves on the probe grid """

        synth = generate(self._synth_config())
        run_dir = self._run_directory(TaskName.SYNTH)

        filename = os.path.join(run_dir, "synthetic_di.csv")
        synth.to_csv(filename)

        probes = np.linspace(synth.config.domain[0], synth.config.domain[1], PROBE_COUNT)
        with open(os.path.join(run_dir, "truth.csv"), 'w', newline='') as csvfile:
            writer = csv.writer(csvfile, lineterminator='\n')
            writer.writerow(["state", "high", "low"])
            for row in zip(probes, synth.truth(probes), synth.low(probes)):
                writer.writerow([repr(float(v)) for v in row])

        return {"run_dir": run_dir, "files": [filename], "points": len(synth.dataset)}

    def _compensation_model(self):
        comp = self.config.compensation
        if comp.model_json:
            return CompensationModel.load(comp.model_json)
        return CompensationModel(comp.a, comp.b, comp.k_phase, tuple(comp.segment_lengths))

    def reconstruct(self):

        """
        L1 signal set from the baseline records: each path's baseline packet is reconstructed at every
        configured load.  The output directory is a loadable signal set (state unit kN, baseline load 0).

        :return:    Summary
        :rtype:     dict

        :raises DataError:
        """

        comp = self.config.compensation
        data = self.config.data
        model = self._compensation_model()
        signals = load_signal_set(data.signal_root)
        path_ids = data.path_ids or signals.path_ids()
        baseline_state = signals.baseline_state

        records = []
        for path_id in path_ids:
            baselines = [r for r in signals.records_for_path(path_id)
                         if float(r.state) == baseline_state and r.fidelity == Fidelity.L2]
            if not baselines:
                raise DataError(f"No baseline record at state {baseline_state} for path {path_id}.")
            baseline = min(baselines, key=lambda r: r.realization)

            packet = baseline.signal
            if data.packet_window:
                packet = extract_first_packet(packet, data.packet_window[0], data.packet_window[1], taper=data.taper)

            records.append(SignalRecord(packet, path_id, 0.0, 0, Fidelity.L1))
            for load in sorted({float(v) for v in comp.loads} - {0.0}):
                strain = StrainState.uniform(load, comp.strain_per_load, len(model.segment_lengths))
                records.append(SignalRecord(reconstruct(model, packet, strain), path_id, load, 0, Fidelity.L1))

        run_dir = self._run_directory(TaskName.RECONSTRUCT)
        manifest = write_signal_set(os.path.join(run_dir, "signals"),
                                    SignalSet(records, {"baseline_state": 0.0, "state_unit": "kN"}))
        write_json(os.path.join(run_dir, "compensation_model.json"), model.to_json())

        logging.info("Reconstructed %d L1 packets for %d paths", len(records), len(path_ids))

        return {"run_dir": run_dir, "manifest": manifest, "records": len(records)}


__all__ = [
    'MfgpShm',
    'ModelInputs',
    'write_curve',
    'CURVE_CSV_HEADER'
]


"""
   Copyright 2026 mfgp_shm contributors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at:

   http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
"""
