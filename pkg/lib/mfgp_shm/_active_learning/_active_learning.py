""" *******************************************************************************************************************
|
|  Name        :  _active_learning.py
|  Module      :  mfgp_shm
|  Description :  Acquisition functions and the sequential L1 point addition loop.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import csv
import json
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from .._exceptions import *
from .._params import *
from .._mfgp import TrainedMfGp, mf_fit, mf_predict
from .._evaluation import score_predictions, timed


PROBE_COUNT = 201
DEFAULT_LAMBDA = 2.0
DEFAULT_XI = 0.01
HISTORY_CSV_HEADER = ["iteration", "selected_state", "rmse", "r2"]


@dataclass(frozen=True)
class AcquisitionSpec:

    """ Acquisition kind and its parameters """

    kind: str
    lam: float = DEFAULT_LAMBDA
    xi: float = DEFAULT_XI
    base_curve: object = None
    seed: int = 0

    def __post_init__(self):
        if self.kind not in AcquisitionKind.ALL:
            raise InvalidArgument(f"Acquisition kind provided ({self.kind}) is not supported.")
        if self.lam < 0 or self.xi < 0:
            raise InvalidArgument("Acquisition lam and xi must be non-negative.")
        if (self.base_curve is not None) != (self.kind == AcquisitionKind.L2_LOSS):
            raise InvalidArgument("A base curve is required for l2_loss and only for l2_loss.")


@dataclass
class CandidatePool:

    """ Available L1 states, their DI values and the indices already moved into training """

    states: np.ndarray
    values: np.ndarray
    used: set = field(default_factory=set)

    def __post_init__(self):
        self.states = np.asarray(self.states, dtype=float).ravel()
        self.values = np.asarray(self.values, dtype=float).ravel()
        self.used = set(self.used)
        if self.states.size != self.values.size:
            raise InvalidArgument(f"Pool states and values lengths differ ({self.states.size} vs {self.values.size}).")
        if any(not 0 <= i < self.states.size for i in self.used):
            raise InvalidArgument("Pool used indices fall outside the pool.")

    def __len__(self):
        return self.states.size

    def unused_indices(self):
        return [i for i in range(self.states.size) if i not in self.used]

    def mark_used(self, index):
        if index in self.used:
            raise InvalidArgument(f"Pool index {index} is already used.")
        self.used.add(index)

    def copy(self):
        return CandidatePool(self.states.copy(), self.values.copy(), set(self.used))


@dataclass(frozen=True)
class IterationRecord:

    """ One completed loop iteration """

    iteration: int
    selected_state: float
    rmse: float
    r2: float
    params: object
    target_state: float = math.nan
    pool_index: int = -1
    fit_seconds: float = 0.0
    predict_seconds: float = 0.0


class ActiveLearningHistory:

    """ ActiveLearningHistory class """

    def __init__(self, kind, seed=0):
        self.kind = kind
        self.seed = seed
        self.iterations = []
        self.baseline = None
        self.model = None
        self.aborted = None

    def __len__(self):
        return len(self.iterations)

    def rmse_trend(self):
        return [record.rmse for record in self.iterations]

    def best(self):
        if not self.iterations:
            return None
        return min(self.iterations, key=lambda record: (record.rmse, record.iteration))

    def to_csv(self, filename):

        """
        Write iteration,selected_state,rmse,r2 rows.

        :param filename:    Path to write to
        :type  filename:    str
        """

        with open(filename, 'w', newline='') as csvfile:
            writer = csv.writer(csvfile, lineterminator='\n')
            writer.writerow(HISTORY_CSV_HEADER)
            for record in self.iterations:
                writer.writerow([record.iteration, repr(float(record.selected_state)), repr(float(record.rmse)),
                                 repr(float(record.r2))])

    def params_json(self):
        return {
            "kind": self.kind,
            "seed": self.seed,
            "aborted": self.aborted,
            "baseline": self.baseline,
            "iterations": [{"iteration": r.iteration, "target_state": r.target_state, "params": r.params.to_json()}
                           for r in self.iterations]
        }

    def write_params_json(self, filename):
        with open(filename, 'w') as outfile:
            json.dump(self.params_json(), outfile, indent=2)

    @staticmethod
    def read_csv(filename):

        """
        Rows of a history CSV as (iteration, selected_state, rmse, r2) tuples.

        :raises DataError:
        """

        try:
            with open(filename, 'r', newline='') as data:
                reader = csv.reader(data)
                if next(reader, None) != HISTORY_CSV_HEADER:
                    raise DataError(f"{filename}: expected header {','.join(HISTORY_CSV_HEADER)}.")
                return [(int(row[0]), float(row[1]), float(row[2]), float(row[3])) for row in reader]
        except FileNotFoundError:
            raise DataError(f"History file not found: {filename}")
        except (IndexError, ValueError) as ex:
            raise DataError(f"{filename}: malformed row: {ex}")


def expected_improvement(mean, std, incumbent, xi=DEFAULT_XI):

    """
    (mu - f+ - xi) Phi(Z) + sigma phi(Z) with Z = (mu - f+ - xi) / sigma where sigma > 0, else 0.
    """

    mean = np.asarray(mean, dtype=float)
    std = np.asarray(std, dtype=float)
    scores = np.zeros(np.broadcast(mean, std).shape)

    improvement = np.broadcast_to(mean - incumbent - xi, scores.shape)
    sigma = np.broadcast_to(std, scores.shape)
    positive = sigma > 0

    z = improvement[positive] / sigma[positive]
    scores[positive] = improvement[positive] * stats.norm.cdf(z) + sigma[positive] * stats.norm.pdf(z)

    return np.maximum(scores, 0.0)


def upper_confidence_bound(mean, std, lam=DEFAULT_LAMBDA):
    return np.asarray(mean, dtype=float) + lam * np.asarray(std, dtype=float)


def acq_l2(model, probes, base_curve):

    """
    Pointwise squared deviation (base(x) - mu(x))^2 between a reference curve and the predictive mean.

    :param model:       Trained model
    :type  model:       TrainedMfGp

    :param probes:      Probe states
    :type  probes:      np.ndarray

    :param base_curve:  Reference curve, callable on the probes
    :type  base_curve:  function

    :return:    Scores
    :rtype:     np.ndarray
    """

    mean = mf_predict(model, probes).mean

    return (np.asarray(base_curve(probes), dtype=float).ravel() - mean) ** 2


def acq_max_variance(model, probes):
    return mf_predict(model, probes).variance


def acq_ucb(model, probes, lam=DEFAULT_LAMBDA):

    """ mu(x) + lam * sigma(x) """

    if lam < 0:
        raise InvalidArgument(f"UCB lam must be non-negative, got {lam}.")
    prediction = mf_predict(model, probes)

    return upper_confidence_bound(prediction.mean, prediction.std, lam)


def acq_ei(model, probes, xi=DEFAULT_XI, incumbent=None):

    """
    Expected improvement over the incumbent (default: largest predictive mean at the L2 training inputs).

    :param model:       Trained model
    :type  model:       TrainedMfGp

    :param probes:      Probe states
    :type  probes:      np.ndarray

    :param xi:          Improvement margin
    :type  xi:          float

    :param incumbent:   f+
    :type  incumbent:   float

    :return:    Non-negative scores
    :rtype:     np.ndarray
    """

    if xi < 0:
        raise InvalidArgument(f"EI xi must be non-negative, got {xi}.")
    if incumbent is None:
        incumbent = default_incumbent(model)
    prediction = mf_predict(model, probes)

    return expected_improvement(prediction.mean, prediction.std, incumbent, xi)


def default_incumbent(model):
    return float(np.max(mf_predict(model, model.data.x_l2).mean))


def score_probes(model, probes, spec):

    """
    Acquisition scores of `spec.kind` over the probes.  Random selection has no scores.
    """

    if spec.kind == AcquisitionKind.L2_LOSS:
        return acq_l2(model, probes, spec.base_curve)
    if spec.kind == AcquisitionKind.MAX_VARIANCE:
        return acq_max_variance(model, probes)
    if spec.kind == AcquisitionKind.UCB:
        return acq_ucb(model, probes, spec.lam)
    if spec.kind == AcquisitionKind.EI:
        return acq_ei(model, probes, spec.xi)

    return None


def locate_target(scores, probes):

    """ Probe state at the first maximum of the scores """

    scores = np.asarray(scores, dtype=float)
    if scores.size == 0 or np.all(np.isnan(scores)):
        raise InvalidArgument("Cannot locate a target without finite scores.")

    return float(np.asarray(probes, dtype=float).ravel()[int(np.nanargmax(scores))])


def select_next(scores, pool, target_state):

    """
    Unused pool index whose state is closest to the target; equal distances go to the smaller state.

    :param scores:          Acquisition scores the target was located from
    :type  scores:          np.ndarray

    :param pool:            Candidate pool
    :type  pool:            CandidatePool

    :param target_state:    Target location
    :type  target_state:    float

    :return:    Pool index
    :rtype:     int

    :raises PoolExhausted:
    :raises InvalidArgument:
    """

    scores = np.asarray(scores, dtype=float)
    if not np.any(np.isfinite(scores)):
        raise InvalidArgument("Acquisition scores have no finite value to select against.")

    unused = pool.unused_indices()
    if not unused:
        raise PoolExhausted("Candidate pool has no unused entries.")

    return min(unused, key=lambda i: (abs(pool.states[i] - target_state), pool.states[i], i))


def probe_grid(states, count=PROBE_COUNT):

    """ `count` uniform points over [min(states), max(states)] """

    states = np.asarray(states, dtype=float).ravel()
    if states.size == 0:
        raise InvalidArgument("Probe grid needs at least one state.")

    return np.linspace(float(np.min(states)), float(np.max(states)), count)


def coverage_order(candidates, anchors=()):

    """
    Farthest-point order of candidate states: each step takes the candidate farthest from the anchors
    and the candidates already taken.  Ties go to the smaller state.  Without anchors the first pick is
    the smallest state.

    :param candidates:  Candidate states
    :type  candidates:  sequence

    :param anchors:     States already covered (e.g. the L2 training states)
    :type  anchors:     sequence

    :return:    Candidate indices in selection order
    :rtype:     list
    """

    candidates = np.asarray(candidates, dtype=float).ravel()
    covered = [float(a) for a in np.asarray(anchors, dtype=float).ravel()]
    remaining = list(range(candidates.size))
    order = []

    while remaining:
        if covered:
            gaps = {i: min(abs(candidates[i] - c) for c in covered) for i in remaining}
            chosen = min(remaining, key=lambda i: (-gaps[i], candidates[i], i))
        else:
            chosen = min(remaining, key=lambda i: (candidates[i], i))
        order.append(chosen)
        covered.append(float(candidates[chosen]))
        remaining.remove(chosen)

    return order


def run_active_loop(initial, pool, spec, n_iterations, test_x, test_y, floor=0.0, optimizer_config=None,
                    params=None, probes=None):

    """
    Grow the L1 training data one pool point at a time.  Each iteration scores the probe grid with the
    current model, takes the argmax as the target, moves the closest unused pool point into training,
    refits and records test metrics.  With `params` the hyperparameters stay fixed and only the
    conditioning changes.

    :param initial:             Starting training data
    :type  initial:             MfTrainingData

    :param pool:                Candidate L1 points (not modified)
    :type  pool:                CandidatePool

    :param spec:                Acquisition settings
    :type  spec:                AcquisitionSpec

    :param n_iterations:        Number of points to add
    :type  n_iterations:        int

    :param test_x:              Held-out L2 states
    :type  test_x:              sequence

    :param test_y:              Held-out L2 values
    :type  test_y:              sequence

    :param floor:               Variance floor for every fit
    :type  floor:               float

    :param optimizer_config:    Multi-start settings
    :type  optimizer_config:    OptimizerConfig

    :param params:              Fixed hyperparameters (skip refitting)
    :type  params:              MfHyperparameters

    :param probes:              Probe grid (default: 201 points over the training and pool states)
    :type  probes:              np.ndarray

    :return:    History, with the final model attached
    :rtype:     ActiveLearningHistory

    :raises PoolExhausted:
    :raises OptimizationFailed:
    """

    pool = pool.copy()
    if n_iterations < 0:
        raise InvalidArgument("n_iterations must be non-negative.")
    if n_iterations > len(pool.unused_indices()):
        raise PoolExhausted(f"Requested {n_iterations} iterations but only {len(pool.unused_indices())} "
                            f"unused pool points remain.")

    if probes is None:
        probes = probe_grid(np.concatenate([initial.all_states().ravel(), pool.states]))

    def fit(data):
        if params is not None:
            return TrainedMfGp(data, params, floor)
        return mf_fit(data, floor=floor, optimizer_config=optimizer_config)

    history = ActiveLearningHistory(spec.kind, spec.seed)
    rng = np.random.default_rng(spec.seed)

    model, fit_seconds = timed(fit, initial)
    prediction, predict_seconds = timed(mf_predict, model, test_x)
    base_rmse, base_r2 = score_predictions(prediction, test_y)
    history.baseline = {"rmse": base_rmse, "r2": base_r2, "fit_seconds": fit_seconds,
                        "predict_seconds": predict_seconds, "params": model.params.to_json()}
    history.model = model

    data = initial
    for iteration in range(1, n_iterations + 1):
        if spec.kind == AcquisitionKind.RANDOM:
            unused = pool.unused_indices()
            index = unused[int(rng.integers(len(unused)))]
            target = float(pool.states[index])
        else:
            scores = score_probes(model, probes, spec)
            target = locate_target(scores, probes)
            index = select_next(scores, pool, target)

        pool.mark_used(index)
        data = data.with_l1_point(pool.states[index], pool.values[index])

        try:
            model, fit_seconds = timed(fit, data)
        except NumericalError as ex:
            logging.error("Active loop (%s) aborted at iteration %d: %s", spec.kind, iteration, ex)
            history.aborted = f"iteration {iteration}: {ex}"
            break

        prediction, predict_seconds = timed(mf_predict, model, test_x)
        error, r2 = score_predictions(prediction, test_y)

        history.iterations.append(IterationRecord(iteration=iteration, selected_state=float(pool.states[index]),
                                                  rmse=error, r2=r2, params=model.params, target_state=target,
                                                  pool_index=index, fit_seconds=fit_seconds,
                                                  predict_seconds=predict_seconds))
        history.model = model
        logging.debug("Active loop (%s) iteration %d: target %g, selected %g, rmse %g",
                      spec.kind, iteration, target, pool.states[index], error)

    return history


__all__ = [
    'AcquisitionSpec',
    'CandidatePool',
    'IterationRecord',
    'ActiveLearningHistory',
    'expected_improvement',
    'upper_confidence_bound',
    'acq_l2',
    'acq_max_variance',
    'acq_ucb',
    'acq_ei',
    'default_incumbent',
    'score_probes',
    'locate_target',
    'select_next',
    'probe_grid',
    'coverage_order',
    'run_active_loop',
    'PROBE_COUNT',
    'HISTORY_CSV_HEADER'
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
