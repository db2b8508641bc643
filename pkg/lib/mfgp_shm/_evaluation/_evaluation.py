""" *******************************************************************************************************************
|
|  Name        :  _evaluation.py
|  Module      :  mfgp_shm
|  Description :  Error metrics, seeded train/test splitting and the model comparison table.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import csv
import logging
import math
import time
from dataclasses import dataclass, astuple, fields

import numpy as np

from .._exceptions import *
from .._params import *
from .._damage_index import DiDataset


METRICS_CSV_HEADER = ["model", "n_exp_sets", "n_sim_points", "rmse", "r2", "fit_seconds", "predict_seconds"]


def _paired(pred, truth, min_length):

    pred = np.asarray(pred, dtype=float).ravel()
    truth = np.asarray(truth, dtype=float).ravel()
    if pred.size != truth.size:
        raise InvalidArgument(f"Prediction and truth lengths differ ({pred.size} vs {truth.size}).")
    if pred.size < min_length:
        raise InvalidArgument(f"Metric needs at least {min_length} values, got {pred.size}.")

    return pred, truth


def rmse(pred, truth):

    """
    Root mean squared error.

    :param pred:    Predicted values
    :type  pred:    sequence

    :param truth:   Reference values
    :type  truth:   sequence

    :return:    RMSE
    :rtype:     float

    :raises InvalidArgument:
    """

    pred, truth = _paired(pred, truth, 1)

    return float(np.sqrt(np.mean((pred - truth) ** 2)))


def r_squared(pred, truth):

    """
    Coefficient of determination against the mean of `truth`: 1 - SS_res / SS_tot.

    :param pred:    Predicted values
    :type  pred:    sequence

    :param truth:   Reference values (not constant)
    :type  truth:   sequence

    :return:    R^2 (<= 1)
    :rtype:     float

    :raises InvalidArgument:
    """

    pred, truth = _paired(pred, truth, 2)

    ss_tot = float(np.sum((truth - np.mean(truth)) ** 2))
    if ss_tot == 0:
        raise InvalidArgument("R^2 is undefined for a constant truth vector.")

    return 1.0 - float(np.sum((truth - pred) ** 2)) / ss_tot


@dataclass(frozen=True)
class SplitSpec:

    """ Fraction of L2 realizations per state used for training, seed and states pinned into training """

    train_fraction: float
    seed: int = 0
    always_include_states: frozenset = frozenset()

    def __post_init__(self):
        if not 0 < self.train_fraction < 1:
            raise InvalidArgument(f"train_fraction must lie in (0, 1), got {self.train_fraction}.")
        object.__setattr__(self, "always_include_states",
                           frozenset(float(s) for s in self.always_include_states))


def split_realizations(dataset, spec):

    """
    Split L2 realizations per state into train and test sets: floor(train_fraction * count) realizations
    chosen by a seeded shuffle go to training, the rest to test.  Pinned states and all L1 points go to
    training.  Both outputs keep the dataset's point order.

    :param dataset:     DI dataset
    :type  dataset:     DiDataset

    :param spec:        Split settings
    :type  spec:        SplitSpec

    :return:    (train, test)
    :rtype:     tuple
    """

    rng = np.random.default_rng(spec.seed)
    in_train = [p.fidelity == Fidelity.L1 for p in dataset.points]

    for state in dataset.states(Fidelity.L2):
        members = [i for i, p in enumerate(dataset.points) if p.fidelity == Fidelity.L2 and float(p.state) == state]

        if state in spec.always_include_states:
            chosen = members
        else:
            n_train = int(math.floor(spec.train_fraction * len(members) + 1e-9))
            order = rng.permutation(len(members))
            chosen = [members[k] for k in order[:n_train]]
            if n_train == len(members):
                logging.warning("State %g has no test realizations after the split.", state)

        for i in chosen:
            in_train[i] = True

    train = [p for p, keep in zip(dataset.points, in_train) if keep]
    test = [p for p, keep in zip(dataset.points, in_train) if not keep]

    logging.info("Split %d points into %d train / %d test", len(dataset), len(train), len(test))

    return DiDataset(train, dataset.di_kind), DiDataset(test, dataset.di_kind)


def replacement_order(states, pinned=(), order=ReplacementOrder.OUTSIDE_IN, seed=0):

    """
    Order in which experimental states are swapped for simulated ones.  Pinned states are never
    replaced.  outside-in takes the states nearest the domain edges first, inside-out the states nearest
    the middle first, ascending goes by state and random shuffles with `seed`.  Ties go to the smaller
    state.

    :param states:  Distinct experimental states
    :type  states:  sequence

    :param pinned:  States kept experimental
    :type  pinned:  sequence

    :param order:   ReplacementOrder value
    :type  order:   str

    :param seed:    Shuffle seed for the random order
    :type  seed:    int

    :return:    States in replacement order
    :rtype:     list
    """

    if order not in ReplacementOrder.ALL:
        raise InvalidArgument(f"Replacement order provided ({order}) is not supported.")

    states = sorted({float(s) for s in states})
    pinned = {float(p) for p in pinned}
    candidates = [s for s in states if s not in pinned]
    if not candidates:
        return []

    lo, hi = states[0], states[-1]

    def edge_distance(s):
        return min(s - lo, hi - s)

    if order == ReplacementOrder.OUTSIDE_IN:
        return sorted(candidates, key=lambda s: (edge_distance(s), s))
    if order == ReplacementOrder.INSIDE_OUT:
        return sorted(candidates, key=lambda s: (-edge_distance(s), s))
    if order == ReplacementOrder.RANDOM:
        return [candidates[i] for i in np.random.default_rng(seed).permutation(len(candidates))]

    return candidates


@dataclass(frozen=True)
class MetricsRow:

    """ One model comparison row """

    model: str
    n_exp_sets: int
    n_sim_points: int
    rmse: float
    r2: float
    fit_seconds: float
    predict_seconds: float


class MetricsTable:

    """ MetricsTable class """

    def __init__(self, rows=None):
        self.rows = list(rows or [])

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def append(self, row):
        self.rows.append(row)

    def for_model(self, model):
        return [row for row in self.rows if row.model == model]

    def to_csv(self, filename):

        """
        Write the table (header model,n_exp_sets,n_sim_points,rmse,r2,fit_seconds,predict_seconds).

        :param filename:    Path to write to
        :type  filename:    str
        """

        with open(filename, 'w', newline='') as csvfile:
            writer = csv.writer(csvfile, lineterminator='\n')
            writer.writerow(METRICS_CSV_HEADER)
            for row in self.rows:
                writer.writerow([v if isinstance(v, (str, int)) else repr(float(v)) for v in astuple(row)])

    @staticmethod
    def from_csv(filename):

        """
        Read a table written by to_csv.

        :raises DataError:
        """

        casts = [f.type for f in fields(MetricsRow)]
        rows = []
        try:
            with open(filename, 'r', newline='') as data:
                reader = csv.reader(data)
                header = next(reader, None)
                if header != METRICS_CSV_HEADER:
                    raise DataError(f"{filename}: expected header {','.join(METRICS_CSV_HEADER)}, got {header}.")
                for row_num, row in enumerate(reader, start=2):
                    try:
                        rows.append(MetricsRow(*[cast(v) for cast, v in zip(casts, row)]))
                    except (TypeError, ValueError) as ex:
                        raise DataError(f"{filename}: malformed row {row_num}: {ex}")
        except FileNotFoundError:
            raise DataError(f"Metrics file not found: {filename}")

        return MetricsTable(rows)


def timed(function, *args, **kwargs):

    """
    Call a function and measure its wall time with a monotonic clock.

    :return:    (result, seconds)
    :rtype:     tuple
    """

    start = time.perf_counter()
    result = function(*args, **kwargs)

    return result, time.perf_counter() - start


def score_predictions(prediction, truth):

    """
    RMSE and R^2 of a prediction's mean.  R^2 is NaN when the truth is constant or has a single value.

    :return:    (rmse, r2)
    :rtype:     tuple
    """

    error = rmse(prediction.mean, truth)
    try:
        r2 = r_squared(prediction.mean, truth)
    except InvalidArgument:
        r2 = math.nan

    return error, r2


__all__ = [
    'rmse',
    'r_squared',
    'SplitSpec',
    'split_realizations',
    'replacement_order',
    'MetricsRow',
    'MetricsTable',
    'timed',
    'score_predictions',
    'METRICS_CSV_HEADER'
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
