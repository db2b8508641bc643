""" *******************************************************************************************************************
|
|  Name        :  _synth.py
|  Module      :  mfgp_shm
|  Description :  Deterministic synthetic two-fidelity datasets.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import logging
import math
from dataclasses import dataclass

import numpy as np

from .._exceptions import *
from .._params import *
from .._damage_index import DiValue, DiDataset
from .._mfgp import MfTrainingData


SYNTH_PATH_ID = "synthetic"


def forrester_high(x):
    x = np.asarray(x, dtype=float)
    return (6.0 * x - 2.0) ** 2 * np.sin(12.0 * x - 4.0)


def forrester_low(x):
    x = np.asarray(x, dtype=float)
    return 0.5 * forrester_high(x) + 10.0 * (x - 0.5) - 5.0


@dataclass(frozen=True)
class SynthConfig:

    """ Generator family, sample counts, noise and domain """

    family: str = SynthFamily.FORRESTER
    noise_l2: float = 0.0
    n_l1: int = 11
    n_l2: int = 4
    seed: int = 0
    domain: tuple = (0.0, 1.0)
    l2_states: tuple = ()
    n_realizations: int = 1
    rho_star: float = 2.0
    offset: float = 0.0

    def __post_init__(self):
        if self.family not in SynthFamily.ALL:
            raise InvalidArgument(f"Synthetic family provided ({self.family}) is not supported.")
        if self.noise_l2 < 0:
            raise InvalidArgument("noise_l2 must be non-negative.")
        if self.n_l2 < 1 or self.n_l1 < 0 or self.n_realizations < 1:
            raise InvalidArgument("Synthetic data needs n_l2 >= 1, n_l1 >= 0 and n_realizations >= 1.")
        lo, hi = (float(v) for v in self.domain)
        if not lo < hi:
            raise InvalidArgument(f"Domain must satisfy lo < hi, got {self.domain}.")
        object.__setattr__(self, "domain", (lo, hi))
        object.__setattr__(self, "l2_states", tuple(float(s) for s in self.l2_states))


class SynthDataset:

    """ Generated training data with the noiseless curves it was drawn from """

    def __init__(self, config, data, truth, low, dataset):
        self.config = config
        self.data = data
        self.truth = truth
        self.low = low
        self.dataset = dataset

    def test_set(self, count=100):

        """
        `count` uniform probes over the domain and the noiseless high-fidelity curve at them.

        :return:    (states, values)
        :rtype:     tuple
        """

        states = np.linspace(self.config.domain[0], self.config.domain[1], count)
        return states, self.truth(states)

    def to_csv(self, filename):
        self.dataset.to_csv(filename)


def _curves(config):

    lo, hi = config.domain

    def unit(x):
        return (np.asarray(x, dtype=float) - lo) / (hi - lo)

    if config.family == SynthFamily.FORRESTER:
        return forrester_high, forrester_low

    if config.family == SynthFamily.LINEAR_RHO:
        def low(x):
            t = unit(x)
            return np.sin(2.0 * math.pi * t) + 0.5 * t

        def high(x):
            return config.rho_star * low(x) + config.offset

        return high, low

    #  Monotone growth with a bump, L1 biased low with a state-proportional offset.
    def high(x):
        t = unit(x)
        return 0.3 * t ** 1.5 + 0.05 * np.exp(-((t - 0.6) / 0.08) ** 2)

    def low(x):
        return 0.85 * high(x) + config.offset * unit(x)

    return high, low


def generate(config):

    """
    Sample a two-fidelity dataset.  L1 points are noiseless values of the low curve on a uniform grid;
    L2 points repeat each state `n_realizations` times with additive zero-mean Gaussian noise of variance
    `noise_l2`.

    :param config:  Generator settings
    :type  config:  SynthConfig

    :return:    Dataset
    :rtype:     SynthDataset
    """

    rng = np.random.default_rng(config.seed)
    high, low = _curves(config)
    lo, hi = config.domain

    x_l1 = np.linspace(lo, hi, config.n_l1) if config.n_l1 else np.zeros(0)
    y_l1 = low(x_l1) if config.n_l1 else np.zeros(0)

    states = np.array(config.l2_states) if config.l2_states else np.linspace(lo, hi, config.n_l2)
    x_l2 = np.repeat(states, config.n_realizations)
    noise = rng.normal(0.0, math.sqrt(config.noise_l2), x_l2.size) if config.noise_l2 > 0 else np.zeros(x_l2.size)
    y_l2 = high(x_l2) + noise

    points = [DiValue(state=float(x), value=float(y), fidelity=Fidelity.L1, path_id=SYNTH_PATH_ID)
              for x, y in zip(x_l1, y_l1)]
    points += [DiValue(state=float(x), value=float(y), fidelity=Fidelity.L2, path_id=SYNTH_PATH_ID,
                       realization=k % config.n_realizations)
               for k, (x, y) in enumerate(zip(x_l2, y_l2))]

    logging.info("Generated %s data: %d L1, %d L2 points", config.family, x_l1.size, x_l2.size)

    return SynthDataset(config, MfTrainingData(x_l1, y_l1, x_l2, y_l2), high, low,
                        DiDataset(points, DiKind.SYNTHETIC))


__all__ = [
    'SynthConfig',
    'SynthDataset',
    'generate',
    'forrester_high',
    'forrester_low',
    'SYNTH_PATH_ID'
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
