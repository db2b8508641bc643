""" *******************************************************************************************************************
|
|  Name        :  conftest.py
|  Description :  Shared pytest fixtures for the mfgp_shm test suite.
|  Project     :  mfgp_shm
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import os
import sys

import numpy as np
import pytest
sys.path.insert(0, os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'lib'))
import mfgp_shm as mfgp


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: benchmark-scale checks")


@pytest.fixture
def fast_optimizer():
    return mfgp.OptimizerConfig(restarts=3, max_evals=600, tolerance=1e-6, seed=0)


@pytest.fixture
def burst():
    return mfgp.tone_burst(100e3, 5, 24e6)


@pytest.fixture
def forrester_data():
    config = mfgp.SynthConfig(family=mfgp.SynthFamily.FORRESTER, noise_l2=0.0, n_l1=11,
                              l2_states=(0.0, 0.4, 0.6, 1.0), seed=0)
    return mfgp.generate(config)


def make_signal_set(root, states=(0.0, 2.0), realizations=2, paths=("1-4",), scale_per_state=0.3):

    """
    Write a small signal set: each state distorts the baseline burst with a state-proportional
    second harmonic; realizations add a tiny deterministic offset.
    """

    base = mfgp.tone_burst(100e3, 5, 2e6)
    t = np.arange(len(base)) / base.sample_rate
    records = []
    for path_id in paths:
        for state in states:
            for r in range(realizations):
                distortion = scale_per_state * state * np.sin(2 * np.pi * 200e3 * t) * np.hanning(len(base))
                samples = base.samples + distortion + 1e-4 * r * np.cos(2 * np.pi * 50e3 * t)
                records.append(mfgp.SignalRecord(base.with_samples(samples), path_id, state, r, mfgp.Fidelity.L2))

    signal_set = mfgp.SignalSet(records, {"baseline_state": min(states), "state_unit": "mm"})
    mfgp.write_signal_set(str(root), signal_set)

    return str(root)


@pytest.fixture
def signal_root(tmp_path):
    return make_signal_set(tmp_path / "signals")


@pytest.fixture
def signal_set_factory():
    return make_signal_set


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
