""" *******************************************************************************************************************
|
|  Name        :  _config.py
|  Module      :  mfgp_shm
|  Description :  Strict experiment configuration read from TOML.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import dataclasses
import logging
from dataclasses import dataclass, field

import toml

from .._exceptions import *
from .._params import *


@dataclass
class DataSection:

    """ [data] """

    source: str = DataSource.SYNTHETIC
    di_csv: str = ""
    signal_root: str = ""
    path_ids: list = field(default_factory=list)
    di_kind: str = DiKind.JANAPATI
    packet_window: list = field(default_factory=list)
    taper: bool = False
    n_test: int = 100


@dataclass
class SynthSection:

    """ [synth] """

    family: str = SynthFamily.FORRESTER
    noise_l2: float = 0.01
    n_l1: int = 11
    n_l2: int = 4
    l2_states: list = field(default_factory=lambda: [0.0, 0.4, 0.6, 1.0])
    n_realizations: int = 1
    domain: list = field(default_factory=lambda: [0.0, 1.0])
    rho_star: float = 2.0
    offset: float = 0.0


@dataclass
class SplitSection:

    """ [split] """

    train_fraction: float = 0.75
    pinned_states: list = field(default_factory=list)


@dataclass
class OptimizerSection:

    """ [optimizer] """

    restarts: int = 10
    max_evals: int = 2000
    tolerance: float = 1e-8
    workers: int = 1


@dataclass
class VarianceFloorSection:

    """ [variance_floor] """

    enabled: bool = True
    multiplier: float = 3.0


@dataclass
class Task1Section:

    """ [task1] """

    max_added: int = 6
    order: str = L1Order.COVERAGE


@dataclass
class Task2Section:

    """ [task2] """

    order: str = ReplacementOrder.OUTSIDE_IN
    l1_data: str = L1Coverage.FULL


@dataclass
class Task3Section:

    """ [task3] """

    acquisitions: list = field(default_factory=lambda: [AcquisitionKind.UCB, AcquisitionKind.EI,
                                                         AcquisitionKind.MAX_VARIANCE])
    n_iterations: int = 15
    random_seeds: int = 10
    lam: float = 2.0
    xi: float = 0.01
    initial_states: list = field(default_factory=list)


@dataclass
class CompensationSection:

    """ [compensation] """

    a: float = 0.0
    b: float = 0.0
    k_phase: float = 0.0
    segment_lengths: list = field(default_factory=list)
    strain_per_load: float = 0.0
    loads: list = field(default_factory=list)
    model_json: str = ""


SECTIONS = {
    "data": DataSection,
    "synth": SynthSection,
    "split": SplitSection,
    "optimizer": OptimizerSection,
    "variance_floor": VarianceFloorSection,
    "task1": Task1Section,
    "task2": Task2Section,
    "task3": Task3Section,
    "compensation": CompensationSection
}


def _coerce(where, expected, value):

    if expected is bool:
        if not isinstance(value, bool):
            raise ConfigError(f"{where} must be true or false, got {value!r}.")
        return value
    if expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where} must be an integer, got {value!r}.")
        return value
    if expected is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{where} must be a number, got {value!r}.")
        return float(value)
    if expected is str:
        if not isinstance(value, str):
            raise ConfigError(f"{where} must be a string, got {value!r}.")
        return value
    if not isinstance(value, list):
        raise ConfigError(f"{where} must be an array, got {value!r}.")

    return list(value)


def _build(cls, values, prefix):

    known = {f.name: f for f in dataclasses.fields(cls)}
    kwargs = {}
    for key, value in values.items():
        where = f"{prefix}.{key}" if prefix else key
        if key not in known:
            raise ConfigError(f"Unknown configuration key: {where}")
        kwargs[key] = _coerce(where, known[key].type, value)

    return cls(**kwargs)


@dataclass
class ExperimentConfig:

    """ Top-level settings and one dataclass per TOML section """

    task: str = ""
    seed: int = 0
    output_dir: str = "results"
    use_prog_bar: bool = True
    num_thread_workers: int = 1
    data: DataSection = field(default_factory=DataSection)
    synth: SynthSection = field(default_factory=SynthSection)
    split: SplitSection = field(default_factory=SplitSection)
    optimizer: OptimizerSection = field(default_factory=OptimizerSection)
    variance_floor: VarianceFloorSection = field(default_factory=VarianceFloorSection)
    task1: Task1Section = field(default_factory=Task1Section)
    task2: Task2Section = field(default_factory=Task2Section)
    task3: Task3Section = field(default_factory=Task3Section)
    compensation: CompensationSection = field(default_factory=CompensationSection)

    @staticmethod
    def from_dict(data):

        """
        Build a config from parsed TOML.  Unknown keys at any level are rejected.

        :param data:    Parsed TOML
        :type  data:    dict

        :return:    Config
        :rtype:     ExperimentConfig

        :raises ConfigError:
        """

        top_level = {}
        sections = {}
        scalars = {"task": str, "seed": int, "output_dir": str, "use_prog_bar": bool, "num_thread_workers": int}

        for key, value in data.items():
            if key in SECTIONS:
                if not isinstance(value, dict):
                    raise ConfigError(f"[{key}] must be a table.")
                sections[key] = _build(SECTIONS[key], value, key)
            elif key in scalars:
                top_level[key] = _coerce(key, scalars[key], value)
            else:
                raise ConfigError(f"Unknown configuration key: {key}")

        return ExperimentConfig(**top_level, **sections)

    def with_overrides(self, task=None, seed=None, output_dir=None):
        changes = {k: v for k, v in [("task", task), ("seed", seed), ("output_dir", output_dir)] if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        return dataclasses.asdict(self)

    def validate(self):

        """
        Check enumerations, ranges and the fields the selected task needs.

        :raises ConfigError:
        """

        task = self.task
        if task not in TaskName.ALL:
            raise ConfigError(f"Task provided ({task!r}) is not one of {TaskName.ALL}.")

        data = self.data
        if data.source not in DataSource.ALL:
            raise ConfigError(f"data.source ({data.source}) is not one of {DataSource.ALL}.")
        if data.di_kind not in DiKind.ALL:
            raise ConfigError(f"data.di_kind ({data.di_kind}) is not one of {DiKind.ALL}.")
        if data.packet_window and len(data.packet_window) != 2:
            raise ConfigError("data.packet_window must be [start_s, length_s].")
        if data.n_test < 2:
            raise ConfigError("data.n_test must be at least 2.")

        if self.synth.family not in SynthFamily.ALL:
            raise ConfigError(f"synth.family ({self.synth.family}) is not one of {SynthFamily.ALL}.")
        if len(self.synth.domain) != 2 or not self.synth.domain[0] < self.synth.domain[1]:
            raise ConfigError("synth.domain must be [lo, hi] with lo < hi.")
        if self.synth.noise_l2 < 0 or self.synth.n_l2 < 1 or self.synth.n_l1 < 0 or self.synth.n_realizations < 1:
            raise ConfigError("synth needs noise_l2 >= 0, n_l2 >= 1, n_l1 >= 0 and n_realizations >= 1.")

        if not 0 < self.split.train_fraction < 1:
            raise ConfigError("split.train_fraction must lie in (0, 1).")

        opt = self.optimizer
        if opt.restarts < 1 or opt.max_evals < 1 or opt.workers < 1 or not opt.tolerance > 0:
            raise ConfigError("optimizer restarts, max_evals, workers and tolerance must be positive.")
        if not self.variance_floor.multiplier >= 0:
            raise ConfigError("variance_floor.multiplier must be non-negative.")
        if not 1 <= self.num_thread_workers <= 32:
            raise ConfigError("num_thread_workers must be between 1 and 32.")
        if not self.output_dir:
            raise ConfigError("output_dir must not be empty.")

        if task in [TaskName.FIT_GP, TaskName.FIT_MFGP, TaskName.TASK1, TaskName.TASK2, TaskName.TASK3]:
            self._validate_model_input()

        if task == TaskName.TASK1:
            if self.task1.max_added < 0:
                raise ConfigError("task1.max_added must be non-negative.")
            if self.task1.order not in L1Order.ALL:
                raise ConfigError(f"task1.order ({self.task1.order}) is not one of {L1Order.ALL}.")
        if task == TaskName.TASK2:
            if self.task2.order not in ReplacementOrder.ALL:
                raise ConfigError(f"task2.order ({self.task2.order}) is not one of {ReplacementOrder.ALL}.")
            if self.task2.l1_data not in L1Coverage.ALL:
                raise ConfigError(f"task2.l1_data ({self.task2.l1_data}) is not one of {L1Coverage.ALL}.")
        if task == TaskName.TASK3:
            t3 = self.task3
            for kind in t3.acquisitions:
                if kind not in AcquisitionKind.ALL or kind == AcquisitionKind.RANDOM:
                    raise ConfigError(f"task3.acquisitions entry {kind!r} is not a scored acquisition kind.")
            if t3.n_iterations < 0 or t3.random_seeds < 1 or t3.lam < 0 or t3.xi < 0:
                raise ConfigError("task3 needs n_iterations >= 0, random_seeds >= 1, lam >= 0 and xi >= 0.")

        if task == TaskName.EXTRACT_DI and not data.signal_root:
            raise ConfigError("extract-di needs data.signal_root.")
        if task in [TaskName.EXTRACT_DI, TaskName.RECONSTRUCT] or data.source == DataSource.SIGNALS:
            if data.di_kind not in DiKind.SIGNAL_KINDS:
                raise ConfigError(f"Signal DIs need data.di_kind in {DiKind.SIGNAL_KINDS}.")
        if task == TaskName.RECONSTRUCT:
            comp = self.compensation
            if not data.signal_root:
                raise ConfigError("reconstruct needs data.signal_root.")
            if not (comp.model_json or comp.segment_lengths):
                raise ConfigError("reconstruct needs compensation.model_json or compensation.segment_lengths.")
            if not comp.loads:
                raise ConfigError("reconstruct needs compensation.loads.")

        logging.debug("Configuration for task %s validated", task)

    def _validate_model_input(self):
        data = self.data
        if data.source == DataSource.DI_CSV and not data.di_csv:
            raise ConfigError("data.source = di_csv needs data.di_csv.")
        if data.source == DataSource.SIGNALS and not data.signal_root:
            raise ConfigError("data.source = signals needs data.signal_root.")
        if data.source == DataSource.SIGNALS and len(data.path_ids) > 1:
            raise ConfigError(f"Model tasks fit one path at a time, got data.path_ids = {data.path_ids}.")


def read_config_file(filename):

    """
    Reads a TOML-formatted configuration file.

    :param filename:    Path to the TOML-formatted file to be read.
    :type  filename:    str

    :return:  Parsed, unvalidated configuration
    :rtype:   ExperimentConfig

    :raises ConfigError:
    """

    try:
        with open(filename) as conf:
            data = toml.loads(conf.read())
    except FileNotFoundError:
        raise ConfigError(f"Configuration file not found: {filename}")
    except toml.TomlDecodeError as ex:
        raise ConfigError(f"Configuration file {filename} is not valid TOML: {ex}")

    logging.info("Successfully read config file %s", filename)

    return ExperimentConfig.from_dict(data)


__all__ = [
    'ExperimentConfig',
    'DataSection',
    'SynthSection',
    'SplitSection',
    'OptimizerSection',
    'VarianceFloorSection',
    'Task1Section',
    'Task2Section',
    'Task3Section',
    'CompensationSection',
    'read_config_file'
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
