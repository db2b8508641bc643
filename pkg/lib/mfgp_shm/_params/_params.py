""" *******************************************************************************************************************
|
|  Name        :  _params.py
|  Module      :  mfgp_shm
|  Description :  String constants shared across mfgp_shm modules
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """


class Fidelity:

    """ Fidelity class and params """

    L1 = "L1"
    L2 = "L2"

    ALL = [L1, L2]


class DiKind:

    """ DiKind class and params """

    JANAPATI = "janapati"
    RMSD = "rmsd"
    SYNTHETIC = "synthetic"

    SIGNAL_KINDS = [JANAPATI, RMSD]
    ALL = [JANAPATI, RMSD, SYNTHETIC]


class AcquisitionKind:

    """ AcquisitionKind class and params """

    L2_LOSS = "l2_loss"
    MAX_VARIANCE = "max_variance"
    UCB = "ucb"
    EI = "ei"
    RANDOM = "random"

    ALL = [L2_LOSS, MAX_VARIANCE, UCB, EI, RANDOM]


class SynthFamily:

    """ SynthFamily class and params """

    FORRESTER = "forrester"
    LINEAR_RHO = "linear_rho"
    DI_LIKE = "di_like"

    ALL = [FORRESTER, LINEAR_RHO, DI_LIKE]


class Transform:

    """ Transform class and params """

    LOG = "log"
    LINEAR = "linear"

    ALL = [LOG, LINEAR]


class DataSource:

    """ DataSource class and params """

    SYNTHETIC = "synthetic"
    DI_CSV = "di_csv"
    SIGNALS = "signals"

    ALL = [SYNTHETIC, DI_CSV, SIGNALS]


class ReplacementOrder:

    """ ReplacementOrder class and params """

    OUTSIDE_IN = "outside-in"
    INSIDE_OUT = "inside-out"
    ASCENDING = "ascending"
    RANDOM = "random"

    ALL = [OUTSIDE_IN, INSIDE_OUT, ASCENDING, RANDOM]


class L1Order:

    """ L1Order class and params """

    COVERAGE = "coverage"
    RANDOM = "random"

    ALL = [COVERAGE, RANDOM]


class L1Coverage:

    """ L1Coverage class and params """

    FULL = "full"
    REPLACED = "replaced"

    ALL = [FULL, REPLACED]


class TaskName:

    """ TaskName class and params """

    EXTRACT_DI = "extract-di"
    FIT_GP = "fit-gp"
    FIT_MFGP = "fit-mfgp"
    TASK1 = "task1"
    TASK2 = "task2"
    TASK3 = "task3"
    SYNTH = "synth"
    RECONSTRUCT = "reconstruct"

    ALL = [EXTRACT_DI, FIT_GP, FIT_MFGP, TASK1, TASK2, TASK3, SYNTH, RECONSTRUCT]


class ModelName:

    """ ModelName class and params """

    GP = "gp"
    MFGP = "mfgp"


__all__ = [
    'Fidelity',
    'DiKind',
    'AcquisitionKind',
    'SynthFamily',
    'Transform',
    'DataSource',
    'ReplacementOrder',
    'L1Order',
    'L1Coverage',
    'TaskName',
    'ModelName'
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
