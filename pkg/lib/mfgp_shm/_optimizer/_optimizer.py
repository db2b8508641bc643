""" *******************************************************************************************************************
|
|  Name        :  _optimizer.py
|  Module      :  mfgp_shm
|  Description :  Bound-constrained derivative-free minimization with deterministic multi-start.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import concurrent.futures
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .._exceptions import *
from .._params import *


@dataclass(frozen=True)
class ParameterBox:

    """ Per-dimension bounds and the space (log or linear) each dimension is searched in """

    lower: tuple
    upper: tuple
    transforms: tuple
    names: tuple = ()

    def __post_init__(self):
        lower = tuple(float(v) for v in self.lower)
        upper = tuple(float(v) for v in self.upper)
        transforms = tuple(self.transforms)
        if not (len(lower) == len(upper) == len(transforms)) or not lower:
            raise InvalidArgument("Parameter box lower, upper and transforms must have the same non-zero length.")
        for i, (lo, hi, tr) in enumerate(zip(lower, upper, transforms)):
            if tr not in Transform.ALL:
                raise InvalidArgument(f"Transform provided ({tr}) is not supported.")
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo > hi:
                raise InvalidArgument(f"Invalid bounds [{lo}, {hi}] for dimension {i}.")
            if tr == Transform.LOG and lo <= 0:
                raise InvalidArgument(f"Log-transformed dimension {i} needs a positive lower bound, got {lo}.")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)
        object.__setattr__(self, "transforms", transforms)
        object.__setattr__(self, "names", tuple(self.names))

    @property
    def dims(self):
        return len(self.lower)

    def to_internal(self, values):
        values = np.asarray(values, dtype=float)
        return np.array([math.log(v) if tr == Transform.LOG else v for v, tr in zip(values, self.transforms)])

    def from_internal(self, internal):

        """
        Map a search-space point back to parameter space, clamped to the box.  Collapsed dimensions
        return their bound exactly.
        """

        values = np.array([math.exp(z) if tr == Transform.LOG else z for z, tr in zip(internal, self.transforms)])
        values = np.clip(values, self.lower, self.upper)
        for i, (lo, hi) in enumerate(zip(self.lower, self.upper)):
            if lo == hi:
                values[i] = lo

        return values

    def internal_bounds(self):
        return self.to_internal(self.lower), self.to_internal(self.upper)

    def center(self):
        lo, hi = self.internal_bounds()
        return self.from_internal(0.5 * (lo + hi))


@dataclass(frozen=True)
class OptimizerConfig:

    """ Multi-start settings """

    restarts: int = 10
    max_evals: int = 2000
    tolerance: float = 1e-8
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1 or self.max_evals < 1 or self.workers < 1:
            raise InvalidArgument("Optimizer restarts, max_evals and workers must be positive.")
        if not self.tolerance > 0:
            raise InvalidArgument("Optimizer tolerance must be positive.")


@dataclass
class OptimizeResult:

    """ Best point over all restarts """

    argmin: np.ndarray
    value: float
    evals: int
    start_values: list = field(default_factory=list)
    restart_values: list = field(default_factory=list)


def _start_points(box, config, initial):

    lo, hi = box.internal_bounds()
    rng = np.random.default_rng(config.seed)

    first = box.to_internal(np.clip(initial, box.lower, box.upper)) if initial is not None else 0.5 * (lo + hi)
    starts = [first]
    for _ in range(config.restarts - 1):
        starts.append(rng.uniform(lo, hi))

    return starts


def minimize(objective, box, config=None, initial=None):

    """
    Minimize objective over a box with one Nelder-Mead run per restart.  Restart 0 starts at `initial`
    (or the box center); the others start uniformly in the transformed space, drawn from `config.seed`.
    Non-finite objective values and NumericalError count as +inf.

    :param objective:   Function of a parameter-space vector returning a float
    :type  objective:   function

    :param box:         Bounds and transforms
    :type  box:         ParameterBox

    :param config:      Multi-start settings
    :type  config:      OptimizerConfig

    :param initial:     Optional first start point (parameter space)
    :type  initial:     list

    :return:    Best point, its value and the total number of evaluations
    :rtype:     OptimizeResult

    :raises OptimizationFailed:
    """

    if config is None:
        config = OptimizerConfig()

    lo, hi = box.internal_bounds()
    free = hi > lo
    starts = _start_points(box, config, initial)

    def full(z_free, template):
        z = np.array(template, dtype=float)
        z[free] = z_free
        return z

    def evaluate(z):
        try:
            value = float(objective(box.from_internal(z)))
        except NumericalError:
            return math.inf
        return value if math.isfinite(value) else math.inf

    def run_restart(z0):
        z0 = np.where(free, z0, lo)
        f0 = evaluate(z0)
        if not np.any(free):
            return z0, f0, f0, 1

        step = 0.05 * (hi - lo)[free]
        x0 = z0[free]
        simplex = [x0]
        for i in range(x0.size):
            vertex = np.array(x0)
            vertex[i] = vertex[i] + step[i] if vertex[i] + step[i] <= hi[free][i] else vertex[i] - step[i]
            simplex.append(vertex)

        result = optimize.minimize(lambda z_free: evaluate(full(z_free, z0)), x0, method="Nelder-Mead",
                                   bounds=list(zip(lo[free], hi[free])),
                                   options={"initial_simplex": np.array(simplex), "maxfev": config.max_evals,
                                            "xatol": config.tolerance, "fatol": config.tolerance})

        z_best = full(np.clip(result.x, lo[free], hi[free]), z0)
        f_best = evaluate(z_best)
        if not f_best <= f0:
            z_best, f_best = z0, f0

        return z_best, f_best, f0, int(result.nfev) + 2

    if config.workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=config.workers) as executor:
            outcomes = list(executor.map(run_restart, starts))
    else:
        outcomes = [run_restart(z0) for z0 in starts]

    #  Lowest value wins; ties go to the lowest restart index.
    best_index = None
    for index, (_, f_best, _, _) in enumerate(outcomes):
        if best_index is None or f_best < outcomes[best_index][1]:
            best_index = index

    start_values = [o[2] for o in outcomes]
    restart_values = [o[1] for o in outcomes]
    z_opt, f_opt, _, _ = outcomes[best_index]

    if not math.isfinite(f_opt):
        raise OptimizationFailed(f"Objective was non-finite at all {len(starts)} start points.")

    evals = sum(o[3] for o in outcomes)
    logging.debug("Multi-start minimize: best value %g from restart %d (%d evaluations)", f_opt, best_index, evals)

    return OptimizeResult(argmin=box.from_internal(z_opt), value=f_opt, evals=evals,
                          start_values=start_values, restart_values=restart_values)


__all__ = [
    'ParameterBox',
    'OptimizerConfig',
    'OptimizeResult',
    'minimize'
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
