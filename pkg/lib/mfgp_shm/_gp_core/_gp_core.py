""" *******************************************************************************************************************
|
|  Name        :  _gp_core.py
|  Module      :  mfgp_shm
|  Description :  Single-fidelity Gaussian process regression (the standard GPRM baseline).
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .._exceptions import *
from .._params import *
from .._kernel import SeKernelParams, as_inputs
from .._optimizer import ParameterBox, OptimizerConfig, minimize


JITTER_START = 1e-10
JITTER_LIMIT = 1e-4
VARIANCE_TOLERANCE = 1e-10
LOG_2PI = math.log(2.0 * math.pi)


def stable_cholesky(matrix):

    """
    Lower Cholesky factor of a symmetric matrix.  If the plain factorization fails, jitter starting at
    1e-10 * mean(diag) is added and multiplied by 10 until it succeeds or passes 1e-4 * mean(diag).

    :param matrix:  Symmetric matrix
    :type  matrix:  np.ndarray

    :return:    (lower factor, jitter added)
    :rtype:     tuple

    :raises CholeskyError:
    """

    try:
        return linalg.cholesky(matrix, lower=True), 0.0
    except linalg.LinAlgError:
        pass

    scale = float(np.mean(np.diag(matrix)))
    if not (math.isfinite(scale) and scale > 0):
        raise CholeskyError("Matrix diagonal is not positive; cannot factorize.")

    identity = np.eye(matrix.shape[0])
    jitter = JITTER_START * scale
    while jitter <= JITTER_LIMIT * scale * (1.0 + 1e-9):
        try:
            factor = linalg.cholesky(matrix + jitter * identity, lower=True)
            logging.debug("Cholesky needed jitter of %.3e", jitter)
            return factor, jitter
        except linalg.LinAlgError:
            jitter *= 10.0

    raise CholeskyError(f"Matrix is not positive definite even with jitter of {JITTER_LIMIT:g} * mean(diag).")


def nlml_from_covariance(covariance, ys):

    """
    1/2 y^T K^-1 y + 1/2 log|K| + n/2 log(2 pi), through a jittered Cholesky factor.

    :param covariance:  Covariance of the observations
    :type  covariance:  np.ndarray

    :param ys:          Observations
    :type  ys:          np.ndarray

    :return:    (nlml, factor, alpha, jitter)
    :rtype:     tuple

    :raises CholeskyError:
    """

    factor, jitter = stable_cholesky(covariance)
    alpha = linalg.cho_solve((factor, True), ys)
    nlml = 0.5 * float(np.dot(ys, alpha)) + float(np.sum(np.log(np.diag(factor)))) + 0.5 * ys.size * LOG_2PI

    if not math.isfinite(nlml):
        raise NumericalError("Negative log marginal likelihood is not finite.")

    return nlml, factor, alpha, jitter


def data_scales(xs, ys):

    """
    Input range and output variance used to place default bounds; degenerate data falls back to 1.

    :return:    (input range, output variance)
    :rtype:     tuple
    """

    xs = as_inputs(xs)
    ys = np.asarray(ys, dtype=float)

    x_range = float(np.max(np.ptp(xs, axis=0))) if xs.shape[0] > 1 else 0.0
    y_var = float(np.var(ys)) if ys.size > 1 else 0.0
    if not x_range > 0:
        x_range = 1.0
    if not y_var > 0:
        y_var = float(np.mean(ys ** 2)) if ys.size and np.any(ys != 0) else 1.0

    return x_range, y_var


@dataclass(frozen=True, eq=False)
class Prediction:

    """ Predictive mean and variance at a set of probes """

    mean: np.ndarray
    variance: np.ndarray

    @property
    def std(self):
        return np.sqrt(self.variance)

    def interval(self, z=1.96):
        half = z * self.std
        return self.mean - half, self.mean + half


@dataclass(frozen=True, eq=False)
class GpTrainingData:

    """ States and DI values """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = as_inputs(self.xs)
        ys = np.asarray(self.ys, dtype=float).ravel()
        if xs.shape[0] != ys.size or ys.size < 1:
            raise InvalidArgument(f"Training data needs equal, non-zero lengths (got {xs.shape[0]} and {ys.size}).")
        if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
            raise InvalidArgument("Training data must be finite.")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __len__(self):
        return self.ys.size


def gp_nlml(data, params, noise_variance):

    """
    Negative log marginal likelihood of a zero-mean GP.

    :param data:            Training data
    :type  data:            GpTrainingData

    :param params:          Kernel (SeKernelParams or CompositeSeKernel)
    :type  params:          SeKernelParams

    :param noise_variance:  Observation noise variance
    :type  noise_variance:  float

    :return:    NLML
    :rtype:     float

    :raises CholeskyError:
    :raises InvalidArgument:
    """

    if noise_variance < 0:
        raise InvalidArgument("Noise variance must be non-negative.")

    covariance = params.gram(data.xs, data.xs) + noise_variance * np.eye(len(data))

    return nlml_from_covariance(covariance, data.ys)[0]


class TrainedGp:

    """ TrainedGp class """

    def __init__(self, data, params, noise_variance):

        """
        Condition a GP on training data with fixed hyperparameters.

        :param data:            Training data
        :type  data:            GpTrainingData

        :param params:          Kernel (SeKernelParams or CompositeSeKernel)
        :type  params:          SeKernelParams

        :param noise_variance:  Observation noise variance
        :type  noise_variance:  float

        :raises CholeskyError:
        """

        if noise_variance < 0:
            raise InvalidArgument("Noise variance must be non-negative.")

        self.data = data
        self.params = params
        self.noise_variance = float(noise_variance)

        covariance = params.gram(data.xs, data.xs) + self.noise_variance * np.eye(len(data))
        self.nlml, self.chol_factor, self.alpha, self.jitter = nlml_from_covariance(covariance, data.ys)

    def predict(self, x_star):
        return gp_predict(self, x_star)

    def to_json(self):
        if not isinstance(self.params, SeKernelParams):
            raise InvalidArgument("Only squared exponential GP models are serializable.")
        return {
            "kernel": self.params.to_json(),
            "noise": self.noise_variance,
            "xs": self.data.xs.tolist(),
            "ys": self.data.ys.tolist()
        }

    @staticmethod
    def from_json(data):
        try:
            return TrainedGp(GpTrainingData(np.array(data["xs"]), np.array(data["ys"])),
                             SeKernelParams.from_json(data["kernel"]), float(data["noise"]))
        except KeyError as ex:
            raise DataError(f"GP model JSON is missing field {ex}.")
        except (TypeError, ValueError) as ex:
            raise DataError(f"GP model JSON has a non-numeric field: {ex}")


def default_gp_bounds(data, noise_floor=0.0):

    """
    Default search box for (variance, lengthscale, noise): lengthscale in [0.05, 10] x input range,
    variance in [1e-6, 100] x output variance, noise in [max(floor, 1e-8 x var), max(floor, var)].

    :param data:            Training data
    :type  data:            GpTrainingData

    :param noise_floor:     Lower bound on the noise variance
    :type  noise_floor:     float

    :return:    Parameter box
    :rtype:     ParameterBox
    """

    x_range, y_var = data_scales(data.xs, data.ys)
    noise_lower = max(noise_floor, 1e-8 * y_var)

    return ParameterBox(lower=(1e-6 * y_var, 0.05 * x_range, noise_lower),
                        upper=(100.0 * y_var, 10.0 * x_range, max(noise_floor, y_var)),
                        transforms=(Transform.LOG, Transform.LOG, Transform.LOG),
                        names=("variance", "lengthscale", "noise"))


def gp_fit(data, bounds=None, optimizer_config=None, noise_floor=0.0):

    """
    Fit kernel variance, lengthscale and noise variance by multi-start NLML minimization.

    :param data:                Training data
    :type  data:                GpTrainingData

    :param bounds:              Search box for (variance, lengthscale, noise); defaults to default_gp_bounds
    :type  bounds:              ParameterBox

    :param optimizer_config:    Multi-start settings
    :type  optimizer_config:    OptimizerConfig

    :param noise_floor:         Lower bound on the noise variance (used with the default box)
    :type  noise_floor:         float

    :return:    Trained model
    :rtype:     TrainedGp

    :raises OptimizationFailed:
    """

    if bounds is None:
        bounds = default_gp_bounds(data, noise_floor)
    if bounds.dims != 3:
        raise InvalidArgument("GP bounds must cover (variance, lengthscale, noise).")

    def objective(p):
        return gp_nlml(data, SeKernelParams(p[0], p[1]), p[2])

    result = minimize(objective, bounds, optimizer_config)
    model = TrainedGp(data, SeKernelParams(result.argmin[0], result.argmin[1]), result.argmin[2])

    logging.info("GP fit on %d points: variance=%g lengthscale=%g noise=%g nlml=%g",
                 len(data), model.params.variance, model.params.lengthscale, model.noise_variance, model.nlml)

    return model


def clamp_variance(variance, floor=0.0):

    """
    Clamp a predictive variance at `floor`, warning when it undershoots by more than the tolerance.
    """

    lowest = float(np.min(variance)) if variance.size else floor
    if lowest < floor - VARIANCE_TOLERANCE:
        logging.warning("Predictive variance undershot its floor by %.3e; clamped.", floor - lowest)

    return np.maximum(variance, floor)


def gp_predict(model, x_star):

    """
    Predictive mean q^T K^-1 y and variance k(x*, x*) + noise - q^T K^-1 q of the noisy observable.

    :param model:   Trained model
    :type  model:   TrainedGp

    :param x_star:  Probe states
    :type  x_star:  sequence

    :return:    Prediction
    :rtype:     Prediction
    """

    x_star = as_inputs(x_star)
    cross = model.params.gram(x_star, model.data.xs)
    mean = cross @ model.alpha

    solved = linalg.solve_triangular(model.chol_factor, cross.T, lower=True)
    latent = model.params.prior_variance() - np.sum(solved ** 2, axis=0)
    variance = clamp_variance(latent + model.noise_variance)

    return Prediction(mean=mean, variance=variance)


__all__ = [
    'stable_cholesky',
    'nlml_from_covariance',
    'data_scales',
    'clamp_variance',
    'Prediction',
    'GpTrainingData',
    'TrainedGp',
    'gp_nlml',
    'default_gp_bounds',
    'gp_fit',
    'gp_predict'
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
