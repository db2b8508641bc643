""" *******************************************************************************************************************
|
|  Name        :  _mfgp.py
|  Module      :  mfgp_shm
|  Description :  Two-level multi-fidelity GP: joint covariance, floored NLML training and prediction.
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
from .._gp_core import Prediction, nlml_from_covariance, data_scales, clamp_variance


RHO_BOUNDS = (-10.0, 10.0)
RHO_START = 1.0
DEFAULT_FLOOR_MULTIPLIER = 3.0


@dataclass(frozen=True, eq=False)
class MfTrainingData:

    """ Low-fidelity (L1) and high-fidelity (L2) training pairs """

    x_l1: np.ndarray
    y_l1: np.ndarray
    x_l2: np.ndarray
    y_l2: np.ndarray

    def __post_init__(self):
        for name_x, name_y in [("x_l1", "y_l1"), ("x_l2", "y_l2")]:
            xs = as_inputs(getattr(self, name_x)) if np.size(getattr(self, name_x)) else np.zeros((0, 1))
            ys = np.asarray(getattr(self, name_y), dtype=float).ravel()
            if xs.shape[0] != ys.size:
                raise InvalidArgument(f"{name_x} and {name_y} lengths differ ({xs.shape[0]} vs {ys.size}).")
            if not (np.all(np.isfinite(xs)) and np.all(np.isfinite(ys))):
                raise InvalidArgument(f"{name_x}/{name_y} must be finite.")
            object.__setattr__(self, name_x, xs)
            object.__setattr__(self, name_y, ys)

        if self.y_l2.size < 1:
            raise InvalidArgument("Multi-fidelity training data needs at least one L2 point.")
        if self.x_l1.shape[0] and self.x_l1.shape[1] != self.x_l2.shape[1]:
            raise InvalidArgument("L1 and L2 states must have the same dimension.")

    @property
    def n_l1(self):
        return self.y_l1.size

    @property
    def n_l2(self):
        return self.y_l2.size

    @property
    def stacked_y(self):
        return np.concatenate([self.y_l1, self.y_l2])

    def all_states(self):
        return np.concatenate([self.x_l1, self.x_l2], axis=0)

    def with_l1_point(self, state, value):

        """
        Copy with one more L1 pair appended.

        :param state:   L1 state
        :type  state:   float

        :param value:   L1 DI value
        :type  value:   float

        :return:    New training data
        :rtype:     MfTrainingData
        """

        x_new = np.concatenate([self.x_l1, as_inputs([state])], axis=0) if self.n_l1 else as_inputs([state])

        return MfTrainingData(x_new, np.append(self.y_l1, float(value)), self.x_l2, self.y_l2)


@dataclass(frozen=True)
class MfHyperparameters:

    """ theta1 (g1), theta_d (discrepancy h), rho and the two noise variances """

    theta1: SeKernelParams
    theta_d: SeKernelParams
    rho: float
    noise1: float
    noise2: float

    def __post_init__(self):
        for name in ["rho", "noise1", "noise2"]:
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidArgument(f"{name} must be finite, got {value}.")
            object.__setattr__(self, name, float(value))
        if self.noise1 < 0 or self.noise2 < 0:
            raise InvalidArgument("Noise variances must be non-negative.")

    def to_vector(self):
        return np.array([self.theta1.variance, self.theta1.lengthscale, self.theta_d.variance,
                         self.theta_d.lengthscale, self.rho, self.noise1, self.noise2])

    @staticmethod
    def from_vector(vector):
        v = [float(p) for p in vector]
        return MfHyperparameters(SeKernelParams(v[0], v[1]), SeKernelParams(v[2], v[3]), v[4], v[5], v[6])

    def to_json(self):
        return {
            "theta1": self.theta1.to_json(),
            "theta_d": self.theta_d.to_json(),
            "rho": self.rho,
            "noise1": self.noise1,
            "noise2": self.noise2
        }

    @staticmethod
    def from_json(data):
        return MfHyperparameters(SeKernelParams.from_json(data["theta1"]), SeKernelParams.from_json(data["theta_d"]),
                                 float(data["rho"]), float(data["noise1"]), float(data["noise2"]))


def _cross_blocks(params, x_star, data):

    """ [K21(x*, x_l1), K22(x*, x_l2)] without noise """

    rho = params.rho
    left = rho * params.theta1.gram(x_star, data.x_l1)
    right = rho ** 2 * params.theta1.gram(x_star, data.x_l2) + params.theta_d.gram(x_star, data.x_l2)

    return np.hstack([left, right])


def assemble_joint_covariance(data, params):

    """
    Joint covariance of the stacked observations [y_l1; y_l2]:
        K11 = g1 + noise1 I,  K12 = rho g1,  K22 = rho^2 g1 + h + noise2 I.

    :param data:    Training data
    :type  data:    MfTrainingData

    :param params:  Hyperparameters
    :type  params:  MfHyperparameters

    :return:    (n1 + n2) x (n1 + n2) symmetric matrix
    :rtype:     np.ndarray
    """

    rho = params.rho
    g1 = params.theta1

    k11 = g1.gram(data.x_l1, data.x_l1) + params.noise1 * np.eye(data.n_l1)
    k12 = rho * g1.gram(data.x_l1, data.x_l2)
    k22 = (rho ** 2 * g1.gram(data.x_l2, data.x_l2) + params.theta_d.gram(data.x_l2, data.x_l2)
           + params.noise2 * np.eye(data.n_l2))

    return np.block([[k11, k12], [k12.T, k22]])


def mf_nlml(data, params):

    """
    Negative log marginal likelihood of the stacked two-fidelity system.

    :raises CholeskyError:
    """

    return nlml_from_covariance(assemble_joint_covariance(data, params), data.stacked_y)[0]


def variance_floor(y_l2_by_state, multiplier=DEFAULT_FLOOR_MULTIPLIER):

    """
    `multiplier` times the largest per-state sample variance (ddof=1) of the L2 values.  States with a
    single realization are skipped; with none left the floor is 0 and a warning is logged.

    :param y_l2_by_state:   state -> list of L2 values
    :type  y_l2_by_state:   dict

    :param multiplier:      Scale applied to the largest variance
    :type  multiplier:      float

    :return:    Floor
    :rtype:     float
    """

    variances = [float(np.var(values, ddof=1)) for values in y_l2_by_state.values() if len(values) >= 2]
    if not variances:
        logging.warning("No L2 state has two or more realizations; variance floor set to 0.")
        return 0.0

    return multiplier * max(variances)


class TrainedMfGp:

    """ TrainedMfGp class """

    def __init__(self, data, params, variance_floor=0.0):

        """
        Condition the joint system on training data with fixed hyperparameters.

        :param data:            Training data
        :type  data:            MfTrainingData

        :param params:          Hyperparameters
        :type  params:          MfHyperparameters

        :param variance_floor:  Lower bound enforced on the noise variances during training
        :type  variance_floor:  float

        :raises CholeskyError:
        """

        self.data = data
        self.params = params
        self.variance_floor = float(variance_floor)

        self.nlml, self.chol_factor, self.alpha, self.jitter = nlml_from_covariance(
            assemble_joint_covariance(data, params), data.stacked_y)

    def predict(self, x_star):
        return mf_predict(self, x_star)

    def with_l1_point(self, state, value):
        return TrainedMfGp(self.data.with_l1_point(state, value), self.params, self.variance_floor)

    def to_json(self):
        body = self.params.to_json()
        body.update({
            "floor": self.variance_floor,
            "x_l1": self.data.x_l1.ravel().tolist() if self.data.x_l1.shape[1] == 1 else self.data.x_l1.tolist(),
            "y_l1": self.data.y_l1.tolist(),
            "x_l2": self.data.x_l2.ravel().tolist() if self.data.x_l2.shape[1] == 1 else self.data.x_l2.tolist(),
            "y_l2": self.data.y_l2.tolist()
        })
        return body

    @staticmethod
    def from_json(data):
        try:
            training = MfTrainingData(np.array(data["x_l1"], dtype=float), np.array(data["y_l1"], dtype=float),
                                      np.array(data["x_l2"], dtype=float), np.array(data["y_l2"], dtype=float))
            return TrainedMfGp(training, MfHyperparameters.from_json(data), float(data["floor"]))
        except KeyError as ex:
            raise DataError(f"MF-GP model JSON is missing field {ex}.")
        except (TypeError, ValueError) as ex:
            raise DataError(f"MF-GP model JSON has a non-numeric field: {ex}")


def default_mf_bounds(data, floor=0.0):

    """
    Default search box over (var1, len1, var_d, len_d, rho, noise1, noise2).  Lengthscales span
    [0.05, 10] x input range, kernel variances [1e-6, 100] x output variance, rho [-10, 10] and
    the noises [max(floor, 1e-8 x var), max(floor, var)].

    :param data:    Training data
    :type  data:    MfTrainingData

    :param floor:   Lower bound on both noise variances
    :type  floor:   float

    :return:    Parameter box
    :rtype:     ParameterBox
    """

    x_range, _ = data_scales(data.all_states(), data.stacked_y)
    _, var_l2 = data_scales(data.x_l2, data.y_l2)
    var_l1 = data_scales(data.x_l1, data.y_l1)[1] if data.n_l1 else var_l2

    noise_lower1 = max(floor, 1e-8 * var_l1)
    noise_lower2 = max(floor, 1e-8 * var_l2)

    return ParameterBox(
        lower=(1e-6 * var_l1, 0.05 * x_range, 1e-6 * var_l2, 0.05 * x_range, RHO_BOUNDS[0], noise_lower1, noise_lower2),
        upper=(100.0 * var_l1, 10.0 * x_range, 100.0 * var_l2, 10.0 * x_range, RHO_BOUNDS[1],
               max(floor, var_l1), max(floor, var_l2)),
        transforms=(Transform.LOG, Transform.LOG, Transform.LOG, Transform.LOG, Transform.LINEAR,
                    Transform.LOG, Transform.LOG),
        names=("var1", "len1", "var_d", "len_d", "rho", "noise1", "noise2"))


def mf_fit(data, bounds=None, floor=0.0, optimizer_config=None):

    """
    Fit all seven hyperparameters by multi-start NLML minimization.  Both noise variances are held at or
    above `floor` through the search box; restart 0 starts from the box center with rho = 1.

    :param data:                Training data
    :type  data:                MfTrainingData

    :param bounds:              Search box; defaults to default_mf_bounds(data, floor)
    :type  bounds:              ParameterBox

    :param floor:               Variance floor (>= 0)
    :type  floor:               float

    :param optimizer_config:    Multi-start settings
    :type  optimizer_config:    OptimizerConfig

    :return:    Trained model
    :rtype:     TrainedMfGp

    :raises InvalidArgument:
    :raises OptimizationFailed:
    """

    if not (math.isfinite(floor) and floor >= 0):
        raise InvalidArgument(f"Variance floor must be non-negative, got {floor}.")

    if bounds is None:
        bounds = default_mf_bounds(data, floor)
    if bounds.dims != 7:
        raise InvalidArgument("MF-GP bounds must cover (var1, len1, var_d, len_d, rho, noise1, noise2).")
    if bounds.lower[5] < floor or bounds.lower[6] < floor:
        raise InvalidArgument(f"Noise lower bounds must respect the variance floor ({floor}).")

    def objective(p):
        return mf_nlml(data, MfHyperparameters.from_vector(p))

    initial = np.array(bounds.center())
    initial[4] = min(max(RHO_START, bounds.lower[4]), bounds.upper[4])

    result = minimize(objective, bounds, optimizer_config, initial=initial)
    model = TrainedMfGp(data, MfHyperparameters.from_vector(result.argmin), floor)

    logging.info("MF-GP fit on %d L1 + %d L2 points: rho=%g noise1=%g noise2=%g floor=%g nlml=%g",
                 data.n_l1, data.n_l2, model.params.rho, model.params.noise1, model.params.noise2, floor, model.nlml)

    return model


def mf_predict(model, x_star):

    """
    Predictive mean and variance of the noisy L2 observable:
        mean = q^T K^-1 y,  variance = K22(x*, x*) + noise2 - q^T K^-1 q
    with q = [rho g1(x*, x_l1), rho^2 g1(x*, x_l2) + h(x*, x_l2)].  The latent part is clamped at 0, so the
    variance is never below noise2.

    :param model:   Trained model
    :type  model:   TrainedMfGp

    :param x_star:  Probe states
    :type  x_star:  sequence

    :return:    Prediction
    :rtype:     Prediction
    """

    params = model.params
    x_star = as_inputs(x_star)

    cross = _cross_blocks(params, x_star, model.data)
    mean = cross @ model.alpha

    solved = linalg.solve_triangular(model.chol_factor, cross.T, lower=True)
    prior = params.rho ** 2 * params.theta1.variance + params.theta_d.variance
    latent = clamp_variance(prior - np.sum(solved ** 2, axis=0))

    return Prediction(mean=mean, variance=latent + params.noise2)


__all__ = [
    'MfTrainingData',
    'MfHyperparameters',
    'TrainedMfGp',
    'assemble_joint_covariance',
    'mf_nlml',
    'variance_floor',
    'default_mf_bounds',
    'mf_fit',
    'mf_predict',
    'DEFAULT_FLOOR_MULTIPLIER'
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
