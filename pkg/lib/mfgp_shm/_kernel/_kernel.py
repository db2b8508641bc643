""" *******************************************************************************************************************
|
|  Name        :  _kernel.py
|  Module      :  mfgp_shm
|  Description :  Squared exponential covariance and Gram matrix assembly.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import math
from dataclasses import dataclass

import numpy as np
from scipy.spatial.distance import cdist

from .._exceptions import *


def as_inputs(xs):

    """
    Inputs as an (n, d) float array; scalar states become a single column.

    :param xs:  States
    :type  xs:  sequence

    :return:    (n, d) array
    :rtype:     np.ndarray
    """

    xs = np.asarray(xs, dtype=float)
    if xs.ndim == 0:
        xs = xs.reshape(1, 1)
    elif xs.ndim == 1:
        xs = xs.reshape(-1, 1)

    return xs


@dataclass(frozen=True)
class SeKernelParams:

    """ Output variance and lengthscale of a squared exponential kernel """

    variance: float
    lengthscale: float

    def __post_init__(self):
        for name in ["variance", "lengthscale"]:
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidArgument(f"Kernel {name} must be positive and finite, got {value}.")
        object.__setattr__(self, "variance", float(self.variance))
        object.__setattr__(self, "lengthscale", float(self.lengthscale))

    def gram(self, xs, xs_prime):
        return gram(xs, xs_prime, self)

    def prior_variance(self):
        return self.variance

    def to_json(self):
        return {"variance": self.variance, "lengthscale": self.lengthscale}

    @staticmethod
    def from_json(data):
        return SeKernelParams(float(data["variance"]), float(data["lengthscale"]))


class CompositeSeKernel:

    """ Weighted sum of squared exponential kernels: sum_i w_i * k_i """

    def __init__(self, terms):

        """
        Initialize CompositeSeKernel

        :param terms:   (weight, SeKernelParams) pairs; weights non-negative
        :type  terms:   list
        """

        self.terms = [(float(w), p) for w, p in terms]
        if not self.terms or any(w < 0 for w, _ in self.terms):
            raise InvalidArgument("A composite kernel needs at least one term with non-negative weight.")

    def gram(self, xs, xs_prime):
        total = None
        for weight, params in self.terms:
            block = weight * gram(xs, xs_prime, params)
            total = block if total is None else total + block
        return total

    def prior_variance(self):
        return sum(weight * params.variance for weight, params in self.terms)


def se_kernel(x, x_prime, params):

    """
    sigma^2 * exp(-|x - x'|^2 / (2 l^2))

    :param x:           State
    :type  x:           float

    :param x_prime:     State
    :type  x_prime:     float

    :param params:      Kernel parameters
    :type  params:      SeKernelParams

    :return:    Covariance
    :rtype:     float
    """

    diff = np.atleast_1d(np.asarray(x, dtype=float)) - np.atleast_1d(np.asarray(x_prime, dtype=float))

    return params.variance * math.exp(-float(np.dot(diff, diff)) / (2.0 * params.lengthscale ** 2))


def gram(xs, xs_prime, params):

    """
    Matrix of se_kernel(xs[i], xs_prime[j]).

    :param xs:          States
    :type  xs:          sequence

    :param xs_prime:    States
    :type  xs_prime:    sequence

    :param params:      Kernel parameters
    :type  params:      SeKernelParams

    :return:    len(xs) x len(xs_prime) matrix
    :rtype:     np.ndarray
    """

    a = as_inputs(xs)
    b = as_inputs(xs_prime)
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((a.shape[0], b.shape[0]))

    sq_dist = cdist(a, b, metric="sqeuclidean")

    return params.variance * np.exp(-sq_dist / (2.0 * params.lengthscale ** 2))


__all__ = [
    'SeKernelParams',
    'CompositeSeKernel',
    'se_kernel',
    'gram',
    'as_inputs'
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
