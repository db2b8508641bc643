""" *******************************************************************************************************************
|
|  Name        :  _load_compensation.py
|  Module      :  mfgp_shm
|  Description :  Physics-based reconstruction of first wave packets under mechanical load.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import json
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import linalg

from .._exceptions import *
from .._signal import Signal


DEFAULT_TAPS = 8
DEFAULT_KAISER_BETA = 5.0
DEFAULT_MOMENT_ORDER = 5


@dataclass(frozen=True)
class CompensationModel:

    """ Amplitude (A, B) and time-of-arrival (K_phase) constants plus path segment lengths (m) """

    a_coeff: float
    b_coeff: float
    k_phase: float
    segment_lengths: tuple

    def __post_init__(self):
        lengths = tuple(float(d) for d in self.segment_lengths)
        if not lengths or any(not (math.isfinite(d) and d > 0) for d in lengths):
            raise InvalidArgument("Segment lengths must be a non-empty sequence of positive values.")
        for name in ["a_coeff", "b_coeff", "k_phase"]:
            if not math.isfinite(getattr(self, name)):
                raise InvalidArgument(f"Compensation coefficient {name} must be finite.")
        object.__setattr__(self, "segment_lengths", lengths)

    def to_json(self):
        return {"a": self.a_coeff, "b": self.b_coeff, "k_phase": self.k_phase,
                "segment_lengths": list(self.segment_lengths)}

    @staticmethod
    def from_json(data):
        try:
            return CompensationModel(float(data["a"]), float(data["b"]), float(data["k_phase"]),
                                     tuple(data["segment_lengths"]))
        except KeyError as ex:
            raise DataError(f"Compensation model JSON is missing field {ex}.")
        except (TypeError, ValueError) as ex:
            raise DataError(f"Compensation model JSON has a non-numeric field: {ex}")

    def save(self, filename):
        with open(filename, 'w') as model_file:
            json.dump(self.to_json(), model_file, indent=2)

    @staticmethod
    def load(filename):
        try:
            with open(filename, 'r') as model_file:
                return CompensationModel.from_json(json.load(model_file))
        except FileNotFoundError:
            raise DataError(f"Compensation model file not found: {filename}")
        except json.JSONDecodeError as ex:
            raise DataError(f"Compensation model file {filename} is not valid JSON: {ex}")


@dataclass(frozen=True)
class StrainState:

    """ Strain at the actuator, at the sensor and averaged over each path segment """

    eps_actuator: float
    eps_sensor: float
    eps_segments: tuple

    def __post_init__(self):
        object.__setattr__(self, "eps_segments", tuple(float(e) for e in self.eps_segments))

    @staticmethod
    def uniform(load, strain_per_load, n_segments):

        """
        Uniform strain proportional to load everywhere on the path.

        :param load:                Load (kN)
        :type  load:                float

        :param strain_per_load:     Strain per unit load
        :type  strain_per_load:     float

        :param n_segments:          Number of path segments
        :type  n_segments:          int

        :return:    Strain state
        :rtype:     StrainState
        """

        eps = float(load) * float(strain_per_load)
        return StrainState(eps, eps, (eps,) * int(n_segments))

    def negated(self):
        return StrainState(-self.eps_actuator, -self.eps_sensor, tuple(-e for e in self.eps_segments))


def _check_pairing(model, strain):
    if len(strain.eps_segments) != len(model.segment_lengths):
        raise InvalidArgument(f"Strain state has {len(strain.eps_segments)} segments, "
                              f"model has {len(model.segment_lengths)}.")


def amplitude_ratio(model, strain):

    """
    Relative output-voltage factor 1 + A*eps_act + B*eps_sen.

    :param model:   Compensation model
    :type  model:   CompensationModel

    :param strain:  Strain state
    :type  strain:  StrainState

    :return:    Amplitude ratio
    :rtype:     float
    """

    _check_pairing(model, strain)

    return 1.0 + model.a_coeff * strain.eps_actuator + model.b_coeff * strain.eps_sensor


def delta_toa(model, strain):

    """
    Net change of time of arrival, K_phase * sum_i d_i * eps_i, in seconds.

    :param model:   Compensation model
    :type  model:   CompensationModel

    :param strain:  Strain state
    :type  strain:  StrainState

    :return:    Time-of-arrival change (s)
    :rtype:     float
    """

    _check_pairing(model, strain)

    return model.k_phase * float(np.dot(model.segment_lengths, strain.eps_segments))


def _kaiser(offsets, half_width, beta):
    ratio = np.clip(offsets / half_width, -1.0, 1.0)
    return np.i0(beta * np.sqrt(1.0 - ratio ** 2)) / np.i0(beta)


def shift_weights(fraction, taps=DEFAULT_TAPS, beta=DEFAULT_KAISER_BETA, moment_order=DEFAULT_MOMENT_ORDER):

    """
    Interpolation weights for taps j = -taps/2 + 1 .. taps/2 at a point `fraction` samples past tap 0.
    The Kaiser-windowed sinc weights get the minimum-norm correction that makes them sum to 1 and
    cancel the moments sum_j w_j (j - fraction)^k for k = 1 .. moment_order, so polynomial content up to
    that order is reproduced exactly.

    :param fraction:        Position between taps, in [0, 1)
    :type  fraction:        float

    :param taps:            Interpolation taps (even, >= 2)
    :type  taps:            int

    :param beta:            Kaiser window shape
    :type  beta:            float

    :param moment_order:    Highest cancelled moment, below taps
    :type  moment_order:    int

    :return:    Tap weights
    :rtype:     np.ndarray

    :raises InvalidArgument:
    """

    if taps < 2 or taps % 2:
        raise InvalidArgument(f"Interpolation taps must be even and at least 2, got {taps}.")
    if not 0 <= moment_order < taps:
        raise InvalidArgument(f"Moment order must lie in [0, {taps - 1}], got {moment_order}.")

    half = taps // 2
    offsets = fraction - np.arange(-half + 1, half + 1)
    weights = np.sinc(offsets) * _kaiser(offsets, half, beta)

    # moment constraints on offsets scaled to [-1, 1]
    vander = np.vander(-offsets / half, moment_order + 1, increasing=True).T
    target = np.zeros(moment_order + 1)
    target[0] = 1.0
    correction, _, _, _ = linalg.lstsq(vander, target - vander @ weights)

    return weights + correction


def fractional_shift(samples, shift, taps=DEFAULT_TAPS, beta=DEFAULT_KAISER_BETA,
                     moment_order=DEFAULT_MOMENT_ORDER):

    """
    Delay samples by a (possibly fractional) number of samples with moment-corrected Kaiser-windowed sinc
    interpolation (see shift_weights). Samples shifted in from outside the record are zero.

    :param samples:         Samples to delay
    :type  samples:         np.ndarray

    :param shift:           Delay in samples (negative advances)
    :type  shift:           float

    :param taps:            Interpolation taps (even)
    :type  taps:            int

    :param beta:            Kaiser window shape
    :type  beta:            float

    :param moment_order:    Highest cancelled moment
    :type  moment_order:    int

    :return:    Delayed samples, same length
    :rtype:     np.ndarray
    """

    samples = np.asarray(samples, dtype=float)
    n_samples = samples.size
    half = taps // 2

    lead = math.floor(-shift)
    weights = shift_weights(-shift - lead, taps=taps, beta=beta, moment_order=moment_order)
    base = np.arange(n_samples) + lead
    out = np.zeros(n_samples)

    for weight, j in zip(weights, range(-half + 1, half + 1)):
        index = base + j
        valid = (index >= 0) & (index < n_samples)
        out[valid] += weight * samples[index[valid]]

    return out


def reconstruct(model, baseline_packet, strain, taps=DEFAULT_TAPS, beta=DEFAULT_KAISER_BETA):

    """
    Reconstruct the first wave packet under load: scale the baseline packet by the amplitude ratio and
    delay it by the time-of-arrival change.

    :param model:               Compensation model
    :type  model:               CompensationModel

    :param baseline_packet:     Unloaded first wave packet
    :type  baseline_packet:     Signal

    :param strain:              Strain state
    :type  strain:              StrainState

    :return:    Reconstructed packet, same length and sample rate
    :rtype:     Signal

    :raises InvalidArgument:
    """

    ratio = amplitude_ratio(model, strain)
    shift = delta_toa(model, strain) * baseline_packet.sample_rate

    if abs(shift) >= len(baseline_packet):
        raise InvalidArgument(f"Time-of-arrival shift of {shift:.3f} samples exceeds the packet length "
                              f"({len(baseline_packet)} samples).")

    if shift == 0.0:
        return baseline_packet.with_samples(ratio * baseline_packet.samples)

    shifted = fractional_shift(baseline_packet.samples, shift, taps=taps, beta=beta)

    return baseline_packet.with_samples(ratio * shifted)


def calibrate(pairs, segment_lengths):

    """
    Least-squares fit of A and B from observed amplitude ratios and of K_phase from observed
    time-of-arrival changes.

    :param pairs:               (StrainState, observed amplitude ratio, observed delta ToA) triples
    :type  pairs:               list

    :param segment_lengths:     Path segment lengths (m)
    :type  segment_lengths:     list

    :return:    Calibrated model
    :rtype:     CompensationModel

    :raises RankDeficientError:
    :raises InvalidArgument:
    """

    pairs = list(pairs)
    lengths = np.asarray(segment_lengths, dtype=float)

    if len(pairs) < 2:
        raise RankDeficientError(f"At least 2 strain states are needed to fit A and B, got {len(pairs)}.")

    for strain, _, _ in pairs:
        if len(strain.eps_segments) != lengths.size:
            raise InvalidArgument("Every strain state must carry one strain value per path segment.")

    design = np.array([[s.eps_actuator, s.eps_sensor] for s, _, _ in pairs])
    target = np.array([ratio - 1.0 for _, ratio, _ in pairs])

    coeffs, _, rank, _ = linalg.lstsq(design, target)
    if rank < 2:
        raise RankDeficientError("Strain states are not linearly independent in (actuator, sensor) strain.")

    path_strain = np.array([np.dot(lengths, s.eps_segments) for s, _, _ in pairs])
    toa = np.array([dt for _, _, dt in pairs])
    denominator = float(np.dot(path_strain, path_strain))
    if denominator == 0.0:
        raise RankDeficientError("All strain states have zero path strain; K_phase is not identifiable.")

    model = CompensationModel(float(coeffs[0]), float(coeffs[1]), float(np.dot(path_strain, toa) / denominator),
                              tuple(lengths))

    amplitude_rms, toa_rms = calibration_residuals(model, pairs)
    logging.info("Calibrated compensation model A=%g B=%g K_phase=%g (residual RMS: amplitude %g, ToA %g s)",
                 model.a_coeff, model.b_coeff, model.k_phase, amplitude_rms, toa_rms)

    return model


def calibration_residuals(model, pairs):

    """
    RMS residuals of the amplitude and time-of-arrival relations over calibration pairs.

    :param model:   Compensation model
    :type  model:   CompensationModel

    :param pairs:   (StrainState, observed amplitude ratio, observed delta ToA) triples
    :type  pairs:   list

    :return:    (amplitude residual RMS, ToA residual RMS in s)
    :rtype:     tuple
    """

    amplitude = [amplitude_ratio(model, s) - ratio for s, ratio, _ in pairs]
    toa = [delta_toa(model, s) - dt for s, _, dt in pairs]

    return float(np.sqrt(np.mean(np.square(amplitude)))), float(np.sqrt(np.mean(np.square(toa))))


__all__ = [
    'CompensationModel',
    'StrainState',
    'amplitude_ratio',
    'delta_toa',
    'shift_weights',
    'fractional_shift',
    'reconstruct',
    'calibrate',
    'calibration_residuals'
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
