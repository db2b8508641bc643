""" *******************************************************************************************************************
|
|  Name        :  _signal.py
|  Module      :  mfgp_shm
|  Description :  Waveform data model, tone bursts, packet extraction, normalization and signal set I/O.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import csv
import json
import logging
import math
import os
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import windows

from .._exceptions import *
from .._params import *


MANIFEST_NAME = "manifest.json"
STATE_UNITS = ["mm", "kN"]
CSV_HEADER = ["sample_index", "amplitude"]


@dataclass(frozen=True, eq=False)
class Signal:

    """ Sampled waveform """

    samples: np.ndarray
    sample_rate: float
    t0: float = 0.0

    def __post_init__(self):
        samples = np.array(self.samples, dtype=float).ravel()
        if samples.size == 0:
            raise InvalidArgument("Signal samples must be non-empty.")
        if not np.all(np.isfinite(samples)):
            raise InvalidArgument("Signal samples must all be finite.")
        if not (math.isfinite(self.sample_rate) and self.sample_rate > 0):
            raise InvalidArgument(f"Sample rate must be positive, got {self.sample_rate}.")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate", float(self.sample_rate))
        object.__setattr__(self, "t0", float(self.t0))

    def __len__(self):
        return self.samples.size

    @property
    def duration(self):
        return self.samples.size / self.sample_rate

    @property
    def energy(self):
        return float(np.sum(self.samples ** 2))

    def with_samples(self, samples):

        """
        Copy of this signal carrying new samples (same sample rate and start time).

        :param samples:     New samples
        :type  samples:     np.ndarray

        :return:    Signal
        :rtype:     Signal
        """

        return Signal(samples, self.sample_rate, self.t0)


@dataclass(frozen=True, eq=False)
class SignalRecord:

    """ One waveform with its path/state/realization/fidelity tags """

    signal: Signal
    path_id: str
    state: float
    realization: int
    fidelity: str

    def __post_init__(self):
        if self.fidelity not in Fidelity.ALL:
            raise InvalidArgument(f"Fidelity provided ({self.fidelity}) is not supported.")
        if int(self.realization) < 0:
            raise InvalidArgument("Realization index must be non-negative.")

    @property
    def key(self):
        return self.path_id, float(self.state), int(self.realization), self.fidelity


@dataclass(eq=False)
class SignalSet:

    """ A collection of signal records plus the manifest they were read from """

    records: list
    manifest: dict = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for record in self.records:
            if record.key in seen:
                raise DataError(f"Duplicate record key {record.key}.")
            seen.add(record.key)

    @property
    def baseline_state(self):

        """ Manifest baseline state, or the minimum state present """

        if self.manifest.get("baseline_state") is not None:
            return float(self.manifest["baseline_state"])
        if not self.records:
            raise DataError("Signal set is empty; no baseline state can be determined.")
        return min(float(r.state) for r in self.records)

    @property
    def state_unit(self):
        return self.manifest.get("state_unit", "mm")

    def path_ids(self):
        return sorted({r.path_id for r in self.records})

    def records_for_path(self, path_id):
        return [r for r in self.records if r.path_id == path_id]


def tone_burst(center_freq, n_peaks, sample_rate, amplitude=1.0):

    """
    Hann-windowed sinusoid of n_peaks cycles, the usual actuation signal for active sensing.

    :param center_freq:     Center frequency (Hz)
    :type  center_freq:     float

    :param n_peaks:         Number of cycles
    :type  n_peaks:         int

    :param sample_rate:     Sample rate (Hz), at least 10x the center frequency
    :type  sample_rate:     float

    :param amplitude:       Peak amplitude bound (V)
    :type  amplitude:       float

    :return:    Tone burst
    :rtype:     Signal

    :raises InvalidArgument:
    """

    if not center_freq > 0:
        raise InvalidArgument("Center frequency must be positive.")
    if int(n_peaks) != n_peaks or n_peaks < 1:
        raise InvalidArgument("Number of peaks must be an integer >= 1.")
    if not sample_rate > 0 or sample_rate < 10 * center_freq:
        raise InvalidArgument(f"Sample rate {sample_rate} Hz undersamples a {center_freq} Hz burst "
                              f"(at least 10x the center frequency is required).")
    if amplitude < 0:
        raise InvalidArgument("Amplitude must be non-negative.")

    n_samples = int(round(n_peaks / center_freq * sample_rate))
    t = np.arange(n_samples) / sample_rate
    samples = amplitude * windows.hann(n_samples) * np.sin(2.0 * np.pi * center_freq * t)

    return Signal(samples, sample_rate)


def extract_first_packet(signal, window_start, window_len, taper=False):

    """
    Clip the window [window_start, window_start + window_len) out of a signal.  Times are absolute (the
    signal's t0 is honored), so extracting the same window twice returns the same packet.

    :param signal:          Signal to clip
    :type  signal:          Signal

    :param window_start:    Window start time (s)
    :type  window_start:    float

    :param window_len:      Window length (s)
    :type  window_len:      float

    :param taper:           Apply a 10% cosine (Tukey) taper to the clipped packet
    :type  taper:           bool

    :return:    Clipped packet
    :rtype:     Signal

    :raises InvalidArgument:
    """

    n_samples = int(round(window_len * signal.sample_rate))
    if n_samples <= 0:
        raise InvalidArgument(f"Window length {window_len} s holds no samples.")

    start = int(round((window_start - signal.t0) * signal.sample_rate))
    if start < 0 or start + n_samples > len(signal):
        raise InvalidArgument(f"Window ({window_start} s, {window_len} s) lies outside the signal extent "
                              f"[{signal.t0} s, {signal.t0 + signal.duration} s).")

    packet = np.array(signal.samples[start:start + n_samples])
    if taper:
        packet = packet * windows.tukey(n_samples, alpha=0.1)

    return Signal(packet, signal.sample_rate, signal.t0 + start / signal.sample_rate)


def normalize_energy(signal):

    """
    Scale a signal to unit energy (sum of squared samples equal to one).

    :param signal:  Signal
    :type  signal:  Signal

    :return:    Unit-energy signal
    :rtype:     Signal

    :raises InvalidArgument:
    """

    energy = signal.energy
    if not energy > 0:
        raise InvalidArgument("Cannot normalize a zero-energy signal.")

    return signal.with_samples(signal.samples / np.sqrt(energy))


def load_signal_set(root_path):

    """
    Read a signal set directory: a manifest.json plus one two-column CSV per waveform.

    :param root_path:   Directory holding manifest.json
    :type  root_path:   str

    :return:    Signal set
    :rtype:     SignalSet

    :raises ManifestError:
    :raises DataError:
    """

    manifest_path = os.path.join(root_path, MANIFEST_NAME)

    try:
        with open(manifest_path, 'r') as manifest_file:
            manifest = json.load(manifest_file)
    except FileNotFoundError:
        raise ManifestError(f"Manifest file not found: {manifest_path}")
    except json.JSONDecodeError as ex:
        raise ManifestError(f"Manifest file {manifest_path} is not valid JSON: {ex}")

    for required in ["sample_rate_hz", "state_unit", "records"]:
        if required not in manifest:
            raise ManifestError(f"Manifest {manifest_path} is missing field '{required}'.")

    if manifest["state_unit"] not in STATE_UNITS:
        raise ManifestError(f"Unsupported state unit '{manifest['state_unit']}' (expected one of {STATE_UNITS}).")

    try:
        sample_rate = float(manifest["sample_rate_hz"])
        if manifest.get("baseline_state") is not None:
            float(manifest["baseline_state"])
    except (TypeError, ValueError):
        raise ManifestError(f"Manifest {manifest_path} has a non-numeric sample_rate_hz or baseline_state.")
    if not sample_rate > 0:
        raise ManifestError("Manifest sample_rate_hz must be positive.")

    records = []
    for entry in manifest["records"]:
        try:
            file_name = entry["file"]
            signal = Signal(read_waveform_csv(os.path.join(root_path, file_name)), sample_rate)
            records.append(SignalRecord(signal=signal,
                                        path_id=str(entry["path_id"]),
                                        state=float(entry["state"]),
                                        realization=int(entry.get("realization", 0)),
                                        fidelity=entry.get("fidelity", Fidelity.L2)))
        except KeyError as ex:
            raise ManifestError(f"Manifest record {entry} is missing field {ex}.")
        except (TypeError, ValueError) as ex:
            raise ManifestError(f"Manifest record {entry} has a non-numeric field: {ex}")
        except InvalidArgument as ex:
            raise DataError(f"Invalid record {entry}: {ex}")

    logging.info("Loaded %d signal records from %s", len(records), root_path)

    return SignalSet(records, manifest)


def read_waveform_csv(filename):

    """
    Read one waveform CSV (header sample_index,amplitude).

    :param filename:    Path to the CSV file
    :type  filename:    str

    :return:    Amplitudes ordered by sample index
    :rtype:     np.ndarray

    :raises DataError:
    """

    indices = []
    amplitudes = []

    try:
        with open(filename, 'r', newline='') as data:
            reader = csv.DictReader(data)
            if reader.fieldnames != CSV_HEADER:
                raise DataError(f"{filename}: expected header {','.join(CSV_HEADER)}, got {reader.fieldnames}.")
            for row_num, row in enumerate(reader, start=2):
                try:
                    index = int(row["sample_index"])
                    amplitude = float(row["amplitude"])
                except (TypeError, ValueError):
                    raise DataError(f"{filename}: malformed row {row_num}: {row}")
                if not math.isfinite(amplitude):
                    raise DataError(f"{filename}: non-finite amplitude at row {row_num}.")
                indices.append(index)
                amplitudes.append(amplitude)
    except FileNotFoundError:
        raise DataError(f"Waveform file not found: {filename}")

    if not amplitudes:
        raise DataError(f"{filename}: no samples.")

    order = np.argsort(indices, kind="stable")

    return np.asarray(amplitudes, dtype=float)[order]


def write_waveform_csv(filename, signal):

    """
    Write one waveform CSV (header sample_index,amplitude; LF line endings).

    :param filename:    Path to write to
    :type  filename:    str

    :param signal:      Signal to write
    :type  signal:      Signal
    """

    with open(filename, 'w', newline='') as csvfile:
        writer = csv.writer(csvfile, lineterminator='\n')
        writer.writerow(CSV_HEADER)
        for index, amplitude in enumerate(signal.samples):
            writer.writerow([index, repr(float(amplitude))])


def write_signal_set(root_path, signal_set):

    """
    Write a signal set as manifest.json plus one CSV per record, readable by load_signal_set.

    :param root_path:       Directory to write to (created if needed)
    :type  root_path:       str

    :param signal_set:      Signal set to write
    :type  signal_set:      SignalSet

    :return:    Path to the manifest
    :rtype:     str

    :raises DataError:
    """

    if not signal_set.records:
        raise DataError("Refusing to write an empty signal set.")

    rates = {r.signal.sample_rate for r in signal_set.records}
    if len(rates) != 1:
        raise DataError(f"A signal set directory holds a single sample rate, found {sorted(rates)}.")

    os.makedirs(root_path, exist_ok=True)

    entries = []
    for record in signal_set.records:
        file_name = f"{record.path_id}_{record.fidelity}_{record.state:g}_{record.realization}.csv"
        write_waveform_csv(os.path.join(root_path, file_name), record.signal)
        entries.append({
            "file": file_name,
            "path_id": record.path_id,
            "state": record.state,
            "realization": record.realization,
            "fidelity": record.fidelity
        })

    manifest = {
        "sample_rate_hz": rates.pop(),
        "baseline_state": signal_set.manifest.get("baseline_state", signal_set.baseline_state),
        "state_unit": signal_set.state_unit,
        "records": entries
    }

    manifest_path = os.path.join(root_path, MANIFEST_NAME)
    with open(manifest_path, 'w') as manifest_file:
        json.dump(manifest, manifest_file, indent=2)

    return manifest_path


__all__ = [
    'Signal',
    'SignalRecord',
    'SignalSet',
    'tone_burst',
    'extract_first_packet',
    'normalize_energy',
    'load_signal_set',
    'read_waveform_csv',
    'write_waveform_csv',
    'write_signal_set',
    'MANIFEST_NAME'
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
