""" *******************************************************************************************************************
|
|  Name        :  _damage_index.py
|  Module      :  mfgp_shm
|  Description :  Damage indices from baseline/unknown signal pairs and fidelity-tagged DI datasets.
|  Copyright   :  2026 mfgp_shm contributors
|  License     :  Apache-2.0 (https://www.apache.org/licenses/LICENSE-2.0.txt)
|
******************************************************************************************************************* """

import csv
import logging
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np

from .._exceptions import *
from .._params import *
from .._signal import Signal, extract_first_packet, normalize_energy


DI_CSV_HEADER = ["state", "value", "fidelity", "path_id", "realization"]


@dataclass(frozen=True)
class DiValue:

    """ A single damage index observation """

    state: float
    value: float
    fidelity: str
    path_id: str = ""
    realization: int = 0

    def __post_init__(self):
        if self.fidelity not in Fidelity.ALL:
            raise InvalidArgument(f"Fidelity provided ({self.fidelity}) is not supported.")
        if not np.isfinite(self.value):
            raise InvalidArgument(f"DI value must be finite, got {self.value}.")


class DiDataset:

    """ DiDataset class """

    def __init__(self, points, di_kind):

        """
        Initialize DiDataset.

        :param points:      DI observations
        :type  points:      list

        :param di_kind:     DI kind the values were computed with (DiKind.JANAPATI, DiKind.RMSD,
                                                                      DiKind.SYNTHETIC)
        :type  di_kind:     str

        :raises InvalidArgument:
        """

        if di_kind not in DiKind.ALL:
            raise InvalidArgument(f"DI kind provided ({di_kind}) is not supported.")

        self.points = list(points)
        self.di_kind = di_kind

        #  Signal-derived DIs are non-negative; generator output is not.
        if di_kind in DiKind.SIGNAL_KINDS:
            for point in self.points:
                if point.value < 0:
                    raise InvalidArgument(f"{di_kind} DI values must be non-negative, got {point.value} "
                                          f"at state {point.state}.")

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def subset(self, fidelity=None, states=None):

        """
        Points filtered by fidelity and/or a collection of states.

        :param fidelity:    Fidelity to keep (None keeps both)
        :type  fidelity:    str

        :param states:      States to keep (None keeps all)
        :type  states:      list

        :return:    Filtered dataset
        :rtype:     DiDataset
        """

        kept = []
        state_set = None if states is None else {float(s) for s in states}
        for point in self.points:
            if fidelity is not None and point.fidelity != fidelity:
                continue
            if state_set is not None and float(point.state) not in state_set:
                continue
            kept.append(point)

        return DiDataset(kept, self.di_kind)

    def arrays(self, fidelity=None):

        """
        States and values as float arrays.

        :param fidelity:    Fidelity to keep (None keeps both)
        :type  fidelity:    str

        :return:    (states, values)
        :rtype:     tuple
        """

        chosen = self.subset(fidelity=fidelity).points

        return (np.array([p.state for p in chosen], dtype=float),
                np.array([p.value for p in chosen], dtype=float))

    def states(self, fidelity=None):
        return sorted({float(p.state) for p in self.points if fidelity is None or p.fidelity == fidelity})

    def values_by_state(self, fidelity=Fidelity.L2):

        """
        Group DI values by state.

        :param fidelity:    Fidelity to group
        :type  fidelity:    str

        :return:    state -> list of values, ordered by state
        :rtype:     OrderedDict
        """

        grouped = OrderedDict()
        for state in self.states(fidelity):
            grouped[state] = [p.value for p in self.points if p.fidelity == fidelity and float(p.state) == state]

        return grouped

    def state_summary(self):

        """
        Per-fidelity, per-state mean and sample variance (ddof=1, zero for single realizations).

        :return:    JSON-ready summary
        :rtype:     dict
        """

        summary = {"di_kind": self.di_kind, "states": []}
        for fidelity in Fidelity.ALL:
            for state, values in self.values_by_state(fidelity).items():
                summary["states"].append({
                    "fidelity": fidelity,
                    "state": state,
                    "count": len(values),
                    "mean": float(np.mean(values)),
                    "variance": float(np.var(values, ddof=1)) if len(values) > 1 else 0.0
                })

        return summary

    def to_csv(self, filename):

        """
        Write the dataset (header state,value,fidelity,path_id,realization).

        :param filename:    Path to write to
        :type  filename:    str
        """

        with open(filename, 'w', newline='') as csvfile:
            writer = csv.writer(csvfile, lineterminator='\n')
            writer.writerow(DI_CSV_HEADER)
            for point in self.points:
                writer.writerow([repr(float(point.state)), repr(float(point.value)), point.fidelity,
                                 point.path_id, point.realization])

    @staticmethod
    def from_csv(filename, di_kind):

        """
        Read a dataset written by to_csv.

        :param filename:    Path to read
        :type  filename:    str

        :param di_kind:     DI kind of the values
        :type  di_kind:     str

        :return:    Dataset
        :rtype:     DiDataset

        :raises DataError:
        """

        points = []

        try:
            with open(filename, 'r', newline='') as data:
                reader = csv.DictReader(data)
                if reader.fieldnames != DI_CSV_HEADER:
                    raise DataError(f"{filename}: expected header {','.join(DI_CSV_HEADER)}, got {reader.fieldnames}.")
                for row_num, row in enumerate(reader, start=2):
                    try:
                        points.append(DiValue(state=float(row["state"]),
                                              value=float(row["value"]),
                                              fidelity=row["fidelity"],
                                              path_id=row["path_id"],
                                              realization=int(row["realization"])))
                    except (TypeError, ValueError) as ex:
                        raise DataError(f"{filename}: malformed row {row_num}: {ex}")
        except FileNotFoundError:
            raise DataError(f"DI dataset file not found: {filename}")

        try:
            return DiDataset(points, di_kind)
        except InvalidArgument as ex:
            raise DataError(f"{filename}: {ex}")


def _paired_unit_energy(baseline, unknown, min_length):

    if len(baseline) != len(unknown):
        raise InvalidArgument(f"Signal lengths differ ({len(baseline)} vs {len(unknown)}).")
    if len(baseline) < min_length:
        raise InvalidArgument(f"Signals need at least {min_length} samples.")

    return normalize_energy(baseline).samples, normalize_energy(unknown).samples


def di_janapati(baseline, unknown):

    """
    Damage index sensitive to damage growth: energy of the part of the normalized unknown signal that
    the baseline direction does not explain.  Both inputs are energy-normalized first.

    :param baseline:    Healthy-state signal
    :type  baseline:    Signal

    :param unknown:     Unknown-state signal
    :type  unknown:     Signal

    :return:    DI in [0, 1]
    :rtype:     float

    :raises InvalidArgument:
    """

    y0, yu = _paired_unit_energy(baseline, unknown, 2)

    projection = (np.dot(y0, yu) / np.dot(y0, y0)) * y0

    return float(np.sum((yu - projection) ** 2))


def di_rmsd(baseline, unknown):

    """
    Root-mean-square deviation between the energy-normalized baseline and unknown signals.

    :param baseline:    Healthy-state signal
    :type  baseline:    Signal

    :param unknown:     Unknown-state signal
    :type  unknown:     Signal

    :return:    DI
    :rtype:     float

    :raises InvalidArgument:
    """

    y0, yu = _paired_unit_energy(baseline, unknown, 1)

    return float(np.sqrt(np.sum((y0 - yu) ** 2) / y0.size))


DI_FUNCTIONS = {
    DiKind.JANAPATI: di_janapati,
    DiKind.RMSD: di_rmsd
}


def build_di_dataset(signals, path_id, di_kind, packet_window=None, taper=False):

    """
    One DiValue per record on a path, each compared against the designated baseline: realization 0 at
    the baseline state of the same fidelity (the L2 baseline when that fidelity has none).  The designated
    baseline itself contributes a zero DI.

    :param signals:         Signal set
    :type  signals:         SignalSet

    :param path_id:         Path to process
    :type  path_id:         str

    :param di_kind:         DI kind (DiKind.JANAPATI, DiKind.RMSD)
    :type  di_kind:         str

    :param packet_window:   Optional (window_start, window_len) in seconds applied before the DI
    :type  packet_window:   tuple

    :param taper:           Taper the clipped packet
    :type  taper:           bool

    :return:    DI dataset
    :rtype:     DiDataset

    :raises DataError:
    :raises InvalidArgument:
    """

    if di_kind not in DI_FUNCTIONS:
        raise InvalidArgument(f"DI kind provided ({di_kind}) is not supported.")

    records = signals.records_for_path(path_id)
    if not records:
        raise DataError(f"No records found for path {path_id}.")

    rates = {r.signal.sample_rate for r in records}
    if len(rates) > 1:
        raise DataError(f"Path {path_id} mixes sample rates {sorted(rates)}.")

    baseline_state = signals.baseline_state
    baselines = {}
    for fidelity in Fidelity.ALL:
        candidates = [r for r in records if r.fidelity == fidelity and float(r.state) == baseline_state]
        if candidates:
            baselines[fidelity] = min(candidates, key=lambda r: r.realization)

    if not baselines:
        raise DataError(f"No baseline record at state {baseline_state} for path {path_id}.")

    def packet(signal):
        if packet_window is None:
            return signal
        return extract_first_packet(signal, packet_window[0], packet_window[1], taper=taper)

    di_function = DI_FUNCTIONS[di_kind]
    points = []
    ordered = sorted(records, key=lambda r: (r.fidelity, r.state, r.realization))
    for record in ordered:
        reference = baselines.get(record.fidelity, baselines.get(Fidelity.L2, next(iter(baselines.values()))))
        value = di_function(packet(reference.signal), packet(record.signal))
        points.append(DiValue(state=float(record.state), value=value, fidelity=record.fidelity,
                              path_id=path_id, realization=int(record.realization)))

    logging.info("Built %d %s DIs for path %s", len(points), di_kind, path_id)

    return DiDataset(points, di_kind)


__all__ = [
    'DiValue',
    'DiDataset',
    'di_janapati',
    'di_rmsd',
    'build_di_dataset',
    'DI_CSV_HEADER'
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
