""" Tests for waveform types, tone bursts, packet extraction and signal-set ingestion """

import json
import os

import numpy as np
import pytest

import mfgp_shm as mfgp


class TestSignal:

    def test_rejects_empty_and_non_finite(self):
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.Signal([], 1e6)
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.Signal([0.0, np.nan], 1e6)
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.Signal([1.0], 0.0)

    def test_samples_are_read_only(self):
        signal = mfgp.Signal([1.0, 2.0], 1e6)
        with pytest.raises(ValueError):
            signal.samples[0] = 5.0

    def test_record_rejects_unknown_fidelity(self):
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.SignalRecord(mfgp.Signal([1.0], 1e6), "1-4", 0.0, 0, "L3")

    def test_duplicate_keys_rejected(self):
        signal = mfgp.Signal([1.0], 1e6)
        record = mfgp.SignalRecord(signal, "1-4", 0.0, 0, mfgp.Fidelity.L2)
        with pytest.raises(mfgp.DataError):
            mfgp.SignalSet([record, mfgp.SignalRecord(signal, "1-4", 0.0, 0, mfgp.Fidelity.L2)])


class TestToneBurst:

    def test_length_and_peak(self):
        burst = mfgp.tone_burst(100e3, 5, 24e6, 1.0)
        assert len(burst) == 1200
        assert np.max(np.abs(burst.samples)) <= 1.0

    def test_zero_amplitude(self):
        burst = mfgp.tone_burst(100e3, 5, 24e6, 0.0)
        assert np.all(burst.samples == 0.0)

    def test_linear_in_amplitude(self):
        one = mfgp.tone_burst(100e3, 5, 24e6, 1.0)
        two = mfgp.tone_burst(100e3, 5, 24e6, 2.0)
        np.testing.assert_allclose(two.samples, 2.0 * one.samples, rtol=0, atol=1e-15)

    @pytest.mark.parametrize("args", [(0.0, 5, 24e6), (100e3, 0, 24e6), (100e3, 5, 5e5)])
    def test_invalid_arguments(self, args):
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.tone_burst(*args)


class TestExtractFirstPacket:

    def test_full_window_is_identity(self, burst):
        packet = mfgp.extract_first_packet(burst, 0.0, burst.duration)
        np.testing.assert_array_equal(packet.samples, burst.samples)
        assert packet.sample_rate == burst.sample_rate

    def test_index_arithmetic(self):
        signal = mfgp.Signal(np.arange(1000, dtype=float), 1e6)
        packet = mfgp.extract_first_packet(signal, 100e-6, 200e-6)
        np.testing.assert_array_equal(packet.samples, np.arange(100, 300, dtype=float))

    def test_zero_length_window(self, burst):
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.extract_first_packet(burst, 0.0, 0.0)

    def test_window_outside_signal(self, burst):
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.extract_first_packet(burst, burst.duration / 2, burst.duration)

    def test_repeat_extraction_is_idempotent(self):
        signal = mfgp.Signal(np.sin(np.arange(1000) / 7.0), 1e6)
        once = mfgp.extract_first_packet(signal, 100e-6, 200e-6)
        twice = mfgp.extract_first_packet(once, 100e-6, 200e-6)
        np.testing.assert_array_equal(once.samples, twice.samples)

    def test_taper_zeroes_edges(self):
        signal = mfgp.Signal(np.ones(1000), 1e6)
        packet = mfgp.extract_first_packet(signal, 100e-6, 200e-6, taper=True)
        assert packet.samples[0] == pytest.approx(0.0, abs=1e-12)
        assert packet.samples[100] == pytest.approx(1.0)


class TestNormalizeEnergy:

    def test_three_four(self):
        np.testing.assert_allclose(mfgp.normalize_energy(mfgp.Signal([3.0, 4.0], 1.0)).samples, [0.6, 0.8])

    def test_unit_energy_and_idempotence(self, burst):
        once = mfgp.normalize_energy(burst)
        assert once.energy == pytest.approx(1.0, abs=1e-12)
        np.testing.assert_allclose(mfgp.normalize_energy(once).samples, once.samples, atol=1e-12)

    def test_scale_invariance(self, burst):
        scaled = burst.with_samples(7.5 * burst.samples)
        np.testing.assert_allclose(mfgp.normalize_energy(scaled).samples, mfgp.normalize_energy(burst).samples,
                                   atol=1e-12)

    def test_zero_energy(self):
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.normalize_energy(mfgp.Signal([0.0, 0.0], 1.0))


class TestLoadSignalSet:

    def test_round_trip(self, tmp_path, burst):
        records = [mfgp.SignalRecord(burst, "1-4", 0.0, 0, mfgp.Fidelity.L2),
                   mfgp.SignalRecord(burst.with_samples(0.5 * burst.samples), "1-4", 2.0, 0, mfgp.Fidelity.L2)]
        mfgp.write_signal_set(str(tmp_path), mfgp.SignalSet(records, {"state_unit": "mm"}))

        loaded = mfgp.load_signal_set(str(tmp_path))
        assert len(loaded.records) == 2
        assert loaded.baseline_state == 0.0
        assert loaded.state_unit == "mm"
        by_state = {r.state: r for r in loaded.records}
        np.testing.assert_array_equal(by_state[2.0].signal.samples, 0.5 * burst.samples)

    def test_missing_manifest(self, tmp_path):
        with pytest.raises(mfgp.ManifestError):
            mfgp.load_signal_set(str(tmp_path))

    def test_missing_file_named(self, tmp_path):
        manifest = {"sample_rate_hz": 1e6, "state_unit": "mm",
                    "records": [{"file": "absent.csv", "path_id": "1-4", "state": 0.0}]}
        with open(os.path.join(tmp_path, "manifest.json"), 'w') as outfile:
            json.dump(manifest, outfile)
        with pytest.raises(mfgp.DataError, match="absent.csv"):
            mfgp.load_signal_set(str(tmp_path))

    def test_nan_row_reported(self, tmp_path):
        with open(os.path.join(tmp_path, "w.csv"), 'w') as outfile:
            outfile.write("sample_index,amplitude\n0,1.0\n1,NaN\n")
        with pytest.raises(mfgp.DataError, match="row 3"):
            mfgp.read_waveform_csv(os.path.join(tmp_path, "w.csv"))

    def test_bad_state_unit(self, tmp_path):
        with open(os.path.join(tmp_path, "manifest.json"), 'w') as outfile:
            json.dump({"sample_rate_hz": 1e6, "state_unit": "inch", "records": []}, outfile)
        with pytest.raises(mfgp.ManifestError):
            mfgp.load_signal_set(str(tmp_path))
