""" Tests for the single-fidelity GP baseline """

import math

import numpy as np
import pytest

import mfgp_shm as mfgp


def dense_nlml(data, params, noise):
    k = params.gram(data.xs, data.xs) + noise * np.eye(len(data))
    sign, logdet = np.linalg.slogdet(k)
    return 0.5 * data.ys @ np.linalg.inv(k) @ data.ys + 0.5 * logdet + 0.5 * len(data) * math.log(2 * math.pi)


class TestStableCholesky:

    def test_plain_factorization_needs_no_jitter(self):
        factor, jitter = mfgp.stable_cholesky(np.array([[2.0, 0.5], [0.5, 1.0]]))
        assert jitter == 0.0
        np.testing.assert_allclose(factor @ factor.T, [[2.0, 0.5], [0.5, 1.0]])

    def test_singular_matrix_gets_jitter(self):
        matrix = np.ones((3, 3))
        factor, jitter = mfgp.stable_cholesky(matrix)
        assert 0.0 < jitter <= 1e-4 * 1.0
        np.testing.assert_allclose(factor @ factor.T, matrix + jitter * np.eye(3), atol=1e-12)

    def test_indefinite_matrix_fails(self):
        with pytest.raises(mfgp.CholeskyError):
            mfgp.stable_cholesky(np.array([[1.0, 0.0], [0.0, -1.0]]))


class TestGpNlml:

    def test_scalar_closed_form(self):
        data = mfgp.GpTrainingData([0.0], [2.0])
        assert mfgp.gp_nlml(data, mfgp.SeKernelParams(1.0, 1.0), 1.0) == pytest.approx(2.26551, abs=1e-5)
        expected = 1.0 + 0.5 * math.log(2.0) + 0.5 * math.log(2.0 * math.pi)
        assert mfgp.gp_nlml(data, mfgp.SeKernelParams(1.0, 1.0), 1.0) == pytest.approx(expected, abs=1e-12)

    def test_zero_targets(self):
        data = mfgp.GpTrainingData([0.0, 0.5, 1.0], [0.0, 0.0, 0.0])
        params = mfgp.SeKernelParams(1.0, 0.4)
        k = params.gram(data.xs, data.xs) + 0.1 * np.eye(3)
        expected = 0.5 * np.linalg.slogdet(k)[1] + 1.5 * math.log(2 * math.pi)
        assert mfgp.gp_nlml(data, params, 0.1) == pytest.approx(expected, abs=1e-12)

    def test_matches_dense_inverse(self):
        data = mfgp.GpTrainingData([0.0, 0.3, 0.8], [0.5, -0.2, 1.1])
        params = mfgp.SeKernelParams(1.2, 0.35)
        assert mfgp.gp_nlml(data, params, 0.05) == pytest.approx(dense_nlml(data, params, 0.05), abs=1e-10)

    def test_negative_noise(self):
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.gp_nlml(mfgp.GpTrainingData([0.0], [1.0]), mfgp.SeKernelParams(1.0, 1.0), -1.0)


class TestGpTrainingData:

    def test_rejects_mismatch_and_empty(self):
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.GpTrainingData([0.0, 1.0], [1.0])
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.GpTrainingData([], [])
        with pytest.raises(mfgp.InvalidArgument):
            mfgp.GpTrainingData([0.0], [np.nan])


class TestGpPredict:

    def test_noiseless_interpolation(self):
        data = mfgp.GpTrainingData([0.0, 0.5, 1.0], [1.0, -0.5, 2.0])
        model = mfgp.TrainedGp(data, mfgp.SeKernelParams(1.0, 0.3), 0.0)
        prediction = mfgp.gp_predict(model, data.xs)
        np.testing.assert_allclose(prediction.mean, data.ys, atol=1e-6)
        assert np.all(prediction.variance <= 1e-6)

    def test_prior_reversion(self):
        data = mfgp.GpTrainingData([0.0, 0.1], [1.0, 1.5])
        model = mfgp.TrainedGp(data, mfgp.SeKernelParams(2.0, 0.1), 0.01)
        prediction = mfgp.gp_predict(model, [100.0])
        assert prediction.mean[0] == pytest.approx(0.0, abs=1e-6)
        assert prediction.variance[0] == pytest.approx(2.01, abs=1e-6)

    def test_antisymmetric_data(self):
        model = mfgp.TrainedGp(mfgp.GpTrainingData([-1.0, 1.0], [1.0, -1.0]), mfgp.SeKernelParams(1.0, 1.0), 0.1)
        assert mfgp.gp_predict(model, [0.0]).mean[0] == pytest.approx(0.0, abs=1e-10)

    def test_variance_bounded_by_prior(self):
        data = mfgp.GpTrainingData(np.linspace(0, 1, 6), np.sin(np.linspace(0, 3, 6)))
        model = mfgp.TrainedGp(data, mfgp.SeKernelParams(1.5, 0.2), 0.02)
        variance = mfgp.gp_predict(model, np.linspace(-1, 2, 100)).variance
        assert np.all(variance <= 1.52 + 1e-8)
        assert np.all(variance >= 0.0)

    def test_adding_a_point_never_increases_variance(self):
        params = mfgp.SeKernelParams(1.0, 0.25)
        probes = np.linspace(0, 1, 100)
        small = mfgp.TrainedGp(mfgp.GpTrainingData([0.0, 1.0], [0.0, 1.0]), params, 0.01)
        large = mfgp.TrainedGp(mfgp.GpTrainingData([0.0, 1.0, 0.45], [0.0, 1.0, 0.3]), params, 0.01)
        assert np.all(mfgp.gp_predict(large, probes).variance <= mfgp.gp_predict(small, probes).variance + 1e-8)

    def test_cholesky_reproduces_covariance(self):
        data = mfgp.GpTrainingData([0.0, 0.2, 0.7], [1.0, 0.0, 0.5])
        model = mfgp.TrainedGp(data, mfgp.SeKernelParams(1.0, 0.3), 0.05)
        k = model.params.gram(data.xs, data.xs) + 0.05 * np.eye(3)
        np.testing.assert_allclose(model.chol_factor @ model.chol_factor.T, k, rtol=1e-8)


class TestGpFit:

    def test_single_point(self, fast_optimizer):
        model = mfgp.gp_fit(mfgp.GpTrainingData([0.5], [1.2]), optimizer_config=fast_optimizer)
        prediction = mfgp.gp_predict(model, [0.5])
        assert abs(prediction.mean[0] - 1.2) <= abs(1.2) * model.noise_variance / (
            model.params.variance + model.noise_variance) + 1e-9

    def test_collapsed_bounds(self):
        data = mfgp.GpTrainingData([0.0, 0.5, 1.0], [0.0, 1.0, 0.0])
        box = mfgp.ParameterBox((0.7, 0.2, 0.01), (0.7, 0.2, 0.01), (mfgp.Transform.LOG,) * 3)
        model = mfgp.gp_fit(data, bounds=box)
        assert model.params.variance == 0.7
        assert model.params.lengthscale == 0.2
        assert model.noise_variance == 0.01

    def test_never_worse_than_box_center(self, fast_optimizer):
        data = mfgp.GpTrainingData(np.linspace(0, 1, 8), np.sin(6 * np.linspace(0, 1, 8)))
        box = mfgp.default_gp_bounds(data)
        center = box.center()
        model = mfgp.gp_fit(data, optimizer_config=fast_optimizer)
        assert model.nlml <= mfgp.gp_nlml(data, mfgp.SeKernelParams(center[0], center[1]), center[2]) + 1e-12

    def test_noise_floor_respected(self, fast_optimizer):
        data = mfgp.GpTrainingData(np.linspace(0, 1, 5), np.linspace(0, 1, 5))
        model = mfgp.gp_fit(data, optimizer_config=fast_optimizer, noise_floor=0.5)
        assert model.noise_variance >= 0.5

    @pytest.mark.slow
    def test_recovers_lengthscale(self):
        for seed in range(5):
            rng = np.random.default_rng(seed)
            xs = np.sort(rng.uniform(0, 1, 40))
            truth = mfgp.SeKernelParams(1.0, 0.2)
            k = truth.gram(xs, xs) + 0.01 * np.eye(40)
            ys = np.linalg.cholesky(k + 1e-10 * np.eye(40)) @ rng.normal(size=40)
            model = mfgp.gp_fit(mfgp.GpTrainingData(xs, ys), optimizer_config=mfgp.OptimizerConfig(seed=seed))
            assert 0.1 <= model.params.lengthscale <= 0.4

    def test_json_round_trip(self):
        data = mfgp.GpTrainingData([0.0, 0.5], [1.0, 2.0])
        model = mfgp.TrainedGp(data, mfgp.SeKernelParams(1.0, 0.3), 0.01)
        restored = mfgp.TrainedGp.from_json(model.to_json())
        np.testing.assert_allclose(restored.predict([0.25]).mean, model.predict([0.25]).mean, rtol=1e-12)
