from unittest import mock

import numpy as np
from django.test import SimpleTestCase, tag

from noisywires.apps.core.exceptions import (
    CouplingBoundError,
    NumericalBlowupError,
    SimConfigError,
    SingularityError,
    ValidationException,
)
from noisywires.apps.langevin.oracle import (
    RNG_ALGORITHM,
    LangevinEstimate,
    SimConfig,
    equipartition_covariance,
    oracle_force,
    replica_seeds,
    simulate_correlator,
)
from noisywires.apps.langevin.statistics import batch_means


def quick_config(**overrides) -> SimConfig:
    values = dict(L=1.0, M=0.5, R=1.0, kT=1.0, dt=0.01, n_steps=200_000, burn_in=1_000, seed=3, n_replicas=2)
    values.update(overrides)
    return SimConfig(**values)


class EquipartitionTests(SimpleTestCase):
    def test_covariance(self):
        cov = equipartition_covariance(1.0, 0.5, 2.0)
        np.testing.assert_allclose(cov, [[8.0 / 3.0, -4.0 / 3.0], [-4.0 / 3.0, 8.0 / 3.0]])

    def test_singular(self):
        with self.assertRaises(SingularityError):
            equipartition_covariance(1.0, -1.0, 1.0)


class SimConfigTests(SimpleTestCase):
    def test_valid(self):
        config = quick_config()
        self.assertEqual(config.batch_length, 4_000)
        self.assertEqual(config.as_dict()["seed"], 3)

    def test_step_must_resolve_relaxation(self):
        with self.assertRaises(SimConfigError):
            quick_config(dt=0.2)

    def test_step_must_resolve_fast_mode(self):
        with self.assertRaises(SimConfigError):
            quick_config(M=0.95, dt=0.06, n_steps=1_000_000, burn_in=10_000)

    def test_run_length_and_burn_in(self):
        with self.assertRaises(SimConfigError):
            quick_config(n_steps=900)
        with self.assertRaises(SimConfigError):
            quick_config(burn_in=100)

    def test_batches(self):
        with self.assertRaises(SimConfigError):
            quick_config(n_batches=10)

    def test_coupling_bound(self):
        with self.assertRaises(CouplingBoundError):
            quick_config(M=1.0)

    def test_collects_all_violations(self):
        with self.assertRaises(SimConfigError) as ctx:
            quick_config(n_steps=900, burn_in=100)
        self.assertEqual({d.field for d in ctx.exception.details}, {"n_steps", "burn_in"})

    def test_from_settings_overrides(self):
        config = SimConfig.from_settings(L=1.0, M=0.8, R=0.1, kT=1.0, seed=9, n_replicas=None)
        self.assertEqual(config.seed, 9)
        self.assertEqual(config.dt, 0.01)


class BatchMeansTests(SimpleTestCase):
    def test_mean_and_stderr(self):
        moments = batch_means(np.array([[1.0, 0.0], [3.0, 0.0]]))
        np.testing.assert_allclose(moments.mean, [2.0, 0.0])
        np.testing.assert_allclose(moments.stderr, [1.0, 0.0])
        self.assertEqual(moments.n_batches, 2)

    def test_needs_two_batches(self):
        with self.assertRaises(ValidationException):
            batch_means(np.ones((1, 4)))


class SimulationTests(SimpleTestCase):
    def test_reproducible(self):
        config = quick_config(n_steps=50_000)
        self.assertEqual(simulate_correlator(config, 1).as_dict(), simulate_correlator(config, 1).as_dict())

    def test_independent_of_worker_count(self):
        config = quick_config(n_steps=50_000)
        self.assertEqual(simulate_correlator(config, 1).as_dict(), simulate_correlator(config, 2).as_dict())

    def test_seed_changes_stream(self):
        first = simulate_correlator(quick_config(n_steps=50_000), 1)
        second = simulate_correlator(quick_config(n_steps=50_000, seed=4), 1)
        self.assertNotEqual(first.corr_12, second.corr_12)

    def test_spawn_keys_recorded(self):
        config = quick_config(n_steps=50_000, n_replicas=3)
        estimate = simulate_correlator(config, 1)
        self.assertEqual(estimate.rng, RNG_ALGORITHM)
        self.assertEqual(estimate.replica_spawn_keys, [[0], [1], [2]])
        self.assertEqual(len(replica_seeds(config)), 3)

    def test_matches_equipartition(self):
        config = quick_config()
        estimate = simulate_correlator(config, 1)
        exact = equipartition_covariance(config.L, config.M, config.kT)
        for i in range(2):
            for j in range(2):
                tolerance = 4.0 * estimate.stderr_cov[i][j] + 0.02 * abs(exact[i, j])
                self.assertLess(abs(estimate.cov[i][j] - exact[i, j]), tolerance)

    def test_uncoupled_wires_are_uncorrelated(self):
        estimate = simulate_correlator(quick_config(M=0.0), 1)
        self.assertLess(abs(estimate.corr_12), 4.0 * estimate.stderr_corr)
        self.assertGreater(estimate.n_effective, 100)

    def test_stderr_shrinks_with_run_length(self):
        short = simulate_correlator(quick_config(n_steps=100_000), 1)
        long = simulate_correlator(quick_config(n_steps=400_000), 1)
        ratio = short.stderr_corr / long.stderr_corr
        self.assertGreater(ratio, 1.3)
        self.assertLess(ratio, 3.0)

    def test_step_refinement_is_consistent(self):
        coarse = simulate_correlator(quick_config(dt=0.02, n_steps=100_000), 1)
        fine = simulate_correlator(quick_config(dt=0.01, n_steps=200_000, seed=5), 1)
        combined = np.hypot(coarse.stderr_corr, fine.stderr_corr)
        self.assertLess(abs(coarse.corr_12 - fine.corr_12), 4.0 * combined + 0.02 * abs(fine.corr_12))

    def test_blowup_reports_step(self):
        unstable = (np.array([1.0]), np.array([1.0, -1e200]), 1.0)
        with mock.patch("noisywires.apps.langevin.oracle._mode_filter", return_value=unstable):
            with self.assertRaises(NumericalBlowupError) as ctx:
                simulate_correlator(quick_config(n_steps=50_000, n_replicas=1), 1)
        self.assertLess(ctx.exception.step_index, 10)


class OracleForceTests(SimpleTestCase):
    def estimate(self, corr: float) -> LangevinEstimate:
        return LangevinEstimate(corr_12=corr, var_1=1.0, var_2=1.0, stderr_corr=0.01, n_effective=1e4,
                                cov=[[1.0, corr], [corr, 1.0]], stderr_cov=[[0.01] * 2] * 2)

    def test_force_is_correlator_times_gradient(self):
        force = oracle_force(quick_config(), [0.0, 2.0, -1.0], estimate=self.estimate(-0.5))
        np.testing.assert_allclose(force, [0.0, -1.0, 0.5])

    def test_zero_gradient(self):
        np.testing.assert_array_equal(oracle_force(quick_config(), [0.0, 0.0, 0.0]), np.zeros(3))

    def test_rejects_bad_gradient(self):
        with self.assertRaises(SimConfigError):
            oracle_force(quick_config(), [1.0, 2.0])


@tag("slow")
class MainConfigurationTests(SimpleTestCase):
    def test_default_run_matches_equipartition(self):
        config = SimConfig.from_settings(L=1.0, M=0.8, R=0.1, kT=1.0)
        estimate = simulate_correlator(config)
        exact = equipartition_covariance(1.0, 0.8, 1.0)[0, 1]
        self.assertLess(abs(estimate.corr_12 - exact), 3.0 * estimate.stderr_corr)
        self.assertLess(abs(estimate.corr_12 / exact - 1.0), 2e-2)
