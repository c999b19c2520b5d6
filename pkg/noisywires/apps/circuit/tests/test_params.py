import math

import numpy as np
from django.test import SimpleTestCase

from noisywires.apps.circuit.params import (
    HBAR,
    K_B,
    PhysicalParams,
    ReducedParams,
    ThermoResult,
    from_reduced,
    reference_frequency,
    to_reduced,
)
from noisywires.apps.core.exceptions import CouplingBoundError, ReferenceFrequencyError, ValidationException


class PhysicalParamsTests(SimpleTestCase):
    def test_coupling_bound(self):
        with self.assertRaises(CouplingBoundError):
            PhysicalParams(L=1.0, M=1.0, R=1.0, T=1.0)

    def test_rejects_negative_resistance(self):
        with self.assertRaises(ValidationException):
            PhysicalParams(L=1.0, M=0.1, R=-1.0, T=1.0)

    def test_derived_frequencies(self):
        p = PhysicalParams(L=2e-6, M=1e-6, R=4.0, T=300.0, C=5e-10)
        self.assertAlmostEqual(p.omega_r, 2e6)
        self.assertAlmostEqual(p.omega_c, 1.0 / math.sqrt(1e-15))
        self.assertAlmostEqual(p.kT, K_B * 300.0)


class ReductionTests(SimpleTestCase):
    def test_reference_is_omega_c_with_capacitance(self):
        p = PhysicalParams(L=1e-6, M=5e-7, R=1.0, T=4.0, C=1e-9)
        r = to_reduced(p)
        self.assertEqual(r.omega_c, 1.0)
        self.assertAlmostEqual(r.m, 0.5)
        self.assertAlmostEqual(r.t, K_B * 4.0 / (HBAR * p.omega_c))

    def test_reference_is_omega_r_without_capacitance(self):
        r = to_reduced(PhysicalParams(L=1e-6, M=-2e-7, R=3.0, T=1.0))
        self.assertIsNone(r.omega_c)
        self.assertEqual(r.omega_r, 1.0)
        self.assertAlmostEqual(r.m, -0.2)

    def test_zero_resistance_without_capacitance_needs_reference(self):
        p = PhysicalParams(L=1e-6, M=0.0, R=0.0, T=1.0)
        with self.assertRaises(ReferenceFrequencyError):
            reference_frequency(p)
        self.assertEqual(to_reduced(p, omega_ref=1e9).omega_r, 0.0)

    def test_round_trip(self):
        original = PhysicalParams(L=3e-6, M=1e-6, R=0.7, T=12.0, C=2e-11)
        back = from_reduced(to_reduced(original), reference_frequency(original), original.L)
        for name in ("L", "M", "R", "T", "C"):
            self.assertAlmostEqual(getattr(back, name) / getattr(original, name), 1.0, places=12)

    def test_round_trip_on_random_parameter_sets(self):
        rng = np.random.default_rng(2024)
        for _ in range(1000):
            L = float(10.0 ** rng.uniform(-9, -3))
            C = float(10.0 ** rng.uniform(-15, -6)) if rng.random() < 0.5 else None
            original = PhysicalParams(
                L=L,
                M=float(rng.uniform(-0.99, 0.99)) * L,
                R=float(10.0 ** rng.uniform(-3, 3)),
                T=float(10.0 ** rng.uniform(-1, 3)),
                C=C,
            )
            back = from_reduced(to_reduced(original), reference_frequency(original), L)
            self.assertAlmostEqual(back.M, original.M, delta=1e-12 * L)
            for name in ("L", "R", "T") + (("C",) if C is not None else ()):
                self.assertLess(abs(getattr(back, name) / getattr(original, name) - 1.0), 1e-12)
            self.assertEqual(back.C is None, C is None)

    def test_reduction_with_equal_reference_frequencies(self):
        # ω_C = 1/√(2·0.125) = 2 rad/s and R/L = 2 rad/s
        r = to_reduced(PhysicalParams(L=2.0, M=1.0, R=4.0, T=1.0, C=0.125))
        self.assertEqual(r.omega_c, 1.0)
        self.assertAlmostEqual(r.omega_r, 1.0, places=14)
        self.assertEqual(r.m, 0.5)
        self.assertAlmostEqual(r.t, K_B / (HBAR * 2.0), delta=1e-14 * r.t)


class ReducedParamsTests(SimpleTestCase):
    def test_validation(self):
        with self.assertRaises(CouplingBoundError):
            ReducedParams(m=-1.0, omega_r=1.0, t=1.0)
        with self.assertRaises(ValidationException):
            ReducedParams(m=0.5, omega_r=1.0, t=-1.0)
        with self.assertRaises(ValidationException):
            ReducedParams(m=0.5, omega_r=1.0, t=1.0, omega_c=0.0)

    def test_replace_revalidates(self):
        p = ReducedParams(m=0.5, omega_r=1.0, t=1.0)
        self.assertEqual(p.replace(t=2.0).t, 2.0)
        with self.assertRaises(CouplingBoundError):
            p.replace(m=1.2)

    def test_thermo_result(self):
        result = ThermoResult(-2.0, 0.1)
        scaled = result.scaled(-3.0)
        self.assertEqual(scaled.value, 6.0)
        self.assertAlmostEqual(scaled.abs_error_estimate, 0.3)
        with self.assertRaises(ValidationException):
            ThermoResult(1.0, -1.0)
