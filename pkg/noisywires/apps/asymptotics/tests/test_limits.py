import math

from django.test import SimpleTestCase, tag

from noisywires.apps.asymptotics.limits import (
    LOW_T_COEFFICIENT,
    g_classical,
    h_classical,
    low_t_capacitive_entropy,
    low_t_capacitive_free_energy,
    nernst_entropy_limit,
)
from noisywires.apps.circuit.params import ReducedParams
from noisywires.apps.core.exceptions import CouplingBoundError
from noisywires.apps.spectral.quadrature import QuadratureConfig
from noisywires.apps.spectral.thermo import interaction_free_energy


class ClassicalLimitTests(SimpleTestCase):
    def test_values(self):
        self.assertEqual(h_classical(0.0), 0.5)
        self.assertAlmostEqual(h_classical(0.8), 1.0 / 0.72)
        self.assertAlmostEqual(g_classical(0.8), -0.5 * math.log(0.36))
        self.assertAlmostEqual(nernst_entropy_limit(0.8), 0.5 * math.log(0.36))

    def test_g_is_integral_of_h(self):
        # dg/d(m²) = f(m²)
        m2, h = 0.3, 1e-6
        slope = (g_classical(math.sqrt(m2 + h)) - g_classical(math.sqrt(m2 - h))) / (2 * h)
        self.assertAlmostEqual(slope, h_classical(math.sqrt(m2)), places=7)

    def test_small_coupling_keeps_precision(self):
        self.assertAlmostEqual(g_classical(1e-9) / 0.5e-18, 1.0, places=12)

    def test_coupling_bound(self):
        with self.assertRaises(CouplingBoundError):
            h_classical(1.0)
        with self.assertRaises(CouplingBoundError):
            g_classical(-1.5)


class LowTemperatureLawTests(SimpleTestCase):
    def test_coefficient(self):
        self.assertAlmostEqual(LOW_T_COEFFICIENT, 77.7193, places=3)

    def test_entropy_is_minus_temperature_slope(self):
        t, h = 0.01, 1e-7
        slope = (low_t_capacitive_free_energy(t + h, 0.8, 1e-3) - low_t_capacitive_free_energy(t - h, 0.8, 1e-3)) / (2 * h)
        self.assertAlmostEqual(low_t_capacitive_entropy(t, 0.8, 1e-3) / -slope, 1.0, places=6)

    def test_example_value(self):
        self.assertAlmostEqual(low_t_capacitive_free_energy(1e-2, 0.8, 1e-3) / -4.974e-14, 1.0, places=3)


@tag("slow")
class LowTemperatureQuadratureTests(SimpleTestCase):
    def test_quadrature_follows_sixth_power(self):
        q = QuadratureConfig()
        deviations = []
        for t in (0.05, 0.02, 0.01, 0.005):
            p = ReducedParams(m=0.8, omega_r=1e-3, t=t, omega_c=1.0)
            ratio = interaction_free_energy(p, q).value / low_t_capacitive_free_energy(t, 0.8, 1e-3)
            deviations.append(abs(ratio - 1.0))
        self.assertEqual(deviations, sorted(deviations, reverse=True))
        self.assertLess(deviations[2], 2e-2)
        self.assertLess(deviations[3], 1e-2)
