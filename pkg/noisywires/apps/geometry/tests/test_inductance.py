import math

import numpy as np
from django.test import SimpleTestCase
from scipy.integrate import dblquad

from noisywires.apps.asymptotics.limits import h_classical
from noisywires.apps.circuit.params import K_B
from noisywires.apps.core.exceptions import CouplingBoundError, SingularityError
from noisywires.apps.geometry.curves import circle_polyline, segment_polyline
from noisywires.apps.geometry.inductance import (
    MU_0,
    NeumannConfig,
    coaxial_loops_mutual_inductance,
    grad_m2,
    neumann_mutual_inductance,
    parallel_pair_term,
    physical_force,
    segment_distances,
)

CONFIG = NeumannConfig()


class SegmentDistanceTests(SimpleTestCase):
    def test_crossing_and_parallel(self):
        a1 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
        d1 = np.array([[1.0, 0.0, 0.0], [1.0, 0.0, 0.0]])
        a2 = np.array([[0.5, -1.0, 2.0], [3.0, 1.0, 0.0]])
        d2 = np.array([[0.0, 2.0, 0.0], [1.0, 0.0, 0.0]])
        np.testing.assert_allclose(segment_distances(a1, d1, a2, d2), [2.0, math.sqrt(5.0)])


class NeumannTests(SimpleTestCase):
    def test_coaxial_loops_match_closed_form(self):
        loop = circle_polyline(1.0, n=256)
        for d in (2.0, 5.0, 10.0):
            numeric = neumann_mutual_inductance(loop, loop, (0.0, 0.0, d), CONFIG)
            exact = coaxial_loops_mutual_inductance(1.0, 1.0, d)
            self.assertLess(abs(numeric.M / exact - 1.0), 5e-3)
            self.assertGreater(numeric.quadrature_error, 0.0)

    def test_perpendicular_segments_decouple(self):
        wire = segment_polyline((-1.0, 0.0, 0.0), (1.0, 0.0, 0.0), n=8)
        crossing = segment_polyline((0.0, -1.0, 0.5), (0.0, 1.0, 0.5), n=8)
        M = neumann_mutual_inductance(wire, crossing, config=CONFIG).M
        self.assertLess(abs(M), 1e-12 * MU_0 * wire.length)

    def test_symmetric_in_the_two_curves(self):
        loop = circle_polyline(1.0, n=64)
        other = circle_polyline(0.5, n=48, center=(0.3, 0.0, 1.5), normal=(1.0, 0.0, 1.0))
        forward = neumann_mutual_inductance(loop, other, config=CONFIG).M
        backward = neumann_mutual_inductance(other, loop, config=CONFIG).M
        self.assertAlmostEqual(forward / backward, 1.0, places=10)

    def test_translation_invariance(self):
        loop = circle_polyline(1.0, n=64)
        shift = np.array([3.0, -2.0, 7.0])
        base = neumann_mutual_inductance(loop, loop, (0.0, 0.0, 2.0), CONFIG).M
        moved = neumann_mutual_inductance(loop.translated(shift), loop.translated(shift), (0.0, 0.0, 2.0), CONFIG).M
        self.assertAlmostEqual(moved / base, 1.0, places=9)

    def test_refinement_changes_only_quadrature(self):
        loop = circle_polyline(1.0, n=64)
        coarse = neumann_mutual_inductance(loop, loop, (0.0, 0.0, 1.0), CONFIG).M
        fine = neumann_mutual_inductance(loop.refined(), loop.refined(), (0.0, 0.0, 1.0), CONFIG).M
        self.assertLess(abs(fine / coarse - 1.0), 1e-6)

    def test_contact_is_singular(self):
        wire = segment_polyline((-1.0, 0.0, 0.0), (1.0, 0.0, 0.0))
        crossing = segment_polyline((0.0, -1.0, 0.0), (0.0, 1.0, 0.0))
        with self.assertRaises(SingularityError):
            neumann_mutual_inductance(wire, crossing, config=CONFIG)

    def test_closed_form_decreases_with_distance(self):
        values = [coaxial_loops_mutual_inductance(1.0, 2.0, d) for d in (0.5, 1.0, 2.0)]
        self.assertEqual(values, sorted(values, reverse=True))


class ParallelWireTests(SimpleTestCase):
    @staticmethod
    def filaments(l: float, rho: float) -> float:
        return MU_0 / (2.0 * math.pi) * (l * math.asinh(l / rho) - math.hypot(l, rho) + rho)

    def test_close_parallel_wires_match_filament_formula(self):
        wire = segment_polyline((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), n=4)
        for gap in (1e-4, 1e-5):
            M = neumann_mutual_inductance(wire, wire, (0.0, gap, 0.0), CONFIG).M
            self.assertLess(abs(M / self.filaments(1.0, gap) - 1.0), 1e-9)

    def test_reversed_wire_flips_sign(self):
        wire = segment_polyline((0.0, 0.0, 0.0), (1.0, 0.0, 0.0))
        reverse = segment_polyline((1.0, 0.0, 0.0), (0.0, 0.0, 0.0))
        M = neumann_mutual_inductance(wire, reverse, (0.0, 1e-4, 0.0), CONFIG).M
        self.assertLess(abs(M / self.filaments(1.0, 1e-4) + 1.0), 1e-9)

    def test_pair_term_matches_direct_integration(self):
        a1, d1 = np.array([[0.0, 0.0, 0.0]]), np.array([[1.0, 0.0, 0.0]])
        a2, d2 = np.array([[0.3, 0.2, 0.1]]), np.array([[-0.5, 0.0, 0.0]])
        rho2 = 0.05
        direct, _ = dblquad(
            lambda y, x: 1.0 / math.sqrt((x - y) ** 2 + rho2), -0.2, 0.3, 0.0, 1.0, epsabs=1e-13, epsrel=1e-13
        )
        self.assertAlmostEqual(parallel_pair_term(a1, d1, a2, d2)[0], -direct, places=10)

    def test_subdivision_independent_of_chunk_size(self):
        wire = segment_polyline((-1.0, 0.0, 0.0), (1.0, 0.0, 0.0), n=4)
        tilted = segment_polyline((-1.0, -0.2, 1e-3), (1.0, 0.2, 1e-3), n=4)
        default = neumann_mutual_inductance(wire, tilted, config=CONFIG).M
        small = neumann_mutual_inductance(wire, tilted, config=NeumannConfig(chunk_pairs=1)).M
        self.assertAlmostEqual(small / default, 1.0, places=10)


class GradientTests(SimpleTestCase):
    L = 1e-6

    def test_axial_gradient_matches_closed_form(self):
        loop = circle_polyline(1.0, n=128)
        d, h = 2.0, 1e-4
        grad = grad_m2(loop, loop, (0.0, 0.0, d), self.L, CONFIG)
        M = coaxial_loops_mutual_inductance(1.0, 1.0, d)
        slope = (coaxial_loops_mutual_inductance(1.0, 1.0, d + h) - coaxial_loops_mutual_inductance(1.0, 1.0, d - h)) / (2 * h)
        expected = 2.0 * M * slope / self.L ** 2
        self.assertLess(abs(grad[2] / expected - 1.0), 1e-2)
        self.assertLess(abs(grad[0]) + abs(grad[1]), 1e-6 * abs(grad[2]))

    def test_small_loop_on_axis_follows_dipole_rate(self):
        big = circle_polyline(1.0, n=256)
        small = circle_polyline(0.05, n=64)
        d = 1.0
        a = (0.0, 0.0, d)
        M = neumann_mutual_inductance(big, small, a, CONFIG).M
        grad = grad_m2(big, small, a, self.L, CONFIG)
        rate = -grad[2] / (M / self.L) ** 2
        self.assertLess(abs(rate / (6.0 * d / (1.0 + d * d)) - 1.0), 5e-2)

    def test_coupling_bound_is_enforced(self):
        loop = circle_polyline(1.0, n=32)
        with self.assertRaises(CouplingBoundError):
            grad_m2(loop, loop, (0.0, 0.0, 0.1), 1e-9, CONFIG)


class PhysicalForceTests(SimpleTestCase):
    L = 1e-6

    def setUp(self):
        self.loop = circle_polyline(1.0, n=64)
        self.a = (0.0, 0.0, 2.0)

    def test_zero_resistance_or_temperature(self):
        np.testing.assert_array_equal(physical_force(self.loop, self.loop, self.a, self.L, 0.0, 300.0), np.zeros(3))
        np.testing.assert_array_equal(physical_force(self.loop, self.loop, self.a, self.L, 1.0, 0.0), np.zeros(3))

    def test_classical_force_uses_equipartition(self):
        T = 300.0
        force = physical_force(self.loop, self.loop, self.a, self.L, 1.0, T, config=CONFIG, classical=True)
        m = neumann_mutual_inductance(self.loop, self.loop, self.a, CONFIG).M / self.L
        expected = -K_B * T * h_classical(m) * grad_m2(self.loop, self.loop, self.a, self.L, CONFIG)
        np.testing.assert_allclose(force, expected, rtol=1e-6)

    def test_coaxial_loops_repel(self):
        force = physical_force(self.loop, self.loop, self.a, self.L, 1.0, 300.0, config=CONFIG, classical=True)
        self.assertGreater(force[2], 0.0)
