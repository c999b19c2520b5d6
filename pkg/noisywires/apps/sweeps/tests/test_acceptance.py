from django.test import SimpleTestCase, tag

from noisywires.apps.core.exceptions import SingularityError
from noisywires.apps.sweeps.acceptance import (
    CRITERIA,
    AcceptanceContext,
    Criterion,
    all_passed,
    random_sim_configs,
    run_acceptance,
    summary_line,
)


def _raise_singular(ctx):
    raise SingularityError("contact")


class CriterionTests(SimpleTestCase):
    def test_keys_are_unique(self):
        keys = [criterion.key for criterion in CRITERIA]
        self.assertEqual(len(keys), 10)
        self.assertEqual(len(set(keys)), 10)

    def test_matches_key_or_title(self):
        criterion = Criterion("low-t-law", "Low-temperature t^6 law", lambda ctx: (True, {}))
        self.assertTrue(criterion.matches(None))
        self.assertTrue(criterion.matches("low-t"))
        self.assertTrue(criterion.matches("TEMPERATURE"))
        self.assertFalse(criterion.matches("geometry"))

    def test_errors_fail_the_criterion(self):
        result = Criterion("x", "Broken", _raise_singular).run(AcceptanceContext())
        self.assertFalse(result.passed)
        self.assertTrue(result.error.startswith("singularity"))
        self.assertIn("[FAIL] x: Broken", summary_line(result))

    def test_arithmetic_errors_fail_the_criterion(self):
        result = Criterion("y", "Division", lambda ctx: (1 / 0, {})).run(AcceptanceContext())
        self.assertFalse(result.passed)
        self.assertIn("ZeroDivisionError", result.error)

    def test_tighten_divides_tolerances(self):
        self.assertEqual(AcceptanceContext(tighten=10.0).tol(1e-2), 1e-3)

    def test_all_passed_needs_results(self):
        self.assertFalse(all_passed([]))

    def test_random_configs_are_valid_and_fixed(self):
        first, second = random_sim_configs(), random_sim_configs()
        self.assertEqual(first, second)
        self.assertEqual(len({config.seed for config in first}), 5)


class FastCriteriaTests(SimpleTestCase):
    def test_zero_dissipation(self):
        results = run_acceptance(AcceptanceContext(), "zero-dissipation")
        self.assertEqual(len(results), 1)
        self.assertTrue(results[0].passed, results[0].measured)
        self.assertEqual(results[0].measured["H(omega_r=0)"], 0.0)

    def test_classical_closed_forms(self):
        results = run_acceptance(AcceptanceContext(), "classical")
        self.assertEqual([result.key for result in results], ["classical-h", "classical-free-energy"])
        self.assertTrue(all_passed(results), [result.measured for result in results])

    def test_geometry(self):
        results = run_acceptance(AcceptanceContext(), "geometry")
        self.assertTrue(results[0].passed, results[0].measured)


@tag("slow")
class FullAcceptanceTests(SimpleTestCase):
    def test_every_criterion_passes(self):
        results = run_acceptance(AcceptanceContext())
        failed = {result.key: result.error or result.measured for result in results if not result.passed}
        self.assertEqual(failed, {})
        self.assertEqual(len(results), 10)
