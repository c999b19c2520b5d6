"""Acceptance criteria checked by ``manage.py validate``.

Each criterion measures a few values, compares them with its tolerances
(divided by the ``tighten`` factor) and reports pass/fail without aborting
the remaining criteria.
"""

from __future__ import annotations

import logging
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional

import numpy as np

from noisywires.apps.asymptotics.limits import (
    g_classical,
    h_classical,
    low_t_capacitive_free_energy,
)
from noisywires.apps.circuit.params import ReducedParams
from noisywires.apps.core.exceptions import NoisyWiresException
from noisywires.apps.geometry.curves import circle_polyline, segment_polyline
from noisywires.apps.geometry.inductance import (
    MU_0,
    NeumannConfig,
    coaxial_loops_mutual_inductance,
    neumann_mutual_inductance,
)
from noisywires.apps.langevin.oracle import SimConfig, equipartition_covariance, oracle_force, simulate_correlator
from noisywires.apps.spectral.entropy import interaction_entropy
from noisywires.apps.spectral.lossless import lossless_h_factor
from noisywires.apps.spectral.quadrature import QuadratureConfig
from noisywires.apps.spectral.thermo import free_energy_gradient, h_factor, interaction_free_energy

from .sweep import fig1_spec, positive_slope_windows, run_sweep

logger = logging.getLogger(__name__)

CLASSICAL_RATIO = 1e-5
COUPLINGS = (0.1, 0.3, 0.5, 0.8, 0.9)


@dataclass
class AcceptanceContext:
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)
    tighten: float = 1.0
    workers: int = 1
    langevin: Optional[SimConfig] = None
    _estimates: Dict[SimConfig, object] = field(default_factory=dict)

    def tol(self, value: float) -> float:
        return value / self.tighten

    def estimate(self, config: SimConfig):
        if config not in self._estimates:
            self._estimates[config] = simulate_correlator(config, self.workers)
        return self._estimates[config]

    def main_langevin(self) -> SimConfig:
        return self.langevin or SimConfig.from_settings(L=1.0, M=0.8, R=0.1, kT=1.0)


@dataclass
class CriterionResult:
    key: str
    title: str
    passed: bool
    measured: Dict[str, object] = field(default_factory=dict)
    error: str = ""
    seconds: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Criterion:
    key: str
    title: str
    check: Callable[[AcceptanceContext], tuple]

    def matches(self, pattern: Optional[str]) -> bool:
        if not pattern:
            return True
        pattern = pattern.lower()
        return pattern in self.key or pattern in self.title.lower()

    def run(self, ctx: AcceptanceContext) -> CriterionResult:
        started = time.perf_counter()
        try:
            passed, measured = self.check(ctx)
            result = CriterionResult(self.key, self.title, bool(passed), measured)
        except NoisyWiresException as exc:
            logger.warning("criterion %s raised %s", self.key, exc.error_code)
            result = CriterionResult(self.key, self.title, False, error=f"{exc.error_code}: {exc.message}")
        except (ArithmeticError, ValueError) as exc:
            logger.warning("criterion %s failed numerically: %s", self.key, exc)
            result = CriterionResult(self.key, self.title, False, error=f"{type(exc).__name__}: {exc}")
        result.seconds = time.perf_counter() - started
        return result


def _relative(value: float, reference: float) -> float:
    return abs(value - reference) / abs(reference)


def _no_capacitance(m: float, ratio: float = CLASSICAL_RATIO) -> ReducedParams:
    return ReducedParams(m=m, omega_r=ratio, t=1.0)


def check_classical_h(ctx: AcceptanceContext):
    deviations = {}
    for m in COUPLINGS:
        deviations[f"m={m}"] = _relative(h_factor(_no_capacitance(m), ctx.quadrature).value, h_classical(m))
    analytic = h_factor(_no_capacitance(0.0), ctx.quadrature, classical=True).value
    passed = max(deviations.values()) < ctx.tol(1e-3) and abs(analytic - 0.5) < ctx.tol(1e-6)
    return passed, {"relative_deviation": deviations, "H(m=0, classical)": analytic}


def check_classical_free_energy(ctx: AcceptanceContext):
    deviations = {}
    for m in COUPLINGS:
        p = _no_capacitance(m)
        value = interaction_free_energy(p, ctx.quadrature).value / p.t
        deviations[f"m={m}"] = _relative(value, g_classical(m))
    return max(deviations.values()) < ctx.tol(1e-3), {"relative_deviation": deviations}


def check_nernst(ctx: AcceptanceContext):
    m = 0.8
    target = -g_classical(m)
    entropies = {}
    for t in (10.0, 100.0, 1000.0):
        entropies[t] = interaction_entropy(ReducedParams(m=m, omega_r=1.0, t=t), q=ctx.quadrature).value
    deviations = [_relative(s, target) for s in entropies.values()]
    approaching = all(b < a for a, b in zip(deviations, deviations[1:]))
    passed = approaching and deviations[-1] < ctx.tol(1e-2)
    return passed, {"S": {str(t): s for t, s in entropies.items()}, "limit": target,
                    "relative_deviation": deviations}


def check_zero_dissipation(ctx: AcceptanceContext):
    m = 0.5
    deviations = {}
    for ratio in (1e-4, 1e-5, 1e-6):
        deviations[str(ratio)] = _relative(h_factor(_no_capacitance(m, ratio), ctx.quadrature).value, h_classical(m))
    lossless = h_factor(ReducedParams(m=m, omega_r=0.0, t=1.0), ctx.quadrature).value
    passed = max(deviations.values()) < ctx.tol(1e-3) and lossless == 0.0
    return passed, {"relative_deviation": deviations, "H(omega_r=0)": lossless}


def check_capacitive_restoration(ctx: AcceptanceContext):
    m = 0.8
    p = ReducedParams(m=m, omega_r=1e-6, t=0.1, omega_c=1.0)
    H = h_factor(p, ctx.quadrature).value
    F = interaction_free_energy(p, ctx.quadrature).value
    cold = h_factor(p.replace(t=0.02), ctx.quadrature).value
    limit = lossless_h_factor(p.t, m)
    passed = (
        H < ctx.tol(1e-4)
        and F < ctx.tol(1e-6)
        and abs(cold) < ctx.tol(1e-4)
        and _relative(H, limit) < ctx.tol(1e-2)
    )
    return passed, {"H(t=0.1)": H, "F(t=0.1)": F, "H(t=0.02)": cold, "lossless H(t=0.1)": limit}


def check_low_t_law(ctx: AcceptanceContext):
    m, omega_r = 0.8, 1e-3
    ratios = {}
    for t in (0.05, 0.02, 0.01, 0.005):
        F = interaction_free_energy(ReducedParams(m=m, omega_r=omega_r, t=t, omega_c=1.0), ctx.quadrature).value
        ratios[t] = F / low_t_capacitive_free_energy(t, m, omega_r)
    deviations = [abs(r - 1.0) for r in ratios.values()]
    monotone = all(b < a for a, b in zip(deviations, deviations[1:]))
    return monotone and deviations[-1] < ctx.tol(1e-2), {"ratio": {str(t): r for t, r in ratios.items()}}


def check_fig1(ctx: AcceptanceContext):
    rows = list(run_sweep(fig1_spec(quadrature=ctx.quadrature), workers=ctx.workers))
    failed = [row["index"] for row in rows if row["error"]]
    if failed:
        return False, {"failed_rows": failed}
    t = [row["t"] for row in rows]
    windows = positive_slope_windows(t, [row["F_int"] for row in rows])
    s_int = np.array([row["S_int"] for row in rows])
    s_total = np.array([row["S_total"] for row in rows])
    passed = (
        bool(windows)
        and s_int.min() < 0
        and s_total.min() >= -ctx.tol(1e-6)
        and abs(s_total[0]) < ctx.tol(1e-6)
    )
    return passed, {
        "positive_slope_t": [windows[0][0], windows[-1][1]] if windows else [],
        "min_S_int": float(s_int.min()),
        "min_S_total": float(s_total.min()),
        "S_total(t_min)": float(s_total[0]),
    }


def random_sim_configs(count: int = 5, seed: int = 7) -> List[SimConfig]:
    """Configurations spread over L, M/L, R and kT, each resolving its own fast mode."""
    rng = np.random.default_rng(seed)
    configs = []
    for index in range(count):
        L = rng.uniform(0.5, 2.0)
        M = L * rng.uniform(-0.7, 0.7)
        R = rng.uniform(0.1, 1.0)
        kT = rng.uniform(0.5, 2.0)
        dt = 0.01 * (L - abs(M)) / R
        slow = (L + abs(M)) / R
        configs.append(SimConfig(
            L=L, M=M, R=R, kT=kT, dt=dt,
            n_steps=int(400 * slow / dt),
            burn_in=int(10 * slow / dt),
            seed=1000 + index,
            n_replicas=4,
        ))
    return configs


def check_langevin(ctx: AcceptanceContext):
    config = ctx.main_langevin()
    estimate = ctx.estimate(config)
    exact = equipartition_covariance(config.L, config.M, config.kT)[0, 1]
    sigmas = abs(estimate.corr_12 - exact) / estimate.stderr_corr
    passed = sigmas < ctx.tol(3.0) and _relative(estimate.corr_12, exact) < ctx.tol(2e-2)

    worst = 0.0
    for random_config in random_sim_configs():
        sample = simulate_correlator(random_config, ctx.workers)
        reference = equipartition_covariance(random_config.L, random_config.M, random_config.kT)
        z = np.abs(np.array(sample.cov) - reference) / np.array(sample.stderr_cov)
        worst = max(worst, float(z.max()))
    # 15 entry comparisons: 4σ keeps the family-wise false alarm rate below 0.1%.
    passed = passed and worst < ctx.tol(4.0)
    return passed, {"corr_12": estimate.corr_12, "stderr": estimate.stderr_corr, "exact": exact,
                    "sigmas": sigmas, "worst_entry_sigmas": worst}


def check_consistency(ctx: AcceptanceContext):
    tight = QuadratureConfig(rel_tol=1e-12, abs_tol=1e-20, max_subdivisions=ctx.quadrature.max_subdivisions)
    p = ReducedParams(m=0.6, omega_r=1.0, t=1.0)
    gradient = free_energy_gradient(p, tight, classical=True).value
    H = h_factor(p, tight, classical=True).value
    gradient_deviation = _relative(gradient / p.t, H)

    config = ctx.main_langevin()
    grad_M = np.array([-0.1, 0.0, 0.0])
    estimate = ctx.estimate(config)
    sampled = oracle_force(config, grad_M, estimate=estimate)
    m = config.M / config.L
    grad_m2 = 2.0 * config.M * grad_M / config.L ** 2
    spectral = -config.kT * h_factor(ReducedParams(m=m, omega_r=1.0, t=1.0), ctx.quadrature, classical=True).value * grad_m2
    force_sigmas = abs(sampled[0] - spectral[0]) / (estimate.stderr_corr * abs(grad_M[0]))
    passed = gradient_deviation < ctx.tol(1e-6) and force_sigmas < ctx.tol(3.0)
    return passed, {"dF/dm2 / t": gradient / p.t, "H": H, "relative_deviation": gradient_deviation,
                    "oracle_force_x": float(sampled[0]), "spectral_force_x": float(spectral[0]),
                    "force_sigmas": force_sigmas}


def check_geometry(ctx: AcceptanceContext):
    config = NeumannConfig()
    loop = circle_polyline(1.0, n=256)
    deviations = {}
    for d in (2.0, 5.0, 10.0):
        numeric = neumann_mutual_inductance(loop, loop, (0.0, 0.0, d), config).M
        deviations[str(d)] = _relative(numeric, coaxial_loops_mutual_inductance(1.0, 1.0, d))
    wire = segment_polyline((-1.0, 0.0, 0.0), (1.0, 0.0, 0.0), n=8)
    crossing = segment_polyline((0.0, -1.0, 0.5), (0.0, 1.0, 0.5), n=8)
    perpendicular = neumann_mutual_inductance(wire, crossing, (0.0, 0.0, 0.0), config).M
    bound = 1e-12 * MU_0 * wire.length
    passed = max(deviations.values()) < ctx.tol(5e-3) and abs(perpendicular) < ctx.tol(bound)
    return passed, {"relative_deviation": deviations, "M_perpendicular": perpendicular, "bound": bound}


CRITERIA = (
    Criterion("classical-h", "Classical H closed form", check_classical_h),
    Criterion("classical-free-energy", "Classical free energy", check_classical_free_energy),
    Criterion("nernst", "Nernst violation without capacitance", check_nernst),
    Criterion("zero-dissipation", "Discontinuity at zero dissipation", check_zero_dissipation),
    Criterion("capacitive-restoration", "Capacitive restoration of the ideal limit", check_capacitive_restoration),
    Criterion("low-t-law", "Low-temperature t^6 law", check_low_t_law),
    Criterion("fig1", "Free energy and entropy against t with R ~ t^2", check_fig1),
    Criterion("langevin", "Langevin oracle against equipartition", check_langevin),
    Criterion("consistency", "Force from free energy and from the oracle", check_consistency),
    Criterion("geometry", "Neumann integral against closed forms", check_geometry),
)


def run_acceptance(ctx: AcceptanceContext, pattern: Optional[str] = None) -> List[CriterionResult]:
    results = []
    for criterion in CRITERIA:
        if not criterion.matches(pattern):
            continue
        logger.info("running criterion %s", criterion.key)
        results.append(criterion.run(ctx))
    return results


def summary_line(result: CriterionResult) -> str:
    status = "PASS" if result.passed else "FAIL"
    line = f"[{status}] {result.key}: {result.title} ({result.seconds:.1f} s)"
    if result.error:
        line += f" - {result.error}"
    return line


def all_passed(results: List[CriterionResult]) -> bool:
    return bool(results) and all(result.passed for result in results)