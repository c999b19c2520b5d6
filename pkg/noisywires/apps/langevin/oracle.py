"""Time-domain check of the current correlator in the classical regime.

𝕃·di/dt = −R·i + ℰ(t),  ⟨ℰᵢ(t)ℰⱼ(t′)⟩ = 2kT·R·δᵢⱼδ(t − t′),  𝕃 = [[L, M], [M, L]].

For identical wires 𝕃 is diagonal in x± = (i₁ ± i₂)/√2 with eigenvalues L ± M,
and the two noise combinations stay independent with the same strength. Each
mode then follows the scalar Euler–Maruyama recursion

    x[n+1] = (1 − R·dt/(L±M))·x[n] + ΔW[n]/(L±M),   ΔW ~ N(0, 2kT·R·dt),

which is the coupled scheme with 𝕃⁻¹ applied, only rotated. The recursion is an
AR(1) filter and runs through ``scipy.signal.lfilter`` in chunks, carrying the
filter state across chunk boundaries. Its stationary variance is
kT/(L±M)·1/(1 − R·dt/(2(L±M))), the weak-order bias of the stepper.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent import futures
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np
from django.conf import settings
from scipy.signal import lfilter

from noisywires.apps.core.exceptions import (
    CouplingBoundError,
    NumericalBlowupError,
    SimConfigError,
    SingularityError,
)
from noisywires.apps.core.validators import CouplingValidator, NumberValidator, ValidationResult

from .statistics import BatchMoments, batch_means

logger = logging.getLogger(__name__)

RNG_ALGORITHM = "PCG64/SeedSequence.spawn"
MIN_BATCHES = 50
_SQRT_HALF = math.sqrt(0.5)


def equipartition_covariance(L: float, M: float, kT: float) -> np.ndarray:
    """⟨i iᵀ⟩ = kT·𝕃⁻¹ = kT/(L² − M²)·[[L, −M], [−M, L]]."""
    result = NumberValidator.positive("L", L)
    result.merge(NumberValidator.finite("M", M))
    result.merge(NumberValidator.nonnegative("kT", kT))
    result.raise_if_invalid()
    if abs(M) >= L:
        raise SingularityError(f"inductance matrix is singular or indefinite for |M| = {abs(M)!r} >= L = {L!r}")
    return kT / (L * L - M * M) * np.array([[L, -M], [-M, L]])


@dataclass(frozen=True)
class SimConfig:
    """One Langevin run: circuit, temperature, stepping and RNG seed.

    ``n_steps`` counts recorded steps; the ``burn_in`` steps before them are discarded.
    """

    L: float
    M: float
    R: float
    kT: float
    dt: float
    n_steps: int
    burn_in: int
    seed: int = 42
    n_replicas: int = 1
    n_batches: int = MIN_BATCHES

    def __post_init__(self):
        result = ValidationResult()
        for name in ("L", "R", "kT", "dt"):
            result.merge(NumberValidator.positive(name, getattr(self, name)))
        result.merge(NumberValidator.at_least("n_replicas", self.n_replicas, 1))
        result.merge(NumberValidator.at_least("n_batches", self.n_batches, MIN_BATCHES))
        result.merge(NumberValidator.at_least("burn_in", self.burn_in, 0))
        if not 0 <= self.seed < 2 ** 64:
            result.add_error("seed", "seed must be a 64-bit unsigned integer", {"seed": self.seed})
        result.raise_if_invalid(SimConfigError)
        CouplingValidator.validate_inductances(self.L, self.M).raise_if_invalid(CouplingBoundError)
        self._check_time_scales()

    def _check_time_scales(self):
        tau = self.L / self.R
        result = ValidationResult()
        if not self.dt < 0.1 * tau:
            result.add_error("dt", f"dt must be < 0.1·L/R = {0.1 * tau!r}", {"dt": self.dt, "L_over_R": tau})
        if self.dt * self.R / (self.L - abs(self.M)) >= 1.0:
            result.add_error("dt", "dt must resolve the fast mode: dt·R/(L − |M|) < 1",
                             {"dt": self.dt, "fast_tau": (self.L - abs(self.M)) / self.R})
        if not self.n_steps > 10 * tau / self.dt:
            result.add_error("n_steps", f"n_steps must exceed 10·(L/R)/dt = {10 * tau / self.dt:.6g}",
                             {"n_steps": self.n_steps})
        if self.burn_in < 5 * tau / self.dt:
            result.add_error("burn_in", f"burn_in must be >= 5·(L/R)/dt = {5 * tau / self.dt:.6g}",
                             {"burn_in": self.burn_in})
        if self.n_steps < self.n_batches:
            result.add_error("n_steps", "n_steps must be >= n_batches", {"n_steps": self.n_steps})
        result.raise_if_invalid(SimConfigError)

    @classmethod
    def from_settings(cls, L: float, M: float, R: float, kT: float, **overrides) -> "SimConfig":
        conf = settings.NOISYWIRES["LANGEVIN"]
        values = {
            "dt": conf["DT"],
            "n_steps": conf["N_STEPS"],
            "burn_in": conf["BURN_IN"],
            "seed": conf["SEED"],
            "n_replicas": conf["N_REPLICAS"],
            "n_batches": conf["N_BATCHES"],
        }
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(L=L, M=M, R=R, kT=kT, **values)

    @property
    def batch_length(self) -> int:
        return self.n_steps // self.n_batches

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class LangevinEstimate:
    """Replica-pooled equal-time moments with batch-means standard errors."""

    corr_12: float
    var_1: float
    var_2: float
    stderr_corr: float
    n_effective: float
    cov: List[List[float]]
    stderr_cov: List[List[float]]
    rng: str = RNG_ALGORITHM
    seed: int = 0
    replica_spawn_keys: List[List[int]] = field(default_factory=list)

    def as_dict(self) -> dict:
        return asdict(self)


def _mode_filter(inductance: float, c: SimConfig):
    decay = 1.0 - c.dt * c.R / inductance
    return np.array([1.0]), np.array([1.0, -decay]), math.sqrt(2.0 * c.kT * c.R * c.dt) / inductance


def _run_replica(c: SimConfig, seed_seq: np.random.SeedSequence) -> np.ndarray:
    """Batch means of (i₁², i₂², i₁i₂, (i₁i₂)²) for one replica, shape (n_batches, 4)."""
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    inductances = (c.L + c.M, c.L - c.M)
    filters = [_mode_filter(ind, c) for ind in inductances]
    states = [np.zeros(1), np.zeros(1)]
    chunk = c.batch_length
    step = 0

    def advance(n: int) -> np.ndarray:
        nonlocal step
        noise = rng.standard_normal((2, n))
        modes = np.empty((2, n))
        for k, (b, a, scale) in enumerate(filters):
            modes[k], states[k] = lfilter(b, a, scale * noise[k], zi=states[k])
        finite = np.isfinite(modes).all(axis=0)
        if not finite.all():
            raise NumericalBlowupError(step_index=step + int(np.argmin(finite)))
        step += n
        return modes

    remaining = c.burn_in
    while remaining > 0:
        n = min(chunk, remaining)
        advance(n)
        remaining -= n

    rows = np.empty((c.n_batches, 4))
    for batch in range(c.n_batches):
        plus, minus = advance(chunk)
        i1 = _SQRT_HALF * (plus + minus)
        i2 = _SQRT_HALF * (plus - minus)
        product = i1 * i2
        rows[batch] = (np.mean(i1 * i1), np.mean(i2 * i2), np.mean(product), np.mean(product * product))
    return rows


def replica_seeds(c: SimConfig) -> List[np.random.SeedSequence]:
    """Replica k draws from SeedSequence(seed).spawn(n_replicas)[k]."""
    return np.random.SeedSequence(c.seed).spawn(c.n_replicas)


def simulate_correlator(c: SimConfig, workers: Optional[int] = None) -> LangevinEstimate:
    """Estimate ⟨i₁i₂⟩, ⟨i₁²⟩ and ⟨i₂²⟩; replicas run concurrently in worker processes.

    The estimate does not depend on ``workers``: every replica owns its stream.
    """
    seeds = replica_seeds(c)
    workers = min(c.n_replicas, workers or os.cpu_count() or 1)
    logger.debug("running %d replica(s) on %d worker(s), seed %d", c.n_replicas, workers, c.seed)
    if workers <= 1:
        batches = [_run_replica(c, s) for s in seeds]
    else:
        with futures.ProcessPoolExecutor(max_workers=workers) as executor:
            batches = list(executor.map(_run_replica, [c] * c.n_replicas, seeds))

    moments = batch_means(np.concatenate(batches, axis=0))
    return _estimate(c, moments, seeds)


def _estimate(c: SimConfig, moments: BatchMoments, seeds: Sequence[np.random.SeedSequence]) -> LangevinEstimate:
    var_1, var_2, corr_12, product_square = moments.mean
    se_1, se_2, se_12, _ = moments.stderr
    sample_variance = product_square - corr_12 * corr_12
    n_effective = sample_variance / (se_12 * se_12) if se_12 > 0 else math.inf
    return LangevinEstimate(
        corr_12=float(corr_12),
        var_1=float(var_1),
        var_2=float(var_2),
        stderr_corr=float(se_12),
        n_effective=float(n_effective),
        cov=[[float(var_1), float(corr_12)], [float(corr_12), float(var_2)]],
        stderr_cov=[[float(se_1), float(se_12)], [float(se_12), float(se_2)]],
        seed=c.seed,
        replica_spawn_keys=[list(s.spawn_key) for s in seeds],
    )


def oracle_force(
    c: SimConfig,
    grad_M: Sequence[float],
    estimate: Optional[LangevinEstimate] = None,
    workers: Optional[int] = None,
) -> np.ndarray:
    """F₁₂ = ⟨i₁i₂⟩·∇ₐM in newtons for ``grad_M`` in henry per metre."""
    grad = np.asarray(grad_M, dtype=float)
    if grad.shape != (3,) or not np.isfinite(grad).all():
        raise SimConfigError("grad_M must be a finite 3-vector", code="grad_m")
    if not grad.any():
        return np.zeros(3)
    estimate = estimate or simulate_correlator(c, workers)
    return estimate.corr_12 * grad
