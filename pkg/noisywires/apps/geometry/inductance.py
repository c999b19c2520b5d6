"""Mutual inductance of two wire curves and the resulting fluctuation force.

M(a) = (μ₀/4π) ∮∮ dl₁·dl₂ / |r₁ − r₂|, with curve 2 rigidly translated by a.

Every pair of straight segments contributes (d₁·d₂)∫₀¹∫₀¹ ds du/|r₁(s) − r₂(u)|,
integrated with a tensor Gauss–Legendre rule. Pairs whose lengths are not small
against their separation are split in halves until they are, except parallel
pairs, which take the exact straight-filament term.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
from django.conf import settings
from scipy import constants
from scipy.special import ellipe, ellipk, roots_legendre

from noisywires.apps.circuit.params import K_B, PhysicalParams, to_reduced
from noisywires.apps.core.exceptions import CouplingBoundError, SingularityError
from noisywires.apps.core.validators import NumberValidator
from noisywires.apps.spectral.quadrature import QuadratureConfig
from noisywires.apps.spectral.thermo import h_factor

from .curves import Polyline3, as_vector

logger = logging.getLogger(__name__)

MU_0 = constants.mu_0
_PREFACTOR = MU_0 / (4.0 * math.pi)
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class NeumannConfig:
    order: int = 8
    contact_cutoff: float = 1e-6
    near_ratio: float = 0.5
    max_depth: int = 40
    chunk_pairs: int = 4096

    def __post_init__(self):
        result = NumberValidator.positive("contact_cutoff", self.contact_cutoff)
        result.merge(NumberValidator.positive("near_ratio", self.near_ratio))
        result.merge(NumberValidator.at_least("order", self.order, 2))
        result.merge(NumberValidator.at_least("chunk_pairs", self.chunk_pairs, 1))
        result.raise_if_invalid()

    @classmethod
    def from_settings(cls) -> "NeumannConfig":
        return cls(contact_cutoff=settings.NOISYWIRES["CONTACT_CUTOFF"])


@dataclass(frozen=True)
class InductanceResult:
    M: float
    quadrature_error: float

    def __post_init__(self):
        NumberValidator.nonnegative("quadrature_error", self.quadrature_error).raise_if_invalid()


def _unit_rule(order: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = roots_legendre(order)
    return 0.5 * (nodes + 1.0), 0.5 * weights


def segment_distances(a1, d1, a2, d2) -> np.ndarray:
    """Closest approach of paired segments a1 + s·d1 and a2 + u·d2, s, u ∈ [0, 1]."""
    r = a1 - a2
    A = np.einsum("ij,ij->i", d1, d1)
    E = np.einsum("ij,ij->i", d2, d2)
    B = np.einsum("ij,ij->i", d1, d2)
    C = np.einsum("ij,ij->i", d1, r)
    F = np.einsum("ij,ij->i", d2, r)
    denom = A * E - B * B
    parallel = denom <= 1e-12 * A * E
    safe = np.where(parallel, 1.0, denom)
    s = np.where(parallel, 0.0, np.clip((B * F - C * E) / safe, 0.0, 1.0))
    u = (B * s + F) / E
    below, above = u < 0.0, u > 1.0
    s = np.where(below, np.clip(-C / A, 0.0, 1.0), s)
    s = np.where(above, np.clip((B - C) / A, 0.0, 1.0), s)
    u = np.clip(u, 0.0, 1.0)
    gap = r + s[:, None] * d1 - u[:, None] * d2
    return np.linalg.norm(gap, axis=1)


def _pair_rule(a1, d1, a2, d2, nodes, weights) -> np.ndarray:
    p1 = a1[:, None, :] + nodes[None, :, None] * d1[:, None, :]
    p2 = a2[:, None, :] + nodes[None, :, None] * d2[:, None, :]
    inverse = 1.0 / np.linalg.norm(p1[:, :, None, :] - p2[:, None, :, :], axis=-1)
    kernel = np.einsum("a,b,kab->k", weights, weights, inverse)
    return np.einsum("ij,ij->i", d1, d2) * kernel


def _parallel_antiderivative(x: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return x * np.arcsinh(x / rho) - np.hypot(x, rho)


def parallel_pair_term(a1, d1, a2, d2) -> np.ndarray:
    """Exact pair term ±∫∫ dx dy/|r₁ − r₂| for parallel or antiparallel segments."""
    l1 = np.linalg.norm(d1, axis=1)
    e = d1 / l1[:, None]
    r = a2 - a1
    p0 = np.einsum("ij,ij->i", r, e)
    p1 = p0 + np.einsum("ij,ij->i", d2, e)
    lo, hi = np.minimum(p0, p1), np.maximum(p0, p1)
    rho = np.linalg.norm(r - p0[:, None] * e, axis=1)
    g = _parallel_antiderivative
    value = g(hi, rho) - g(hi - l1, rho) - g(lo, rho) + g(lo - l1, rho)
    return np.sign(np.einsum("ij,ij->i", d1, d2)) * value


def _parallel_mask(a1, d1, a2, d2) -> np.ndarray:
    l1 = np.linalg.norm(d1, axis=1)
    l2 = np.linalg.norm(d2, axis=1)
    aligned = np.linalg.norm(np.cross(d1, d2), axis=1) <= 1e-10 * l1 * l2
    e = d1 / l1[:, None]
    r = a2 - a1
    rho = np.linalg.norm(r - np.einsum("ij,ij->i", r, e)[:, None] * e, axis=1)
    # collinear pairs have no perpendicular offset to build the closed form on
    return aligned & (rho > 1e-9 * (l1 + l2))


class _Accumulator:
    def __init__(self, config: NeumannConfig):
        self.config = config
        self.rule = _unit_rule(config.order)
        self.coarse_rule = _unit_rule(max(config.order // 2, 1))
        self.total = 0.0
        self.difference = 0.0
        self.magnitude = 0.0
        self.deepest = 0

    def add_blocks(self, a1, d1, a2, d2, depth: int = 0) -> None:
        """Feed pairs to :meth:`add` at most ``chunk_pairs`` at a time."""
        step = self.config.chunk_pairs
        for lo in range(0, len(a1), step):
            block = slice(lo, lo + step)
            self.add(a1[block], d1[block], a2[block], d2[block], depth)

    def add(self, a1, d1, a2, d2, depth: int = 0) -> None:
        if len(a1) == 0:
            return
        distance = segment_distances(a1, d1, a2, d2)
        if distance.min() < self.config.contact_cutoff:
            raise SingularityError(
                f"curves approach within {distance.min():.3g} m, below the contact cutoff "
                f"{self.config.contact_cutoff:.3g} m"
            )
        span = np.linalg.norm(d1, axis=1) + np.linalg.norm(d2, axis=1)
        near = span > self.config.near_ratio * distance
        if depth >= self.config.max_depth:
            if near.any():
                logger.warning("Neumann subdivision stopped at depth %d with %d near pairs", depth, int(near.sum()))
            near[:] = False
        self.deepest = max(self.deepest, depth)

        far = ~near
        fine = _pair_rule(a1[far], d1[far], a2[far], d2[far], *self.rule)
        coarse = _pair_rule(a1[far], d1[far], a2[far], d2[far], *self.coarse_rule)
        self.total += float(fine.sum())
        self.difference += float(np.abs(fine - coarse).sum())
        self.magnitude += float(np.abs(fine).sum())

        if not near.any():
            return
        parallel = np.zeros_like(near)
        parallel[near] = _parallel_mask(a1[near], d1[near], a2[near], d2[near])
        if parallel.any():
            exact = parallel_pair_term(a1[parallel], d1[parallel], a2[parallel], d2[parallel])
            self.total += float(exact.sum())
            self.magnitude += float(np.abs(exact).sum())
        split = near & ~parallel
        if split.any():
            h1, h2 = 0.5 * d1[split], 0.5 * d2[split]
            b1, b2 = a1[split], a2[split]
            starts1 = (b1, b1 + h1, b1, b1 + h1)
            starts2 = (b2, b2, b2 + h2, b2 + h2)
            self.add_blocks(
                np.concatenate(starts1), np.concatenate([h1] * 4),
                np.concatenate(starts2), np.concatenate([h2] * 4),
                depth + 1,
            )

    def result(self) -> InductanceResult:
        error = self.difference + 100.0 * _EPS * self.magnitude
        return InductanceResult(M=_PREFACTOR * self.total, quadrature_error=_PREFACTOR * error)


def neumann_mutual_inductance(
    c1: Polyline3,
    c2: Polyline3,
    a: Sequence[float] = (0.0, 0.0, 0.0),
    config: Optional[NeumannConfig] = None,
) -> InductanceResult:
    """Mutual inductance in henry of ``c1`` and ``c2`` translated by ``a``."""
    config = config or NeumannConfig.from_settings()
    shift = as_vector(a)
    starts1, dirs1 = c1.starts, c1.directions
    starts2, dirs2 = c2.starts + shift, c2.directions
    n1, n2 = len(starts1), len(starts2)
    i, j = np.meshgrid(np.arange(n1), np.arange(n2), indexing="ij")
    i, j = i.ravel(), j.ravel()

    acc = _Accumulator(config)
    for lo in range(0, len(i), config.chunk_pairs):
        block_i, block_j = i[lo:lo + config.chunk_pairs], j[lo:lo + config.chunk_pairs]
        acc.add(starts1[block_i], dirs1[block_i], starts2[block_j], dirs2[block_j])
    logger.debug("Neumann integral over %d segment pairs, subdivision depth %d", n1 * n2, acc.deepest)
    return acc.result()


def coaxial_loops_mutual_inductance(r1: float, r2: float, d: float) -> float:
    """Maxwell's closed form for coaxial circles of radii r1, r2 at axial distance d."""
    result = NumberValidator.positive("r1", r1)
    result.merge(NumberValidator.positive("r2", r2))
    result.merge(NumberValidator.finite("d", d))
    result.raise_if_invalid()
    k2 = 4.0 * r1 * r2 / ((r1 + r2) ** 2 + d * d)
    k = math.sqrt(k2)
    return MU_0 * math.sqrt(r1 * r2) * ((2.0 / k - k) * ellipk(k2) - (2.0 / k) * ellipe(k2))


def _m2(c1, c2, a, L, config) -> float:
    M = neumann_mutual_inductance(c1, c2, a, config).M
    if abs(M) >= L:
        raise CouplingBoundError(f"|M| = {abs(M):.6g} H is not below L = {L:.6g} H at a = {list(a)}")
    return (M / L) ** 2


def grad_m2(
    c1: Polyline3,
    c2: Polyline3,
    a: Sequence[float],
    L: float,
    config: Optional[NeumannConfig] = None,
    rtol: float = 1e-3,
) -> np.ndarray:
    """∇ₐ(M/L)² in 1/metre by central differences, checked against the doubled step."""
    NumberValidator.positive("L", L).raise_if_invalid()
    config = config or NeumannConfig.from_settings()
    a = as_vector(a)
    h = max(1e-4 * float(np.linalg.norm(a)), 1e-7)
    _m2(c1, c2, a, L, config)

    def central(step: float) -> np.ndarray:
        grad = np.empty(3)
        for axis in range(3):
            e = np.zeros(3)
            e[axis] = step
            grad[axis] = (_m2(c1, c2, a + e, L, config) - _m2(c1, c2, a - e, L, config)) / (2.0 * step)
        return grad

    coarse = central(h)
    fine = central(0.5 * h)
    scale = float(np.abs(fine).max())
    if scale > 0 and float(np.abs(fine - coarse).max()) > rtol * scale:
        logger.warning("grad(m²) at a=%s changed by more than %g when halving the step", a.tolist(), rtol)
    return fine


def physical_force(
    c1: Polyline3,
    c2: Polyline3,
    a: Sequence[float],
    L: float,
    R: float,
    T: float,
    C: Optional[float] = None,
    q: Optional[QuadratureConfig] = None,
    config: Optional[NeumannConfig] = None,
    classical: bool = False,
) -> np.ndarray:
    """F = −k_BT·H·∇ₐ(m²) in newtons."""
    config = config or NeumannConfig.from_settings()
    a = as_vector(a)
    M = neumann_mutual_inductance(c1, c2, a, config).M
    params = PhysicalParams(L=L, M=M, R=R, T=T, C=C)
    if R == 0 or T == 0:
        return np.zeros(3)
    H = h_factor(to_reduced(params), q, classical).value
    if H == 0:
        return np.zeros(3)
    return -K_B * T * H * grad_m2(c1, c2, a, L, config)
