"""Parameter sweeps over t, m or ω_R, evaluated point by point in a worker pool."""

from __future__ import annotations

import logging
import math
from concurrent import futures
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from noisywires.apps.circuit.params import ReducedParams, ThermoResult
from noisywires.apps.core.exceptions import NoisyWiresException, SweepSpecError
from noisywires.apps.core.validators import ValidationResult
from noisywires.apps.spectral.entropy import interaction_entropy, self_entropy, self_free_energy
from noisywires.apps.spectral.quadrature import QuadratureConfig
from noisywires.apps.spectral.resistance import ResistanceModel
from noisywires.apps.spectral.thermo import force_reduced, h_factor, interaction_free_energy

logger = logging.getLogger(__name__)

VARIABLES = ("t", "m", "omega_r")
SCALES = ("linear", "log")

# CLI quantity name -> output column
QUANTITY_COLUMNS = {
    "H": "H",
    "F": "F_int",
    "F_self": "F_self",
    "S": "S_int",
    "S_total": "S_total",
    "force": "force",
}
# Columns computed in closed form carry no error column.
EXACT_COLUMNS = {"F_self"}
INPUT_COLUMNS = ("index", "m", "omega_r", "t", "omega_c")

FIG1_COLUMNS = ("t", "F_int", "F_self", "S_int", "S_total", "F_int_err", "S_int_err", "S_total_err")


@dataclass(frozen=True)
class SweepSpec:
    """One variable swept over a grid; everything else fixed by ``base``."""

    variable: str
    start: float
    stop: float
    points: int
    base: ReducedParams
    scale: str = "linear"
    resistance_model: ResistanceModel = field(default_factory=ResistanceModel.fixed)
    quantities: Tuple[str, ...] = ("H",)
    classical: bool = False
    dm2_da: float = 1.0
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig.from_settings)

    def __post_init__(self):
        result = ValidationResult()
        if self.variable not in VARIABLES:
            result.add_error("variable", f"variable must be one of {VARIABLES}", {"variable": self.variable})
        if self.scale not in SCALES:
            result.add_error("scale", f"scale must be one of {SCALES}", {"scale": self.scale})
        if not (math.isfinite(self.start) and math.isfinite(self.stop) and self.start < self.stop):
            result.add_error("from", "sweep bounds must be finite with from < to",
                             {"from": self.start, "to": self.stop})
        if self.scale == "log" and not self.start > 0:
            result.add_error("from", "log scale requires from > 0", {"from": self.start})
        if self.points < 2:
            result.add_error("points", "points must be >= 2", {"points": self.points})
        unknown = [name for name in self.quantities if name not in QUANTITY_COLUMNS]
        if unknown or not self.quantities:
            result.add_error("quantity", f"quantities must be drawn from {tuple(QUANTITY_COLUMNS)}",
                             {"quantity": ",".join(unknown)})
        if self.variable == "omega_r" and not self.resistance_model.is_fixed:
            result.add_error("variable", "omega_r cannot be swept under a temperature-dependent resistance")
        result.raise_if_invalid(SweepSpecError)

    @property
    def grid(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)

    @property
    def value_columns(self) -> List[str]:
        return [QUANTITY_COLUMNS[name] for name in dict.fromkeys(self.quantities)]

    @property
    def columns(self) -> List[str]:
        values = self.value_columns
        errors = [f"{column}_err" for column in values if column not in EXACT_COLUMNS]
        return [*INPUT_COLUMNS, *values, *errors, "error"]

    def params_at(self, index: int) -> ReducedParams:
        value = float(self.grid[index])
        point = self.base.replace(**{self.variable: value})
        if not self.resistance_model.is_fixed:
            point = point.replace(omega_r=self.resistance_model.omega_r(point.t, point.omega_r))
        return point


def _quantity(name: str, p: ReducedParams, options: dict, cache: dict):
    q, classical = options["quadrature"], options["classical"]
    if name == "H":
        return h_factor(p, q, classical)
    if name == "F":
        return interaction_free_energy(p, q, classical)
    if name == "force":
        return force_reduced(p, options["dm2_da"], q, classical)
    if name == "F_self":
        if p.omega_c is None:
            raise SweepSpecError("F_self needs omega_c")
        return self_free_energy(p.t, p.omega_c)
    if "S" not in cache:
        cache["S"] = interaction_entropy(p, options["resistance_model"], q, classical)
    if name == "S":
        return cache["S"]
    if p.omega_c is None:
        raise SweepSpecError("S_total needs omega_c")
    interaction = cache["S"]
    return ThermoResult(interaction.value + 2.0 * self_entropy(p.t, p.omega_c), interaction.abs_error_estimate)


def evaluate_quantities(
    p: ReducedParams,
    quantities: Sequence[str],
    resistance_model: Optional[ResistanceModel] = None,
    quadrature: Optional[QuadratureConfig] = None,
    classical: bool = False,
    dm2_da: float = 1.0,
) -> Dict[str, float]:
    """Output columns (values and ``_err`` estimates) for the requested quantities at ``p``."""
    options = {
        "quadrature": quadrature or QuadratureConfig.from_settings(),
        "classical": classical,
        "dm2_da": dm2_da,
        "resistance_model": resistance_model or ResistanceModel.fixed(),
    }
    values: Dict[str, float] = {}
    cache: dict = {}
    for name in dict.fromkeys(quantities):
        if name not in QUANTITY_COLUMNS:
            raise SweepSpecError(f"unknown quantity {name!r}", code="quantity")
        column = QUANTITY_COLUMNS[name]
        result = _quantity(name, p, options, cache)
        if isinstance(result, ThermoResult):
            values[column], values[f"{column}_err"] = result.value, result.abs_error_estimate
        else:
            values[column] = result
    return values


def evaluate_point(spec: SweepSpec, index: int) -> Dict[str, object]:
    """One output row; a failing point fills the ``error`` column instead of raising."""
    row: Dict[str, object] = {"index": index, **spec.base.as_dict(), "error": ""}
    row[spec.variable] = float(spec.grid[index])
    try:
        p = spec.params_at(index)
        row.update(p.as_dict())
        row.update(evaluate_quantities(
            p,
            spec.quantities,
            resistance_model=spec.resistance_model,
            quadrature=spec.quadrature,
            classical=spec.classical,
            dm2_da=spec.dm2_da,
        ))
    except (NoisyWiresException, ArithmeticError, ValueError) as exc:
        code = getattr(exc, "error_code", type(exc).__name__)
        row["error"] = f"{code}: {exc}"
        logger.warning("sweep point %d (%s=%g) failed: %s", index, spec.variable, spec.grid[index], exc)
    return row


def _evaluate(args):
    return evaluate_point(*args)


def run_sweep(
    spec: SweepSpec,
    workers: int = 1,
    resume_from: int = 0,
) -> Iterator[Dict[str, object]]:
    """Rows in grid order starting at ``resume_from``; order does not depend on ``workers``."""
    if not 0 <= resume_from <= spec.points:
        raise SweepSpecError(f"resume_from must lie in [0, {spec.points}]", code="resume_from")
    jobs = [(spec, index) for index in range(resume_from, spec.points)]
    if workers <= 1 or len(jobs) <= 1:
        for job in jobs:
            yield _evaluate(job)
        return
    with futures.ProcessPoolExecutor(max_workers=workers) as executor:
        yield from executor.map(_evaluate, jobs, chunksize=max(1, len(jobs) // (4 * workers)))


def fig1_spec(
    start: float = 0.005,
    stop: float = 2.0,
    points: int = 400,
    m: float = 0.8,
    coefficient: float = 5.0,
    exponent: float = 2.0,
    omega_c: float = 1.0,
    quadrature: Optional[QuadratureConfig] = None,
) -> SweepSpec:
    """Interaction and self thermodynamics against t with ω_R(t) = c·tᵖ."""
    return SweepSpec(
        variable="t",
        start=start,
        stop=stop,
        points=points,
        scale="log",
        base=ReducedParams(m=m, omega_r=0.0, t=start, omega_c=omega_c),
        resistance_model=ResistanceModel.power_law(coefficient, exponent),
        quantities=("F", "F_self", "S", "S_total"),
        quadrature=quadrature or QuadratureConfig.from_settings(),
    )


def positive_slope_windows(t: Sequence[float], values: Sequence[float]) -> List[Tuple[float, float]]:
    """Intervals [t_i, t_{i+1}] on which ``values`` increases."""
    t = np.asarray(t, dtype=float)
    rising = np.diff(np.asarray(values, dtype=float)) > 0
    return [(float(t[i]), float(t[i + 1])) for i in np.flatnonzero(rising)]
