"""Argument groups shared by the management commands."""

from typing import Optional

from django.conf import settings

from noisywires.apps.circuit.params import PhysicalParams, ReducedParams, to_reduced
from noisywires.apps.core.exceptions import ValidationException
from noisywires.apps.spectral.resistance import FIXED, POWER_LAW, ResistanceModel

from .sweep import QUANTITY_COLUMNS


def count(value: str) -> int:
    """Integer flag that also accepts '2e6'."""
    return int(float(value))


def add_reduced_arguments(parser):
    group = parser.add_argument_group("circuit (reduced units)")
    group.add_argument("--m", type=float, help="Coupling M/L")
    group.add_argument("--omega-r", type=float, help="ω_R = (R/L)/ω_ref")
    group.add_argument("--t", type=float, help="t = k_BT/(ħω_ref)")
    group.add_argument("--omega-c", type=float, default=None, help="ω_C/ω_ref; omit for the model without capacitance")

    si = parser.add_argument_group("circuit (SI units, with --si)")
    si.add_argument("--si", action="store_true", help="Read L, M, R, T, C in SI units and reduce them")
    si.add_argument("--L", type=float, dest="L_si", help="Self-inductance in henry")
    si.add_argument("--M", type=float, dest="M_si", help="Mutual inductance in henry")
    si.add_argument("--R", type=float, dest="R_si", help="Resistance in ohm")
    si.add_argument("--T", type=float, dest="T_si", help="Temperature in kelvin")
    si.add_argument("--C", type=float, dest="C_si", default=None, help="End-point capacitance in farad")
    si.add_argument("--omega-ref", type=float, default=None, help="Reference frequency override in rad/s")


def add_model_arguments(parser, default_quantity: Optional[str] = "H"):
    parser.add_argument(
        "--quantity",
        action="append",
        choices=tuple(QUANTITY_COLUMNS),
        help=f"Quantity to evaluate (repeatable; default {default_quantity})",
    )
    parser.add_argument("--classical", action="store_true", help="Replace E(ω/ω_T) by 1")
    parser.add_argument("--dm2-da", type=float, default=1.0, help="∂(m²)/∂a for the force column (default 1)")
    add_resistance_arguments(parser)


def add_resistance_arguments(parser, coefficient: Optional[float] = None, exponent: Optional[float] = None):
    parser.add_argument("--resistance", choices=(FIXED, POWER_LAW), default=FIXED if coefficient is None else POWER_LAW,
                        help="ω_R fixed, or ω_R(t) = c·tᵖ")
    parser.add_argument("--resistance-coefficient", type=float, default=coefficient, help="c of the power law")
    parser.add_argument("--resistance-exponent", type=float, default=exponent, help="p of the power law")


def add_workers_argument(parser):
    parser.add_argument(
        "--workers",
        type=int,
        default=None,
        help="Worker processes (default NOISYWIRES_WORKERS)",
    )


def workers_from_options(options) -> int:
    return max(1, options.get("workers") or settings.NOISYWIRES["WORKERS"])


def quantities_from_options(options, default: str = "H"):
    return tuple(options.get("quantity") or (default,))


def resistance_from_options(options) -> ResistanceModel:
    if options["resistance"] == FIXED:
        return ResistanceModel.fixed()
    if options["resistance_coefficient"] is None or options["resistance_exponent"] is None:
        raise ValidationException("--resistance power-law needs --resistance-coefficient and --resistance-exponent",
                                  code="usage")
    return ResistanceModel.power_law(options["resistance_coefficient"], options["resistance_exponent"])


def reduced_from_options(options, placeholders: Optional[dict] = None) -> ReducedParams:
    """ReducedParams from the reduced flags, or from the SI flags when --si is set.

    ``placeholders`` fills reduced fields a sweep overrides anyway.
    """
    if options.get("si"):
        missing = [flag for flag, key in (("--L", "L_si"), ("--M", "M_si"), ("--R", "R_si"), ("--T", "T_si"))
                   if options.get(key) is None]
        if missing:
            raise ValidationException(f"--si needs {', '.join(missing)}", code="usage")
        physical = PhysicalParams(
            L=options["L_si"], M=options["M_si"], R=options["R_si"], T=options["T_si"], C=options.get("C_si"),
        )
        return to_reduced(physical, options.get("omega_ref"))

    values = {"m": options.get("m"), "omega_r": options.get("omega_r"), "t": options.get("t")}
    for key, value in (placeholders or {}).items():
        if values.get(key) is None:
            values[key] = value
    missing = [f"--{key.replace('_', '-')}" for key, value in values.items() if value is None]
    if missing:
        raise ValidationException(f"missing {', '.join(missing)}", code="usage")
    return ReducedParams(omega_c=options.get("omega_c"), **values)

