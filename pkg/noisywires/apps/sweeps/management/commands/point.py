"""
Evaluate the requested quantities at one parameter point.
Prints one JSON record on stdout.
"""

from noisywires.apps.core.commands import NoisyWiresCommand
from noisywires.apps.core.records import SuccessRecord, write_json
from noisywires.apps.spectral.quadrature import QuadratureConfig
from noisywires.apps.sweeps.arguments import (
    add_model_arguments,
    add_reduced_arguments,
    quantities_from_options,
    reduced_from_options,
    resistance_from_options,
)
from noisywires.apps.sweeps.sweep import evaluate_quantities


class Command(NoisyWiresCommand):
    """Single-point evaluation of H, F, F_self, S, S_total or the reduced force."""

    help = "Evaluate spectral thermodynamics at one parameter point"

    def add_arguments(self, parser):
        add_reduced_arguments(parser)
        add_model_arguments(parser)

    def run(self, *args, **options):
        resistance = resistance_from_options(options)
        params = reduced_from_options(options, placeholders=None if resistance.is_fixed else {"omega_r": 0.0})
        params = params.replace(omega_r=resistance.omega_r(params.t, params.omega_r))
        quadrature = QuadratureConfig.from_settings()
        values = evaluate_quantities(
            params,
            quantities_from_options(options),
            resistance_model=resistance,
            quadrature=quadrature,
            classical=options["classical"],
            dm2_da=options["dm2_da"],
        )
        record = SuccessRecord(
            data={"params": params.as_dict(), **values},
            meta={
                "classical": options["classical"],
                "resistance": resistance.describe(),
                "rel_tol": quadrature.rel_tol,
                "abs_tol": quadrature.abs_tol,
            },
        )
        write_json(self.stdout, record.to_dict())
