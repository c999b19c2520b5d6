"""
Mutual inductance, ∇(m²) and the fluctuation force for two wire curves given as JSON documents.
"""

from noisywires.apps.core.commands import NoisyWiresCommand
from noisywires.apps.core.records import SuccessRecord, write_json
from noisywires.apps.geometry.curves import Polyline3
from noisywires.apps.geometry.inductance import (
    NeumannConfig,
    grad_m2,
    neumann_mutual_inductance,
    physical_force,
)
from noisywires.apps.spectral.quadrature import QuadratureConfig


class Command(NoisyWiresCommand):
    help = "Compute M(a) by the Neumann integral, and grad(m^2) and the force when L is given"

    def add_arguments(self, parser):
        parser.add_argument("--c1", required=True, help="JSON document of the first curve")
        parser.add_argument("--c2", required=True, help="JSON document of the second curve")
        parser.add_argument("--a", type=float, nargs=3, default=(0.0, 0.0, 0.0), metavar=("AX", "AY", "AZ"),
                            help="Rigid displacement of the second curve in metres")
        parser.add_argument("--L", type=float, default=None, help="Self-inductance in henry")
        parser.add_argument("--R", type=float, default=None, help="Resistance in ohm")
        parser.add_argument("--T", type=float, default=None, help="Temperature in kelvin")
        parser.add_argument("--C", type=float, default=None, help="End-point capacitance in farad")
        parser.add_argument("--classical", action="store_true", help="Replace E(ω/ω_T) by 1")

    def run(self, *args, **options):
        c1 = Polyline3.load(options["c1"])
        c2 = Polyline3.load(options["c2"])
        a = options["a"]
        config = NeumannConfig.from_settings()
        result = neumann_mutual_inductance(c1, c2, a, config)
        data = {"M": result.M, "quadrature_error": result.quadrature_error, "a": list(a)}

        L = options["L"]
        if L is not None:
            data["m"] = result.M / L
            data["grad_m2"] = grad_m2(c1, c2, a, L, config).tolist()
            if options["R"] is not None and options["T"] is not None:
                data["force"] = physical_force(
                    c1, c2, a, L, options["R"], options["T"], options["C"],
                    q=QuadratureConfig.from_settings(), config=config, classical=options["classical"],
                ).tolist()
        write_json(self.stdout, SuccessRecord(data=data).to_dict())
