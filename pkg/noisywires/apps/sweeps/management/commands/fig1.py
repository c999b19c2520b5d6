"""
Interaction and self free energies and entropies against t, with ω_R(t) = c·tᵖ.
Writes CSV with columns t,F_int,F_self,S_int,S_total followed by error columns.
"""

import logging

from noisywires.apps.core.commands import NoisyWiresCommand
from noisywires.apps.core.exceptions import NumericalException
from noisywires.apps.core.records import write_csv
from noisywires.apps.spectral.quadrature import QuadratureConfig
from noisywires.apps.sweeps.arguments import add_workers_argument, count, workers_from_options
from noisywires.apps.sweeps.sweep import FIG1_COLUMNS, fig1_spec, run_sweep

logger = logging.getLogger(__name__)


class Command(NoisyWiresCommand):
    help = "Tabulate F_int, F_self, S_int and S_total against t (capacitive model, R ~ t^2)"

    def add_arguments(self, parser):
        parser.add_argument("--from", dest="start", type=float, default=0.005, help="Lowest t (default 0.005)")
        parser.add_argument("--to", dest="stop", type=float, default=2.0, help="Highest t (default 2)")
        parser.add_argument("--points", type=count, default=400, help="Log-spaced grid points (default 400)")
        parser.add_argument("--m", type=float, default=0.8, help="Coupling M/L (default 0.8)")
        parser.add_argument("--omega-c", type=float, default=1.0, help="ω_C in reference units (default 1)")
        parser.add_argument("--resistance-coefficient", type=float, default=5.0, help="c in ω_R = c·tᵖ (default 5)")
        parser.add_argument("--resistance-exponent", type=float, default=2.0, help="p in ω_R = c·tᵖ (default 2)")
        parser.add_argument("--output", default=None, help="Write CSV to this file instead of stdout")
        add_workers_argument(parser)

    def run(self, *args, **options):
        spec = fig1_spec(
            start=options["start"],
            stop=options["stop"],
            points=options["points"],
            m=options["m"],
            coefficient=options["resistance_coefficient"],
            exponent=options["resistance_exponent"],
            omega_c=options["omega_c"],
            quadrature=QuadratureConfig.from_settings(),
        )
        rows = list(run_sweep(spec, workers=workers_from_options(options)))
        failed = [row for row in rows if row["error"]]
        for row in failed:
            logger.warning("fig1 row %d left blank: %s", row["index"], row["error"])
        if len(failed) == len(rows):
            raise NumericalException("every grid point failed", code="sweep_failed")

        if options["output"]:
            with open(options["output"], "w", newline="") as stream:
                write_csv(stream, FIG1_COLUMNS, rows)
        else:
            write_csv(self.stdout, FIG1_COLUMNS, rows)
