"""
Sweep t, m or ω_R over a grid and write one CSV row per point.
Rows keep grid order; a failing point fills the error column and the run continues.
"""

from contextlib import nullcontext

from noisywires.apps.core.commands import NoisyWiresCommand
from noisywires.apps.core.exceptions import NumericalException
from noisywires.apps.core.records import write_csv
from noisywires.apps.spectral.quadrature import QuadratureConfig
from noisywires.apps.sweeps.arguments import (
    add_model_arguments,
    add_reduced_arguments,
    add_workers_argument,
    count,
    quantities_from_options,
    reduced_from_options,
    resistance_from_options,
    workers_from_options,
)
from noisywires.apps.sweeps.sweep import SCALES, VARIABLES, SweepSpec, run_sweep


class Command(NoisyWiresCommand):
    help = "Evaluate quantities over a one-dimensional parameter grid"

    def add_arguments(self, parser):
        parser.add_argument("--variable", choices=VARIABLES, required=True, help="Swept parameter")
        parser.add_argument("--from", dest="start", type=float, required=True, help="First grid value")
        parser.add_argument("--to", dest="stop", type=float, required=True, help="Last grid value")
        parser.add_argument("--points", type=count, required=True, help="Number of grid points (>= 2)")
        parser.add_argument("--scale", choices=SCALES, default="linear", help="Grid spacing (default linear)")
        parser.add_argument("--resume-from", type=count, default=0, help="Skip the first N rows (no header)")
        parser.add_argument("--output", default=None, help="Write CSV to this file (appends when resuming)")
        add_reduced_arguments(parser)
        add_model_arguments(parser)
        add_workers_argument(parser)

    def run(self, *args, **options):
        variable = options["variable"]
        resistance = resistance_from_options(options)
        placeholders = {variable: options["start"]}
        if not resistance.is_fixed:
            placeholders.setdefault("omega_r", 0.0)
        base = reduced_from_options(options, placeholders=placeholders)
        spec = SweepSpec(
            variable=variable,
            start=options["start"],
            stop=options["stop"],
            points=options["points"],
            scale=options["scale"],
            base=base,
            resistance_model=resistance,
            quantities=quantities_from_options(options),
            classical=options["classical"],
            dm2_da=options["dm2_da"],
            quadrature=QuadratureConfig.from_settings(),
        )
        resume_from = options["resume_from"]
        workers = workers_from_options(options)

        succeeded = 0
        written = 0
        output = options["output"]
        mode = "a" if resume_from else "w"
        with (open(output, mode, newline="") if output else nullcontext(self.stdout)) as stream:
            for row in run_sweep(spec, workers=workers, resume_from=resume_from):
                write_csv(stream, spec.columns, [row], include_header=(written == 0 and resume_from == 0))
                written += 1
                succeeded += not row["error"]
        if written and not succeeded:
            raise NumericalException("every sweep point failed", code="sweep_failed")
