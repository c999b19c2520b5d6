"""
Run the acceptance criteria and report each one as PASS or FAIL.
Exit code 1 when any selected criterion fails.
"""

from noisywires.apps.core.commands import NoisyWiresCommand
from noisywires.apps.core.exceptions import AcceptanceFailure, ErrorDetail, ValidationException
from noisywires.apps.core.records import dumps
from noisywires.apps.spectral.quadrature import QuadratureConfig
from noisywires.apps.sweeps.acceptance import AcceptanceContext, all_passed, run_acceptance, summary_line
from noisywires.apps.sweeps.arguments import add_workers_argument, workers_from_options


class Command(NoisyWiresCommand):
    help = "Run the acceptance suite (use --filter to select criteria)"

    def add_arguments(self, parser):
        parser.add_argument("--filter", default=None, help="Run only criteria whose key or title contains this text")
        parser.add_argument("--json", action="store_true", help="Print the JSON report instead of summary lines")
        parser.add_argument("--tighten", type=float, default=1.0, help="Divide every tolerance by FACTOR")
        add_workers_argument(parser)

    def run(self, *args, **options):
        if not options["tighten"] > 0:
            raise ValidationException("--tighten must be > 0", code="usage")
        ctx = AcceptanceContext(
            quadrature=QuadratureConfig.from_settings(),
            tighten=options["tighten"],
            workers=workers_from_options(options),
        )
        results = run_acceptance(ctx, options["filter"])
        if not results:
            raise ValidationException(f"no criterion matches {options['filter']!r}", code="usage")

        if options["json"]:
            report = {"passed": all_passed(results), "tighten": ctx.tighten,
                      "criteria": [result.as_dict() for result in results]}
            self.stdout.write(dumps(report))
        else:
            for result in results:
                line = summary_line(result)
                self.stdout.write(self.style.SUCCESS(line) if result.passed else self.style.ERROR(line))

        failed = [result for result in results if not result.passed]
        if failed:
            raise AcceptanceFailure(
                f"{len(failed)} of {len(results)} criteria failed",
                details=[ErrorDetail(message=result.title, code=result.key) for result in failed],
            )
