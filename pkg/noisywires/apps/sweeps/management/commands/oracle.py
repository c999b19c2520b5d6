"""
Langevin estimate of the current correlator for one circuit configuration.
Prints one JSON record; identical flags give identical bytes.
"""

from django.core.management.base import CommandError

from noisywires.apps.core.commands import NoisyWiresCommand
from noisywires.apps.core.records import SuccessRecord, write_json
from noisywires.apps.langevin.oracle import SimConfig, equipartition_covariance, oracle_force, simulate_correlator
from noisywires.apps.sweeps.arguments import add_workers_argument, count, workers_from_options


class Command(NoisyWiresCommand):
    help = "Simulate the coupled circuits with white Johnson noise and estimate <i1 i2>"

    def add_arguments(self, parser):
        parser.add_argument("--l", type=float, default=1.0, help="Self-inductance L in henry (default 1)")
        coupling = parser.add_mutually_exclusive_group()
        coupling.add_argument("--m", type=float, help="Coupling M/L")
        coupling.add_argument("--m-henry", type=float, help="Mutual inductance M in henry")
        parser.add_argument("--r", type=float, default=0.1, help="Resistance in ohm (default 0.1)")
        parser.add_argument("--kt", type=float, default=1.0, help="k_BT in joule (default 1)")
        parser.add_argument("--dt", type=float, default=None, help="Time step in seconds")
        parser.add_argument("--steps", type=count, default=None, help="Recorded steps per replica")
        parser.add_argument("--burn-in", type=count, default=None, help="Discarded steps per replica")
        parser.add_argument("--replicas", type=count, default=None, help="Independent replicas")
        parser.add_argument("--batches", type=count, default=None, help="Batches per replica (>= 50)")
        parser.add_argument("--seed", type=count, default=None, help="Master seed")
        parser.add_argument("--grad-m", type=float, nargs=3, default=None, metavar=("GX", "GY", "GZ"),
                            help="∇M in henry per metre; adds the oracle force")
        add_workers_argument(parser)

    def run(self, *args, **options):
        L = options["l"]
        if options["m_henry"] is not None:
            M = options["m_henry"]
        elif options["m"] is not None:
            M = options["m"] * L
        else:
            raise CommandError("one of --m or --m-henry is required", returncode=2)

        config = SimConfig.from_settings(
            L=L, M=M, R=options["r"], kT=options["kt"],
            dt=options["dt"],
            n_steps=options["steps"],
            burn_in=options["burn_in"],
            n_replicas=options["replicas"],
            n_batches=options["batches"],
            seed=options["seed"],
        )
        estimate = simulate_correlator(config, workers_from_options(options))
        data = estimate.as_dict()
        data["equipartition_cov"] = equipartition_covariance(config.L, config.M, config.kT).tolist()
        if options["grad_m"] is not None:
            data["force"] = oracle_force(config, options["grad_m"], estimate=estimate).tolist()
        write_json(self.stdout, SuccessRecord(data=data, meta={"config": config.as_dict()}).to_dict())
