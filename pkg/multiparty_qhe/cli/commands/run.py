from multiparty_qhe.cli.arguments import positive_int, seed_value
from multiparty_qhe.cli.base import BaseCommand
from multiparty_qhe.cli.output import render_run
from multiparty_qhe.cli.scenarios import load_config, run_config, run_exit_code, save_trace


class Command(BaseCommand):
    help = "Run a scenario file; print per-client histograms and the verification verdict."

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="Path to a .scn scenario file.")
        parser.add_argument(
            "--seed", required=True, type=seed_value, help="Seed of every random source."
        )
        parser.add_argument(
            "--shots", type=positive_int, default=None, help="Histogram shots per client."
        )
        parser.add_argument("--trace", default=None, help="Write the message trace (NDJSON).")

    def handle(self, **options):
        config = load_config(options["config"], options["seed"], options["shots"])
        result = run_config(config)
        if options["trace"]:
            save_trace(result, options["trace"])
        self.stdout.lines(render_run(result))
        return run_exit_code(result)
