from multiparty_qhe.cli.arguments import seed_value
from multiparty_qhe.cli.base import BaseCommand, ExitCode
from multiparty_qhe.cli.output import render_verification
from multiparty_qhe.cli.scenarios import load_config, run_config, run_exit_code, save_trace


class Command(BaseCommand):
    help = "Run a scenario file and report share reconstruction and the verification verdict."

    def add_arguments(self, parser):
        parser.add_argument("--config", required=True, help="Path to a .scn scenario file.")
        parser.add_argument(
            "--seed", required=True, type=seed_value, help="Seed of every random source."
        )
        parser.add_argument("--trace", default=None, help="Write the message trace (NDJSON).")

    def handle(self, **options):
        result = run_config(load_config(options["config"], options["seed"]))
        if options["trace"]:
            save_trace(result, options["trace"])
        self.stdout.lines(render_verification(result))
        if any(result.reconstructed[i] != result.secrets[i] for i in result.secrets):
            return ExitCode.VERIFICATION_FAILED
        return run_exit_code(result)
