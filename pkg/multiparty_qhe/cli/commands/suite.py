from multiparty_qhe import settings
from multiparty_qhe.acceptance.criteria import CRITERIA, FULL, QUICK, run_suite
from multiparty_qhe.cli.arguments import seed_value
from multiparty_qhe.cli.base import BaseCommand, ExitCode


class Command(BaseCommand):
    help = "Run the acceptance criteria and print one verdict line per criterion."

    def add_arguments(self, parser):
        parser.add_argument(
            "--quick", action="store_true", help="Reduced sweep sizes for a fast smoke run."
        )
        parser.add_argument(
            "--only",
            type=int,
            action="append",
            choices=sorted(CRITERIA),
            help="Run only this criterion (repeatable).",
        )
        parser.add_argument("--seed", type=seed_value, default=settings.EXPERIMENT_SEED)

    def handle(self, **options):
        sizes = QUICK if options["quick"] else FULL
        results = run_suite(sizes, seed=options["seed"], only=options["only"])
        for result in results:
            self.stdout.write(str(result))
        passed = sum(1 for r in results if r.passed)
        self.stdout.write(f"{passed}/{len(results)} criteria passed")
        return ExitCode.OK if passed == len(results) else ExitCode.VERIFICATION_FAILED
