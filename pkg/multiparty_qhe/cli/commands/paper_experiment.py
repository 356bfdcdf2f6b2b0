from multiparty_qhe import settings
from multiparty_qhe.acceptance.experiment import (
    EXPECTED_OUTCOMES,
    SIGMA_WIDTH,
    run_four_qubit_experiment,
)
from multiparty_qhe.cli.arguments import positive_int, seed_value
from multiparty_qhe.cli.base import BaseCommand, ExitCode
from multiparty_qhe.cli.output import format_histogram


def _status(ok: bool) -> str:
    return "passed" if ok else "failed"


class Command(BaseCommand):
    help = "Reproduce the built-in four-qubit experiment on |1010>."

    def add_arguments(self, parser):
        parser.add_argument(
            "--shots", type=positive_int, default=settings.DEFAULT_SHOTS, help="Histogram shots."
        )
        parser.add_argument(
            "--seed",
            type=seed_value,
            default=settings.EXPERIMENT_SEED,
            help="Seed of the sampled histogram.",
        )

    def handle(self, **options):
        report = run_four_qubit_experiment(shots=options["shots"], seed=options["seed"])
        self.stdout.write("plaintext 1010")
        self.stdout.write(f"encryption key {report.encryption_key}")
        self.stdout.write(f"decryption key {report.decryption_key}")
        for label in EXPECTED_OUTCOMES:
            self.stdout.write(f"P({label}) = {report.probabilities.get(label, 0.0):.12f}")
        self.stdout.write(f"amplitude check: {_status(report.amplitudes_ok)}")
        self.stdout.write(f"histogram shots={report.shots}")
        self.stdout.lines(format_histogram(report.histogram))
        self.stdout.write(
            f"histogram check: {_status(report.histogram_ok)}"
            f" tolerance={SIGMA_WIDTH * report.sigma:.4f}"
        )
        return ExitCode.OK if report.passed else ExitCode.VERIFICATION_FAILED
