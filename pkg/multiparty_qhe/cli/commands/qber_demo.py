from multiparty_qhe import settings
from multiparty_qhe.cli.arguments import positive_int, seed_value, unit_interval
from multiparty_qhe.cli.base import BaseCommand, CommandError, ExitCode
from multiparty_qhe.keyexchange.exchange import (
    Eavesdropper,
    ExchangeAborted,
    InsufficientRounds,
    exchange,
)
from multiparty_qhe.utils.randomness import Stream, stream

MIN_ROUNDS = 100


class Command(BaseCommand):
    help = "Run one key exchange, with or without an intercept-resend attacker."

    def add_arguments(self, parser):
        parser.add_argument("--rounds", type=positive_int, default=4000)
        parser.add_argument("--eavesdrop", choices=("on", "off"), default="off")
        parser.add_argument("--seed", type=seed_value, default=settings.EXPERIMENT_SEED)
        parser.add_argument("--threshold", type=unit_interval, default=settings.QBER_THRESHOLD)
        parser.add_argument(
            "--sample-fraction", type=unit_interval, default=settings.SAMPLE_FRACTION
        )

    def handle(self, **options):
        rounds = options["rounds"]
        if rounds < MIN_ROUNDS:
            raise CommandError(f"--rounds must be at least {MIN_ROUNDS}, got {rounds}")
        fraction = options["sample_fraction"]
        if not 0.0 < fraction < 1.0:
            raise CommandError(f"--sample-fraction must be in (0, 1), got {fraction}")
        eavesdropper = (
            Eavesdropper.INTERCEPT_RESEND if options["eavesdrop"] == "on" else Eavesdropper.NONE
        )

        self.stdout.write(f"rounds={rounds} eavesdropper={eavesdropper}")
        try:
            outcome = exchange(
                rounds,
                eavesdropper,
                options["threshold"],
                fraction,
                stream(options["seed"], Stream.KEYGEN),
            )
        except ExchangeAborted as exc:
            self.stdout.write(str(exc.report))
            self.stdout.write("key exchange aborted")
            return ExitCode.ABORTED
        except InsufficientRounds as exc:
            raise CommandError(str(exc), ExitCode.ABORTED) from exc

        self.stdout.write(str(outcome.report))
        self.stdout.write(f"sifted={outcome.kept_rounds} key_bits={len(outcome.client_key)}")
        self.stdout.write("key exchange accepted")
        return ExitCode.OK
