from enum import StrEnum


class Phase(StrEnum):
    SPLIT = "split"
    KEYGEN = "keygen"
    SUBSTITUTE = "substitute"
    ENCRYPT = "encrypt"
    EVALUATE = "evaluate"
    KEY_UPDATE = "key_update"
    DECRYPT = "decrypt"
    CHURN = "churn"

    @property
    def position(self) -> int:
        return PIPELINE.index(self)


# Execution order; CHURN labels catch-up traffic and is not a pipeline step.
PIPELINE = (
    Phase.SPLIT,
    Phase.KEYGEN,
    Phase.SUBSTITUTE,
    Phase.ENCRYPT,
    Phase.EVALUATE,
    Phase.KEY_UPDATE,
    Phase.DECRYPT,
)
