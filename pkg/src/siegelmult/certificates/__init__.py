from .arithmetic import (
    DELIGNE_CONCLUSION,
    PreconditionError,
    SearchExhausted,
    deligne_certificate,
    gamma1_completion,
    krons_certificate,
    krons_chain,
    small_identities,
    zpir_check,
)
from .base import OPS, Certificate, ReplayResult, Step, replay
from .bms import BmsParameters, bms_build, bms_matrices, bms_w_check, random_bms_parameters
from .lemmas import LEMMA_TAGS, verify_lemma
from .mennicke import mennicke_axiom_check, symbol_value

__all__ = [
    "DELIGNE_CONCLUSION", "PreconditionError", "SearchExhausted", "deligne_certificate", "gamma1_completion",
    "krons_certificate", "krons_chain", "small_identities", "zpir_check", "OPS", "Certificate",
    "ReplayResult", "Step", "replay", "BmsParameters", "bms_build", "bms_matrices", "bms_w_check",
    "random_bms_parameters", "LEMMA_TAGS", "verify_lemma", "mennicke_axiom_check", "symbol_value",
]
