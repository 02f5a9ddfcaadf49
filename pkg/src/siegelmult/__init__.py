"""Argument cocycle, multiplier systems and verification certificates for Sp(g, Z)."""
from .cocycle import (
    ARGUMENT,
    PETERSSON,
    CocycleRoundingError,
    CocycleValue,
    L_value,
    cocycle_identity_check,
    sigma_factor,
    w_cocycle,
)
from .genus1 import compare_with_oracle, corollary_zero, w_exact_genus1, w_genus1
from .multipliers import (
    delta_log,
    delta_multiplier,
    is_theta_group,
    rademacher_integer,
    theta_multiplier,
    theta_value,
    verify_multiplier_relation,
)
from .symbols import egcd, find_prime_in_ap, is_prime, kronecker, legendre_oracle, sqrt_mod
from .symplectic import (
    SiegelPoint,
    SymplecticMatrix,
    act,
    format_literal,
    inverse,
    is_symplectic,
    j_factor,
    make_symplectic,
    mul,
    parse_literal,
    sl2,
    translation,
)
from .winding import w_cocycle_exact

__version__ = "0.1.0"

__all__ = [
    "ARGUMENT", "PETERSSON", "CocycleRoundingError", "CocycleValue", "L_value", "cocycle_identity_check",
    "sigma_factor", "w_cocycle", "compare_with_oracle", "corollary_zero", "w_exact_genus1", "w_genus1",
    "delta_log", "delta_multiplier", "is_theta_group", "rademacher_integer", "theta_multiplier", "theta_value",
    "verify_multiplier_relation", "egcd", "find_prime_in_ap", "is_prime", "kronecker", "legendre_oracle",
    "sqrt_mod", "SiegelPoint", "SymplecticMatrix", "act", "format_literal", "inverse", "is_symplectic",
    "j_factor", "make_symplectic", "mul", "parse_literal", "sl2", "translation", "w_cocycle_exact",
]
