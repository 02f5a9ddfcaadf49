"""Continued argument of det(CZ+D) and the integer cocycle w(M, N).

Two sign normalizations of the cocycle are in use and they differ only by
sign:

``"argument"``
    (L(MN,Z) - L(M,NZ) - L(N,Z)) / 2pi, the argument defect of J under
    composition.  The closed forms for the genus-2 special values
    (translations, the swap P, the involution I) are stated in this one.
``"petersson"``
    the negative.  This is the normalization of the genus-1 sign table and
    the one for which v(MN) = v(M) v(N) exp(2 pi i r w(M,N)) holds when
    v(M) det(CZ+D)^r is an automorphy factor.  :func:`sigma_factor` uses it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .symplectic import (
    GenusMismatch,
    SiegelPoint,
    SymplecticMatrix,
    act,
    j_at_base_exact,
    mul,
)

Convention = Literal["argument", "petersson"]
ARGUMENT: Convention = "argument"
PETERSSON: Convention = "petersson"

TWO_PI = 2.0 * math.pi
ROUND_GUARD = 1e-6
INITIAL_SEGMENTS = 8
MAX_DEPTH = 40
STEP_BOUND = math.pi / 2
RETRY_STEP_BOUND = math.pi / 8


class ContinuationError(ArithmeticError):
    """Adaptive subdivision hit its depth limit."""


class CocycleRoundingError(ArithmeticError):
    def __init__(self, raw: float, message: str):
        super().__init__(message)
        self.raw = raw


@dataclass(frozen=True)
class CocycleValue:
    w: int
    residual: float
    path_steps: int
    convention: Convention = ARGUMENT

    def __int__(self) -> int:
        return self.w


@dataclass(frozen=True)
class WeightedFactor:
    r: float
    w: int
    value: complex


def principal_arg(z: complex) -> float:
    """Arg z in (-pi, pi]."""
    z = complex(z)
    if z == 0:
        raise ValueError("argument of 0 is undefined")
    a = math.atan2(z.imag, z.real)
    return math.pi if a <= -math.pi else a


def _arg_exact(re: int, im: int) -> float:
    if re == 0 and im == 0:
        raise ValueError("J vanishes")
    if im == 0:
        return 0.0 if re > 0 else math.pi
    return math.atan2(float(im), float(re))


def arg_j_at_base(M: SymplecticMatrix) -> float:
    """Principal argument of J(M, iE); exact-input aware so the branch cut is hit exactly."""
    if M.integral and M.g <= 4:
        return _arg_exact(*j_at_base_exact(M))
    _, _, C, D = M.numeric_blocks()
    z = complex(np.linalg.det(1j * C + D))
    if abs(z.imag) <= 1e-13 * abs(z) and z.real < 0:
        return math.pi
    return principal_arg(z)


def _j_along_segment(M: SymplecticMatrix, Z: np.ndarray):
    g = M.g
    _, _, C, D = M.numeric_blocks()
    start = 1j * np.eye(g)
    delta = Z - start
    if g == 1:
        c, d, z0, dz = C[0, 0], D[0, 0], start[0, 0], delta[0, 0]
        return lambda ts: c * (z0 + ts * dz) + d
    CS, CD = C @ start + D, C @ delta

    def f(ts):
        return np.linalg.det(CS[None, :, :] + ts[:, None, None] * CD[None, :, :])

    return f


def continue_argument(f, max_step: float = STEP_BOUND, initial: int = INITIAL_SEGMENTS,
                      max_depth: int = MAX_DEPTH) -> tuple[float, int]:
    """Total change of arg f(t) for t in [0, 1], plus the number of segments used.

    Segments are bisected until every step changes the principal argument by
    less than ``max_step``.
    """
    ts = np.linspace(0.0, 1.0, initial + 1)
    vals = f(ts)
    if np.any(vals == 0):
        raise ContinuationError("J vanishes on the path")
    min_width = 1.0 / initial / 2.0**max_depth
    while True:
        steps = np.angle(vals[1:] / vals[:-1])
        bad = np.abs(steps) >= max_step
        if not bad.any():
            return float(steps.sum()), len(steps)
        left, right = ts[:-1][bad], ts[1:][bad]
        if np.min(right - left) < min_width:
            raise ContinuationError(f"subdivision depth {max_depth} exceeded")
        mids = (left + right) / 2
        new_vals = f(mids)
        if np.any(new_vals == 0):
            raise ContinuationError("J vanishes on the path")
        ts = np.concatenate([ts, mids])
        vals = np.concatenate([vals, new_vals])
        order = np.argsort(ts, kind="stable")
        ts, vals = ts[order], vals[order]


def L_value(M: SymplecticMatrix, Z: SiegelPoint, max_step: float = STEP_BOUND) -> float:
    """Continuous argument of J(M, .) along the segment iE -> Z, principal at iE."""
    return _L_with_steps(M, Z, max_step)[0]


def _L_with_steps(M: SymplecticMatrix, Z: SiegelPoint, max_step: float) -> tuple[float, int]:
    if M.g != Z.g:
        raise GenusMismatch(f"matrix genus {M.g} vs point genus {Z.g}")
    delta, steps = continue_argument(_j_along_segment(M, Z.Z), max_step=max_step)
    return arg_j_at_base(M) + delta, steps


def _sign(convention: Convention) -> int:
    if convention == ARGUMENT:
        return 1
    if convention == PETERSSON:
        return -1
    raise ValueError(f"unknown convention {convention!r}")


def cocycle_defect(M: SymplecticMatrix, N: SymplecticMatrix, Z: SiegelPoint,
                   max_step: float = STEP_BOUND) -> tuple[float, int]:
    """Unrounded (L(MN,Z) - L(M,NZ) - L(N,Z)) / 2pi at an arbitrary point Z."""
    MN = mul(M, N)
    l_mn, s1 = _L_with_steps(MN, Z, max_step)
    l_m, s2 = _L_with_steps(M, act(N, Z), max_step)
    l_n, s3 = _L_with_steps(N, Z, max_step)
    return (l_mn - l_m - l_n) / TWO_PI, s1 + s2 + s3


def w_cocycle(M: SymplecticMatrix, N: SymplecticMatrix, convention: Convention = ARGUMENT,
              guard: float = ROUND_GUARD) -> CocycleValue:
    """w(M, N) evaluated at iE from the definition.

    Raises :class:`CocycleRoundingError` when the unrounded value is not
    within ``guard`` of an integer even after a finer retry.
    """
    if M.g != N.g:
        raise GenusMismatch(f"genus {M.g} vs {N.g}")
    sign = _sign(convention)
    base = SiegelPoint.base(M.g)
    NZ = act(N, base)
    fixed = arg_j_at_base(mul(M, N)) - arg_j_at_base(N)
    raw = 0.0
    for bound in (STEP_BOUND, RETRY_STEP_BOUND):
        l_m, steps = _L_with_steps(M, NZ, bound)
        raw = (fixed - l_m) / TWO_PI
        w = round(raw)
        residual = abs(raw - w)
        if residual < guard:
            return CocycleValue(sign * int(w), residual, steps, convention)
    raise CocycleRoundingError(sign * raw, f"w(M, N) raw value {sign * raw!r} is not integral")


def sigma_factor(r: float, M: SymplecticMatrix, N: SymplecticMatrix) -> WeightedFactor:
    """exp(2 pi i r w(M, N)) with w in the multiplier (Petersson) normalization."""
    w = w_cocycle(M, N, PETERSSON).w
    return WeightedFactor(r, w, unit_power(r * w))


def unit_power(t: float) -> complex:
    """exp(2 pi i t), exactly 1, -1, i or -i when 4t is integral."""
    quarter = 4 * t
    if float(quarter).is_integer():
        return (1, 1j, -1, -1j)[int(quarter) % 4] + 0j
    return complex(np.exp(2j * math.pi * t))


@dataclass(frozen=True)
class CocycleCheck:
    holds: bool
    w12_3: CocycleValue
    w1_2: CocycleValue
    w1_23: CocycleValue
    w2_3: CocycleValue


def cocycle_identity_check(M1: SymplecticMatrix, M2: SymplecticMatrix, M3: SymplecticMatrix,
                           convention: Convention = ARGUMENT) -> CocycleCheck:
    """w(M1M2, M3) + w(M1, M2) == w(M1, M2M3) + w(M2, M3)."""
    a = w_cocycle(mul(M1, M2), M3, convention)
    b = w_cocycle(M1, M2, convention)
    c = w_cocycle(M1, mul(M2, M3), convention)
    d = w_cocycle(M2, M3, convention)
    return CocycleCheck(a.w + b.w == c.w + d.w, a, b, c, d)
