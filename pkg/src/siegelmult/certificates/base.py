"""Certificates: ordered, replayable verification steps.

A step names an operation from :data:`OPS` together with JSON-primitive
inputs (matrices as literals, integers as decimal strings).  Replaying a
certificate re-runs every operation from those inputs alone and compares
with the recorded ``computed`` value.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import mpmath
import numpy as np

from ..cocycle import w_cocycle
from ..genus1 import corollary_zero, w_exact_genus1
from ..multipliers import rademacher_integer, theta_multiplier
from ..winding import w_cocycle_exact
from ..symbols import is_prime, kronecker, legendre_oracle, sqrt_mod
from ..symplectic import (
    SymplecticMatrix,
    epsilon,
    format_literal,
    in_principal_congruence,
    is_symplectic,
    j_at_base_exact,
    mul,
    parabolic_memberships,
    parse_literal,
)

NUMERIC_TOL = 1e-9


def enc(value: Any) -> Any:
    """Serialize a value for a certificate."""
    if isinstance(value, SymplecticMatrix):
        return format_literal(value)
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, complex):
        return [value.real, value.imag]
    if isinstance(value, float):
        return value
    if isinstance(value, (list, tuple)):
        return [enc(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def _m(lit: str) -> SymplecticMatrix:
    return parse_literal(lit)


def _num(x) -> complex:
    if isinstance(x, list):
        return complex(x[0], x[1])
    return complex(float(x))


# ---------------------------------------------------------------------------
# operations available to steps

OPS: dict[str, Callable[..., Any]] = {}


def op(name: str):
    def register(fn):
        OPS[name] = fn
        return fn
    return register


@op("product")
def _op_product(matrices: list[str]):
    out = _m(matrices[0])
    for lit in matrices[1:]:
        out = mul(out, _m(lit))
    return out


@op("first_row")
def _op_first_row(matrices: list[str]):
    P = _op_product(matrices)
    return ",".join(str(x) for x in P.rows[0][:2])


@op("second_row")
def _op_second_row(matrices: list[str]):
    P = _op_product(matrices)
    return ",".join(str(x) for x in P.rows[1][:2])


@op("is_symplectic")
def _op_is_symplectic(m: str):
    rows = [[int(x) for x in r.split(",")] for r in m.split(";")]
    return is_symplectic(rows)


@op("in_congruence")
def _op_in_congruence(m: str, q: str):
    return in_principal_congruence(_m(m), int(q))


@op("w")
def _op_w(m: str, n: str, convention: str = "argument"):
    return w_cocycle(_m(m), _m(n), convention).w


@op("w_exact_route")
def _op_w_exact_route(m: str, n: str, convention: str = "argument"):
    return w_cocycle_exact(_m(m), _m(n), convention).w


@op("w_difference")
def _op_w_difference(m1: str, n1: str, m2: str, n2: str, convention: str = "argument"):
    return w_cocycle(_m(m1), _m(n1), convention).w - w_cocycle(_m(m2), _m(n2), convention).w


@op("w_table")
def _op_w_table(m: str, s: str):
    return w_exact_genus1(_m(m), _m(s))


@op("corollary_zero")
def _op_corollary_zero(m: str, s: str):
    return corollary_zero(_m(m), _m(s))


@op("kronecker")
def _op_kronecker(c: str, d: str):
    return kronecker(int(c), int(d))


@op("legendre")
def _op_legendre(c: str, p: str):
    return legendre_oracle(int(c), int(p))


@op("sqrt_mod")
def _op_sqrt_mod(c: str, p: str):
    return sqrt_mod(int(c), int(p))


@op("is_prime")
def _op_is_prime(n: str):
    return is_prime(int(n))


@op("mod")
def _op_mod(n: str, m: str):
    return int(n) % int(m)


@op("sign")
def _op_sign(n: str):
    v = int(n)
    return (v > 0) - (v < 0)


@op("affine")
def _op_affine(terms: list[list[str]]):
    """Sum of products of the integers in each term."""
    return sum(math.prod(int(x) for x in t) for t in terms)


@op("epsilon")
def _op_epsilon(m: str):
    return epsilon(_m(m))


@op("is_klingen")
def _op_is_klingen(m: str):
    return bool(parabolic_memberships(_m(m)) & {"Klingen1", "Klingen2"})


@op("im_j_exact")
def _op_im_j_exact(m: str):
    return j_at_base_exact(_m(m))[1]


@op("im_j_numeric")
def _op_im_j_numeric(m: str):
    """Floating-point LU determinant, with precision scaled to the entry size."""
    M = _m(m)
    digits = len(str(max(abs(x) for row in M.rows for x in row)))
    with mpmath.workdps(30 + 2 * M.g * digits):
        X = mpmath.matrix([[mpmath.mpc(d, c) for c, d in zip(rc, rd)] for rc, rd in zip(M.C, M.D)])
        return float(mpmath.im(mpmath.det(X)))


@op("rademacher")
def _op_rademacher(m: str):
    return rademacher_integer(_m(m))


@op("theta_multiplier")
def _op_theta_multiplier(m: str):
    return theta_multiplier(_m(m)).value


@op("symbol_relation")
def _op_symbol_relation(lhs: list, rhs: list, q: str, phase: float = 0.0):
    """prod(lhs) / (prod(rhs) exp(2 pi i phase)) for Mennicke-type symbols."""
    from .mennicke import symbol_value

    num = complex(1.0)
    for item in lhs:
        num *= symbol_value(item[0], int(item[1]), int(item[2]), int(q))
    den = complex(np.exp(2j * math.pi * phase))
    for item in rhs:
        den *= symbol_value(item[0], int(item[1]), int(item[2]), int(q))
    return num / den


# ---------------------------------------------------------------------------

@dataclass
class Step:
    description: str
    op: str
    inputs: dict
    expected: Any
    computed: Any
    tol: float | None = None

    @property
    def passed(self) -> bool:
        return values_match(self.computed, self.expected, self.tol)

    def to_dict(self) -> dict:
        d = {
            "description": self.description,
            "op": self.op,
            "inputs": self.inputs,
            "computed": self.computed,
            "expected": self.expected,
            "pass": self.passed,
        }
        if self.tol is not None:
            d["tol"] = self.tol
        return d


def values_match(computed, expected, tol: float | None) -> bool:
    if tol is None:
        return computed == expected
    try:
        return abs(_num(computed) - _num(expected)) < tol
    except (TypeError, ValueError):
        return False


@dataclass
class Certificate:
    claim: str
    level: int | None = None
    steps: list[Step] = field(default_factory=list)
    conclusion: str = ""

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.steps)

    def check(self, description: str, op_name: str, expected: Any, tol: float | None = None, **inputs) -> Any:
        """Run ``op_name`` on ``inputs``, record the step, return the raw result."""
        inputs = {k: enc(v) for k, v in inputs.items()}
        raw = OPS[op_name](**inputs)
        self.steps.append(Step(description, op_name, inputs, enc(expected), enc(raw), tol))
        return raw

    def failures(self) -> list[Step]:
        return [s for s in self.steps if not s.passed]

    def to_dict(self) -> dict:
        return {
            "claim": self.claim,
            "level": None if self.level is None else str(self.level),
            "steps": [s.to_dict() for s in self.steps],
            "conclusion": self.conclusion,
            "pass": self.passed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        steps = [Step(s["description"], s["op"], s["inputs"], s["expected"], s["computed"], s.get("tol"))
                 for s in data["steps"]]
        level = data.get("level")
        return cls(data["claim"], None if level is None else int(level), steps, data.get("conclusion", ""))


@dataclass(frozen=True)
class ReplayResult:
    index: int
    description: str
    reproduced: bool
    recomputed: Any


def replay(cert: Certificate | dict) -> list[ReplayResult]:
    """Recompute every step from its recorded inputs."""
    if isinstance(cert, dict):
        cert = Certificate.from_dict(cert)
    out = []
    for i, step in enumerate(cert.steps):
        value = enc(OPS[step.op](**step.inputs))
        same = values_match(value, step.computed, NUMERIC_TOL if step.tol is not None else None)
        out.append(ReplayResult(i, step.description, same, value))
    return out
