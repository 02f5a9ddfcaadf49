"""Empirical Mennicke-symbol axioms for the theta multiplier on Gamma_1[q].

For (a, b; c, d) in Gamma_1[q] the bracket is [b/a] = v(iota3(M)) and the
brace is {c/d} = v(iota1(M))^-1.  The bracket depends only on the first
row and the brace only on the second row, so a fixed completion is used.
"""
from __future__ import annotations

import math
import random
from functools import lru_cache

from ..multipliers import MULTIPLIER_TOL, RationalPoint, default_samples, theta_multiplier
from ..symplectic import SiegelPoint, iota1, iota2, iota3, sl2
from .arithmetic import gamma1_completion
from .base import Certificate

SYMBOL_KINDS = ("bracket", "brace", "brace2")
DEFAULT_MAX_DOUBLINGS = 4


def _first_row_completion(a: int, b: int, q: int):
    # (a, b; c, d) with c = 0, d = 1 mod q: transpose trick on the second-row completion
    G = gamma1_completion(b, a, q)
    (d, c), _ = G.rows
    return sl2(a, b, c, d)


_SECOND = ((0, 1, 0, 1.0), (1, 10, 2, 1.1), (-3, 20, -2, 0.9))  # (delta num, den, Re tau * 10, Im tau)


def adapted_samples(c: int, d: int) -> list:
    """Points on the horoball at the cusp -d/c: Im z1 = s/c^2, so Im of the image is 1/s.

    Real parts are rational and exact; theta at these points is large, not
    near one of its zeros.
    """
    if c == 0:
        return default_samples(2)
    pts = []
    for s, (dn, dd, tau_re10, tau_im) in zip((1.0, 0.8, 1.25), _SECOND):
        Q = abs(c) * 20
        P = ((-d * (Q // c), dn * (Q // dd)), (dn * (Q // dd), tau_re10 * (Q // 10)))
        pts.append(RationalPoint(P, Q, ((s / (c * c), 0.0), (0.0, tau_im))))
    return pts


def _swap(Z):
    if isinstance(Z, RationalPoint):
        return RationalPoint(tuple(tuple(r[::-1]) for r in Z.P[::-1]), Z.Q, tuple(tuple(r[::-1]) for r in Z.Y[::-1]))
    return SiegelPoint(Z.Z[::-1, ::-1].copy())


@lru_cache(maxsize=4096)
def symbol_value(kind: str, x: int, y: int, q: int) -> complex:
    """[x/y] (``bracket``: x = b, y = a) or {x/y} (``brace``: x = c, y = d).

    ``brace2`` is the brace computed through iota2 instead of iota1.
    """
    if kind == "bracket":
        M = _first_row_completion(y, x, q)
        return theta_multiplier(iota3(M)).value
    if kind in ("brace", "brace2"):
        M = gamma1_completion(x, y, q)
        emb = iota1 if kind == "brace" else iota2
        pts = adapted_samples(x, y)
        if kind == "brace2":
            pts = [_swap(Z) for Z in pts]
        return 1.0 / theta_multiplier(emb(M), pts).value
    raise ValueError(f"unknown symbol kind {kind!r}; choose from {SYMBOL_KINDS}")


def _pair(rng: random.Random, q: int, bound: int) -> tuple[int, int]:
    """Coprime (u, t) with u = 0 and t = 1 mod q."""
    while True:
        u, t = q * rng.randint(-bound, bound), 1 + q * rng.randint(-bound, bound)
        if math.gcd(u, t) == 1:
            return u, t


RELATIONS = ("trivial", "MS1-shift", "MS1-row", "MS2", "bracket-brace", "iota1=iota2", "brace-shift")


def _relation(cert: Certificate, name: str, desc: str, lhs: list, rhs: list, q: int, failed: dict) -> None:
    cert.check(f"{name}: {desc}", "symbol_relation", complex(1.0), tol=MULTIPLIER_TOL,
               lhs=[[k, x, y] for k, x, y in lhs], rhs=[[k, x, y] for k, x, y in rhs], q=q)
    if not cert.steps[-1].passed:
        failed[name] = failed.get(name, 0) + 1


def _level_checks(cert: Certificate, q: int, samples: int, rng: random.Random, bound: int) -> dict[str, int]:
    """Run every relation at level q; returns failure counts by relation name."""
    failed: dict[str, int] = {}
    _relation(cert, "trivial", f"[0/1] = 1, q={q}", [("bracket", 0, 1)], [], q, failed)
    for _ in range(samples):
        b, a = _pair(rng, q, bound)
        y, x = rng.randint(-3, 3), rng.randint(-3, 3)
        _relation(cert, "MS1-shift", f"[b/a] = [b+qay/a], (a,b,y,q)=({a},{b},{y},{q})",
                  [("bracket", b, a)], [("bracket", b + q * a * y, a)], q, failed)
        _relation(cert, "MS1-row", f"[b/a] = [b/a+xb], (a,b,x,q)=({a},{b},{x},{q})",
                  [("bracket", b, a)], [("bracket", b, a + x * b)], q, failed)
        b2 = q * rng.randint(-bound, bound)
        while math.gcd(b2, a) != 1:
            b2 = q * rng.randint(-bound, bound)
        _relation(cert, "MS2", f"[b1b2/a] = [b1/a][b2/a], (a,b1,b2,q)=({a},{b},{b2},{q})",
                  [("bracket", b * b2, a)], [("bracket", b, a), ("bracket", b2, a)], q, failed)
        c1, c2 = b, b2
        _relation(cert, "bracket-brace", f"[c1/a]{{c2/a}} = {{c1^2 c2/a}}, (a,c1,c2,q)=({a},{c1},{c2},{q})",
                  [("bracket", c1, a), ("brace", c2, a)], [("brace", c1 * c1 * c2, a)], q, failed)
        c, d = _pair(rng, q, bound)
        _relation(cert, "iota1=iota2", f"v(iota1(M)) = v(iota2(M)), (c,d,q)=({c},{d},{q})",
                  [("brace", c, d)], [("brace2", c, d)], q, failed)
        _relation(cert, "brace-shift", f"{{c/d}} = {{c/d+yc}}, (c,d,y,q)=({c},{d},{y},{q})",
                  [("brace", c, d)], [("brace", c, d + y * c)], q, failed)
    return failed


def mennicke_axiom_check(q: int = 4, samples: int = 10, seed: int = 0,
                         max_doublings: int = DEFAULT_MAX_DOUBLINGS, bound: int = 2) -> Certificate:
    """MS1, MS2 and the bracket/brace relation for the theta-derived symbols.

    A level that fails is kept in the certificate as a witness and the check
    is repeated at 2q, up to ``max_doublings`` times.
    """
    if q % 4 or q <= 0:
        raise ValueError("q must be a positive multiple of 4")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    cert = Certificate(claim="mennicke")
    level, passing, notes = q, None, []
    for _ in range(max_doublings + 1):
        rng = random.Random(f"mennicke:{level}:{seed}")
        failed = _level_checks(cert, level, samples, rng, bound)
        if not failed:
            passing = level
            notes.append(f"q={level}: all relations hold")
            break
        notes.append(f"q={level}: " + ", ".join(f"{k} fails {v}x" for k, v in failed.items()))
        level *= 2
    cert.level = passing
    summary = "; ".join(notes)
    if passing is None:
        cert.conclusion = f"{summary}; no passing level up to q={level // 2}"
    else:
        cert.conclusion = f"{summary}; minimal passing q = {passing}"
    return cert
