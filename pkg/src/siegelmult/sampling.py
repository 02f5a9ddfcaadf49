"""Seeded random generators for integral symplectic matrices.

Distributions:

* ``random_sl2``: second row (c, d) uniform on coprime pairs in
  [-bound, bound]^2, first row the Bezout solution shifted by a uniformly
  chosen admissible multiple of (c, d); with probability ``p_upper`` the
  matrix is upper triangular (c = 0) with uniform b.
* ``random_sp4``: uniform words of length 1..max_len in a fixed generating
  set (translations, lower translations, I, P, levi(U) and the three
  embeddings of small SL(2) elements), rejected until every entry is within
  ``bound``.
* ``random_theta_word``: words of length 1..6 in iota1((1,2;0,1))^(+-1),
  iota1(I), iota3(U) and translations by symmetric S with even diagonal.
"""
from __future__ import annotations

import math
import random

from .symbols import egcd
from .symplectic import (
    SymplecticMatrix,
    identity,
    involution_I,
    iota1,
    iota2,
    iota3,
    levi,
    lower_translation,
    max_entry,
    mul,
    swap_P,
    translation,
)


def _coprime_pair(rng: random.Random, bound: int) -> tuple[int, int]:
    while True:
        c, d = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if math.gcd(c, d) == 1:
            return c, d


def complete_row(c: int, d: int) -> tuple[int, int]:
    """Some (a, b) with a d - b c = 1."""
    g, x, y = egcd(d, c)
    if g != 1:
        raise ValueError(f"({c}, {d}) is not a primitive row")
    return x, -y


def random_sl2(rng: random.Random, bound: int = 50, p_upper: float = 0.05) -> SymplecticMatrix:
    if rng.random() < p_upper:
        s = rng.choice((1, -1))
        return SymplecticMatrix(((s, rng.randint(-bound, bound)), (0, s)))
    c, d = _coprime_pair(rng, bound)
    if c == 0:
        return SymplecticMatrix(((d, rng.randint(-bound, bound)), (0, d)))
    a0, b0 = complete_row(c, d)
    ks = [k for k in range(-4 * bound - 2, 4 * bound + 3)
          if abs(a0 + k * c) <= bound and abs(b0 + k * d) <= bound]
    if ks:
        k = rng.choice(ks)
    else:
        k = min(range(-4 * bound, 4 * bound + 1), key=lambda t: max(abs(a0 + t * c), abs(b0 + t * d)))
    return SymplecticMatrix(((a0 + k * c, b0 + k * d), (c, d)))


def random_symmetric(rng: random.Random, g: int, bound: int) -> tuple[tuple[int, ...], ...]:
    S = [[0] * g for _ in range(g)]
    for i in range(g):
        for j in range(i, g):
            S[i][j] = S[j][i] = rng.randint(-bound, bound)
    return tuple(tuple(r) for r in S)


def _small_sl2(rng: random.Random) -> SymplecticMatrix:
    return random_sl2(rng, bound=3, p_upper=0.2)


def _sp4_letter(rng: random.Random) -> SymplecticMatrix:
    kind = rng.randrange(8)
    if kind == 0:
        return translation(random_symmetric(rng, 2, 2))
    if kind == 1:
        return lower_translation(random_symmetric(rng, 2, 2))
    if kind == 2:
        return involution_I(2)
    if kind == 3:
        return swap_P()
    if kind == 4:
        U = _small_sl2(rng).rows
        if rng.random() < 0.5:
            U = ((-U[0][0], -U[0][1]), U[1])
        return levi(U)
    return (iota1, iota2, iota3)[kind - 5](_small_sl2(rng))


def random_sp4(rng: random.Random, bound: int = 50, max_len: int = 5) -> SymplecticMatrix:
    while True:
        M = identity(2)
        for _ in range(rng.randint(1, max_len)):
            M = mul(M, _sp4_letter(rng))
        if max_entry(M) <= bound:
            return M


def random_symplectic(rng: random.Random, g: int, bound: int = 50) -> SymplecticMatrix:
    if g == 1:
        return random_sl2(rng, bound)
    if g == 2:
        return random_sp4(rng, bound)
    raise ValueError("random generation is implemented for g <= 2")


THETA_T = SymplecticMatrix(((1, 2), (0, 1)))
THETA_T_INV = SymplecticMatrix(((1, -2), (0, 1)))
INVERSION = SymplecticMatrix(((0, -1), (1, 0)))


def _theta_letter(rng: random.Random) -> SymplecticMatrix:
    kind = rng.randrange(5)
    if kind == 0:
        return iota1(THETA_T)
    if kind == 1:
        return iota1(THETA_T_INV)
    if kind == 2:
        return iota1(INVERSION)
    if kind == 3:
        return iota3(random_sl2(rng, bound=2, p_upper=0.2))
    S = random_symmetric(rng, 2, 1)
    return translation(((2 * S[0][0], S[0][1]), (S[1][0], 2 * S[1][1])))


def random_theta_word(rng: random.Random, max_len: int = 6) -> SymplecticMatrix:
    M = identity(2)
    for _ in range(rng.randint(1, max_len)):
        M = mul(M, _theta_letter(rng))
    return M


def random_gamma1(rng: random.Random, q: int, bound: int = 40) -> SymplecticMatrix:
    """Element of Gamma_1[q] with second row drawn from c = 0, d = 1 mod q."""
    while True:
        c = q * rng.randint(-bound, bound)
        d = 1 + q * rng.randint(-bound, bound)
        if math.gcd(c, d) != 1:
            continue
        a0, b0 = complete_row(c, d)
        # a = 1 holds automatically mod q; choose the shift making b = 0 mod q
        k = (-b0) % q if d % q == 1 else 0
        a, b = a0 + k * c, b0 + k * d
        if a % q == 1 % q and b % q == 0:
            return SymplecticMatrix(((a, b), (c, d)))


def _upper_sl2(rng: random.Random, bound: int) -> SymplecticMatrix:
    s = rng.choice((1, -1))
    return SymplecticMatrix(((s, rng.randint(-bound, bound)), (0, s)))


def random_table_pair(rng: random.Random, case: str, bound: int = 30) -> tuple[SymplecticMatrix, SymplecticMatrix]:
    """Genus-1 pair (M, S) whose second-row data falls in the named table case.

    Cases: ``generic``, ``m1p=0``, ``m1=0``, ``c=0``, ``c=m1=m1p=0``.
    """
    from .symplectic import inverse

    while True:
        if case == "generic":
            M, S = random_sl2(rng, bound, 0.0), random_sl2(rng, bound, 0.0)
        elif case == "m1p=0":
            # MS upper triangular: S = M^-1 X
            M, X = random_sl2(rng, bound, 0.0), _upper_sl2(rng, bound)
            S = mul(inverse(M), X)
        elif case == "m1=0":
            M, S = _upper_sl2(rng, bound), random_sl2(rng, bound, 0.0)
        elif case == "c=0":
            M, S = random_sl2(rng, bound, 0.0), _upper_sl2(rng, bound)
        elif case == "c=m1=m1p=0":
            M, S = _upper_sl2(rng, bound), _upper_sl2(rng, bound)
        else:
            raise ValueError(f"unknown table case {case!r}")
        (_, _), (m1, _) = M.rows
        (_, _), (c, _) = S.rows
        (_, _), (m1p, _) = mul(M, S).rows
        nz = (m1 != 0, c != 0, m1p != 0)
        want = {"generic": (True, True, True), "m1p=0": (True, True, False), "m1=0": (False, True, True),
                "c=0": (True, False, True), "c=m1=m1p=0": (False, False, False)}[case]
        if nz == want:
            return M, S
