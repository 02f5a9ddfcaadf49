"""Randomized checks of the special cocycle values in genus 1 and 2.

Each tag draws instances from the hypothesis family of one closed-form
statement (seeded ``random.Random``), evaluates w with the continuation
oracle, and records one step per comparison.  All closed forms here are in
the ``"argument"`` normalization of w.
"""
from __future__ import annotations

import random

from ..cocycle import ARGUMENT
from ..sampling import random_sl2, random_sp4, random_symmetric
from ..symplectic import (
    SymplecticMatrix,
    identity,
    inverse,
    involution_I,
    iota1,
    iota2,
    iota3,
    j_at_base_exact,
    levi,
    lower_translation,
    mul,
    swap_P,
    translation,
)
from .base import Certificate

LEMMA_TAGS = ("LTra", "TraTr", "Pval", "ParM", "KSz", "ITra", "TraI", "iEiZ-w", "iota3-w")


def _trace(S) -> int:
    return sum(S[i][i] for i in range(len(S)))


def _random_gl2(rng: random.Random, det: int | None = None) -> tuple:
    U = random_sl2(rng, bound=4, p_upper=0.2).rows
    if det == -1 or (det is None and rng.random() < 0.5):
        U = ((-U[0][0], -U[0][1]), U[1])
    return U


def random_siegel_parabolic(rng: random.Random, det: int | None = None) -> SymplecticMatrix:
    """levi(U) translation(S): every integral Siegel-parabolic matrix has this form."""
    return mul(levi(_random_gl2(rng, det)), translation(random_symmetric(rng, 2, 4)))


def _lower_unimodular(rng: random.Random) -> tuple:
    return ((rng.choice((1, -1)), 0), (rng.randint(-3, 3), rng.choice((1, -1))))


def random_klingen(rng: random.Random, kind: int | None = None) -> SymplecticMatrix:
    """Word in the generators of the first (kind 1) or second (kind 2) Klingen parabolic."""
    kind = kind or rng.choice((1, 2))
    M = identity(2)
    for _ in range(rng.randint(1, 5)):
        t = rng.randrange(3)
        if t == 0:
            m = random_sl2(rng, bound=4, p_upper=0.1)
            X = iota1(m) if kind == 1 else iota2(m)
        elif t == 1:
            L = _lower_unimodular(rng)
            X = levi(L if kind == 1 else ((L[0][0], L[1][0]), (0, L[1][1])))
        else:
            X = translation(random_symmetric(rng, 2, 3))
        M = mul(M, X)
    return M


def _ltra(cert: Certificate, rng: random.Random, i: int) -> None:
    g = 1 + i % 2
    S = random_symmetric(rng, g, 5)
    M = random_sp4(rng) if g == 2 else random_sl2(rng)
    cert.check(f"w(T_S, M) = 0, g={g}", "w", 0, m=translation(S), n=M)


def _tratr(cert: Certificate, rng: random.Random, i: int) -> None:
    M = random_sl2(rng)
    x = rng.randint(-50, 50)
    T = SymplecticMatrix(((1, x), (0, 1)))
    cert.check(f"w(M, T^{x}) = 0", "w", 0, m=M, n=T)
    cert.check(f"w(T^{x}, M) = 0", "w", 0, m=T, n=M)
    cert.check("table agrees: w(M, T^x) = 0", "w_table", 0, m=M, s=T)
    cert.check("table agrees: w(T^x, M) = 0", "w_table", 0, m=T, s=M)


def _pval(cert: Certificate, rng: random.Random, i: int) -> None:
    while True:
        M = random_sp4(rng)
        im = j_at_base_exact(M)[1]
        if im != 0:
            break
    expected = 0 if im < 0 else -1
    P = swap_P()
    cert.check(f"w(P, M) with Im det(iC+D) = {im}", "w", expected, m=P, n=M)
    cert.check(f"w(M, P) with Im det(iC+D) = {im}", "w", expected, m=M, n=P)


def _parm(cert: Certificate, rng: random.Random, i: int) -> None:
    M = random_siegel_parabolic(rng, det=1)
    N = random_siegel_parabolic(rng)
    cert.check("epsilon(M) = 1", "epsilon", 1, m=M)
    cert.check("w(M, N) = 0 for Siegel-parabolic M, N with epsilon(M) > 0", "w", 0, m=M, n=N)


def _ksz(cert: Certificate, rng: random.Random, i: int) -> None:
    M = random_klingen(rng, 1 + i % 2)
    N = random_siegel_parabolic(rng, det=1)
    cert.check("M is Klingen parabolic", "is_klingen", True, m=M)
    cert.check("epsilon(N) = 1", "epsilon", 1, m=N)
    cert.check("w(M, N) = 0 for Klingen M, Siegel N, epsilon(N) > 0", "w", 0, m=M, n=N)


def _sym_with_trace(rng: random.Random, i: int):
    S = random_symmetric(rng, 2, 5)
    if i % 10 == 0:
        # force the boundary tr(S) = 0
        S = ((S[0][0], S[0][1]), (S[1][0], -S[0][0]))
    return S


def _itra(cert: Certificate, rng: random.Random, i: int) -> None:
    S = _sym_with_trace(rng, i)
    tr = _trace(S)
    expected = 0 if tr >= 0 else -1
    cert.check(f"w(I, T_S) with tr S = {tr}", "w", expected, m=involution_I(2), n=translation(S))


def _trai(cert: Certificate, rng: random.Random, i: int) -> None:
    S = _sym_with_trace(rng, i)
    tr = _trace(S)
    # at tr S = 0 the value is 0 (S = 0 gives w(E, I) = 0)
    expected = -1 if tr > 0 else 0
    I = involution_I(2)
    cert.check(f"w(L_S, I) with tr S = {tr}", "w", expected, m=lower_translation(S), n=I)
    T = translation(S)
    conj = mul(I, T, inverse(I))
    cert.check("w(I T_S I^-1, I) = w(I, T_S)", "w_difference", 0, m1=conj, n1=I, m2=I, n2=T)


def _ieiz(cert: Certificate, rng: random.Random, i: int) -> None:
    M, N = random_sl2(rng, bound=30), random_sl2(rng, bound=30)
    P = swap_P()
    cert.check("P iota1(M) P^-1 = iota2(M)", "product", iota2(M), matrices=[P, iota1(M), inverse(P)])
    cert.check("w(iota2(M), P) = w(P, iota1(M))", "w_difference", 0, m1=iota2(M), n1=P, m2=P, n2=iota1(M))
    cert.check("w(iota1(M), iota1(N)) = w(M, N)", "w_difference", 0, m1=iota1(M), n1=iota1(N), m2=M, n2=N)
    cert.check("w(iota2(M), iota2(N)) = w(M, N)", "w_difference", 0, m1=iota2(M), n1=iota2(N), m2=M, n2=N)


def _iota3(cert: Certificate, rng: random.Random, i: int) -> None:
    M, N = random_sl2(rng, bound=30), random_sl2(rng, bound=30)
    cert.check("w(iota3(M), iota3(N)) = 0", "w", 0, m=iota3(M), n=iota3(N))


_CHECKS = {
    "LTra": (_ltra, "w((E,S;0,E), M) = 0"),
    "TraTr": (_tratr, "w(M, (1,x;0,1)) = w((1,x;0,1), M) = 0 in genus 1"),
    "Pval": (_pval, "w(P, M) = w(M, P) = 0 if Im det(iC+D) < 0, -1 if > 0"),
    "ParM": (_parm, "w(M, N) = 0 for Siegel-parabolic M, N with epsilon(M) > 0"),
    "KSz": (_ksz, "w(M, N) = 0 for Klingen-parabolic M and Siegel-parabolic N with epsilon(N) > 0"),
    "ITra": (_itra, "w(I, (E,S;0,E)) = 0 if tr S >= 0, else -1"),
    "TraI": (_trai, "w((E,0;S,E), I) = -1 if tr S > 0, else 0"),
    "iEiZ-w": (_ieiz, "P iota1(M) P^-1 = iota2(M), w(iota2(M), P) = w(P, iota1(M)), w compatible with iota1, iota2"),
    "iota3-w": (_iota3, "w(iota3(M), iota3(N)) = 0"),
}


def verify_lemma(tag: str, samples: int = 100, seed: int = 0) -> Certificate:
    if tag not in _CHECKS:
        raise ValueError(f"unknown lemma tag {tag!r}; choose from {', '.join(LEMMA_TAGS)}")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    fn, statement = _CHECKS[tag]
    rng = random.Random(f"{tag}:{seed}")
    cert = Certificate(claim=tag)
    for i in range(samples):
        fn(cert, rng, i)
    verdict = "holds" if cert.passed else "FAILS"
    cert.conclusion = f"{statement} [{ARGUMENT} normalization] {verdict} on {samples} instances (seed {seed})"
    return cert
