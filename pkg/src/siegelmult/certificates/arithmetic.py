"""Exact certificates for the genus-1 arithmetic: matrix identities, the
square-root chain for Kronecker symbol +1, the -1 case, and the weight
constraint 2r in Z."""
from __future__ import annotations

import math
import random

from ..cocycle import ARGUMENT, PETERSSON
from ..sampling import complete_row
from ..symbols import is_prime, kronecker, sqrt_mod
from ..symplectic import SymplecticMatrix, in_principal_congruence, mul, sl2
from .base import Certificate

DEFAULT_SEARCH_BOUND = 2000


class SearchExhausted(LookupError):
    pass


class PreconditionError(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


def _upper(x: int) -> SymplecticMatrix:
    return sl2(1, x, 0, 1)


def _lower(x: int) -> SymplecticMatrix:
    return sl2(1, 0, x, 1)


def _row(*xs: int) -> str:
    return ",".join(str(x) for x in xs)


def gamma1_completion(c: int, d: int, q: int, positive: bool = False) -> SymplecticMatrix:
    """(a, b; c, d) in Gamma_1[q] with the given second row.

    With ``positive`` the least shift making a, b > 0 is used (needs c, d > 0).
    """
    if c % q or d % q != 1 % q:
        raise ValueError(f"({c}, {d}) is not a second row of Gamma_1[{q}]")
    a0, b0 = complete_row(c, d)
    k = (-b0) % q
    if positive:
        if c <= 0 or d <= 0:
            raise ValueError("positive completion needs c, d > 0")
        while a0 + k * c <= 0 or b0 + k * d <= 0:
            k += q
        while a0 + (k - q) * c > 0 and b0 + (k - q) * d > 0:
            k -= q
    return sl2(a0 + k * c, b0 + k * d, c, d)


# ---------------------------------------------------------------------------
# identities

def small_identities(seed: int = 0, samples: int = 5) -> Certificate:
    """Exact matrix identities behind the Mennicke-symbol relations."""
    cert = Certificate(claim="identities")
    rng = random.Random(f"identities:{seed}")
    q = 4
    for a in [5, -3, 9] + [1 + q * rng.randint(-50, 50) for _ in range(samples)]:
        cert.check(f"(1,1;0,1)(1,0;1-a,1)(1,-1;0,1) = (2-a,a-1;1-a,a), a={a}", "product",
                   sl2(2 - a, a - 1, 1 - a, a), matrices=[_upper(1), _lower(1 - a), _upper(-1)])
        cert.check(f"with (1,0;a-1,1) in the middle the product is the inverse (a,1-a;a-1,2-a), a={a}",
                   "product", sl2(a, 1 - a, a - 1, 2 - a), matrices=[_upper(1), _lower(a - 1), _upper(-1)])

    rows = [(8, 5, 1)] + [(q * rng.randint(-40, 40), 1 + q * rng.randint(-40, 40), rng.randint(-9, 9))
                          for _ in range(samples)]
    for c, d, y in rows:
        if math.gcd(c, d) != 1:
            continue
        M = gamma1_completion(c, d, q)
        cert.check(f"(1,-y;0,1)(*,*;c,d)(1,y;0,1) has second row (c, d+cy), (c,d,y)=({c},{d},{y})",
                   "second_row", _row(c, d + c * y), matrices=[_upper(-y), M, _upper(y)])
        x = y
        cert.check(f"(*,*;c,d)(1,0;qx,1) has second row (c+dxq, d), (c,d,x,q)=({c},{d},{x},{q})",
                   "second_row", _row(c + d * x * q, d), matrices=[M, _lower(q * x)])

    for _ in range(samples + 1):
        c, d = q * rng.randint(-40, 40), 1 + q * rng.randint(-40, 40)
        if math.gcd(c, d) != 1:
            continue
        G = gamma1_completion(c, d, q)
        (a, b), _ = G.rows
        y, x = rng.randint(-9, 9), rng.randint(-9, 9)
        cert.check(f"(a,b;c,d)(1,qy;0,1) has first row (a, b+qay), (a,b,y)=({a},{b},{y})",
                   "first_row", _row(a, b + q * a * y), matrices=[G, _upper(q * y)])
        cert.check(f"(1,0;-x,1)(a,b;c,d)(1,0;x,1) has first row (a+xb, b), (a,b,x)=({a},{b},{x})",
                   "first_row", _row(a + x * b, b), matrices=[_lower(-x), G, _lower(x)])

    for c, a in [(4, 5), (8, 13)] + [(q * rng.randint(1, 30), 1 + q * rng.randint(-30, 30)) for _ in range(samples)]:
        if math.gcd(c * c, a) != 1:
            continue
        M = gamma1_completion(c * c, a, q)
        S = _lower(-c * c)
        cert.check(f"(*,*;c^2,a)(1,0;-c^2,1) has second row (c^2-ac^2, a), (c,a)=({c},{a})",
                   "second_row", _row(c * c - a * c * c, a), matrices=[M, S])
        cert.check("the sign pattern gives w = 0 without evaluation", "corollary_zero", True, m=M, s=S)
        cert.check("table w = 0", "w_table", 0, m=M, s=S)
        cert.check("continuation w = 0", "w", 0, m=M, n=S, convention=PETERSSON)

    c, d, x = 24, 5, -1
    M, S = gamma1_completion(c, d, q), _lower(q * x)
    s = cert.check(f"s = w((*,*;{c},{d}), (1,0;{q * x},1)) from the table", "w_table", 0, m=M, s=S)
    cert.check("s from the continuation oracle", "w", s, m=M, n=S, convention=PETERSSON)
    cert.conclusion = "all matrix identities hold exactly"
    return cert


# ---------------------------------------------------------------------------
# Kronecker symbol +1

def krons_search(q: int, search_bound: int) -> tuple[int, int]:
    """Least prime d = 1 mod q, then least c = 0 mod q, with (c/d) = 1 and a nondegenerate chain."""
    if q % 4:
        raise ValueError("q must be divisible by 4")
    for d in range(1 + q, search_bound + 1, q):
        if not is_prime(d):
            continue
        for c in range(q, search_bound + 1, q):
            if math.gcd(c, d) != 1 or kronecker(c, d) != 1:
                continue
            x = sqrt_mod(c // q, d)
            if x is not None and (c // q - x * x) // d != 0:
                return c, d
    raise SearchExhausted(f"no (c, d) below {search_bound} for q={q}")


def krons_chain(cert: Certificate, c: int, d: int, q: int) -> tuple[int, int]:
    """Record the chain c = q x^2 + d q y and the vanishing w-value; returns (x, y)."""
    cert.check(f"c = {c} = 0 mod q", "mod", 0, n=c, m=q)
    cert.check(f"d = {d} = 1 mod q", "mod", 1 % q, n=d, m=q)
    cert.check("d is prime", "is_prime", True, n=d)
    cert.check("(c/d) = 1", "kronecker", 1, c=c, d=d)
    cert.check("(q/d) = 1 since d = 1 mod q", "kronecker", 1, c=q, d=d)
    cert.check("(c/q / d) = 1", "legendre", 1, c=c // q, p=d)
    x = sqrt_mod(c // q, d)
    if x is None:
        raise ArithmeticError(f"{c // q} is not a square mod {d}")
    cert.check("x with x^2 = c/q mod d", "sqrt_mod", x, c=c // q, p=d)
    y = (c // q - x * x) // d
    cert.check(f"c = q x^2 + d q y with x={x}, y={y}", "affine", c, terms=[[q, x, x], [d, q, y]])
    M = gamma1_completion(q * x * x, d, q)
    S = _lower(q * y)
    cert.check("(*,*;qx^2,d)(1,0;qy,1) has second row (c, d)", "second_row", _row(c, d), matrices=[M, S])
    if y != 0:
        cert.check("sign pattern of (m1, c, m1') forces w = 0", "corollary_zero", True, m=M, s=S)
    cert.check("table w = 0", "w_table", 0, m=M, s=S)
    cert.check("continuation w = 0", "w", 0, m=M, n=S, convention=PETERSSON)
    return x, y


def krons_certificate(q: int = 4, search_bound: int = DEFAULT_SEARCH_BOUND,
                      c: int | None = None, d: int | None = None) -> Certificate:
    if q % 4:
        raise ValueError("q must be divisible by 4")
    if (c is None) != (d is None):
        raise ValueError("give both c and d or neither")
    if c is None:
        c, d = krons_search(q, search_bound)
    cert = Certificate(claim="krons", level=q)
    x, y = krons_chain(cert, c, d, q)
    cert.conclusion = (f"v(M) = {{q x^2 / d}} = {{q / d}} = 1 for second row ({c},{d}), "
                       f"c = {q}*{x}^2 + {d}*{q}*{y}")
    return cert


# ---------------------------------------------------------------------------
# Kronecker symbol -1

def zpir_preconditions(M: SymplecticMatrix, q: int) -> list[str]:
    if M.g != 1 or not M.integral:
        return ["M must be an integral 2x2 matrix"]
    (a, b), (c, d) = M.rows
    out = []
    if not in_principal_congruence(M, q):
        out.append(f"M is not in Gamma_1[{q}]")
    if min(a, b, c, d) <= 0:
        out.append("entries of M are not all positive")
    if not d * q < c * (q - 1):
        out.append(f"d q < c (q-1) fails ({d * q} >= {c * (q - 1)})")
    if c != 0 and d % 2 and kronecker(c, d) != -1:
        out.append(f"({c}/{d}) = {kronecker(c, d)}, not -1")
    return out


def zpir_check(M: SymplecticMatrix, q: int, cert: Certificate | None = None) -> Certificate:
    """v(M) = exp(-2 pi i r) for M with (c/d) = -1: the Kronecker chain and w = 1."""
    bad = zpir_preconditions(M, q)
    if bad:
        raise PreconditionError(bad)
    cert = cert or Certificate(claim="zpir", level=q)
    (a, b), (c, d) = M.rows
    cert.check(f"M = {M} in Gamma_1[{q}]", "in_congruence", True, m=M, q=q)
    for name, v in zip("abcd", (a, b, c, d)):
        cert.check(f"{name} > 0", "sign", 1, n=v)
    gap = d * q - c * (q - 1)
    cert.check("d q - c (q-1)", "affine", gap, terms=[[d, q], [-1, c, q], [c]])
    cert.check("d q < c (q-1)", "sign", -1, n=gap)
    cert.check("(c/d) = -1", "kronecker", -1, c=c, d=d)

    S = sl2(1 - q, -q, q, 1 + q)
    m1p, m2p = c - q * c + d * q, -c * q + d + d * q
    cert.check("M (1-q,-q;q,1+q) has second row (c-qc+dq, -cq+d+dq)", "second_row", _row(m1p, m2p), matrices=[M, S])
    cert.check("(q/1+q) = 1", "kronecker", 1, c=q, d=1 + q)
    cert.check("(m1'/m2') = (m1'/d-c)", "kronecker", kronecker(m1p, d - c), c=m1p, d=m2p)
    cert.check("c - qc + dq < 0", "sign", -1, n=m1p)
    cert.check("(m1'/-1) = -1", "kronecker", -1, c=m1p, d=-1)
    cert.check("(m1'/c-d) = (c/c-d)", "kronecker", kronecker(c, c - d), c=m1p, d=c - d)
    cert.check("(c/c-d) = (c/-d)", "kronecker", kronecker(c, -d), c=c, d=c - d)
    cert.check("(c/-d) = (c/d) = -1", "kronecker", -1, c=c, d=-d)
    cert.check("(m1'/m2') = -(-1) = 1", "kronecker", 1, c=m1p, d=m2p)
    cert.check("w(M, (1-q,-q;q,1+q)) = 1 from the table, signs (+,+,-)", "w_table", 1, m=M, s=S)
    cert.check("continuation w = 1 (multiplier sign)", "w", 1, m=M, n=S, convention=PETERSSON)
    cert.check("continuation w = -1 (argument sign)", "w", -1, m=M, n=S, convention=ARGUMENT)
    cert.conclusion = "v(M) exp(2 pi i r) = v(M S) = 1, so v(M) = e^{-2 pi i r}"
    return cert


# ---------------------------------------------------------------------------
# 2r in Z

DELIGNE_CONCLUSION = "v(M)=e^{−2πir}, v(M²)=1 ⇒ e^{−4πir}=1 ⇒ 2r ∈ ℤ"


def deligne_search(q: int, search_bound: int) -> tuple[int, int]:
    """Least c, then least d, with c = 0, d = 1 mod q, (c/d) = -1 and d q < c (q-1)."""
    for c in range(q, search_bound + 1, q):
        d = 1
        while d * q < c * (q - 1) and d <= search_bound:
            if math.gcd(c, d) == 1 and kronecker(c, d) == -1:
                return c, d
            d += q
    raise SearchExhausted(f"no (c, d) below {search_bound} for q={q}")


def deligne_certificate(q: int = 4, search_bound: int = DEFAULT_SEARCH_BOUND) -> Certificate:
    if q % 4 or q <= 0:
        raise ValueError("q must be a positive multiple of 4")
    c, d = deligne_search(q, search_bound)
    M = gamma1_completion(c, d, q, positive=True)
    cert = Certificate(claim="deligne", level=q)
    zpir_check(M, q, cert)
    (a, b), _ = M.rows
    cert.check("all entries positive: w(M, M) = 0 by the sign pattern", "corollary_zero", True, m=M, s=M)
    cert.check("table w(M, M) = 0", "w_table", 0, m=M, s=M)
    cert.check("continuation w(M, M) = 0", "w", 0, m=M, n=M, convention=PETERSSON)

    N = mul(M, M)
    (alpha, beta), (gamma, delta) = N.rows
    cert.check("N = M^2", "product", N, matrices=[M, M])
    cert.check("gamma = c (a+d)", "affine", gamma, terms=[[c, a], [c, d]])
    cert.check("delta = cb + d^2", "affine", delta, terms=[[c, b], [d, d]])
    cert.check("delta = d (a+d) - 1", "affine", delta, terms=[[d, a], [d, d], [-1]])
    cert.check("(c / cb+d^2) = (c / d^2), c = 0 mod 4", "kronecker", kronecker(c, d * d), c=c, d=delta)
    cert.check("(c / d^2) = 1", "kronecker", 1, c=c, d=d * d)
    cert.check("a + d = 2 mod 4", "mod", 2, n=a + d, m=4)
    cert.check("d = 1 mod 4", "mod", 1, n=d, m=4)
    t = a + d
    cert.check("(a+d / d(a+d)-1) = (a+d / a+d-1), denominators agree mod 4(a+d)", "mod",
               (t - 1) % (4 * t), n=delta, m=4 * t)
    cert.check("(a+d / d(a+d)-1)", "kronecker", kronecker(t, t - 1), c=t, d=delta)
    cert.check("(a+d / a+d-1) = (1 / a+d-1)", "kronecker", kronecker(1, t - 1), c=t, d=t - 1)
    cert.check("(1 / a+d-1) = 1", "kronecker", 1, c=1, d=t - 1)
    cert.check("(gamma/delta) = 1", "kronecker", 1, c=gamma, d=delta)
    cert.check("N in Gamma_1[q]", "in_congruence", True, m=N, q=q)
    if is_prime(delta):
        # N itself falls under the (c/d) = 1 case
        krons_chain(cert, gamma, delta, q)
    cert.conclusion = DELIGNE_CONCLUSION
    return cert
