"""Kronecker symbol, a Legendre oracle, modular square roots and small prime search."""
from __future__ import annotations

import math


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for p in range(3, math.isqrt(n) + 1, 2):
        if n % p == 0:
            return False
    return True


def kronecker(c: int, d: int) -> int:
    """Kronecker symbol (c/d), defined for all integers except (0, 0)."""
    if c == 0 and d == 0:
        raise ValueError("(0/0) is undefined")
    if d == 0:
        return 1 if abs(c) == 1 else 0
    if c % 2 == 0 and d % 2 == 0:
        return 0
    result = 1
    # (c/2) = 0, 1, -1 for c even, c = +-1 mod 8, c = +-3 mod 8
    v = 0
    while d % 2 == 0:
        d //= 2
        v += 1
    if v % 2 and c % 8 in (3, 5):
        result = -result
    if d < 0:
        d = -d
        if c < 0:
            result = -result
    # d odd positive: Jacobi symbol with reciprocity
    c %= d
    while c:
        while c % 2 == 0:
            c //= 2
            if d % 8 in (3, 5):
                result = -result
        c, d = d, c
        if c % 4 == 3 and d % 4 == 3:
            result = -result
        c %= d
    return result if d == 1 else 0


def legendre_oracle(c: int, p: int) -> int:
    """Euler's criterion c^((p-1)/2) mod p for an odd prime p."""
    if p < 3 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")
    t = pow(c, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


def sqrt_mod(c: int, p: int) -> int | None:
    """Least x in [0, p) with x^2 = c mod p, or None if c is a non-residue.

    Tonelli-Shanks; p must be an odd prime.
    """
    symbol = legendre_oracle(c, p)
    if symbol == 0:
        return 0
    if symbol == -1:
        return None
    c %= p
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre_oracle(z, p) != -1:
        z += 1
    m, cz, t, r = s, pow(z, q, p), pow(c, q, p), pow(c, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(cz, 1 << (m - i - 1), p)
        m, cz = i, b * b % p
        t, r = t * cz % p, r * b % p
    return min(r, p - r)


def find_prime_in_ap(a: int, m: int, bound: int) -> int | None:
    """Least prime p = a mod m with p < bound, by trial division."""
    if math.gcd(a, m) != 1:
        raise ValueError("a and m must be coprime")
    start = a % m
    if start == 0:
        start = m
    for n in range(start, bound, m):
        if is_prime(n):
            return n
    return None
