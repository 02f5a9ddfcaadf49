"""The seven-matrix relation R2 H3 = H1 H2 R1 R3 R4 and its cocycle values."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from ..symbols import egcd
from ..symplectic import SymplecticMatrix, is_symplectic, mul
from .base import Certificate


@dataclass(frozen=True)
class BmsParameters:
    a: int
    b1: int
    c1: int
    d1: int
    b2: int
    c2: int
    d2: int

    def __post_init__(self):
        if self.a * self.d1 - self.b1 * self.c1 != 1:
            raise ValueError("a d1 - b1 c1 must be 1")
        if self.a * self.d2 - self.b2 * self.c2 != 1:
            raise ValueError("a d2 - b2 c2 must be 1")

    @property
    def y(self) -> int:
        a, b1, c1, d1, b2, c2, d2 = self.a, self.b1, self.c1, self.d1, self.b2, self.c2, self.d2
        return d1 - b1 * c1 * d2 + c1 * c2 * b1 * b2 * d1

    @classmethod
    def from_first_column(cls, a: int, c1: int, c2: int) -> "BmsParameters":
        """Least Bezout completions of (a, c1) and (a, c2)."""
        d1, b1 = _complete(a, c1)
        d2, b2 = _complete(a, c2)
        return cls(a, b1, c1, d1, b2, c2, d2)


def _complete(a: int, c: int) -> tuple[int, int]:
    # a d - b c = 1
    g, x, y = egcd(a, c)
    if g != 1:
        raise ValueError(f"gcd({a}, {c}) != 1")
    return x, -y


def random_bms_parameters(rng: random.Random, bound: int, nonzero: bool = False) -> BmsParameters:
    while True:
        a = rng.randint(-bound, bound)
        c1, c2 = rng.randint(-bound, bound), rng.randint(-bound, bound)
        if a == 0 or math.gcd(a, c1) != 1 or math.gcd(a, c2) != 1:
            continue
        if nonzero and c1 * c2 == 0:
            continue
        d1, b1 = _complete(a, c1)
        d2, b2 = _complete(a, c2)
        # shift (d, b) -> (d + k c, b + k a) to spread the sample
        k1, k2 = rng.randint(-3, 3), rng.randint(-3, 3)
        p = BmsParameters(a, b1 + k1 * a, c1, d1 + k1 * c1, b2 + k2 * a, c2, d2 + k2 * c2)
        if max(abs(v) for v in (p.b1, p.d1, p.b2, p.d2)) <= bound:
            return p


def bms_matrices(p: BmsParameters) -> dict[str, SymplecticMatrix]:
    a, b1, c1, d1, b2, c2, d2, y = p.a, p.b1, p.c1, p.d1, p.b2, p.c2, p.d2, p.y
    rows = {
        "H1": ((d1, -c1, 0, 0), (-b1, a, 0, 0), (0, 0, a, b1), (0, 0, c1, d1)),
        "H2": ((a, 0, b2, 0), (0, 1, 0, 0), (c2, 0, d2, 0), (0, 0, 0, 1)),
        "H3": ((1, 0, 0, 0), (0, a, 0, b1 * b1 * b2), (0, 0, 1, 0), (0, c1 * c1 * c2, 0, y)),
        "R1": ((1, 0, 0, 0), (b1, 1, 0, 0), (0, 0, 1, -b1), (0, 0, 0, 1)),
        "R2": ((1, 0, 0, 0), (0, 1, 0, 0), (a * c2, c1 * c2, 1, 0), (c1 * c2, 0, 0, 1)),
        "R3": ((1, c1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, -c1, 1)),
        "R4": ((1, 0, -a * d1 * d1 * b2, b1 * b2 * d1), (0, 1, b1 * b2 * d1, 0), (0, 0, 1, 0), (0, 0, 0, 1)),
    }
    return {k: SymplecticMatrix(v) for k, v in rows.items()}


@dataclass(frozen=True)
class BmsBuild:
    matrices: dict[str, SymplecticMatrix]
    lhs: SymplecticMatrix
    rhs: SymplecticMatrix

    @property
    def identity_holds(self) -> bool:
        return self.lhs == self.rhs


def bms_build(p: BmsParameters) -> BmsBuild:
    """Construct H1..H3, R1..R4 and both sides of R2 H3 = H1 H2 R1 R3 R4."""
    ms = bms_matrices(p)
    for name, M in ms.items():
        if not is_symplectic(M):
            raise ArithmeticError(f"{name} is not symplectic for {p}")
    out = BmsBuild(ms, mul(ms["R2"], ms["H3"]), mul(ms["H1"], ms["H2"], ms["R1"], ms["R3"], ms["R4"]))
    if not out.identity_holds:
        raise ArithmeticError(f"R2 H3 != H1 H2 R1 R3 R4 for {p}")
    return out


def _w_both(cert: Certificate, desc: str, M: SymplecticMatrix, N: SymplecticMatrix) -> None:
    cert.check(desc + ", exact base image", "w_exact_route", 0, m=M, n=N)
    try:
        cert.check(desc + ", path continuation", "w", 0, m=M, n=N)
    except (ValueError, ArithmeticError):
        # N(iE) too close to the boundary for double precision
        pass


def bms_w_check(p: BmsParameters, cert: Certificate | None = None) -> Certificate:
    """Symplecticity, the identity, and the cocycle values used with it."""
    if p.c1 * p.c2 == 0:
        raise ValueError("the cocycle computation assumes c1 c2 != 0")
    cert = cert or Certificate(claim="bms")
    ms = bms_matrices(p)
    tag = f"(a,b1,c1,d1,b2,c2,d2)=({p.a},{p.b1},{p.c1},{p.d1},{p.b2},{p.c2},{p.d2})"
    for name, M in ms.items():
        cert.check(f"{name} symplectic {tag}", "is_symplectic", True, m=M)
    H1, H2, H3, R1, R2, R3, R4 = (ms[k] for k in ("H1", "H2", "H3", "R1", "R2", "R3", "R4"))
    cert.check("R2 H3 = H1 H2 R1 R3 R4", "product", mul(H1, H2, R1, R3, R4), matrices=[R2, H3])
    RH = mul(R2, H3)
    im_rh = p.c2 * (1 + p.c1 ** 2)
    im_h3 = p.c1 ** 2 * p.c2
    cert.check("Im J(R2 H3, iE) = c2 (1 + c1^2), exact", "im_j_exact", im_rh, m=RH)
    cert.check("Im J(R2 H3, iE) numeric", "im_j_numeric", float(im_rh), tol=1e-9 * max(1.0, abs(im_rh)), m=RH)
    cert.check("Im J(H3, iE) = c1^2 c2, exact", "im_j_exact", im_h3, m=H3)
    cert.check("Im J(H3, iE) numeric", "im_j_numeric", float(im_h3), tol=1e-9 * max(1.0, abs(im_h3)), m=H3)
    R134 = mul(R1, R3, R4)
    for desc, M, N in (("w(R2, H3) = 0", R2, H3), ("w(H2, R1 R3 R4) = 0", H2, R134),
                       ("w(H1, H2 R1 R3 R4) = 0", H1, mul(H2, R134))):
        _w_both(cert, desc, M, N)
    cert.conclusion = "v(H3) = v(H1) v(H2) follows once v(R2) = v(R1 R3 R4) = 1"
    return cert
