"""Closed-form genus-1 cocycle from the sign table of Petersson and Maass.

The table is a function of the second rows of M, S and MS and of the
upper-left entry of S.  It produces the cocycle in the Petersson
normalization, i.e. ``w_exact_genus1(M, S) == w_cocycle(M, S, "petersson").w``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .cocycle import ARGUMENT, PETERSSON, Convention, w_cocycle
from .symplectic import GenusMismatch, SymplecticMatrix, mul, sgn


class TableError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SecondRowData:
    m1: object
    m2: object
    a: object
    c: object
    m1p: object
    m2p: object

    @classmethod
    def of(cls, M: SymplecticMatrix, S: SymplecticMatrix) -> "SecondRowData":
        if M.g != 1 or S.g != 1:
            raise GenusMismatch("the sign table is a genus-1 formula")
        (_, _), (m1, m2) = M.rows
        (a, _), (c, _) = S.rows
        (_, _), (m1p, m2p) = mul(M, S).rows
        return cls(m1, m2, a, c, m1p, m2p)


GENERIC, ROW_ZERO, M1_ZERO, C_ZERO, ALL_ZERO = "generic", "m1p=0", "m1=0", "c=0", "c=m1=m1p=0"


def table_case(data: SecondRowData) -> str:
    m1, c, m1p = data.m1, data.c, data.m1p
    if m1 * c * m1p != 0:
        return GENERIC
    if c * m1 != 0 and m1p == 0:
        return ROW_ZERO
    if c * m1p != 0 and m1 == 0:
        return M1_ZERO
    if m1 * m1p != 0 and c == 0:
        return C_ZERO
    if c == 0 and m1 == 0 and m1p == 0:
        return ALL_ZERO
    raise TableError(f"no table case applies to {data}")


def four_w(data: SecondRowData) -> int:
    """The table value 4 w(M, S)."""
    case = table_case(data)
    m1, m2, a, c, m1p = data.m1, data.m2, data.a, data.c, data.m1p
    if case == GENERIC:
        return sgn(c) + sgn(m1) - sgn(m1p) - sgn(m1 * c * m1p)
    if case == ROW_ZERO:
        return -(1 - sgn(c)) * (1 - sgn(m1))
    if case == M1_ZERO:
        return (1 + sgn(c)) * (1 - sgn(m2))
    if case == C_ZERO:
        return (1 - sgn(a)) * (1 + sgn(m1))
    return (1 - sgn(a)) * (1 - sgn(m2))


def w_exact_genus1(M: SymplecticMatrix, S: SymplecticMatrix, convention: Convention = PETERSSON) -> int:
    """w(M, S) from the sign table; real or integral entries."""
    value = four_w(SecondRowData.of(M, S))
    if value % 4:
        raise TableError(f"table value {value} is not divisible by 4")
    w = value // 4
    return w if convention == PETERSSON else -w


def corollary_zero(M: SymplecticMatrix, S: SymplecticMatrix) -> bool:
    """m1 c m1' != 0 and (m1 m1' > 0 or m1 c < 0); then w(M, S) = 0."""
    d = SecondRowData.of(M, S)
    return d.m1 * d.c * d.m1p != 0 and (d.m1 * d.m1p > 0 or d.m1 * d.c < 0)


def w_translation_rules(M: SymplecticMatrix, x) -> int:
    """w(M, T^x) and w(T^x, M) for T^x = (1, x; 0, 1); both vanish.

    Each order is computed from the table and must agree with the zero value.
    """
    T = SymplecticMatrix(((1, x), (0, 1)))
    left = w_exact_genus1(M, T)
    right = w_exact_genus1(T, M)
    if left != 0 or right != 0:
        raise TableError(f"translation rule violated: w(M,T)={left}, w(T,M)={right}")
    return 0


def w_genus1(M: SymplecticMatrix, S: SymplecticMatrix, convention: Convention = ARGUMENT) -> int:
    """Public genus-1 cocycle: the table value, confirmed by the continuation oracle."""
    oracle = w_cocycle(M, S, convention).w
    table = w_exact_genus1(M, S, convention)
    if table != oracle:
        raise TableError(f"table {table} disagrees with continuation {oracle} for {M}, {S}")
    return oracle


@dataclass(frozen=True)
class CaseComparison:
    case: str
    M: SymplecticMatrix
    S: SymplecticMatrix
    table: int
    oracle: int

    @property
    def agree(self) -> bool:
        return self.table == self.oracle


def compare_with_oracle(M: SymplecticMatrix, S: SymplecticMatrix) -> CaseComparison:
    data = SecondRowData.of(M, S)
    return CaseComparison(table_case(data), M, S, w_exact_genus1(M, S), w_cocycle(M, S, PETERSSON).w)


@dataclass
class CaseTally:
    pairs: int = 0
    nonzero: int = 0
    agree_petersson: int = 0
    agree_argument: int = 0


def discrepancy_report(pairs) -> dict[str, CaseTally]:
    """Per table case: how often the table equals the oracle in each sign normalization."""
    out: dict[str, CaseTally] = {}
    for M, S in pairs:
        data = SecondRowData.of(M, S)
        table = w_exact_genus1(M, S, PETERSSON)
        raw = w_cocycle(M, S, ARGUMENT).w
        t = out.setdefault(table_case(data), CaseTally())
        t.pairs += 1
        t.nonzero += raw != 0
        t.agree_petersson += table == -raw
        t.agree_argument += table == raw
    return out
