"""Exact symplectic matrices, the Siegel half-space action and the factor det(CZ+D).

Integral matrices are stored as tuples of Python ints, so products never
overflow.  Real matrices (floats or Fractions) are accepted for the genus-1
table, where symplecticity is only checked to a tolerance.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Integral, Real
from typing import Iterable, Sequence

import numpy as np

REAL_TOL = 1e-9
PD_TOL = 1e-12

Rows = tuple[tuple, ...]


class SymplecticError(ValueError):
    """Raised when a matrix fails M'IM = I or has the wrong shape."""


class GenusMismatch(ValueError):
    pass


def _is_exact(x) -> bool:
    return isinstance(x, (Integral, Fraction))


def _matmul(X: Rows, Y: Rows) -> Rows:
    cols = list(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in X)


def _identity_rows(n: int) -> Rows:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _alternating_rows(g: int) -> Rows:
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for i in range(g):
        rows[i][g + i] = -1
        rows[g + i][i] = 1
    return tuple(tuple(r) for r in rows)


def _transpose(X: Rows) -> Rows:
    return tuple(zip(*X))


@dataclass(frozen=True)
class SymplecticMatrix:
    """A 2g x 2g matrix in block layout ((A, B), (C, D)).

    Use :func:`make_symplectic` for validated construction; the bare
    constructor trusts its input and is used internally for products.
    """

    rows: Rows

    @property
    def g(self) -> int:
        return len(self.rows) // 2

    @property
    def exact(self) -> bool:
        return all(_is_exact(x) for row in self.rows for x in row)

    @property
    def integral(self) -> bool:
        return all(isinstance(x, Integral) for row in self.rows for x in row)

    def block(self, i: int, j: int) -> Rows:
        g = self.g
        return tuple(tuple(self.rows[i * g + r][j * g + c] for c in range(g)) for r in range(g))

    @property
    def A(self) -> Rows:
        return self.block(0, 0)

    @property
    def B(self) -> Rows:
        return self.block(0, 1)

    @property
    def C(self) -> Rows:
        return self.block(1, 0)

    @property
    def D(self) -> Rows:
        return self.block(1, 1)

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return mul(self, other)

    def __neg__(self) -> "SymplecticMatrix":
        return SymplecticMatrix(tuple(tuple(-x for x in row) for row in self.rows))

    def __str__(self) -> str:
        return format_literal(self)

    def transpose(self) -> Rows:
        return _transpose(self.rows)

    def as_array(self, dtype=float) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.rows], dtype=dtype)

    def numeric_blocks(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        arr = self.as_array()
        g = self.g
        return arr[:g, :g], arr[:g, g:], arr[g:, :g], arr[g:, g:]


def _normalize_rows(entries: Sequence[Sequence]) -> Rows:
    rows = tuple(tuple(row) for row in entries)
    n = len(rows)
    if n == 0 or n % 2 or any(len(r) != n for r in rows):
        raise SymplecticError(f"expected a square matrix of even size, got {n} rows")
    return rows


def symplectic_defect(rows: Rows) -> Rows:
    """M'IM - I, entrywise."""
    g = len(rows) // 2
    alt = _alternating_rows(g)
    lhs = _matmul(_matmul(_transpose(rows), alt), rows)
    return tuple(tuple(x - y for x, y in zip(r1, r2)) for r1, r2 in zip(lhs, alt))


def make_symplectic(entries: Sequence[Sequence], g: int | None = None, tol: float = REAL_TOL) -> SymplecticMatrix:
    """Validate ``entries`` and wrap them.

    Exact input (ints, Fractions) must satisfy M'IM = I exactly; floating
    input within ``tol``.  The error message names the first violated entry.
    """
    rows = _normalize_rows(entries)
    if g is not None and len(rows) != 2 * g:
        raise SymplecticError(f"genus {g} needs {2 * g} rows, got {len(rows)}")
    for row in rows:
        for x in row:
            if not isinstance(x, Real):
                raise SymplecticError(f"non-real entry {x!r}")
    defect = symplectic_defect(rows)
    exact = all(_is_exact(x) for row in rows for x in row)
    for i, row in enumerate(defect):
        for j, x in enumerate(row):
            if (x != 0) if exact else abs(x) > tol:
                raise SymplecticError(f"M'IM - I has entry {x} at ({i}, {j})")
    return SymplecticMatrix(rows)


def is_symplectic(M: SymplecticMatrix | Sequence[Sequence], tol: float = REAL_TOL) -> bool:
    rows = M.rows if isinstance(M, SymplecticMatrix) else _normalize_rows(M)
    try:
        make_symplectic(rows, tol=tol)
    except SymplecticError:
        return False
    return True


def mul(M: SymplecticMatrix, N: SymplecticMatrix, *more: SymplecticMatrix) -> SymplecticMatrix:
    out = M
    for X in (N, *more):
        if out.g != X.g:
            raise GenusMismatch(f"genus {out.g} vs {X.g}")
        out = SymplecticMatrix(_matmul(out.rows, X.rows))
    return out


def inverse(M: SymplecticMatrix) -> SymplecticMatrix:
    # M^-1 = I^-1 M' I = ((D', -B'), (-C', A'))
    g = M.g
    A, B, C, D = M.A, M.B, M.C, M.D
    top = [tuple(D[j][i] for j in range(g)) + tuple(-B[j][i] for j in range(g)) for i in range(g)]
    bot = [tuple(-C[j][i] for j in range(g)) + tuple(A[j][i] for j in range(g)) for i in range(g)]
    return SymplecticMatrix(tuple(top + bot))


def identity(g: int) -> SymplecticMatrix:
    return SymplecticMatrix(_identity_rows(2 * g))


def determinant(M: SymplecticMatrix | Rows):
    """Exact determinant via fraction-free elimination (Bareiss)."""
    a = [list(r) for r in (M.rows if isinstance(M, SymplecticMatrix) else M)]
    if len(a) == 1:
        return a[0][0]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev if isinstance(num, Integral) and isinstance(prev, Integral) else num / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# matrix literals "a,b;c,d"

def parse_literal(text: str) -> SymplecticMatrix:
    """Parse ``"13,8;8,5"`` into a validated integral matrix.

    A leading ``@`` reads the literal from a file.
    """
    text = text.strip()
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read().strip()
    try:
        rows = [[int(x) for x in r.split(",")] for r in text.split(";")]
    except ValueError as exc:
        raise SymplecticError(f"bad matrix literal {text!r}: {exc}") from None
    return make_symplectic(rows)


def format_literal(M: SymplecticMatrix | Rows) -> str:
    rows = M.rows if isinstance(M, SymplecticMatrix) else M
    return ";".join(",".join(str(x) for x in row) for row in rows)


# ---------------------------------------------------------------------------
# Siegel half-space

@dataclass(frozen=True, eq=False)
class SiegelPoint:
    """Complex symmetric Z with positive definite imaginary part."""

    Z: np.ndarray

    def __post_init__(self):
        Z = np.array(self.Z, dtype=complex)
        if Z.ndim == 0:
            Z = Z.reshape(1, 1)
        if Z.ndim != 2 or Z.shape[0] != Z.shape[1]:
            raise ValueError(f"Z must be square, got shape {Z.shape}")
        scale = max(1.0, float(np.abs(Z).max()))
        if np.abs(Z - Z.T).max() > 1e-9 * scale:
            raise ValueError("Z is not symmetric")
        Z = (Z + Z.T) / 2
        if not is_positive_definite(Z.imag):
            raise ValueError("Im Z is not positive definite")
        Z.setflags(write=False)
        object.__setattr__(self, "Z", Z)

    @property
    def g(self) -> int:
        return self.Z.shape[0]

    @classmethod
    def base(cls, g: int, scale: float = 1.0) -> "SiegelPoint":
        return cls(1j * scale * np.eye(g))

    def __repr__(self) -> str:
        return f"SiegelPoint({self.Z.tolist()!r})"


def is_positive_definite(Y: np.ndarray, tol: float = PD_TOL) -> bool:
    """All leading principal minors exceed ``tol`` (scaled by the matrix size)."""
    Y = np.asarray(Y, dtype=float)
    scale = max(1.0, float(np.abs(Y).max()))
    for k in range(1, Y.shape[0] + 1):
        if np.linalg.det(Y[:k, :k]) <= tol * scale**k:
            return False
    return True


def _check_genus(M: SymplecticMatrix, Z: SiegelPoint) -> None:
    if M.g != Z.g:
        raise GenusMismatch(f"matrix genus {M.g} vs point genus {Z.g}")


def act(M: SymplecticMatrix, Z: SiegelPoint) -> SiegelPoint:
    """MZ = (AZ + B)(CZ + D)^-1."""
    _check_genus(M, Z)
    A, B, C, D = M.numeric_blocks()
    num = A @ Z.Z + B
    den = C @ Z.Z + D
    try:
        W = np.linalg.solve(den.T, num.T).T
    except np.linalg.LinAlgError as exc:
        raise ArithmeticError("CZ + D is singular; input is not symplectic") from exc
    return SiegelPoint((W + W.T) / 2)


def j_factor(M: SymplecticMatrix, Z: SiegelPoint) -> complex:
    """J(M, Z) = det(CZ + D)."""
    _check_genus(M, Z)
    if M.g == 1:
        (c,), (d,) = M.C[0], M.D[0]
        return complex(float(c) * Z.Z[0, 0] + float(d))
    _, _, C, D = M.numeric_blocks()
    return complex(np.linalg.det(C @ Z.Z + D))


def _gauss_det(rows: list[list[tuple[int, int]]]) -> tuple[int, int]:
    """Exact determinant of a small matrix over Z[i]; entries are (re, im)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = (0, 0)
    for j in range(n):
        re, im = rows[0][j]
        if re == 0 and im == 0:
            continue
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        mre, mim = _gauss_det(minor)
        pre, pim = re * mre - im * mim, re * mim + im * mre
        if j % 2:
            pre, pim = -pre, -pim
        total = (total[0] + pre, total[1] + pim)
    return total


def j_at_base_exact(M: SymplecticMatrix) -> tuple[int, int]:
    """det(iC + D) as an exact Gaussian integer (re, im); integral M, g <= 4."""
    if not M.integral:
        raise TypeError("exact evaluation needs integral entries")
    C, D = M.C, M.D
    rows = [[(D[r][c], C[r][c]) for c in range(M.g)] for r in range(M.g)]
    return _gauss_det(rows)


# ---------------------------------------------------------------------------
# congruence and parabolic structure

def in_principal_congruence(M: SymplecticMatrix, q: int) -> bool:
    if q < 1:
        raise ValueError("level must be >= 1")
    n = 2 * M.g
    return all((M.rows[i][j] - (1 if i == j else 0)) % q == 0 for i in range(n) for j in range(n))


SIEGEL, KLINGEN1, KLINGEN2, NONE = "Siegel", "Klingen1", "Klingen2", "None"

# (row, col) positions forced to zero, 0-based
_KLINGEN1_ZEROS = ((0, 1), (2, 1), (3, 0), (3, 1), (3, 2))
_KLINGEN2_ZEROS = ((1, 0), (2, 0), (2, 1), (2, 3), (3, 0))


def parabolic_memberships(M: SymplecticMatrix) -> set[str]:
    if M.g != 2:
        raise GenusMismatch("parabolic classification is defined for genus 2")
    found = set()
    if all(x == 0 for row in M.C for x in row):
        found.add(SIEGEL)
    if all(M.rows[i][j] == 0 for i, j in _KLINGEN1_ZEROS):
        found.add(KLINGEN1)
    if all(M.rows[i][j] == 0 for i, j in _KLINGEN2_ZEROS):
        found.add(KLINGEN2)
    return found


def classify_parabolic(M: SymplecticMatrix) -> str:
    """First matching tag in the order Siegel, Klingen1, Klingen2, else None."""
    found = parabolic_memberships(M)
    for tag in (SIEGEL, KLINGEN1, KLINGEN2):
        if tag in found:
            return tag
    return NONE


def epsilon(M: SymplecticMatrix):
    """det(D) on the Siegel parabolic."""
    if any(x != 0 for row in M.C for x in row):
        raise ValueError("epsilon is only defined on the Siegel parabolic (C = 0)")
    return determinant(M.D)


# ---------------------------------------------------------------------------
# named families

def _sym_rows(S) -> Rows:
    if isinstance(S, Integral):
        S = ((S,),)
    rows = tuple(tuple(r) for r in S)
    if any(rows[i][j] != rows[j][i] for i in range(len(rows)) for j in range(len(rows))):
        raise ValueError("S must be symmetric")
    return rows


def _assemble(A: Rows, B: Rows, C: Rows, D: Rows) -> SymplecticMatrix:
    top = tuple(a + b for a, b in zip(A, B))
    bot = tuple(c + d for c, d in zip(C, D))
    return SymplecticMatrix(top + bot)


def _zero(g: int) -> Rows:
    return tuple((0,) * g for _ in range(g))


def translation(S) -> SymplecticMatrix:
    """((E, S), (0, E))."""
    S = _sym_rows(S)
    g = len(S)
    E = _identity_rows(g)
    return _assemble(E, S, _zero(g), E)


def lower_translation(S) -> SymplecticMatrix:
    """((E, 0), (S, E))."""
    S = _sym_rows(S)
    g = len(S)
    E = _identity_rows(g)
    return _assemble(E, _zero(g), S, E)


def involution_I(g: int) -> SymplecticMatrix:
    return SymplecticMatrix(_alternating_rows(g))


def swap_P() -> SymplecticMatrix:
    return SymplecticMatrix(((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0)))


def sl2(a, b, c, d) -> SymplecticMatrix:
    return make_symplectic(((a, b), (c, d)))


def _entries2(m: SymplecticMatrix):
    if m.g != 1:
        raise GenusMismatch("expected a genus-1 matrix")
    (a, b), (c, d) = m.rows
    return a, b, c, d


def iota1(m: SymplecticMatrix) -> SymplecticMatrix:
    a, b, c, d = _entries2(m)
    return SymplecticMatrix(((a, 0, b, 0), (0, 1, 0, 0), (c, 0, d, 0), (0, 0, 0, 1)))


def iota2(m: SymplecticMatrix) -> SymplecticMatrix:
    a, b, c, d = _entries2(m)
    return SymplecticMatrix(((1, 0, 0, 0), (0, a, 0, b), (0, 0, 1, 0), (0, c, 0, d)))


def iota3(m: SymplecticMatrix) -> SymplecticMatrix:
    """diag(m, m'^-1) for m in SL(2)."""
    a, b, c, d = _entries2(m)
    return SymplecticMatrix(((a, b, 0, 0), (c, d, 0, 0), (0, 0, d, -c), (0, 0, -b, a)))


def levi(U: Sequence[Sequence[int]]) -> SymplecticMatrix:
    """diag(U, U'^-1) for U in GL(2, Z); det U = -1 allowed."""
    (a, b), (c, d) = U
    det = a * d - b * c
    if det not in (1, -1):
        raise ValueError("U must be unimodular")
    # U'^-1 = det * ((d, -c), (-b, a))
    return SymplecticMatrix(((a, b, 0, 0), (c, d, 0, 0), (0, 0, det * d, -det * c), (0, 0, -det * b, det * a)))


def bms_R_generator(q: int, x: int, kind: str) -> SymplecticMatrix:
    """iota3 of the elementary matrix (1, qx; 0, 1) or (1, 0; qx, 1)."""
    if kind == "upper":
        return iota3(SymplecticMatrix(((1, q * x), (0, 1))))
    if kind == "lower":
        return iota3(SymplecticMatrix(((1, 0), (q * x, 1))))
    raise ValueError(f"kind must be 'upper' or 'lower', not {kind!r}")


def word(letters: Iterable[SymplecticMatrix], g: int) -> SymplecticMatrix:
    out = identity(g)
    for L in letters:
        out = mul(out, L)
    return out


def max_entry(M: SymplecticMatrix) -> int:
    return max(abs(x) for row in M.rows for x in row)


def sgn(x) -> int:
    return (x > 0) - (x < 0)


__all__ = [
    "SymplecticMatrix", "SiegelPoint", "SymplecticError", "GenusMismatch",
    "make_symplectic", "is_symplectic", "symplectic_defect", "mul", "inverse", "identity",
    "determinant", "parse_literal", "format_literal", "act", "j_factor", "j_at_base_exact",
    "is_positive_definite", "in_principal_congruence", "classify_parabolic",
    "parabolic_memberships", "epsilon", "translation", "lower_translation", "involution_I",
    "swap_P", "sl2", "iota1", "iota2", "iota3", "levi", "bms_R_generator", "word",
    "max_entry", "sgn", "SIEGEL", "KLINGEN1", "KLINGEN2", "NONE"
]
