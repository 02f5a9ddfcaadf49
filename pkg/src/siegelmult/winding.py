"""Cocycle values of integral matrices without floating-point path tracking.

For integral N the point W = N(iE) has Gaussian-rational entries.  On the
segment Z(t) = (1-t) iE + t W the factor det(C Z(t) + D) is a polynomial
p(t) of degree <= g with Gaussian-rational coefficients.  Its argument
change over [0, 1] is the sum over the roots r of the change of arg(t - r).
That change is less than pi in absolute value because t - r runs along a
horizontal segment that misses 0, so each term is a principal value.  The
roots are found with mpmath at high precision.

This is an independent second route to w next to the adaptive continuation
in :mod:`siegelmult.cocycle`.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath

from .cocycle import ARGUMENT, CocycleRoundingError, CocycleValue, Convention, _sign
from .symplectic import GenusMismatch, SymplecticMatrix, mul

Gauss = tuple[Fraction, Fraction]
WORKING_DPS = 60
RESIDUAL_GUARD = 1e-30

_ZERO: Gauss = (Fraction(0), Fraction(0))
_ONE: Gauss = (Fraction(1), Fraction(0))


def _g(x, y=0) -> Gauss:
    return Fraction(x), Fraction(y)


def _add(u: Gauss, v: Gauss) -> Gauss:
    return u[0] + v[0], u[1] + v[1]


def _sub(u: Gauss, v: Gauss) -> Gauss:
    return u[0] - v[0], u[1] - v[1]


def _mul(u: Gauss, v: Gauss) -> Gauss:
    return u[0] * v[0] - u[1] * v[1], u[0] * v[1] + u[1] * v[0]


def _div(u: Gauss, v: Gauss) -> Gauss:
    n = v[0] * v[0] + v[1] * v[1]
    return (u[0] * v[0] + u[1] * v[1]) / n, (u[1] * v[0] - u[0] * v[1]) / n


def _matmul(X, Y):
    n, m, k = len(X), len(Y), len(Y[0])
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            s = _ZERO
            for t in range(m):
                s = _add(s, _mul(X[i][t], Y[t][j]))
            row.append(s)
        out.append(row)
    return out


def _det(X) -> Gauss:
    A = [list(r) for r in X]
    n = len(A)
    det = _ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != _ZERO), None)
        if piv is None:
            return _ZERO
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = (-det[0], -det[1])
        det = _mul(det, A[col][col])
        for r in range(col + 1, n):
            f = _div(A[r][col], A[col][col])
            if f != _ZERO:
                A[r] = [_sub(A[r][j], _mul(f, A[col][j])) for j in range(n)]
    return det


def _inverse(X):
    n = len(X)
    A = [list(X[i]) + [_ONE if i == j else _ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != _ZERO)
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [_div(x, p) for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != _ZERO:
                f = A[r][col]
                A[r] = [_sub(A[r][j], _mul(f, A[col][j])) for j in range(2 * n)]
    return [row[n:] for row in A]


def _blocks(M: SymplecticMatrix):
    return tuple([[_g(x) for x in row] for row in blk] for blk in (M.A, M.B, M.C, M.D))


def base_image(N: SymplecticMatrix):
    """N(iE) as a matrix of Gaussian rationals."""
    if not N.integral:
        raise ValueError("exact evaluation needs an integral matrix")
    A, B, C, D = _blocks(N)
    g = N.g
    i_ = _g(0, 1)
    num = [[_add(_mul(i_, A[r][c]), B[r][c]) for c in range(g)] for r in range(g)]
    den = [[_add(_mul(i_, C[r][c]), D[r][c]) for c in range(g)] for r in range(g)]
    return _matmul(num, _inverse(den))


def _interpolate(values: list[Gauss]) -> list[Gauss]:
    """Coefficients (constant first) of the polynomial with p(k) = values[k], k = 0..n."""
    n = len(values)
    coeffs = [_ZERO] * n
    for k in range(n):
        # Lagrange basis prod_{j != k} (t - j) / (k - j)
        basis = [_ONE]
        denom = Fraction(1)
        for j in range(n):
            if j == k:
                continue
            denom *= k - j
            nxt = [_ZERO] * (len(basis) + 1)
            for e, b in enumerate(basis):
                nxt[e + 1] = _add(nxt[e + 1], b)
                nxt[e] = _sub(nxt[e], _mul(_g(j), b))
            basis = nxt
        scale = _div(values[k], _g(denom))
        for e, b in enumerate(basis):
            coeffs[e] = _add(coeffs[e], _mul(scale, b))
    return coeffs


def segment_polynomial(M: SymplecticMatrix, W) -> list[Gauss]:
    """Coefficients of p(t) = det(C((1-t) iE + t W) + D), constant term first."""
    _, _, C, D = _blocks(M)
    g = M.g
    i_ = _g(0, 1)
    X = [[_add(_mul(i_, C[r][c]), D[r][c]) for c in range(g)] for r in range(g)]
    Wmi = [[_sub(W[r][c], i_ if r == c else _ZERO) for c in range(g)] for r in range(g)]
    Y = _matmul(C, Wmi)
    vals = [_det([[_add(X[r][c], _mul(_g(t), Y[r][c])) for c in range(g)] for r in range(g)])
            for t in range(g + 1)]
    coeffs = _interpolate(vals)
    while len(coeffs) > 1 and coeffs[-1] == _ZERO:
        coeffs.pop()
    return coeffs


def _mpc(u: Gauss):
    return mpmath.mpc(mpmath.mpf(u[0].numerator) / u[0].denominator,
                      mpmath.mpf(u[1].numerator) / u[1].denominator)


def winding(coeffs: list[Gauss]):
    """Argument change of p(t) over t in [0, 1] (mpmath number)."""
    if coeffs[0] == _ZERO:
        raise ValueError("p(0) = 0")
    if len(coeffs) == 1:
        return mpmath.mpf(0)
    roots = mpmath.polyroots([_mpc(c) for c in reversed(coeffs)], maxsteps=200, extraprec=4 * WORKING_DPS)
    total = mpmath.mpf(0)
    for r in roots:
        total += mpmath.arg((1 - r) / (-r))
    return total


def _principal_arg_exact(u: Gauss):
    if u[1] == 0:
        return mpmath.mpf(0) if u[0] > 0 else +mpmath.pi
    return mpmath.arg(_mpc(u))


def L_at_base_image(M: SymplecticMatrix, N: SymplecticMatrix):
    """L(M, N(iE)) for integral M, N."""
    W = base_image(N)
    coeffs = segment_polynomial(M, W)
    return _principal_arg_exact(coeffs[0]) + winding(coeffs)


def _arg_j_base(M: SymplecticMatrix):
    _, _, C, D = _blocks(M)
    i_ = _g(0, 1)
    g = M.g
    return _principal_arg_exact(_det([[_add(_mul(i_, C[r][c]), D[r][c]) for c in range(g)] for r in range(g)]))


def w_cocycle_exact(M: SymplecticMatrix, N: SymplecticMatrix, convention: Convention = ARGUMENT) -> CocycleValue:
    """w(M, N) for integral matrices via exact base images and polynomial roots."""
    if M.g != N.g:
        raise GenusMismatch(f"genus {M.g} vs {N.g}")
    sign = _sign(convention)
    with mpmath.workdps(WORKING_DPS):
        raw = (_arg_j_base(mul(M, N)) - L_at_base_image(M, N) - _arg_j_base(N)) / (2 * mpmath.pi)
        w = int(mpmath.nint(raw))
        residual = float(abs(raw - w))
    if residual >= RESIDUAL_GUARD:
        raise CocycleRoundingError(sign * float(raw), f"exact route: raw value {float(raw)!r} is not integral")
    return CocycleValue(sign * w, residual, 0, convention)
