"""Concrete multiplier systems: the theta series (weight 1/2) and powers of Delta.

Both evaluators return the unit ``v(M)`` for which
``f(MZ) = v(M) det(CZ+D)^r f(Z)``, where the power is taken on the continued
argument branch, ``det(CZ+D)^r = exp(r (log|J| + i L(M, Z)))``.  Evaluations
are repeated at several points Z and the spread is reported as ``deviation``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Literal, Sequence

import mpmath
import numpy as np

from .cocycle import L_value, sigma_factor, unit_power
from .symplectic import SiegelPoint, SymplecticMatrix, act, j_factor, mul

MULTIPLIER_TOL = 1e-9
SERIES_TOL = 1e-14
INTEGRALITY_TOL = 1e-6

ThetaConvention = Literal["pi", "two_pi"]


class MultiplierError(ArithmeticError):
    def __init__(self, message: str, evaluation: "MultiplierEvaluation | None" = None):
        super().__init__(message)
        self.evaluation = evaluation


class TruncationError(ValueError):
    pass


@dataclass(frozen=True)
class MultiplierEvaluation:
    value: complex
    deviation: float
    branch_log: tuple[float, float]
    samples: tuple[complex, ...] = field(default=(), repr=False)


@dataclass(frozen=True)
class SeriesTruncation:
    radius: int
    tail_bound: float = 0.0


# ---------------------------------------------------------------------------
# theta series

def _exponent_scale(convention: ThetaConvention) -> float:
    if convention == "pi":
        return math.pi
    if convention == "two_pi":
        return 2.0 * math.pi
    raise ValueError(f"unknown theta convention {convention!r}")


def _gauss_reduce(Y: np.ndarray) -> np.ndarray:
    """Unimodular U (integer 2x2) making U'YU Lagrange-reduced."""
    U = np.eye(2, dtype=np.int64)
    G = Y.copy()
    for _ in range(200):
        if G[0, 0] > G[1, 1]:
            P = np.array([[0, 1], [1, 0]], dtype=np.int64)
            U, G = U @ P, P.T @ G @ P
        mu = round(G[0, 1] / G[0, 0])
        if mu == 0:
            break
        T = np.array([[1, -mu], [0, 1]], dtype=np.int64)
        U, G = U @ T, T.T @ G @ T
    return U


def _reduce_real(W: np.ndarray, convention: ThetaConvention) -> np.ndarray:
    """Shift Re W by an integral symmetric matrix that leaves every term of theta unchanged."""
    X = np.triu(W.real) + np.triu(W.real, 1).T
    if convention == "pi":
        # n'Sn is even when S has even diagonal
        off = X - np.round(X)
        diag = np.diag(X) - 2.0 * np.round(np.diag(X) / 2.0)
        X = off - np.diag(np.diag(off)) + np.diag(diag)
    else:
        X = X - np.round(X)
    return X + 1j * W.imag


def _one_dim_sum_bound(a: float) -> float:
    # sum_{k in Z} exp(-a k^2) <= 1 + sqrt(pi / a)
    return 1.0 + math.sqrt(math.pi / a)


def _ellipsoid_points(Y: np.ndarray, R: float) -> np.ndarray:
    """All integer n with n'Yn <= R, as rows."""
    g = Y.shape[0]
    Lc = np.linalg.cholesky(Y)  # Y = Lc Lc'
    # n'Yn = |Lc' n|^2; enumerate from the last coordinate down
    Ut = Lc.T

    def rec(k: int, partial: np.ndarray, budget: float) -> list[np.ndarray]:
        # partial: values n_{k+1..g-1} already fixed (length g-1-k)
        diag = Ut[k, k]
        shift = float(Ut[k, k + 1:] @ partial) if partial.size else 0.0
        half = math.sqrt(max(budget, 0.0)) / diag
        centre = -shift / diag
        lo, hi = math.ceil(centre - half), math.floor(centre + half)
        if hi < lo:
            return []
        if k == 0:
            ns = np.arange(lo, hi + 1)
            return [np.column_stack([ns, np.tile(partial, (ns.size, 1))]) if partial.size else ns[:, None]]
        out = []
        for n in range(lo, hi + 1):
            r = diag * n + shift
            out.extend(rec(k - 1, np.concatenate([[n], partial]), budget - r * r))
        return out

    chunks = rec(g - 1, np.zeros(0), R)
    if not chunks:
        return np.zeros((1, g), dtype=np.int64)
    return np.vstack(chunks).astype(np.int64)


def theta_tail_bound(Z: SiegelPoint, radius: int, convention: ThetaConvention = "pi") -> float:
    """Bound on the terms with some |n_i| > radius, from the least eigenvalue of Im Z."""
    kappa = _exponent_scale(convention)
    lam = float(np.linalg.eigvalsh(Z.Z.imag)[0])
    a = kappa * lam
    g = Z.g
    k = radius + 1
    # sum_{j > N} exp(-a j^2) <= exp(-a k^2) / (1 - exp(-a (2k + 1)))
    one_side = math.exp(-a * k * k) / (1.0 - math.exp(-a * (2 * k + 1)))
    return g * 2.0 * one_side * _one_dim_sum_bound(a) ** (g - 1)


def auto_truncation(Z: SiegelPoint, convention: ThetaConvention = "pi", tol: float = SERIES_TOL) -> SeriesTruncation:
    lam = float(np.linalg.eigvalsh(Z.Z.imag)[0])
    N = max(1, math.ceil(math.sqrt(-math.log(tol * 1e-2) / (_exponent_scale(convention) * lam))))
    while theta_tail_bound(Z, N, convention) >= tol:
        N += 1
    return SeriesTruncation(N, theta_tail_bound(Z, N, convention))


def theta_value(Z: SiegelPoint, trunc: SeriesTruncation | None = None,
                convention: ThetaConvention = "pi", tol: float = SERIES_TOL) -> complex:
    """sum over n in Z^g of exp(i kappa n'Zn), kappa = pi or 2 pi.

    With ``trunc`` the box |n_i| <= radius is summed and rejected if its tail
    bound is not below ``tol``.  Without it, Im Z is Lagrange-reduced (g = 2)
    and the ellipsoid n'(Im Z)n <= R is summed with R chosen so that the
    dropped mass is below ``tol``.
    """
    kappa = _exponent_scale(convention)
    W = Z.Z
    g = Z.g
    if trunc is not None:
        bound = theta_tail_bound(Z, trunc.radius, convention)
        if bound >= tol:
            raise TruncationError(f"radius {trunc.radius} leaves tail bound {bound:.3g} >= {tol:g}")
        axis = np.arange(-trunc.radius, trunc.radius + 1)
        pts = np.array(np.meshgrid(*([axis] * g), indexing="ij")).reshape(g, -1).T
    else:
        if g == 2:
            U = _gauss_reduce(W.imag)
            W = U.T @ W @ U
        Y = W.imag
        lam = float(np.linalg.eigvalsh(Y)[0])
        # terms with n'Yn > R: exp(-k n'Yn) <= exp(-k R / 2) exp(-k n'Yn / 2)
        total = _one_dim_sum_bound(kappa * lam / 2.0) ** g
        R = 2.0 * (math.log(total) - math.log(tol * 1e-2)) / kappa
        pts = _ellipsoid_points(Y, R)
    W = _reduce_real(W, convention)
    quad = np.einsum("ki,ij,kj->k", pts, W, pts)
    return complex(np.exp(1j * kappa * quad).sum())


@dataclass(frozen=True)
class RationalPoint:
    """Z = P/Q + iY with P integral symmetric, so the real part is exact.

    Near a cusp the lattice sum needs very large n, and the phases
    n'(Re Z)n are then reduced exactly with integers before use.
    """
    P: tuple[tuple[int, ...], ...]
    Q: int
    Y: tuple[tuple[float, ...], ...]

    @property
    def g(self) -> int:
        return len(self.P)

    @property
    def point(self) -> SiegelPoint:
        return SiegelPoint(np.array(self.P, dtype=float) / self.Q + 1j * np.array(self.Y, dtype=float))


def theta_value_rational(pt: RationalPoint, convention: ThetaConvention = "pi", tol: float = SERIES_TOL) -> complex:
    """theta at a point with rational real part; phases taken mod 2Q (pi) or Q (two_pi) exactly."""
    kappa = _exponent_scale(convention)
    g = pt.g
    P = np.array(pt.P, dtype=np.int64)
    Y = np.array(pt.Y, dtype=float)
    if g == 2:
        U = _gauss_reduce(Y)
        P, Y = U.T @ P @ U, U.T @ Y @ U
    lam = float(np.linalg.eigvalsh(Y)[0])
    total = _one_dim_sum_bound(kappa * lam / 2.0) ** g
    R = 2.0 * (math.log(total) - math.log(tol * 1e-2)) / kappa
    pts = _ellipsoid_points(Y, R)
    modulus = 2 * pt.Q if convention == "pi" else pt.Q
    acc = np.zeros(len(pts), dtype=np.int64)
    for i in range(g):
        for j in range(g):
            acc = (acc + (pts[:, i] * pts[:, j] % modulus) * (int(P[i, j]) % modulus)) % modulus
    quad_y = np.einsum("ki,ij,kj->k", pts, Y, pts)
    phase = np.exp(1j * (2.0 * math.pi) * acc / modulus)
    return complex((phase * np.exp(-kappa * quad_y)).sum())


def is_theta_group(M: SymplecticMatrix) -> bool:
    """AB' and CD' have even diagonal."""
    if not M.integral:
        return False
    A, B, C, D = M.A, M.B, M.C, M.D
    g = M.g
    for X, Y in ((A, B), (C, D)):
        for i in range(g):
            if sum(X[i][k] * Y[i][k] for k in range(g)) % 2:
                return False
    return True


def default_samples(g: int) -> list[SiegelPoint]:
    E = np.eye(g)
    S0 = np.full((g, g), 0.1) + np.diag(np.linspace(0.3, -0.2, g))
    off = np.full((g, g), 0.25) - 0.25 * E
    return [
        SiegelPoint(1j * E),
        SiegelPoint(2j * E),
        SiegelPoint(1j * E + S0),
        SiegelPoint(1j * (E + off) - S0),
        SiegelPoint(1.5j * E + 0.5 * S0.T),
    ]


def _summarize(values: Sequence[complex], branch: tuple[float, float]) -> MultiplierEvaluation:
    arr = np.array(values)
    deviation = float(np.abs(arr[:, None] - arr[None, :]).max()) if len(arr) > 1 else 0.0
    return MultiplierEvaluation(complex(arr.mean()), deviation, branch, tuple(complex(v) for v in arr))


def _check(ev: MultiplierEvaluation, what: str) -> MultiplierEvaluation:
    if ev.deviation >= MULTIPLIER_TOL:
        raise MultiplierError(f"{what}: value depends on Z (deviation {ev.deviation:.3g})", ev)
    if abs(abs(ev.value) - 1.0) >= MULTIPLIER_TOL:
        raise MultiplierError(f"{what}: |v| = {abs(ev.value)!r} is not 1", ev)
    return ev


IMAGE_DPS = 40


def theta_image_point(M: SymplecticMatrix, Z: "SiegelPoint | RationalPoint",
                      convention: ThetaConvention = "pi") -> SiegelPoint:
    """A point with the same theta value as MZ, formed at high precision and reduced.

    MZ is computed in mpmath, conjugated by the Lagrange reduction U of its
    imaginary part, and its real part shifted by an integral symmetric
    matrix that fixes every term.  Only the reduced point is rounded to
    double precision.
    """
    if not M.integral:
        return act(M, Z.point if isinstance(Z, RationalPoint) else Z)
    g = M.g
    with mpmath.workdps(IMAGE_DPS):
        if isinstance(Z, RationalPoint):
            Zm = mpmath.matrix([[mpmath.mpc(mpmath.mpf(Z.P[i][j]) / Z.Q, Z.Y[i][j]) for j in range(g)]
                                for i in range(g)])
        else:
            Zm = mpmath.matrix([[mpmath.mpc(complex(x)) for x in row] for row in Z.Z])
        A, B, C, D = (mpmath.matrix([list(r) for r in blk]) for blk in (M.A, M.B, M.C, M.D))
        W = (A * Zm + B) * mpmath.inverse(C * Zm + D)
        W = (W + W.T) / 2
        if g == 2:
            Yf = np.array([[float(mpmath.im(W[i, j])) for j in range(g)] for i in range(g)])
            U = mpmath.matrix(_gauss_reduce(Yf).tolist())
            W = U.T * W * U
        # even diagonal under the pi convention, any integers under two_pi
        period = [[(2 if i == j and convention == "pi" else 1) for j in range(g)] for i in range(g)]
        # shift taken from the upper triangle so that ties round the same way on both sides
        red = np.array([[complex(W[i, j] - period[i][j] * mpmath.nint(mpmath.re(W[min(i, j), max(i, j)])
                                                                      / period[i][j]))
                         for j in range(g)] for i in range(g)])
    return SiegelPoint(red)


def theta_multiplier(M: SymplecticMatrix, samples: "Iterable[SiegelPoint | RationalPoint] | None" = None,
                     convention: ThetaConvention = "pi", strict: bool = True,
                     trunc: SeriesTruncation | None = None) -> MultiplierEvaluation:
    """v(M) = theta(MZ) / (det(CZ+D)^(1/2) theta(Z)) on the continued branch.

    ``trunc`` forces a box truncation for the floating-point theta sums.
    """
    if not is_theta_group(M):
        raise ValueError(f"{M} is not in the theta group")
    pts = list(samples) if samples is not None else default_samples(M.g)
    if not pts:
        raise ValueError("need at least one sample point")
    values, branch = [], None
    for Z in pts:
        if isinstance(Z, RationalPoint):
            Zf, theta_z = Z.point, theta_value_rational(Z, convention)
        else:
            Zf, theta_z = Z, theta_value(Z, trunc, convention=convention)
        J = j_factor(M, Zf)
        L = L_value(M, Zf)
        half = np.exp(0.5 * (math.log(abs(J)) + 1j * L))
        theta_mz = theta_value(theta_image_point(M, Z, convention), trunc, convention=convention)
        values.append(theta_mz / (half * theta_z))
        if branch is None:
            branch = (math.log(abs(J)), L)
    ev = _summarize(values, branch)
    return _check(ev, f"theta multiplier at {M}") if strict else ev


# ---------------------------------------------------------------------------
# discriminant function

def delta_log(z: complex | SiegelPoint, terms: int | None = None, tol: float = SERIES_TOL) -> complex:
    """Holomorphic log Delta(z) = 2 pi i z + 24 sum log(1 - q^n), q = exp(2 pi i z)."""
    if isinstance(z, SiegelPoint):
        if z.g != 1:
            raise ValueError("Delta lives on the upper half-plane (genus 1)")
        z = complex(z.Z[0, 0])
    z = complex(z)
    y = z.imag
    if y <= 0:
        raise ValueError("Im z must be positive")
    shift = round(z.real)
    zr = z - shift
    absq = math.exp(-2.0 * math.pi * y)

    def tail(n: int) -> float:
        # 24 sum_{k > n} |log(1 - q^k)| <= 48 |q|^(n+1) / (1 - |q|)^2
        return 48.0 * absq ** (n + 1) / (1.0 - absq) ** 2

    if terms is None:
        terms = max(1, math.ceil((math.log(tol) - math.log(48.0) + 2 * math.log(1.0 - absq)) / (-2.0 * math.pi * y)))
        while tail(terms) >= tol:
            terms += 1
    elif tail(terms) >= tol:
        raise TruncationError(f"{terms} terms leave tail {tail(terms):.3g} at Im z = {y:g}")
    n = np.arange(1, terms + 1)
    qn = np.exp(2j * math.pi * n * zr)
    series = complex(np.log1p(-qn).sum())
    return 2j * math.pi * z + 24.0 * series


def delta_samples(M: SymplecticMatrix) -> list[complex]:
    """Points where Im z and Im Mz are both about 1/|c|."""
    (a, b), (c, d) = M.rows
    if c == 0:
        return [1j, 0.3 + 1.2j, -0.4 + 0.8j]
    return [complex(-d / c, t / abs(c)) for t in (1.0, 0.8, 1.25)]


def _rademacher_raw(M: SymplecticMatrix, z: complex) -> tuple[float, float, float]:
    P = SiegelPoint(np.array([[z]]))
    J = j_factor(M, P)
    L = L_value(M, P)
    Mz = complex(act(M, P).Z[0, 0])
    raw = (delta_log(Mz) - delta_log(z) - 12.0 * (math.log(abs(J)) + 1j * L)) / (2j * math.pi)
    return raw.real, math.log(abs(J)), L


def rademacher_integer(M: SymplecticMatrix, samples: Sequence[complex] | None = None) -> int:
    """Integer d(M) with Delta(Mz) = exp(2 pi i d(M)) det(cz+d)^12 Delta(z) on the continued branch."""
    if M.g != 1 or not M.integral:
        raise ValueError("d(M) is defined for integral genus-1 matrices")
    pts = list(samples) if samples is not None else delta_samples(M)
    if len(pts) < 3:
        raise ValueError("integrality is checked at three or more points")
    raws = [_rademacher_raw(M, z)[0] for z in pts]
    d = round(raws[0])
    worst = max(abs(r - d) for r in raws)
    if worst >= INTEGRALITY_TOL:
        raise MultiplierError(f"d({M}) is not a z-independent integer: {raws}")
    return int(d)


def delta_multiplier(r: float, M: SymplecticMatrix, samples: Sequence[complex] | None = None) -> MultiplierEvaluation:
    """v_r(M) = exp(2 pi i (r/12) d(M)), the multiplier of Delta^(r/12)."""
    pts = list(samples) if samples is not None else delta_samples(M)
    raws = [_rademacher_raw(M, z) for z in pts]
    d = rademacher_integer(M, pts)
    value = unit_power(r * d / 12.0)
    values = [complex(np.exp(2j * math.pi * r * raw / 12.0)) for raw, _, _ in raws]
    deviation = max(abs(v - value) for v in values)
    return _check(MultiplierEvaluation(value, deviation, (raws[0][1], raws[0][2]), tuple(values)),
                  f"Delta multiplier at {M}")


# ---------------------------------------------------------------------------
# the multiplier relation

@dataclass
class RelationReport:
    r: float
    deviations: list[float]
    witnesses: list[tuple[str, str]]
    tol: float = MULTIPLIER_TOL

    @property
    def worst(self) -> float:
        return max(self.deviations, default=0.0)

    @property
    def passed(self) -> bool:
        return self.worst < self.tol

    def failures(self) -> list[tuple[str, str, float]]:
        return [(m, n, dev) for (m, n), dev in zip(self.witnesses, self.deviations) if dev >= self.tol]


Evaluator = Callable[[SymplecticMatrix], "MultiplierEvaluation | complex"]


def verify_multiplier_relation(evaluator: Evaluator, r: float,
                               pairs: Iterable[tuple[SymplecticMatrix, SymplecticMatrix]],
                               tol: float = MULTIPLIER_TOL) -> RelationReport:
    """Check v(MN) = v(M) v(N) sigma_r(M, N) pair by pair."""
    cache: dict[tuple, complex] = {}

    def v(X: SymplecticMatrix) -> complex:
        if X.rows not in cache:
            out = evaluator(X)
            cache[X.rows] = out.value if isinstance(out, MultiplierEvaluation) else complex(out)
        return cache[X.rows]

    devs, wits = [], []
    for M, N in pairs:
        lhs = v(mul(M, N))
        rhs = v(M) * v(N) * sigma_factor(r, M, N).value
        devs.append(abs(lhs - rhs))
        wits.append((str(M), str(N)))
    return RelationReport(r, devs, wits, tol)
