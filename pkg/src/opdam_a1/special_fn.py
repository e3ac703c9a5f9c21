"""Heckman-Opdam polynomials of type A1 and the Gegenbauer machinery behind them.

All evaluations go through the normalized ultraspherical family

    q_m^j(t) = Gamma(j) m! / (2 Gamma(m + j)) * C_m^j(t),

so that for m >= 1 the symmetric polynomial is P_m^k(z) = q_m^k(cosh z) and

    E_n^k(z)  = q_n^k(cosh z) + 2 sinh(z) q_{n-1}^{k+1}(cosh z),
    E_-n^k(z) = (n+2k)/(n+k) q_n^k(cosh z) - 2n/(n+k) sinh(z) q_{n-1}^{k+1}(cosh z).

On the circle z = ix, so cosh z = cos x and sinh z = i sin x. Note q_0 = 1/2,
while P_0 = E_0 = 1.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import gammaln

__all__ = [
    "check_multiplicity",
    "extended_eigenvalue",
    "triangleleft",
    "gegenbauer_eval",
    "gegenbauer_table",
    "gegenbauer_norm_sq",
    "hyp2f1_terminating",
    "p_eval",
    "p_derivs",
    "p_at_zero",
    "e_eval",
    "e_deriv",
    "e_at_zero",
    "e_normalized",
    "e_norm_sq",
    "e_table",
    "e_deriv_table",
    "e_real",
    "e_real_deriv",
    "total_mass",
]

MAX_DEGREE = 4096


def check_multiplicity(k: float) -> float:
    k = float(k)
    if not np.isfinite(k) or k < 0:
        raise ValueError(f"multiplicity must be a finite k >= 0, got {k}")
    return k


def extended_eigenvalue(n: int, k: float) -> float:
    """n + k for n > 0 and n - k for n <= 0."""
    return n + k if n > 0 else n - k


def triangleleft(j: int, n: int) -> bool:
    """The partial order j ◁ n on the integers."""
    aj, an = abs(j), abs(n)
    if aj < an:
        return (an - aj) % 2 == 0
    return aj == an and n < j


# ---------------------------------------------------------------------------
# Gegenbauer polynomials


def gegenbauer_table(nmax: int, k: float, t) -> np.ndarray:
    """C_0^k(t), ..., C_nmax^k(t) stacked along a new leading axis.

    Forward three-term recurrence; `t` may be real or complex.
    """
    if k <= 0:
        raise ValueError(f"Gegenbauer parameter must be positive, got {k}")
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    t = np.asarray(t)
    dtype = np.result_type(t, float)
    out = np.empty((nmax + 1,) + t.shape, dtype=dtype)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 2.0 * k * t
    for n in range(2, nmax + 1):
        out[n] = (2.0 * t * (n + k - 1) * out[n - 1] - (n + 2 * k - 2) * out[n - 2]) / n
    return out


def gegenbauer_eval(n: int, k: float, t):
    """C_n^k(t) for k > 0."""
    if n < 0:
        raise ValueError("degree must be >= 0")
    vals = gegenbauer_table(n, k, t)[n]
    return vals if vals.ndim else vals.item()


def gegenbauer_norm_sq(n: int, k: float) -> float:
    """Squared norm of C_n^k against (1 - t^2)^(k - 1/2) on [-1, 1]."""
    if k <= 0:
        raise ValueError(f"Gegenbauer parameter must be positive, got {k}")
    if n < 0:
        raise ValueError("degree must be >= 0")
    log = (
        math.log(math.pi)
        + (1 - 2 * k) * math.log(2.0)
        + gammaln(n + 2 * k)
        - gammaln(n + 1)
        - math.log(n + k)
        - 2 * gammaln(k)
    )
    return math.exp(log)


def hyp2f1_terminating(a: float, n: int, c: float, z):
    """2F1(a, -n; c; z) summed exactly as a polynomial of degree n in z."""
    z = np.asarray(z)
    term = np.ones_like(z, dtype=np.result_type(z, float))
    total = term.copy()
    for j in range(n):
        term = term * (a + j) * (-n + j) / ((c + j) * (j + 1)) * z
        total = total + term
    return total if total.ndim else total.item()


def _q_log_const(m: np.ndarray | int, j: float):
    return gammaln(j) + gammaln(np.asarray(m) + 1) - math.log(2.0) - gammaln(np.asarray(m) + j)


def _q_table(nmax: int, j: float, t) -> np.ndarray:
    """q_0^j(t), ..., q_nmax^j(t); rows beyond nmax < 0 give an empty table."""
    t = np.asarray(t)
    if nmax < 0:
        return np.empty((0,) + t.shape, dtype=np.result_type(t, float))
    c = gegenbauer_table(nmax, j, t)
    scale = np.exp(_q_log_const(np.arange(nmax + 1), j))
    return c * scale.reshape((-1,) + (1,) * t.ndim)


# ---------------------------------------------------------------------------
# Non-symmetric polynomials, complex argument


def _check_degree(n: int) -> int:
    n = int(n)
    if abs(n) > MAX_DEGREE:
        raise ValueError(f"|n| must not exceed {MAX_DEGREE}")
    return n


def _e_table_z(N: int, k: float, z) -> np.ndarray:
    """E_n^k(z) for n = -N..N, shape (2N+1, *z.shape)."""
    z = np.asarray(z, dtype=complex)
    out = np.empty((2 * N + 1,) + z.shape, dtype=complex)
    if k == 0:
        for n in range(-N, N + 1):
            out[n + N] = np.exp(n * z)
        return out
    ch, sh = np.cosh(z), np.sinh(z)
    p = _q_table(N, k, ch)
    q1 = _q_table(N - 1, k + 1, ch)
    out[N] = 1.0
    for m in range(1, N + 1):
        odd = 2.0 * sh * q1[m - 1]
        out[N + m] = p[m] + odd
        out[N - m] = ((m + 2 * k) * p[m] - m * odd) / (m + k)
    return out


def _e_deriv_table_z(N: int, k: float, z) -> np.ndarray:
    """d/dz E_n^k(z) for n = -N..N."""
    z = np.asarray(z, dtype=complex)
    out = np.empty((2 * N + 1,) + z.shape, dtype=complex)
    if k == 0:
        for n in range(-N, N + 1):
            out[n + N] = n * np.exp(n * z)
        return out
    ch, sh = np.cosh(z), np.sinh(z)
    q1 = _q_table(N - 1, k + 1, ch)
    q2 = _q_table(N - 2, k + 2, ch)
    out[N] = 0.0
    for m in range(1, N + 1):
        # d/dz q_m^j(cosh z) = 2 m sinh(z) q_{m-1}^{j+1}(cosh z)
        dp = 2.0 * m * sh * q1[m - 1]
        dodd = 2.0 * ch * q1[m - 1]
        if m >= 2:
            dodd = dodd + 4.0 * (m - 1) * sh * sh * q2[m - 2]
        out[N + m] = dp + dodd
        out[N - m] = ((m + 2 * k) * dp - m * dodd) / (m + k)
    return out


def e_table(N: int, k: float, x) -> np.ndarray:
    """E_n^k(ix) for n = -N..N on the angles `x`; row n + N holds degree n."""
    k = check_multiplicity(k)
    return _e_table_z(_check_degree(N), k, 1j * np.asarray(x, dtype=float))


def e_deriv_table(N: int, k: float, x) -> np.ndarray:
    """d/dx E_n^k(ix) for n = -N..N."""
    k = check_multiplicity(k)
    return 1j * _e_deriv_table_z(_check_degree(N), k, 1j * np.asarray(x, dtype=float))


def _pick(table: np.ndarray, n: int, N: int):
    row = table[n + N]
    return row if row.ndim else row.item()


def e_eval(n: int, k: float, x):
    """E_n^k(ix) for any integer n; exact e^{inx} when k = 0."""
    n = _check_degree(n)
    return _pick(e_table(abs(n), k, x), n, abs(n))


def e_deriv(n: int, k: float, x):
    """Analytic derivative d/dx of x -> E_n^k(ix)."""
    n = _check_degree(n)
    return _pick(e_deriv_table(abs(n), k, x), n, abs(n))


def e_real(n: int, k: float, x):
    """E_n^k(x) at real x (the real-axis Cherednik eigenfunction)."""
    n = _check_degree(n)
    k = check_multiplicity(k)
    vals = _e_table_z(abs(n), k, np.asarray(x, dtype=float) + 0j)[n + abs(n)].real
    return vals if vals.ndim else vals.item()


def e_real_deriv(n: int, k: float, x):
    n = _check_degree(n)
    k = check_multiplicity(k)
    vals = _e_deriv_table_z(abs(n), k, np.asarray(x, dtype=float) + 0j)[n + abs(n)].real
    return vals if vals.ndim else vals.item()


def p_at_zero(n: int, k: float) -> float:
    """P_n^k(0) = E_n^k(0) for n >= 1; equals 1 for n = 0."""
    k = check_multiplicity(k)
    if n < 0:
        raise ValueError("P_n is indexed by n >= 0")
    if n == 0 or k == 0:
        return 1.0
    return math.exp(
        gammaln(k + 1) + gammaln(n + 2 * k) - gammaln(2 * k + 1) - gammaln(n + k)
    )


def e_at_zero(n: int, k: float) -> float:
    """E_n^k(0); the odd part vanishes at the origin."""
    m = abs(int(n))
    if n >= 0:
        return p_at_zero(m, k)
    return (m + 2 * k) / (m + k) * p_at_zero(m, k)


def e_normalized(n: int, k: float, x):
    """The normalized polynomial E_n^k(ix) / E_n^k(0), equal to 1 at x = 0."""
    return e_eval(n, k, x) / e_at_zero(n, k)


def p_derivs(n: int, k: float, z) -> tuple:
    """(P, P', P'') of the symmetric polynomial at complex argument z.

    Derivatives are with respect to z. For the circle pass z = ix and apply the
    chain rule (d/dx = i d/dz).
    """
    k = check_multiplicity(k)
    if n < 0:
        raise ValueError("P_n is indexed by n >= 0")
    n = _check_degree(n)
    z = np.asarray(z, dtype=complex)
    if n == 0:
        one = np.ones_like(z)
        return one, 0 * one, 0 * one
    if k == 0:
        return np.cosh(n * z), n * np.sinh(n * z), n * n * np.cosh(n * z)
    ch, sh = np.cosh(z), np.sinh(z)
    p = _q_table(n, k, ch)[n]
    q1 = _q_table(n - 1, k + 1, ch)[n - 1]
    dp = 2.0 * n * sh * q1
    d2p = 2.0 * n * ch * q1
    if n >= 2:
        q2 = _q_table(n - 2, k + 2, ch)[n - 2]
        d2p = d2p + 4.0 * n * (n - 1) * sh * sh * q2
    return p, dp, d2p


def p_eval(n: int, k: float, x):
    """P_n^k(ix) = (E_n(ix) + E_n(-ix)) / 2, real on the circle."""
    if n < 0:
        raise ValueError("P_n is indexed by n >= 0; use e_eval for negative degrees")
    k = check_multiplicity(k)
    x = np.asarray(x, dtype=float)
    if k == 0:
        vals = np.cos(n * x)
    else:
        vals = p_derivs(n, k, 1j * x)[0].real
    return vals if vals.ndim else vals.item()


def total_mass(k: float) -> float:
    """Integral of |sin x|^{2k} over [-pi, pi]."""
    k = check_multiplicity(k)
    return 2.0 * math.exp(0.5 * math.log(math.pi) + gammaln(k + 0.5) - gammaln(k + 1))


def e_norm_sq(n: int, k: float) -> float:
    """||E_n^k(i.)||^2 in L^2(|sin x|^{2k} dx).

    Uses ||E_{m+1}||^2 = ||E_{-m}||^2 = pi 2^{1-2k} m! Gamma(m+2k+1) / Gamma(m+k+1)^2.
    """
    k = check_multiplicity(k)
    m = n - 1 if n >= 1 else -n
    log = (
        math.log(math.pi)
        + (1 - 2 * k) * math.log(2.0)
        + gammaln(m + 1)
        + gammaln(m + 2 * k + 1)
        - 2 * gammaln(m + k + 1)
    )
    return math.exp(log)
