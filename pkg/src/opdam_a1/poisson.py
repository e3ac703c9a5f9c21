"""Poisson kernel: truncated series, one-dimensional integral form, k = 0 closed form."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .quadrature import QuadratureRule, adaptive_jacobi
from .special_fn import check_multiplicity, e_table
from .spectral import norms_sq

__all__ = [
    "PoissonQuery",
    "series_truncation",
    "poisson_series",
    "poisson_series_complex",
    "poisson_closed_form",
    "poisson_integral_form",
    "poisson_kernel",
    "poisson_apply",
    "poisson_mass",
    "stated_mass_constant",
    "kernel_u_integral",
]


@dataclass(frozen=True)
class PoissonQuery:
    r: float
    x: float
    y: float
    k: float

    def __post_init__(self):
        check_multiplicity(self.k)
        if not 0 <= self.r < 1:
            raise ValueError(f"need 0 <= r < 1, got {self.r}")


def _check_r(r):
    r = np.asarray(r, dtype=float)
    if np.any(r < 0) or np.any(r >= 1):
        raise ValueError("need 0 <= r < 1")
    return r


def series_truncation(r: float, k: float, tol: float = 1e-14) -> int:
    """Smallest N with (N+1)^{2k+1} r^N below tol, plus a margin of 10.

    Terms of the series behave like n^{2k} r^n near the diagonal.
    """
    if r == 0:
        return 1
    log_r = math.log(r)
    n = max(1, math.ceil(math.log(tol) / log_r))
    while (2 * k + 1) * math.log(n + 1) + n * log_r > math.log(tol):
        n += 1
    return n + 10


def poisson_series_complex(r, x, y, k: float, N: int | None = None, tol: float = 1e-14):
    """Partial sum of gamma_n r^{|n|+k} E_n(ix) E_n(-iy) for |n| <= N, as computed."""
    k = check_multiplicity(k)
    r = float(_check_r(r))
    if N is None:
        N = series_truncation(r, k, tol)
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    ex = e_table(N, k, x)
    ey = e_table(N, k, -y)
    n = np.arange(-N, N + 1)
    powers = np.abs(n) + k
    damp = np.where(powers == 0, 1.0, r ** powers) / norms_sq(N, k)
    vals = np.tensordot(damp, ex * ey, axes=(0, 0))
    return vals if vals.ndim else complex(vals)


def poisson_series(r, x, y, k: float, N: int | None = None, tol: float = 1e-14):
    """Real part of the truncated series (the kernel is real)."""
    vals = np.real(poisson_series_complex(r, x, y, k, N, tol))
    return vals if np.ndim(vals) else float(vals)


def poisson_closed_form(r, x, y):
    """Classical kernel (1/2pi)(1-r^2)/(1-2r cos(x-y)+r^2)."""
    r = _check_r(r)
    vals = (1 - r * r) / (2 * np.pi * (1 - 2 * r * np.cos(np.asarray(x) - np.asarray(y)) + r * r))
    return vals if np.ndim(vals) else float(vals)


def kernel_u_integral(A, B, k: float, *, tol: float = 1e-11, m0: int = 64, m_max: int = 8192):
    """Integral of (1+u)(1-u^2)^{k-1} (A - B u)^{-(k+1)} du over [-1, 1], batched.

    Requires A > |B| elementwise. The Gauss-Jacobi order doubles until converged.
    """
    A, B = np.broadcast_arrays(np.asarray(A, dtype=float), np.asarray(B, dtype=float))
    shape = A.shape
    vals = adaptive_jacobi(
        lambda u, a, b: (1 + u) * (a - b * u) ** (-(k + 1)),
        (A.ravel(), B.ravel()),
        k - 1,
        tol=tol,
        m0=m0,
        m_max=m_max,
    ).real
    return vals.reshape(shape)


def poisson_integral_form(r, x, y, k: float, *, tol: float = 1e-11, m0: int = 64):
    """(k/2pi)(1-r^2) r^k times the integral of (1+u)(1-u^2)^{k-1} / D^{k+1},
    D = 1 - 2r(cos x cos y + u sin x sin y) + r^2. Needs k > 0."""
    k = check_multiplicity(k)
    if k == 0:
        raise ValueError("the integral form needs k > 0; use poisson_closed_form")
    r = _check_r(r)
    r, x, y = np.broadcast_arrays(r, np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    A = 1 + r * r - 2 * r * np.cos(x) * np.cos(y)
    B = 2 * r * np.sin(x) * np.sin(y)
    integral = kernel_u_integral(A, B, k, tol=tol, m0=m0)
    vals = k / (2 * np.pi) * (1 - r * r) * r**k * integral
    return vals if vals.ndim else float(vals)


def poisson_kernel(r, x, y, k: float, **kwargs):
    """P_k(r, x, y), routed to the closed form at k = 0."""
    if check_multiplicity(k) == 0:
        return poisson_closed_form(r, x, y)
    return poisson_integral_form(r, x, y, k, **kwargs)


def poisson_apply(f, r: float, x, k: float, rule: QuadratureRule):
    """Kernel-side Poisson integral of f at the points x."""
    if rule.kind != "circle" or rule.k != k:
        raise ValueError("need a circle rule with the same k")
    x = np.asarray(x, dtype=float)
    y = rule.nodes
    fy = np.asarray(f(y), dtype=complex) * np.ones_like(y)
    kern = poisson_kernel(r, x[..., None], y, k)
    vals = (kern * rule.weights) @ fy
    return vals if vals.ndim else complex(vals)


def poisson_mass(r: float, k: float, rule: QuadratureRule, y: float = 0.3) -> float:
    """Integral of P_k(r, x, y) dm_k(x); should equal r^k."""
    kern = poisson_kernel(r, rule.nodes, y, k)
    return float(rule.integrate(kern))


def stated_mass_constant(r: float, k: float) -> float:
    """pi 2^{1-2k} Gamma(2k+1)/Gamma(k+1)^2 r^k, i.e. ||E_0||^2 r^k.

    Kept for side-by-side reporting; the kernel actually integrates to r^k.
    """
    k = check_multiplicity(k)
    log = math.log(math.pi) + (1 - 2 * k) * math.log(2) + gammaln(2 * k + 1) - 2 * gammaln(k + 1)
    return math.exp(log) * (r**k if k else 1.0)
