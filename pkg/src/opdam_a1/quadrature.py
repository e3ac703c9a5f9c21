"""Gauss-Jacobi rules for |sin x|^{2k} dx on the circle and (1-u^2)^a du on [-1, 1]."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .special_fn import check_multiplicity

__all__ = [
    "QuadratureRule",
    "GridFunction",
    "gauss_jacobi",
    "build_circle_rule",
    "build_interior_rule",
    "inner_product",
    "lp_norm",
    "DEFAULT_ORDER",
]

DEFAULT_ORDER = 256


def _jacobi_recurrence(m: int, alpha: float, beta: float):
    """Diagonal a_0..a_{m-1} and off-diagonal b_1..b_{m-1} of the Jacobi matrix."""
    n = np.arange(m, dtype=float)
    ab = alpha + beta
    s = 2 * n + ab
    with np.errstate(divide="ignore", invalid="ignore"):
        a = (beta**2 - alpha**2) / (s * (s + 2))
    a[0] = (beta - alpha) / (ab + 2)
    if alpha == beta:
        a[:] = 0.0
    j = np.arange(1, m, dtype=float)
    s = 2 * j + ab
    with np.errstate(divide="ignore", invalid="ignore"):
        b2 = 4 * j * (j + alpha) * (j + beta) * (j + ab) / (s**2 * (s + 1) * (s - 1))
    if m > 1:
        # the generic formula is 0/0 at j = 1 when alpha + beta = -1
        b2[0] = 4 * (1 + alpha) * (1 + beta) / ((2 + ab) ** 2 * (3 + ab))
    return a, np.sqrt(b2)


@functools.lru_cache(maxsize=128)
def _gauss_jacobi_cached(m: int, alpha: float, beta: float):
    a, b = _jacobi_recurrence(m, alpha, beta)
    log_mu0 = (
        (alpha + beta + 1) * math.log(2.0)
        + gammaln(alpha + 1)
        + gammaln(beta + 1)
        - gammaln(alpha + beta + 2)
    )
    x = eigh_tridiagonal(a, b, eigvals_only=True) if m > 1 else a.copy()

    # Newton polish on the orthonormal p_m, then Christoffel weights 1 / sum p_j^2;
    # both are more accurate than first eigenvector components near the endpoints.
    p0 = math.exp(-0.5 * log_mu0)
    bb = np.append(b, 0.0)
    for _ in range(2):
        p_prev, p = np.zeros_like(x), np.full_like(x, p0)
        d_prev, d = np.zeros_like(x), np.zeros_like(x)
        for j in range(m):
            bj = b[j - 1] if j > 0 else 0.0
            if j < m - 1:
                p_next = ((x - a[j]) * p - bj * p_prev) / bb[j]
                d_next = (p + (x - a[j]) * d - bj * d_prev) / bb[j]
            else:
                # unnormalized p_m (monic scaling is irrelevant for Newton)
                p_next = (x - a[j]) * p - bj * p_prev
                d_next = p + (x - a[j]) * d - bj * d_prev
            p_prev, p, d_prev, d = p, p_next, d, d_next
        x = x - p / d
    x = np.sort(x)

    p_prev, p = np.zeros_like(x), np.full_like(x, p0)
    ssum = p * p
    for j in range(m - 1):
        bj = b[j - 1] if j > 0 else 0.0
        p_next = ((x - a[j]) * p - bj * p_prev) / b[j]
        p_prev, p = p, p_next
        ssum = ssum + p * p
    w = 1.0 / ssum
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_jacobi(m: int, alpha: float, beta: float | None = None):
    """Nodes and weights of the m-point Gauss rule for (1-u)^alpha (1+u)^beta on [-1, 1].

    Golub-Welsch eigenvalues of the Jacobi matrix, refined by Newton steps.
    Exact for polynomials of degree <= 2m - 1.
    """
    if beta is None:
        beta = alpha
    if m < 1:
        raise ValueError("need at least one node")
    if alpha <= -1 or beta <= -1:
        raise ValueError("Jacobi exponents must exceed -1")
    return _gauss_jacobi_cached(int(m), float(alpha), float(beta))


@dataclass(frozen=True)
class QuadratureRule:
    """Immutable nodes/weights pair.

    kind "circle": integrates against dm_k(x) = |sin x|^{2k} dx on [-pi, pi],
    nodes are angles. kind "interior": integrates against (1-u^2)^exponent du.
    """

    nodes: np.ndarray
    weights: np.ndarray
    k: float
    exponent: float
    order: int
    kind: str = field(default="circle")

    def integrate(self, values) -> complex | float:
        """Sum of weights * values along the last axis."""
        values = np.asarray(values)
        if values.shape[-1] != self.nodes.size:
            raise ValueError("values do not match the rule's nodes")
        return values @ self.weights

    def integrate_fn(self, f):
        return self.integrate(f(self.nodes))

    @property
    def mass(self) -> float:
        return float(self.weights.sum())


def build_circle_rule(k: float, m: int = DEFAULT_ORDER) -> QuadratureRule:
    """Rule for the integral of f against |sin x|^{2k} dx on [-pi, pi].

    The integral equals that of f(arccos u) + f(-arccos u) against
    (1 - u^2)^{k - 1/2} du, which an m-point Gauss-Jacobi rule handles exactly
    whenever the even part of f is a trigonometric polynomial of degree
    <= 2m - 1. Nodes are the 2m angles +-arccos(u_j), sorted.
    """
    k = check_multiplicity(k)
    if m < 2:
        raise ValueError("circle rule order must be >= 2")
    u, w = gauss_jacobi(m, k - 0.5)
    theta = np.arccos(u)
    nodes = np.concatenate([-theta, theta[::-1]])
    weights = np.concatenate([w, w[::-1]])
    order = np.argsort(nodes, kind="stable")
    nodes, weights = nodes[order], weights[order]
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(nodes, weights, k, 2 * k, m, "circle")


def build_interior_rule(k: float, exponent: float, m: int = DEFAULT_ORDER) -> QuadratureRule:
    """Gauss-Jacobi rule for g(u) (1-u^2)^exponent du on [-1, 1]."""
    k = check_multiplicity(k)
    if exponent <= -1:
        raise ValueError(f"weight exponent must exceed -1, got {exponent}")
    u, w = gauss_jacobi(m, exponent)
    return QuadratureRule(u, w, k, float(exponent), m, "interior")


@dataclass(frozen=True)
class GridFunction:
    """Complex samples on a grid symmetric about 0."""

    grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        grid = np.asarray(self.grid, dtype=float)
        values = np.asarray(self.values, dtype=complex)
        if grid.shape != values.shape:
            raise ValueError("grid and values must have the same shape")
        if not np.allclose(grid, -grid[::-1], atol=1e-14):
            raise ValueError("grid must be symmetric about 0")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(cls, f, grid) -> "GridFunction":
        grid = np.asarray(grid, dtype=float)
        return cls(grid, np.asarray(f(grid), dtype=complex))

    def reflect(self) -> "GridFunction":
        """Samples of x -> f(-x) on the same grid."""
        return GridFunction(self.grid, self.values[::-1])


def _values_on(f, rule: QuadratureRule) -> np.ndarray:
    if isinstance(f, GridFunction):
        if f.grid.shape != rule.nodes.shape or not np.allclose(f.grid, rule.nodes, atol=1e-14):
            raise ValueError("grid function does not live on the rule's nodes")
        return f.values
    if callable(f):
        return np.asarray(f(rule.nodes), dtype=complex)
    raise TypeError("expected a callable or a GridFunction")


def inner_product(f, g, rule: QuadratureRule) -> complex:
    """(f, g)_k = integral of f conj(g) dm_k."""
    if rule.kind != "circle":
        raise ValueError("inner products need a circle rule")
    return complex(rule.integrate(_values_on(f, rule) * np.conj(_values_on(g, rule))))


def lp_norm(f, rule: QuadratureRule, p: float) -> float:
    """||f||_{p,k}; p = inf is the max over the rule's nodes."""
    vals = np.abs(_values_on(f, rule))
    if np.isinf(p):
        return float(vals.max())
    if p < 1:
        raise ValueError("p must be >= 1")
    return float(rule.integrate(vals**p).real ** (1.0 / p))


def adaptive_jacobi(integrand, params, exponent: float, *, tol: float = 1e-10,
                    m0: int = 64, m_max: int = 8192):
    """Batched integral of integrand(u, *params) (1-u^2)^exponent du over [-1, 1].

    `params` are equal-length 1-D arrays, one integral per entry. The Gauss-Jacobi
    order is doubled per entry until two successive orders agree to
    tol * max(1, |value|). Entries still unconverged at m_max keep the m_max value.
    """
    params = [np.atleast_1d(np.asarray(p)) for p in params]
    size = params[0].size if params else 1
    result = np.zeros(size, dtype=complex)
    todo = np.arange(size)

    def evaluate(m, idx):
        u, w = gauss_jacobi(m, exponent)
        vals = integrand(u[None, :], *[p[idx, None] for p in params])
        return np.asarray(vals) @ w

    m = m0
    prev = evaluate(m, todo)
    while todo.size and m < m_max:
        m *= 2
        cur = evaluate(m, todo)
        done = np.abs(cur - prev) <= tol * np.maximum(1.0, np.abs(cur))
        result[todo] = cur
        todo, prev = todo[~done], cur[~done]
    if todo.size and m0 >= m_max:
        result[todo] = prev
    return result
