"""Differential-difference operators on the circle and the real line, the
singular Hilbert kernel, and the kernel-estimate experiments."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .poisson import kernel_u_integral
from .quadrature import QuadratureRule, gauss_jacobi
from .special_fn import check_multiplicity

__all__ = [
    "EPS_SINGULAR",
    "RemovableSingularityError",
    "HilbertKernelQuery",
    "apply_T_real",
    "apply_Tcal",
    "apply_Delta_even",
    "apply_Lk_real",
    "hilbert_kernel",
    "hilbert_via_kernel",
    "kernel_bound_sup",
    "min_sin_sides",
    "min_sin_identity",
    "hormander_experiment",
]

EPS_SINGULAR = 1e-6


class RemovableSingularityError(ValueError):
    """Raised when a difference quotient is evaluated inside its removable singularity."""


@dataclass(frozen=True)
class HilbertKernelQuery:
    x: float
    y: float
    k: float

    def __post_init__(self):
        check_multiplicity(self.k)
        if _on_diagonal(self.x, self.y):
            raise ValueError("the Hilbert kernel is singular on x = +-y")


def _on_diagonal(x, y, tol=1e-14):
    return bool(np.any(np.abs(np.sin((np.asarray(x) - y) / 2)) < tol)
                or np.any(np.abs(np.sin((np.asarray(x) + y) / 2)) < tol))


def apply_T_real(fx, fmx, dfx, x: float, k: float, *, limit: bool = False,
                 eps: float = EPS_SINGULAR):
    """f'(x) + 2k (f(x) - f(-x)) / (1 - e^{-2x}) - k f(x) from the values f(x), f(-x), f'(x).

    For |x| < eps the quotient is replaced by its limit f'(0) (approximated by
    f'(x)) when `limit` is set; otherwise RemovableSingularityError is raised.
    """
    k = check_multiplicity(k)
    if abs(x) < eps:
        if not limit:
            raise RemovableSingularityError(f"|x| = {abs(x)} < {eps}; pass limit=True")
        quotient = dfx
    else:
        quotient = (fx - fmx) / (-math.expm1(-2 * x))
    return dfx + 2 * k * quotient - k * fx


def apply_Tcal(f, df, x, k: float, *, eps: float = EPS_SINGULAR):
    """f'(x) + 2ki (f(x) - f(-x)) / (1 - e^{-2ix}) - ki f(x) with analytic f'.

    Within eps of 0 or +-pi the quotient takes its limit -i f'(x).
    """
    k = check_multiplicity(k)
    x = np.asarray(x, dtype=float)
    fx = np.asarray(f(x), dtype=complex)
    fmx = np.asarray(f(-x), dtype=complex)
    dfx = np.asarray(df(x), dtype=complex)
    near = np.abs(np.sin(x)) < eps
    denom = np.where(near, 1.0, -np.expm1(-2j * x))
    quotient = np.where(near, -1j * dfx, (fx - fmx) / denom)
    vals = dfx + 2j * k * quotient - 1j * k * fx
    return vals if vals.ndim else complex(vals)


def apply_Delta_even(f, df, d2f, x, k: float, *, eps: float = EPS_SINGULAR):
    """f'' + 2k cot(x) f' - k^2 f for even f.

    At sin x = 0, cot(x) f'(x) is replaced by its limit f''(x).
    """
    k = check_multiplicity(k)
    x = np.asarray(x, dtype=float)
    fx = np.asarray(f(x), dtype=complex)
    d1 = np.asarray(df(x), dtype=complex)
    d2 = np.asarray(d2f(x), dtype=complex)
    near = np.abs(np.sin(x)) < eps
    cot_term = np.where(near, d2, d1 * np.cos(x) / np.where(near, 1.0, np.sin(x)))
    vals = d2 + 2 * k * cot_term - k * k * fx
    return vals if vals.ndim else complex(vals)


def apply_Lk_real(fx, dfx, d2fx, x: float, k: float, *, eps: float = EPS_SINGULAR):
    """f'' + 2k coth(x) f' + k^2 f on the real line (x != 0)."""
    k = check_multiplicity(k)
    if abs(x) < eps:
        raise ValueError("coth has a pole at x = 0")
    return d2fx + 2 * k * dfx / math.tanh(x) + k * k * fx


def hilbert_kernel(x, y, k: float, *, tol: float = 1e-11, m0: int = 64):
    """Off-diagonal kernel of the Hilbert transform:

        -i k 2^{-k} / (2 pi) (1 - e^{i(x-y)}) * integral of
        (1+u)(1-u^2)^{k-1} (1 - cos x cos y - u sin x sin y)^{-(k+1)} du.

    This is the r -> 1 limit of i sum_n sign(n_k) r^{|n|+k} gamma_n E_n(ix) E_n(-iy).
    """
    k = check_multiplicity(k)
    if k == 0:
        raise ValueError("the integral form of the kernel needs k > 0")
    x, y = np.broadcast_arrays(np.asarray(x, dtype=float), np.asarray(y, dtype=float))
    if _on_diagonal(x, y):
        raise ValueError("the Hilbert kernel is singular on x = +-y")
    # 1 - cos x cos y - u sin x sin y = A - s u; A - |s| = 2 min(sin^2((x-+y)/2)),
    # written that way to keep the gap accurate near the diagonal
    s = np.sin(x) * np.sin(y)
    A = np.abs(s) + 2 * np.minimum(np.sin((x - y) / 2) ** 2, np.sin((x + y) / 2) ** 2)
    integral = kernel_u_integral(A, s, k, tol=tol, m0=m0)
    vals = -1j * k * 2.0 ** (-k) / (2 * np.pi) * (1 - np.exp(1j * (x - y))) * integral
    return vals if vals.ndim else complex(vals)


def hilbert_via_kernel(f, x: float, k: float, support: tuple[float, float],
                       rule: QuadratureRule | None = None, m: int = 128):
    """H_k f(x) = integral of kernel(x, y) f(y) dm_k(y), for f vanishing off `support`.

    Integrates over the support only, with a Gauss-Legendre rule of m nodes, or
    with the support nodes of `rule` when a circle rule is given.
    """
    k = check_multiplicity(k)
    a, b = support
    if not -np.pi <= a < b <= np.pi:
        raise ValueError("support must be an interval inside [-pi, pi]")
    if a <= x <= b or a <= -x <= b:
        raise ValueError("+-x must lie outside the support of f")
    if rule is not None:
        if rule.kind != "circle" or rule.k != k:
            raise ValueError("need a circle rule with the same k")
        mask = (rule.nodes >= a) & (rule.nodes <= b)
        y, w = rule.nodes[mask], rule.weights[mask]
    else:
        v, wv = gauss_jacobi(m, 0.0)
        y = a + 0.5 * (b - a) * (v + 1)
        w = 0.5 * (b - a) * wv * np.abs(np.sin(y)) ** (2 * k)
    fy = np.asarray(f(y), dtype=complex) * np.ones_like(y)
    return complex(np.sum(w * hilbert_kernel(x, y, k) * fy))


def kernel_bound_sup(k: float, n: int = 48, min_sep: float = 0.05) -> float:
    """Max of |kernel(x, y)| ||x| - |y||^{2k+1} over a grid with ||x| - |y|| >= min_sep."""
    g = np.linspace(-np.pi, np.pi, n + 1)[:-1] + np.pi / n
    X, Y = np.meshgrid(g, g, indexing="ij")
    sep = np.abs(np.abs(X) - np.abs(Y))
    mask = sep >= min_sep
    vals = np.abs(hilbert_kernel(X[mask], Y[mask], k)) * sep[mask] ** (2 * k + 1)
    return float(vals.max())


def min_sin_sides(x: float, y: float) -> tuple[float, float]:
    lhs = min(math.sin(abs(x - y) / 2), math.sin(abs(x + y) / 2))
    rhs = math.sin(abs(abs(x) - abs(y)) / 2)
    return lhs, rhs


def min_sin_identity(x: float, y: float, tol: float = 1e-14) -> bool:
    """min(sin|x-y|/2, sin|x+y|/2) == sin(||x|-|y||/2) for x, y in [-pi, pi]."""
    if not (-np.pi <= x <= np.pi and -np.pi <= y <= np.pi):
        raise ValueError("x and y must lie in [-pi, pi]")
    lhs, rhs = min_sin_sides(x, y)
    return abs(lhs - rhs) <= tol


def _graded_panels(lo: float, hi: float, focus: float, h0: float):
    """Panels on [lo, hi] refined geometrically towards the endpoint `focus`."""
    length = hi - lo
    if length <= 0:
        return []
    edges = [0.0]
    h = min(h0, length)
    while edges[-1] + h < length:
        edges.append(edges[-1] + h)
        h *= 2
    edges.append(length)
    edges = np.array(edges)
    pts = lo + edges if focus == lo else hi - edges[::-1]
    return list(zip(pts[:-1], pts[1:]))


def hormander_experiment(y: float, yp: float, k: float, *, nodes_per_panel: int = 16) -> float:
    """Integral of |H(x, y) - H(x, y')| dm_k(x) over ||x| - |y|| > 2|y - y'|.

    Composite Gauss-Legendre on panels graded towards the excluded windows
    around +-|y|.
    """
    k = check_multiplicity(k)
    delta = abs(y - yp)
    if delta == 0:
        return 0.0
    ay = abs(y)
    cut = 2 * delta
    # allowed set in |x|: [0, ay - cut) and (ay + cut, pi]
    pieces = []
    if ay - cut > 0:
        left_hi = ay - cut
        pieces += _graded_panels(0.0, left_hi, left_hi, delta)
    if ay + cut < np.pi:
        right_lo = ay + cut
        pieces += _graded_panels(right_lo, np.pi, right_lo, delta)
    v, wv = gauss_jacobi(nodes_per_panel, 0.0)
    total = 0.0
    for lo, hi in pieces:
        xs = lo + 0.5 * (hi - lo) * (v + 1)
        ws = 0.5 * (hi - lo) * wv * np.sin(xs) ** (2 * k)
        # the region and the weight are even in x; integrate x and -x
        for sign in (1.0, -1.0):
            diff = hilbert_kernel(sign * xs, y, k) - hilbert_kernel(sign * xs, yp, k)
            total += float(np.sum(ws * np.abs(diff)))
    return total
