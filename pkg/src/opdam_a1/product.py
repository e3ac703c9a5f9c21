"""Product-formula kernels, generalized translation, convolution and the
fractional-integral kernel.

Kernel-side integrals use the substitution cos z = cos x cos y + u sin x sin y,
which turns W_k(x, y, z) dm_k(z) on the z-circle into
(c_k / 2) (1 - u^2)^{k-1} du on [-1, 1] for each sign of z, with
c_k = Gamma(k + 1/2) / (Gamma(k) sqrt(pi)).
"""

from __future__ import annotations

import math

import numpy as np
from scipy import integrate
from scipy.special import gammaln

from .quadrature import QuadratureRule, gauss_jacobi
from .special_fn import check_multiplicity, e_at_zero, e_table, total_mass
from .spectral import SpectralExpansion, analyze, norms_sq

__all__ = [
    "DIRAC_TOL",
    "w_constant",
    "in_support",
    "w_eval",
    "wcal_eval",
    "arccos_range_equiv",
    "product_integral",
    "w_mass_zform",
    "translation_measure",
    "translate_spectral",
    "translate_kernel",
    "translate",
    "convolve_spectral",
    "convolve_quadrature",
    "convolve",
    "fractional_kernel",
    "fractional_partial_sum",
]

DIRAC_TOL = 1e-14
DEFAULT_INNER_ORDER = 64


def w_constant(k: float) -> float:
    """c_k = Gamma(k+1/2) / (Gamma(k) sqrt(pi))."""
    if k <= 0:
        raise ValueError("the density branch needs k > 0")
    return math.exp(gammaln(k + 0.5) - gammaln(k) - 0.5 * math.log(math.pi))


def _wrap(v):
    return np.mod(np.asarray(v) + np.pi, 2 * np.pi) - np.pi


def in_support(x, y, z):
    """cos(|x|+|y|) < cos z < cos(|x|-|y|)."""
    ax, ay = np.abs(x), np.abs(y)
    cz = np.cos(z)
    return (np.cos(ax + ay) < cz) & (cz < np.cos(ax - ay))


def w_eval(x, y, z, k: float):
    """Symmetric product kernel W_k(x, y, z); zero off its support."""
    k = check_multiplicity(k)
    if k == 0:
        raise ValueError("W_k degenerates to a Dirac measure at k = 0")
    x, y, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, z)))
    denom = np.abs(np.sin(x) * np.sin(y) * np.sin(z))
    if np.any(denom == 0):
        raise ValueError("density branch needs sin x sin y sin z != 0")
    inside = in_support(x, y, z)
    cz = np.cos(z)
    prod = np.where(inside, (cz - np.cos(x + y)) * (np.cos(x - y) - cz), 1.0)
    vals = np.where(inside, 0.5 * w_constant(k) * prod ** (k - 1) / denom ** (2 * k - 1), 0.0)
    return vals if vals.ndim else float(vals)


def wcal_eval(x, y, z, k: float):
    """Non-symmetric product kernel: W_k times
    4 e^{i(x+y-z)/2} sin((x+y+z)/2) sin((-x+y+z)/2) sin((x-y+z)/2) / (sin x sin y sin z)."""
    x, y, z = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (x, y, z)))
    w = np.asarray(w_eval(x, y, z, k))
    factor = (
        4
        * np.exp(0.5j * (x + y - z))
        * np.sin((x + y + z) / 2)
        * np.sin((-x + y + z) / 2)
        * np.sin((x - y + z) / 2)
        / (np.sin(x) * np.sin(y) * np.sin(z))
    )
    vals = factor * w
    return vals if vals.ndim else complex(vals)


def arccos_range_equiv(x: float, y: float, z: float) -> tuple[bool, bool]:
    """(cos(x+y) <= cos z <= cos(x-y), cos(z+y) <= cos x <= cos(z-y)) for x, y, z in [0, pi].

    The two predicates always agree; endpoints are compared with a 1e-12 slack.
    """
    for v in (x, y, z):
        if not 0 <= v <= np.pi:
            raise ValueError("arguments must lie in [0, pi]")
    eps = 1e-12
    first = math.cos(x + y) - eps <= math.cos(z) <= math.cos(x - y) + eps
    second = math.cos(z + y) - eps <= math.cos(x) <= math.cos(z - y) + eps
    return first, second


def _u_nodes(x, y, m: int, k: float):
    """z_u = arccos(cos x cos y + u sin x sin y) on the Gauss-Jacobi nodes, with sin z_u."""
    u, w = gauss_jacobi(m, k - 1)
    x = np.asarray(x, dtype=float)[..., None]
    y = np.asarray(y, dtype=float)[..., None]
    s = np.sin(x) * np.sin(y)
    # 1 - t and 1 + t written without cancellation
    one_minus = 2 * np.sin((x - y) / 2) ** 2 + s * (1 - u)
    one_plus = 2 * np.cos((x + y) / 2) ** 2 + s * (1 + u)
    t = np.clip(np.cos(x) * np.cos(y) + u * s, -1.0, 1.0)
    z = np.arccos(t)
    sin_z = np.sqrt(np.clip(one_minus * one_plus, 0.0, None))
    return u, w, s, z, sin_z


def product_integral(F, x, y, k: float, *, kernel: str = "wcal", m: int = DEFAULT_INNER_ORDER):
    """Integral over z of F(z) against the product kernel at (x, y), density branch.

    kernel "w" uses W_k(x, y, z) dm_k(z); "wcal" uses the non-symmetric kernel.
    `x` is a scalar, `y` may be an array; F is evaluated on arrays of angles.
    Exact for trigonometric polynomials F of degree <= 2m - 3.
    """
    k = check_multiplicity(k)
    if kernel not in ("w", "wcal"):
        raise ValueError("kernel must be 'w' or 'wcal'")
    u, w, s, z, sin_z = _u_nodes(x, y, m, k)
    if np.any(np.abs(s) < DIRAC_TOL):
        raise ValueError("density branch needs sin x sin y != 0")
    fp = np.asarray(F(z), dtype=complex)
    fm = np.asarray(F(-z), dtype=complex)
    if kernel == "w":
        integrand = fp + fm
    else:
        # kernel ratio at +-z: (1-u)(1 +- (sin(x+y) + i s(1+u)) / sin z)
        xs = np.asarray(x, dtype=float)[..., None]
        ys = np.asarray(y, dtype=float)[..., None]
        odd = (np.sin(xs + ys) + 1j * s * (1 + u)) / sin_z
        integrand = (1 - u) * ((fp + fm) + odd * (fp - fm))
    vals = 0.5 * w_constant(k) * (integrand @ w)
    return vals if vals.ndim else complex(vals)


def _z_half(lo: float, c: float, hi: float, k: float, m: int) -> float:
    """Integral over [lo, c] of ((cos lo - cos z)(cos z - cos hi))^{k-1} sin z dz, c < hi.

    With s = z^2 - lo^2 the endpoint factor (z - lo)^{k-1}(z + lo)^{k-1} z dz
    becomes s^{k-1} ds / 2, so the rule stays accurate as lo -> 0.
    """
    S = c * c - lo * lo
    v, w = gauss_jacobi(m, 0.0, k - 1)
    sv = 0.5 * S * (1 + v)
    z = np.sqrt(lo * lo + sv)
    sinc = lambda t: np.sinc(t / np.pi)  # noqa: E731
    near = 0.5 * sinc((z + lo) / 2) * sinc((z - lo) / 2)  # (cos lo - cos z) / (z^2 - lo^2)
    far = np.cos(z) - np.cos(hi)
    smooth = (near * far) ** (k - 1) * sinc(z) / 2
    return float((0.5 * S) ** k * (w @ smooth))


def w_mass_zform(x: float, y: float, k: float, m: int = 64) -> float:
    """Integral of W_k(x, y, z) dm_k(z) computed on the z-circle.

    Independent of the u-substitution: the support [a, b] is split at its
    midpoint and each half is integrated in s = (distance-to-end variable)^2,
    which absorbs the endpoint singularity also when a -> 0 or b -> pi.
    """
    k = check_multiplicity(k)
    ax, ay = abs(x), abs(y)
    a = abs(ax - ay)
    b = min(ax + ay, 2 * np.pi - ax - ay)
    if b <= a:
        return 0.0
    mid = 0.5 * (a + b)
    # right half reflected by z -> pi - z
    total = _z_half(a, mid, b, k, m) + _z_half(np.pi - b, np.pi - mid, np.pi - a, k, m)
    denom = abs(math.sin(x) * math.sin(y)) ** (2 * k - 1)
    return float(2 * 0.5 * w_constant(k) * total / denom)


def translation_measure(x: float, y: float, k: float):
    """('dirac', location) or ('density', None) per the product formula's cases."""
    k = check_multiplicity(k)
    if k == 0:
        return "dirac", float(_wrap(x + y))
    if abs(math.sin(y)) < DIRAC_TOL:
        return "dirac", float(_wrap(x if math.cos(y) > 0 else x + np.pi))
    if abs(math.sin(x)) < DIRAC_TOL:
        return "dirac", float(_wrap(y if math.cos(x) > 0 else y + np.pi))
    return "density", None


def translate_spectral(expansion: SpectralExpansion, x: float, y):
    """tau_x f(y) = sum a_n E_n(ix) E_n(iy) / E_n(0)."""
    k, N = expansion.k, expansion.N
    y = np.asarray(y, dtype=float)
    ex = e_table(N, k, np.asarray(x, dtype=float))
    ey = e_table(N, k, y)
    scale = np.array([1.0 / e_at_zero(n, k) for n in range(-N, N + 1)])
    coef = expansion.coeffs * ex * scale
    vals = np.tensordot(coef, ey, axes=(0, 0))
    return vals if vals.ndim else complex(vals)


def translate_kernel(f, x: float, y, k: float, m: int = DEFAULT_INNER_ORDER):
    """tau_x f(y) as the integral of f against the translation measure."""
    k = check_multiplicity(k)
    y = np.asarray(y, dtype=float)
    flat = np.atleast_1d(y).ravel()
    out = np.empty(flat.shape, dtype=complex)
    density = []
    for i, yi in enumerate(flat):
        kind, loc = translation_measure(x, yi, k)
        if kind == "dirac":
            out[i] = complex(np.asarray(f(np.array([loc])))[0])
        else:
            density.append(i)
    if density:
        idx = np.array(density)
        out[idx] = product_integral(f, x, flat[idx], k, kernel="wcal", m=m)
    out = out.reshape(y.shape)
    return out if out.ndim else complex(out)


def translate(f, x: float, y, k: float, *, method: str = "kernel", N: int = 64,
              m: int = DEFAULT_INNER_ORDER):
    """Generalized translation; `f` is a callable or a SpectralExpansion."""
    if method == "spectral":
        exp = f if isinstance(f, SpectralExpansion) else analyze(f, k, N)
        return translate_spectral(exp, x, y)
    if method == "kernel":
        fn = f if callable(f) else f.__call__
        return translate_kernel(fn, x, y, k, m)
    raise ValueError("method must be 'kernel' or 'spectral'")


def convolve_spectral(f: SpectralExpansion, g: SpectralExpansion) -> SpectralExpansion:
    """f * g with c_n = a_n b_n ||E_n||^2 / E_n(0) in the E_n basis."""
    f._check_compatible(g)
    k, N = f.k, f.N
    scale = norms_sq(N, k) / np.array([e_at_zero(n, k) for n in range(-N, N + 1)])
    return f.with_coeffs(f.coeffs * g.coeffs * scale)


def convolve_quadrature(f, g, x, k: float, rule: QuadratureRule,
                        m: int = DEFAULT_INNER_ORDER):
    """f * g(x) = integral of tau_x f(-y) g(y) dm_k(y) evaluated pointwise."""
    if rule.kind != "circle" or rule.k != k:
        raise ValueError("need a circle rule with the same k")
    y = rule.nodes
    gy = np.asarray(g(y), dtype=complex) * np.ones_like(y)
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.array([
        rule.integrate(np.asarray(translate_kernel(f, xi, -y, k, m)) * gy) for xi in xs
    ])
    out = out.reshape(np.shape(x))
    return out if out.ndim else complex(out)


def convolve(f, g, k: float, N: int = 64) -> SpectralExpansion:
    """Spectral convolution of two callables or expansions."""
    fe = f if isinstance(f, SpectralExpansion) else analyze(f, k, N)
    ge = g if isinstance(g, SpectralExpansion) else analyze(g, k, N)
    return convolve_spectral(fe, ge)


def fractional_partial_sum(x, k: float, alpha: float, N: int, *, fejer: bool = False):
    """sum over 0 < |n| <= N of |n|^{-alpha} rho_n (normalized E_n)(ix),
    rho_n = ||E_n / E_n(0)||^{-2}.

    The terms grow like |n|^{k - alpha}, so for alpha <= k the plain partial sums
    diverge. With fejer=True the n-th term is weighted by 1 - |n|/(N+1), which is
    the mean of the partial sums of order 0..N.
    """
    k = check_multiplicity(k)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    x = np.asarray(x, dtype=float)
    table = e_table(N, k, x)
    n = np.arange(-N, N + 1)
    coef = np.array([
        0.0 if j == 0 else abs(j) ** (-alpha) * e_at_zero(j, k) for j in n
    ]) / norms_sq(N, k)
    if fejer:
        coef = coef * (1 - np.abs(n) / (N + 1))
    vals = np.tensordot(coef, table, axes=(0, 0)).real
    return vals if vals.ndim else float(vals)


def fractional_kernel(x: float, k: float, alpha: float, *, variant: str = "poisson",
                      tol: float = 1e-12) -> float:
    """Kernel of the fractional integral by the r-integral over (0, 1).

    variant "poisson" integrates r^{-k} P_k(r, x, 0) - gamma_0, whose bracket is
    (1-r^2)/(1-2r cos x+r^2)^{k+1} - 1; variant "unit" drops the k+1 exponent.
    Substituting r = e^{-t} gives an integral of h(t) t^{alpha-1} dt on (0, inf).
    """
    k = check_multiplicity(k)
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if variant not in ("poisson", "unit"):
        raise ValueError("variant must be 'poisson' or 'unit'")
    power = k + 1 if variant == "poisson" else 1.0
    cx = math.cos(x)

    def bracket(t):
        r = math.exp(-t)
        return (1 - r * r) / (1 - 2 * r * cx + r * r) ** power - 1

    head, _ = integrate.quad(bracket, 0.0, 1.0, weight="alg", wvar=(alpha - 1, 0.0),
                             epsabs=tol, epsrel=tol, limit=200)
    tail, _ = integrate.quad(lambda t: bracket(t) * t ** (alpha - 1), 1.0, np.inf,
                             epsabs=tol, epsrel=tol, limit=200)
    gamma0 = 1.0 / total_mass(k)
    return gamma0 * (head + tail) / math.gamma(alpha)
