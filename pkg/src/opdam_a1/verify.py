"""Named numerical verification suites behind the `verify` subcommand.

Each suite maps a multiplicity k to a list of Check records. A check with
passed=None is a report line: it carries a value but never fails the run.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import gammaln, hyp2f1, poch

from . import poisson as pk
from . import product as pr
from . import singular as sg
from . import spectral as sp
from ._parallel import ordered_map
from .functions import bump
from .quadrature import build_circle_rule, lp_norm
from .special_fn import (
    e_deriv,
    e_eval,
    e_norm_sq,
    e_normalized,
    e_table,
    extended_eigenvalue,
    p_derivs,
    p_eval,
    total_mass,
)


@dataclass
class Check:
    suite: str
    name: str
    k: float
    value: float
    threshold: float | None
    passed: bool | None
    detail: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _check(suite, name, k, value, threshold, detail=""):
    value = float(value)
    return Check(suite, name, k, value, threshold, bool(value <= threshold), detail)


def _report(suite, name, k, value, detail=""):
    return Check(suite, name, k, float(value), None, None, detail)


def _random_expansion(k, N, seed):
    rng = np.random.default_rng(seed)
    c = rng.normal(size=2 * N + 1) + 1j * rng.normal(size=2 * N + 1)
    return sp.SpectralExpansion(k, N, c / np.arange(1, 2 * N + 2))


def _sup_abs(fn, n_grid=4001):
    """Sup of |fn| on the circle: grid maximum refined by a bounded 1-D search."""
    x = np.linspace(-np.pi, np.pi, n_grid)
    vals = np.abs(fn(x))
    h = x[1] - x[0]
    best = vals.max()
    for i in np.argsort(vals)[-5:]:
        res = minimize_scalar(lambda t: -abs(fn(np.array([t]))[0]),
                              bounds=(x[i] - h, x[i] + h), method="bounded",
                              options={"xatol": 1e-12})
        best = max(best, -res.fun)
    return float(best)


def _q_oracle(m, j, t):
    """Normalized Gegenbauer q_m^j through the hypergeometric representation."""
    if m == 0:
        return 0.5 * np.ones_like(t)
    scale = np.exp(gammaln(j) - gammaln(m + j)) / 2 * poch(2 * j, m)
    return scale * hyp2f1(-m, m + 2 * j, j + 0.5, (1 - t) / 2)


def _e_oracle(n, k, x):
    if n == 0:
        return np.ones_like(x, dtype=complex)
    m = abs(n)
    c, s = np.cos(x), np.sin(x)
    qa = _q_oracle(m, k, c)
    qb = _q_oracle(m - 1, k + 1, c)
    if n > 0:
        return qa + 2j * s * qb
    return ((m + 2 * k) * qa - 2j * m * s * qb) / (m + k)


# ---------------------------------------------------------------------------
# suites


def suite_orthogonality(k):
    N = 12
    rule = build_circle_rule(k, 64)
    T = e_table(N, k, rule.nodes)
    G = (T * rule.weights) @ T.conj().T
    d = G.diagonal().real
    off = np.abs(G) / np.sqrt(np.outer(d, d))
    np.fill_diagonal(off, 0.0)
    norms = np.array([e_norm_sq(n, k) for n in range(-N, N + 1)])
    return [
        _check("orthogonality", "offdiag_normalized", k, off.max(), 1e-8),
        _check("orthogonality", "diag_vs_norm_formula", k, np.max(np.abs(d / norms - 1)), 1e-9),
    ]


def suite_identities(k):
    x = -np.pi + 2 * np.pi * (np.arange(64) + 0.5) / 64
    N = 21
    T = e_table(N, k, x)
    row = lambda n: T[n + N]  # noqa: E731
    err12 = max(
        np.max(np.abs(row(n + 1) - np.exp(1j * x) * np.conj(row(-n))) / np.maximum(1, np.abs(row(n + 1))))
        for n in range(-20, 21)
    )
    err45 = max(
        np.max(np.abs(row(-n) - np.conj(row(n)) - k / (n + k) * row(n)) / np.maximum(1, np.abs(row(-n))))
        for n in range(1, 21)
    )
    out = [
        _check("identities", "shift_identity", k, err12, 1e-10),
        _check("identities", "reflection_identity", k, err45, 1e-10),
    ]
    if k > 0:
        err = max(
            np.max(np.abs(row(n) - _e_oracle(n, k, x)) / np.maximum(1, np.abs(row(n))))
            for n in range(-15, 16)
        )
    else:
        err = max(np.max(np.abs(row(n) - np.exp(1j * n * x))) for n in range(-15, 16))
    out.append(_check("identities", "explicit_vs_2f1", k, err, 1e-10))
    return out


def suite_eigen(k):
    x = np.linspace(-3.0, 3.0, 24)  # stays clear of 0 and +-pi
    err_t = 0.0
    for n in range(-16, 17):
        lhs = sg.apply_Tcal(lambda t: e_eval(n, k, t), lambda t: e_deriv(n, k, t), x, k)
        en = e_eval(n, k, x)
        rhs = 1j * extended_eigenvalue(n, k) * en
        err_t = max(err_t, np.max(np.abs(lhs - rhs) / (1 + np.abs(en))))
    err_d = 0.0
    for n in range(0, 17):
        def d1(t, n=n):
            return 1j * p_derivs(n, k, 1j * t)[1]

        def d2(t, n=n):
            return -p_derivs(n, k, 1j * t)[2]

        lhs = sg.apply_Delta_even(lambda t: p_eval(n, k, t), d1, d2, x, k)
        pn = p_eval(n, k, x)
        lam = (n + k) ** 2
        err_d = max(err_d, np.max(np.abs(lhs + lam * pn) / (max(lam, 1) * (1 + np.abs(pn)))))
    return [
        _check("eigen", "cherednik_circle", k, err_t, 1e-8),
        _check("eigen", "laplacian_even", k, err_d, 1e-8),
    ]


def suite_basis_support(k):
    worst_lead = worst_neg = 0.0
    violations = 0
    for n in range(-8, 9):
        coeffs = sp.exp_fourier_support(n, k)
        violations += len(sp.support_violations(n, coeffs))
        worst_lead = max(worst_lead, abs(coeffs[n] - 1))
        worst_neg = max(worst_neg, max(max(-c.real, abs(c.imag)) for c in coeffs.values()))
    return [
        _check("basis-support", "support_violations", k, violations, 0),
        _check("basis-support", "leading_coefficient", k, worst_lead, 1e-10),
        _check("basis-support", "nonnegative_coefficients", k, worst_neg, 1e-10),
    ]


def suite_poisson_kernel(k):
    g = -np.pi + 2 * np.pi * (np.arange(16) + 0.5) / 16
    X, Y = np.meshgrid(g, g, indexing="ij")
    out = []
    for r in (0.3, 0.6, 0.8):
        series = pk.poisson_series(r, X, Y, k)
        if k > 0:
            other = pk.poisson_integral_form(r, X, Y, k)
            out.append(_check("poisson-kernel", f"series_vs_integral_r{r}", k,
                              np.max(np.abs(series - other)), 1e-8))
        else:
            other = pk.poisson_closed_form(r, X, Y)
            out.append(_check("poisson-kernel", f"series_vs_closed_r{r}", k,
                              np.max(np.abs(series - other)), 1e-12))
        out.append(_check("poisson-kernel", f"positivity_r{r}", k, max(0.0, -series.min()), 0.0))
        out.append(_check("poisson-kernel", f"symmetry_r{r}", k,
                          np.max(np.abs(series - series.T)), 1e-12))
    return out


def suite_poisson_mass(k):
    rule = build_circle_rule(k, 256)
    out = []
    for r in (0.3, 0.6, 0.8):
        mass = pk.poisson_mass(r, k, rule)
        target = r**k
        out.append(_check("poisson-mass", f"mass_equals_r^k_r{r}", k, abs(mass - target), 1e-8))
        stated = pk.stated_mass_constant(r, k)
        out.append(_report("poisson-mass", f"stated_constant_r{r}", k, stated,
                           f"computed={mass!r} r^k={target!r} stated={stated!r} "
                           f"stated/computed={stated / mass!r}"))
    return out


def suite_semigroup(k):
    f = _random_expansion(k, 6, seed=7)
    rule = build_circle_rule(k, 256)
    out = []
    base = {p: lp_norm(f, rule, p) for p in (1, 2)}
    base[np.inf] = _sup_abs(f)
    for r in (0.3, 0.6, 0.9):
        fr = sp.poisson_extend(f, r)
        for p in (1, 2, np.inf):
            val = _sup_abs(fr) if np.isinf(p) else lp_norm(fr, rule, p)
            out.append(_check("semigroup", f"contraction_p{p}_r{r}", k,
                              max(0.0, val - base[p]), 1e-8))
    prev = np.inf
    monotone = 0.0
    for r in (0.9, 0.99, 0.999, 0.9999):
        dist = np.sqrt((sp.poisson_extend(f, r) - f).norm_sq())
        bound = (1 - r ** (f.N + k)) * np.sqrt(f.norm_sq())
        out.append(_check("semigroup", f"l2_convergence_r{r}", k, max(0.0, dist - bound), 1e-8))
        monotone = max(monotone, dist - prev)
        prev = dist
    out.append(_check("semigroup", "l2_distance_decreasing", k, max(0.0, monotone), 1e-8))
    return out


def suite_product(k):
    if k == 0:
        f = _random_expansion(0.0, 5, seed=3)
        x, y = 0.8, -1.9
        err = abs(pr.translate(f, x, y, 0.0, method="kernel") - f(x + y))
        return [_check("product", "classical_shift", k, err, 1e-12)]
    rng = np.random.default_rng(11)
    out = []
    pts = rng.uniform(-np.pi, np.pi, size=(20, 2))
    err = max(abs(pr.w_mass_zform(a, b, k) - 1) for a, b in pts)
    out.append(_check("product", "w_normalization", k, err, 1e-8))
    err = 0.0
    for a, b in pts[:6]:
        for n in range(-10, 11):
            lhs = e_normalized(n, k, a) * e_normalized(n, k, b)
            rhs = pr.product_integral(lambda z, n=n: e_normalized(n, k, z), a, b, k)
            err = max(err, abs(lhs - rhs))
    out.append(_check("product", "product_formula", k, err, 1e-7))
    g = -np.pi + 2 * np.pi * (np.arange(16) + 0.5) / 16
    X, Y, Z = np.meshgrid(g, g, g, indexing="ij")
    W = pr.w_eval(X, Y, Z, k)
    Wc = pr.wcal_eval(X, Y, Z, k)
    out.append(_check("product", "wcal_bound_16", k, max(0.0, np.max(np.abs(Wc) - 16 * W)), 0.0))
    out.append(_report("product", "wcal_over_w_max", k,
                       np.max(np.abs(Wc)[W > 0] / W[W > 0])))

    f = _random_expansion(k, 5, seed=5)
    rule = build_circle_rule(k, 64)
    x0 = 0.7
    ys = rule.nodes
    tk = np.asarray(pr.translate(f, x0, ys, k, method="kernel"))
    ts = np.asarray(pr.translate(f, x0, ys, k, method="spectral"))
    out.append(_check("product", "translation_kernel_vs_spectral", k, np.max(np.abs(tk - ts)), 1e-8))
    e3 = lambda z: e_normalized(3, k, z)  # noqa: E731
    err = np.max(np.abs(np.asarray(pr.translate(e3, x0, ys[:16], k)) - e3(x0) * e3(ys[:16])))
    out.append(_check("product", "translation_eigen", k, err, 1e-8))
    err = abs(pr.translate(f, 0.4, -1.1, k) - pr.translate(f, -1.1, 0.4, k))
    out.append(_check("product", "translation_symmetric", k, err, 1e-8))
    norm_tx = np.sqrt(rule.integrate(np.abs(tk) ** 2).real)
    out.append(_check("product", "translation_l2_contraction", k,
                      max(0.0, norm_tx - np.sqrt(f.norm_sq())), 1e-8))
    out.append(_check("product", "translation_mass", k,
                      abs(rule.integrate(tk) - rule.integrate(f(ys))), 1e-8))

    small = build_circle_rule(k, 24)
    xs = np.array([-2.2, 0.5, 1.3])
    err = 0.0
    for n, m in ((2, 3), (2, 2), (-1, 1), (-2, -2)):
        fn = lambda z, n=n: e_normalized(n, k, z)  # noqa: E731
        gm = lambda z, m=m: e_normalized(m, k, z)  # noqa: E731
        got = pr.convolve_quadrature(fn, gm, xs, k, small)
        want = 0.0 if n != m else e_norm_sq(n, k) / pr.e_at_zero(n, k) ** 2 * fn(xs)
        err = max(err, np.max(np.abs(got - want)))
    out.append(_check("product", "convolution_orthogonality", k, err, 1e-9))
    return out


def suite_fractional(k):
    out = []
    e = sp.SpectralExpansion(k, 4, np.ones(9))
    got = sp.fractional_spectral(e, 1.5).coeffs
    want = np.array([0.0 if n == 0 else abs(n) ** -1.5 for n in range(-4, 5)])
    out.append(_check("fractional", "multiplier_exact", k, np.max(np.abs(got - want)), 0.0))
    x = 1.0
    for alpha in (0.5, 1.5):
        partial = pr.fractional_partial_sum(x, k, alpha, 400)
        fejer = pr.fractional_partial_sum(x, k, alpha, 1000, fejer=True)
        for variant in ("poisson", "unit"):
            kern = pr.fractional_kernel(x, k, alpha, variant=variant)
            out.append(_report("fractional", f"kernel_{variant}_alpha{alpha}", k, abs(kern - fejer),
                               f"kernel={kern!r} partial_sum_N400={partial!r} "
                               f"fejer_mean_N1000={fejer!r}"))
    return out


def suite_hilbert(k):
    out = []
    f = _random_expansion(k, 10, seed=9)
    hf = sp.hilbert_spectral(f)
    out.append(_check("hilbert", "l2_bound", k, max(0.0, hf.norm_sq() - f.norm_sq()), 1e-10))
    out.append(_check("hilbert", "square_is_minus_identity", k,
                      np.max(np.abs(sp.hilbert_spectral(hf).coeffs + f.coeffs)), 1e-15))
    if k == 0:
        for n in (1, 3, 5):
            c = sp.analyze(lambda t, n=n: np.cos(n * t), 0.0, 8)
            x = np.linspace(-3, 3, 13)
            err = np.max(np.abs(sp.hilbert_spectral(c)(x) + np.sin(n * x)))
            out.append(_check("hilbert", f"classical_cos{n}", k, err, 1e-10))
        return out
    a, b = np.pi / 3, 2 * np.pi / 3
    fb = lambda t: bump(t, a, b)  # noqa: E731
    spec = sp.hilbert_spectral(sp.analyze(fb, k, 512))
    err = max(abs(sg.hilbert_via_kernel(fb, x, k, (a, b), m=400) - spec(x)) for x in (0.1, -0.4, 2.7))
    out.append(_check("hilbert", "kernel_vs_spectral", k, err, 1e-6))
    sup = sg.kernel_bound_sup(k)
    out.append(_check("hilbert", "kernel_bound_finite", k, 0.0 if np.isfinite(sup) else 1.0, 0.0))
    out.append(_report("hilbert", "kernel_bound_sup", k, sup))
    vals = [sg.hormander_experiment(1.0, 1.0 + 0.2 / 2**j, k) for j in range(5)]
    out.append(_report("hilbert", "hormander_spread", k, max(vals) / min(vals),
                       "values=" + ",".join(repr(v) for v in vals)))
    return out


def suite_classical(k):
    """Classical-limit checks; always run at k = 0."""
    x = np.linspace(-np.pi, np.pi, 33)
    out = [_check("classical", "basis_is_exponential", 0.0,
                  max(np.max(np.abs(e_eval(n, 0.0, x) - np.exp(1j * n * x))) for n in range(-12, 13)),
                  1e-10)]
    X, Y = np.meshgrid(x, x)
    err = max(np.max(np.abs(pk.poisson_series(r, X, Y, 0.0) - pk.poisson_closed_form(r, X, Y)))
              for r in (0.3, 0.6, 0.8))
    out.append(_check("classical", "poisson_closed_form", 0.0, err, 1e-10))
    err = 0.0
    for n in range(1, 6):
        c = sp.analyze(lambda t, n=n: np.cos(n * t), 0.0, 8)
        err = max(err, np.max(np.abs(sp.hilbert_spectral(c)(x) + np.sin(n * x))))
    out.append(_check("classical", "hilbert_cos_to_minus_sin", 0.0, err, 1e-10))
    err = max(np.max(np.abs(sg.apply_Tcal(lambda t, n=n: np.exp(1j * n * t),
                                          lambda t, n=n: 1j * n * np.exp(1j * n * t), x, 0.0)
                            - 1j * n * np.exp(1j * n * x))) for n in range(-5, 6))
    out.append(_check("classical", "cherednik_is_derivative", 0.0, err, 1e-10))
    f = _random_expansion(0.0, 4, seed=1)
    err = abs(pr.translate(f, 0.9, 1.7, 0.0) - f(2.6))
    out.append(_check("classical", "translation_is_shift", 0.0, err, 1e-10))
    err = abs(total_mass(0.0) - 2 * np.pi)
    out.append(_check("classical", "lebesgue_mass", 0.0, err, 1e-12))
    return out


SUITES = {
    "orthogonality": (suite_orthogonality, (0.0, 0.3, 0.5, 1.0, 2.5)),
    "identities": (suite_identities, (0.0, 0.3, 0.5, 1.0, 2.5)),
    "eigen": (suite_eigen, (0.3, 1.0, 2.5)),
    "basis-support": (suite_basis_support, (0.3, 1.0, 2.5)),
    "poisson-kernel": (suite_poisson_kernel, (0.0, 0.5, 1.0, 2.0)),
    "poisson-mass": (suite_poisson_mass, (0.5, 1.0, 2.0)),
    "semigroup": (suite_semigroup, (0.0, 0.5, 1.0)),
    "product": (suite_product, (0.5, 1.0, 2.0)),
    "fractional": (suite_fractional, (0.0, 0.5, 1.0)),
    "hilbert": (suite_hilbert, (0.0, 0.5, 1.0, 2.0)),
    "classical": (suite_classical, (0.0,)),
}


def run_suites(names=None, k: float | None = None) -> list[Check]:
    """Run the named suites (all by default) at their default k values, or at k only."""
    names = list(SUITES) if not names else list(names)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    tasks = []
    for name in names:
        fn, ks = SUITES[name]
        for kk in ((k,) if k is not None and name != "classical" else ks):
            tasks.append((fn, float(kk)))
    results = ordered_map(lambda t: t[0](t[1]), tasks)
    return [c for batch in results for c in batch]
