import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opdam_a1 import product as pr
from opdam_a1.quadrature import build_circle_rule, lp_norm
from opdam_a1.special_fn import e_norm_sq, e_normalized, p_eval, p_at_zero
from opdam_a1.spectral import SpectralExpansion, analyze

angles = st.floats(-3.0, 3.0).filter(lambda v: abs(math.sin(v)) > 0.05)


def random_expansion(k, N, seed):
    rng = np.random.default_rng(seed)
    return SpectralExpansion(k, N, rng.normal(size=2 * N + 1) + 1j * rng.normal(size=2 * N + 1))


def test_w_mass_oracle(oracles):
    for row in oracles["w_mass"]:
        assert pr.w_mass_zform(row["x"], row["y"], row["k"]) == pytest.approx(row["value"], abs=1e-10)
        assert row["value"] == pytest.approx(1.0, abs=1e-12)


def test_w_properties():
    k = 1.0
    assert pr.w_eval(0.3, 0.4, 2.5, k) == 0.0
    v = pr.w_eval(0.9, -1.3, 1.0, k)
    assert v > 0
    assert pr.w_eval(-1.3, 0.9, 1.0, k) == pytest.approx(v)
    assert pr.w_eval(0.9, 1.0, -1.3, k) == pytest.approx(v)
    with pytest.raises(ValueError):
        pr.w_eval(0.3, 0.4, 0.5, 0.0)
    with pytest.raises(ValueError):
        pr.w_eval(0.0, 0.4, 0.5, 1.0)


@given(st.sampled_from([0.5, 1.0, 2.0]), angles, angles)
def test_w_normalization(k, x, y):
    assert pr.w_mass_zform(x, y, k) == pytest.approx(1.0, abs=1e-8)
    assert pr.product_integral(lambda z: np.ones_like(z), x, y, k) == pytest.approx(1.0, abs=1e-10)
    assert pr.product_integral(lambda z: np.ones_like(z), x, y, k, kernel="w") == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
def test_wcal_bound_on_grid(k):
    g = -np.pi + 2 * np.pi * (np.arange(16) + 0.5) / 16
    X, Y, Z = np.meshgrid(g, g, g, indexing="ij")
    W = pr.w_eval(X, Y, Z, k)
    Wc = pr.wcal_eval(X, Y, Z, k)
    assert np.all(np.abs(Wc) <= 16 * W + 1e-12)
    assert np.all(Wc[W == 0] == 0)


@given(st.sampled_from([0.5, 1.0, 2.0]), angles, angles, st.integers(-10, 10))
def test_product_formula(k, x, y, n):
    lhs = e_normalized(n, k, x) * e_normalized(n, k, y)
    rhs = pr.product_integral(lambda z: e_normalized(n, k, z), x, y, k)
    assert abs(lhs - rhs) <= 1e-7


@given(st.sampled_from([0.5, 1.0, 2.0]), angles, angles, st.integers(0, 10))
def test_symmetric_product_formula(k, x, y, n):
    pn = lambda t: p_eval(n, k, t) / p_at_zero(n, k)  # noqa: E731
    rhs = pr.product_integral(pn, x, y, k, kernel="w")
    assert abs(pn(x) * pn(y) - rhs) <= 1e-7


@pytest.mark.parametrize("x,y,z,expected", [
    ((1.0, 0.5, 1.2), None, None, (True, True)),
    ((0.2, 0.1, 2.8), None, None, (False, False)),
])
def test_arccos_range_examples(x, y, z, expected):
    assert pr.arccos_range_equiv(*x) == expected


def test_arccos_range_boundary_and_validation():
    assert pr.arccos_range_equiv(0.7, 0.4, 1.1) == (True, True)
    with pytest.raises(ValueError):
        pr.arccos_range_equiv(-0.1, 0.2, 0.3)


@given(st.floats(0, math.pi), st.floats(0, math.pi), st.floats(0, math.pi))
def test_arccos_range_predicates_agree(x, y, z):
    a, b = pr.arccos_range_equiv(x, y, z)
    # away from the boundary the two predicates agree
    margin = min(abs(math.cos(z) - math.cos(x + y)), abs(math.cos(z) - math.cos(x - y)))
    if margin > 1e-9:
        assert a == b


def test_dirac_cases():
    k = 1.0
    f = lambda t: np.exp(2j * t) + np.cos(t) + 0.3 * t  # noqa: E731
    x = 0.7
    assert pr.translate(f, x, 0.0, k) == pytest.approx(f(x))
    assert pr.translate(f, x, np.pi, k) == pytest.approx(f(x - np.pi))
    assert pr.translation_measure(x, -np.pi, k) == ("dirac", pytest.approx(x - np.pi))
    assert pr.translate(f, 0.0, 1.1, k) == pytest.approx(f(1.1))
    assert pr.translation_measure(x, 0.4, k) == ("density", None)
    assert pr.translation_measure(x, 0.4, 0.0)[0] == "dirac"


def test_classical_translation_is_shift():
    e = random_expansion(0.0, 4, 1)
    assert pr.translate(e, 0.9, 1.7, 0.0) == pytest.approx(e(2.6))
    assert pr.translate(e, 0.9, 1.7, 0.0, method="spectral") == pytest.approx(e(2.6))


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
def test_translation_properties(k):
    f = random_expansion(k, 5, 4)
    rule = build_circle_rule(k, 64)
    ys = rule.nodes
    x0 = -1.2
    tk = np.asarray(pr.translate(f, x0, ys, k))
    ts = np.asarray(pr.translate(f, x0, ys, k, method="spectral"))
    assert np.max(np.abs(tk - ts)) < 1e-8
    assert abs(pr.translate(f, 0.4, 2.2, k) - pr.translate(f, 2.2, 0.4, k)) < 1e-8
    assert math.sqrt(rule.integrate(np.abs(ts) ** 2)) <= math.sqrt(f.norm_sq()) + 1e-8
    assert abs(rule.integrate(ts) - rule.integrate(f(ys))) < 1e-8
    e2 = lambda t: e_normalized(2, k, t)  # noqa: E731
    assert pr.translate(e2, x0, 0.5, k) == pytest.approx(e2(x0) * e2(0.5), abs=1e-10)
    for p in (1, 2, np.inf):
        vals = np.abs(tk)
        norm = vals.max() if np.isinf(p) else rule.integrate(vals**p) ** (1 / p)
        assert norm <= 16 * lp_norm(f, rule, p) + 1e-8


def test_translate_rejects_bad_method():
    with pytest.raises(ValueError):
        pr.translate(np.cos, 0.1, 0.2, 1.0, method="fft")


@pytest.mark.parametrize("k", [0.5, 1.0])
def test_convolution_orthogonality(k):
    rule = build_circle_rule(k, 24)
    xs = np.array([-2.0, 0.6])
    e2 = lambda t: e_normalized(2, k, t)  # noqa: E731
    e3 = lambda t: e_normalized(3, k, t)  # noqa: E731
    assert np.max(np.abs(pr.convolve_quadrature(e2, e3, xs, k, rule))) < 1e-9
    norm2 = e_norm_sq(2, k) / pr.e_at_zero(2, k) ** 2
    np.testing.assert_allclose(pr.convolve_quadrature(e2, e2, xs, k, rule), norm2 * e2(xs), atol=1e-9)
    c = pr.convolve(e2, e2, k, N=4)
    np.testing.assert_allclose(c(xs), norm2 * e2(xs), atol=1e-9)


@pytest.mark.parametrize("k", [0.5, 1.0, 2.0])
def test_convolution_paths_and_inequalities(k):
    f = random_expansion(k, 4, 10)
    g = random_expansion(k, 4, 11)
    rule = build_circle_rule(k, 48)
    xs = np.array([-2.3, -0.9, 0.35, 1.4, 2.8])
    fg = pr.convolve_spectral(f, g)
    quad = pr.convolve_quadrature(f, g, xs, k, rule)
    np.testing.assert_allclose(quad, fg(xs), atol=1e-7)
    # |f * g| <= | |f| * |g| | pointwise
    ab = pr.convolve_quadrature(lambda t: np.abs(f(t)), lambda t: np.abs(g(t)), xs, k, rule)
    assert np.all(np.abs(quad) <= np.abs(ab) + 1e-8)
    big = build_circle_rule(k, 128)
    l1 = lambda h: lp_norm(h, big, 1)  # noqa: E731
    l2 = lambda h: lp_norm(h, big, 2)  # noqa: E731
    sup_fg = np.abs(fg(np.linspace(-np.pi, np.pi, 2001))).max()
    assert l1(fg) <= 16 * l1(f) * l1(g)
    assert sup_fg <= 16 * l2(f) * l2(g)  # Young (2, 2, inf)
    assert l2(fg) <= 16 * l1(f) * l2(g)  # Young (1, 2, 2)
    assert sup_fg <= 16 * l1(f) * np.abs(g(np.linspace(-np.pi, np.pi, 2001))).max()


def test_fractional_kernel_oracle(oracles):
    for row in oracles["fractional_kernel"]:
        got = pr.fractional_kernel(row["x"], row["k"], row["alpha"], variant=row["variant"])
        assert got == pytest.approx(row["value"], rel=1e-8, abs=1e-10)


def test_fractional_kernel_vs_classical_partial_sum():
    # k = 0, alpha = 0.5, x = 1: the Fejer mean of the classical series
    kern = pr.fractional_kernel(1.0, 0.0, 0.5)
    fejer = pr.fractional_partial_sum(1.0, 0.0, 0.5, 4000, fejer=True)
    partial = pr.fractional_partial_sum(1.0, 0.0, 0.5, 400)
    assert kern == pytest.approx(fejer, abs=1e-3)
    assert kern == pytest.approx(partial, abs=5e-2)


def test_fractional_large_alpha_two_terms():
    k, alpha, x = 1.0, 5.0, 0.8
    two = pr.fractional_partial_sum(x, k, alpha, 1)
    full = pr.fractional_kernel(x, k, alpha)
    assert full == pytest.approx(two, rel=0.05)


def test_fractional_validation():
    with pytest.raises(ValueError):
        pr.fractional_kernel(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        pr.fractional_kernel(1.0, 1.0, 1.0, variant="other")
    with pytest.raises(ValueError):
        pr.fractional_partial_sum(1.0, 1.0, -1.0, 10)


def test_w_constant():
    assert pr.w_constant(1.0) == pytest.approx(0.5)
    with pytest.raises(ValueError):
        pr.w_constant(0.0)


def test_analyze_then_translate_spectral():
    k = 1.0
    f = lambda t: np.cos(2 * t) + 1j * np.sin(t)  # noqa: E731
    a = pr.translate(f, 0.5, 1.3, k, method="spectral", N=6)
    b = pr.translate(f, 0.5, 1.3, k)
    assert a == pytest.approx(b, abs=1e-9)
    assert analyze(f, k, 6).N == 6
