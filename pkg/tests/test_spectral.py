import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from opdam_a1.quadrature import build_circle_rule, inner_product
from opdam_a1.singular import apply_Tcal
from opdam_a1.special_fn import e_at_zero, e_eval, e_norm_sq, extended_eigenvalue
from opdam_a1.spectral import (
    SCHEMA,
    SpectralExpansion,
    analyze,
    cherednik_spectral,
    exp_fourier_support,
    fractional_spectral,
    from_normalized_basis,
    hilbert_spectral,
    laplacian_spectral,
    poisson_extend,
    support_violations,
    synthesize,
    to_normalized_basis,
)

ks = st.sampled_from([0.0, 0.3, 0.5, 1.0, 2.5])


@st.composite
def expansions(draw, max_N=8):
    k = draw(ks)
    N = draw(st.integers(0, max_N))
    re = draw(st.lists(st.floats(-5, 5), min_size=2 * N + 1, max_size=2 * N + 1))
    im = draw(st.lists(st.floats(-5, 5), min_size=2 * N + 1, max_size=2 * N + 1))
    return SpectralExpansion(k, N, np.array(re) + 1j * np.array(im))


def test_fourier_coefficients_oracle(oracles):
    for row in oracles["e_fourier_coefficients"]:
        got = exp_fourier_support(row["n"], row["k"])
        want = {int(j): v for j, v in row["coeffs"].items()}
        for j, c in got.items():
            assert abs(c - want.get(j, 0.0)) < 1e-12


def test_fourier_support_example():
    c = exp_fourier_support(-2, 1.0)
    assert c[-2] == pytest.approx(1.0)
    assert c[0] == pytest.approx(2 / 3)
    assert c[2] == pytest.approx(1 / 3)
    assert support_violations(-2, c) == []
    assert support_violations(2, {2: 1.0, -2: 0.5}) == [-2]
    with pytest.raises(ValueError):
        exp_fourier_support(3, 1.0, N=2)


@given(ks, st.integers(-10, 10))
def test_fourier_support_structure(k, n):
    c = exp_fourier_support(n, k)
    assert support_violations(n, c) == []
    assert abs(c[n] - 1) < 1e-10
    assert min(v.real for v in c.values()) >= -1e-10


@given(expansions())
def test_analyze_synthesize_roundtrip(e):
    back = analyze(e, e.k, e.N)
    np.testing.assert_allclose(back.coeffs, e.coeffs, atol=1e-10 * (1 + np.abs(e.coeffs).max()))


def test_analyze_examples():
    e = analyze(lambda x: np.exp(3j * x), 0.0, 4)
    assert e[3] == pytest.approx(1.0)
    assert np.sum(np.abs(e.coeffs)) == pytest.approx(1.0)
    c = analyze(lambda x: np.ones_like(x), 1.3, 3)
    assert c[0] == pytest.approx(1.0)
    with pytest.raises(ValueError):
        analyze(np.cos, 1.0, 10, rule=build_circle_rule(1.0, 8))
    with pytest.raises(ValueError):
        analyze(np.cos, 1.0, 2, rule=build_circle_rule(0.5, 16))


@given(expansions())
def test_parseval(e):
    rule = build_circle_rule(e.k, 2 * e.N + 4)
    direct = inner_product(e, e, rule).real
    assert e.norm_sq() == pytest.approx(direct, rel=1e-10, abs=1e-10)


@given(expansions())
def test_hilbert_square_is_minus_identity(e):
    np.testing.assert_array_equal(hilbert_spectral(hilbert_spectral(e)).coeffs, -e.coeffs)


@given(expansions())
def test_hilbert_is_isometry_off_zero_mode(e):
    h = hilbert_spectral(e)
    assert h.norm_sq() <= e.norm_sq() * (1 + 1e-12) + 1e-12


def test_hilbert_examples():
    assert hilbert_spectral(SpectralExpansion.unit(3, 1.0, 4))[3] == 1j
    assert hilbert_spectral(SpectralExpansion.unit(0, 1.0, 4))[0] == -1j
    assert hilbert_spectral(SpectralExpansion.unit(-2, 1.0, 4))[-2] == -1j


@given(expansions())
def test_hilbert_skew_adjoint(e):
    g = SpectralExpansion(e.k, e.N, np.roll(e.coeffs, 1).conj())
    rule = build_circle_rule(e.k, 2 * e.N + 4)
    lhs = inner_product(hilbert_spectral(e), g, rule)
    rhs = -inner_product(e, hilbert_spectral(g), rule)
    assert abs(lhs - rhs) <= 1e-9 * (1 + abs(lhs))


def test_fractional_multiplier():
    e = SpectralExpansion(0.5, 3, np.ones(7))
    got = fractional_spectral(e, 2.0).coeffs
    np.testing.assert_array_equal(got, [1 / 9, 1 / 4, 1, 0, 1, 1 / 4, 1 / 9])
    with pytest.raises(ValueError):
        fractional_spectral(e, 0.0)


@given(expansions(max_N=5))
def test_cherednik_spectral_matches_operator(e):
    x = np.array([-2.5, -0.7, 0.4, 1.9])
    lhs = synthesize(cherednik_spectral(e), x)
    h = 1e-6
    deriv = lambda t: (synthesize(e, t + h) - synthesize(e, t - h)) / (2 * h)  # noqa: E731
    rhs = apply_Tcal(lambda t: synthesize(e, t), deriv, x, e.k)
    scale = 1 + np.abs(e.coeffs).max() * (e.N + 3) ** 2
    assert np.max(np.abs(lhs - rhs)) <= 1e-6 * scale


def test_laplacian_is_square_of_cherednik():
    e = SpectralExpansion(1.2, 4, np.arange(9) + 1j)
    twice = cherednik_spectral(cherednik_spectral(e))
    np.testing.assert_allclose(laplacian_spectral(e).coeffs, twice.coeffs, rtol=1e-14)


def test_poisson_extend():
    e = SpectralExpansion(1.0, 2, np.ones(5))
    got = poisson_extend(e, 0.5).coeffs
    np.testing.assert_allclose(got, [0.5**3, 0.5**2, 0.5, 0.5**2, 0.5**3])
    e0 = SpectralExpansion(0.0, 1, np.ones(3))
    np.testing.assert_allclose(poisson_extend(e0, 0.0).coeffs, [0, 1, 0])
    with pytest.raises(ValueError):
        poisson_extend(e, 1.0)


def test_normalized_basis_roundtrip():
    e = SpectralExpansion(0.8, 3, np.arange(7) * (1 - 0.5j))
    c = to_normalized_basis(e)
    np.testing.assert_allclose(c, e.coeffs * [e_at_zero(n, 0.8) for n in range(-3, 4)])
    np.testing.assert_allclose(from_normalized_basis(0.8, 3, c).coeffs, e.coeffs)


@given(expansions())
def test_json_roundtrip(e):
    back = SpectralExpansion.from_json(e.to_json())
    np.testing.assert_array_equal(back.coeffs, e.coeffs)
    assert back.k == e.k and back.N == e.N


def test_json_schema():
    d = json.loads(SpectralExpansion.unit(1, 0.5, 1).to_json())
    assert d["schema"] == SCHEMA
    assert [e["n"] for e in d["entries"]] == [-1, 0, 1]
    with pytest.raises(ValueError):
        SpectralExpansion.from_dict({**d, "schema": "other"})
    with pytest.raises(ValueError):
        SpectralExpansion.from_dict({**d, "entries": [{"n": 5, "re": 1, "im": 0}]})


def test_expansion_validation_and_algebra():
    with pytest.raises(ValueError):
        SpectralExpansion(1.0, 2, np.ones(3))
    with pytest.raises(ValueError):
        SpectralExpansion(-1.0, 0, np.ones(1))
    a = SpectralExpansion.unit(1, 1.0, 2)
    b = SpectralExpansion.unit(-1, 1.0, 2)
    assert (a + b)[-1] == 1 and (a - b)[-1] == -1
    assert (2 * a)[1] == 2 and a[7] == 0
    with pytest.raises(ValueError):
        a + SpectralExpansion.unit(1, 0.5, 2)
    assert (a + 0 * b).norm_sq() == pytest.approx(e_norm_sq(1, 1.0))


def test_synthesize_matches_basis():
    e = SpectralExpansion.unit(-3, 0.4, 5)
    x = np.linspace(-3, 3, 7)
    np.testing.assert_allclose(synthesize(e, x), e_eval(-3, 0.4, x))
    assert isinstance(e(0.3), complex)


def test_cherednik_eigenvalues_on_units():
    for n in (-3, 0, 2):
        e = cherednik_spectral(SpectralExpansion.unit(n, 0.6, 3))
        assert e[n] == pytest.approx(1j * extended_eigenvalue(n, 0.6))
