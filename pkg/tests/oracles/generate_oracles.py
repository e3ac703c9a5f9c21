"""Regenerate tests/data/oracles.json from independent mpmath computations.

None of these computations import the package under test. Run from the repo root:

    python tests/oracles/generate_oracles.py
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 30
OUT = Path(__file__).resolve().parents[1] / "data" / "oracles.json"


def moment(d, k):
    """Integral of e^{idx} |sin x|^{2k} over [-pi, pi] (real by symmetry)."""
    if d % 2:
        return mp.mpf(0)
    l = abs(d) // 2
    # 2 pi (-1)^l Gamma(2k+1) / (4^k Gamma(k+l+1) Gamma(k-l+1)), with 1/Gamma at poles = 0
    return 2 * mp.pi * (-1) ** l * mp.gamma(2 * k + 1) / 4**k * mp.rgamma(k + l + 1) * mp.rgamma(k - l + 1)


def below(j, n):
    aj, an = abs(j), abs(n)
    if aj < an:
        return (an - aj) % 2 == 0
    return aj == an and n < j


def e_coefficients(n, k):
    """Fourier coefficients of E_n^k(ix) from the defining conditions:
    leading term e^{inx}, orthogonal to e^{ijx} for every j below n."""
    lower = [j for j in range(-abs(n), abs(n) + 1) if below(j, n)]
    if not lower:
        return {n: mp.mpf(1)}
    M = mp.matrix(len(lower), len(lower))
    rhs = mp.matrix(len(lower), 1)
    for a, j in enumerate(lower):
        for b, i in enumerate(lower):
            M[a, b] = moment(i - j, k)
        rhs[a] = -moment(n - j, k)
    sol = mp.lu_solve(M, rhs)
    coeffs = {i: sol[b] for b, i in enumerate(lower)}
    coeffs[n] = mp.mpf(1)
    return coeffs


def e_value(n, k, x):
    return mp.fsum(c * mp.expj(j * x) for j, c in e_coefficients(n, k).items())


def e_norm(n, k):
    c = e_coefficients(n, k)
    return mp.fsum(c[i] * c[j] * moment(i - j, k) for i in c for j in c)


def geg(n, k, t):
    """C_n^k(t) by its explicit finite sum."""
    return mp.fsum(
        (-1) ** m * mp.gamma(n - m + k) / (mp.gamma(k) * mp.factorial(m) * mp.factorial(n - 2 * m))
        * (2 * t) ** (n - 2 * m)
        for m in range(n // 2 + 1)
    )


def u_integral(A, B, k):
    return 2 ** (2 * k) * (A + B) ** (-(k + 1)) * mp.beta(k + 1, k) * mp.hyp2f1(k + 1, k + 1, 2 * k + 1, 2 * B / (A + B))


def poisson(r, x, y, k):
    A = 1 + r * r - 2 * r * mp.cos(x) * mp.cos(y)
    B = 2 * r * mp.sin(x) * mp.sin(y)
    return k / (2 * mp.pi) * (1 - r * r) * r**k * u_integral(A, B, k)


def hilbert_kernel(x, y, k):
    A = 1 - mp.cos(x) * mp.cos(y)
    B = mp.sin(x) * mp.sin(y)
    return -1j * k * 2 ** (-k) / (2 * mp.pi) * (1 - mp.expj(x - y)) * u_integral(A, B, k)


def total_mass(k):
    return 2 * mp.sqrt(mp.pi) * mp.gamma(k + 0.5) / mp.gamma(k + 1)


def fractional_kernel(x, k, alpha, power):
    def bracket(r):
        return (1 - r * r) / (1 - 2 * r * mp.cos(x) + r * r) ** power - 1

    val = mp.quad(lambda r: bracket(r) * mp.log(1 / r) ** (alpha - 1) / r, [0, 0.5, 1])
    return val / (total_mass(k) * mp.gamma(alpha))


def w_mass(x, y, k):
    """Integral of W_k(x, y, z) dm_k(z) by quadrature in z over the support."""
    ck = mp.gamma(k + 0.5) / (mp.gamma(k) * mp.sqrt(mp.pi))
    lo, hi = abs(abs(x) - abs(y)), min(abs(x) + abs(y), 2 * mp.pi - abs(x) - abs(y))

    def w(z):
        num = (mp.cos(z) - mp.cos(x + y)) * (mp.cos(x - y) - mp.cos(z))
        den = abs(mp.sin(x) * mp.sin(y) * mp.sin(z)) ** (2 * k - 1)
        return ck / 2 * num ** (k - 1) / den * abs(mp.sin(z)) ** (2 * k)

    return 2 * mp.quad(w, [lo, hi])


def c(v):
    v = mp.mpc(v)
    return [float(v.real), float(v.imag)]


def main():
    data = {}
    data["gegenbauer"] = [
        {"n": n, "k": k, "t": t, "value": float(geg(n, k, t))}
        for n, k, t in [(0, 1.5, 0.3), (2, 1.0, 1.0), (5, 0.7, 1.0), (7, 0.3, -0.45), (12, 2.5, 0.81)]
    ]
    data["gegenbauer_norm_sq"] = [
        {"n": n, "k": k,
         "value": float(mp.quad(lambda t: geg(n, k, t) ** 2 * (1 - t * t) ** (k - 0.5), [-1, 1]))}
        for n, k in [(0, 1.0), (1, 1.0), (0, 0.5), (3, 1.5), (4, 0.7)]
    ]
    data["p_hypergeometric"] = []
    for n, k, x in [(3, 1.0, float(mp.pi / 4)), (5, 0.5, 1.2), (15, 2.5, -2.0), (8, 0.3, 0.05)]:
        p0 = mp.gamma(k + 1) * mp.gamma(n + 2 * k) / (mp.gamma(2 * k + 1) * mp.gamma(n + k))
        val = p0 * mp.hyp2f1(n + 2 * k, -n, k + 0.5, mp.sin(x / 2) ** 2)
        data["p_hypergeometric"].append({"n": n, "k": k, "x": x, "value": float(val)})
    data["e_gram_schmidt"] = [
        {"n": n, "k": k, "x": x, "value": c(e_value(n, k, x))}
        for n, k, x in [(1, 2.3, 0.4), (2, 1.0, 0.7), (-2, 1.0, 0.7), (3, 0.5, -1.3), (-3, 0.3, 2.9),
                        (4, 0.8, 1.1), (-5, 2.5, 0.2), (6, 1.7, -0.6), (-1, 0.5, 1.0), (0, 1.3, 0.9)]
    ]
    data["e_norm_sq"] = [
        {"n": n, "k": k, "value": float(e_norm(n, k))}
        for n, k in [(0, 1.0), (1, 1.0), (2, 1.0), (-2, 0.5), (3, 2.5), (-4, 0.3), (5, 1.5)]
    ]
    data["e_fourier_coefficients"] = [
        {"n": n, "k": k, "coeffs": {str(j): float(v) for j, v in e_coefficients(n, k).items()}}
        for n, k in [(-2, 1.0), (3, 0.5), (-3, 2.5), (4, 1.0)]
    ]
    data["poisson"] = [
        {"r": r, "x": x, "y": y, "k": k, "value": float(poisson(r, x, y, k))}
        for r, x, y, k in [(0.5, 0.3, -1.1, 1.0), (0.3, 2.0, 0.4, 0.5), (0.8, -0.7, -0.5, 2.0),
                           (0.6, 1.0, 0.0, 1.5), (0.9, 0.2, 0.25, 0.7)]
    ]
    data["hilbert_kernel"] = [
        {"x": x, "y": y, "k": k, "value": c(hilbert_kernel(x, y, k))}
        for x, y, k in [(0.1, 1.5, 1.0), (-0.4, 1.2, 0.5), (2.7, -1.0, 2.0), (0.9, 0.3, 1.5)]
    ]
    data["fractional_kernel"] = []
    for x, k, alpha in [(1.0, 0.0, 0.5), (1.0, 0.0, 1.5), (2.0, 0.0, 0.8)]:
        val = mp.re(mp.polylog(alpha, mp.expj(x))) / mp.pi
        data["fractional_kernel"].append({"x": x, "k": k, "alpha": alpha, "variant": "poisson",
                                          "value": float(val)})
    for x, k, alpha in [(1.0, 0.5, 1.5), (1.0, 1.0, 0.5), (2.2, 2.0, 2.0)]:
        for variant, power in (("poisson", k + 1), ("unit", 1)):
            data["fractional_kernel"].append({"x": x, "k": k, "alpha": alpha, "variant": variant,
                                              "value": float(fractional_kernel(x, k, alpha, power))})
    data["w_mass"] = [
        {"x": x, "y": y, "k": k, "value": float(w_mass(x, y, k))}
        for x, y, k in [(0.9, -1.3, 1.0), (0.4, 2.0, 0.5), (-2.5, 1.7, 2.0)]
    ]
    data["total_mass"] = [{"k": k, "value": float(total_mass(k))} for k in (0.0, 0.3, 0.5, 1.0, 2.5)]
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
