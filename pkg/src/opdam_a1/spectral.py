"""Expansions in the basis E_n^k(ix) and the diagonal operators acting on them."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .quadrature import QuadratureRule, build_circle_rule
from .special_fn import (
    check_multiplicity,
    e_at_zero,
    e_norm_sq,
    e_table,
    extended_eigenvalue,
    triangleleft,
)

__all__ = [
    "SCHEMA",
    "HILBERT_SIGN_AT_ZERO",
    "DEFAULT_TRUNCATION",
    "SpectralExpansion",
    "norms_sq",
    "analyze",
    "synthesize",
    "poisson_extend",
    "hilbert_spectral",
    "fractional_spectral",
    "cherednik_spectral",
    "laplacian_spectral",
    "exp_fourier_support",
    "support_violations",
    "hilbert_sign",
    "to_normalized_basis",
    "from_normalized_basis",
]

SCHEMA = "opdam-a1/v1"
DEFAULT_TRUNCATION = 64
# The n = 0 mode has n_k = -k, so it lands in the -i branch of the Hilbert multiplier.
HILBERT_SIGN_AT_ZERO = -1


def norms_sq(N: int, k: float) -> np.ndarray:
    """||E_n||^2 for n = -N..N."""
    return np.array([e_norm_sq(n, k) for n in range(-N, N + 1)])


@dataclass(frozen=True)
class SpectralExpansion:
    """Coefficients a_n, |n| <= N, of f = sum a_n E_n^k(ix); a_n sits at index n + N."""

    k: float
    N: int
    coeffs: np.ndarray

    def __post_init__(self):
        k = check_multiplicity(self.k)
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.shape != (2 * self.N + 1,):
            raise ValueError(f"expected {2 * self.N + 1} coefficients, got {coeffs.shape}")
        coeffs.setflags(write=False)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def zeros(cls, k: float, N: int) -> "SpectralExpansion":
        return cls(k, N, np.zeros(2 * N + 1, dtype=complex))

    @classmethod
    def unit(cls, n: int, k: float, N: int) -> "SpectralExpansion":
        c = np.zeros(2 * N + 1, dtype=complex)
        c[n + N] = 1.0
        return cls(k, N, c)

    @property
    def degrees(self) -> np.ndarray:
        return np.arange(-self.N, self.N + 1)

    def __getitem__(self, n: int) -> complex:
        if abs(n) > self.N:
            return 0j
        return complex(self.coeffs[n + self.N])

    def with_coeffs(self, coeffs) -> "SpectralExpansion":
        return SpectralExpansion(self.k, self.N, coeffs)

    def multiply(self, multiplier) -> "SpectralExpansion":
        """Apply the diagonal operator a_n -> m(n) a_n."""
        m = np.array([multiplier(int(n)) for n in self.degrees], dtype=complex)
        return self.with_coeffs(m * self.coeffs)

    def __add__(self, other: "SpectralExpansion") -> "SpectralExpansion":
        self._check_compatible(other)
        return self.with_coeffs(self.coeffs + other.coeffs)

    def __sub__(self, other: "SpectralExpansion") -> "SpectralExpansion":
        self._check_compatible(other)
        return self.with_coeffs(self.coeffs - other.coeffs)

    def __mul__(self, scalar) -> "SpectralExpansion":
        return self.with_coeffs(scalar * self.coeffs)

    __rmul__ = __mul__

    def _check_compatible(self, other):
        if other.k != self.k or other.N != self.N:
            raise ValueError("expansions differ in k or N")

    def norm_sq(self) -> float:
        """Parseval: sum |a_n|^2 ||E_n||^2."""
        return float(np.sum(np.abs(self.coeffs) ** 2 * norms_sq(self.N, self.k)))

    def __call__(self, x):
        return synthesize(self, x)

    # serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "k": self.k,
            "N": self.N,
            "entries": [
                {"n": int(n), "re": float(c.real), "im": float(c.imag)}
                for n, c in zip(self.degrees, self.coeffs)
            ],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralExpansion":
        schema = data.get("schema", SCHEMA)
        if schema != SCHEMA:
            raise ValueError(f"unsupported schema {schema!r}")
        N = int(data["N"])
        coeffs = np.zeros(2 * N + 1, dtype=complex)
        for entry in data["entries"]:
            n = int(entry["n"])
            if abs(n) > N:
                raise ValueError(f"entry n={n} exceeds N={N}")
            coeffs[n + N] = complex(entry["re"], entry["im"])
        return cls(float(data["k"]), N, coeffs)

    @classmethod
    def from_json(cls, text: str) -> "SpectralExpansion":
        return cls.from_dict(json.loads(text))


def analyze(f, k: float, N: int = DEFAULT_TRUNCATION,
            rule: QuadratureRule | None = None) -> SpectralExpansion:
    """a_n = (f, E_n)_k / ||E_n||^2 for |n| <= N.

    Exact for trigonometric polynomials of degree <= N when the rule has
    order >= 2N + 1 (the default rule uses order 4N).
    """
    k = check_multiplicity(k)
    if N < 0:
        raise ValueError("N must be >= 0")
    if rule is None:
        rule = build_circle_rule(k, max(4 * N, 8))
    if rule.kind != "circle" or rule.k != k:
        raise ValueError("analysis needs a circle rule with the same k")
    if rule.order < 2 * N + 1:
        raise ValueError(f"rule order {rule.order} under-resolves degree {N} (need >= {2 * N + 1})")
    x = rule.nodes
    vals = np.asarray(f(x), dtype=complex) * np.ones_like(x)
    basis = e_table(N, k, x)
    coeffs = (np.conj(basis) * rule.weights) @ vals / norms_sq(N, k)
    return SpectralExpansion(k, N, coeffs)


def synthesize(expansion: SpectralExpansion, x):
    """sum a_n E_n^k(ix)."""
    x = np.asarray(x, dtype=float)
    basis = e_table(expansion.N, expansion.k, x)
    vals = np.tensordot(expansion.coeffs, basis, axes=(0, 0))
    return vals if vals.ndim else complex(vals)


def poisson_extend(expansion: SpectralExpansion, r: float) -> SpectralExpansion:
    """a_n -> r^{|n|+k} a_n, with 0^0 = 1."""
    if not 0 <= r < 1:
        raise ValueError(f"need 0 <= r < 1, got {r}")
    k = expansion.k
    powers = np.abs(expansion.degrees) + k
    with np.errstate(divide="ignore"):
        factor = np.where(powers == 0, 1.0, float(r) ** powers)
    return expansion.with_coeffs(factor * expansion.coeffs)


def hilbert_sign(n: int) -> int:
    return 1 if n >= 1 else HILBERT_SIGN_AT_ZERO if n == 0 else -1


def hilbert_spectral(expansion: SpectralExpansion) -> SpectralExpansion:
    """a_n -> i a_n for n >= 1 and -i a_n for n <= 0."""
    return expansion.multiply(lambda n: 1j * hilbert_sign(n))


def fractional_spectral(expansion: SpectralExpansion, alpha: float) -> SpectralExpansion:
    """a_n -> |n|^{-alpha} a_n, annihilating the n = 0 mode."""
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return expansion.multiply(lambda n: 0.0 if n == 0 else abs(n) ** (-alpha))


def cherednik_spectral(expansion: SpectralExpansion) -> SpectralExpansion:
    """a_n -> i n_k a_n."""
    k = expansion.k
    return expansion.multiply(lambda n: 1j * extended_eigenvalue(n, k))


def laplacian_spectral(expansion: SpectralExpansion) -> SpectralExpansion:
    """a_n -> -n_k^2 a_n."""
    k = expansion.k
    return expansion.multiply(lambda n: -extended_eigenvalue(n, k) ** 2)


def to_normalized_basis(expansion: SpectralExpansion) -> np.ndarray:
    """Coefficients of the same function against E_n / E_n(0)."""
    k = expansion.k
    return expansion.coeffs * np.array([e_at_zero(int(n), k) for n in expansion.degrees])


def from_normalized_basis(k: float, N: int, coeffs) -> SpectralExpansion:
    scale = np.array([e_at_zero(n, k) for n in range(-N, N + 1)])
    return SpectralExpansion(k, N, np.asarray(coeffs, dtype=complex) / scale)


def exp_fourier_support(n: int, k: float, N: int | None = None) -> dict[int, complex]:
    """Classical Fourier coefficients of E_n^k(ix) against e^{ijx}, |j| <= N."""
    if N is None:
        N = abs(n)
    if N < abs(n):
        raise ValueError("N must be >= |n|")
    M = 4 * N + 4
    x = -np.pi + 2 * np.pi * np.arange(M) / M
    vals = e_table(abs(n), k, x)[n + abs(n)]
    out = {}
    for j in range(-N, N + 1):
        out[j] = complex(np.mean(vals * np.exp(-1j * j * x)))
    return out


def support_violations(n: int, coeffs: dict[int, complex], atol: float = 1e-10) -> list[int]:
    """Frequencies j outside {n} and {j : j ◁ n} whose coefficient exceeds atol."""
    return [j for j, c in coeffs.items() if j != n and not triangleleft(j, n) and abs(c) > atol]
