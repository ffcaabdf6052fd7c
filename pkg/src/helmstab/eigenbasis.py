"""Orthonormal trigonometric bases on [0,1], modal spectra, and data norms.

Four families span the admissible homogeneous horizontal conditions: integer
sine/cosine (eigenvalues n*pi) and half-integer sine/cosine (eigenvalues
(n+1/2)*pi).  Boundary data enter either as exact modal coefficients or as a
callable projected by composite Gauss-Legendre quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

import numpy as np

SQRT2 = math.sqrt(2.0)

#: Hard cap on retained mode indices; keeps eigenvalues comfortably inside
#: float range and bounds memory for quadrature tables.
MAX_MODE = 16384

#: Gauss-Legendre nodes per quadrature panel.
QUAD_NODES_PER_PANEL = 32


class BoundaryOperator(Enum):
    DIRICHLET = "dirichlet"
    NEUMANN = "neumann"
    IMPEDANCE = "impedance"


class BasisFamily(Enum):
    """The four orthonormal bases on [0,1].

    SIN_INT:  sqrt(2)*sin(n*pi*t), with the index-0 member identically zero.
    COS_INT:  1 for n = 0, sqrt(2)*cos(n*pi*t) otherwise.
    SIN_HALF: sqrt(2)*sin((n+1/2)*pi*t).
    COS_HALF: sqrt(2)*cos((n+1/2)*pi*t).
    """

    SIN_INT = "sin-int"
    COS_INT = "cos-int"
    SIN_HALF = "sin-half"
    COS_HALF = "cos-half"

    @property
    def half_integer(self) -> bool:
        return self in (BasisFamily.SIN_HALF, BasisFamily.COS_HALF)

    def eigenvalue(self, n: int) -> float:
        """mu_n: n*pi for integer families, (n+1/2)*pi for half-integer."""
        if n < 0:
            raise ValueError(f"mode index must be nonnegative, got {n}")
        return (n + 0.5) * math.pi if self.half_integer else n * math.pi


def basis_value(family: BasisFamily, n: int, t):
    """Evaluate Z_{family,n}(t); accepts scalars or arrays."""
    if n < 0:
        raise ValueError(f"mode index must be nonnegative, got {n}")
    mu = family.eigenvalue(n)
    if family is BasisFamily.SIN_INT:
        if n == 0:
            return np.zeros_like(np.asarray(t, dtype=float)) if np.ndim(t) else 0.0
        return SQRT2 * np.sin(mu * np.asarray(t)) if np.ndim(t) else SQRT2 * math.sin(mu * t)
    if family is BasisFamily.COS_INT:
        if n == 0:
            return np.ones_like(np.asarray(t, dtype=float)) if np.ndim(t) else 1.0
        return SQRT2 * np.cos(mu * np.asarray(t)) if np.ndim(t) else SQRT2 * math.cos(mu * t)
    if family is BasisFamily.SIN_HALF:
        return SQRT2 * np.sin(mu * np.asarray(t)) if np.ndim(t) else SQRT2 * math.sin(mu * t)
    return SQRT2 * np.cos(mu * np.asarray(t)) if np.ndim(t) else SQRT2 * math.cos(mu * t)


def basis_derivative(family: BasisFamily, n: int, t):
    """Evaluate d/dt Z_{family,n}(t)."""
    if n < 0:
        raise ValueError(f"mode index must be nonnegative, got {n}")
    mu = family.eigenvalue(n)
    arr = bool(np.ndim(t))
    tt = np.asarray(t) if arr else t
    if family is BasisFamily.SIN_INT:
        if n == 0:
            return np.zeros_like(np.asarray(t, dtype=float)) if arr else 0.0
        return SQRT2 * mu * (np.cos(mu * tt) if arr else math.cos(mu * tt))
    if family is BasisFamily.COS_INT:
        if n == 0:
            return np.zeros_like(np.asarray(t, dtype=float)) if arr else 0.0
        return -SQRT2 * mu * (np.sin(mu * tt) if arr else math.sin(mu * tt))
    if family is BasisFamily.SIN_HALF:
        return SQRT2 * mu * (np.cos(mu * tt) if arr else math.cos(mu * tt))
    return -SQRT2 * mu * (np.sin(mu * tt) if arr else math.sin(mu * tt))


def select_eigenpairs(b_bottom: BoundaryOperator, b_top: BoundaryOperator) -> BasisFamily:
    """Basis family whose members satisfy the homogeneous horizontal conditions.

    (Dirichlet, Dirichlet) -> SIN_INT, (Neumann, Neumann) -> COS_INT,
    (Dirichlet, Neumann) -> SIN_HALF, (Neumann, Dirichlet) -> COS_HALF.
    """
    D, N = BoundaryOperator.DIRICHLET, BoundaryOperator.NEUMANN
    table = {
        (D, D): BasisFamily.SIN_INT,
        (N, N): BasisFamily.COS_INT,
        (D, N): BasisFamily.SIN_HALF,
        (N, D): BasisFamily.COS_HALF,
    }
    try:
        return table[(b_bottom, b_top)]
    except KeyError:
        raise ValueError(
            "horizontal operators must be Dirichlet or Neumann, got "
            f"({b_bottom}, {b_top})"
        ) from None


@dataclass(frozen=True)
class Spectrum:
    """Finitely supported modal coefficients in one basis family.

    Indices are strictly increasing; a SIN_INT index 0 is dropped silently
    (that family's zeroth member is the zero function).
    """

    family: BasisFamily
    coeffs: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        cleaned = []
        last = -1
        for n, c in self.coeffs:
            n = int(n)
            if n < 0:
                raise ValueError(f"mode index must be nonnegative, got {n}")
            if n > MAX_MODE:
                raise ValueError(f"mode index {n} exceeds cap {MAX_MODE}")
            if n <= last:
                raise ValueError("mode indices must be strictly increasing and unique")
            last = n
            if self.family is BasisFamily.SIN_INT and n == 0:
                continue
            cleaned.append((n, complex(c)))
        object.__setattr__(self, "coeffs", tuple(cleaned))

    @classmethod
    def from_pairs(cls, family: BasisFamily, pairs: Iterable[tuple[int, complex]]) -> "Spectrum":
        return cls(family, tuple(sorted(((int(n), complex(c)) for n, c in pairs))))

    @classmethod
    def zero(cls, family: BasisFamily) -> "Spectrum":
        return cls(family, ())

    def __iter__(self):
        return iter(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    @property
    def top_mode(self) -> int:
        return self.coeffs[-1][0] if self.coeffs else 0

    def coefficient(self, n: int) -> complex:
        for m, c in self.coeffs:
            if m == n:
                return c
        return 0.0 + 0.0j

    def expand(self, t):
        """Pointwise value of the represented function at t."""
        arr = bool(np.ndim(t))
        total = np.zeros(np.shape(t), dtype=complex) if arr else 0.0 + 0.0j
        for n, c in self.coeffs:
            total = total + c * basis_value(self.family, n, t)
        return total

    def scaled(self, factor: complex) -> "Spectrum":
        return Spectrum(self.family, tuple((n, factor * c) for n, c in self.coeffs))

    def minus(self, other: "Spectrum") -> "Spectrum":
        """Coefficient-wise difference; families must match."""
        if other.family is not self.family:
            raise ValueError("spectra belong to different basis families")
        merged: dict[int, complex] = dict(self.coeffs)
        for n, c in other.coeffs:
            merged[n] = merged.get(n, 0.0 + 0.0j) - c
        return Spectrum.from_pairs(self.family, merged.items())


@dataclass(frozen=True)
class DataNormReport:
    """Eigen-expansion data norms: squared sums of |coeff|^2 * mu^(2s)."""

    l2: float
    fractional_half: float
    fractional_three_half: float


def _panel_rule(max_mode: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on [0,1] resolving modes up to max_mode."""
    panels = max(8, math.ceil(max_mode / 4))
    nodes, weights = np.polynomial.legendre.leggauss(QUAD_NODES_PER_PANEL)
    h = 1.0 / panels
    offsets = (np.arange(panels) + 0.5) * h
    t = (offsets[:, None] + 0.5 * h * nodes[None, :]).ravel()
    w = np.tile(0.5 * h * weights, panels)
    return t, w


def quadrature_rule(max_mode: int) -> tuple[np.ndarray, np.ndarray]:
    """Public handle on the module's fixed projection rule (nodes, weights)."""
    return _panel_rule(max_mode)


def project(g, family: BasisFamily, max_mode: int) -> Spectrum:
    """Modal coefficients of g up to max_mode.

    g may be a Spectrum in the same family (returned unchanged, truncated to
    max_mode) or a callable on [0,1] sampled by the fixed quadrature rule.
    Exactly-zero coefficients are dropped.
    """
    if max_mode < 0:
        raise ValueError("max_mode must be nonnegative")
    if max_mode > MAX_MODE:
        raise ValueError(f"max_mode {max_mode} exceeds cap {MAX_MODE}")
    if isinstance(g, Spectrum):
        if g.family is not family:
            raise ValueError(f"spectrum family {g.family} does not match {family}")
        return Spectrum(family, tuple((n, c) for n, c in g.coeffs if n <= max_mode))

    t, w = _panel_rule(max_mode)
    samples = np.asarray([g(ti) for ti in t], dtype=complex)
    if not np.all(np.isfinite(samples.view(float))):
        raise ValueError("boundary datum produced non-finite samples")
    wsamp = w * samples
    pairs = []
    for n in range(max_mode + 1):
        zn = basis_value(family, n, t)
        c = complex(math.fsum((wsamp * zn).real), math.fsum((wsamp * zn).imag))
        if c != 0:
            pairs.append((n, c))
    return Spectrum(family, tuple(pairs))


def data_norms(s: Spectrum) -> DataNormReport:
    """L2 and fractional-order norms of the expanded datum (Parseval sums)."""
    sq = [abs(c) ** 2 for _, c in s.coeffs]
    mus = [s.family.eigenvalue(n) for n, _ in s.coeffs]
    l2 = math.sqrt(math.fsum(sq))
    half = math.sqrt(math.fsum(q * m for q, m in zip(sq, mus)))
    three_half = math.sqrt(math.fsum(q * m**3 for q, m in zip(sq, mus)))
    return DataNormReport(l2=l2, fractional_half=half, fractional_three_half=three_half)
