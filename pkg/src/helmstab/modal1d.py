"""Closed-form 1D modal solutions on [0,1] and their exact L2 norms.

Each mode solves X'' + (k^2 - mu^2) X = 0 with one inhomogeneous boundary
operator carrying a unit datum.  Three regimes: propagating (mu^2 < k^2,
oscillatory), evanescent (mu^2 > k^2, exponential), and cutoff (mu^2 = k^2
within tolerance, polynomial).  Norms are evaluated from cancellation-free
regroupings of the closed forms, stable from the cutoff through z ~ 800.

Also provides the lifting eigenvalue-family selection driven by the distance
of k^2 to the two eigenvalue lattices, the resonance-gap lower bound, and the
energy-density quantities phi/theta/psi used by the certification sweeps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .eigenbasis import BasisFamily, BoundaryOperator

#: Relative gap |k^2 - mu^2| / max(k^2, mu^2) below which a mode is cutoff.
EPS_CUTOFF = 1e-8

#: Determinant tolerance (relative) for the 2x2 amplitude systems.
_DET_TOL = 1e-12

#: Switch the hyperbolic primitives to exp-scaled forms beyond this z.
_HYP_SCALE_Z = 20.0

#: Switch the cancellation-prone differences to series below this z.
_SERIES_Z = 0.25


class ResonantLiftingError(ValueError):
    """Lifting mode requested at (or numerically at) a resonant eigenvalue."""


class Side(Enum):
    """Sides of the unit square, named by position.

    BOTTOM: y = 0, RIGHT: x = 1, TOP: y = 1, LEFT: x = 0.  Outward normal
    derivatives are -d/dy, +d/dx, +d/dy, -d/dx respectively.
    """

    BOTTOM = "bottom"
    RIGHT = "right"
    TOP = "top"
    LEFT = "left"


class Regime(Enum):
    PROPAGATING = "propagating"
    CUTOFF = "cutoff"
    EVANESCENT = "evanescent"


@dataclass(frozen=True)
class ModeRegime:
    kind: Regime
    lam: float  # sqrt(|1 - mu^2/k^2|)
    z: float    # k * lam = sqrt(|k^2 - mu^2|)


def classify_mode(k: float, mu: float) -> ModeRegime:
    """Regime of the mode with transverse eigenvalue mu at wavenumber k."""
    if k <= 0:
        raise ValueError("wavenumber k must be positive")
    # (k-mu)(k+mu) avoids the catastrophic cancellation of k*k - mu*mu near
    # the cutoff (the difference k-mu is exact there).
    gap = abs((k - mu) * (k + mu))
    z = math.sqrt(gap)
    lam = z / k
    if gap <= EPS_CUTOFF * max(k * k, mu * mu):
        return ModeRegime(Regime.CUTOFF, lam, z)
    if mu * mu < k * k:
        return ModeRegime(Regime.PROPAGATING, lam, z)
    return ModeRegime(Regime.EVANESCENT, lam, z)


# --------------------------------------------------------------------------
# stable scalar primitives
# --------------------------------------------------------------------------

# (2z - sin 2z)/2 = z^3 * sum c_m (2z)^(2m); c_0 = 2/3 after normalization.
_ODD_FACT_INV = [1.0 / math.factorial(2 * m + 3) for m in range(9)]


def _a_minus(z: float) -> float:
    """z - sin(z)cos(z), computed without cancellation for small z."""
    if z < _SERIES_Z:
        w2 = (2.0 * z) ** 2
        acc = 0.0
        for m in range(len(_ODD_FACT_INV) - 1, -1, -1):
            acc = acc * w2 + (-1.0) ** m * _ODD_FACT_INV[m]
        return 4.0 * z**3 * acc
    return z - 0.5 * math.sin(2.0 * z)


def _a_plus(z: float) -> float:
    """z + sin(z)cos(z)."""
    return z + 0.5 * math.sin(2.0 * z)


@dataclass(frozen=True)
class _Hyp:
    """Hyperbolic building blocks sharing one scale factor.

    Fields hold {1, sinh^2 z, cosh^2 z, sinh z cosh z - z, sinh z cosh z + z}
    all multiplied by the same scale (1 for moderate z, e^(-2z) beyond);
    ratios of homogeneous combinations are therefore exact.
    """

    one: float
    h2: float
    ch2: float
    hm: float
    hp: float


def _hyp_bundle(z: float) -> _Hyp:
    if z < _HYP_SCALE_Z:
        sh = math.sinh(z)
        ch = math.cosh(z)
        hc = sh * ch
        if z < _SERIES_Z:
            w2 = (2.0 * z) ** 2
            acc = 0.0
            for m in range(len(_ODD_FACT_INV) - 1, -1, -1):
                acc = acc * w2 + _ODD_FACT_INV[m]
            hm = 4.0 * z**3 * acc
        else:
            hm = hc - z
        return _Hyp(one=1.0, h2=sh * sh, ch2=ch * ch, hm=hm, hp=hc + z)
    e2 = math.exp(-2.0 * z)
    e4 = e2 * e2
    hc = 0.25 * (1.0 - e4)  # sinh z cosh z * e^(-2z)
    return _Hyp(
        one=e2,
        h2=0.25 * (1.0 - e2) ** 2,
        ch2=0.25 * (1.0 + e2) ** 2,
        hm=hc - z * e2,
        hp=hc + z * e2,
    )


@dataclass(frozen=True)
class HyperbolicRatios:
    """Stabilized forms of the hyperbolic ratios used by the norm formulas."""

    sinh2z_over_2z: float
    cosh2z: float
    sinh2z_over_cosh2z_minus_1: float
    sinh2z_over_cosh2z_plus_1: float
    sinh2z_minus_2z_over_z3_cosh2z_plus_1: float


def stable_hyperbolic_ratios(z: float) -> HyperbolicRatios:
    """Evaluate the five hyperbolic ratios without overflow or cancellation.

    Entries that genuinely exceed float64 range (sinh(2z)/(2z) and cosh(2z)
    for z > ~354.9) saturate to inf; the singular-ratio entries stay finite
    and accurate for all z >= 0.  At z = 0 the coth-form entry is inf (its
    1/z singularity) and the composite-limit entry equals 2/3.
    """
    if z < 0:
        raise ValueError("z must be nonnegative")
    if z == 0.0:
        return HyperbolicRatios(1.0, 1.0, math.inf, 0.0, 2.0 / 3.0)
    try:
        sinh_lin = math.sinh(2.0 * z) / (2.0 * z)
    except OverflowError:
        sinh_lin = math.inf
    try:
        cosh2z = math.cosh(2.0 * z)
    except OverflowError:
        cosh2z = math.inf
    coth = 1.0 / math.tanh(z)
    tanh = math.tanh(z)
    b = _hyp_bundle(z)
    # (sinh 2z - 2z) / (z^3 (cosh 2z + 1)) = 2*hm / (z^3 * 2*ch2), same scale.
    cubic = b.hm / (z**3 * b.ch2)
    return HyperbolicRatios(sinh_lin, cosh2z, coth, tanh, cubic)


# --------------------------------------------------------------------------
# modal solutions
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class TrigHyperbolic:
    """Amplitudes of exp(sigma*t) and exp(sigma*(1-t)).

    The anchored pair keeps both exponents nonpositive in the evanescent
    regime; the conventional exp(+/- sigma*t) amplitudes are recovered as
    c_plus = forward, c_minus = backward * exp(sigma).
    """

    forward: complex
    backward: complex


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[complex, ...]


@dataclass(frozen=True)
class ModalSolution1D:
    """One closed-form 1D mode with its exact squared L2 norms."""

    k: float
    mu: float
    regime: ModeRegime
    sigma: complex  # i * k * ringlam; 0 in the cutoff branch
    branch: TrigHyperbolic | Polynomial
    norm_sq: float
    dnorm_sq: float

    @property
    def c_plus(self) -> complex:
        if isinstance(self.branch, Polynomial):
            raise TypeError("polynomial branch has no exponential amplitudes")
        return self.branch.forward

    @property
    def c_minus(self) -> complex:
        if isinstance(self.branch, Polynomial):
            raise TypeError("polynomial branch has no exponential amplitudes")
        return self.branch.backward * cmath.exp(self.sigma)

    def value(self, t):
        if isinstance(self.branch, Polynomial):
            return _poly_value(self.branch.coeffs, t)
        if np.ndim(t):
            t = np.asarray(t)
        a, b = self.branch.forward, self.branch.backward
        return a * np.exp(self.sigma * t) + b * np.exp(self.sigma * (1.0 - t))

    def derivative(self, t):
        if isinstance(self.branch, Polynomial):
            return _poly_value(_poly_deriv(self.branch.coeffs), t)
        if np.ndim(t):
            t = np.asarray(t)
        a, b = self.branch.forward, self.branch.backward
        return self.sigma * (a * np.exp(self.sigma * t) - b * np.exp(self.sigma * (1.0 - t)))


def _poly_value(coeffs, t):
    acc = np.zeros(np.shape(t), dtype=complex) if np.ndim(t) else 0.0 + 0.0j
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


def _poly_deriv(coeffs):
    return tuple((i + 1) * c for i, c in enumerate(coeffs[1:]))


def _poly_l2_sq(coeffs) -> float:
    """Exact integral of |p(t)|^2 over [0,1]."""
    total = 0.0
    for i, ci in enumerate(coeffs):
        for j, cj in enumerate(coeffs):
            total += (ci * cj.conjugate()).real / (i + j + 1)
    return total


def _operator_row(op: BoundaryOperator, end: int, sigma: complex, k: float):
    """Row of the 2x2 system applying op at an endpoint.

    Acts on (forward, backward) amplitudes of exp(sigma*t), exp(sigma*(1-t)).
    Normal derivatives point outward: -d/dt at t=0, +d/dt at t=1.
    """
    es = cmath.exp(sigma)
    if end == 0:
        v = (1.0 + 0.0j, es)
        d = (sigma, -sigma * es)
        nrm = (-d[0], -d[1])
    else:
        v = (es, 1.0 + 0.0j)
        d = (sigma * es, -sigma)
        nrm = d
    if op is BoundaryOperator.DIRICHLET:
        return v
    if op is BoundaryOperator.NEUMANN:
        return nrm
    return (nrm[0] - 1j * k * v[0], nrm[1] - 1j * k * v[1])


def _poly_operator_row(op: BoundaryOperator, end: int, k: float):
    """Same as _operator_row for the degenerate branch p0 + p1*t."""
    if end == 0:
        v, d = (1.0 + 0.0j, 0.0 + 0.0j), (0.0 + 0.0j, 1.0 + 0.0j)
        nrm = (-d[0], -d[1])
    else:
        v, d = (1.0 + 0.0j, 1.0 + 0.0j), (0.0 + 0.0j, 1.0 + 0.0j)
        nrm = d
    if op is BoundaryOperator.DIRICHLET:
        return v
    if op is BoundaryOperator.NEUMANN:
        return nrm
    return (nrm[0] - 1j * k * v[0], nrm[1] - 1j * k * v[1])


def _solve_2x2(r0, r1, d0: complex, d1: complex) -> tuple[complex, complex]:
    det = r0[0] * r1[1] - r0[1] * r1[0]
    scale = max(abs(r0[0]), abs(r0[1])) * max(abs(r1[0]), abs(r1[1]))
    if abs(det) <= _DET_TOL * max(scale, 1e-300):
        raise ResonantLiftingError(
            f"boundary-value system is singular (|det|={abs(det):.3e}, scale={scale:.3e})"
        )
    return (d0 * r1[1] - d1 * r0[1]) / det, (r0[0] * d1 - r1[0] * d0) / det


def _sigma(k: float, reg: ModeRegime) -> complex:
    if reg.kind is Regime.CUTOFF:
        return 0.0 + 0.0j
    if reg.kind is Regime.PROPAGATING:
        return 1j * reg.z
    return complex(-reg.z, 0.0)


# --------------------------------------------------------------------------
# closed-form norms (verified against 50-digit quadrature)
# --------------------------------------------------------------------------


def _xnorms_impedance_pair(k: float, reg: ModeRegime) -> tuple[float, float]:
    """Norms for the impedance/impedance mode (unit datum on either side)."""
    lam, z = reg.lam, reg.z
    l2 = lam * lam
    if reg.kind is Regime.PROPAGATING:
        am, ap = _a_minus(z), _a_plus(z)
        den = 4.0 * l2 + (1.0 - l2) ** 2 * math.sin(z) ** 2
        return (
            (am + l2 * ap) / (2.0 * k**3 * lam * den),
            lam * (ap + l2 * am) / (2.0 * k * den),
        )
    b = _hyp_bundle(z)
    den = 4.0 * l2 * b.one + (1.0 + l2) ** 2 * b.h2
    return (
        (b.hm + l2 * b.hp) / (2.0 * k**3 * lam * den),
        lam * (b.hp + l2 * b.hm) / (2.0 * k * den),
    )


def _xnorms_left_datum(k: float, reg: ModeRegime, alpha: int) -> tuple[float, float]:
    """Unit impedance datum at x=0; homogeneous Dirichlet (alpha=0) or
    Neumann (alpha=1) at x=1."""
    lam, z = reg.lam, reg.z
    l2 = lam * lam
    if reg.kind is Regime.PROPAGATING:
        s2, c2 = math.sin(z) ** 2, math.cos(z) ** 2
        if alpha == 1:
            den = c2 + l2 * s2
            return _a_plus(z) / (2.0 * k**3 * lam * den), lam * _a_minus(z) / (2.0 * k * den)
        den = s2 + l2 * c2
        return _a_minus(z) / (2.0 * k**3 * lam * den), lam * _a_plus(z) / (2.0 * k * den)
    b = _hyp_bundle(z)
    if alpha == 1:
        den = b.ch2 + l2 * b.h2
        return b.hp / (2.0 * k**3 * lam * den), lam * b.hm / (2.0 * k * den)
    den = b.h2 + l2 * b.ch2
    return b.hm / (2.0 * k**3 * lam * den), lam * b.hp / (2.0 * k * den)


def _xnorms_right_datum(k: float, reg: ModeRegime, alpha: int) -> tuple[float, float]:
    """Homogeneous impedance at x=0; unit Dirichlet (alpha=0) or Neumann
    (alpha=1) datum at x=1."""
    lam, z = reg.lam, reg.z
    l2 = lam * lam
    if reg.kind is Regime.PROPAGATING:
        am, ap = _a_minus(z), _a_plus(z)
        s2, c2 = math.sin(z) ** 2, math.cos(z) ** 2
        if alpha == 1:
            den = c2 + l2 * s2
            return (am + l2 * ap) / (2.0 * z**3 * den), (ap + l2 * am) / (2.0 * z * den)
        den = s2 + l2 * c2
        return (am + l2 * ap) / (2.0 * z * den), z * (ap + l2 * am) / (2.0 * den)
    b = _hyp_bundle(z)
    if alpha == 1:
        den = b.ch2 + l2 * b.h2
        return (b.hm + l2 * b.hp) / (2.0 * z**3 * den), (b.hp + l2 * b.hm) / (2.0 * z * den)
    den = b.h2 + l2 * b.ch2
    return (b.hm + l2 * b.hp) / (2.0 * z * den), z * (b.hp + l2 * b.hm) / (2.0 * den)


def _ynorms_neumann_datum(reg: ModeRegime, alpha: int) -> tuple[float, float]:
    """Unit Neumann datum at y=0; alpha-operator homogeneous at y=1."""
    z = reg.z
    if reg.kind is Regime.PROPAGATING:
        am, ap = _a_minus(z), _a_plus(z)
        den = math.sin(z) ** 2 if alpha == 1 else math.cos(z) ** 2
        num0, num1 = (ap, am) if alpha == 1 else (am, ap)
        return num0 / (2.0 * z**3 * den), num1 / (2.0 * z * den)
    b = _hyp_bundle(z)
    den = b.h2 if alpha == 1 else b.ch2
    num0, num1 = (b.hp, b.hm) if alpha == 1 else (b.hm, b.hp)
    return num0 / (2.0 * z**3 * den), num1 / (2.0 * z * den)


def _ynorms_dirichlet_datum(reg: ModeRegime, alpha: int) -> tuple[float, float]:
    """Unit Dirichlet datum at y=0; alpha-operator homogeneous at y=1."""
    z = reg.z
    if reg.kind is Regime.PROPAGATING:
        am, ap = _a_minus(z), _a_plus(z)
        den = math.cos(z) ** 2 if alpha == 1 else math.sin(z) ** 2
        num0, num1 = (ap, am) if alpha == 1 else (am, ap)
        return num0 / (2.0 * z * den), z * num1 / (2.0 * den)
    b = _hyp_bundle(z)
    den = b.ch2 if alpha == 1 else b.h2
    num0, num1 = (b.hp, b.hm) if alpha == 1 else (b.hm, b.hp)
    return num0 / (2.0 * z * den), z * num1 / (2.0 * den)


# --------------------------------------------------------------------------
# mode constructors
# --------------------------------------------------------------------------


def x_mode(
    n: int,
    k: float,
    b_right: BoundaryOperator,
    data_side: Side,
    family: BasisFamily,
    b_left: BoundaryOperator = BoundaryOperator.IMPEDANCE,
) -> ModalSolution1D:
    """Horizontal modal profile with a unit datum on the given vertical side.

    The left side always carries the impedance operator.  With b_right
    impedance the impedance/impedance profile serves either datum side;
    otherwise the datum side selects which closed form applies.
    """
    if b_left is not BoundaryOperator.IMPEDANCE:
        raise ValueError("the left side must carry the impedance operator")
    if data_side not in (Side.LEFT, Side.RIGHT):
        raise ValueError("x-direction data lives on the LEFT or RIGHT side")
    mu = family.eigenvalue(n)
    reg = classify_mode(k, mu)
    d_left = 1.0 if data_side is Side.LEFT else 0.0
    d_right = 1.0 - d_left

    if reg.kind is Regime.CUTOFF:
        r0 = _poly_operator_row(BoundaryOperator.IMPEDANCE, 0, k)
        r1 = _poly_operator_row(b_right, 1, k)
        p0, p1 = _solve_2x2(r0, r1, d_left, d_right)
        branch: TrigHyperbolic | Polynomial = Polynomial((p0, p1))
        norm_sq = _poly_l2_sq((p0, p1))
        dnorm_sq = _poly_l2_sq((p1,))
        return ModalSolution1D(k, mu, reg, 0.0 + 0.0j, branch, norm_sq, dnorm_sq)

    sigma = _sigma(k, reg)
    r0 = _operator_row(BoundaryOperator.IMPEDANCE, 0, sigma, k)
    r1 = _operator_row(b_right, 1, sigma, k)
    a, b = _solve_2x2(r0, r1, d_left, d_right)
    if b_right is BoundaryOperator.IMPEDANCE:
        norm_sq, dnorm_sq = _xnorms_impedance_pair(k, reg)
    elif data_side is Side.LEFT:
        alpha = 1 if b_right is BoundaryOperator.NEUMANN else 0
        norm_sq, dnorm_sq = _xnorms_left_datum(k, reg, alpha)
    else:
        alpha = 1 if b_right is BoundaryOperator.NEUMANN else 0
        norm_sq, dnorm_sq = _xnorms_right_datum(k, reg, alpha)
    return ModalSolution1D(k, mu, reg, sigma, TrigHyperbolic(a, b), norm_sq, dnorm_sq)


class EigenvalueFamily(Enum):
    INTEGER = "integer"        # mu_n = n*pi
    HALF_INTEGER = "half-integer"  # mu_n = (n + 1/2)*pi

    def eigenvalue(self, n: int) -> float:
        if n < 0:
            raise ValueError("mode index must be nonnegative")
        return ((n + 0.5) if self is EigenvalueFamily.HALF_INTEGER else n) * math.pi


@dataclass(frozen=True)
class LiftingFamilyChoice:
    """Resonance-avoiding eigenvalue family for horizontal-data lifting."""

    d0: float
    d1: float
    family: EigenvalueFamily
    case_index: int

    def eigenvalue(self, n: int) -> float:
        return self.family.eigenvalue(n)

    def admits(self, basis: BasisFamily) -> bool:
        half = basis.half_integer
        return half == (self.family is EigenvalueFamily.HALF_INTEGER)


def choose_lifting_family(
    k: float, b_bottom: BoundaryOperator, b_top: BoundaryOperator
) -> LiftingFamilyChoice:
    """Pick the eigenvalue lattice keeping k*lam away from resonances.

    d0 and d1 are the distances of k^2 to the integer and half-integer
    eigenvalue-squared lattices (they sum to pi^2/2 exactly); the lattice is
    chosen by closed-interval membership of d0.
    """
    if k <= 0:
        raise ValueError("wavenumber k must be positive")
    for op in (b_bottom, b_top):
        if op not in (BoundaryOperator.DIRICHLET, BoundaryOperator.NEUMANN):
            raise ValueError("horizontal operators must be Dirichlet or Neumann")
    pi2 = math.pi * math.pi
    t = (k * k) / pi2
    d0 = pi2 * abs(t - round(t))
    d1 = pi2 * abs(t - (math.floor(t) + 0.5))
    same = b_bottom is b_top
    eighth, three_eighth, half = pi2 / 8.0, 3.0 * pi2 / 8.0, pi2 / 2.0
    if same:
        if 0.0 <= d0 <= eighth:
            fam, case = EigenvalueFamily.HALF_INTEGER, 1
        else:
            fam, case = EigenvalueFamily.INTEGER, 2
    else:
        if d0 <= eighth or three_eighth <= d0 <= half:
            fam, case = EigenvalueFamily.INTEGER, 3
        else:
            fam, case = EigenvalueFamily.HALF_INTEGER, 4
    return LiftingFamilyChoice(d0=d0, d1=d1, family=fam, case_index=case)


def y_mode_lifting(
    n: int,
    k: float,
    b_bottom: BoundaryOperator,
    b_top: BoundaryOperator,
    data_side: Side,
    family_choice: LiftingFamilyChoice,
) -> ModalSolution1D:
    """Vertical auxiliary profile with a unit datum on a horizontal side.

    The datum side's operator fixes the closed form (Neumann vs Dirichlet
    datum); the opposite operator supplies alpha.  Data on TOP solves the
    reflected problem.  A Dirichlet-datum mode at the cutoff, or any mode
    whose boundary system is numerically singular, raises
    ResonantLiftingError: the lifting family choice provably avoids these.
    """
    if data_side not in (Side.BOTTOM, Side.TOP):
        raise ValueError("lifting data lives on the BOTTOM or TOP side")
    for op in (b_bottom, b_top):
        if op not in (BoundaryOperator.DIRICHLET, BoundaryOperator.NEUMANN):
            raise ValueError("horizontal operators must be Dirichlet or Neumann")
    reflected = data_side is Side.TOP
    datum_op, other_op = (b_top, b_bottom) if reflected else (b_bottom, b_top)
    alpha = 1 if other_op is BoundaryOperator.NEUMANN else 0
    mu = family_choice.eigenvalue(n)
    reg = classify_mode(k, mu)

    if reg.kind is Regime.CUTOFF:
        if datum_op is BoundaryOperator.DIRICHLET:
            raise ResonantLiftingError(
                f"Dirichlet-datum lifting mode hit the cutoff (k={k}, mu={mu}); "
                "the eigenvalue-family selection should have avoided this"
            )
        # Neumann datum, degenerate branch: alpha*(t^2/2 - t) - (1-alpha)*(t-1)
        coeffs = (
            complex(1.0 - alpha),
            complex(-1.0),
            complex(0.5 * alpha),
        )
        if reflected:
            coeffs = _reflect_poly(coeffs)
        norm_sq = (1.0 - alpha) / 3.0 + 2.0 * alpha / 15.0
        dnorm_sq = (1.0 - alpha) + alpha / 3.0
        return ModalSolution1D(k, mu, reg, 0.0 + 0.0j, Polynomial(coeffs), norm_sq, dnorm_sq)

    sigma = _sigma(k, reg)
    r0 = _operator_row(datum_op, 0, sigma, k)
    r1 = _operator_row(other_op, 1, sigma, k)
    a, b = _solve_2x2(r0, r1, 1.0, 0.0)
    if reflected:
        a, b = b, a
    if datum_op is BoundaryOperator.NEUMANN:
        norm_sq, dnorm_sq = _ynorms_neumann_datum(reg, alpha)
    else:
        norm_sq, dnorm_sq = _ynorms_dirichlet_datum(reg, alpha)
    return ModalSolution1D(k, mu, reg, sigma, TrigHyperbolic(a, b), norm_sq, dnorm_sq)


def _expm1_over(c: complex) -> complex:
    """(exp(c) - 1)/c, with the small-argument limit 1."""
    if abs(c) < 1e-5:
        return 1.0 + c / 2.0 + c * c / 6.0 + c * c * c / 24.0
    return (cmath.exp(c) - 1.0) / c


def mode_from_amplitudes(
    k: float, mu: float, forward: complex, backward: complex
) -> ModalSolution1D:
    """Build a mode directly from anchored amplitudes.

    The squared norms come from the exact exponential integrals, so this
    constructor is independent of the tabulated norm formulas; it backs
    hand-transcribed reference solutions and test oracles.
    """
    reg = classify_mode(k, mu)
    if reg.kind is Regime.CUTOFF:
        raise ValueError("cutoff modes are polynomial; amplitudes do not apply")
    sigma = _sigma(k, reg)
    a, b = complex(forward), complex(backward)
    es = cmath.exp(sigma)
    e_same = _expm1_over(2.0 * sigma.real).real  # int_0^1 e^{2 Re(sigma) t} dt
    cross = 2.0 * (a * b.conjugate() * es.conjugate() * _expm1_over(sigma - sigma.conjugate())).real
    norm_sq = (abs(a) ** 2 + abs(b) ** 2) * e_same + cross
    dnorm_sq = abs(sigma) ** 2 * ((abs(a) ** 2 + abs(b) ** 2) * e_same - cross)
    return ModalSolution1D(k, mu, reg, sigma, TrigHyperbolic(a, b), norm_sq, dnorm_sq)


def mode_from_polynomial(k: float, mu: float, coeffs) -> ModalSolution1D:
    """Build a cutoff-branch mode from polynomial coefficients."""
    reg = classify_mode(k, mu)
    cs = tuple(complex(c) for c in coeffs)
    return ModalSolution1D(
        k, mu, reg, 0.0 + 0.0j, Polynomial(cs), _poly_l2_sq(cs), _poly_l2_sq(_poly_deriv(cs))
    )


def _reflect_poly(coeffs: tuple[complex, ...]) -> tuple[complex, ...]:
    """Coefficients of p(1-t) given those of p(t)."""
    out = [0.0 + 0.0j] * len(coeffs)
    for i, c in enumerate(coeffs):
        for j in range(i + 1):
            out[j] += c * math.comb(i, j) * (-1.0) ** j
    return tuple(out)


def gap_lower_bound(k: float, mu_tilde: float, same_ops: bool) -> tuple[float, float]:
    """Distance of k*lam to the resonant lattice, and its proven lower bound.

    Returns (observed, bound) with observed = inf_j |k*lam - j*pi| for equal
    horizontal operators, or the half-integer lattice otherwise, and
    bound = (pi/8) / (1 + (2/pi) * k*lam).
    """
    z = math.sqrt(abs((k - mu_tilde) * (k + mu_tilde)))
    if same_ops:
        j = round(z / math.pi)
        observed = abs(z - j * math.pi)
    else:
        j = round(z / math.pi - 0.5)
        observed = abs(z - (j + 0.5) * math.pi)
    bound = (math.pi / 8.0) / (1.0 + (2.0 / math.pi) * z)
    return observed, bound


# --------------------------------------------------------------------------
# proof quantities
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ProofQuantities:
    """The modal energy density |X'|^2 + (mu^2 + k^2)|X|^2 by regime.

    Exactly one field is populated: phi (propagating), theta (cutoff) or
    psi (evanescent).
    """

    phi: Optional[float] = None
    theta: Optional[float] = None
    psi: Optional[float] = None

    @property
    def value(self) -> float:
        for v in (self.phi, self.theta, self.psi):
            if v is not None:
                return v
        raise ValueError("empty ProofQuantities")


def proof_quantities(
    n: int,
    k: float,
    b_right: BoundaryOperator,
    data_side: Side,
    family: BasisFamily,
) -> ProofQuantities:
    """phi/theta/psi for the horizontal-profile problem named by (b_right,
    data_side), in stably regrouped ratio form."""
    mu = family.eigenvalue(n)
    reg = classify_mode(k, mu)
    lam, z = reg.lam, reg.z
    l2 = lam * lam
    k2 = k * k

    if b_right is BoundaryOperator.IMPEDANCE:
        if reg.kind is Regime.CUTOFF:
            return ProofQuantities(theta=(2.0 * k2 + 9.0) / (3.0 * k2 + 12.0))
        if reg.kind is Regime.PROPAGATING:
            den = 4.0 * l2 + (1.0 - l2) ** 2 * math.sin(z) ** 2
            num = l2 * (3.0 - l2) + (_a_minus(z) / z) * (1.0 - l2) ** 2
            return ProofQuantities(phi=num / den)
        b = _hyp_bundle(z)
        num = 2.0 * (l2 * (3.0 + l2) * b.one + (b.hm / z) * (1.0 + l2) ** 2)
        den = 2.0 * (1.0 + l2) ** 2 * b.h2 + 8.0 * l2 * b.one
        return ProofQuantities(psi=num / den)

    alpha = 1 if b_right is BoundaryOperator.NEUMANN else 0

    if data_side is Side.LEFT:
        if alpha == 1:
            if reg.kind is Regime.CUTOFF:
                return ProofQuantities(theta=2.0)
            if reg.kind is Regime.PROPAGATING:
                s2z = math.sin(2.0 * z) / (2.0 * z)
                num = 1.0 + (1.0 - l2) * s2z
                den = math.cos(z) ** 2 + l2 * math.sin(z) ** 2
                return ProofQuantities(phi=num / den)
            b = _hyp_bundle(z)
            sh_lin = (b.hp + b.hm) / (2.0 * z)  # sinh(2z)/(2z), bundle scale
            num = 2.0 * (sh_lin * (1.0 + l2) + b.one)
            den = 2.0 * ((1.0 + l2) * b.h2 + b.one)
            return ProofQuantities(psi=num / den)
        if reg.kind is Regime.CUTOFF:
            return ProofQuantities(theta=(2.0 * k2 + 3.0) / (3.0 * k2 + 3.0))
        if reg.kind is Regime.PROPAGATING:
            num = l2 + (_a_minus(z) / z) * (1.0 - l2)
            den = math.sin(z) ** 2 + l2 * math.cos(z) ** 2
            return ProofQuantities(phi=num / den)
        b = _hyp_bundle(z)
        sh_lin = (b.hp + b.hm) / (2.0 * z)
        num = 2.0 * (b.hm / z + l2 * sh_lin)
        den = 2.0 * ((1.0 + l2) * b.h2 + l2 * b.one)
        return ProofQuantities(psi=num / den)

    # datum on the RIGHT side
    if alpha == 1:
        if reg.kind is Regime.CUTOFF:
            return ProofQuantities(theta=(2.0 / 3.0) * k2 + 3.0)
        if reg.kind is Regime.PROPAGATING:
            num = l2 * (3.0 - l2) + (_a_minus(z) / z) * (1.0 - l2) ** 2
            den = l2 * (math.cos(z) ** 2 + l2 * math.sin(z) ** 2)
            return ProofQuantities(phi=num / den)
        b = _hyp_bundle(z)
        num = 2.0 * (l2 * (3.0 + l2) * b.one + (b.hm / z) * (1.0 + l2) ** 2)
        den = 2.0 * l2 * ((1.0 + l2) * b.h2 + b.one)
        return ProofQuantities(psi=num / den)
    if reg.kind is Regime.CUTOFF:
        return ProofQuantities(theta=k2 * (2.0 * k2 + 9.0) / (3.0 * (k2 + 1.0)))
    if reg.kind is Regime.PROPAGATING:
        num = k2 * (l2 * (3.0 - l2) + (_a_minus(z) / z) * (1.0 - l2) ** 2)
        den = math.sin(z) ** 2 + l2 * math.cos(z) ** 2
        return ProofQuantities(phi=num / den)
    n0, n1 = _xnorms_right_datum(k, reg, 0)
    return ProofQuantities(psi=n1 + (mu * mu + k2) * n0)
