"""Equilibrium sets, Jacobians, closed-form spectra and classification.

The homogeneous analysis covers the Malthusian model without human
mortality.  Equilibria come in parametrized families: a mosquito-free line
(any susceptible fraction h*) and, exactly at unit offspring number, a
mosquito-persistent family.  Spectra are produced twice: from closed-form
polynomial factors (block structure + explicit root formulas) and from a
dense LAPACK solve, and the two routes are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import ModelVariant
from .errors import DomainError, UnsupportedVariantError
from .params import NondimParams, basic_offspring_number
from .rootpoly import poly_from_factors, solve_cubic, solve_quadratic

SET_MOSQUITO_FREE = "mosquito-free"
SET_MOSQUITO_ENDEMIC = "mosquito-endemic"
SET_MOSQUITO_RAY = "mosquito-ray"
SET_WAVE_FREE = "wave-mosquito-free"
SET_WAVE_ENDEMIC = "wave-mosquito-endemic"

DEFAULT_TOL_Q = 1e-9

ASYMPTOTICALLY_STABLE = "asymptotically-stable"
STABLE = "stable"
UNSTABLE = "unstable"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EquilibriumDescriptor:
    """A materialized equilibrium point of one of the named sets."""

    set_id: str
    h_star: float
    v_star: float
    state: tuple

    @property
    def u_star(self) -> float:
        return self.state[0]


def _check_h(h_star: float):
    if not 0.0 <= h_star <= 1.0:
        raise DomainError(f"h_star must lie in [0, 1], got {h_star!r}")


def _require_unit_offspring(n: NondimParams, tol_q: float, what: str) -> float:
    q0 = basic_offspring_number(n)
    if abs(q0 - 1.0) > tol_q * max(1.0, abs(q0)):
        raise DomainError(
            f"{what} exists only at unit offspring number "
            f"(got {q0!r}, tolerance {tol_q!r})")
    return q0


def mosquito_free_point(h_star: float = 1.0) -> EquilibriumDescriptor:
    """Point (0, 0, 0, h*, 0, 1-h*) of the mosquito-free family."""
    _check_h(h_star)
    return EquilibriumDescriptor(SET_MOSQUITO_FREE, h_star, 0.0,
                                 (0.0, 0.0, 0.0, h_star, 0.0, 1.0 - h_star))


def mosquito_endemic_point(n: NondimParams, h_star: float, v_star: float,
                           tol_q: float = DEFAULT_TOL_Q) -> EquilibriumDescriptor:
    """Point (v* gamma/(k mu1), 0, v*, h*, 0, 1-h*); needs offspring number 1."""
    _check_h(h_star)
    if v_star <= 0.0:
        raise DomainError(f"v_star must be positive, got {v_star!r}")
    _require_unit_offspring(n, tol_q, "the mosquito-persistent family")
    u_star = v_star * n.gamma / (n.k * n.mu1)
    return EquilibriumDescriptor(SET_MOSQUITO_ENDEMIC, h_star, v_star,
                                 (u_star, 0.0, v_star, h_star, 0.0, 1.0 - h_star))


def mosquito_ray_point(n: NondimParams, v_star: float,
                       tol_q: float = DEFAULT_TOL_Q) -> EquilibriumDescriptor:
    """Point (v* gamma/(k mu1), v*) of the winged/aquatic subsystem."""
    if v_star < 0.0:
        raise DomainError(f"v_star must be nonnegative, got {v_star!r}")
    if v_star > 0.0:
        _require_unit_offspring(n, tol_q, "a nontrivial subsystem equilibrium")
    u_star = v_star * n.gamma / (n.k * n.mu1)
    return EquilibriumDescriptor(SET_MOSQUITO_RAY, float("nan"), v_star,
                                 (u_star, v_star))


def wave_free_point(h_star: float = 1.0) -> EquilibriumDescriptor:
    """Wave-frame rest point (u, du, w, dw, v, h, I, r) = (0,0,0,0,0,h*,0,1-h*)."""
    _check_h(h_star)
    return EquilibriumDescriptor(SET_WAVE_FREE, h_star, 0.0,
                                 (0.0, 0.0, 0.0, 0.0, 0.0, h_star, 0.0, 1.0 - h_star))


def wave_endemic_point(n: NondimParams, h_star: float, v_star: float,
                       tol_q: float = DEFAULT_TOL_Q) -> EquilibriumDescriptor:
    """Wave-frame rest point with a persistent mosquito background."""
    _check_h(h_star)
    if v_star <= 0.0:
        raise DomainError(f"v_star must be positive, got {v_star!r}")
    _require_unit_offspring(n, tol_q, "the wave-frame persistent family")
    u_star = v_star * n.gamma / (n.k * n.mu1)
    return EquilibriumDescriptor(
        SET_WAVE_ENDEMIC, h_star, v_star,
        (u_star, 0.0, 0.0, 0.0, v_star, h_star, 0.0, 1.0 - h_star))


@dataclass(frozen=True)
class EquilibriumFamily:
    """A parametrized family of equilibria; ``point`` materializes members."""

    set_id: str
    params: NondimParams
    tol_q: float = DEFAULT_TOL_Q

    def point(self, h_star: float = 1.0, v_star: float = 0.7) -> EquilibriumDescriptor:
        if self.set_id == SET_MOSQUITO_FREE:
            return mosquito_free_point(h_star)
        if self.set_id == SET_MOSQUITO_ENDEMIC:
            return mosquito_endemic_point(self.params, h_star, v_star, self.tol_q)
        raise DomainError(f"unknown family {self.set_id!r}")


@dataclass(frozen=True)
class EquilibriaResult:
    """Equilibrium families of the homogeneous system plus det(A) = 1 - Q0."""

    det_A: float
    Q0: float
    families: tuple


def equilibria(n: NondimParams, m: ModelVariant,
               tol_q: float = DEFAULT_TOL_Q) -> EquilibriaResult:
    """Enumerate equilibrium families of the homogeneous Malthusian system.

    Only the saturation-free variant without the aquatic boost (malthus-2,
    or family with eps = 0) and mu3 = 0 is analyzed; the uniqueness
    determinant det(A) = 1 - Q0 decides whether the persistent family
    exists.
    """
    if not m.is_malthus2_like:
        raise UnsupportedVariantError(
            f"equilibrium analysis is implemented for malthus-2 only, got {m.tag!r}")
    if n.mu3 != 0.0:
        raise UnsupportedVariantError(
            "equilibrium analysis assumes zero human mortality (mu3 = 0)")
    q0 = basic_offspring_number(n)
    det_a = 1.0 - q0
    families = [EquilibriumFamily(SET_MOSQUITO_FREE, n, tol_q)]
    if abs(q0 - 1.0) <= tol_q * max(1.0, abs(q0)):
        families.append(EquilibriumFamily(SET_MOSQUITO_ENDEMIC, n, tol_q))
    return EquilibriaResult(det_A=det_a, Q0=q0, families=tuple(families))


# --- Jacobians ---------------------------------------------------------------

def _check_endemic_consistency(point: EquilibriumDescriptor, n: NondimParams):
    expected = point.v_star * n.gamma / (n.k * n.mu1)
    if abs(point.u_star - expected) > 1e-9 * max(1.0, abs(expected)):
        raise DomainError(
            "descriptor/parameter mismatch: u* = {:.6g} but v**gamma/(k*mu1) "
            "= {:.6g} for these parameters".format(point.u_star, expected))


def jacobian_homog(point: EquilibriumDescriptor, n: NondimParams) -> np.ndarray:
    """6x6 Jacobian of the homogeneous system at a materialized point."""
    if point.set_id == SET_MOSQUITO_FREE:
        u_star = 0.0
    elif point.set_id == SET_MOSQUITO_ENDEMIC:
        _check_endemic_consistency(point, n)
        u_star = point.u_star
    else:
        raise DomainError(f"jacobian_homog expects a homogeneous point, "
                          f"got {point.set_id!r}")
    h = point.h_star
    g_over_k = n.gamma / n.k
    b1u = n.beta1 * u_star
    return np.array([
        [-n.mu1, 0.0, g_over_k, 0.0, -b1u, 0.0],
        [0.0, -n.mu1, 0.0, 0.0, b1u, 0.0],
        [n.k, n.k, -(n.gamma + n.mu2), 0.0, 0.0, 0.0],
        [0.0, -n.beta2 * h, 0.0, 0.0, 0.0, 0.0],
        [0.0, n.beta2 * h, 0.0, 0.0, -n.sigma, 0.0],
        [0.0, 0.0, 0.0, 0.0, n.sigma, 0.0],
    ])


def mosquito_jacobian(n: NondimParams) -> np.ndarray:
    """2x2 Jacobian of the winged/aquatic subsystem (same at every ray point)."""
    return np.array([
        [-n.mu1, n.gamma / n.k],
        [n.k, -(n.gamma + n.mu2)],
    ])


# --- spectra ------------------------------------------------------------------

@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset with its provenance and any polynomial factors."""

    eigenvalues: tuple
    source: str                       # "closed-form" | "dense"
    factors: tuple = ()               # coefficient arrays, descending powers

    def max_real_part(self) -> float:
        return max(ev.real for ev in self.eigenvalues)


def dense_spectrum(matrix: np.ndarray) -> Spectrum:
    """Independent dense eigenvalue route (LAPACK)."""
    eigs = np.linalg.eigvals(np.asarray(matrix, dtype=float))
    return Spectrum(tuple(complex(e) for e in eigs), source="dense")


def char_factors_homog(point: EquilibriumDescriptor, n: NondimParams) -> tuple:
    """Closed-form factorization of det(lambda I - J) at a homogeneous point.

    Mosquito-free: lambda^2 * (lambda + mu1) * (lambda + sigma) * P1 with
    P1 = lambda^2 + (gamma+mu1+mu2) lambda + mu1 (1-Q0)(gamma+mu2).
    Persistent: lambda^2 * P2 * P3 with P2 = P1 and
    P3 = lambda^2 + (mu1+sigma) lambda + mu1 sigma (1 - R0).
    """
    q0 = basic_offspring_number(n)
    p_growth = np.array([1.0, n.gamma + n.mu1 + n.mu2,
                         n.mu1 * (1.0 - q0) * (n.gamma + n.mu2)])
    if point.set_id == SET_MOSQUITO_FREE:
        return (np.array([1.0, 0.0]), np.array([1.0, 0.0]),
                np.array([1.0, n.mu1]), np.array([1.0, n.sigma]), p_growth)
    if point.set_id == SET_MOSQUITO_ENDEMIC:
        _check_endemic_consistency(point, n)
        r0 = n.beta1 * n.beta2 * point.h_star * point.u_star / (n.mu1 * n.sigma)
        p_infection = np.array([1.0, n.mu1 + n.sigma,
                                n.mu1 * n.sigma * (1.0 - r0)])
        return (np.array([1.0, 0.0]), np.array([1.0, 0.0]),
                p_growth, p_infection)
    raise DomainError(f"char_factors_homog expects a homogeneous point, "
                      f"got {point.set_id!r}")


def _roots_of_factor(coeffs: np.ndarray) -> list:
    c = np.asarray(coeffs, dtype=float)
    if len(c) == 2:
        return [complex(-c[1] / c[0])]
    if len(c) == 3:
        return list(solve_quadratic(c[1] / c[0], c[2] / c[0]))
    if len(c) == 4:
        return list(solve_cubic(c[1] / c[0], c[2] / c[0], c[3] / c[0]))
    raise DomainError(f"unsupported factor degree {len(c) - 1}")


def spectrum_from_factors(factors) -> Spectrum:
    eigs = []
    for f in factors:
        eigs.extend(_roots_of_factor(f))
    return Spectrum(tuple(eigs), source="closed-form", factors=tuple(factors))


def homog_spectrum(point: EquilibriumDescriptor, n: NondimParams) -> Spectrum:
    """Closed-form spectrum of the 6x6 homogeneous Jacobian."""
    return spectrum_from_factors(char_factors_homog(point, n))


def char_poly_coefficients(factors) -> np.ndarray:
    """Expand a factor list into full characteristic polynomial coefficients."""
    return poly_from_factors(factors)


@dataclass(frozen=True)
class MosquitoSpectrumReport:
    """Spectrum of the 2x2 subsystem Jacobian with both constant-term forms.

    The default closed form is the characteristic polynomial of the matrix
    computed from scratch: lambda^2 + (gamma+mu1+mu2) lambda
    - mu1 (gamma+mu2)(Q0-1).  An alternative convention replaces
    (gamma+mu2) by (gamma+mu1) in the constant term; it is retained for
    comparison and the disagreement between the two is surfaced here.
    """

    spectrum: Spectrum
    dense: Spectrum
    char_coefficients: tuple
    alt_constant_coefficients: tuple
    constant_terms_agree: bool
    note: str


def mosquito_jacobian_spectrum(n: NondimParams,
                               alt_constant: bool = False) -> MosquitoSpectrumReport:
    """Closed-form eigenvalues of the winged/aquatic subsystem Jacobian.

    lambda_{1,2} = 1/2 [-(gamma+mu1+mu2) +- sqrt((gamma+mu1+mu2)^2
    + 4 mu1 (gamma+mu2)(Q0-1))]; ``alt_constant`` switches the constant
    term to the (gamma+mu1) variant.
    """
    q0 = basic_offspring_number(n)
    trace_term = n.gamma + n.mu1 + n.mu2
    const_default = -n.mu1 * (n.gamma + n.mu2) * (q0 - 1.0)
    const_alt = -n.mu1 * (n.gamma + n.mu1) * (q0 - 1.0)
    const = const_alt if alt_constant else const_default
    factor = np.array([1.0, trace_term, const])
    spec = spectrum_from_factors([factor])
    dense = dense_spectrum(mosquito_jacobian(n))
    agree = abs(const_default - const_alt) <= 1e-12 * max(1.0, abs(const_default))
    note = ("constant-term conventions agree" if agree else
            "constant-term conventions differ: matrix characteristic polynomial "
            f"gives {const_default:.6g}, the (gamma+mu1) variant {const_alt:.6g}; "
            "the default follows the matrix")
    return MosquitoSpectrumReport(
        spectrum=spec, dense=dense,
        char_coefficients=(1.0, trace_term, const_default),
        alt_constant_coefficients=(1.0, trace_term, const_alt),
        constant_terms_agree=agree, note=note)


def routh_hurwitz_quadratic(a1: float, a0: float) -> bool:
    """True iff all roots of lambda^2 + a1 lambda + a0 have negative real part."""
    return a1 > 0.0 and a0 > 0.0


def match_spectra(a: Spectrum, b: Spectrum) -> float:
    """Largest pairing distance between two eigenvalue multisets."""
    from scipy.optimize import linear_sum_assignment

    ea = np.array(a.eigenvalues)
    eb = np.array(b.eigenvalues)
    if ea.shape != eb.shape:
        raise DomainError("spectra have different sizes")
    cost = np.abs(ea[:, None] - eb[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


# --- classification -----------------------------------------------------------

@dataclass(frozen=True)
class StabilityReport:
    """Classification of an equilibrium with the justifying witness."""

    classification: str
    point: EquilibriumDescriptor
    scope: str
    witness_value: complex
    witness: str
    eigenvalues: tuple
    Q0: float
    R0: float | None = None
    notes: str = ""

    def to_text(self) -> str:
        lines = [
            "stability report",
            "================",
            f"set: {self.point.set_id}",
            f"point: {tuple(round(x, 12) for x in self.point.state)}",
            f"scope: {self.scope}",
            f"offspring number: {self.Q0:.6g}",
        ]
        if self.R0 is not None:
            lines.append(f"reproduction number: {self.R0:.6g}")
        lines.append(f"classification: {self.classification}")
        lines.append(f"witness: {self.witness}")
        lines.append("eigenvalues (re, im):")
        for ev in self.eigenvalues:
            lines.append(f"  ({ev.real:+.12e}, {ev.imag:+.12e})")
        if self.notes:
            lines.append(f"notes: {self.notes}")
        return "\n".join(lines)


def classify(point: EquilibriumDescriptor, n: NondimParams, scope: str = "full6",
             tol_q: float = DEFAULT_TOL_Q) -> StabilityReport:
    """Classify an equilibrium point by its linearization.

    mosquito2 scope: origin is asymptotically stable for Q0 < 1, unstable
    for Q0 > 1; at Q0 = 1 every ray point (origin included) is stable
    because the subsystem is linear.  full6 scope: mosquito-free points are
    unstable for Q0 > 1; persistent points are unstable for R0 > 1; any
    remaining case has a zero eigenvalue with nonlinear dynamics and is
    reported inconclusive.
    """
    q0 = basic_offspring_number(n)
    at_unit_q0 = abs(q0 - 1.0) <= tol_q * max(1.0, abs(q0))

    if scope == "mosquito2":
        if point.set_id != SET_MOSQUITO_RAY:
            raise DomainError("mosquito2 scope expects a subsystem ray point")
        report = mosquito_jacobian_spectrum(n)
        eigs = report.spectrum.eigenvalues
        if at_unit_q0:
            cls = STABLE
            witness_value = min(eigs, key=lambda e: abs(e))
            witness = ("zero eigenvalue with the rest negative; subsystem "
                       "dynamics are linear, so stability (not asymptotic) follows")
        elif q0 < 1.0:
            cls = ASYMPTOTICALLY_STABLE
            witness_value = max(eigs, key=lambda e: e.real)
            witness = (f"all real parts negative (max {witness_value.real:.6g}); "
                       f"offspring number {q0:.6g} < 1")
        else:
            witness_value = max(eigs, key=lambda e: e.real)
            cls = UNSTABLE
            witness = (f"eigenvalue {witness_value.real:.6g} > 0; "
                       f"offspring number {q0:.6g} > 1")
        return StabilityReport(cls, point, scope, witness_value, witness,
                               eigs, q0, notes=report.note)

    if scope != "full6":
        raise DomainError(f"unknown scope {scope!r}")

    spec = homog_spectrum(point, n)
    eigs = spec.eigenvalues
    r0 = None
    if point.set_id == SET_MOSQUITO_ENDEMIC:
        r0 = n.beta1 * n.beta2 * point.h_star * point.u_star / (n.mu1 * n.sigma)

    positive = [ev for ev in eigs if ev.real > 1e-12]
    if point.set_id == SET_MOSQUITO_FREE and q0 > 1.0 and not at_unit_q0:
        witness_value = max(positive, key=lambda e: e.real)
        return StabilityReport(
            UNSTABLE, point, scope, witness_value,
            f"eigenvalue {witness_value.real:.6g} > 0 (offspring number "
            f"{q0:.6g} > 1)", eigs, q0, r0)
    if point.set_id == SET_MOSQUITO_ENDEMIC and r0 is not None and r0 > 1.0:
        witness_value = max(positive, key=lambda e: e.real)
        return StabilityReport(
            UNSTABLE, point, scope, witness_value,
            f"eigenvalue {witness_value.real:.6g} > 0 (reproduction number "
            f"{r0:.6g} > 1)", eigs, q0, r0)
    if positive:
        witness_value = max(positive, key=lambda e: e.real)
        return StabilityReport(
            UNSTABLE, point, scope, witness_value,
            f"eigenvalue {witness_value.real:.6g} > 0", eigs, q0, r0)
    zero = min(eigs, key=lambda e: abs(e))
    return StabilityReport(
        INCONCLUSIVE, point, scope, zero,
        "zero eigenvalue with nonlinear dynamics in its directions; "
        "linearization cannot decide", eigs, q0, r0)
