"""Minimum traveling-wave speeds via the linear-front dispersion relation.

Ahead of an invasion front the linearized fields decay like exp(-m z) in
the co-moving coordinate z = x - c t.  Substituting that ansatz into the
linearization around the invaded state couples the decay rate m and the
speed c through

    (y - B) (y + A) = K,      y = c m,   B = m^2 + 2 nu m - mu1,

with (A, K) = (gamma + mu2, gamma) for mosquito invasion and
(A, K) = (sigma, mu1 sigma R0) for dengue dispersion.  The selected front
speed is the minimum of c(m) over m > 0; equivalently, -m* is a double
root of the characteristic cubic of the wave-frame linearization at
c = c_min (the tangency condition), because algebraically

    cubic(-m; c) = [(y - B)(y + A) - K] / c.

The minimum is located by a doubling bracket, golden-section search and a
Newton polish on the analytic derivative of c(m).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BracketingError, DomainError, NoFrontError, UnsupportedVariantError
from .params import (DAYS_PER_YEAR, DimensionalParams, NondimParams,
                     basic_offspring_number, nondimensionalize, speed_scale)
from .rootpoly import solve_cubic, solve_quadratic
from .stability import (SET_WAVE_ENDEMIC, SET_WAVE_FREE, EquilibriumDescriptor,
                        Spectrum, spectrum_from_factors)

MOSQUITO_INVASION = "mosquito-invasion"
DENGUE_DISPERSION = "dengue-dispersion"

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class CubicPoly:
    """Monic cubic lambda^3 + a2 lambda^2 + a1 lambda + a0."""

    a2: float
    a1: float
    a0: float
    provenance: str = "custom"

    def __post_init__(self):
        if not all(map(math.isfinite, (self.a2, self.a1, self.a0))):
            raise DomainError("cubic coefficients must be finite")

    def coefficients(self) -> np.ndarray:
        return np.array([1.0, self.a2, self.a1, self.a0])

    def __call__(self, lam: float) -> float:
        return ((lam + self.a2) * lam + self.a1) * lam + self.a0

    def derivative(self, lam: float) -> float:
        return (3.0 * lam + 2.0 * self.a2) * lam + self.a1

    def roots(self) -> tuple:
        return solve_cubic(self.a2, self.a1, self.a0)


def _front_constants(n: NondimParams, kind: str, v_star, h_star) -> tuple[float, float]:
    """(A, K) of the dispersion relation; validates the growth condition."""
    if kind == MOSQUITO_INVASION:
        a, k = n.gamma + n.mu2, n.gamma
        if k <= n.mu1 * a:
            raise NoFrontError(
                f"offspring number {basic_offspring_number(n):.6g} <= 1: "
                "no mosquito invasion front")
    elif kind == DENGUE_DISPERSION:
        if v_star is None or h_star is None:
            raise DomainError("dengue dispersion needs v_star and h_star")
        if v_star < 0.0 or not 0.0 <= h_star <= 1.0:
            raise DomainError("need v_star >= 0 and h_star in [0, 1]")
        u_star = v_star * n.gamma / (n.k * n.mu1)
        a = n.sigma
        k = n.beta1 * n.beta2 * u_star * h_star
        if k <= n.mu1 * a:
            r0 = k / (n.mu1 * n.sigma)
            raise NoFrontError(
                f"reproduction number {r0:.6g} <= 1: no dengue dispersion front")
    else:
        raise DomainError(f"unknown front kind {kind!r}")
    return a, k


def _speed_raw(m: float, mu1: float, a: float, k: float, nu: float) -> float:
    b = m * m + 2.0 * nu * m - mu1
    diff = b - a
    s = math.sqrt(diff * diff + 4.0 * (a * b + k))
    return 0.5 * (diff + s) / m


def _speed_slope_raw(m: float, mu1: float, a: float, k: float, nu: float) -> float:
    """Analytic d c / d m of the larger dispersion root."""
    b = m * m + 2.0 * nu * m - mu1
    db = 2.0 * m + 2.0 * nu
    diff = b - a
    s = math.sqrt(diff * diff + 4.0 * (a * b + k))
    y = 0.5 * (diff + s)
    dy = 0.5 * db * (1.0 + (b + a) / s)
    return (dy * m - y) / (m * m)


def dispersion_speed(m: float, n: NondimParams, kind: str,
                     v_star: float | None = None,
                     h_star: float | None = None) -> float:
    """Front speed forced by decay rate m (larger dispersion-relation root)."""
    if not m > 0.0:
        raise DomainError(f"decay rate m must be positive, got {m!r}")
    a, k = _front_constants(n, kind, v_star, h_star)
    return _speed_raw(m, n.mu1, a, k, n.nu)


def cubic_phat(n: NondimParams, c: float, kind: str,
               v_star: float | None = None,
               h_star: float | None = None) -> CubicPoly:
    """Characteristic cubic of the wave-frame linearization.

    This is the cubic factor of det(lambda I - J) for the 3-block carrying
    the front instability; its constant term is mu1 (gamma+mu2)(1-Q0)/c
    for mosquito invasion and mu1 sigma (1-R0)/c for dengue dispersion
    (negative in the respective front regimes, which is what makes a
    negative double root possible).
    """
    if c == 0.0:
        raise DomainError("c must be nonzero")
    if kind == MOSQUITO_INVASION:
        a = n.gamma + n.mu2
        k = n.gamma
        provenance = MOSQUITO_INVASION
    elif kind == DENGUE_DISPERSION:
        if v_star is None or h_star is None:
            raise DomainError("dengue dispersion needs v_star and h_star")
        u_star = v_star * n.gamma / (n.k * n.mu1)
        a = n.sigma
        k = n.beta1 * n.beta2 * u_star * h_star
        provenance = DENGUE_DISPERSION
    else:
        raise DomainError(f"unknown front kind {kind!r}")
    alpha = 2.0 * n.nu - c
    return CubicPoly(
        a2=-(alpha + a / c),
        a1=alpha * a / c - n.mu1,
        a0=(n.mu1 * a - k) / c,
        provenance=provenance,
    )


@dataclass(frozen=True)
class WaveSpeedResult:
    """Minimum front speed with its minimizer and tangency residuals."""

    c_min: float
    m_star: float
    front_kind: str
    tangency_residuals: tuple[float, float]
    c_bar_day: float | None = None
    c_bar_year: float | None = None


def min_wave_speed(n: NondimParams, kind: str,
                   v_star: float | None = None, h_star: float | None = None,
                   scale_km_per_day: float | None = None,
                   wind_sign: int = 1,
                   m_start: float = 1e-3, max_doublings: int = 60) -> WaveSpeedResult:
    """Minimum wave speed c_min = min_{m>0} c(m) with tangency verification.

    ``wind_sign=-1`` computes the speed of the front running against the
    wind (the left-moving front), by flipping the advection term in the
    dispersion relation.  When ``scale_km_per_day`` is given (the speed
    unit sqrt(r0_bar*D_bar)), dimensional speeds are attached.
    """
    a, k = _front_constants(n, kind, v_star, h_star)
    if wind_sign not in (1, -1):
        raise DomainError("wind_sign must be +1 or -1")
    nu = wind_sign * n.nu

    def c_of(m: float) -> float:
        return _speed_raw(m, n.mu1, a, k, nu)

    # bracket the minimum: march from m_start by doubling (halving if the
    # function already increases) until c turns upward
    m_prev, c_prev = m_start, c_of(m_start)
    m_mid, c_mid = 2.0 * m_start, c_of(2.0 * m_start)
    if c_mid >= c_prev:
        # already rising at m_start: the minimum sits at or left of it,
        # so walk a three-point window down by halving
        hi_m = m_mid
        mid_m, mid_c = m_prev, c_prev
        lo_m = m_start / 2.0
        lo_c = c_of(lo_m)
        steps = 0
        while lo_c < mid_c:
            hi_m = mid_m
            mid_m, mid_c = lo_m, lo_c
            lo_m /= 2.0
            lo_c = c_of(lo_m)
            steps += 1
            if steps > max_doublings:
                raise BracketingError(
                    f"no interior minimum found after {max_doublings} halvings "
                    f"from m={m_start!r}")
        bracket = (lo_m, hi_m)
    else:
        steps = 0
        m_hi, c_hi = 4.0 * m_start, c_of(4.0 * m_start)
        while c_hi <= c_mid:
            m_prev, c_prev = m_mid, c_mid
            m_mid, c_mid = m_hi, c_hi
            m_hi *= 2.0
            c_hi = c_of(m_hi)
            steps += 1
            if steps > max_doublings:
                raise BracketingError(
                    f"failed to bracket the minimum after {max_doublings} "
                    f"doublings from m={m_start!r}")
        bracket = (m_prev, m_hi)

    # golden-section to relative 1e-10 in m
    lo, hi = bracket
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = c_of(x1), c_of(x2)
    while (hi - lo) > 1e-10 * max(1e-12, 0.5 * (lo + hi)):
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = c_of(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = c_of(x2)
    m_star = 0.5 * (lo + hi)

    # Newton polish on dc/dm using the analytic slope
    for _ in range(4):
        g = _speed_slope_raw(m_star, n.mu1, a, k, nu)
        h = 1e-6 * m_star
        g2 = (_speed_slope_raw(m_star + h, n.mu1, a, k, nu)
              - _speed_slope_raw(m_star - h, n.mu1, a, k, nu)) / (2.0 * h)
        if g2 == 0.0:
            break
        step = g / g2
        candidate = m_star - step
        if not bracket[0] * 0.5 <= candidate <= bracket[1] * 2.0:
            break
        m_star = candidate
        if abs(step) <= 1e-14 * m_star:
            break

    c_min = c_of(m_star)

    # tangency: -m* must be a double root of the characteristic cubic
    nu_params = n if wind_sign == 1 else _with_nu(n, nu)
    cubic = cubic_phat(nu_params, c_min, kind, v_star=v_star, h_star=h_star)
    residuals = (abs(cubic(-m_star)), abs(cubic.derivative(-m_star)))

    c_day = c_year = None
    if scale_km_per_day is not None:
        c_day = c_min * scale_km_per_day
        c_year = c_day * DAYS_PER_YEAR
    return WaveSpeedResult(c_min=c_min, m_star=m_star, front_kind=kind,
                           tangency_residuals=residuals,
                           c_bar_day=c_day, c_bar_year=c_year)


def _with_nu(n: NondimParams, nu: float) -> NondimParams:
    # internal: bypass the nu >= 0 invariant for the against-the-wind front
    clone = object.__new__(NondimParams)
    for name, value in n.__dict__.items():
        object.__setattr__(clone, name, value)
    object.__setattr__(clone, "nu", nu)
    return clone


def dispersion_curve(n: NondimParams, kind: str, m_values,
                     v_star: float | None = None,
                     h_star: float | None = None) -> np.ndarray:
    """Sampled (m, c(m)) pairs, one row per decay rate."""
    a, k = _front_constants(n, kind, v_star, h_star)
    ms = np.asarray(m_values, dtype=float)
    if np.any(ms <= 0.0):
        raise DomainError("decay rates must be positive")
    cs = np.array([_speed_raw(m, n.mu1, a, k, n.nu) for m in ms])
    return np.column_stack([ms, cs])


# --- wave-frame Jacobians -----------------------------------------------------

def _require_linear_wave_scope(n: NondimParams):
    if n.p != 0.0 or n.q1 != 0.0 or n.q2 != 0.0:
        raise UnsupportedVariantError(
            "wave-frame linear analysis needs p = q1 = q2 = 0 "
            "(no linear dispersion relation exists otherwise)")
    if n.epsilon != 0.0:
        raise UnsupportedVariantError("wave-frame analysis assumes epsilon = 0")
    if n.mu3 != 0.0:
        raise UnsupportedVariantError("wave-frame analysis assumes mu3 = 0")


def wave_jacobian(point: EquilibriumDescriptor, n: NondimParams,
                  c: float) -> np.ndarray:
    """8x8 Jacobian of the wave system at a wave-frame rest point.

    State order (u, du, w, dw, v, h, I, r); exact entries, cross-checked
    against finite differences of the wave right-hand side in the tests.
    """
    if c <= 0.0:
        raise DomainError(f"c must be positive, got {c!r}")
    _require_linear_wave_scope(n)
    if point.set_id == SET_WAVE_FREE:
        u_star = 0.0
    elif point.set_id == SET_WAVE_ENDEMIC:
        u_star = point.u_star
    else:
        raise DomainError(f"expected a wave-frame point, got {point.set_id!r}")
    h = point.h_star
    alpha = 2.0 * n.nu - c
    b1u = n.beta1 * u_star
    return np.array([
        [0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        [n.mu1, alpha, 0.0, 0.0, -n.gamma / n.k, 0.0, b1u, 0.0],
        [0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, n.mu1, alpha, 0.0, 0.0, -b1u, 0.0],
        [-n.k / c, 0.0, -n.k / c, 0.0, (n.gamma + n.mu2) / c, 0.0, 0.0, 0.0],
        [0.0, 0.0, n.beta2 * h / c, 0.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -n.beta2 * h / c, 0.0, 0.0, 0.0, n.sigma / c, 0.0],
        [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -n.sigma / c, 0.0],
    ])


def wave_spectrum(point: EquilibriumDescriptor, n: NondimParams,
                  c: float) -> Spectrum:
    """Closed-form spectrum of the wave-frame Jacobian.

    Mosquito-free point: {0, 0, sigma/c} plus the roots of
    lambda^2 - (2nu - c) lambda - mu1 and of the invasion cubic.
    Persistent point: {0, 0} plus the dengue cubic (infected block) and
    the invasion cubic, whose constant term vanishes at unit offspring
    number.
    """
    if c <= 0.0:
        raise DomainError(f"c must be positive, got {c!r}")
    _require_linear_wave_scope(n)
    alpha = 2.0 * n.nu - c
    quad_transport = np.array([1.0, -alpha, -n.mu1])
    mosq = cubic_phat(n, c, MOSQUITO_INVASION).coefficients()
    if point.set_id == SET_WAVE_FREE:
        factors = (np.array([1.0, 0.0]), np.array([1.0, 0.0]),
                   np.array([1.0, -n.sigma / c]), quad_transport, mosq)
    elif point.set_id == SET_WAVE_ENDEMIC:
        dengue = cubic_phat(n, c, DENGUE_DISPERSION,
                            v_star=point.v_star, h_star=point.h_star).coefficients()
        factors = (np.array([1.0, 0.0]), np.array([1.0, 0.0]), dengue, mosq)
    else:
        raise DomainError(f"expected a wave-frame point, got {point.set_id!r}")
    return spectrum_from_factors(factors)


# --- parameter sweep ----------------------------------------------------------

SWEEP_CSV_HEADER = "v_star,c_min_nowind_km_per_year,c_min_wind_km_per_year"


@dataclass(frozen=True)
class SweepRow:
    v_star: float
    c_nowind: float | None    # km/year, None when no front exists
    c_wind: float | None


@dataclass(frozen=True)
class SweepTable:
    rows: tuple[SweepRow, ...]
    winds_km_per_year: tuple[float, float]
    h_star: float

    def to_csv(self) -> str:
        lines = [SWEEP_CSV_HEADER]
        for row in self.rows:
            cells = [f"{row.v_star:.4f}"]
            for value in (row.c_nowind, row.c_wind):
                cells.append("no-front" if value is None else f"{value:.4f}")
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"


def sweep_vstar(d_base: DimensionalParams, v_list,
                winds_km_per_year: tuple[float, float] = (0.0, 18.25),
                h_star: float = 1.0) -> SweepTable:
    """Dengue dispersion speeds (km/year) over aquatic backgrounds v*.

    Each row evaluates the minimum speed at two wind settings (given as the
    doubled wind speed 2*nu_bar in km/year).  Rows where the reproduction
    number is at most 1 are marked no-front instead of aborting the sweep.
    """
    scale = speed_scale(d_base)
    speeds_per_wind = []
    for wind in winds_km_per_year:
        nu2_day = wind / DAYS_PER_YEAR
        n = nondimensionalize(
            DimensionalParams(**{**d_base.__dict__, "nu2_bar": nu2_day}))
        column = []
        for v_star in v_list:
            if not v_star > 0.0:
                raise DomainError(f"v_star must be positive, got {v_star!r}")
            try:
                res = min_wave_speed(n, DENGUE_DISPERSION, v_star=v_star,
                                     h_star=h_star, scale_km_per_day=scale)
                column.append(res.c_bar_year)
            except NoFrontError:
                column.append(None)
        speeds_per_wind.append(column)
    rows = tuple(SweepRow(v, c0, c1) for v, c0, c1
                 in zip(v_list, speeds_per_wind[0], speeds_per_wind[1]))
    return SweepTable(rows=rows, winds_km_per_year=tuple(winds_km_per_year),
                      h_star=h_star)
