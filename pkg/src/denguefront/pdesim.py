"""Time integration: homogeneous ODEs, wave-profile ODEs, and PDE fronts.

The homogeneous and profile systems go through an adaptive embedded
Runge-Kutta pair (scipy DOP853).  The PDE fronts are stepped explicitly
(Euler or midpoint RK2) on a uniform grid; the invasion front position is
the outermost threshold crossing of the tracked compartment and its speed
is a least-squares slope over the post-transient window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .dynamics import HomogState, ModelVariant, WaveState, homog_rhs, pde_rhs, travelwave_rhs
from .errors import (DivergenceError, DomainError, NoFrontError,
                     StiffnessError, TruncationError, UnsupportedVariantError)
from .params import NondimParams, basic_offspring_number

BLOWUP_NORM = 1e12


@dataclass(frozen=True)
class Trajectory:
    """Dense ODE solution samples with the interpolant used to produce them."""

    t: np.ndarray
    y: np.ndarray              # (n_components, n_times)
    sol: object                # callable t -> state vector

    def state_at(self, t: float) -> np.ndarray:
        return self.sol(t)

    @property
    def final(self) -> np.ndarray:
        return self.y[:, -1]

    def simplex_error(self) -> float:
        """max |h + I + r - 1| along the trajectory (6-component runs)."""
        if self.y.shape[0] != 6:
            raise DomainError("simplex error is defined for homogeneous runs")
        return float(np.abs(self.y[3] + self.y[4] + self.y[5] - 1.0).max())


def integrate_homog(s0, n: NondimParams, m: ModelVariant, t_end: float,
                    tol: float = 1e-9, n_samples: int = 400) -> Trajectory:
    """Integrate the homogeneous system with an adaptive embedded RK pair."""
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")
    y0 = s0.as_array() if isinstance(s0, HomogState) else np.asarray(s0, dtype=float)
    res = solve_ivp(lambda _, y: homog_rhs(y, n, m), (0.0, t_end), y0,
                    method="DOP853", rtol=tol, atol=tol * 1e-3,
                    dense_output=True,
                    t_eval=np.linspace(0.0, t_end, n_samples))
    if not res.success:
        raise StiffnessError(
            f"adaptive step failed: {res.message}",
            t=float(res.t[-1]) if len(res.t) else 0.0,
            state=res.y[:, -1] if res.y.size else y0)
    return Trajectory(t=res.t, y=res.y, sol=res.sol)


def integrate_profile(c: float, n: NondimParams, start, z_span,
                      tol: float = 1e-9, n_samples: int = 400) -> Trajectory:
    """Integrate the wave-profile system over a z interval.

    Raises DivergenceError when the state norm passes the blow-up
    threshold (the co-moving system is strongly unstable off the stable
    manifold, so divergence is the generic outcome for long spans).
    """
    if c == 0.0:
        raise DomainError("wave speed c must be nonzero")
    y0 = start.as_array() if isinstance(start, WaveState) else np.asarray(start, dtype=float)

    def blowup(_, y):
        return float(np.linalg.norm(y)) - BLOWUP_NORM
    blowup.terminal = True
    blowup.direction = 1.0

    res = solve_ivp(lambda _, y: travelwave_rhs(y, n, c=c), tuple(z_span), y0,
                    method="DOP853", rtol=tol, atol=tol * 1e-3,
                    dense_output=True, events=blowup,
                    t_eval=np.linspace(z_span[0], z_span[1], n_samples))
    if res.t_events and len(res.t_events[0]):
        z_hit = float(res.t_events[0][0])
        raise DivergenceError(
            f"profile norm exceeded {BLOWUP_NORM:g} at z = {z_hit:.6g}",
            z=z_hit, state=res.y_events[0][0])
    if not res.success:
        raise StiffnessError(f"profile integration failed: {res.message}",
                             t=float(res.t[-1]) if len(res.t) else z_span[0],
                             state=res.y[:, -1] if res.y.size else y0)
    return Trajectory(t=res.t, y=res.y, sol=res.sol)


# --- front simulation ---------------------------------------------------------

@dataclass(frozen=True)
class SimConfig:
    """Grid, stepping and seeding choices for a front run.

    The default domain/horizon (L=220, N=2201, T=300) keeps the slow
    logarithmic transient of pulled fronts small enough for a linear speed
    fit while finishing in seconds.  ``dt=None`` picks the largest stable
    explicit step safety*dx^2/(2*max(M^p)) evaluated on the initial data.
    """

    L: float = 220.0
    N: int = 2201
    T: float = 300.0
    dt: float | None = None
    bc: str = "zero-flux"
    stepper: str = "euler"
    seed_amplitude: float = 0.5
    seed_width: float = 2.0
    seed_position: float = 0.0
    threshold: float = 0.1
    sample_interval: float = 0.5
    snapshot_count: int = 9
    direction: str = "right"
    background_v_star: float = 0.7
    safety: float = 0.4
    fit_fraction: float = 0.6           # trailing fraction of samples fitted

    def __post_init__(self):
        if not self.L > 0.0:
            raise DomainError("L must be positive")
        if self.N < 5:
            raise DomainError("need at least 5 grid nodes")
        if not self.T > 0.0:
            raise DomainError("T must be positive")
        if self.dt is not None and not 0.0 < self.dt:
            raise DomainError("dt must be positive")
        if self.bc not in ("zero-flux", "fixed"):
            raise DomainError(f"unknown boundary condition {self.bc!r}")
        if self.stepper not in ("euler", "rk2"):
            raise DomainError(f"unknown stepper {self.stepper!r}")
        if not 0.0 < self.threshold < 1.0:
            raise DomainError("threshold must lie in (0, 1)")
        if self.direction not in ("right", "left"):
            raise DomainError(f"direction must be 'right' or 'left'")
        if not 0.0 < self.fit_fraction <= 1.0:
            raise DomainError("fit_fraction must lie in (0, 1]")
        if not 0.0 < self.safety <= 1.0:
            raise DomainError("safety must lie in (0, 1]")

    @property
    def dx(self) -> float:
        return self.L / (self.N - 1)

    def stable_dt(self, max_mp: float = 1.0) -> float:
        return self.safety * self.dx ** 2 / (2.0 * max(max_mp, 1e-300))


@dataclass(frozen=True)
class FrontTrace:
    """Threshold-crossing positions over time and the fitted speed."""

    times: np.ndarray
    positions: np.ndarray       # NaN where the threshold was not crossed
    speed: float | None
    intercept: float
    r_squared: float
    rms_residual: float
    window_start: int
    no_front: bool

    def to_csv(self) -> str:
        lines = ["t,x_front"]
        for t, x in zip(self.times, self.positions):
            lines.append(f"{t:.6f},{'' if math.isnan(x) else format(x, '.6f')}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SimResult:
    config: SimConfig
    kind: str
    x: np.ndarray
    snapshots: tuple           # (t, fields (6, N)) pairs
    trace: FrontTrace
    conservation_error: float
    reference_level: float
    threshold_value: float

    def snapshot_csv(self, index: int) -> str:
        t, fields = self.snapshots[index]
        lines = [f"x,u,w,v,h,I,r"]
        for j in range(fields.shape[1]):
            vals = ",".join(f"{fields[i, j]:.8e}" for i in range(6))
            lines.append(f"{self.x[j]:.6f},{vals}")
        return "\n".join(lines) + "\n"


def saturated_coexistence(n: NondimParams) -> tuple[float, float]:
    """Uninfected coexistence state (u_c, v_c) of the saturated model.

    u_c = mu1 (gamma+mu2)(Q0-1) / (gamma + mu1 k); exists for Q0 > 1.
    """
    q0 = basic_offspring_number(n)
    if q0 <= 1.0:
        raise NoFrontError(f"offspring number {q0:.6g} <= 1: extinction, "
                           "no coexistence plateau")
    u_c = (n.gamma - n.mu1 * (n.gamma + n.mu2)) / (n.gamma + n.mu1 * n.k)
    v_c = n.k * u_c / (n.k * u_c + n.mu2 + n.gamma)
    return u_c, v_c


MOSQUITO_INVASION = "mosquito-invasion"
DENGUE_DISPERSION = "dengue-dispersion"


def _initial_fields(cfg: SimConfig, n: NondimParams, m: ModelVariant,
                    kind: str, x: np.ndarray) -> tuple[np.ndarray, float, int]:
    """Initial data, threshold reference level, and tracked field row."""
    fields = np.zeros((6, x.size))
    seed = cfg.seed_amplitude * np.exp(
        -((x - cfg.seed_position) ** 2) / (2.0 * cfg.seed_width ** 2))
    fields[3] = 1.0  # fully susceptible humans
    if kind == MOSQUITO_INVASION:
        fields[0] = seed
        if m.tag == "saturated":
            ref, _ = saturated_coexistence(n)
        else:
            ref = 10.0 * cfg.seed_amplitude
        return fields, ref, 0
    if kind == DENGUE_DISPERSION:
        if m.tag == "saturated":
            u_bg, v_bg = saturated_coexistence(n)
        else:
            q0 = basic_offspring_number(n)
            if abs(q0 - 1.0) > 1e-6:
                raise UnsupportedVariantError(
                    "Malthusian dengue runs need a persistent background "
                    f"(unit offspring number); got {q0:.6g}")
            v_bg = cfg.background_v_star
            u_bg = v_bg * n.gamma / (n.k * n.mu1)
        fields[0] = u_bg
        fields[2] = v_bg
        fields[1] = seed
        return fields, 10.0 * cfg.seed_amplitude, 1
    raise DomainError(f"unknown front kind {kind!r}")


def _crossing(x: np.ndarray, values: np.ndarray, level: float,
              direction: str) -> float:
    """Outermost linear-interpolated crossing of ``level``; NaN if none."""
    above = values >= level
    if not above.any():
        return float("nan")
    if direction == "right":
        i = int(np.max(np.nonzero(above)))
        if i == x.size - 1:
            return float(x[-1])
        x0, x1 = x[i], x[i + 1]
        v0, v1 = values[i], values[i + 1]
    else:
        i = int(np.min(np.nonzero(above)))
        if i == 0:
            return float(x[0])
        x0, x1 = x[i], x[i - 1]
        v0, v1 = values[i], values[i - 1]
    if v0 == v1:
        return float(x0)
    return float(x0 + (x1 - x0) * (v0 - level) / (v0 - v1))


def _fit_front(times: np.ndarray, positions: np.ndarray,
               fit_fraction: float) -> FrontTrace:
    n_total = len(times)
    start = max(0, int(math.ceil((1.0 - fit_fraction) * n_total)))
    t_fit = times[start:]
    x_fit = positions[start:]
    valid = ~np.isnan(x_fit)
    if valid.sum() < 3:
        return FrontTrace(times=times, positions=positions, speed=None,
                          intercept=float("nan"), r_squared=float("nan"),
                          rms_residual=float("nan"), window_start=start,
                          no_front=True)
    t_v, x_v = t_fit[valid], x_fit[valid]
    slope, intercept = np.polyfit(t_v, x_v, 1)
    pred = slope * t_v + intercept
    ss_res = float(np.sum((x_v - pred) ** 2))
    ss_tot = float(np.sum((x_v - x_v.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0.0 else 1.0
    return FrontTrace(times=times, positions=positions, speed=float(slope),
                      intercept=float(intercept), r_squared=r2,
                      rms_residual=math.sqrt(ss_res / valid.sum()),
                      window_start=start, no_front=False)


def simulate_front(cfg: SimConfig, n: NondimParams, m: ModelVariant,
                   kind: str = MOSQUITO_INVASION) -> SimResult:
    """Run a front simulation and measure the empirical spreading speed.

    Steps the semidiscrete system explicitly, records the outermost
    threshold crossing of the tracked compartment at every sample time,
    and fits the speed over the trailing window.  A front that comes
    within 5 dx of the domain edge raises TruncationError; a run where the
    threshold is never crossed returns a no-front trace rather than
    raising.
    """
    x = np.linspace(0.0, cfg.L, cfg.N)
    dx = cfg.dx
    fields, ref, row = _initial_fields(cfg, n, m, kind, x)
    threshold_value = cfg.threshold * ref

    p_eff = 0.0 if m.tag == "saturated" else n.p
    max_mp = float(np.max((fields[0] + fields[1]) ** p_eff)) if p_eff != 0.0 else 1.0
    dt_bound = cfg.stable_dt(max_mp)
    dt = cfg.dt if cfg.dt is not None else dt_bound
    if dt > dt_bound * (1.0 + 1e-12):
        raise DomainError(
            f"dt={dt!r} violates the explicit stability bound {dt_bound:.6g}")

    steps_per_sample = max(1, int(math.ceil(cfg.sample_interval / dt)))
    dt = cfg.sample_interval / steps_per_sample
    n_sample = int(round(cfg.T / cfg.sample_interval))
    snapshot_at = set(np.linspace(0, n_sample, cfg.snapshot_count, dtype=int))

    def rhs(f):
        return pde_rhs(f, n, m, dx, bc=cfg.bc)

    times = np.empty(n_sample + 1)
    positions = np.empty(n_sample + 1)
    snapshots = []
    conservation = 0.0
    guard = 5.0 * dx

    t = 0.0
    for s in range(n_sample + 1):
        times[s] = t
        positions[s] = _crossing(x, fields[row], threshold_value, cfg.direction)
        conservation = max(conservation, float(
            np.abs(fields[3] + fields[4] + fields[5] - 1.0).max()))
        if not math.isnan(positions[s]):
            if cfg.direction == "right" and positions[s] > cfg.L - guard:
                raise TruncationError(
                    f"front reached x={positions[s]:.3f} within 5 dx of the "
                    f"right edge at t={t:.3f}; increase L")
            if cfg.direction == "left" and positions[s] < guard:
                raise TruncationError(
                    f"front reached x={positions[s]:.3f} within 5 dx of the "
                    f"left edge at t={t:.3f}; increase L")
        if s in snapshot_at:
            snapshots.append((t, fields.copy()))
        if s == n_sample:
            break
        for _ in range(steps_per_sample):
            if cfg.stepper == "euler":
                fields = fields + dt * rhs(fields)
            else:
                k1 = rhs(fields)
                k2 = rhs(fields + 0.5 * dt * k1)
                fields = fields + dt * k2
        t += cfg.sample_interval

    trace = _fit_front(times, positions, cfg.fit_fraction)
    return SimResult(config=cfg, kind=kind, x=x, snapshots=tuple(snapshots),
                     trace=trace, conservation_error=conservation,
                     reference_level=ref, threshold_value=threshold_value)
