"""Point-symmetry catalog and numerical equivariance checks.

Fields live as vectorized callables (x, t) -> value, so group actions
(translations, scalings, shears, superpositions) compose exactly with no
resampling error.  The residual operators of the model family are
evaluated with 4th-order central differences; a transformation is checked
by comparing residuals before and after against the known per-equation
scaling.

The catalog covers space/time translations (admitted for every parameter
set) and seven constrained extensions, keyed "1".."7".  Constraint rows
are encoded exactly as cataloged; two caveats are recorded in the notes of
cases 5 and 6 where the cataloged row is broader than what residual
preservation actually needs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AdmissibilityError, DomainError
from .params import NondimParams

EQUATION_NAMES = ("winged-uninfected", "winged-infected", "aquatic",
                  "susceptible", "infected", "recovered")


@dataclass(frozen=True)
class FieldSet:
    """Six space-time fields as vectorized callables f(x, t)."""

    u: object
    w: object
    v: object
    h: object
    I: object
    r: object

    def components(self) -> tuple:
        return (self.u, self.w, self.v, self.h, self.I, self.r)

    @classmethod
    def constant(cls, u=0.0, w=0.0, v=0.0, h=1.0, I=0.0, r=0.0) -> "FieldSet":
        def const(value):
            return lambda x, t: value + 0.0 * (np.asarray(x, float) + np.asarray(t, float))
        return cls(*(const(val) for val in (u, w, v, h, I, r)))

    @classmethod
    def from_trajectory(cls, traj) -> "FieldSet":
        """Spatially homogeneous fields from a dense ODE solution."""
        def comp(idx):
            def f(x, t):
                tt = np.asarray(t, dtype=float)
                vals = np.asarray(traj.sol(tt.ravel()))[idx].reshape(tt.shape)
                return vals + 0.0 * np.asarray(x, dtype=float)
            return f
        return cls(*(comp(i) for i in range(6)))

    def shifted(self, dx_: float = 0.0, dt_: float = 0.0) -> "FieldSet":
        def shift(f):
            return lambda x, t: f(np.asarray(x, float) - dx_, np.asarray(t, float) - dt_)
        return FieldSet(*(shift(f) for f in self.components()))

    def perturbed(self, equation: int, bump) -> "FieldSet":
        """Add ``bump(x, t)`` to one component (for controlled residuals)."""
        comps = list(self.components())
        base = comps[equation]
        comps[equation] = lambda x, t, _b=base: _b(x, t) + bump(x, t)
        return FieldSet(*comps)


# --- residual evaluation -------------------------------------------------------

@dataclass(frozen=True)
class Grid:
    """Uniform space-time evaluation grid (at least 5 points per axis)."""

    x: np.ndarray
    t: np.ndarray

    def __post_init__(self):
        for name, axis in (("x", self.x), ("t", self.t)):
            arr = np.asarray(axis, dtype=float)
            if arr.ndim != 1 or arr.size < 5:
                raise DomainError(f"grid axis {name} needs at least 5 points")
            steps = np.diff(arr)
            if not np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
                raise DomainError(f"grid axis {name} must be uniform")
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "t", np.asarray(self.t, dtype=float))

    @classmethod
    def regular(cls, x0: float, x1: float, nx: int, t0: float, t1: float,
                nt: int) -> "Grid":
        return cls(np.linspace(x0, x1, nx), np.linspace(t0, t1, nt))

    @property
    def dx(self) -> float:
        return float(self.x[1] - self.x[0])

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])


def _d_dt(arr: np.ndarray, dt: float) -> np.ndarray:
    return (-arr[4:, :] + 8.0 * arr[3:-1, :] - 8.0 * arr[1:-3, :] + arr[:-4, :]) / (12.0 * dt)


def _d_dx(arr: np.ndarray, dx: float) -> np.ndarray:
    return (-arr[:, 4:] + 8.0 * arr[:, 3:-1] - 8.0 * arr[:, 1:-3] + arr[:, :-4]) / (12.0 * dx)


def _d2_dx2(arr: np.ndarray, dx: float) -> np.ndarray:
    return (-arr[:, 4:] + 16.0 * arr[:, 3:-1] - 30.0 * arr[:, 2:-2]
            + 16.0 * arr[:, 1:-3] - arr[:, :-4]) / (12.0 * dx * dx)


@dataclass(frozen=True)
class ResidualSample:
    """The six family residuals evaluated on a grid."""

    grid: Grid
    residuals: np.ndarray          # (6, nt, nx)

    def max_norms(self) -> np.ndarray:
        return np.max(np.abs(self.residuals), axis=(1, 2))

    @property
    def max_norm(self) -> float:
        return float(np.abs(self.residuals).max())


def residual(fields: FieldSet, n: NondimParams, grid: Grid) -> ResidualSample:
    """Evaluate the six family residual operators by central differences.

    Fields are sampled with a two-point stencil margin beyond the grid on
    both axes (4th-order first and second derivatives).
    """
    dx, dt = grid.dx, grid.dt
    x_ext = np.concatenate(([grid.x[0] - 2 * dx, grid.x[0] - dx], grid.x,
                            [grid.x[-1] + dx, grid.x[-1] + 2 * dx]))
    t_ext = np.concatenate(([grid.t[0] - 2 * dt, grid.t[0] - dt], grid.t,
                            [grid.t[-1] + dt, grid.t[-1] + 2 * dt]))
    X, T = np.meshgrid(x_ext, t_ext)          # shapes (nt+4, nx+4)

    U, W, V, H, I, R = (np.broadcast_to(np.asarray(f(X, T), dtype=float), X.shape)
                        for f in fields.components())

    def crop(arr):
        return arr[2:-2, 2:-2]

    def crop_x(arr):
        return arr[:, 2:-2]

    u_t, w_t, v_t = (crop_x(_d_dt(a, dt)) for a in (U, W, V))
    h_t, i_t, r_t = (crop_x(_d_dt(a, dt)) for a in (H, I, R))
    u_x = _d_dx(U, dx)[2:-2, :]
    w_x = _d_dx(W, dx)[2:-2, :]
    u_xx = _d2_dx2(U, dx)[2:-2, :]
    w_xx = _d2_dx2(W, dx)[2:-2, :]

    Uc, Wc, Vc, Hc, Ic, Rc = (crop(a) for a in (U, W, V, H, I, R))
    Mc = Uc + Wc

    if n.p == 0.0:
        diff_u, diff_w = u_xx, w_xx
    else:
        m_ext = U + W
        m_x = _d_dx(m_ext, dx)[2:-2, :]
        mp = np.power(Mc, n.p)
        mpm1 = n.p * np.power(Mc, n.p - 1.0)
        diff_u = mp * u_xx + mpm1 * m_x * u_x
        diff_w = mp * w_xx + mpm1 * m_x * w_x

    adv_u = 2.0 * n.nu * (np.power(Uc, n.q1) if n.q1 != 0.0 else 1.0) * u_x
    adv_w = 2.0 * n.nu * (np.power(Wc, n.q2) if n.q2 != 0.0 else 1.0) * w_x

    eps = n.epsilon
    res = np.empty((6,) + Uc.shape)
    res[0] = (u_t - diff_u + adv_u - (n.gamma / n.k) * Vc
              - (eps * n.gamma / n.k - n.mu1) * Uc + n.beta1 * Uc * Ic)
    res[1] = (w_t - diff_w + adv_w
              - (eps * n.gamma / n.k - n.mu1) * Wc - n.beta1 * Uc * Ic)
    res[2] = v_t - n.k * Mc + (n.mu2 + n.gamma - eps * n.k) * Vc
    res[3] = h_t - (1.0 - Hc) * n.mu3 + n.beta2 * Hc * Wc
    res[4] = i_t - n.beta2 * Hc * Wc + n.sigma * Ic + n.mu3 * Ic
    res[5] = r_t - n.sigma * Ic + n.mu3 * Rc
    return ResidualSample(grid=grid, residuals=res)


# --- generator catalog ----------------------------------------------------------

@dataclass(frozen=True)
class SymmetryGenerator:
    """One cataloged generator: constraint row, flow, and infinitesimals."""

    case_id: str
    description: str
    notes: str = ""
    profile: object = field(default=None, compare=False)    # case 6 payload
    solution: object = field(default=None, compare=False)   # case 7 payload

    def violations(self, n: NondimParams) -> list[str]:
        return _constraint_violations(self.case_id, n)

    def admitted(self, n: NondimParams) -> bool:
        return not self.violations(n)


def _constraint_violations(case_id: str, n: NondimParams) -> list[str]:
    bad = []

    def need_zero(name):
        value = getattr(n, name)
        if value != 0.0:
            bad.append(f"{name} = 0 (got {value!r})")

    def need_nonzero(name):
        if getattr(n, name) == 0.0:
            bad.append(f"{name} != 0 (got 0)")

    if case_id in ("x-translation", "t-translation"):
        return bad
    if case_id == "1":
        for name in ("p", "beta2", "q1", "q2"):
            need_zero(name)
    elif case_id == "2":
        need_zero("beta2")
        for name in ("q1", "q2"):
            if getattr(n, name) != n.p / 2.0:
                bad.append(f"{name} = p/2 (got {getattr(n, name)!r}, p = {n.p!r})")
    elif case_id == "3":
        need_zero("beta2")
        need_zero("nu")
    elif case_id in ("4", "5"):
        need_zero("beta1")
        need_zero("p")
        need_nonzero("beta2")
        need_zero("nu")
    elif case_id == "6":
        need_zero("beta1")
        need_zero("beta2")
    elif case_id == "7":
        need_zero("beta1")
        need_zero("p")
        need_zero("beta2")
        need_zero("nu")
    else:
        raise DomainError(f"unknown symmetry case {case_id!r}")
    return bad


def _default_profile(x):
    return np.exp(-0.5 * np.asarray(x, dtype=float) ** 2)


CATALOG: dict[str, SymmetryGenerator] = {
    "x-translation": SymmetryGenerator(
        "x-translation", "space translation x -> x + a (admitted always)"),
    "t-translation": SymmetryGenerator(
        "t-translation", "time translation t -> t + a (admitted always)"),
    "1": SymmetryGenerator(
        "1", "uniform mosquito scaling (u,w,v) -> e^a (u,w,v)"),
    "2": SymmetryGenerator(
        "2", "space/mosquito scaling x -> e^{p a} x, (u,w,v) -> e^{2a} (u,w,v)"),
    "3": SymmetryGenerator(
        "3", "space/mosquito scaling (windless variant of case 2)"),
    "4": SymmetryGenerator(
        "4", "winged-total shear (u+w) d/du + v d/dv"),
    "5": SymmetryGenerator(
        "5", "infected-to-uninfected winged shear w d/du - w d/dw",
        notes=("cataloged with beta2 != 0; residual preservation of the "
               "susceptible equation additionally needs beta2*w = 0 on the "
               "sample, since the flow rescales w")),
    "6": SymmetryGenerator(
        "6", "offset of (I, r) by a solution of the decoupled human block",
        notes=("constraint row encoded with beta2 = 0 (the stricter reading): "
               "the human block is only autonomous in (I, r) without "
               "mosquito-to-human coupling"),
        profile=_default_profile),
    "7": SymmetryGenerator(
        "7", "superposition of a full solution (system linear when "
             "beta1 = beta2 = 0, p = 0, nu = 0)"),
}


def generator(case_id: str, profile=None, solution=None) -> SymmetryGenerator:
    """Fetch a catalog entry, optionally overriding case 6/7 payloads."""
    try:
        g = CATALOG[str(case_id)]
    except KeyError:
        raise DomainError(f"unknown symmetry case {case_id!r}") from None
    if profile is not None or solution is not None:
        g = SymmetryGenerator(g.case_id, g.description, g.notes,
                              profile=profile or g.profile,
                              solution=solution or g.solution)
    return g


def _case6_pair(g: SymmetryGenerator, n: NondimParams):
    prof = g.profile if g.profile is not None else _default_profile
    rate = n.sigma + n.mu3

    def f(x, t):
        return prof(np.asarray(x, float)) * np.exp(-rate * np.asarray(t, float))

    def gneg(x, t):
        return -f(x, t)
    return f, gneg


def apply_group(g: SymmetryGenerator, eps_g: float, fields: FieldSet,
                n: NondimParams, enforce: bool = True) -> FieldSet:
    """Finite group action of a cataloged generator on a field set.

    With ``enforce`` the parameter constraints of the generator's row are
    checked first and an AdmissibilityError names any violated constraint.
    """
    if enforce:
        bad = g.violations(n)
        if bad:
            raise AdmissibilityError(
                f"case {g.case_id} is not admitted: requires " + "; ".join(bad))

    a = float(eps_g)
    u, w, v, h, i, r = fields.components()

    if g.case_id == "x-translation":
        return fields.shifted(dx_=a)
    if g.case_id == "t-translation":
        return fields.shifted(dt_=a)
    if g.case_id == "1":
        s = math.exp(a)
        scale = lambda f: (lambda x, t: s * f(x, t))
        return FieldSet(scale(u), scale(w), scale(v), h, i, r)
    if g.case_id in ("2", "3"):
        s2 = math.exp(2.0 * a)
        shrink = math.exp(-n.p * a)
        def rescale(f, factor):
            return lambda x, t: factor * f(shrink * np.asarray(x, float), t)
        return FieldSet(rescale(u, s2), rescale(w, s2), rescale(v, s2),
                        rescale(h, 1.0), rescale(i, 1.0), rescale(r, 1.0))
    if g.case_id == "4":
        s = math.exp(a)
        return FieldSet(
            lambda x, t: s * u(x, t) + (s - 1.0) * w(x, t),
            w,
            lambda x, t: s * v(x, t),
            h, i, r)
    if g.case_id == "5":
        d = math.exp(-a)
        return FieldSet(
            lambda x, t: u(x, t) + (1.0 - d) * w(x, t),
            lambda x, t: d * w(x, t),
            v, h, i, r)
    if g.case_id == "6":
        f6, g6 = _case6_pair(g, n)
        return FieldSet(
            u, w, v, h,
            lambda x, t: i(x, t) + a * f6(x, t),
            lambda x, t: r(x, t) + a * g6(x, t))
    if g.case_id == "7":
        sol = g.solution
        if sol is None:
            raise DomainError("case 7 needs a solution payload "
                              "(generator(..., solution=FieldSet))")
        parts = sol.components()
        return FieldSet(*(
            (lambda f, s: lambda x, t: f(x, t) + a * s(x, t))(f, s)
            for f, s in zip(fields.components(), parts)))
    raise DomainError(f"unknown symmetry case {g.case_id!r}")


def infinitesimals(g: SymmetryGenerator, n: NondimParams, x, t,
                   state: tuple) -> tuple:
    """(xi, tau, eta1..eta6) of the generator at a point; flow derivative at 0."""
    u, w, v, h, i, r = state
    zero = 0.0
    if g.case_id == "x-translation":
        return (1.0, zero) + (zero,) * 6
    if g.case_id == "t-translation":
        return (zero, 1.0) + (zero,) * 6
    if g.case_id == "1":
        return (zero, zero, u, w, v, zero, zero, zero)
    if g.case_id in ("2", "3"):
        return (n.p * x, zero, 2 * u, 2 * w, 2 * v, zero, zero, zero)
    if g.case_id == "4":
        return (zero, zero, u + w, zero, v, zero, zero, zero)
    if g.case_id == "5":
        return (zero, zero, w, -w, zero, zero, zero, zero)
    if g.case_id == "6":
        f6, g6 = _case6_pair(g, n)
        return (zero, zero, zero, zero, zero, zero, f6(x, t), g6(x, t))
    if g.case_id == "7":
        sol = g.solution
        if sol is None:
            raise DomainError("case 7 needs a solution payload")
        vals = [f(x, t) for f in sol.components()]
        return (zero, zero, *vals)
    raise DomainError(f"unknown symmetry case {g.case_id!r}")


# --- equivariance check ----------------------------------------------------------

@dataclass(frozen=True)
class EquivarianceRow:
    equation: str
    residual_before: float
    residual_after: float
    ratio: float
    expected: float
    bound: float
    passed: bool


@dataclass(frozen=True)
class EquivarianceReport:
    case_id: str
    eps: float
    rows: tuple
    passed: bool
    notes: str
    before: ResidualSample
    after: ResidualSample

    def to_text(self) -> str:
        lines = [
            "equivariance report",
            "===================",
            f"case: {self.case_id}   group parameter: {self.eps:g}",
            f"verdict: {'pass' if self.passed else 'fail'}",
            "equation                residual-before  residual-after   "
            "ratio        expected     within-bound",
        ]
        for row in self.rows:
            ratio = "n/a" if math.isnan(row.ratio) else f"{row.ratio:.6g}"
            expected = "n/a" if math.isnan(row.expected) else f"{row.expected:.6g}"
            lines.append(
                f"{row.equation:<22}  {row.residual_before:<15.6e}  "
                f"{row.residual_after:<15.6e}  {ratio:<11}  {expected:<11}  "
                f"{'yes' if row.passed else 'NO'}")
        if self.notes:
            lines.append(f"notes: {self.notes}")
        return "\n".join(lines)


def _expected_factors(case_id: str, a: float, n: NondimParams,
                      norms_before: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(expected diagonal factor or nan, norm bound) per equation."""
    e = math.exp(a)
    ones = np.ones(6)
    if case_id in ("x-translation", "t-translation", "6", "7"):
        expected = ones.copy()
        bound = norms_before.copy()
    elif case_id == "1":
        expected = np.array([e, e, e, 1.0, 1.0, 1.0])
        bound = expected * norms_before
    elif case_id in ("2", "3"):
        e2 = math.exp(2.0 * a)
        expected = np.array([e2, e2, e2, 1.0, 1.0, 1.0])
        bound = expected * norms_before
    elif case_id == "4":
        expected = np.array([math.nan, 1.0, e, 1.0, 1.0, 1.0])
        bound = np.array([e * norms_before[0] + abs(e - 1.0) * norms_before[1],
                          norms_before[1], e * norms_before[2],
                          *norms_before[3:]])
    elif case_id == "5":
        d = math.exp(-a)
        expected = np.array([math.nan, d, 1.0, 1.0, 1.0, 1.0])
        bound = np.array([norms_before[0] + abs(1.0 - d) * norms_before[1],
                          d * norms_before[1], *norms_before[2:]])
    else:
        raise DomainError(f"unknown symmetry case {case_id!r}")
    return expected, bound


def check_equivariance(g: SymmetryGenerator, n: NondimParams, fields: FieldSet,
                       eps_g: float, grid: Grid, tol_sol: float = 1e-6,
                       slack: float = 3.0, floor: float = 1e-12,
                       enforce: bool = True) -> EquivarianceReport:
    """Verify that the group action maps approximate solutions to solutions.

    ``fields`` must already satisfy the residual tolerance ``tol_sol``;
    residuals after transformation must stay within the known per-equation
    scaling times ``slack`` (plus an absolute ``floor`` for identically
    vanishing equations).
    """
    before = residual(fields, n, grid)
    norms0 = before.max_norms()
    if before.max_norm > tol_sol:
        raise DomainError(
            f"fields are not an approximate solution: residual max-norm "
            f"{before.max_norm:.3e} exceeds tol_sol={tol_sol:.3e}")
    transformed = apply_group(g, eps_g, fields, n, enforce=enforce)
    after = residual(transformed, n, grid)
    norms1 = after.max_norms()

    expected, bounds = _expected_factors(g.case_id, eps_g, n, norms0)
    # superposition cases add the offset's own discretization error, which is
    # independent of how well the base fields solve the system
    if g.case_id == "6":
        f6, g6 = _case6_pair(g, n)
        zero = FieldSet.constant(h=1.0)
        probe = FieldSet(zero.u, zero.w, zero.v, zero.h, f6, g6)
        bounds = bounds + abs(eps_g) * residual(probe, n, grid).max_norms()
    elif g.case_id == "7" and g.solution is not None:
        bounds = bounds + abs(eps_g) * residual(g.solution, n, grid).max_norms()
    rows = []
    all_ok = True
    for idx, name in enumerate(EQUATION_NAMES):
        ratio = norms1[idx] / norms0[idx] if norms0[idx] > floor else math.nan
        limit = slack * bounds[idx] + floor
        ok = norms1[idx] <= limit
        all_ok &= ok
        rows.append(EquivarianceRow(
            equation=name, residual_before=float(norms0[idx]),
            residual_after=float(norms1[idx]), ratio=float(ratio),
            expected=float(expected[idx]), bound=float(limit), passed=ok))
    return EquivarianceReport(case_id=g.case_id, eps=eps_g, rows=tuple(rows),
                              passed=all_ok, notes=g.notes,
                              before=before, after=after)


def pointwise_ratios(before: ResidualSample, after: ResidualSample,
                     equation: int, mask_fraction: float = 0.1) -> np.ndarray:
    """after/before residual ratios on entries above a fraction of the max."""
    b = before.residuals[equation]
    a = after.residuals[equation]
    cutoff = mask_fraction * np.abs(b).max()
    mask = np.abs(b) >= max(cutoff, 1e-300)
    if not mask.any():
        return np.array([])
    return a[mask] / b[mask]
