"""Parameter sets, unit transforms, and epidemiological indicators.

Dimensional (barred) biological parameters are carried in km/day units as
published; nondimensional parameters use the oviposition time 1/r0_bar and
the diffusion length sqrt(D_bar/r0_bar) as units.  Two field-parameter
presets are built in ("table3-15C", "table3-30C").
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

from .errors import ConfigError, DomainError, NoSolutionError

DAYS_PER_YEAR = 365.0

_POSITIVE_DIM_FIELDS = (
    "D_bar", "r0_bar", "k1", "k2", "gamma_bar", "mu1_bar", "mu2_bar",
    "beta1_bar", "beta2_bar", "sigma_bar", "N_bar",
)


@dataclass(frozen=True)
class DimensionalParams:
    """Dimensional biological parameters.

    Attributes
    ----------
    D_bar : float
        Diffusion coefficient of winged mosquitoes (km^2/day).
    nu2_bar : float
        Advection (wind) speed as tabulated, i.e. 2*nu_bar (km/day).
        Stored in the doubled form to avoid factor-of-two ambiguity;
        ``nu_bar`` derives the single value.
    r0_bar : float
        Intrinsic oviposition rate (1/day).
    k1, k2 : float
        Carrying capacities of the winged and aquatic forms
        (individuals/km^2).
    gamma_bar : float
        Aquatic-to-winged maturation rate (1/day).
    mu1_bar, mu2_bar, mu3_bar : float
        Mortality rates of winged mosquitoes, aquatic mosquitoes and
        humans (1/day).  ``mu3_bar`` may be zero.
    beta1_bar, beta2_bar : float
        Transmission coefficients human->mosquito and mosquito->human
        (km^2/day).
    sigma_bar : float
        Human recovery rate (1/day).
    N_bar : float
        Human density (individuals/km^2).
    """

    D_bar: float
    nu2_bar: float
    r0_bar: float
    k1: float
    k2: float
    gamma_bar: float
    mu1_bar: float
    mu2_bar: float
    mu3_bar: float
    beta1_bar: float
    beta2_bar: float
    sigma_bar: float
    N_bar: float

    def __post_init__(self):
        for name in _POSITIVE_DIM_FIELDS:
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise DomainError(f"{name} must be strictly positive, got {value!r}")
        for name in ("nu2_bar", "mu3_bar"):
            value = getattr(self, name)
            if value < 0.0 or not math.isfinite(value):
                raise DomainError(f"{name} must be nonnegative, got {value!r}")

    @property
    def nu_bar(self) -> float:
        """Single advection speed nu_bar = nu2_bar / 2 (km/day)."""
        return self.nu2_bar / 2.0


@dataclass(frozen=True)
class NondimParams:
    """Nondimensional model parameters.

    Rates are per oviposition time; ``k`` is the capacity ratio k1/k2;
    ``nu`` is the dimensionless advection parameter; ``p``, ``q1``, ``q2``
    are the diffusion/advection exponents; ``epsilon`` selects the family
    member (0 or 1; the two values with a biological reading).
    """

    gamma: float
    mu1: float
    mu2: float
    mu3: float
    sigma: float
    beta1: float
    beta2: float
    nu: float
    k: float
    p: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    epsilon: float = 0.0

    def __post_init__(self):
        for name in ("gamma", "mu1", "mu2", "sigma", "k"):
            value = getattr(self, name)
            if not (value > 0.0) or not math.isfinite(value):
                raise DomainError(f"{name} must be strictly positive, got {value!r}")
        for name in ("mu3", "nu", "beta1", "beta2"):
            value = getattr(self, name)
            if value < 0.0 or not math.isfinite(value):
                raise DomainError(f"{name} must be nonnegative, got {value!r}")
        if self.epsilon not in (0.0, 1.0):
            raise DomainError(
                f"epsilon must be 0 or 1, got {self.epsilon!r}; arbitrary values "
                "are only meaningful for the family offspring number, which takes "
                "them as an explicit argument"
            )


@dataclass(frozen=True)
class Indicators:
    """Epidemiological indicators at an equilibrium background.

    ``u_star`` is derived from ``v_star`` via u* = v* * gamma / (k * mu1).
    """

    Q0: float
    R0: float
    u_star: float
    v_star: float
    h_star: float


def nondimensionalize(d: DimensionalParams, p: float = 0.0, q1: float = 0.0,
                      q2: float = 0.0, epsilon: float = 0.0) -> NondimParams:
    """Map dimensional parameters to the nondimensional set.

    Rates divide by r0_bar, beta1 picks up the human density, beta2 the
    winged capacity, and the advection parameter is
    nu = nu_bar / sqrt(r0_bar * D_bar) with nu_bar = nu2_bar / 2.
    """
    if d.r0_bar <= 0.0 or d.D_bar <= 0.0:
        raise DomainError("r0_bar and D_bar must be strictly positive")
    r0 = d.r0_bar
    return NondimParams(
        gamma=d.gamma_bar / r0,
        mu1=d.mu1_bar / r0,
        mu2=d.mu2_bar / r0,
        mu3=d.mu3_bar / r0,
        sigma=d.sigma_bar / r0,
        beta1=d.beta1_bar * d.N_bar / r0,
        beta2=d.beta2_bar * d.k1 / r0,
        nu=d.nu_bar / math.sqrt(r0 * d.D_bar),
        k=d.k1 / d.k2,
        p=p, q1=q1, q2=q2, epsilon=epsilon,
    )


def speed_scale(d: DimensionalParams) -> float:
    """Speed unit sqrt(r0_bar * D_bar) in km/day.

    A nondimensional wave speed c converts as
    c_bar = c * speed_scale(d) km/day = c * speed_scale(d) * 365 km/year.
    """
    if d.r0_bar <= 0.0 or d.D_bar <= 0.0:
        raise DomainError("r0_bar and D_bar must be strictly positive")
    return math.sqrt(d.r0_bar * d.D_bar)


def basic_offspring_number(n: NondimParams) -> float:
    """Basic offspring number gamma / (mu1 * (gamma + mu2)).

    Values above 1 mean the mosquito population can invade.
    """
    denom = n.mu1 * (n.gamma + n.mu2)
    if denom == 0.0:
        raise DomainError("mu1 * (gamma + mu2) must be nonzero")
    return n.gamma / denom


def basic_offspring_number_family(n: NondimParams, eps: float) -> float:
    """Offspring number of the model family at an arbitrary member eps.

    Q_eps = k*gamma / ((k*mu1 - eps*gamma) * (gamma + mu2 - eps*k));
    reduces to the basic offspring number at eps = 0.
    """
    f1 = n.k * n.mu1 - eps * n.gamma
    f2 = n.gamma + n.mu2 - eps * n.k
    if f1 == 0.0:
        raise DomainError("singular factor: k*mu1 - eps*gamma = 0")
    if f2 == 0.0:
        raise DomainError("singular factor: gamma + mu2 - eps*k = 0")
    return n.k * n.gamma / (f1 * f2)


def basic_reproduction_number(n: NondimParams, v_star: float,
                              h_star: float) -> Indicators:
    """Basic reproduction number at background densities (v*, h*).

    The winged background is u* = v* * gamma / (k * mu1) and
    R0 = beta1 * beta2 * h* * u* / (mu1 * sigma).
    """
    if v_star < 0.0:
        raise DomainError(f"v_star must be nonnegative, got {v_star!r}")
    if not 0.0 <= h_star <= 1.0:
        raise DomainError(f"h_star must lie in [0, 1], got {h_star!r}")
    if n.mu1 * n.sigma == 0.0:
        raise DomainError("mu1 * sigma must be nonzero")
    u_star = v_star * n.gamma / (n.k * n.mu1)
    r0 = n.beta1 * n.beta2 * h_star * u_star / (n.mu1 * n.sigma)
    return Indicators(Q0=basic_offspring_number(n), R0=r0,
                      u_star=u_star, v_star=v_star, h_star=h_star)


def mu2_for_unit_offspring(d: DimensionalParams) -> float:
    """Aquatic mortality mu2_bar that makes the offspring number exactly 1.

    Returns gamma_bar * (r0_bar - mu1_bar) / mu1_bar, the unique positive
    solution when r0_bar > mu1_bar.
    """
    if d.r0_bar <= d.mu1_bar:
        raise NoSolutionError(
            "unit offspring number needs r0_bar > mu1_bar "
            f"(r0_bar={d.r0_bar!r}, mu1_bar={d.mu1_bar!r})"
        )
    return d.gamma_bar * (d.r0_bar - d.mu1_bar) / d.mu1_bar


def with_unit_offspring(d: DimensionalParams) -> DimensionalParams:
    """Copy of ``d`` with mu2_bar replaced so the offspring number is 1."""
    return replace(d, mu2_bar=mu2_for_unit_offspring(d))


# --- built-in presets -------------------------------------------------------

# Field parameter sets at 15 C and 30 C.  Rates published as average
# times/lifetimes are inverted here at full precision.
_SHARED = dict(
    D_bar=0.0125,        # km^2/day
    nu2_bar=0.05,        # km/day  (tabulated as the doubled wind speed)
    k1=25.0,             # winged capacity, individuals/km^2
    k2=100.0,            # aquatic capacity, individuals/km^2
    beta1_bar=0.0033,    # km^2/day
    beta2_bar=0.0025,    # km^2/day
    sigma_bar=1.0 / 7.0,  # infectious period 7 days
    N_bar=150.0,         # humans/km^2
    mu3_bar=0.0,
)

PRESETS: dict[str, DimensionalParams] = {
    "table3-15C": DimensionalParams(
        r0_bar=1.52,
        gamma_bar=1.0 / 52.63,
        mu1_bar=1.0 / 26.3,
        mu2_bar=1.0 / 50.0,
        **_SHARED,
    ),
    "table3-30C": DimensionalParams(
        r0_bar=10.0,
        gamma_bar=1.0 / 5.0,
        mu1_bar=1.0 / 35.0,
        mu2_bar=1.0 / 18.0,
        **_SHARED,
    ),
}

PRESET_NAMES = tuple(sorted(PRESETS))


def preset(name: str) -> DimensionalParams:
    """Return a built-in parameter set by name ("table3-15C", "table3-30C")."""
    try:
        return PRESETS[name]
    except KeyError:
        raise ConfigError(
            f"unknown preset {name!r}; available: {', '.join(PRESET_NAMES)}"
        ) from None


# --- structured text configuration ------------------------------------------

_DIM_FIELD_NAMES = tuple(f.name for f in fields(DimensionalParams))
_EXTRA_KEYS = ("p", "q1", "q2", "variant", "epsilon")
_VALID_VARIANTS = ("saturated", "malthus-1", "malthus-2", "family")


@dataclass(frozen=True)
class Config:
    """A parsed configuration: dimensional parameters plus model choices."""

    dimensional: DimensionalParams
    p: float = 0.0
    q1: float = 0.0
    q2: float = 0.0
    epsilon: float = 0.0
    variant: str = "saturated"

    def nondim(self) -> NondimParams:
        return nondimensionalize(self.dimensional, p=self.p, q1=self.q1,
                                 q2=self.q2, epsilon=self.epsilon)


def parse_config(text: str, source: str = "<config>") -> Config:
    """Parse a ``key = value`` configuration.

    One assignment per line; ``#`` starts a comment; keys are exactly the
    DimensionalParams field names plus optional p, q1, q2, epsilon and
    variant.  Raises ConfigError with a line/field diagnostic.
    """
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        if key not in _DIM_FIELD_NAMES and key not in _EXTRA_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        if key == "variant":
            if value not in _VALID_VARIANTS:
                raise ConfigError(
                    f"{source}:{lineno}: variant must be one of "
                    f"{', '.join(_VALID_VARIANTS)}; got {value!r}"
                )
            values[key] = value
        else:
            try:
                values[key] = float(value)
            except ValueError:
                raise ConfigError(
                    f"{source}:{lineno}: key {key!r} needs a number, got {value!r}"
                ) from None

    missing = [name for name in _DIM_FIELD_NAMES if name not in values]
    if missing:
        raise ConfigError(f"{source}: missing required key(s): {', '.join(missing)}")

    dim_kwargs = {name: values[name] for name in _DIM_FIELD_NAMES}
    try:
        dim = DimensionalParams(**dim_kwargs)
    except DomainError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    return Config(
        dimensional=dim,
        p=float(values.get("p", 0.0)),
        q1=float(values.get("q1", 0.0)),
        q2=float(values.get("q2", 0.0)),
        epsilon=float(values.get("epsilon", 0.0)),
        variant=str(values.get("variant", "saturated")),
    )


def load_config(path) -> Config:
    """Read and parse a configuration file."""
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read(), source=str(path))


def config_text(d: DimensionalParams, p: float = 0.0, q1: float = 0.0,
                q2: float = 0.0, epsilon: float = 0.0,
                variant: str = "saturated") -> str:
    """Serialize a parameter set back to the configuration format."""
    lines = [f"{name} = {getattr(d, name)!r}" for name in _DIM_FIELD_NAMES]
    lines += [f"p = {p!r}", f"q1 = {q1!r}", f"q2 = {q2!r}",
              f"epsilon = {epsilon!r}", f"variant = {variant}"]
    return "\n".join(lines) + "\n"
