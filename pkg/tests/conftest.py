import numpy as np
import pytest

import denguefront as df


@pytest.fixture(scope="session")
def d30():
    return df.preset("table3-30C")


@pytest.fixture(scope="session")
def d15():
    return df.preset("table3-15C")


@pytest.fixture(scope="session")
def n30(d30):
    return df.nondimensionalize(d30)


@pytest.fixture(scope="session")
def n30_nowind(d30):
    import dataclasses
    return df.nondimensionalize(dataclasses.replace(d30, nu2_bar=0.0))


@pytest.fixture(scope="session")
def n15(d15):
    return df.nondimensionalize(d15)


@pytest.fixture(scope="session")
def d15_unit(d15):
    return df.with_unit_offspring(d15)


@pytest.fixture(scope="session")
def n15_unit(d15_unit):
    return df.nondimensionalize(d15_unit)


@pytest.fixture()
def rng():
    return np.random.default_rng(20240611)


def fd_jacobian(func, x0, h=1e-6):
    """Central finite-difference Jacobian of func at x0."""
    x0 = np.asarray(x0, dtype=float)
    f0 = np.asarray(func(x0))
    jac = np.empty((f0.size, x0.size))
    for j in range(x0.size):
        step = np.zeros_like(x0)
        step[j] = h
        jac[:, j] = (np.asarray(func(x0 + step)) - np.asarray(func(x0 - step))) / (2 * h)
    return jac


def random_nondim(rng, q0_regime=None, unit_q0=False, with_infection=True):
    """Random valid nondimensional parameter set for property sweeps."""
    def lograte():
        return float(10.0 ** rng.uniform(-3, 0))

    gamma, mu2, sigma = lograte(), lograte(), lograte()
    mu1 = float(10.0 ** rng.uniform(-3, -0.05))
    if unit_q0:
        mu2 = gamma * (1.0 - mu1) / mu1
    elif q0_regime == "super":
        # Q0 > 1  <=>  mu1 (gamma + mu2) < gamma
        mu1 = float(rng.uniform(0.05, 0.95)) * gamma / (gamma + mu2)
    elif q0_regime == "sub":
        mu1 = float(rng.uniform(1.05, 5.0)) * gamma / (gamma + mu2)
    k = float(rng.uniform(0.05, 2.0))
    beta1 = float(rng.uniform(0.0, 1.0)) if with_infection else 0.0
    beta2 = float(rng.uniform(0.0, 1.0)) if with_infection else 0.0
    return df.NondimParams(gamma=gamma, mu1=mu1, mu2=mu2, mu3=0.0,
                           sigma=sigma, beta1=beta1, beta2=beta2,
                           nu=float(rng.uniform(0.0, 0.5)), k=k)


def random_dimensional(rng):
    def pos(lo, hi):
        return float(10.0 ** rng.uniform(np.log10(lo), np.log10(hi)))

    return df.DimensionalParams(
        D_bar=pos(1e-3, 1.0), nu2_bar=float(rng.uniform(0.0, 0.2)),
        r0_bar=pos(0.5, 20.0), k1=pos(1.0, 100.0), k2=pos(1.0, 500.0),
        gamma_bar=pos(1e-3, 1.0), mu1_bar=pos(1e-3, 0.3),
        mu2_bar=pos(1e-3, 1.0), mu3_bar=0.0, beta1_bar=pos(1e-4, 0.1),
        beta2_bar=pos(1e-4, 0.1), sigma_bar=pos(1e-2, 1.0),
        N_bar=pos(10.0, 1000.0))
