"""Closed-form roots of monic quadratics and cubics.

These feed the closed-form spectral route; the independent dense route goes
through LAPACK (numpy.linalg.eigvals).  Cubics use the trigonometric method
when all roots are real and Cardano otherwise, with a bisection + deflation
fallback if the primary formula loses accuracy.
"""

from __future__ import annotations

import cmath
import math

import numpy as np


def solve_quadratic(a1: float, a0: float) -> tuple[complex, complex]:
    """Roots of lambda^2 + a1*lambda + a0, cancellation-safe."""
    disc = a1 * a1 - 4.0 * a0
    if disc >= 0.0:
        s = math.sqrt(disc)
        # avoid subtracting nearly equal quantities
        q = -0.5 * (a1 + math.copysign(s, a1)) if a1 != 0.0 else 0.5 * s
        if q == 0.0:
            return (0.0 + 0.0j, -a1 + 0.0j)
        r1 = q
        r2 = a0 / q
        return (complex(r1), complex(r2))
    s = math.sqrt(-disc)
    return (complex(-0.5 * a1, 0.5 * s), complex(-0.5 * a1, -0.5 * s))


def _cubic_eval(a2: float, a1: float, a0: float, x: complex) -> complex:
    return ((x + a2) * x + a1) * x + a0


def _cubic_deriv(a2: float, a1: float, x: complex) -> complex:
    return (3.0 * x + 2.0 * a2) * x + a1


def _newton_polish(a2: float, a1: float, a0: float, x: float,
                   steps: int = 3) -> float:
    for _ in range(steps):
        d = _cubic_deriv(a2, a1, x)
        if d == 0.0:
            break
        x -= _cubic_eval(a2, a1, a0, x) / d
    return x


def _bisect_real_root(a2: float, a1: float, a0: float) -> float:
    """One guaranteed real root via sign change on a Cauchy-bound interval."""
    bound = 1.0 + max(abs(a2), abs(a1), abs(a0))
    lo, hi = -bound, bound
    flo = _cubic_eval(a2, a1, a0, lo)
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = _cubic_eval(a2, a1, a0, mid)
        if fm == 0.0 or (hi - lo) < 1e-16 * max(1.0, abs(mid)):
            return mid
        if (flo < 0) == (fm < 0):
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def solve_cubic(a2: float, a1: float, a0: float) -> tuple[complex, complex, complex]:
    """Roots of lambda^3 + a2*lambda^2 + a1*lambda + a0."""
    shift = a2 / 3.0
    p = a1 - a2 * a2 / 3.0
    q = 2.0 * a2 ** 3 / 27.0 - a2 * a1 / 3.0 + a0
    disc = -4.0 * p ** 3 - 27.0 * q * q

    if disc >= 0.0 and p < 0.0:
        # three real roots, trigonometric form
        mag = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * mag)
        arg = min(1.0, max(-1.0, arg))
        theta = math.acos(arg)
        ts = [mag * math.cos((theta - 2.0 * math.pi * k) / 3.0) for k in range(3)]
        roots = [complex(_newton_polish(a2, a1, a0, t - shift)) for t in ts]
    else:
        # one real root; Cardano for the real one, deflation for the pair
        half_q = 0.5 * q
        inner = half_q * half_q + p ** 3 / 27.0
        s = cmath.sqrt(inner)
        u3 = -half_q + s
        if abs(u3) < abs(-half_q - s):
            u3 = -half_q - s
        if u3 == 0:
            t_real = 0.0
        else:
            u = u3 ** (1.0 / 3.0)
            t_real = (u - p / (3.0 * u)).real
        real_root = _newton_polish(a2, a1, a0, t_real - shift)
        b1 = a2 + real_root
        b0 = a1 + b1 * real_root
        roots = [complex(real_root), *solve_quadratic(b1, b0)]

    scale = max(1.0, abs(a2), abs(a1), abs(a0))
    worst = max(abs(_cubic_eval(a2, a1, a0, r)) for r in roots)
    if not math.isfinite(worst) or worst > 1e-8 * scale:
        # fallback: robust real root by bisection, then deflate
        real_root = _newton_polish(a2, a1, a0, _bisect_real_root(a2, a1, a0))
        b1 = a2 + real_root
        b0 = a1 + b1 * real_root
        roots = [complex(real_root), *solve_quadratic(b1, b0)]
    return tuple(roots)


def poly_from_factors(factors) -> np.ndarray:
    """Multiply monic factor coefficient arrays (descending powers)."""
    out = np.array([1.0])
    for f in factors:
        out = np.convolve(out, np.asarray(f, dtype=float))
    return out
