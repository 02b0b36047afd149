"""Complex dilogarithm and the Bloch-Wigner function D(z).

D(z) = Im(Li2(z)) + arg(1 - z) * ln|z| is single valued on the Riemann
sphere, vanishes on the real axis (including 0, 1 and infinity), and is
bounded by D(exp(i*pi/3)) = 1.0149416064096535.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

PI2_6 = math.pi * math.pi / 6.0

# Tightest bound of |D|; attained at the primitive sixth root of unity.
D_MAX = 1.0149416064096535


def _bernoulli(count: int) -> list[Fraction]:
    """First `count` Bernoulli numbers (B_1 = -1/2 convention)."""
    b: list[Fraction] = [Fraction(1)]
    for m in range(1, count):
        acc = Fraction(0)
        for k in range(m):
            acc += Fraction(math.comb(m + 1, k)) * b[k]
        b.append(-acc / (m + 1))
    return b


_BERNOULLI = [float(x) for x in _bernoulli(64)]


def _li2_series(z: complex) -> complex:
    """Power series sum z^n / n^2, for |z| <= 1/2."""
    total = 0j
    term = z
    n = 1
    while abs(term) > 1e-18 * max(1.0, abs(total)):
        total += term / (n * n)
        n += 1
        term *= z
        if n > 200:
            break
    return total


def _li2_log_series(z: complex) -> complex:
    """Expansion in u = -log(1-z); converges for |u| < 2*pi."""
    u = -cmath.log(1.0 - z)
    total = 0j
    upow = u
    factorial = 1.0
    for k, bk in enumerate(_BERNOULLI):
        if k > 0:
            factorial *= k
        term = bk * upow / (factorial * (k + 1))
        total += term
        upow *= u
        # Odd Bernoulli numbers beyond B_1 vanish; only judge convergence
        # on the nonzero terms.
        if bk != 0.0 and k > 2 and abs(term) < 1e-18 * max(1.0, abs(total)):
            break
    return total


@lru_cache(maxsize=None)
def li2(z: complex) -> complex:
    """Dilogarithm Li2(z) on the principal branch."""
    z = complex(z)
    if z == 0:
        return 0j
    if z == 1:
        return complex(PI2_6)
    if abs(z) > 1.0:
        # Inversion formula; valid off [0, 1).
        return -li2(1.0 / z) - PI2_6 - 0.5 * cmath.log(-z) ** 2
    if abs(z) <= 0.5:
        return _li2_series(z)
    if abs(1.0 - z) <= 0.5:
        # Reflection; keeps the log-series argument away from z = 1,
        # where |log(1 - z)| would exceed its convergence radius 2*pi.
        return PI2_6 - cmath.log(z) * cmath.log(1.0 - z) - _li2_series(1.0 - z)
    return _li2_log_series(z)


@lru_cache(maxsize=None)
def bloch_wigner(z: complex) -> float:
    """Bloch-Wigner function D(z); exactly 0 for real z and for 0, 1, inf."""
    z = complex(z)
    if cmath.isinf(z) or cmath.isnan(z):
        return 0.0
    if z.imag == 0.0:
        return 0.0
    return li2(z).imag + cmath.phase(1.0 - z) * math.log(abs(z))
