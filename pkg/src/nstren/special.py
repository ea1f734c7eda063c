"""Digamma at positive integers and the modified Bessel functions K0, K1.

K0/K1 use the ascending series for ``z <= 2``, Steed's continued fraction
(Temme's CF2) for moderate ``z`` and the Hankel asymptotic expansion for
large ``z``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError

EULER_GAMMA_DIGITS = "0.577215664901532860606512090082"
EULER_GAMMA = float(EULER_GAMMA_DIGITS)

_SERIES_MAX = 2.0
_ASYMPTOTIC_MIN = 40.0
_EPS = 1e-17


@lru_cache(maxsize=None)
def harmonic_number(n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum((Fraction(1, j) for j in range(1, n + 1)), Fraction(0))


@dataclass(frozen=True)
class DigammaValue:
    """``harmonic_part - gamma_mult * EulerGamma``."""

    harmonic_part: Fraction
    gamma_mult: int = 1

    def __add__(self, other: "DigammaValue") -> "DigammaValue":
        return DigammaValue(self.harmonic_part + other.harmonic_part,
                            self.gamma_mult + other.gamma_mult)

    def __float__(self) -> float:
        return float(self.harmonic_part) - self.gamma_mult * EULER_GAMMA


def digamma_exact(n: int) -> DigammaValue:
    """``psi(n + 1) = -gamma + H_n``."""
    if n < 0:
        raise ValueError("digamma_exact needs n >= 0")
    return DigammaValue(harmonic_number(n), 1)


def _small_series(z: float):
    """(K0, K1) from the ascending series."""
    y = 0.25 * z * z
    log_half = math.log(0.5 * z)
    i0 = i1 = 0.0
    s0 = s1 = 0.0
    term0 = 1.0            # y^k / (k!)^2
    term1 = 0.5 * z        # (z/2)^(2k+1) / (k! (k+1)!)
    h_k = 0.0              # H_k
    k = 0
    while True:
        i0 += term0
        i1 += term1
        s0 += h_k * term0
        # psi(k+1) + psi(k+2) = -2 gamma + H_k + H_{k+1}
        h_k1 = h_k + 1.0 / (k + 1)
        s1 += (h_k + h_k1 - 2 * EULER_GAMMA) * term1
        k += 1
        term0 *= y / (k * k)
        term1 *= y / (k * (k + 1))
        h_k = h_k1
        if term0 < _EPS * i0 and term1 < _EPS * abs(i1):
            break
    k0 = -(log_half + EULER_GAMMA) * i0 + s0
    k1 = 1.0 / z + log_half * i1 - 0.5 * s1
    return k0, k1


def _steed(z: float):
    """(K0, K1) via Steed's evaluation of the CF2 continued fraction, z > 2."""
    b = 2.0 * (1.0 + z)
    d = 1.0 / b
    h = delh = d
    q1, q2 = 0.0, 1.0
    a1 = 0.25
    q = c = a1
    a = -a1
    s = 1.0 + q * delh
    for i in range(2, 100000):
        a -= 2 * (i - 1)
        c = -a * c / i
        qnew = (q1 - b * q2) / a
        q1, q2 = q2, qnew
        q += c * qnew
        b += 2.0
        d = 1.0 / (b + a * d)
        delh = (b * d - 1.0) * delh
        h += delh
        dels = q * delh
        s += dels
        if abs(dels / s) < 1e-17:
            break
    else:
        raise RuntimeError("continued fraction did not converge")
    h = a1 * h
    k0 = math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) / s
    k1 = k0 * (z + 0.5 - h) / z
    return k0, k1


def _asymptotic(z: float, nu: int) -> float:
    mu = 4.0 * nu * nu
    total = term = 1.0
    k = 1
    while True:
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        if abs(term) < 1e-17 or k > 60:
            break
        total += term
        k += 1
    return math.sqrt(math.pi / (2.0 * z)) * math.exp(-z) * total


def _check(z: float) -> float:
    z = float(z)
    if not z > 0 or math.isinf(z):
        raise DomainError(f"K_nu needs a positive finite argument, got {z}")
    return z


def bessel_K1(z: float) -> float:
    z = _check(z)
    if z <= _SERIES_MAX:
        return _small_series(z)[1]
    if z >= _ASYMPTOTIC_MIN:
        return _asymptotic(z, 1)
    return _steed(z)[1]


def bessel_K0(z: float) -> float:
    z = _check(z)
    if z <= _SERIES_MAX:
        return _small_series(z)[0]
    if z >= _ASYMPTOTIC_MIN:
        return _asymptotic(z, 0)
    return _steed(z)[0]
