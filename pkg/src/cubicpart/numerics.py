"""Arbitrary-precision numerics: precision policy and modified Bessel functions.

The evaluation engine only ever uses the ascending series (its truncation
error is bounded a posteriori); the asymptotic expansion exists for the
growth-rate checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from mpmath import mp, mpf, workprec

LN2 = math.log(2)


@dataclass(frozen=True)
class PrecisionConfig:
    mantissa_bits: int
    truncation_K: int
    round_tolerance: float = 1e-6

    def __post_init__(self):
        if self.mantissa_bits < 64:
            raise ValueError("mantissa_bits must be >= 64")
        if self.truncation_K < 1:
            raise ValueError("truncation_K must be >= 1")


@dataclass(frozen=True)
class BesselResult:
    nu: int
    z: object                 # mpf
    value: object             # mpf
    method: str               # "ascending_series" | "asymptotic"
    tail_bound: object        # mpf upper bound on the truncation error


def required_precision(n: int, K: int, round_tolerance: float = 1e-6) -> PrecisionConfig:
    """Mantissa bits large enough to resolve the target integer to round_tolerance."""
    if n < 0 or K < 1:
        raise ValueError("need n >= 0 and K >= 1")
    bits = math.ceil(math.pi * math.sqrt(n) / LN2) + 64 + math.ceil(math.log2(K + 1))
    return PrecisionConfig(max(bits, 65), K, round_tolerance)


def bessel_I(nu: int, z, prec: PrecisionConfig) -> BesselResult:
    """I_nu(z) for integer nu >= 0, z >= 0, by the ascending series.

    All terms are positive so there is no cancellation; working precision is
    raised by ~z/ln2 bits to absorb the e^z growth of the sum.
    """
    if nu < 0:
        raise ValueError("order must be non-negative")
    bits = prec.mantissa_bits
    guard = bits + int(float(z) / LN2) + 16
    with workprec(guard):
        zz = mpf(z)
        if zz < 0:
            raise ValueError("argument must be non-negative")
        if zz == 0:
            val = mpf(1) if nu == 0 else mpf(0)
            return BesselResult(nu, zz, val, "ascending_series", mpf(0))
        half = zz / 2
        term = half ** nu / mp.factorial(nu)
        total = term
        q = half * half
        m = 1
        eps = mpf(2) ** (-bits - 8)
        while True:
            term = term * q / (m * (m + nu))
            total += term
            ratio = q / ((m + 1) * (m + 1 + nu))
            if term < eps * total and ratio < mpf(1) / 2:
                tail = term * ratio / (1 - ratio)
                break
            m += 1
        return BesselResult(nu, zz, total, "ascending_series", tail)


def bessel_i2_scaled(c, x, bits: int) -> "mpf":
    """I_2(c*sqrt(x)) / x as an entire function of x (valid for x <= 0 too).

    Series: sum_m (c/2)^(2m+2) x^m / (m! (m+2)!).
    """
    scale = abs(float(c)) * math.sqrt(abs(float(x))) if x else 0.0
    with workprec(bits + int(scale / LN2) + 16):
        cc = mpf(c)
        xx = mpf(x)
        w = (cc / 2) ** 2
        term = w / 2                     # m = 0: (c/2)^2 / (0! 2!)
        total = term
        m = 1
        eps = mpf(2) ** (-bits - 8)
        while True:
            term = term * w * xx / (m * (m + 2))
            total += term
            if abs(term) < eps * max(abs(total), w) and abs(w * xx) < (m + 1) * (m + 3) / 2:
                break
            m += 1
        return total


def hankel_coefficient(k: int, nu: int):
    """a_k(nu) of the large-argument expansion: prod_{j<=k} (4 nu^2 - (2j-1)^2) / (8^k k!)."""
    from fractions import Fraction
    num = 1
    for j in range(1, k + 1):
        num *= 4 * nu * nu - (2 * j - 1) ** 2
    return Fraction(num, 8 ** k * math.factorial(k))


def bessel_I_asymptotic(nu: int, z, num_terms: int, bits: int = 113) -> BesselResult:
    """Large-argument expansion e^z/sqrt(2 pi z) * sum_k (-1)^k a_k(nu)/z^k."""
    if float(z) < 2 * nu * nu or float(z) <= 0:
        raise ValueError("argument too small for the asymptotic expansion")
    with workprec(bits + int(float(z) / LN2) + 16):
        zz = mpf(z)
        poly = mpf(0)
        for k in range(num_terms):
            a_k = hankel_coefficient(k, nu)
            poly += (-1) ** k * mpf(a_k.numerator) / a_k.denominator / zz ** k
        value = mp.exp(zz) / mp.sqrt(2 * mp.pi * zz) * poly
        a_next = hankel_coefficient(num_terms, nu)
        tail = mp.exp(zz) / mp.sqrt(2 * mp.pi * zz) * abs(mpf(a_next.numerator)) \
            / a_next.denominator / zz ** num_terms
        return BesselResult(nu, zz, value, "asymptotic", tail)
