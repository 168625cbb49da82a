"""Exact rational bookkeeping for Dedekind sums, eta-type multiplier systems,
and the level-2 cusp parameter table.

All phases are exact rationals (a UnitPhase with theta meaning e^{i*pi*theta});
nothing here touches floating point except the final conversion to a complex
number, which happens once per summand in the callers.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Optional

from mpmath import mp, mpf, mpc, workprec


def _mod2(theta: Fraction) -> Fraction:
    return theta - 2 * (theta.numerator // (2 * theta.denominator))


@dataclass(frozen=True)
class UnitPhase:
    """The unimodular complex number e^{i*pi*theta}, theta an exact rational in [0, 2)."""
    theta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "theta", _mod2(Fraction(self.theta)))

    def __mul__(self, other: "UnitPhase") -> "UnitPhase":
        return UnitPhase(self.theta + other.theta)

    def inverse(self) -> "UnitPhase":
        return UnitPhase(-self.theta)

    def conjugate(self) -> "UnitPhase":
        return self.inverse()

    def __pow__(self, m: int) -> "UnitPhase":
        return UnitPhase(m * self.theta)

    def to_mpc(self, bits: int = 64) -> mpc:
        with workprec(bits):
            t = mpf(self.theta.numerator) / self.theta.denominator
            return mpc(mp.cospi(t), mp.sinpi(t))

    @staticmethod
    def one() -> "UnitPhase":
        return UnitPhase(Fraction(0))


@dataclass(frozen=True)
class MoebiusMap:
    """An SL2(Z) matrix acting on the upper half-plane."""
    a: int
    b: int
    c: int
    d: int

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def normalized(self) -> "MoebiusMap":
        """Sign convention: c > 0, or c = 0 with d > 0 (negating represents the same map)."""
        if self.c < 0 or (self.c == 0 and self.d < 0):
            return MoebiusMap(-self.a, -self.b, -self.c, -self.d)
        return self


def dedekind_sum_direct(h: int, k: int) -> Fraction:
    """s(h,k) summed straight from the definition; O(k), test oracle."""
    if k <= 0:
        raise ValueError("k must be positive")
    if gcd(h, k) != 1:
        raise ValueError("h and k must be coprime")
    total = Fraction(0)
    for n in range(1, k):
        x = Fraction(h * n, k)
        total += Fraction(n, k) * (x - (x.numerator // x.denominator) - Fraction(1, 2))
    return total


@lru_cache(maxsize=200_000)
def dedekind_sum(h: int, k: int) -> Fraction:
    """s(h,k) via the reciprocity recursion, O(log k) rational steps."""
    if k <= 0:
        raise ValueError("k must be positive")
    h %= k
    if gcd(h, k) != 1:
        raise ValueError("h and k must be coprime")
    if k == 1 or h == 0:
        return Fraction(0)
    if h == 1:
        # closed form for s(1,k)
        return Fraction((k - 1) * (k - 2), 12 * k)
    # s(h,k) = -1/4 + (1/12)(h/k + k/h + 1/(hk)) - s(k mod h, h)
    rec = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h) + Fraction(1, h * k)) / 12
    return rec - dedekind_sum(k % h, h)


def eta_epsilon(m: MoebiusMap) -> UnitPhase:
    """Multiplier phase of the weight-1/2 eta transformation law for m in SL2(Z)."""
    if m.det() != 1:
        raise ValueError("matrix must have determinant 1")
    m = m.normalized()
    if m.c == 0:
        # then d = 1 after normalization
        return UnitPhase(Fraction(m.b, 12))
    return UnitPhase(Fraction(m.a + m.d, 12 * m.c) - dedekind_sum(m.d, m.c))


def f_multiplier(m: MoebiusMap) -> UnitPhase:
    """Multiplier phase of 1/(eta(t) eta(2t)) for m in Gamma_0(2)."""
    if m.det() != 1:
        raise ValueError("matrix must have determinant 1")
    if m.c % 2 != 0:
        raise ValueError("matrix must lie in Gamma_0(2) (even c)")
    e1 = eta_epsilon(m)
    e2 = eta_epsilon(MoebiusMap(m.a, 2 * m.b, m.c // 2, m.d))
    return (e1 * e2).inverse()


# --- level-2 cusp data -------------------------------------------------------

#: cusp index -> (p, q, c_g) with the cusp value p/q; cusp 1 is 0, cusp 2 is 1/2
CUSPS = {1: (0, 1, 2), 2: (1, 2, 4)}

#: width parameter at the source cusp 1/2 used throughout
SOURCE_CUSP = 2
ALPHA = Fraction(7, 8)   # alpha_1 = alpha_2


@dataclass(frozen=True)
class CuspParamRow:
    """Parameters attached to a Farey fraction h/k for the level-2 exact formula."""
    h: int
    k: int
    congruence_class: str     # "odd" | "zero_mod_4" | "two_mod_4"
    inverse_h: int            # the h', h'' or h''' actually used
    matrix: MoebiusMap
    beta: int                 # target cusp index, 1 or 2
    sigma: int
    delta: int
    G_phase: Fraction         # G_{h,k} / pi, exact

    def __post_init__(self):
        assert self.matrix.det() == 1
        assert self.sigma != 0 and -4 <= self.sigma <= 4
        assert self.delta == (-1 if self.sigma > 0 else 1)


def _inverse_solution(value: int, rhs: int, modulus: int, shift: int) -> int:
    """Minimal positive x with value*x == rhs (mod modulus), plus shift*modulus."""
    if modulus <= 1:
        # trivial congruence; any positive integer works
        return 1 + shift * max(modulus, 1)
    if gcd(value % modulus, modulus) != 1:
        raise ValueError("congruence has no solution")
    x = pow(value % modulus, -1, modulus) * (rhs % modulus) % modulus
    if x == 0:
        x = modulus
    return x + shift * modulus


def congruence_class_of(k: int) -> str:
    if k % 2 == 1:
        return "odd"
    return "zero_mod_4" if k % 4 == 0 else "two_mod_4"


@lru_cache(maxsize=200_000)
def gamma0_2_row(h: int, k: int, solution_shift: int = 0) -> CuspParamRow:
    """Cusp parameters for the Farey fraction h/k, 0 <= h < k, gcd(h,k)=1.

    solution_shift > 0 replaces the minimal positive congruence solution by
    minimal + shift*modulus; all derived analytic quantities must be unchanged.
    """
    if k <= 0 or not (0 <= h < k) or gcd(h, k) != 1:
        raise ValueError("need 0 <= h < k with gcd(h,k) = 1")

    if h == 0:
        # k = 1 forced; the generic formulas divide by h. Fix the row by a direct
        # choice of matrix sending the point at infinity to the cusp 1/2.
        return _finish_row(0, 1, "odd", 1, MoebiusMap(1, 0, 2, 1))

    cls = congruence_class_of(k)
    if cls == "odd":
        hinv = _inverse_solution(k - 2 * h, 1, 4 * h, solution_shift)
        b = ((k - 2 * h) * hinv - 1) // (4 * h)
        mat = MoebiusMap(hinv, b, 2 * hinv + 4 * h, 2 * b - 2 * h + k)
    elif cls == "zero_mod_4":
        hinv = _inverse_solution(k // 2 - h, 1, 2 * h, solution_shift)
        b = ((k // 2 - h) * hinv - 1) // (2 * h)
        mat = MoebiusMap(hinv, b, 2 * hinv + 2 * h, 2 * b + k // 2 - h)
    else:  # two_mod_4
        hinv = _inverse_solution(k, -1, h, solution_shift)
        d = (k * hinv + 1) // h - 2 * hinv
        mat = MoebiusMap(h, (k - 2 * h) // 4, 4 * hinv, d)
    return _finish_row(h, k, cls, hinv, mat)


def _finish_row(h: int, k: int, cls: str, hinv: int, mat: MoebiusMap) -> CuspParamRow:
    beta = 1 if cls == "two_mod_4" else 2
    p_beta, q_beta, c_beta = CUSPS[beta]
    # sigma from its two defining equations (source cusp 1/2: p_g=1, q_g=2, c_g=4)
    lhs1 = mat.a * (2 * h - k) + mat.b * 4 * h
    lhs2 = mat.c * (2 * h - k) + mat.d * 4 * h
    if p_beta == 0:
        sigma, rem = divmod(lhs2, q_beta)
        assert rem == 0 and lhs1 == 0
    else:
        sigma, rem = divmod(lhs1, p_beta)
        assert rem == 0 and lhs2 == sigma * q_beta
    delta = -1 if sigma > 0 else 1
    # G/pi = -(2/(k c_beta)) sigma q_beta (c P_g + d), P_g = 1/2
    g_phase = Fraction(-2 * sigma * q_beta, k * c_beta) * (Fraction(mat.c, 2) + mat.d)
    return CuspParamRow(h, k, cls, hinv, mat, beta, sigma, delta, g_phase)
