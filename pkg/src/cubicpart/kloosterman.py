"""Finite exponential sums over Farey denominators.

A_classical is the sum appearing in the classical exact series for p(n).
A_cubic is its level-2 analogue for the cubic counting function, assembled
per congruence class of k from the tabulated transformation matrices;
A_cubic_via_zuckerman reassembles the same quantity from the general
cusp-expansion parameters as an independent derivation-level cross-check.
A_cubic_regrouped is the two-class form obtained after rearranging the
absolutely convergent series; its phases are pure Dedekind-sum data and do
not touch the transformation matrices at all.

Each summand is one exact rational phase, exponentiated once. Summation
order is fixed (ascending h) for bit-reproducibility.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from mpmath import mp, mpc, mpf, workprec

from .modular import (ALPHA, UnitPhase, congruence_class_of, dedekind_sum,
                      f_multiplier, gamma0_2_row)
from .numerics import PrecisionConfig


@dataclass(frozen=True)
class KloostermanValue:
    k: int
    n: int
    kind: str                  # "classical" | "cubic_odd" | "cubic_0mod4" | "cubic_2mod4" | "regrouped"
    value: object              # mpc at the stated working precision
    term_count: int


def coprime_residues(k: int):
    if k == 1:
        return [0]
    return [h for h in range(k) if gcd(h, k) == 1]


def classical_theta(m: int, k: int) -> Fraction:
    """Static phase (units of pi) of one summand of the classical A_k."""
    return dedekind_sum(m, k)


def A_classical(k: int, n: int, prec: PrecisionConfig) -> KloostermanValue:
    """sum over coprime m of e^{i pi (s(m,k) - 2nm/k)}."""
    bits = prec.mantissa_bits
    with workprec(bits):
        total = mpc(0)
        count = 0
        for m in coprime_residues(k):
            theta = classical_theta(m, k) - Fraction(2 * n * m, k)
            total += UnitPhase(theta).to_mpc(bits)
            count += 1
    return KloostermanValue(k, n, "classical", total, count)


# --- closed form for the classical sum ---------------------------------------
#
# A_classical(k, n) collapses to sqrt(k/3) * sum over the few j in [0, 2k)
# with (3j^2+j)/2 + n == 0 (mod k) of (-1)^j cos(pi (6j+1)/(6k)).  The
# solutions come from the square roots of 1 - 24n modulo 24k, so each k costs
# a quadratic-congruence solve instead of phi(k) phase multiplications.

def _tonelli(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p (a assumed to be a residue)."""
    if a == 0:
        return 0
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, tt = 0, t
        while tt != 1:
            tt = tt * tt % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return r


def _sqrt_mod_unit(a: int, p: int, e: int):
    """All x with x^2 == a (mod p^e), gcd(a, p) = 1."""
    if e == 0:
        return [0]
    if p == 2:
        if e == 1:
            return [1]
        if e == 2:
            return [1, 3] if a % 4 == 1 else []
        if a % 8 != 1:
            return []
        roots, mod = [1, 3, 5, 7], 8
        for _ in range(e - 3):
            mod *= 2
            roots = sorted({c % mod for r in roots for c in (r, r + mod // 2)
                            if (c * c - a) % mod == 0})
        return roots
    if pow(a, (p - 1) // 2, p) != 1:
        return []
    x, mod = _tonelli(a % p, p), p
    for _ in range(e - 1):
        mod *= p
        x = (x - (x * x - a) * pow(2 * x % mod, -1, mod)) % mod
    return sorted({x, mod - x})


def _sqrt_mod_prime_power(a: int, p: int, e: int):
    """All x in [0, p^e) with x^2 == a (mod p^e)."""
    m = p ** e
    a %= m
    if a == 0:
        step = p ** ((e + 1) // 2)
        return [c * step for c in range(p ** (e - (e + 1) // 2))]
    s = 0
    while a % p == 0:
        a //= p
        s += 1
    if s % 2:
        return []
    t = s // 2
    base = _sqrt_mod_unit(a % (p ** (e - s)), p, e - s)
    step = p ** (e - s + t)
    return sorted({(y * p ** t + c * step) % m
                   for y in base for c in range(p ** t)})


@lru_cache(maxsize=None)
def _factorize(m: int):
    f = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            e = 0
            while m % d == 0:
                m //= d
                e += 1
            f.append((d, e))
        d += 1 if d == 2 else 2
    if m > 1:
        f.append((m, 1))
    return tuple(f)


def sqrt_mod(a: int, m: int):
    """All square roots of a modulo m, by prime-power solves glued with CRT."""
    if m == 1:
        return [0]
    roots = [0]
    mod = 1
    for p, e in _factorize(m):
        pe = p ** e
        part = _sqrt_mod_prime_power(a, p, e)
        if not part:
            return []
        inv_mod = pow(mod, -1, pe) if mod > 1 else 1
        roots = [r + mod * ((inv_mod * (s - r)) % pe) for r in roots for s in part]
        mod *= pe
    return sorted(roots)


@lru_cache(maxsize=500_000)
def _selberg_terms(k: int, r: int):
    """Terms of the collapsed classical sum at argument n == r (mod k):
    tuples (sign, argument) with A_classical = sqrt(k/3) sum sign*cos(pi*arg)."""
    out = []
    for root in sqrt_mod((1 - 24 * r) % (24 * k), 24 * k):
        if root % 6 == 1 and root < 12 * k:
            j = (root - 1) // 6
            if (3 * j * j + j + 2 * r) % (2 * k) == 0:
                out.append((-1 if j % 2 else 1, Fraction(6 * j + 1, 6 * k)))
    return tuple(out)


def selberg_terms(k: int, n: int):
    return _selberg_terms(k, n % k)


def A_classical_selberg(k: int, n: int, prec: PrecisionConfig) -> KloostermanValue:
    """A_classical by the collapsed closed form (cross-check and fast path)."""
    bits = prec.mantissa_bits
    with workprec(bits):
        terms = selberg_terms(k, n)
        total = mp.sqrt(mpf(k) / 3) * sum(
            (s * mp.cospi(mpf(a.numerator) / a.denominator) for s, a in terms),
            mpf(0))
    return KloostermanValue(k, n, "classical", mpc(total), len(terms))


def _cubic_kind(k: int) -> str:
    return {"odd": "cubic_odd", "zero_mod_4": "cubic_0mod4",
            "two_mod_4": "cubic_2mod4"}[congruence_class_of(k)]


@lru_cache(maxsize=500_000)
def cubic_static_theta(k: int, h: int, solution_shift: int = 0) -> Fraction:
    """The n-independent phase (units of pi) of one A_cubic summand, closed form.

    Assembled from the tabulated transformation matrix per congruence class:
    inverse multiplier of the eta-quotient, the delta sign factor, the
    cusp-width phase -2*(7/8)*h/k, and the closed-form G column divided by 8.
    """
    row = gamma0_2_row(h, k, solution_shift)
    phi = f_multiplier(row.matrix).inverse().theta
    phi += Fraction(1 - row.delta, 2)               # exp(i pi (1-delta) r/2), weight index r=1
    phi -= 2 * ALPHA * Fraction(h, k)               # exp(-2 pi i alpha_g h/k)
    cls = congruence_class_of(k)
    hh = row.inverse_h
    if k == 1:
        g_over_pi = Fraction(2)
    elif cls == "odd":
        g_over_pi = Fraction(hh * k - 1, 2 * k * h) + 1
    elif cls == "zero_mod_4":
        g_over_pi = Fraction(hh * k - 2, k * h) + 1
    else:
        g_over_pi = -Fraction(4 * hh * k + 4, k * h)
    phi -= g_over_pi / 8                            # exp(i G (alpha_beta - 1)), alpha_beta = 7/8
    return phi


@lru_cache(maxsize=500_000)
def zuckerman_static_theta(k: int, h: int, solution_shift: int = 0) -> Fraction:
    """Same quantity as cubic_static_theta, with G taken from its defining
    equation (via the cusp row) instead of the tabulated closed forms."""
    row = gamma0_2_row(h, k, solution_shift)
    phi = f_multiplier(row.matrix).inverse().theta
    phi += Fraction(1 - row.delta, 2)
    phi -= 2 * ALPHA * Fraction(h, k)
    phi += row.G_phase * ALPHA                      # Omega's sigma-coupling term
    phi -= row.G_phase                              # exp(-nu G i), nu = 1
    return phi


@lru_cache(maxsize=500_000)
def regrouped_theta(l: int, h: int) -> Fraction:
    """Static phase of the regrouped two-class sum: pure Dedekind-sum data.

    Odd l pairs s(h,l) with s(2h mod l, l); even l pairs s(h,l) with
    s(h mod l/2, l/2).
    """
    if l % 2:
        return dedekind_sum(h, l) + dedekind_sum((2 * h) % l, l)
    return dedekind_sum(h, l) + dedekind_sum(h % (l // 2), l // 2)


def _phase_sum(k: int, n: int, kind: str, static, prec: PrecisionConfig) -> KloostermanValue:
    bits = prec.mantissa_bits
    with workprec(bits):
        total = mpc(0)
        count = 0
        for h in coprime_residues(k):
            theta = static(h) - Fraction(2 * n * h, k)
            total += UnitPhase(theta).to_mpc(bits)
            count += 1
    return KloostermanValue(k, n, kind, total, count)


def A_cubic(k: int, n: int, prec: PrecisionConfig, solution_shift: int = 0) -> KloostermanValue:
    """Level-2 exponential sum for the cubic counting function, closed form."""
    return _phase_sum(k, n, _cubic_kind(k),
                      lambda h: cubic_static_theta(k, h, solution_shift), prec)


def A_cubic_via_zuckerman(k: int, n: int, prec: PrecisionConfig,
                          solution_shift: int = 0) -> KloostermanValue:
    """Independent derivation-level oracle for A_cubic."""
    return _phase_sum(k, n, _cubic_kind(k),
                      lambda h: zuckerman_static_theta(k, h, solution_shift), prec)


def A_cubic_regrouped(l: int, n: int, prec: PrecisionConfig) -> KloostermanValue:
    """The regrouped-class sum at index l; always real (h and l-h summands
    are complex conjugates)."""
    return _phase_sum(l, n, "regrouped", lambda h: regrouped_theta(l, h), prec)


def regrouped_index(k: int) -> int:
    """Map a Farey denominator k to the index l of the regrouped sum that
    its class contributes to: odd k feeds l = 2k, k = 0 mod 4 feeds l = k,
    and k = 2 mod 4 feeds l = k/2."""
    cls = congruence_class_of(k)
    if cls == "odd":
        return 2 * k
    if cls == "zero_mod_4":
        return k
    return k // 2


def regrouping_phase(k: int, n: int) -> UnitPhase:
    """Exact unimodular factor c with A_cubic_regrouped(regrouped_index(k), n)
    = c * A_cubic(k, n - 1): (-1)^n for odd and 0 mod 4 classes, and
    (-1)^n e^{i pi/8} for the 2 mod 4 class."""
    theta = Fraction(n % 2)
    if congruence_class_of(k) == "two_mod_4":
        theta += Fraction(1, 8)
    return UnitPhase(theta)
