"""Exact-rational modular bookkeeping: Dedekind sums, multipliers, cusp rows."""
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from mpmath import mp, mpc, mpf, workprec

from cubicpart.modular import (ALPHA, CUSPS, MoebiusMap, UnitPhase,
                               congruence_class_of, dedekind_sum,
                               dedekind_sum_direct, eta_epsilon, f_multiplier,
                               gamma0_2_row)


# --- UnitPhase ---------------------------------------------------------------

def test_unit_phase_reduction():
    assert UnitPhase(Fraction(5, 2)).theta == Fraction(1, 2)
    assert UnitPhase(Fraction(-1, 4)).theta == Fraction(7, 4)


@settings(max_examples=60, deadline=None)
@given(st.fractions(max_denominator=64), st.fractions(max_denominator=64))
def test_unit_phase_group_laws(a, b):
    x, y = UnitPhase(a), UnitPhase(b)
    assert (x * y).theta == UnitPhase(a + b).theta
    assert (x * x.inverse()).theta == 0
    assert (x ** 3).theta == UnitPhase(3 * a).theta


def test_unit_phase_to_complex():
    z = UnitPhase(Fraction(1, 2)).to_mpc(128)
    with workprec(128):
        assert abs(z - mpc(0, 1)) < mpf(2) ** -120


# --- Dedekind sums -----------------------------------------------------------

def test_dedekind_small_values():
    assert dedekind_sum(5, 1) == 0
    assert dedekind_sum(1, 2) == 0
    assert dedekind_sum(1, 3) == Fraction(1, 18)


def test_dedekind_recursive_equals_direct():
    for k in range(1, 201):
        for h in range(1, k):
            if gcd(h, k) == 1:
                assert dedekind_sum(h, k) == dedekind_sum_direct(h, k)


def test_dedekind_reciprocity():
    for k in range(2, 101):
        for h in range(1, k):
            if gcd(h, k) == 1:
                lhs = dedekind_sum(h, k) + dedekind_sum(k, h)
                rhs = Fraction(-1, 4) + (Fraction(h, k) + Fraction(k, h)
                                         + Fraction(1, h * k)) / 12
                assert lhs == rhs


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=2, max_value=400), st.integers(min_value=1, max_value=400))
def test_dedekind_symmetries(k, h):
    if gcd(h, k) != 1:
        return
    assert dedekind_sum((-h) % k, k) == -dedekind_sum(h, k)
    assert dedekind_sum(h + k, k) == dedekind_sum(h, k)


def test_dedekind_domain_errors():
    with pytest.raises(ValueError):
        dedekind_sum(2, 4)
    with pytest.raises(ValueError):
        dedekind_sum_direct(1, 0)


# --- eta multiplier ----------------------------------------------------------

def _eta(tau, terms=400):
    q = mp.e ** (2j * mp.pi * tau)
    prod = mp.e ** (1j * mp.pi * tau / 12)
    for n in range(1, terms):
        prod *= 1 - q ** n
    return prod


def _eta_law_residual(m: MoebiusMap, tau):
    m = m.normalized()
    image = (m.a * tau + m.b) / (m.c * tau + m.d)
    eps = eta_epsilon(m).to_mpc(mp.prec)
    if m.c == 0:
        pred = eps * _eta(tau)
    else:
        pred = eps * mp.sqrt(-1j * (m.c * tau + m.d)) * _eta(tau)
    return abs(_eta(image) - pred)


def test_eta_epsilon_special_values():
    assert eta_epsilon(MoebiusMap(1, 0, 0, 1)).theta == 0
    assert eta_epsilon(MoebiusMap(1, 1, 0, 1)).theta == Fraction(1, 12)
    assert eta_epsilon(MoebiusMap(0, -1, 1, 0)).theta == 0


def test_eta_transformation_law_numeric():
    with workprec(128):
        tau = mpf("0.3") + 1j
        for m in (MoebiusMap(0, -1, 1, 0), MoebiusMap(1, 0, 1, 1),
                  MoebiusMap(2, 1, 3, 2), MoebiusMap(-1, 0, 4, -1)):
            assert _eta_law_residual(m, tau) < mpf(10) ** -20


def test_eta_epsilon_composition_consistency():
    with workprec(128):
        tau = mpf("0.1") + mpf("0.9") * 1j
        g1 = MoebiusMap(2, 1, 3, 2)
        g2 = MoebiusMap(1, -1, 1, 0)
        prod = MoebiusMap(g1.a * g2.a + g1.b * g2.c, g1.a * g2.b + g1.b * g2.d,
                          g1.c * g2.a + g1.d * g2.c, g1.c * g2.b + g1.d * g2.d)
        assert _eta_law_residual(prod, tau) < mpf(10) ** -20


def test_eta_epsilon_root_of_unity_order():
    for m in (MoebiusMap(2, 1, 3, 2), MoebiusMap(1, 0, 2, 1),
              MoebiusMap(3, 2, 7, 5)):
        theta = eta_epsilon(m).theta
        assert (12 * m.normalized().c * theta).denominator == 1


def test_eta_epsilon_det_check():
    with pytest.raises(ValueError):
        eta_epsilon(MoebiusMap(1, 1, 1, 1))


# --- multiplier of 1/(eta(t) eta(2t)) ---------------------------------------

def _big_f(tau, terms=400):
    return 1 / (_eta(tau) * _eta(2 * tau))


def test_f_multiplier_translation():
    # F(tau+1) = e^{-i pi/4} F(tau), forced by the q^{-1/8} leading term
    assert f_multiplier(MoebiusMap(1, 1, 0, 1)).theta == Fraction(7, 4)


def test_f_multiplier_numeric_law():
    with workprec(128):
        tau = mpf("0.1") + mpf("0.8") * 1j
        m = MoebiusMap(1, 0, 2, 1)
        image = (m.a * tau + m.b) / (m.c * tau + m.d)
        eps = f_multiplier(m).to_mpc(mp.prec)
        pred = eps * (-1j * (m.c * tau + m.d)) ** -1 * _big_f(tau)
        assert abs(_big_f(image) - pred) < mpf(10) ** -20


def test_f_multiplier_requires_even_c():
    with pytest.raises(ValueError):
        f_multiplier(MoebiusMap(1, 0, 1, 1))


# --- cusp parameter rows -----------------------------------------------------

def test_cusp_constants():
    assert CUSPS[1] == (0, 1, 2) and CUSPS[2] == (1, 2, 4)
    assert ALPHA == Fraction(7, 8)


def test_row_examples_by_class():
    row = gamma0_2_row(1, 2)
    assert (row.matrix.a, row.matrix.b, row.matrix.c, row.matrix.d) == (1, 0, 4, 1)
    assert (row.beta, row.sigma, row.delta) == (1, 4, -1)
    row = gamma0_2_row(1, 4)
    assert (row.beta, row.sigma, row.delta) == (2, -2, 1)
    row = gamma0_2_row(1, 3)
    assert (row.beta, row.sigma, row.delta) == (2, -1, 1)


def test_rows_sound_up_to_100():
    for k in range(1, 101):
        for h in range(k):
            if gcd(h, k) != 1:
                continue
            row = gamma0_2_row(h, k)
            m = row.matrix
            assert m.det() == 1
            assert m.c % 2 == 0
            cls = congruence_class_of(k)
            assert row.congruence_class == cls
            expected_sigma = {"odd": -1, "zero_mod_4": -2, "two_mod_4": 4}[cls]
            assert row.sigma == expected_sigma
            assert row.delta == (-1 if row.sigma > 0 else 1)
            assert row.beta == (1 if cls == "two_mod_4" else 2)
            # defining equations of sigma (source cusp 1/2: p=1, q=2, c=4)
            p_b, q_b, _ = CUSPS[row.beta]
            lhs1 = m.a * (2 * h - k) + m.b * 4 * h
            lhs2 = m.c * (2 * h - k) + m.d * 4 * h
            assert lhs1 == row.sigma * p_b
            assert lhs2 == row.sigma * q_b


def test_row_shift_changes_matrix_not_class_data():
    for (h, k) in ((1, 3), (1, 4), (1, 2), (3, 8), (2, 5)):
        base = gamma0_2_row(h, k)
        shifted = gamma0_2_row(h, k, 1)
        assert shifted.matrix.det() == 1
        assert (shifted.sigma, shifted.delta, shifted.beta) == \
            (base.sigma, base.delta, base.beta)


def test_row_domain_errors():
    with pytest.raises(ValueError):
        gamma0_2_row(2, 4)
    with pytest.raises(ValueError):
        gamma0_2_row(3, 2)
