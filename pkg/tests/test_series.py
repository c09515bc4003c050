from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from wachkit.errors import PrecisionLoss
from wachkit.padic import PrecisionBudget
from wachkit.series import (
    GammaElement,
    PiSeries,
    TauSeries,
    lambda_f,
    lambda_f_gamma,
    nm_phi,
    q_n,
    q_series,
    r_ring_check,
    tau_frobenius,
    working_precision,
)

N = 10


def as_fracs(s: PiSeries):
    return s.coeffs()


def rand_series(p, coeffs):
    return PiSeries.from_ints(coeffs, p, N)


def test_frobenius_examples():
    pi = PiSeries.pi(2, N)
    assert pi.frobenius().nums[:3] == (0, 2, 1)
    assert PiSeries.one(3, N).frobenius() == PiSeries.one(3, N)
    assert q_series(3, N).frobenius() == q_n(2, 3, N)


def test_gamma_examples():
    pi = PiSeries.pi(3, N)
    assert pi.gamma_act(GammaElement(4, 3)).nums[:6] == (0, 4, 6, 4, 1, 0)
    s = rand_series(3, [5, 1, 7, 2])
    assert s.gamma_act(GammaElement(1, 3)) == s
    q = q_series(3, N)
    g = GammaElement(4, 3)
    ratio = q.gamma_act(g).with_prec(20).inverse() * q
    assert ratio.coeff(0) == 1


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(-50, 50), min_size=1, max_size=6),
       st.lists(st.integers(-50, 50), min_size=1, max_size=6))
@settings(max_examples=40, deadline=None)
def test_frobenius_is_ring_map(p, a, b):
    x, y = rand_series(p, a), rand_series(p, b)
    assert (x * y).frobenius() == x.frobenius() * y.frobenius()
    assert (x + y).frobenius() == x.frobenius() + y.frobenius()


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(-50, 50), min_size=1, max_size=6))
@settings(max_examples=40, deadline=None)
def test_actions_match_oracle_composition(p, a):
    s = rand_series(p, a)
    fr = [Fraction(c) for c in a] + [Fraction(0)] * (N - len(a))
    assert as_fracs(s.frobenius()) == oracles.scompose(fr, oracles.phi_poly(p, N), N)
    g = 1 + p
    assert as_fracs(s.gamma_act(GammaElement(g, p))) == oracles.scompose(fr, oracles.gamma_poly(g, N), N)


@given(st.sampled_from([2, 3, 5]), st.lists(st.integers(-20, 20), min_size=1, max_size=5))
@settings(max_examples=30, deadline=None)
def test_phi_gamma_commute(p, a):
    s = rand_series(p, a)
    g = GammaElement((1 + p) ** 2, p)
    assert s.frobenius().gamma_act(g) == s.gamma_act(g).frobenius()


def test_gamma_composition():
    s = rand_series(3, [1, 2, 3, 4])
    g, h = GammaElement(4, 3), GammaElement(2, 3)
    assert s.gamma_act(h).gamma_act(g) == s.gamma_act(g.compose(h))


def test_inverse_of_unit_series():
    s = PiSeries.from_ints([2, 3, 1], 3, N).with_prec(12)
    prod = s * s.inverse()
    assert (prod - 1).certified_zero_mod(8)


def test_precision_cannot_increase():
    s = PiSeries.one(3, N).with_prec(5)
    with pytest.raises(PrecisionLoss):
        s.with_prec(6)


def test_lambda_examples():
    A = working_precision(PrecisionBudget(3, 8, N))
    lam = lambda_f(1, 3, N, A)
    assert lam.coeff(0) == 1
    g = GammaElement(4, 3)
    lg = lambda_f_gamma(1, g, N, A)
    assert lg.coeff(0) % 3**8 == 1
    # Independent check of all coefficients mod 3^8 against 30 explicit factors.
    oracle = oracles.lambda_oracle(3, 1, N, 30)
    for i in range(N):
        if lam.known_digits(i) >= 8:
            assert oracles.vp(lam.coeff(i) - oracle[i], 3) >= 8


def test_r_ring_membership():
    A = working_precision(PrecisionBudget(3, 8, N))
    assert r_ring_check(q_series(3, N) / 3)
    lam = lambda_f(2, 3, N, A)
    assert r_ring_check(lam) and r_ring_check(lam.inverse())
    assert not r_ring_check(PiSeries.const(Fraction(1, 3), 3, N))


def test_tau_frobenius_and_norm():
    p = 3
    a, b = PiSeries.from_ints([2, 1], p, N), PiSeries.from_ints([5], p, N)
    t = TauSeries((a, b))
    assert tau_frobenius(t).comps == (b.frobenius(), a.frobenius())
    c1, c2 = PiSeries.const(2, p, N), PiSeries.const(7, p, N)
    assert nm_phi(TauSeries((c1, c2))).comps == (c1 * c2, c2 * c1)
    q = q_series(p, N)
    nq = nm_phi(TauSeries((q, q)))
    q2 = q_n(2, p, N)
    assert nq.comps == (q * q2, q2 * q)
    consts = TauSeries((c1, c2, PiSeries.const(4, p, N)))
    r = consts
    for _ in range(3):
        r = tau_frobenius(r)
    assert r == consts
