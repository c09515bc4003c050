from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wachkit.errors import NotAUnit, PrecisionLoss
from wachkit.padic import PadicScalar, PrecisionBudget, Valuation, binom, modulus_poly, vp, vp_frac

primes = st.sampled_from([2, 3, 5, 7])


def test_valuation_examples():
    assert PadicScalar.from_int(3, 3, 8).val() == Valuation(1)
    assert PadicScalar.from_int(0, 3, 8).val() == Valuation.at_least(8)
    assert PadicScalar.from_int(9 * 7, 3, 8).val() == Valuation(2)
    assert vp_frac(Fraction(2, 9), 3) == -2


def test_binom_examples():
    assert binom(7, 0, 3, 4) == 1
    assert binom(4, 2, 3, 4) == 6
    assert binom(1 + 3, 3, 3, 4) == 4
    assert binom(1 + 3, 3, 3, 4, M=6) == 4
    with pytest.raises(PrecisionLoss):
        binom(1 + 3, 3, 3, 4, M=4)  # 3! eats one digit


def test_unit_inverse_examples():
    assert PadicScalar.from_int(1, 3, 2).unit_inverse() == 1
    assert PadicScalar.from_int(2, 3, 2).unit_inverse().coeffs == (5,)
    with pytest.raises(NotAUnit):
        PadicScalar.from_int(3, 3, 2).unit_inverse()


def test_budget_rejects_composite():
    with pytest.raises(ValueError):
        PrecisionBudget(4, 8, 12)


@given(primes, st.integers(1, 6), st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_ring_axioms(p, M, a, b):
    x, y = PadicScalar.from_int(a, p, M), PadicScalar.from_int(b, p, M)
    assert (x + y).coeffs == ((a + b) % p**M,)
    assert (x * y).coeffs == ((a * b) % p**M,)
    assert x - x == 0


@given(primes, st.integers(1, 8), st.integers(1, 10**6))
def test_inverse_property(p, M, a):
    if a % p == 0:
        a += 1
    x = PadicScalar.from_int(a, p, M)
    assert x * x.unit_inverse() == 1


@given(primes, st.integers(2, 3), st.lists(st.integers(0, 50), min_size=3, max_size=3))
def test_inverse_in_extension(p, d, coeffs):
    coeffs = coeffs[:d]
    coeffs[0] = coeffs[0] * p + 1  # unit
    x = PadicScalar(p, 5, tuple(coeffs))
    assert x * x.unit_inverse() == 1


@given(primes, st.integers(1, 4))
def test_modulus_irreducible_degree(p, d):
    import sympy

    poly = modulus_poly(p, d)
    x = sympy.Symbol("x")
    full = x**d + sum(c * x**i for i, c in enumerate(poly))
    assert len(poly) == d and sympy.Poly(full, x, modulus=p).is_irreducible


@given(primes, st.integers(-500, 500), st.integers(0, 6))
def test_binom_matches_integers(p, a, n):
    from math import comb, factorial

    exact = 1
    for i in range(n):
        exact *= a - i
    exact //= factorial(n)
    assert binom(a, n, p, 5) == exact % p**5


@given(primes, st.integers(1, 4), st.lists(st.integers(0, 10**4), min_size=1, max_size=3))
def test_str_parse_round_trip(p, M, coeffs):
    x = PadicScalar(p, M, tuple(coeffs))
    assert PadicScalar.parse(str(x), p) == x


@given(primes, st.integers(1, 10**6), st.integers(1, 10**6))
def test_vp_additive(p, a, b):
    assert vp(a * b, p) == vp(a, p) + vp(b, p)
