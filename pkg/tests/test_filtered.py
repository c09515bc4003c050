import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from wachkit.errors import AllWeightsZero, NotAdmissible
from wachkit.families import FamilySpec, build_D
from wachkit.filtered import (
    FiltMod2,
    classify,
    det_weights,
    mat,
    minv,
    mmul,
    mvec,
    phi_power_f,
    trace_reducibility,
    weak_admissible,
)


def test_phi_power_examples():
    D = FiltMod2.standard(3, (2, 1), (3, 1), (1, 9), (1, 1), (1, 1))
    assert phi_power_f(D)[0] == mat(3, 0, 0, 9)
    one = FiltMod2(3, (1,), ((mat(1, 2, 3, 4)),), (1,), (0,))
    assert phi_power_f(one)[0] == mat(1, 2, 3, 4)


def test_admissibility_examples():
    unit = FiltMod2(3, (0, 0), (mat(1, 0, 0, 1), mat(2, 0, 0, 1)), (1, 1), (0, 0))
    assert weak_admissible(unit)
    assert weak_admissible(FiltMod2.standard(3, (2,), (1,), (9,), (1,), (1,)))
    assert not weak_admissible(FiltMod2.standard(3, (2,), (27,), (Fraction(1, 3),), (1,), (1,)))


def test_one_three_family():
    def kind(a):
        return classify(build_D(FamilySpec(3, (2, 1), (1, 3), a))).kind

    assert kind((3, 9)) == "Irreducible"
    assert kind((0, 0)) == "SplitReducible"
    assert kind((3, 0)) == "NonSplitReducible"
    assert kind((0, 3)) == "NonSplitReducible"


def test_trace_reducibility_examples():
    c1 = build_D(FamilySpec(3, (2, 1), (3, 3)))
    M = phi_power_f(c1)[0]
    assert M[0][0] + M[1][1] == 1 + 3**3
    assert trace_reducibility(c1)
    induced = build_D(FamilySpec(3, (2, 1), (1, 2)))
    assert not trace_reducibility(induced)
    with pytest.raises(AllWeightsZero):
        trace_reducibility(FiltMod2.standard(3, (0,), (1,), (1,), (1,), (1,)))


def test_classify_raises_when_not_admissible():
    with pytest.raises(NotAdmissible):
        classify(FiltMod2.standard(3, (2,), (27,), (1,), (1,), (1,)))


def test_det_weights():
    D = FiltMod2.standard(3, (2, 1), (9, 1), (1, 3), (1, 0), (0, 1))
    d = det_weights(D)
    assert d.weights == (2, 1) and d.reduction_exp == 3
    assert d.frob == (9, 3)


def test_json_round_trip():
    D = build_D(FamilySpec(3, (2, 1), (1, 4), (3, 0)))
    assert FiltMod2.from_json(D.to_json()) == D


def test_form_validation():
    with pytest.raises(ValueError):
        FiltMod2(3, (1,), (mat(1, 1, 0, 1),), (1,), (0,), "standard")
    with pytest.raises(ValueError):
        FiltMod2(3, (1,), (mat(1, 0, 0, 1),), (0,), (0,))


def _random_general(rng):
    p = rng.choice((2, 3, 5))
    f = rng.randint(1, 3)
    k = [rng.randint(0, 3) for _ in range(f)]
    frob = []
    for _ in range(f):
        while True:
            m = mat(*(Fraction(rng.randint(-3, 3)) * p ** rng.randint(0, 2) for _ in range(4)))
            if m[0][0] * m[1][1] - m[0][1] * m[1][0]:
                break
        frob.append(m)
    us = [(Fraction(rng.choice((0, 1, 2))), Fraction(rng.choice((1, p, -1)))) for _ in range(f)]
    return FiltMod2(p, tuple(k), tuple(frob), tuple(u[0] for u in us), tuple(u[1] for u in us))


def test_general_classifier_is_base_change_invariant():
    # Oracle: a constant change of basis v = C_i v' gives
    # A'_i = C_i^{-1} A_i C_{i+1} and u'_i = C_i^{-1} u_i, which must not
    # change the verdict.
    rng = random.Random(7)
    checked = 0
    for _ in range(400):
        D = _random_general(rng)
        f = D.f
        Cs = []
        for _ in range(f):
            while True:
                C = mat(*(Fraction(rng.randint(-2, 2)) for _ in range(4)))
                if C[0][0] * C[1][1] - C[0][1] * C[1][0]:
                    break
            Cs.append(C)
        frob = tuple(mmul(mmul(minv(Cs[i]), D.frob[i]), Cs[(i + 1) % f]) for i in range(f))
        us = [mvec(minv(Cs[i]), D.u(i)) for i in range(f)]
        E = FiltMod2(D.p, D.weights, frob, tuple(u[0] for u in us), tuple(u[1] for u in us))
        a, b = weak_admissible(D), weak_admissible(E)
        assert a == b
        if a:
            checked += 1
            assert classify(D).kind == classify(E).kind
    assert checked > 20


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_standard_matches_brute_force(seed):
    rng = random.Random(seed)
    p = rng.choice((2, 3, 5))
    f = rng.randint(1, 3)
    k = tuple(rng.randint(0, 3) for _ in range(f))
    alpha = [Fraction(p) ** rng.randint(0, 3) for _ in range(f)]
    delta = [Fraction(rng.choice((1, -1))) * p ** rng.randint(0, 3) for _ in range(f)]
    if math.prod(alpha) == math.prod(delta):
        return  # phi^f scalar: more stable lines than the closed form covers
    xs = [Fraction(rng.choice((0, 1))) for _ in range(f)]
    ys = [Fraction(1 - x if rng.random() < 0.7 else 1) for x in xs]
    D = FiltMod2.standard(p, k, alpha, delta, xs, ys)
    adm, kind = oracles.brute_force_standard(p, k, alpha, delta, xs, ys)
    assert weak_admissible(D) == adm
    if adm:
        assert classify(D).kind == kind
