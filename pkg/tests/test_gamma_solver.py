import random

import pytest
import sympy

import oracles
from wachkit.characters import CrystChar, rank1_wach
from wachkit.errors import NotSurjective
from wachkit.families import FamilySpec, build_family, types_for_induced
from wachkit.gamma_solver import (
    default_W,
    gamma_samples,
    initial_G,
    mod_p_image,
    prepare,
    refine_G,
    residual_order,
    solve_gamma,
    solve_operator,
    verify,
)
from wachkit.padic import PrecisionBudget
from wachkit.series import GammaElement


def _fam(k=(1, 1), tv=(1, 2), a=(0, 0), M=8, N=12, W=None):
    spec = FamilySpec(3, k, tv, a, budget=PrecisionBudget(3, M, N))
    return build_family(spec, W=W or default_W(spec), gammas=gamma_samples(3))


def test_initial_G_is_identity_mod_pi():
    fam = _fam()
    G = initial_G(fam, GammaElement(4, 3))
    for j in range(2):
        for a in range(2):
            for b in range(2):
                assert G.mat[j][a][b].coeff(0) % 3**8 == (a == b)
    assert G.order == fam.spec.ell


def test_operator_trivial_cases():
    Q = [[1, 2], [0, 3]]
    assert solve_operator(Q, [[3, 0], [0, 3]], [[0, 0], [0, 0]], 3, 6) == [[0, 0], [0, 0]]
    T = [[5, 1], [7, 2]]
    assert solve_operator(Q, [[0, 0], [0, 0]], T, 3, 6) == T
    with pytest.raises(NotSurjective):
        solve_operator([[1, 0], [0, 1]], [[1, 0], [0, 1]], T, 3, 6)


def test_operator_matches_elimination_oracle():
    rng = random.Random(5)
    p, W = 3, 8
    for _ in range(30):
        # f = 1, k = 1, s = 3: Q = P_0, Mop = p^{s-1} Q^{-1} = p^{2-1} adj(Q)
        Q = [[3, 0], [rng.randrange(9), 1]]
        adj = [[Q[1][1], -Q[0][1]], [-Q[1][0], Q[0][0]]]
        Mop = [[e * 3 for e in row] for row in adj]  # p^2 / det * adj, det = 3
        T = [[rng.randrange(3**W) for _ in range(2)] for _ in range(2)]
        H = solve_operator(Q, Mop, T, p, W)
        L = sympy.eye(4) - sympy.kronecker_product(sympy.Matrix(Q), sympy.Matrix(Mop).T)
        want = oracles.solve_mod(L.tolist(), [T[0][0], T[0][1], T[1][0], T[1][1]], p, W)
        assert [H[0][0], H[0][1], H[1][0], H[1][1]] == want


def test_full_solve_and_idempotent_refine():
    fam = _fam(a=(3, 0))
    g = GammaElement(4, 3)
    G = solve_gamma(fam, g)
    assert residual_order(fam, G) >= 12
    assert refine_G(fam, G) is G


def test_uniqueness_across_working_precisions():
    g = GammaElement(2, 3)
    fam1 = _fam(k=(2, 1), a=(3, 3), M=6, N=8)
    fam2 = _fam(k=(2, 1), a=(3, 3), M=6, N=8, W=default_W(fam1.spec) + 7)
    G1, G2 = solve_gamma(fam1, g), solve_gamma(fam2, g)
    mod = 3**6
    for m1, m2 in zip(G1.mat, G2.mat):
        for r1, r2 in zip(m1, m2):
            for e1, e2 in zip(r1, r2):
                assert all((x - y) % mod == 0 for x, y in zip(e1.int_coeffs(6), e2.int_coeffs(6)))


def test_identity_gamma_gives_identity():
    fam = _fam(a=(3, 3))
    G = solve_gamma(fam, GammaElement(1, 3))
    for m in G.mat:
        for a in range(2):
            for b in range(2):
                c = m[a][b].int_coeffs(8)
                assert c[0] == (a == b) and not any(c[1:])


def test_split_family_at_zero_is_sum_of_characters():
    # (t1, t3) at a = 0 is diag(q^{k_1}, 1), diag(1, q^{k_0}) by position.
    k0, k1 = 2, 1
    fam = _fam(k=(k0, k1), tv=(1, 3), M=6, N=8)
    g = GammaElement(4, 3)
    G = solve_gamma(fam, g)
    budget = PrecisionBudget(3, 6, 8)
    eta1 = rank1_wach(CrystChar(2, (0, k1)), budget).gamma_fn(g)
    eta2 = rank1_wach(CrystChar(2, (k0, 0)), budget).gamma_fn(g)
    for j in range(2):
        m = G.mat[j]
        assert not any(m[0][1].int_coeffs(6)) and not any(m[1][0].int_coeffs(6))
        assert m[0][0].int_coeffs(6) == eta1[j].int_coeffs(6)
        assert m[1][1].int_coeffs(6) == eta2[j].int_coeffs(6)


def test_end_to_end_k21():
    gs = gamma_samples(3)
    tv = types_for_induced((2, 1, 0, 0))
    fam = prepare(FamilySpec(3, (2, 1), tv, (3, 3), budget=PrecisionBudget(3, 8, 10)), gammas=gs)
    g1, g2 = gs[0], gs[2]
    Gs = [solve_gamma(fam, g) for g in (g1, g2, g1.compose(g2))]
    rep = verify(fam, *Gs)
    assert rep.passed
    assert rep.to_json()["passed"] is True
    with pytest.raises(ValueError):
        verify(fam, Gs[0], Gs[1], Gs[0])
    fam0 = prepare(FamilySpec(3, (2, 1), tv, (0, 0), budget=PrecisionBudget(3, 8, 10)), gammas=gs)
    assert mod_p_image(solve_gamma(fam0, g1), 3) == mod_p_image(Gs[0], 3)


def test_gamma_samples():
    assert [g.a for g in gamma_samples(3)] == [4, 16, 2]
    assert [g.a for g in gamma_samples(2)] == [3, 9, -1]
