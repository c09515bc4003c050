"""Gamma-action on rank-two family Wach modules by successive approximation.

All matrices here have exact integer power-series entries. The refinement
works with residues mod p^W for a generous W and the results are judged only
through exactly computed residuals, so no precision claim is taken on trust.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NotSurjective, PropertyFailed, StalledResidual
from .families import Family, build_family, chain_potentials, FamilySpec
from .padic import vp
from .series import GammaElement, PiSeries

Mat2 = tuple  # 2x2 tuple of PiSeries


def _mmul(a, b):
    return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)) for i in range(2))


def _msub(a, b):
    return tuple(tuple(a[i][j] - b[i][j] for j in range(2)) for i in range(2))


def _mapply(a, fn):
    return tuple(tuple(fn(a[i][j]) for j in range(2)) for i in range(2))


def _imul(a, b, mod=None):
    out = [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]
    if mod:
        out = [[x % mod for x in row] for row in out]
    return out


def _adj(a):
    return [[a[1][1], -a[0][1]], [-a[1][0], a[0][0]]]


def _idet(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


@dataclass(frozen=True)
class GammaMatrix:
    gamma: GammaElement
    mat: tuple  # per position, a 2x2 tuple of exact PiSeries
    order: int
    W: int  # coefficients meaningful mod p^W

    @property
    def f(self):
        return len(self.mat)


def default_W(spec: FamilySpec) -> int:
    """Digits carried: enough to absorb a loss of k per refinement step twice."""
    return spec.budget.M + 2 * spec.budget.N * spec.k + 6


def _reduce(m, W, p):
    return _mapply(m, lambda s: s.mod_coeffs(W))


def diagonal_G(fam: Family, g: GammaElement) -> tuple:
    """diag(a_j/gamma a_j, b_j/gamma b_j) from the potentials, as integer series."""
    p, N, W = fam.p, fam.N, fam.W
    out = []
    zero = PiSeries.zero(p, N)
    for j in range(fam.f):
        x = fam.pa[j] * fam.pa[j].gamma_act(g).inverse()
        y = fam.pb[j] * fam.pb[j].gamma_act(g).inverse()
        out.append(((x.to_int_poly(W), zero), (zero, y.to_int_poly(W))))
    return tuple(out)


def residual(fam: Family, G: GammaMatrix) -> tuple:
    """Pi phi(G) - G gamma(Pi), per position."""
    f = fam.f
    out = []
    for j in range(f):
        Pi = fam.Pi[j]
        lhs = _mmul(Pi, _mapply(G.mat[(j + 1) % f], lambda s: s.frobenius()))
        rhs = _mmul(G.mat[j], _mapply(Pi, lambda s: s.gamma_act(G.gamma)))
        out.append(_msub(lhs, rhs))
    return tuple(out)


def _order(mats, M) -> int:
    return min(e.order_mod(M) for m in mats for row in m for e in row)


def residual_order(fam: Family, G: GammaMatrix, M: int | None = None) -> int:
    return _order(residual(fam, G), fam.spec.budget.M if M is None else M)


def initial_G(fam: Family, g: GammaElement) -> GammaMatrix:
    """G^{(ell)}: the diagonal solution, certified to commute mod pi^ell."""
    G = GammaMatrix(g, diagonal_G(fam, g), 0, fam.W)
    ell = min(fam.spec.ell, fam.N)
    if residual_order(fam, G, M=fam.spec.budget.M) < ell:
        raise PropertyFailed("diagonal approximation misses order ell")
    return GammaMatrix(g, G.mat, ell, fam.W)


# the linear operator -----------------------------------------------------------

def _op_matrix(Q, Mop, mod):
    """4x4 matrix of H -> H - Q H Mop on row-major vec(H)."""
    L = [[0] * 4 for _ in range(4)]
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    L[2 * a + b][2 * c + d] = -Q[a][c] * Mop[d][b]
    for i in range(4):
        L[i][i] += 1
    return [[x % mod for x in row] for row in L]


def _inverse_mod_p(L, p):
    n = len(L)
    A = [[L[i][j] % p for j in range(n)] + [int(i == j) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] % p), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        inv = pow(A[col][col], -1, p)
        A[col] = [x * inv % p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                fac = A[r][col]
                A[r] = [(x - fac * y) % p for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]


def solve_operator(Q, Mop, T, p: int, W: int):
    """Solve H - Q H Mop = T mod p^W by lifting a mod-p solution digit by digit."""
    mod = p**W
    L = _op_matrix(Q, Mop, mod)
    Linv = _inverse_mod_p(L, p)
    if Linv is None:
        raise NotSurjective("the operator H -> H - Q H p^{f(s-1)} Q^{-1} is singular mod p")
    t = [T[0][0] % mod, T[0][1] % mod, T[1][0] % mod, T[1][1] % mod]
    x = [0, 0, 0, 0]
    r = list(t)
    for _ in range(W + 1):
        if all(v == 0 for v in r):
            break
        j = min(vp(v, p) for v in r if v)
        rb = [(v // p**j) % p for v in r]
        y = [sum(Linv[i][k] * rb[k] for k in range(4)) % p for i in range(4)]
        x = [(xi + p**j * yi) % mod for xi, yi in zip(x, y)]
        r = [(t[i] - sum(L[i][k] * x[k] for k in range(4))) % mod for i in range(4)]
    else:  # pragma: no cover
        raise NotSurjective("lifting did not terminate")
    return [[x[0], x[1]], [x[2], x[3]]]


def _scaled_inverse(P, shift: int, p: int, mod: int):
    """p^shift * P^{-1} mod p^W, requiring shift >= v_p(det P)."""
    d = _idet(P)
    v = vp(d, p)
    if shift < v:
        raise PropertyFailed("scaled inverse is not integral")
    unit = d // p**v
    fac = p ** (shift - v) * pow(unit, -1, mod) % mod
    return [[e * fac % mod for e in row] for row in _adj(P)]


def refine_G(fam: Family, G: GammaMatrix) -> GammaMatrix:
    """One step: G^{(s)} = G^{(s-1)} + pi^{s-1} H with s = order + 1."""
    p, f, N = fam.p, fam.f, fam.N
    s = G.order + 1
    if G.order >= N:
        return G
    res = residual(fam, G)
    P = [fam.P0(j) for j in range(f)]
    dets = [_idet(Pj) for Pj in P]
    loss = max(vp(d, p) for d in dets)
    W_new = G.W - loss
    mod = p**W_new
    modW = p**G.W
    # B_j = Delta_j P_j^{-1}, where Delta_j is the pi^{s-1} coefficient.
    B = []
    for j in range(f):
        Dl = [[res[j][a][b].coeff(s - 1) for b in range(2)] for a in range(2)]
        if any(x.denominator != 1 for row in Dl for x in row):
            raise PropertyFailed("non-integral residual")  # pragma: no cover
        Dl = [[int(x) % modW for x in row] for row in Dl]
        num = _imul(Dl, _adj(P[j]), modW)
        v = vp(dets[j], p)
        unit = dets[j] // p**v
        if any(x % p**v for row in num for x in row):
            raise PropertyFailed(f"residual at position {j} is not divisible by det P")
        uinv = pow(unit, -1, mod)
        B.append([[(x // p**v) * uinv % mod for x in row] for row in num])
    # Collapse to one equation at position 0.
    ident = [[1, 0], [0, 1]]
    T = [[0, 0], [0, 0]]
    Qi = ident
    for i in range(f):
        conj = _imul(_imul(Qi, B[i], mod), _scaled_inverse(Qi, i * (s - 1), p, mod), mod)
        T = [[(T[a][b] + conj[a][b]) % mod for b in range(2)] for a in range(2)]
        Qi = _imul(Qi, P[i])
    Q = Qi
    Mop = _scaled_inverse(Q, f * (s - 1), p, mod)
    H = [None] * f
    H[0] = solve_operator([[x % mod for x in r] for r in Q], Mop, T, p, W_new)
    for j in range(f - 1, 0, -1):
        Lj = _imul(_imul(P[j], H[(j + 1) % f], mod), _scaled_inverse(P[j], s - 1, p, mod), mod)
        H[j] = [[(B[j][a][b] + Lj[a][b]) % mod for b in range(2)] for a in range(2)]
    new = []
    for j in range(f):
        m = tuple(
            tuple(
                (G.mat[j][a][b] + PiSeries(p, N, 0, (H[j][a][b],)).shift(s - 1)).mod_coeffs(W_new)
                for b in range(2)
            )
            for a in range(2)
        )
        new.append(m)
    # Progress is judged at the working precision, one pi-order per step, so
    # no coefficient is skipped merely because it vanishes mod p^M.
    G2 = GammaMatrix(G.gamma, tuple(new), s, W_new)
    check = [
        e.coeff(s - 1)
        for m in residual(fam, G2)
        for row in m
        for e in row
    ]
    if any(c.denominator != 1 or c % mod for c in check):
        raise StalledResidual(f"coefficient {s - 1} did not vanish mod p^{W_new}")
    return G2


def solve_gamma(fam: Family, g: GammaElement) -> GammaMatrix:
    G = initial_G(fam, g)
    while G.order < fam.N:
        G = refine_G(fam, G)
    return G


def prepare(spec: FamilySpec, gammas=()) -> Family:
    return build_family(spec, W=default_W(spec), gammas=gammas)


@dataclass
class VerifyReport:
    commutation: list
    cocycle: int
    N: int

    @property
    def passed(self) -> bool:
        return min(self.commutation + [self.cocycle]) >= self.N

    def to_json(self) -> dict:
        return {
            "commutation": self.commutation,
            "cocycle": self.cocycle,
            "passed": self.passed,
        }


def verify(fam: Family, G1: GammaMatrix, G2: GammaMatrix, G12: GammaMatrix) -> VerifyReport:
    M, f = fam.spec.budget.M, fam.f
    if G12.gamma.a != G1.gamma.a * G2.gamma.a:
        raise ValueError("G12 must belong to the product of the two group elements")
    comm = [residual_order(fam, G) for G in (G1, G2, G12)]
    diffs = []
    for j in range(f):
        rhs = _mmul(G1.mat[j], _mapply(G2.mat[j], lambda s: s.gamma_act(G1.gamma)))
        diffs.append(_msub(G12.mat[j], rhs))
    return VerifyReport(comm, _order(diffs, M), fam.N)


def mod_p_image(G: GammaMatrix, p: int) -> tuple:
    """Coefficients of every entry reduced mod p (for specialization checks)."""
    return tuple(
        tuple(tuple(tuple(c % p for c in e.int_coeffs(1)) for e in row) for row in m) for m in G.mat
    )


def gamma_samples(p: int) -> list[GammaElement]:
    """1+p, (1+p)^2 and a primitive root mod p; -1 as well when p = 2."""
    from sympy import primitive_root

    out = [GammaElement(1 + p, p), GammaElement((1 + p) ** 2, p)]
    if p > 2:
        out.append(GammaElement(int(primitive_root(p)), p))
    else:
        out.append(GammaElement(-1, p))
    return out
