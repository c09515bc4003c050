"""Crystalline characters, their rank-one Wach modules, and induction data.

Index convention. A tuple position j holds the object labelled j+1 (mod f), so
the Frobenius vector is (c q^{k_1}, q^{k_2}, ..., q^{k_{f-1}}, q^{k_0}). The
commutation identity at position j reads

    q^{k_{j+1}} phi(g_{j+1}) = g_j gamma(q)^{k_{j+1}},

and the closed product prod_i phi^i(lambda_{f,gamma})^{k_i} solves it at
position f-1, i.e. it is the entry carrying label 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import (
    AllWeightsZero,
    LevelMismatch,
    MalformedPair,
    PrecisionLoss,
    VerificationFailed,
)
from .padic import PadicScalar, PrecisionBudget
from .series import (
    GammaElement,
    PiSeries,
    TauSeries,
    lambda_f_gamma,
    q_series,
    working_precision,
)


@dataclass(frozen=True)
class CrystChar:
    """chi_{c,k}: unramified twist c times the product of chi_i^{k_i}."""

    level: int
    exps: tuple[int, ...]
    c: PadicScalar | int = 1

    def __post_init__(self):
        object.__setattr__(self, "exps", tuple(int(k) for k in self.exps))
        if len(self.exps) != self.level:
            raise ValueError("exponent vector length must equal the level")
        if isinstance(self.c, PadicScalar):
            if self.c.val().value != 0 or not self.c.val().exact:
                raise ValueError("the constant must be a unit")

    def to_json(self) -> dict:
        c = self.c if isinstance(self.c, int) else str(self.c)
        return {"level": self.level, "c": c, "exps": list(self.exps)}

    def pretty(self) -> str:
        parts = [f"η_{self.c}"]
        # Slot 0 carries k_1, ..., slot f-1 carries k_0.
        for i in range(self.level):
            k = self.exps[(i + 1) % self.level]
            parts.append(f"χ_{i}^{k}")
        return "χ = " + " · ".join(parts)


def char_mul(a: CrystChar, b: CrystChar) -> CrystChar:
    if a.level != b.level:
        raise LevelMismatch(f"levels {a.level} and {b.level}")
    return CrystChar(a.level, tuple(x + y for x, y in zip(a.exps, b.exps)), a.c * b.c)


def char_restrict(x: CrystChar, d: int) -> CrystChar:
    if d < 1:
        raise ValueError("d must be positive")
    return CrystChar(x.level * d, x.exps * d, x.c)


def char_conjugate(x: CrystChar, n: int) -> CrystChar:
    f = x.level
    return CrystChar(f, tuple(x.exps[(i + n) % f] for i in range(f)), x.c)


def basic_char(i: int, level: int) -> CrystChar:
    """chi_i, the character whose Frobenius vector is q at slot i."""
    exps = [0] * level
    exps[(i + 1) % level] = 1
    return CrystChar(level, tuple(exps))


# rank-one Wach modules --------------------------------------------------------

@dataclass
class WachRank1:
    char: CrystChar
    budget: PrecisionBudget
    slack: int = 4
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def f(self) -> int:
        return self.char.level

    def weight_at(self, j: int) -> int:
        """Weight carried by tuple position j (label j+1)."""
        return self.char.exps[(j + 1) % self.f]

    def phi_vec(self) -> TauSeries:
        """Frobenius vector without the constant c (which cancels throughout)."""
        p, N = self.budget.p, self.budget.N
        q = q_series(p, N)
        return TauSeries(tuple(q ** self.weight_at(j) for j in range(self.f)))

    def gamma_fn(self, g: GammaElement) -> TauSeries:
        key = g.a
        if key not in self._cache:
            self._cache[key] = self._solve(g)
        return self._cache[key]

    def _solve(self, g: GammaElement) -> TauSeries:
        slack = self.slack
        for _ in range(4):
            try:
                sol = self._solve_at(g, working_precision(self.budget, slack))
                if self.residual_order(g, sol) < self.budget.N:
                    raise VerificationFailed("commutation residual is nonzero at budget")
                return sol
            except PrecisionLoss:
                slack *= 2
        raise PrecisionLoss("could not certify the rank-one solution")

    def _solve_at(self, g: GammaElement, A: Fraction) -> TauSeries:
        p, N, f = self.budget.p, self.budget.N, self.f
        k = self.char.exps
        if g.is_identity or not any(k):
            return TauSeries((PiSeries.one(p, N),) * f)
        lg = lambda_f_gamma(f, g, N, A)
        top = PiSeries.one(p, N)
        cur = lg
        for i in range(f):
            if k[i]:
                top = top * cur ** k[i]
            cur = cur.frobenius()
        q = q_series(p, N)
        rho = q * q.gamma_act(g).with_prec(A).inverse()
        h: list[PiSeries | None] = [None] * f
        h[f - 1] = top
        for j in range(f - 2, -1, -1):
            h[j] = rho ** self.weight_at(j) * h[j + 1].frobenius()
        return TauSeries(tuple(h))

    def residual(self, g: GammaElement, sol: TauSeries | None = None) -> TauSeries:
        sol = self.gamma_fn(g) if sol is None else sol
        pv = self.phi_vec()
        out = []
        for j in range(self.f):
            out.append(pv[j] * sol[j + 1].frobenius() - sol[j] * pv[j].gamma_act(g))
        return TauSeries(tuple(out))

    def residual_order(self, g: GammaElement, sol: TauSeries | None = None) -> int:
        """pi-order of the commutation residual mod p^M."""
        res = self.residual(g, sol)
        return min(c.order_mod(self.budget.M) for c in res.comps)

    def cocycle_order(self, g1: GammaElement, g2: GammaElement) -> int:
        """pi-order of g^{g1 g2} - g^{g1} * g1(g^{g2}) mod p^M."""
        g12 = g1.compose(g2)
        a, b, ab = self.gamma_fn(g1), self.gamma_fn(g2), self.gamma_fn(g12)
        diff = ab - a * b.gamma_act(g1)
        return min(c.order_mod(self.budget.M) for c in diff.comps)

    def g_label(self, i: int, g: GammaElement) -> PiSeries:
        """Entry of the Gamma-vector carrying label i."""
        return self.gamma_fn(g)[i - 1]


def rank1_wach(x: CrystChar, budget: PrecisionBudget) -> WachRank1:
    if any(k < 0 for k in x.exps):
        raise ValueError("rank-one Wach modules are built for effective characters only")
    return WachRank1(x, budget)


# induced characters --------------------------------------------------------

def _check_bracket(l, weights=None) -> tuple[int, ...]:
    l = tuple(int(v) for v in l)
    if len(l) % 2:
        raise MalformedPair("level-2f vector expected")
    f = len(l) // 2
    for i in range(f):
        a, b = l[i], l[i + f]
        if min(a, b) != 0 or a < 0 or b < 0:
            raise MalformedPair(f"slots {i},{i + f} are not of the form {{0, k}}")
        if weights is not None and a + b != weights[i]:
            raise MalformedPair(f"slots {i},{i + f} do not carry weight {weights[i]}")
    return l


def weights_of(l) -> tuple[int, ...]:
    l = _check_bracket(l)
    f = len(l) // 2
    return tuple(l[i] + l[i + f] for i in range(f))


def induced_iso_test(l, m) -> bool:
    l, m = _check_bracket(l), _check_bracket(m)
    if len(l) != len(m):
        raise MalformedPair("levels differ")
    f = len(l) // 2
    shifted = l[f:] + l[:f]
    return m == l or m == shifted


def induced_irreducible(l) -> bool:
    l = tuple(l)
    f = len(l) // 2
    return any(l[i] != l[i + f] for i in range(f))


def enumerate_induced_classes(weights) -> list[tuple[int, ...]]:
    """One representative per isomorphism class of irreducible inductions.

    The slot of the first positive weight (in the order 1, ..., f-1, 0) is
    pinned to the lower half; every other positive weight picks a half.
    """
    k = tuple(int(v) for v in weights)
    f = len(k)
    order = list(range(1, f)) + [0]
    positive = [i for i in order if k[i] > 0]
    if not positive:
        raise AllWeightsZero("at least one weight must be positive")
    pinned, free = positive[0], positive[1:]
    reps = []
    for choice in product((0, 1), repeat=len(free)):
        l = [0] * (2 * f)
        l[pinned] = k[pinned]
        for i, half in zip(free, choice):
            l[i + half * f] = k[i]
        reps.append(tuple(l))
    reps.sort(reverse=True)
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            assert not induced_iso_test(reps[a], reps[b])
    return reps
