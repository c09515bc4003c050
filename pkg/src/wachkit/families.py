"""Type machinery for rank-two families.

Type vectors are stored in tuple-position order, matching the displays
(P_1, ..., P_{f-1}, P_0): position j holds the type of the matrix labelled
j+1. Weights, units, evaluation points and ell-vectors are label-indexed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .errors import (
    BoundViolation,
    ClassViolation,
    IntegralityFailed,
    MalformedEll,
    OrdinaryExcluded,
    ParityViolation,
    PrecisionLoss,
    PropertyFailed,
)
from .filtered import FiltMod2
from .padic import PrecisionBudget, vp
from .series import GammaElement, PiSeries, lambda_f, q_series, working_precision

EVEN = frozenset({2, 4})
ODD = frozenset({1, 3})
C1, C2, C1S, C2S = "C1", "C2", "C1*", "C2*"


def is_even(t: int) -> bool:
    return t in EVEN


def type_matrix(t: int, D, Y, one=1, zero=0):
    """The four shapes with determinant entry D and off-diagonal slot Y."""
    if t == 1:
        return [[D, zero], [Y, one]]
    if t == 2:
        return [[Y, one], [D, zero]]
    if t == 3:
        return [[one, Y], [zero, D]]
    if t == 4:
        return [[zero, D], [one, Y]]
    raise ValueError(f"unknown type {t}")


@dataclass(frozen=True)
class TypeVector:
    types: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "types", tuple(int(t) for t in self.types))
        if not self.types or any(t not in (1, 2, 3, 4) for t in self.types):
            raise ValueError(f"bad type vector {self.types}")

    @property
    def f(self) -> int:
        return len(self.types)

    def label(self, i: int) -> int:
        """Type of P_i."""
        return self.types[(i - 1) % self.f]

    def even_count(self) -> int:
        return sum(is_even(t) for t in self.types)

    def __str__(self):
        return ",".join(map(str, self.types))

    @classmethod
    def parse(cls, text: str) -> "TypeVector":
        return cls(tuple(int(t) for t in text.replace("t", "").split(",")))


def _tv(tv) -> TypeVector:
    return tv if isinstance(tv, TypeVector) else TypeVector(tuple(tv))


# Q-bar and class membership --------------------------------------------------

_UNITS = {
    "E11": ((1, 0), (0, 0)),
    "E12": ((0, 1), (0, 0)),
    "E21": ((0, 0), (1, 0)),
    "E22": ((0, 0), (0, 1)),
}
_IMAGE = {1: "E22", 2: "E12", 3: "E11", 4: "E21"}


def _mul01(a, b):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(2)) for j in range(2)) for i in range(2))


def qbar(tv) -> str | None:
    """Q_f mod (p, X) as a matrix-unit name, or None when it vanishes."""
    tv = _tv(tv)
    m = ((1, 0), (0, 1))
    for t in tv.types:
        m = _mul01(m, _UNITS[_IMAGE[t]])
    for name, u in _UNITS.items():
        if m == u:
            return name
    return None


def class_membership(tv) -> str | None:
    """Evaluate the recursive parity definitions of C1, C2, C1*, C2*."""
    tv = _tv(tv)
    f = tv.f
    labels = [tv.label(i) for i in range(1, f)]
    if f == 1:
        families = (C1, C1S, C2, C2S)
    elif labels[0] in (2, 3):
        families = (C1, C1S)
    elif labels[0] in (1, 4):
        families = (C2, C2S)
    evens = 0
    for i, t in enumerate(labels):
        if i > 0:
            first = {2, 3} if families[0] == C1 else {1, 4}
            other = {1, 4} if families[0] == C1 else {2, 3}
            allowed = first if evens % 2 == 0 else other
            if t not in allowed:
                return None
        evens += is_even(t)
    even = evens % 2 == 0
    last = {C1: 3 if even else 4, C1S: 2 if even else 1, C2: 1 if even else 2, C2S: 4 if even else 3}
    for fam in families:
        if tv.label(0) == last[fam]:
            return fam
    return None


def class_by_qbar(tv) -> str | None:
    return {"E11": C1, "E12": C1S, "E22": C2, "E21": C2S}.get(qbar(tv))


# symbolic Q_f ------------------------------------------------------------------

Poly = dict  # monomial (exponent tuple over X_0..X_{f-1}) -> integer


def _padd(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for mono, c in b.items():
        out[mono] = out.get(mono, 0) + c
        if out[mono] == 0:
            del out[mono]
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            out[mono] = out.get(mono, 0) + ca * cb
            if out[mono] == 0:
                del out[mono]
    return out


@dataclass(frozen=True)
class SymPoly2x2:
    f: int
    entries: tuple  # 2x2 of Poly

    def trace(self) -> Poly:
        return _padd(self.entries[0][0], self.entries[1][1])

    def to_json(self) -> list:
        def show(poly):
            return sorted([list(m), c] for m, c in poly.items())

        return [[show(e) for e in row] for row in self.entries]


def symbolic_Qf(tv, weights, units=None, m_ell: int = 0, p: int = 3):
    """Q_f = P_1 ... P_{f-1} P_0 with X_i p^{m_ell} in the X-slot.

    Returns the product and whether its trace is a constant.
    """
    tv = _tv(tv)
    f = tv.f
    units = units or (1,) * f
    zero_mono = (0,) * f
    const = lambda c: {zero_mono: c} if c else {}  # noqa: E731
    M = ((const(1), const(0)), (const(0), const(1)))
    for j, t in enumerate(tv.types):
        lab = (j + 1) % f
        mono = tuple(1 if i == lab else 0 for i in range(f))
        P = type_matrix(t, const(units[lab] * p ** weights[lab]), {mono: p**m_ell}, const(1), const(0))
        M = tuple(
            tuple(
                _padd(_pmul(M[i][0], P[0][j2]), _pmul(M[i][1], P[1][j2])) for j2 in range(2)
            )
            for i in range(2)
        )
    Q = SymPoly2x2(f, M)
    tr = Q.trace()
    scalar = all(mono == zero_mono for mono in tr)
    return Q, scalar


# recipes ----------------------------------------------------------------------

def _bracket(l, f):
    l = tuple(int(v) for v in l)
    if len(l) != 2 * f:
        raise MalformedEll("expected a level-2f vector")
    k = []
    for i in range(f):
        a, b = l[i], l[i + f]
        if a < 0 or b < 0 or min(a, b) != 0:
            raise MalformedEll(f"slots {i} and {i + f} are not of the form {{0, k}}")
        k.append(a + b)
    return l, tuple(k)


def _middle_sets(ell_i: int, k_i: int, evens: int):
    low = {2, 3}
    high = {1, 4}
    if ell_i == 0:
        return low if evens % 2 == 0 else high
    if ell_i == k_i:
        return high if evens % 2 == 0 else low
    raise MalformedEll("ell_i must be 0 or k_i")


def _p0(ell0: int, k0: int, evens: int, split: bool) -> int:
    even = evens % 2 == 0
    if ell0 == 0:
        if split:
            return 3 if even else 4
        return 4 if even else 3
    if ell0 == k0:
        if split:
            return 1 if even else 2
        return 2 if even else 1
    raise MalformedEll("ell_0 must be 0 or k_0")


def _recipe(ell, k, split: bool, pick) -> list[tuple[int, ...]]:
    """All type vectors the recipe allows when ``pick`` selects from each set."""
    f = len(k)
    results = []

    def walk(i, chosen, evens):
        if i == f:
            t0 = _p0(ell[0], k[0], evens, split)
            results.append(tuple(chosen) + (t0,))
            return
        for t in pick(_middle_sets(ell[i], k[i], evens)):
            walk(i + 1, chosen + [t], evens + is_even(t))

    walk(1, [], 0)
    return results


def _normal_pick(s):
    return [2] if s == {2, 3} else [1]


def _all_pick(s):
    return sorted(s)


def _induced_input(l):
    l = tuple(l)
    if len(l) % 2:
        raise MalformedEll("expected a level-2f vector")
    f = len(l) // 2
    l, k = _bracket(l, f)
    if not any(k):
        raise MalformedEll("at least one weight must be positive")
    return l, k


def types_for_induced(l) -> TypeVector:
    """Normalized type vector realizing Ind(chi_l)."""
    l, k = _induced_input(l)
    return TypeVector(_recipe(l, k, False, _normal_pick)[0])


def induced_raw_candidates(l) -> list[TypeVector]:
    """Every type vector permitted by the recipe before normalization."""
    l, k = _induced_input(l)
    return [TypeVector(t) for t in _recipe(l, k, False, _all_pick)]


def _split_input(ell, ell_prime):
    ell, ell_prime = tuple(int(v) for v in ell), tuple(int(v) for v in ell_prime)
    if len(ell) != len(ell_prime):
        raise MalformedEll("length mismatch")
    k = []
    for a, b in zip(ell, ell_prime):
        if a < 0 or b < 0 or min(a, b) != 0:
            raise MalformedEll("each pair must be of the form {0, k_i}")
        k.append(a + b)
    if not any(ell) or not any(ell_prime):
        raise OrdinaryExcluded("an ordinary (zero) ell-vector lands in C1 or C2")
    return ell, tuple(k)


def types_for_split(ell, ell_prime) -> TypeVector:
    ell, k = _split_input(ell, ell_prime)
    return TypeVector(_recipe(ell, k, True, _normal_pick)[0])


def split_raw_candidates(ell, ell_prime) -> list[TypeVector]:
    ell, k = _split_input(ell, ell_prime)
    return [TypeVector(t) for t in _recipe(ell, k, True, _all_pick)]


# Left multiplication by R swaps 1<->2 and 3<->4; right multiplication swaps
# 1<->4 and 2<->3.
_LEFT_R = {1: 2, 2: 1, 3: 4, 4: 3}
_RIGHT_R = {1: 4, 4: 1, 2: 3, 3: 2}


def normalize_types(tv) -> TypeVector:
    """Conjugate by constant Q_i in {Id, R} so every P_i, 0 < i < f, is t1 or t2.

    Q_0 = Id and Q_i = R exactly when P_i has type 3 or 4; the new P_i is
    Q_{i-1} P_i Q_i^{-1}.
    """
    tv = _tv(tv)
    f = tv.f
    swap = [False] * f  # swap[i]: Q_i = R
    for i in range(1, f):
        swap[i] = tv.label(i) in (3, 4)
    out = []
    for i in list(range(1, f)) + [0]:
        t = tv.label(i)
        if swap[(i - 1) % f]:
            t = _LEFT_R[t]
        if swap[i]:
            t = _RIGHT_R[t]
        out.append(t)
    return TypeVector(tuple(out))


# doubling and diagonalization ------------------------------------------------

def double_restrict(mat, d: int):
    """Repeat every tuple entry d times (tuples are sequences of components)."""
    if d < 1:
        raise ValueError("d must be positive")
    if isinstance(mat, (list, tuple)) and mat and isinstance(mat[0], (list, tuple)):
        return type(mat)(double_restrict(row, d) for row in mat)
    return tuple(mat) * d


@dataclass(frozen=True)
class Diagonalization:
    Qseq: tuple[bool, ...]  # True means R
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    zvec: tuple[int, ...]
    ell_out: tuple[int, ...]
    kind: str


def diagonalize_doubled(tv, weights, p: int = 3, kind: str | None = None) -> Diagonalization:
    """Diagonalize P(0)^{(x)2} by the parity sequence Q_i = R^{#even among P_1..P_i}."""
    tv = _tv(tv)
    f = tv.f
    k = tuple(weights)
    parity = tv.even_count() % 2
    actual = "induced" if parity == 1 else "split"
    if kind is not None and kind != actual:
        raise ParityViolation(f"{tv} has {tv.even_count()} even types, not a {kind} vector")
    P = [tv.label(i % f) for i in range(2 * f)]  # P[i] = P_i, period f
    Q = [False] * (2 * f)
    evens = 0
    for i in range(1, 2 * f):
        evens += is_even(P[i])
        Q[i] = evens % 2 == 1
    lam, mu = [], []
    for j in range(2 * f):
        lab = (j + 1) % (2 * f)
        m = type_matrix(P[lab], p ** k[lab % f], 0)
        if Q[j]:
            m = [m[1], m[0]]
        if Q[(j + 1) % (2 * f)]:
            m = [[r[1], r[0]] for r in m]
        if m[0][1] or m[1][0]:
            raise ParityViolation("base change failed to diagonalize")  # pragma: no cover
        lam.append(m[0][0])
        mu.append(m[1][1])
    nm_l, nm_m = math.prod(lam), math.prod(mu)
    if actual == "induced":
        total = p ** sum(k)
        if nm_l != total or nm_m != total:
            raise ParityViolation("norms of the diagonal entries are wrong")  # pragma: no cover
    zvec, ell_out = [], []
    for i in range(2 * f):
        x = 1 if P[i] in (1, 2) else 0
        q11 = 0 if Q[i] else 1
        z = 1 + 2 * x * q11 - q11 - x
        zvec.append(z)
        ell_out.append(k[i % f] if z == 1 else 0)
    for i in range(f):
        if actual == "induced" and zvec[i + f] != 1 - zvec[i]:
            raise ParityViolation("induced vector without the flip")  # pragma: no cover
        if actual == "split" and zvec[i + f] != zvec[i]:
            raise ParityViolation("split vector with a flip")  # pragma: no cover
    return Diagonalization(tuple(Q), tuple(lam), tuple(mu), tuple(zvec), tuple(ell_out), actual)


# family specification ----------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    p: int
    weights: tuple[int, ...]
    types: TypeVector
    a: tuple[int, ...] | None = None
    units: tuple[int, ...] | None = None
    ell: int | None = None
    budget: PrecisionBudget | None = None

    def __post_init__(self):
        f = len(self.weights)
        object.__setattr__(self, "weights", tuple(int(k) for k in self.weights))
        object.__setattr__(self, "types", _tv(self.types))
        object.__setattr__(self, "a", tuple(self.a) if self.a is not None else (0,) * f)
        object.__setattr__(self, "units", tuple(self.units) if self.units else (1,) * f)
        if self.ell is None:
            object.__setattr__(self, "ell", max(self.weights))
        if self.budget is None:
            object.__setattr__(self, "budget", PrecisionBudget(self.p, 8, 12))
        if self.types.f != f or len(self.a) != f or len(self.units) != f:
            raise ValueError("weights, types, a and units must share the length f")
        if max(self.weights) <= 0 or min(self.weights) < 0:
            raise ValueError("weights must be nonnegative with a positive maximum")
        if any(u % self.p == 0 for u in self.units):
            raise ValueError("units must be prime to p")
        if self.ell < self.k:
            raise ValueError("ell must be at least the maximal weight")
        for i, al in enumerate(self.alpha):
            if al != 0 and vp(al, self.p) < self.m + 1:
                raise BoundViolation(f"alpha_{i} = {al} lies outside p^{self.m} m_E")

    @property
    def f(self) -> int:
        return len(self.weights)

    @property
    def k(self) -> int:
        return max(self.weights)

    @property
    def all_p(self) -> bool:
        return all(k == self.p for k in self.weights)

    @property
    def m(self) -> int:
        if self.k >= self.p and not self.all_p:
            return (self.k - 1) // (self.p - 1)
        return 0

    @property
    def m_ell(self) -> int:
        return (self.ell - 1) // (self.p - 1)

    @property
    def z0(self) -> int:
        return 1 if self.all_p else self.p**self.m_ell

    @property
    def alpha(self) -> tuple[int, ...]:
        return tuple(ai * self.z0 for ai in self.a)

    @classmethod
    def from_alpha(cls, p, weights, types, alpha, **kw) -> "FamilySpec":
        probe = cls(p, weights, types, None, **kw)
        a = []
        for al in alpha:
            if al % probe.z0:
                raise BoundViolation(f"alpha = {al} is not divisible by z(0) = {probe.z0}")
            a.append(al // probe.z0)
        return cls(p, weights, types, tuple(a), **kw)

    def with_a(self, a) -> "FamilySpec":
        return FamilySpec(self.p, self.weights, self.types, tuple(a), self.units, self.ell, self.budget)

    def with_budget(self, budget) -> "FamilySpec":
        return FamilySpec(self.p, self.weights, self.types, self.a, self.units, self.ell, budget)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "f": self.f,
            "weights": list(self.weights),
            "types": str(self.types),
            "a": list(self.a),
            "alpha": list(self.alpha),
            "ell": self.ell,
            "units": list(self.units),
            "precision": {"M": self.budget.M, "N": self.budget.N},
        }


def build_D(spec: FamilySpec) -> FiltMod2:
    """Filtered module D(a): Frobenius Pi mod pi, filtration per type."""
    p, f, k = spec.p, spec.f, spec.weights
    frob = []
    for j in range(f):
        lab = (j + 1) % f
        frob.append(type_matrix(spec.types.types[j], spec.units[lab] * p ** k[lab], spec.alpha[lab]))
    xs, ys = [], []
    for i in range(f):
        if spec.types.label(i) in (1, 2):
            xs.append(1)
            ys.append(-spec.alpha[i])
        else:
            xs.append(-spec.alpha[i])
            ys.append(1)
    return FiltMod2(p, k, tuple(frob), tuple(xs), tuple(ys), "general")


# potentials, z polynomials and Pi -----------------------------------------------

def _check_class(spec: FamilySpec):
    cls = class_membership(spec.types)
    if cls in (C1, C2):
        raise ClassViolation(f"type vector {spec.types} lies in {cls}")


@dataclass
class Family:
    """A concrete family at one evaluation point with its Wach-module data."""

    spec: FamilySpec
    W: int
    slack: int = 4
    pa: list = field(default_factory=list)
    pb: list = field(default_factory=list)
    z: tuple = ()
    Pi: tuple = ()
    D: FiltMod2 | None = None
    A: Fraction = Fraction(0)

    @property
    def p(self):
        return self.spec.p

    @property
    def N(self):
        return self.spec.budget.N

    @property
    def f(self):
        return self.spec.f

    def weight_at(self, j: int) -> int:
        return self.spec.weights[(j + 1) % self.f]

    def P0(self, j: int):
        """Pi at position j reduced mod pi, as an integer matrix."""
        lab = (j + 1) % self.f
        return type_matrix(
            self.spec.types.types[j],
            self.spec.units[lab] * self.p ** self.spec.weights[lab],
            self.spec.a[lab] * self.z[lab].nums[0],
        )


def chain_potentials(spec: FamilySpec, A: Fraction):
    """Potentials a_j, b_j with x_j = a_j/gamma(a_j), y_j = b_j/gamma(b_j).

    Returns (pa, pb) indexed by tuple position.
    """
    p, f, N = spec.p, spec.f, spec.budget.N
    qp = (q_series(p, N) / p).with_prec(A)
    types = spec.types.types

    # Walk once around the cycle from position 0, recording which potential
    # at position f feeds a_0 and the q/p exponents picked up on the way.
    def walk(start_is_a: bool):
        exps = [0] * f
        cur_a = start_is_a
        for r in range(f):
            t = types[r]
            k = spec.weights[(r + 1) % f]
            if t in (1, 2):
                gets = k if (t == 1) == cur_a else 0
            else:
                gets = k if (t == 4) == cur_a else 0
            exps[r] += gets
            if t in (2, 4):
                cur_a = not cur_a
        return exps, cur_a

    ea, end_a = walk(True)
    eb, _ = walk(False)
    if end_a:
        lam = lambda_f(f, p, N, A)
        a0 = _lambda_product(lam, ea, A)
        b0 = _lambda_product(lam, eb, A)
    else:
        lam2 = lambda_f(2 * f, p, N, A)
        a0 = _lambda_product(lam2, list(ea) + list(eb), A)
        # b_0 = F_b * phi^f(a_0) with F_b the q/p product along the b-walk.
        fb = _qp_product(qp, eb, A)
        b0 = (fb * a0.phi_iter(f)).with_prec(A)
    pa, pb = [None] * f, [None] * f
    pa[0], pb[0] = a0, b0
    for j in range(f - 1, 0, -1):
        src_a, src_b = pa[(j + 1) % f], pb[(j + 1) % f]
        pa[j], pb[j] = _step(types[j], spec.weights[(j + 1) % f], qp, src_a, src_b, A)
    return pa, pb


def _step(t, k, qp, src_a, src_b, A):
    w = qp**k if k else None

    def sc(s):
        return (w * s).with_prec(A) if w is not None else s

    if t == 1:
        return sc(src_a.frobenius()), src_b.frobenius()
    if t == 2:
        return src_b.frobenius(), sc(src_a.frobenius())
    if t == 3:
        return src_a.frobenius(), sc(src_b.frobenius())
    return sc(src_b.frobenius()), src_a.frobenius()


def _lambda_product(lam: PiSeries, exps, A) -> PiSeries:
    out = PiSeries.one(lam.p, lam.N).with_prec(A)
    cur = lam
    for e in exps:
        if e:
            out = (out * cur**e).with_prec(A)
        cur = cur.frobenius()
    return out


def _qp_product(qp: PiSeries, exps, A) -> PiSeries:
    out = PiSeries.one(qp.p, qp.N).with_prec(A)
    cur = qp
    for e in exps:
        if e:
            out = (out * cur**e).with_prec(A)
        cur = cur.frobenius()
    return out


def _ratio_for_position(spec: FamilySpec, pa, pb, j: int) -> PiSeries:
    """B for the matrix at position j, read from the potentials at j+1."""
    f = spec.f
    t = spec.types.types[j]
    a1, b1 = pa[(j + 1) % f], pb[(j + 1) % f]
    if t in (1, 2):
        return b1 * a1.inverse()
    return a1 * b1.inverse()


def build_z_polynomials(spec: FamilySpec, gammas=(), W: int | None = None, A=None):
    """z_i (label-indexed), exact integer polynomials of degree < ell."""
    p, f, ell, M = spec.p, spec.f, spec.ell, spec.budget.M
    W = M + 4 if W is None else W
    if A is None:
        A = Fraction(W + math.ceil(Fraction(spec.budget.N - 1, p - 1)) + 2 * spec.m_ell + 4)
    pa, pb = chain_potentials(spec, A)
    zs = [None] * f
    Bs = [None] * f
    scale = 1 if spec.all_p else p**spec.m_ell
    for j in range(f):
        lab = (j + 1) % f
        B = _ratio_for_position(spec, pa, pb, j)
        Bs[lab] = B
        trunc = (B * scale).truncate(ell)
        coeffs = []
        for i in range(ell):
            c = trunc.coeff(i)
            if trunc.known_digits(i) < W:
                raise PrecisionLoss("z coefficient not known to the working precision")
            if c.denominator != 1:
                raise IntegralityFailed(f"z_{lab} has a non-integral coefficient at pi^{i}")
            coeffs.append(int(c) % p**W)
        z = PiSeries(p, spec.budget.N, 0, tuple(coeffs))
        if z.nums[0] % p**W != spec.z0 % p**W:
            raise PropertyFailed(f"z_{lab}(0) is not {spec.z0}")
        for g in gammas:
            ratio = B * B.gamma_act(g).inverse()
            res = z - z.gamma_act(g) * ratio
            if not res.certified_zero_mod(min(M, W - spec.m_ell - 1), upto=ell):
                raise PropertyFailed(f"z_{lab} fails the congruence for a = {g.a}")
        zs[lab] = z
    return tuple(zs), pa, pb, A


def build_family(spec: FamilySpec, W: int | None = None, gammas=()) -> Family:
    _check_class(spec)
    p, f, N = spec.p, spec.f, spec.budget.N
    W = spec.budget.M + 4 if W is None else W
    zs, pa, pb, A = build_z_polynomials(spec, gammas, W)
    q = q_series(p, N)
    Pi = []
    for j in range(f):
        lab = (j + 1) % f
        Dent = q ** spec.weights[lab] * spec.units[lab]
        Y = zs[lab].frobenius() * spec.a[lab]
        Pi.append(
            tuple(tuple(r) for r in type_matrix(spec.types.types[j], Dent, Y, PiSeries.one(p, N), PiSeries.zero(p, N)))
        )
    fam = Family(spec, W, pa=pa, pb=pb, z=zs, Pi=tuple(Pi), D=build_D(spec), A=A)
    return fam


def build_Pi(spec: FamilySpec, W: int | None = None):
    fam = build_family(spec, W)
    return fam.Pi, fam.D


def det_sign(t: int) -> int:
    """det of a type matrix is sign * D."""
    return 1 if t in ODD else -1
