"""Rank-two filtered phi-modules over the product ring E^|tau|.

Scalars are exact rationals. Position i of ``frob`` is the matrix A_i whose
columns are phi(eta_1), phi(eta_2) on the i-th component, read from component
i+1; the matrix of phi^f on component i is A_i A_{i+1} ... A_{i+f-1}. The
filtration on component i has jumps at 0 and -k_i, with Fil^{-k_i} spanned
by x_i eta_1 + y_i eta_2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import AllWeightsZero, NotAdmissible
from .padic import PadicScalar, vp_frac

FORMS = ("standard", "triangular", "nonsemisimple", "scalar", "general")
IRREDUCIBLE, SPLIT, NONSPLIT = "Irreducible", "SplitReducible", "NonSplitReducible"


def to_fraction(x) -> Fraction:
    """Lift a d=1 PadicScalar through its canonical representative."""
    if isinstance(x, PadicScalar):
        if x.d != 1:
            raise ValueError("filtered modules use Q_p-rational scalars")
        return Fraction(x.coeffs[0])
    return Fraction(x)


Mat = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def mat(a, b, c, d) -> Mat:
    return ((Fraction(a), Fraction(b)), (Fraction(c), Fraction(d)))


def mmul(x: Mat, y: Mat) -> Mat:
    return tuple(
        tuple(sum(x[i][k] * y[k][j] for k in range(2)) for j in range(2)) for i in range(2)
    )


def mdet(x: Mat) -> Fraction:
    return x[0][0] * x[1][1] - x[0][1] * x[1][0]


def minv(x: Mat) -> Mat:
    d = mdet(x)
    return ((x[1][1] / d, -x[0][1] / d), (-x[1][0] / d, x[0][0] / d))


def mvec(x: Mat, v) -> tuple[Fraction, Fraction]:
    return (x[0][0] * v[0] + x[0][1] * v[1], x[1][0] * v[0] + x[1][1] * v[1])


def parallel(u, v) -> bool:
    return u[0] * v[1] - u[1] * v[0] == 0


def _is_rational_square(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


@dataclass(frozen=True)
class FiltMod2:
    p: int
    weights: tuple[int, ...]
    frob: tuple[Mat, ...]
    filt_x: tuple[Fraction, ...]
    filt_y: tuple[Fraction, ...]
    form: str = "general"

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(k) for k in self.weights))
        object.__setattr__(
            self, "frob", tuple(mat(*(to_fraction(e) for row in A for e in row)) for A in self.frob)
        )
        object.__setattr__(self, "filt_x", tuple(to_fraction(v) for v in self.filt_x))
        object.__setattr__(self, "filt_y", tuple(to_fraction(v) for v in self.filt_y))
        f = len(self.weights)
        if not (len(self.frob) == len(self.filt_x) == len(self.filt_y) == f):
            raise ValueError("all tuples must have length f")
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}")
        if any(k < 0 for k in self.weights):
            raise ValueError("weights must be nonnegative")
        for i in range(f):
            if self.filt_x[i] == 0 and self.filt_y[i] == 0:
                raise ValueError(f"filtration vector {i} is zero")
            if mdet(self.frob[i]) == 0:
                raise ValueError(f"Frobenius matrix {i} is singular")
        A = self.frob
        if self.form == "standard" and any(a[0][1] or a[1][0] for a in A):
            raise ValueError("standard form needs diagonal matrices")
        if self.form in ("triangular", "nonsemisimple") and any(a[0][1] for a in A):
            raise ValueError("triangular forms keep the eta_2 line stable")
        if self.form == "nonsemisimple" and any(a[0][0] != a[1][1] for a in A):
            raise ValueError("non-semisimple form needs equal diagonal entries")
        if self.form == "scalar":
            a0 = A[0][0][0]
            if any(a != mat(a0, 0, 0, a0) for a in A):
                raise ValueError("scalar form needs one scalar at every position")

    @property
    def f(self) -> int:
        return len(self.weights)

    def u(self, i: int):
        return (self.filt_x[i], self.filt_y[i])

    def v(self, x) -> Fraction | float:
        return vp_frac(x, self.p)

    # constructors ------------------------------------------------------------
    @classmethod
    def standard(cls, p, weights, alpha, delta, x, y):
        frob = tuple(mat(a, 0, 0, d) for a, d in zip(alpha, delta))
        return cls(p, weights, frob, x, y, "standard")

    @classmethod
    def triangular(cls, p, weights, alpha, delta, star, x, y):
        frob = tuple(mat(a, 0, s, d) for a, d, s in zip(alpha, delta, star))
        return cls(p, weights, frob, x, y, "triangular")

    @classmethod
    def nonsemisimple(cls, p, weights, alpha, gamma, x, y):
        frob = tuple(mat(a, 0, g, a) for a, g in zip(alpha, gamma))
        return cls(p, weights, frob, x, y, "nonsemisimple")

    @classmethod
    def scalar(cls, p, weights, alpha, x, y):
        frob = tuple(mat(alpha, 0, 0, alpha) for _ in weights)
        return cls(p, weights, frob, x, y, "scalar")

    def to_json(self) -> dict:
        s = str
        return {
            "p": self.p,
            "f": self.f,
            "weights": list(self.weights),
            "frob": [[[s(e) for e in row] for row in A] for A in self.frob],
            "x": [s(v) for v in self.filt_x],
            "y": [s(v) for v in self.filt_y],
            "form": self.form,
        }

    @classmethod
    def from_json(cls, data: dict) -> "FiltMod2":
        conv = lambda e: Fraction(str(e))  # noqa: E731
        frob = tuple(tuple(tuple(conv(e) for e in row) for row in A) for A in data["frob"])
        return cls(
            int(data["p"]),
            tuple(data["weights"]),
            frob,
            tuple(conv(v) for v in data["x"]),
            tuple(conv(v) for v in data["y"]),
            data.get("form", "general"),
        )


def phi_power_f(D: FiltMod2) -> tuple[Mat, ...]:
    """Matrix of phi^f on every component."""
    f = D.f
    out = []
    for i in range(f):
        M = D.frob[i]
        for r in range(1, f):
            M = mmul(M, D.frob[(i + r) % f])
        out.append(M)
    return tuple(out)


# verdicts -------------------------------------------------------------------

@dataclass
class ClassificationVerdict:
    admissible: bool
    kind: str | None = None
    submodule_weights: tuple[int, ...] | None = None
    f_scalar: bool = False
    slacks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "admissible": self.admissible,
            "kind": self.kind,
            "submodule_weights": None
            if self.submodule_weights is None
            else list(self.submodule_weights),
            "f_scalar": self.f_scalar,
            "slacks": {k: str(v) for k, v in sorted(self.slacks.items())},
        }


def _standard(D: FiltMod2) -> ClassificationVerdict:
    p, k = D.p, D.weights
    nm_a = math.prod(A[0][0] for A in D.frob)
    nm_d = math.prod(A[1][1] for A in D.frob)
    va, vd = vp_frac(nm_a, p), vp_frac(nm_d, p)
    hy = sum(k[i] for i in range(D.f) if D.filt_y[i] == 0)
    hx = sum(k[i] for i in range(D.f) if D.filt_x[i] == 0)
    slacks = {"det": va + vd - sum(k), "eta1": va - hy, "eta2": vd - hx}
    ok = slacks["det"] == 0 and slacks["eta1"] >= 0 and slacks["eta2"] >= 0
    if not ok:
        return ClassificationVerdict(False, slacks=slacks)
    eq1, eq2 = slacks["eta1"] == 0, slacks["eta2"] == 0
    if eq1 and eq2:
        kind = SPLIT
    elif eq1 or eq2:
        kind = NONSPLIT
    else:
        return ClassificationVerdict(True, IRREDUCIBLE, slacks=slacks)
    if eq2:
        sub = tuple(k[i] if D.filt_x[i] == 0 else 0 for i in range(D.f))
    else:
        sub = tuple(k[i] if D.filt_y[i] == 0 else 0 for i in range(D.f))
    return ClassificationVerdict(True, kind, sub, slacks=slacks)


def _nonsemisimple(D: FiltMod2) -> ClassificationVerdict:
    p, k = D.p, D.weights
    va = vp_frac(math.prod(A[0][0] for A in D.frob), p)
    hx = sum(k[i] for i in range(D.f) if D.filt_x[i] == 0)
    slacks = {"det": 2 * va - sum(k), "eta2": va - hx}
    if slacks["det"] != 0 or slacks["eta2"] < 0:
        return ClassificationVerdict(False, slacks=slacks)
    if slacks["eta2"] > 0:
        return ClassificationVerdict(True, IRREDUCIBLE, slacks=slacks)
    sub = tuple(k[i] if D.filt_x[i] == 0 else 0 for i in range(D.f))
    return ClassificationVerdict(True, NONSPLIT, sub, slacks=slacks)


def _transport(D: FiltMod2, v0) -> list:
    """Stable line through v0 on component 0: v_i ~ A_i v_{i+1}, v_f = v_0."""
    f = D.f
    vs = [None] * f
    vs[0] = v0
    cur = v0
    for i in range(f - 1, 0, -1):
        cur = mvec(D.frob[i], cur)
        vs[i] = cur
    return vs


def _hodge(D: FiltMod2, vs) -> int:
    return sum(D.weights[i] for i in range(D.f) if parallel(D.u(i), vs[i]))


def _eigvec(M: Mat, eps: Fraction):
    a, b = M[0][0] - eps, M[0][1]
    c, d = M[1][0], M[1][1] - eps
    if a != 0 or b != 0:
        return (-b, a)
    return (-d, c) if (c != 0 or d != 0) else (Fraction(1), Fraction(0))


def _general(D: FiltMod2) -> ClassificationVerdict:
    p, k, f = D.p, D.weights, D.f
    M = phi_power_f(D)[0]
    tr, det = M[0][0] + M[1][1], mdet(M)
    total = sum(k)
    slacks = {"det": vp_frac(det, p) - total}
    if slacks["det"] != 0:
        return ClassificationVerdict(False, slacks=slacks)
    disc = tr * tr - 4 * det
    root = _is_rational_square(disc)
    lines = []  # (t_N, t_H, vectors or None)
    f_scalar = False
    if root is None:
        # Irrational eigenvalues: no rational filtration line is stable.
        if tr == 0 or 2 * vp_frac(tr, p) >= vp_frac(det, p):
            vals = [Fraction(vp_frac(det, p), 2)] * 2
        else:
            vt = vp_frac(tr, p)
            vals = [Fraction(vt), vp_frac(det, p) - vt]
        lines = [(v, 0, None) for v in vals]
    elif root != 0:
        for eps in ((tr + root) / 2, (tr - root) / 2):
            vs = _transport(D, _eigvec(M, eps))
            lines.append((vp_frac(eps, p), _hodge(D, vs), vs))
    elif M[0][1] == 0 and M[1][0] == 0 and M[0][0] == M[1][1]:
        f_scalar = True
        eps = M[0][0]
        te = vp_frac(eps, p)
        # Group indices by the component-0 direction they force.
        classes: list[tuple[tuple, int]] = []
        for i in range(f):
            if not k[i]:
                continue
            P = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
            for r in range(i, f):
                P = mmul(P, D.frob[r])
            w = mvec(minv(P), D.u(i))
            for idx, (cw, s) in enumerate(classes):
                if parallel(cw, w):
                    classes[idx] = (cw, s + k[i])
                    break
            else:
                classes.append((w, k[i]))
        for w, s in classes:
            lines.append((te, s, _transport(D, w)))
        lines.append((te, 0, None))  # a line avoiding every class
    else:
        eps = tr / 2
        vs = _transport(D, _eigvec(M, eps))
        lines.append((vp_frac(eps, p), _hodge(D, vs), vs))
        lines = lines[:1]
    for n, (tn, th, _) in enumerate(lines):
        slacks[f"line{n}"] = tn - th
    if any(tn < th for tn, th, _ in lines):
        return ClassificationVerdict(False, f_scalar=f_scalar, slacks=slacks)
    tight = [(tn, th, vs) for tn, th, vs in lines if tn == th]
    if not tight:
        return ClassificationVerdict(True, IRREDUCIBLE, f_scalar=f_scalar, slacks=slacks)
    if f_scalar:
        # Every line is stable; a generic one has t_H = 0, so it is tight
        # exactly when the slope is 0. Split needs two distinct tight lines.
        n_tight = len([t for t in tight if t[2] is not None])
        if lines[-1][0] == 0:
            n_tight = 2
        kind = SPLIT if n_tight >= 2 else NONSPLIT
    elif (root is None or root != 0) and len(tight) == 2:
        kind = SPLIT
    else:
        kind = NONSPLIT
    vs = next((t[2] for t in tight if t[2] is not None), None)
    sub = None
    if vs is not None:
        sub = tuple(k[i] if parallel(D.u(i), vs[i]) else 0 for i in range(f))
    elif tight:
        sub = (0,) * f
    return ClassificationVerdict(True, kind, sub, f_scalar=f_scalar, slacks=slacks)


def _analyse(D: FiltMod2) -> ClassificationVerdict:
    if D.form == "standard":
        return _standard(D)
    if D.form == "nonsemisimple":
        return _nonsemisimple(D)
    return _general(D)


def weak_admissible(D: FiltMod2) -> bool:
    return _analyse(D).admissible


def classify(D: FiltMod2) -> ClassificationVerdict:
    verdict = _analyse(D)
    if not verdict.admissible:
        raise NotAdmissible(f"module is not weakly admissible: {verdict.slacks}")
    return verdict


def trace_reducibility(D: FiltMod2) -> bool:
    """True when Tr(phi^f) is a unit, which forces reducibility."""
    if not any(D.weights):
        raise AllWeightsZero("the trace test needs a positive weight")
    if not weak_admissible(D):
        raise NotAdmissible("module is not weakly admissible")
    M = phi_power_f(D)[0]
    return vp_frac(M[0][0] + M[1][1], D.p) == 0


@dataclass(frozen=True)
class DetData:
    weights: tuple[int, ...]
    frob: tuple[Fraction, ...]
    reduction_exp: int


def det_weights(D: FiltMod2) -> DetData:
    if not weak_admissible(D):
        raise NotAdmissible("module is not weakly admissible")
    p, f = D.p, D.f
    exp = (-sum(p**i * k for i, k in enumerate(D.weights))) % (p**f - 1) if p**f > 1 else 0
    return DetData(D.weights, tuple(mdet(A) for A in D.frob), exp)
