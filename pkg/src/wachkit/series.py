"""Truncated series in pi with Frobenius and Gamma actions.

A ``PiSeries`` represents p^e * sum(nums[i] * pi^i) mod pi^N together with an
error bound in the Gauss valuation w(sum c_i pi^i) = min(v_p(c_i) + i/(p-1)).
The bound ``A`` says the true value differs from the representative by a series
with w >= A; ``A=None`` marks an exact value. This valuation is the natural one
for the ring R of series with v_p(c_i) + i/(p-1) >= 0, which contains q/p and
lambda_f and is stable under phi and gamma, so precision is never lost there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import NotAUnit, PrecisionLoss
from .padic import PrecisionBudget, vp

INF = math.inf


def _vp(n: int, p: int):
    return vp(n, p)


def _polymul(a: list[int], b: list[int], N: int) -> list[int]:
    out = [0] * N
    for i, x in enumerate(a):
        if x:
            for j in range(min(len(b), N - i)):
                y = b[j]
                if y:
                    out[i + j] += x * y
    return out


@dataclass(frozen=True)
class GammaElement:
    """Element of Gamma, represented by its cyclotomic character value a."""

    a: int
    p: int

    def __post_init__(self):
        if self.a % self.p == 0:
            raise NotAUnit("chi(gamma) must be a p-adic unit")

    def compose(self, other: "GammaElement") -> "GammaElement":
        return GammaElement(self.a * other.a, self.p)

    @property
    def is_identity(self) -> bool:
        return self.a == 1


@lru_cache(maxsize=None)
def _phi_pi_powers(p: int, N: int) -> tuple[tuple[int, ...], ...]:
    base = [0] * N
    for j in range(1, min(p, N - 1) + 1):
        base[j] = math.comb(p, j)
    return _powers(base, N)


@lru_cache(maxsize=None)
def _gamma_pi_powers(p: int, a: int, N: int) -> tuple[tuple[int, ...], ...]:
    base = [0] * N
    for j in range(1, N):
        base[j] = _int_binom(a, j)
    return _powers(base, N)


def _int_binom(a: int, j: int) -> int:
    # Exact for every integer a, including negative ones.
    num = 1
    for i in range(j):
        num *= a - i
    return num // math.factorial(j)


def _powers(base: list[int], N: int) -> tuple[tuple[int, ...], ...]:
    pows = [tuple([1] + [0] * (N - 1))]
    cur = [1] + [0] * (N - 1)
    for _ in range(1, N):
        cur = _polymul(cur, base, N)
        pows.append(tuple(cur))
    return tuple(pows)


def _substitute(nums: tuple[int, ...], pows, N: int) -> tuple[int, ...]:
    out = [0] * N
    for i, c in enumerate(nums):
        if c:
            row = pows[i]
            for j in range(i, N):
                if row[j]:
                    out[j] += c * row[j]
    return tuple(out)


@dataclass(frozen=True, eq=False)
class PiSeries:
    p: int
    N: int
    e: int
    nums: tuple[int, ...]
    A: Fraction | None = None  # None: exact

    def __post_init__(self):
        nums = tuple(int(x) for x in self.nums[: self.N])
        nums = nums + (0,) * (self.N - len(nums))
        if self.A is not None:
            A = Fraction(self.A)
            object.__setattr__(self, "A", A)
            red = []
            for i, c in enumerate(nums):
                k = self._digits(i) - self.e
                red.append(c % self.p**k if k > 0 else 0)
            nums = tuple(red)
        object.__setattr__(self, "nums", nums)

    # construction -------------------------------------------------------
    @classmethod
    def from_ints(cls, coeffs, p: int, N: int, e: int = 0, A=None) -> "PiSeries":
        return cls(p, N, e, tuple(coeffs), A)

    @classmethod
    def const(cls, c, p: int, N: int) -> "PiSeries":
        c = Fraction(c)
        if c == 0:
            return cls(p, N, 0, (0,))
        t = _vp(c.denominator, p)
        if c.denominator != p**t:
            raise ValueError("only p-power denominators are representable exactly")
        return cls(p, N, -t, (c.numerator,))

    @classmethod
    def pi(cls, p: int, N: int) -> "PiSeries":
        return cls(p, N, 0, (0, 1))

    @classmethod
    def zero(cls, p: int, N: int) -> "PiSeries":
        return cls(p, N, 0, (0,))

    @classmethod
    def one(cls, p: int, N: int) -> "PiSeries":
        return cls(p, N, 0, (1,))

    # precision bookkeeping ----------------------------------------------
    @property
    def exact(self) -> bool:
        return self.A is None

    @property
    def prec(self):
        return INF if self.A is None else self.A

    def _digits(self, i: int):
        """Number of p-adic digits of coefficient i that are known."""
        if self.A is None:
            return INF
        return math.ceil(self.A - Fraction(i, self.p - 1))

    def known_digits(self, i: int):
        return self._digits(i)

    def gauss(self):
        """Gauss valuation of the representative (inf for zero)."""
        best = INF
        for i, c in enumerate(self.nums):
            if c:
                w = Fraction(_vp(c, self.p) + self.e) + Fraction(i, self.p - 1)
                best = min(best, w)
        return best

    def with_prec(self, A) -> "PiSeries":
        A = Fraction(A)
        if self.A is not None and A > self.A:
            raise PrecisionLoss("cannot raise precision")
        return PiSeries(self.p, self.N, self.e, self.nums, A).compact()

    def compact(self) -> "PiSeries":
        """Absorb common factors of p into the scale."""
        nz = [c for c in self.nums if c]
        if not nz:
            return PiSeries(self.p, self.N, 0, (0,), self.A)
        t = min(_vp(c, self.p) for c in nz)
        if t == 0:
            return self
        q = self.p**t
        return PiSeries(self.p, self.N, self.e + t, tuple(c // q for c in self.nums), self.A)

    def coeff(self, i: int) -> Fraction:
        if i >= self.N:
            raise IndexError(i)
        return Fraction(self.nums[i]) * Fraction(self.p) ** self.e

    def coeffs(self) -> list[Fraction]:
        return [self.coeff(i) for i in range(self.N)]

    def __eq__(self, other):
        # Value equality: the scale e is a representation detail.
        if not isinstance(other, PiSeries):
            return NotImplemented
        return (self.p, self.N, self.A) == (other.p, other.N, other.A) and self.coeffs() == other.coeffs()

    def __hash__(self):
        return hash((self.p, self.N, self.A, tuple(self.coeffs())))

    # arithmetic ---------------------------------------------------------
    def _compat(self, other: "PiSeries"):
        if (self.p, self.N) != (other.p, other.N):
            raise ValueError("series from different rings")

    def _lift(self, other):
        if isinstance(other, PiSeries):
            self._compat(other)
            return other
        return PiSeries.const(other, self.p, self.N)

    def _rescaled(self, e: int) -> tuple[int, ...]:
        s = self.p ** (self.e - e)
        return tuple(c * s for c in self.nums)

    def __add__(self, other):
        other = self._lift(other)
        e = min(self.e, other.e)
        a, b = self._rescaled(e), other._rescaled(e)
        A = _minA(self.A, other.A)
        return PiSeries(self.p, self.N, e, tuple(x + y for x, y in zip(a, b)), A)

    __radd__ = __add__

    def __neg__(self):
        return PiSeries(self.p, self.N, self.e, tuple(-c for c in self.nums), self.A)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        nums = _polymul(list(self.nums), list(other.nums), self.N)
        A = _minA(
            _addA(self.A, other.gauss()),
            _addA(other.A, self.gauss()),
            _addA(self.A, other.A),
        )
        return PiSeries(self.p, self.N, self.e + other.e, tuple(nums), A).compact()

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = PiSeries.one(self.p, self.N)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def inverse(self, slack: int = 2) -> "PiSeries":
        """Inverse, provided the constant term is certified nonzero."""
        p, N = self.p, self.N
        n0 = self.nums[0]
        if n0 == 0:
            raise NotAUnit("constant term not certified nonzero")
        t = _vp(n0, p)
        if self.A is not None and self.e + t >= self._digits(0):
            raise PrecisionLoss("constant term not known")  # pragma: no cover
        u = n0 // p**t
        wb = -self.gauss()
        if self.A is None:
            A_b = None
            K = None
        else:
            if self.A - self.gauss() <= 0:
                raise PrecisionLoss("error as large as the series itself")
            A_b = self.A + 2 * min(wb, 0)
            K = math.ceil(A_b + self.e + t + t * (N - 1)) + slack
        if K is None:
            # Exact inverse is generally an infinite-digit p-adic number;
            # produce a precision-tagged answer at a generous default.
            raise PrecisionLoss("inverse of an exact series needs a precision; use with_prec")
        mod = p**K
        uinv = pow(u, -1, mod)
        B = [uinv]
        for k in range(1, N):
            acc = 0
            for j in range(1, k + 1):
                nj = self.nums[j]
                if nj:
                    acc += nj * p ** (t * (j - 1)) * B[k - j]
            B.append((-uinv * acc) % mod)
        e_new = -self.e - t - t * (N - 1)
        nums = tuple(B[k] * p ** (t * (N - 1 - k)) for k in range(N))
        return PiSeries(p, N, e_new, nums, A_b).compact()

    def __truediv__(self, other):
        if isinstance(other, PiSeries):
            return self * other.inverse()
        other = Fraction(other)
        return self * PiSeries.const(1 / other, self.p, self.N)

    # phi and gamma --------------------------------------------------------
    def frobenius(self) -> "PiSeries":
        pows = _phi_pi_powers(self.p, self.N)
        return PiSeries(self.p, self.N, self.e, _substitute(self.nums, pows, self.N), self.A)

    def gamma_act(self, g: GammaElement) -> "PiSeries":
        if g.a == 1:
            return self
        pows = _gamma_pi_powers(self.p, g.a, self.N)
        return PiSeries(self.p, self.N, self.e, _substitute(self.nums, pows, self.N), self.A)

    def phi_iter(self, n: int) -> "PiSeries":
        s = self
        for _ in range(n):
            s = s.frobenius()
        return s

    # certification --------------------------------------------------------
    def certified_zero_mod(self, M: int, upto: int | None = None) -> bool:
        """True iff every coefficient below ``upto`` is provably 0 mod p^M.

        Raises PrecisionLoss when the stored precision cannot decide.
        """
        upto = self.N if upto is None else upto
        for i in range(upto):
            if self._digits(i) < M:
                raise PrecisionLoss(f"coefficient {i} known to {self._digits(i)} < {M} digits")
            c = self.nums[i]
            if c and _vp(c, self.p) + self.e < M:
                return False
        return True

    def order_mod(self, M: int) -> int:
        """pi-adic order of the series reduced mod p^M (N if it vanishes)."""
        for i in range(self.N):
            if self._digits(i) < M:
                raise PrecisionLoss(f"coefficient {i} known to {self._digits(i)} < {M} digits")
            c = self.nums[i]
            if c and _vp(c, self.p) + self.e < M:
                return i
        return self.N

    def is_integral(self) -> bool:
        return all(c == 0 or _vp(c, self.p) + self.e >= 0 for c in self.nums)

    def int_coeffs(self, W: int) -> list[int]:
        """Integer representatives mod p^W of the coefficients (certified)."""
        out = []
        for i, c in enumerate(self.nums):
            if self._digits(i) < W:
                raise PrecisionLoss(f"coefficient {i} known to fewer than {W} digits")
            val = Fraction(c) * Fraction(self.p) ** self.e
            if val.denominator != 1:
                raise ValueError(f"coefficient {i} is not integral")
            out.append(int(val) % self.p**W)
        return out

    def to_int_poly(self, W: int) -> "PiSeries":
        """Exact integral series whose coefficients agree mod p^W."""
        return PiSeries(self.p, self.N, 0, tuple(self.int_coeffs(W)))

    def mod_coeffs(self, W: int) -> "PiSeries":
        """Exact integral series reduced coefficientwise mod p^W (exact input only)."""
        if self.A is not None or self.e < 0 and not self.is_integral():
            raise ValueError("mod_coeffs needs an exact integral series")
        mod = self.p**W
        s = self.p ** self.e if self.e >= 0 else None
        if s is None:
            q = self.p ** (-self.e)
            return PiSeries(self.p, self.N, 0, tuple((c // q) % mod for c in self.nums))
        return PiSeries(self.p, self.N, 0, tuple((c * s) % mod for c in self.nums))

    def truncate(self, n: int) -> "PiSeries":
        return PiSeries(self.p, self.N, self.e, self.nums[:n], self.A)

    def shift(self, k: int) -> "PiSeries":
        """Multiply by pi^k."""
        return PiSeries(self.p, self.N, self.e, (0,) * k + self.nums, self.A)

    def __str__(self):
        terms = [f"{c}*pi^{i}" if i else str(c) for i, c in enumerate(self.nums) if c]
        body = " + ".join(terms) or "0"
        prec = "exact" if self.A is None else f"w>={self.A}"
        return f"{self.p}^{self.e} * ({body}) mod pi^{self.N} [{prec}]"

    def to_json(self) -> dict:
        return {
            "scale": self.e,
            "coeffs": [int(c) for c in self.nums],
            "p": self.p,
            "N": self.N,
            "prec": None if self.A is None else str(self.A),
        }


def _minA(*xs):
    vals = [x for x in xs if x is not None and x != INF]
    return min(vals) if vals else None


def _addA(a, w):
    if a is None or w is None or w == INF:
        return None
    return a + w


def frobenius(s: PiSeries) -> PiSeries:
    return s.frobenius()


def gamma_act(s: PiSeries, g: GammaElement) -> PiSeries:
    return s.gamma_act(g)


def r_ring_check(s: PiSeries) -> bool:
    """Membership of the representative in R: v_p(c_i) + i/(p-1) >= 0."""
    return s.gauss() >= 0 and (s.A is None or s.A >= 0)


# distinguished elements ---------------------------------------------------

@lru_cache(maxsize=None)
def q_series(p: int, N: int) -> PiSeries:
    """q = phi(pi)/pi = ((1+pi)^p - 1)/pi, an exact polynomial with q(0) = p."""
    coeffs = [math.comb(p, j + 1) for j in range(min(p, N))]
    return PiSeries(p, N, 0, tuple(coeffs))


def q_n(n: int, p: int, N: int) -> PiSeries:
    """q_n = phi^{n-1}(q)."""
    return q_series(p, N).phi_iter(n - 1)


@lru_cache(maxsize=None)
def lambda_f(f: int, p: int, N: int, A) -> PiSeries:
    """lambda_f = prod_{n>=0} phi^{nf}(q/p), with Gauss error at least A.

    With u = q/p - 1 (no constant term, w(u) >= 0) one has w(phi^m(u)) >= m,
    so the factors with nf >= A change the product by w >= A and are dropped.
    The loop also stops early once a factor is 1 at this precision.
    """
    A = Fraction(A)
    qp = q_series(p, N) / p
    result = PiSeries.one(p, N).with_prec(A)
    factor = qp
    n = 0
    while n * f < A:
        fac = factor.with_prec(A)
        if _is_one(fac):
            break
        result = (result * fac).with_prec(A)
        factor = factor.phi_iter(f)
        n += 1
    return result


def _is_one(s: PiSeries) -> bool:
    d = s - 1
    return all(c == 0 for c in d.nums)


def lambda_f_gamma(f: int, g: GammaElement, N: int, A) -> PiSeries:
    """lambda_{f,gamma} = lambda_f / gamma(lambda_f), in 1 + pi R."""
    lam = lambda_f(f, g.p, N, A)
    return lam * lam.gamma_act(g).inverse()


# tuples over the product ring ----------------------------------------------

@dataclass(frozen=True)
class TauSeries:
    """An f-tuple of series; phi reads component i from component i+1."""

    comps: tuple[PiSeries, ...]

    def __post_init__(self):
        object.__setattr__(self, "comps", tuple(self.comps))
        if not self.comps:
            raise ValueError("empty tuple")
        p, N = self.comps[0].p, self.comps[0].N
        if any((c.p, c.N) != (p, N) for c in self.comps):
            raise ValueError("components must share a budget")

    @property
    def f(self) -> int:
        return len(self.comps)

    def __getitem__(self, i):
        return self.comps[i % self.f]

    def _zip(self, other, op):
        if isinstance(other, TauSeries):
            return TauSeries(tuple(op(a, b) for a, b in zip(self.comps, other.comps)))
        return TauSeries(tuple(op(a, other) for a in self.comps))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    def __neg__(self):
        return TauSeries(tuple(-c for c in self.comps))

    def gamma_act(self, g: GammaElement) -> "TauSeries":
        return TauSeries(tuple(c.gamma_act(g) for c in self.comps))

    def rotate(self, n: int = 1) -> "TauSeries":
        return TauSeries(tuple(self[i + n] for i in range(self.f)))


def tau_frobenius(t: TauSeries) -> TauSeries:
    return TauSeries(tuple(t[i + 1].frobenius() for i in range(t.f)))


def nm_phi(t: TauSeries) -> TauSeries:
    """t * phi(t) * ... * phi^{f-1}(t)."""
    result = t
    cur = t
    for _ in range(t.f - 1):
        cur = tau_frobenius(cur)
        result = result * cur
    return result


def working_precision(budget: PrecisionBudget, slack: int = 4) -> Fraction:
    """Gauss precision that certifies every coefficient below pi^N mod p^M."""
    return Fraction(budget.M + math.ceil(Fraction(budget.N - 1, budget.p - 1)) + slack)
