"""Fixed-precision arithmetic in unramified extensions of Z_p.

Elements of O_E (E unramified of degree d over Q_p) are stored as coordinate
vectors of residues mod p^M with respect to the power basis 1, w, ..., w^{d-1}
where w is a root of a fixed monic polynomial irreducible mod p.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial

import sympy

from .errors import NotAUnit, PrecisionLoss


def vp(n: int, p: int) -> int | float:
    """p-adic valuation of an integer; infinity for 0."""
    if n == 0:
        return float("inf")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def vp_frac(x, p: int):
    """p-adic valuation of a rational number."""
    x = Fraction(x)
    if x == 0:
        return float("inf")
    return vp(x.numerator, p) - vp(x.denominator, p)


@dataclass(frozen=True)
class PrecisionBudget:
    """Joint truncation (p^M, pi^N)."""

    p: int
    M: int
    N: int

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2 or not sympy.isprime(self.p):
            raise ValueError(f"p must be a prime, got {self.p!r}")
        if self.M < 1 or self.N < 1:
            raise ValueError("M and N must be at least 1")


@dataclass(frozen=True)
class Valuation:
    """A valuation; ``exact=False`` means only a lower bound (AtLeastPrecision)."""

    value: int
    exact: bool = True

    @classmethod
    def at_least(cls, M: int) -> "Valuation":
        return cls(M, False)

    def __str__(self):
        return str(self.value) if self.exact else f"AtLeastPrecision({self.value})"


# Monic moduli, lowest degree first: x^d + sum c_i x^i stored as (c_0..c_{d-1}).
_MODULI = {
    2: {1: (1,), 2: (1, 1), 3: (1, 1, 0), 4: (1, 1, 0, 0)},
    3: {1: (1,), 2: (2, 2), 3: (1, 2, 0), 4: (2, 0, 0, 2)},
    5: {1: (3,), 2: (2, 4), 3: (3, 3, 0), 4: (2, 4, 4, 0)},
    7: {1: (4,), 2: (3, 6), 3: (4, 0, 6), 4: (3, 4, 5, 0)},
    11: {1: (9,), 2: (2, 7), 3: (9, 2, 0), 4: (2, 10, 8, 0)},
    13: {1: (11,), 2: (2, 12), 3: (11, 2, 0), 4: (2, 12, 3, 0)},
}


def _irreducible_mod_p(coeffs: tuple[int, ...], p: int) -> bool:
    x = sympy.Symbol("x")
    d = len(coeffs)
    poly = sympy.Poly(x**d + sum(c * x**i for i, c in enumerate(coeffs)), x, modulus=p)
    return poly.is_irreducible


@lru_cache(maxsize=None)
def modulus_poly(p: int, d: int) -> tuple[int, ...]:
    """Low-order coefficients of the fixed monic modulus of degree d.

    Tabulated for small p and d <= 4; otherwise the lexicographically first
    irreducible polynomial is used, which is still deterministic.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    table = _MODULI.get(p, {})
    if d in table:
        return table[d]
    for tail in product(range(p), repeat=d):
        coeffs = tuple(reversed(tail))
        if coeffs[0] != 0 and _irreducible_mod_p(coeffs, p):
            return coeffs
    raise ValueError("no irreducible polynomial found")  # pragma: no cover


@dataclass(frozen=True)
class PadicScalar:
    """Element of O_E mod p^M, E unramified of degree d over Q_p."""

    p: int
    M: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        mod = self.p ** self.M
        object.__setattr__(self, "coeffs", tuple(int(c) % mod for c in self.coeffs))
        if len(self.coeffs) < 1:
            raise ValueError("need at least one coordinate")

    @property
    def d(self) -> int:
        return len(self.coeffs)

    @classmethod
    def from_int(cls, n: int, p: int, M: int, d: int = 1) -> "PadicScalar":
        return cls(p, M, (n,) + (0,) * (d - 1))

    @classmethod
    def from_rational(cls, x, p: int, M: int, d: int = 1) -> "PadicScalar":
        x = Fraction(x)
        if vp(x.denominator, p) > 0:
            raise NotAUnit("denominator divisible by p")
        mod = p**M
        return cls.from_int(x.numerator * pow(x.denominator, -1, mod), p, M, d)

    def _check(self, other: "PadicScalar"):
        if (self.p, self.M, self.d) != (other.p, other.M, other.d):
            raise ValueError("incompatible scalars")

    def _coerce(self, other):
        if isinstance(other, int):
            return PadicScalar.from_int(other, self.p, self.M, self.d)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return PadicScalar(self.p, self.M, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return PadicScalar(self.p, self.M, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d = self.d
        prod = [0] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        if d > 1:
            mod = modulus_poly(self.p, d)
            for k in range(2 * d - 2, d - 1, -1):
                c = prod[k]
                if c:
                    prod[k] = 0
                    for i, m in enumerate(mod):
                        prod[k - d + i] -= c * m
        return PadicScalar(self.p, self.M, tuple(prod[:d]))

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = PadicScalar.from_int(other, self.p, self.M, self.d)
        if not isinstance(other, PadicScalar):
            return NotImplemented
        return (self.p, self.M, self.coeffs) == (other.p, other.M, other.coeffs)

    def __hash__(self):
        return hash((self.p, self.M, self.coeffs))

    def val(self) -> Valuation:
        vals = [vp(c, self.p) for c in self.coeffs if c]
        if not vals:
            return Valuation.at_least(self.M)
        return Valuation(int(min(vals)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def unit_inverse(self) -> "PadicScalar":
        """Newton iteration y <- y(2 - xy), starting from an inverse mod p."""
        if self.val() != Valuation(0):
            raise NotAUnit(f"{self} is not a unit")
        p, d = self.p, self.d
        if d == 1:
            return PadicScalar(p, self.M, (pow(self.coeffs[0], -1, p**self.M),))
        y = self._inverse_mod_p()
        prec = 1
        while prec < self.M:
            prec = min(2 * prec, self.M)
            y = y * (2 - self * y)
        return y

    def _inverse_mod_p(self) -> "PadicScalar":
        # The residue field is tiny in practice; search by exponentiation.
        p, d = self.p, self.d
        xbar = PadicScalar(p, 1, self.coeffs)
        inv = _pow(xbar, p**d - 2)
        return PadicScalar(p, self.M, inv.coeffs)

    def __pow__(self, n: int):
        if n < 0:
            return _pow(self.unit_inverse(), -n)
        return _pow(self, n)

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*w")
            else:
                terms.append(f"{c}*w^{i}")
        return f"{' + '.join(terms)} (mod {self.p}^{self.M})"

    @classmethod
    def parse(cls, text: str, p: int) -> "PadicScalar":
        """Inverse of ``str``: ``'c0 + c1*w + c2*w^2 (mod p^M)'``."""
        m = re.fullmatch(r"\s*(.*?)\s*\(mod\s*(\d+)\^(\d+)\)\s*", text)
        if not m or int(m.group(2)) != p:
            raise ValueError(f"cannot parse scalar {text!r}")
        M = int(m.group(3))
        coeffs: dict[int, int] = {}
        for term in m.group(1).split("+"):
            term = term.strip()
            tm = re.fullmatch(r"(\d+)(?:\*w(?:\^(\d+))?)?", term)
            if not tm:
                raise ValueError(f"bad term {term!r}")
            deg = 0 if "w" not in term else int(tm.group(2) or 1)
            coeffs[deg] = int(tm.group(1))
        d = max(coeffs) + 1
        return cls(p, M, tuple(coeffs.get(i, 0) for i in range(d)))


def _pow(x: PadicScalar, n: int) -> PadicScalar:
    result = PadicScalar.from_int(1, x.p, x.M, x.d)
    base = x
    while n:
        if n & 1:
            result = result * base
        base = base * base
        n >>= 1
    return result


def unit_inverse(x: PadicScalar) -> PadicScalar:
    return x.unit_inverse()


def val(x: PadicScalar) -> Valuation:
    return x.val()


def binom(a, n: int, p: int, target: int, M: int | None = None) -> int:
    """Binomial coefficient C(a, n) as a residue mod p^target.

    ``a`` is either an exact integer or a residue known mod p^M. In the latter
    case the division by n! costs v_p(n!) digits, and PrecisionLoss is raised
    when that leaves fewer than ``target`` certified digits.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    mod = p**target
    if M is None:
        num = 1
        for i in range(n):
            num *= a - i
        return (num // factorial(n)) % mod
    loss = vp(factorial(n), p) if n else 0
    if M - loss < target:
        raise PrecisionLoss(f"binom({n}) needs {target + loss} digits, have {M}")
    num = 1
    for i in range(n):
        num *= a - i
    fn = factorial(n)
    t = vp(fn, p)
    unit = fn // p**t
    if num % p**t:
        raise PrecisionLoss("numerator not divisible; residue inconsistent")  # pragma: no cover
    return (num // p**t) * pow(unit, -1, mod) % mod
