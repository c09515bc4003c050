"""Exponent arithmetic for semisimplified mod-p reductions.

Characters of inertia are written as powers of a fundamental character of
level n, so everything reduces to residues mod p^n - 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MalformedEll, NotLowerable


@dataclass(frozen=True)
class FundCharExp:
    level: int
    exp: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "exp", self.exp % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p**self.level - 1

    def canonical(self) -> int:
        """Smallest exponent in the orbit under multiplication by p."""
        return min(self.exp * self.p**i % self.modulus for i in range(self.level))


@dataclass(frozen=True)
class ReductionResult:
    level: int
    exps: tuple[int, int]
    irreducible: bool
    beta_raw: int | tuple[int, int]
    p: int

    @property
    def summands(self) -> tuple[FundCharExp, FundCharExp]:
        return tuple(FundCharExp(self.level, e, self.p) for e in self.exps)

    def to_json(self) -> dict:
        raw = list(self.beta_raw) if isinstance(self.beta_raw, tuple) else self.beta_raw
        return {
            "level": self.level,
            "exps": list(self.exps),
            "beta_raw": raw,
            "irreducible": self.irreducible,
        }


def reduce_induced(l, p: int, f: int | None = None) -> ReductionResult:
    """Reduction of Ind(chi_l): omega_{2f}^beta + omega_{2f}^{p^f beta}."""
    l = tuple(int(v) for v in l)
    if len(l) % 2 or (f is not None and len(l) != 2 * f):
        raise MalformedEll("expected a level-2f vector")
    f = len(l) // 2
    for i in range(f):
        if min(l[i], l[i + f]) != 0 or min(l[i], l[i + f]) < 0:
            raise MalformedEll(f"slots {i} and {i + f} are not of the form {{0, k}}")
    beta = -sum(p**i * li for i, li in enumerate(l))
    mod = p ** (2 * f) - 1
    pair = tuple(sorted((beta % mod, beta * p**f % mod)))
    return ReductionResult(2 * f, pair, beta % (1 + p**f) != 0, beta, p)


def reduce_reducible(weights, x_vec, p: int) -> ReductionResult:
    """Reduction of a reducible module with stable line eta_2."""
    k = tuple(int(v) for v in weights)
    m = [0 if x != 0 else ki for ki, x in zip(k, x_vec)]
    f = len(k)
    b1 = -sum(mi * p**i for i, mi in enumerate(m))
    b2 = sum((mi - ki) * p**i for i, (mi, ki) in enumerate(zip(m, k)))
    mod = p**f - 1
    pair = tuple(sorted((b1 % mod, b2 % mod)))
    return ReductionResult(f, pair, False, (b1, b2), p)


def reduce_split(ell, ell_prime, p: int) -> ReductionResult:
    """Reduction chi_ell + chi_ell' of a split family."""
    f = len(ell)
    b1 = -sum(v * p**i for i, v in enumerate(ell))
    b2 = -sum(v * p**i for i, v in enumerate(ell_prime))
    mod = p**f - 1
    return ReductionResult(f, tuple(sorted((b1 % mod, b2 % mod))), False, (b1, b2), p)


def det_reduction(weights, p: int, f: int | None = None) -> FundCharExp:
    f = len(weights) if f is None else f
    return FundCharExp(f, -sum(p**i * k for i, k in enumerate(weights)), p)


def level_lower(x: FundCharExp) -> FundCharExp:
    """omega_{2f}^{(1+p^f) e} = omega_f^e."""
    if x.level % 2:
        raise NotLowerable("level must be even")
    f = x.level // 2
    if x.exp % (1 + x.p**f):
        raise NotLowerable(f"{x.exp} is not divisible by 1 + p^{f}")
    return FundCharExp(f, x.exp // (1 + x.p**f), x.p)


def breuil_irreducible(m: int, p: int, f: int) -> bool:
    """Irreducibility criterion for omega_{2f}^m + omega_{2f}^{p^f m}."""
    return m % (1 + p**f) != 0
