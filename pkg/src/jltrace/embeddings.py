"""Local optimal-embedding numbers and CM-point counts.

Covers the modular curves X0(M) for M odd squarefree or 4 times odd
squarefree, the Shimura curves X(D, N) of Eichler orders, and the index-two
non-Eichler suborder's curve X'(D, N). The level N is restricted to odd
squarefree values; higher prime powers would need local counts not available
here, so they are rejected instead of guessed.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import IntLike, factor, kronecker_symbol
from .errors import ParameterError, UnsupportedLevel
from .quadratic import DiscLike, class_number, decompose


@dataclass(frozen=True)
class QuaternionSpec:
    D: int
    N: int = 1

    def __post_init__(self):
        D, N = self.D, self.N
        if D < 2 or D % 2:
            raise ParameterError(f"D={D} must be even")
        fD = factor(D)
        if any(e > 1 for _, e in fD.factors) or len(fD.factors) % 2:
            raise ParameterError(f"D={D} must be squarefree with an even number of prime factors")
        if N < 1 or N % 2 == 0 or any(e > 1 for _, e in factor(N).factors):
            raise ParameterError(f"N={N} must be odd and squarefree")
        if gcd(D, N) != 1:
            raise ParameterError(f"gcd(D, N) must be 1, got D={D}, N={N}")

    @property
    def DN(self) -> int:
        return self.D * self.N


def eichler_symbol(d: DiscLike, p: int) -> int:
    disc = decompose(d)
    if disc.f % p == 0:
        return 1
    return kronecker_symbol(disc.d0, p)


def e_ramified(d: DiscLike, p: int) -> int:
    return 1 - eichler_symbol(d, p)


def e_level_exact(d: DiscLike, p: int) -> int:
    return 1 + eichler_symbol(d, p)


def e_two_ogg(d: DiscLike) -> int:
    """Embedding count at 2 for an Eichler order of level exactly divisible by 4."""
    disc = decompose(d)
    chi = kronecker_symbol(disc.d0, 2)
    if disc.d0 % 4 == 0:
        return 3 if disc.f % 2 == 0 else 0
    if disc.f % 2:
        return 1 + chi
    if disc.f % 4:
        return 3 + chi
    return 3


def e_two_tilde(d: DiscLike) -> int:
    disc = decompose(d)
    chi = kronecker_symbol(disc.d0, 2)
    if disc.d0 % 4 == 0:
        return 1 if disc.f % 2 else 0
    if disc.f % 2:
        return chi
    if disc.f % 4:
        return -chi
    return 0


def _x0_local(d: DiscLike, M: IntLike) -> int:
    out = 1
    for p, e in factor(M).factors:
        if e == 1:
            out *= e_level_exact(d, p)
        elif p == 2 and e == 2:
            out *= e_two_ogg(d)
        else:
            raise UnsupportedLevel(f"no local embedding formula for level {int(M)} at p={p}")
    return out


def cm_count_x0(d: DiscLike, M: IntLike) -> int:
    """|CM(d; X0(M))| for M odd squarefree or 4 * odd squarefree."""
    local = _x0_local(d, M)
    return class_number(d) * local if local else 0


def local_product(d: DiscLike, spec: QuaternionSpec, skip_two: bool = False) -> int:
    """Product of e_p(d) over p | DN for the Eichler order O(D, N)."""
    out = 1
    for p in factor(spec.D).primes:
        if skip_two and p == 2:
            continue
        out *= e_ramified(d, p)
    for p in factor(spec.N).primes:
        out *= e_level_exact(d, p)
    return out


def cm_count_xDN(d: DiscLike, spec: QuaternionSpec) -> int:
    local = local_product(d, spec)
    return class_number(d) * local if local else 0


def cm_count_xprime(d: DiscLike, spec: QuaternionSpec) -> int:
    d = decompose(d).d
    if d % 4 == 1:
        return 0
    if d == -12:
        return cm_count_xDN(-3, spec)
    if (d // 4) % 4 == 1:
        return 3 * cm_count_xDN(d // 4, spec)
    return 3 * cm_count_xDN(d, spec)

