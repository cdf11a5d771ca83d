"""Multiplicative arithmetic functions and Dirichlet convolution.

Every function here accepts either a plain ``int`` or a :class:`FactoredInt`;
factorizations are memoized so repeated evaluation over divisor lattices
stays cheap.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Union


@dataclass(frozen=True)
class FactoredInt:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.value < 1:
            raise ValueError(f"FactoredInt needs a positive value, got {self.value}")
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")

    def __int__(self):
        return self.value

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)


IntLike = Union[int, FactoredInt]
ArithmeticFunction = Callable[[IntLike], "int | Fraction"]


@lru_cache(maxsize=None)
def _trial_division(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if m > 1:
        out.append((m, 1))
    return tuple(out)


def factor(n: IntLike) -> FactoredInt:
    if isinstance(n, FactoredInt):
        return n
    n = int(n)
    if n < 1:
        raise ValueError(f"can only factor positive integers, got {n}")
    return FactoredInt(n, _trial_division(n))


def is_prime(n: int) -> bool:
    return n > 1 and _trial_division(n) == ((n, 1),)


def is_squarefree(n: IntLike) -> bool:
    return all(e == 1 for _, e in factor(n).factors)


def divisors(n: IntLike) -> list[int]:
    fn = factor(n)
    out = []
    for exps in product(*(range(e + 1) for _, e in fn.factors)):
        d = 1
        for (p, _), a in zip(fn.factors, exps):
            d *= p**a
        out.append(d)
    return sorted(out)


def multiplicative(local: Callable[[int, int], int], name: str | None = None) -> Callable[[IntLike], int]:
    """Build a multiplicative function from its values ``local(p, e)`` at prime powers."""

    def f(n: IntLike) -> int:
        out = 1
        for p, e in factor(n).factors:
            out *= local(p, e)
        return out

    f.__name__ = name or local.__name__
    return f


euler_phi = multiplicative(lambda p, e: p**e - p ** (e - 1), "euler_phi")
psi = multiplicative(lambda p, e: p**e + p ** (e - 1), "psi")
sigma0 = multiplicative(lambda p, e: e + 1, "sigma0")
sigma1 = multiplicative(lambda p, e: (p ** (e + 1) - 1) // (p - 1), "sigma1")
mobius = multiplicative(lambda p, e: -1 if e == 1 else 0, "mobius")
# Dirichlet inverse of sigma0, i.e. mobius * mobius.
delta_fn = multiplicative(lambda p, e: {1: -2, 2: 1}.get(e, 0), "delta_fn")


def one(n: IntLike) -> int:
    return 1


def unit(n: IntLike) -> int:
    """Convolution identity: 1 at n = 1, else 0."""
    return 1 if int(n) == 1 else 0


def dirichlet_convolve(f: ArithmeticFunction, g: ArithmeticFunction, n: IntLike) -> Fraction:
    n = int(n)
    total = Fraction(0)
    for d in divisors(n):
        total += Fraction(f(d)) * Fraction(g(n // d))
    return total


def kronecker_symbol(a: int, b: int) -> int:
    """Kronecker symbol (a/b), extended to all integers b (including b = 0)."""
    if b == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if b < 0:
        b = -b
        if a < 0:
            result = -result
    v = 0
    while b % 2 == 0:
        b //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol (a/b) for odd b > 0
    a %= b
    while a:
        while a % 2 == 0:
            a //= 2
            if b % 8 in (3, 5):
                result = -result
        a, b = b, a
        if a % 4 == 3 and b % 4 == 3:
            result = -result
        a %= b
    return result if b == 1 else 0
