"""Negative quadratic discriminants, class numbers of their orders, unit weights."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Union

from .arith import factor, is_squarefree
from .errors import NotADiscriminant


def is_discriminant(d: int) -> bool:
    return d < 0 and d % 4 in (0, 1)


def is_fundamental(d: int) -> bool:
    if not is_discriminant(d):
        return False
    if d % 4 == 1:
        return is_squarefree(-d)
    m = d // 4
    return m % 4 in (2, 3) and is_squarefree(-m)


@dataclass(frozen=True)
class Discriminant:
    d: int
    d0: int
    f: int

    def __post_init__(self):
        if self.f * self.f * self.d0 != self.d or not is_fundamental(self.d0):
            raise NotADiscriminant(f"inconsistent decomposition {self}")

    def __int__(self):
        return self.d


DiscLike = Union[int, Discriminant]


@lru_cache(maxsize=None)
def _decompose(d: int) -> Discriminant:
    if not is_discriminant(d):
        raise NotADiscriminant(f"{d} is not a negative discriminant")
    f = 1
    for p, e in factor(-d).factors:
        f *= p ** (e // 2)
    # Strip the square part, then put back a factor 2 if the squarefree
    # kernel is not 1 mod 4.
    d0 = d // (f * f)
    if d0 % 4 != 1:
        f //= 2
        d0 *= 4
    return Discriminant(d, d0, f)


def decompose(d: DiscLike) -> Discriminant:
    if isinstance(d, Discriminant):
        return d
    return _decompose(int(d))


@lru_cache(maxsize=None)
def _class_number(d: int) -> int:
    h = 0
    a_max = isqrt(-d // 3)
    for a in range(1, a_max + 1):
        for b in range(-a + 1, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if gcd(gcd(a, b), c) == 1:
                h += 1
    return h


def class_number(d: DiscLike) -> int:
    """Number of reduced primitive positive definite forms of discriminant d."""
    return _class_number(decompose(d).d)


def unit_weight(d: DiscLike) -> int:
    d = int(d)
    decompose(d)
    return {-4: 2, -3: 3}.get(d, 1)
