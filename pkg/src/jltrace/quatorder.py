"""Arithmetic in B_D = (-1, q) over Q for D = 2 p_1 ... p_r, p_i = 3 mod 4, r odd.

Elements of the maximal order Z + Zi + Zj + Z(1+i+j+ij)/2 are stored by their
doubled coordinates over the basis 1, i, j, ij, so the half-integral basis
vector needs no rational arithmetic. The suborder of even reduced trace is
Z + Zi + Zj + Zij.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import isqrt
from typing import Iterator

from .arith import factor
from .errors import ParameterError


def example_q(D: int) -> int:
    """Return q = D/2 if D has the supported shape, else raise."""
    if D < 2 or D % 2:
        raise ParameterError(f"D={D} is not even")
    fq = factor(D // 2)
    r = len(fq.factors)
    if D == 2 or any(e > 1 or p % 4 != 3 for p, e in fq.factors) or r % 2 == 0:
        raise ParameterError(
            f"D={D} is not 2 p_1 ... p_r with an odd number of distinct primes p_i = 3 mod 4"
        )
    return D // 2


@dataclass(frozen=True)
class QuatElement:
    coords: tuple[int, int, int, int]  # doubled coordinates over 1, i, j, ij
    q: int

    def __post_init__(self):
        parities = {c % 2 for c in self.coords}
        if len(parities) != 1:
            raise ParameterError(f"doubled coordinates {self.coords} are not all even or all odd")

    @classmethod
    def from_coords(cls, a, b, c, d, q: int) -> "QuatElement":
        doubled = []
        for x in (a, b, c, d):
            x2 = 2 * Fraction(x)
            if x2.denominator != 1:
                raise ParameterError(f"coordinate {x} is not a half-integer")
            doubled.append(int(x2))
        return cls(tuple(doubled), q)

    @classmethod
    def scalar(cls, a: int, q: int) -> "QuatElement":
        return cls((2 * a, 0, 0, 0), q)

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, 2) for c in self.coords)

    def _same_algebra(self, other: "QuatElement") -> None:
        if self.q != other.q:
            raise ParameterError(f"elements live in different algebras (q={self.q}, q={other.q})")

    def __mul__(self, other: "QuatElement") -> "QuatElement":
        self._same_algebra(other)
        a1, b1, c1, d1 = self.coords
        a2, b2, c2, d2 = other.coords
        q = self.q
        # i^2 = -1, j^2 = q, (ij)^2 = q; each product carries a factor 4 from doubling
        raw = (
            a1 * a2 - b1 * b2 + q * c1 * c2 + q * d1 * d2,
            a1 * b2 + b1 * a2 - q * c1 * d2 + q * d1 * c2,
            a1 * c2 + c1 * a2 - b1 * d2 + d1 * b2,
            a1 * d2 + d1 * a2 + b1 * c2 - c1 * b2,
        )
        if any(x % 2 for x in raw):
            raise ArithmeticError("product left the half-integral lattice")
        return QuatElement(tuple(x // 2 for x in raw), q)

    def __add__(self, other: "QuatElement") -> "QuatElement":
        self._same_algebra(other)
        return QuatElement(tuple(x + y for x, y in zip(self.coords, other.coords)), self.q)

    def __neg__(self) -> "QuatElement":
        return QuatElement(tuple(-x for x in self.coords), self.q)

    def __sub__(self, other: "QuatElement") -> "QuatElement":
        return self + (-other)

    def __pow__(self, e: int) -> "QuatElement":
        if e < 0:
            return self.inverse() ** (-e)
        out = QuatElement.scalar(1, self.q)
        for _ in range(e):
            out = out * self
        return out

    def conjugate(self) -> "QuatElement":
        a, b, c, d = self.coords
        return QuatElement((a, -b, -c, -d), self.q)

    def inverse(self) -> "QuatElement":
        """Inverse of a unit (reduced norm +-1) of the order."""
        n = reduced_norm(self)
        if n not in (1, -1):
            raise ParameterError(f"{self} has norm {n}, not a unit of the order")
        conj = self.conjugate()
        return conj if n == 1 else -conj

    def __str__(self) -> str:
        names = ("", "i", "j", "ij")
        parts = []
        for v, name in zip(self.values, names):
            if v:
                parts.append(f"{v}{'*' + name if name else ''}")
        return " + ".join(parts) if parts else "0"


def reduced_norm(a: QuatElement) -> int:
    x0, x1, x2, x3 = a.coords
    num = x0 * x0 + x1 * x1 - a.q * (x2 * x2 + x3 * x3)
    if num % 4:
        raise ArithmeticError(f"{a} is not in the maximal order (q={a.q})")
    return num // 4


def reduced_trace(a: QuatElement) -> int:
    return a.coords[0]


def in_suborder(a: QuatElement) -> bool:
    return reduced_trace(a) % 2 == 0


def has_integer_coords(a: QuatElement) -> bool:
    return all(c % 2 == 0 for c in a.coords)


def _signed_range(bound: int, step: int, start: int) -> list[int]:
    """start, start+step, ... up to bound, ordered by absolute value, both signs."""
    out = []
    for v in range(start, bound + 1, step):
        out.append(v)
        if v:
            out.append(-v)
    return out


def iter_norm(q: int, target: int, height: int, suborder: bool = False) -> Iterator[QuatElement]:
    """Yield order elements of reduced norm ``target`` with all coordinates in [-height, height].

    Small coordinates come first, so ``next(iter_norm(...))`` is a cheap
    existence witness even for large boxes.
    """
    if height < 1:
        raise ParameterError(f"height must be >= 1, got {height}")
    bound = 2 * height
    shapes = [(0, 2)] if suborder else [(0, 2), (1, 2)]
    for start, step in shapes:
        axis = _signed_range(bound, step, start)
        for x0, x1, x2 in product(axis, axis, axis):
            # q * x3^2 = x0^2 + x1^2 - q x2^2 - 4 target
            rest = x0 * x0 + x1 * x1 - q * x2 * x2 - 4 * target
            if rest < 0 or rest % q:
                continue
            sq = rest // q
            x3 = isqrt(sq)
            if x3 * x3 != sq or x3 > bound or x3 % 2 != start:
                continue
            for s in ((x3, -x3) if x3 else (0,)):
                yield QuatElement((x0, x1, x2, s), q)


def search_norm(q: int, target: int, height: int, suborder: bool = False) -> list[QuatElement]:
    found = iter_norm(q, target, height, suborder)
    return sorted(found, key=lambda a: (max(map(abs, a.coords)), a.coords))


def example_elements(q: int = 3) -> dict[str, QuatElement]:
    """The norm-one elements gamma_1..gamma_4 listed for D = 6."""
    if q != 3:
        raise ParameterError("explicit generators are only known for D = 6")
    return {
        "gamma1": QuatElement.from_coords(0, 2, 1, 0, q),
        "gamma2": QuatElement.from_coords(0, 1, 0, 0, q),
        "gamma3": QuatElement.from_coords(Fraction(1, 2), Fraction(-3, 2), Fraction(1, 2), Fraction(-1, 2), q),
        "gamma4": QuatElement.from_coords(Fraction(1, 2), Fraction(-3, 2), Fraction(-1, 2), Fraction(-1, 2), q),
    }


def basis(q: int) -> dict[str, QuatElement]:
    return {
        "1": QuatElement((2, 0, 0, 0), q),
        "i": QuatElement((0, 2, 0, 0), q),
        "j": QuatElement((0, 0, 2, 0), q),
        "ij": QuatElement((0, 0, 0, 2), q),
        "half": QuatElement((1, 1, 1, 1), q),
    }


def check_example(D: int) -> list[tuple[str, bool]]:
    """Structural checks of the explicit order model, plus the D = 6 generator relations."""
    q = example_q(D)
    b = basis(q)
    one, i, j, ij, half = b["1"], b["i"], b["j"], b["ij"], b["half"]
    minus_one = -one
    checks = [
        ("i^2 = -1", i * i == minus_one),
        ("j^2 = q", j * j == QuatElement.scalar(q, q)),
        ("ij = -ji", i * j == -(j * i)),
        ("nrd((1+i+j+ij)/2) = (1-q)/2 is odd", reduced_norm(half) == (1 - q) // 2 and reduced_norm(half) % 2 == 1),
        ("trd((1+i+j+ij)/2) odd", reduced_trace(half) % 2 == 1),
    ]
    # closure: products of basis elements stay in the order (the constructor
    # rejects mixed parities, so building them is the check)
    try:
        for x in b.values():
            for y in b.values():
                x * y
        closed = True
    except (ParameterError, ArithmeticError):
        closed = False
    checks.append(("maximal order closed under products", closed))
    sub = [one, i, j, ij]
    checks.append(
        ("suborder closed under products", all(in_suborder(x * y) and has_integer_coords(x * y) for x in sub for y in sub))
    )
    if q == 3:
        g = example_elements(q)
        g1, g2, g3, g4 = g["gamma1"], g["gamma2"], g["gamma3"], g["gamma4"]
        checks += [
            ("nrd(gamma_m) = 1", all(reduced_norm(x) == 1 for x in g.values())),
            ("gamma1^2 = -1", g1 * g1 == minus_one),
            ("gamma2^2 = -1", g2 * g2 == minus_one),
            ("gamma3^3 = -1", g3**3 == minus_one),
            ("gamma4^3 = -1", g4**3 == minus_one),
            ("gamma1 = (gamma2 gamma3 gamma4)^-1", (g2 * g3 * g4).inverse() == g1),
            ("gamma1 * gamma2 * gamma3 * gamma4 = 1", g1 * g2 * g3 * g4 == one),
            ("gamma3 not in Gamma'", not in_suborder(g3)),
            ("nrd(gamma3 - 1) odd", reduced_norm(g3 - one) % 2 == 1),
        ]
        conj_ok = True
        for m in range(3):
            g3m = g3**m
            for x in (g1, g2):
                y = g3m * x * g3m.inverse()
                conj_ok &= reduced_norm(y) == 1 and in_suborder(y) and reduced_norm(y - one) % 2 == 0
        checks.append(("gamma3^m gamma_{1,2} gamma3^-m lie in Gamma'(6,1)", conj_ok))
    return checks
