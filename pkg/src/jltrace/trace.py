"""Exact traces of Hecke operators T_n on spaces of cusp forms.

Four spaces are supported: S_k(Gamma0(M)), its M'-new part at level L,
S_k(Gamma(D, N)) for the Eichler order O(D, N), and S_k(Gamma'(D, N)) for the
index-two suborder O'(D, N). All terms are kept as ``Fraction`` and the total
is required to be an integer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Callable, Optional

from .arith import IntLike, delta_fn, divisors, euler_phi, psi, sigma1
from .embeddings import QuaternionSpec, _x0_local, cm_count_x0, cm_count_xDN, cm_count_xprime
from .errors import IntegralityError, NotCoprime, ParameterError
from .heckeweight import weight_poly, EllipticClass
from .quadratic import unit_weight

TERM_NAMES = ("identity_term", "elliptic_term", "hyperbolic_term", "parabolic_term")


@dataclass(frozen=True)
class TraceResult:
    value: int
    identity_term: Fraction
    elliptic_term: Fraction
    hyperbolic_term: Fraction
    parabolic_term: Fraction

    @classmethod
    def from_terms(cls, identity, elliptic, hyperbolic, parabolic) -> "TraceResult":
        terms = [Fraction(x) for x in (identity, elliptic, hyperbolic, parabolic)]
        total = sum(terms, Fraction(0))
        if total.denominator != 1:
            raise IntegralityError(f"trace is not integral: {total} from terms {terms}")
        return cls(int(total), *terms)

    @property
    def terms(self) -> dict[str, Fraction]:
        return {name: getattr(self, name) for name in TERM_NAMES}

    def scaled_add(self, other: "TraceResult", coeff: int = 1) -> "TraceResult":
        return TraceResult.from_terms(
            *(getattr(self, name) + coeff * getattr(other, name) for name in TERM_NAMES)
        )


ZERO = TraceResult(0, Fraction(0), Fraction(0), Fraction(0), Fraction(0))


def _check_weight(k: int) -> None:
    if k < 2 or k % 2:
        raise ParameterError(f"weight k must be even and >= 2, got {k}")


def _check_coprime(n: int, level: int) -> None:
    if n < 1:
        raise ParameterError(f"n must be positive, got {n}")
    if gcd(n, level) != 1:
        raise NotCoprime(f"gcd(n={n}, {level}) != 1")


@lru_cache(maxsize=None)
def elliptic_discriminants(t: int, n: int) -> tuple[tuple[int, int], ...]:
    """All (r, d) with r >= 1, r^2 d = t^2 - 4n and d a discriminant."""
    disc = t * t - 4 * n
    if disc >= 0:
        raise ParameterError(f"t^2 - 4n must be negative, got {disc}")
    out = []
    for r in range(1, isqrt(-disc) + 1):
        if disc % (r * r) == 0 and (disc // (r * r)) % 4 in (0, 1):
            out.append((r, disc // (r * r)))
    return tuple(out)


def elliptic_sum(n: int, k: int, cm_count: Callable[[int], int]) -> Fraction:
    """sum_{t^2 < 4n} P_{k-2}(t, n) * sum_{r^2 d = t^2 - 4n} cm_count(d) / w_d."""
    total = Fraction(0)
    bound = isqrt(4 * n - 1)
    for t in range(-bound, bound + 1):
        inner = Fraction(0)
        for _, d in elliptic_discriminants(t, n):
            count = cm_count(d)
            if count:
                inner += Fraction(count, unit_weight(d))
        if inner:
            total += weight_poly(EllipticClass(t, n), k) * inner
    return total


def _square_part(n: int, k: int) -> Fraction:
    """alpha_n * n^(k/2 - 1)."""
    s = isqrt(n)
    return Fraction(n ** (k // 2 - 1)) if s * s == n else Fraction(0)


def _parabolic(n: int, k: int) -> int:
    return sigma1(n) if k == 2 else 0


def _hyperbolic_gamma0(M: int, k: int, n: int) -> Fraction:
    doubled = 0
    for d in divisors(n):
        if d * d > n:
            break
        weight = 1 if d * d == n else 2
        g_mn = gcd(M, n // d - d)
        inner = 0
        for c in divisors(M):
            g = gcd(c, M // c)
            if g_mn % g == 0:
                inner += euler_phi(g)
        doubled += weight * d ** (k - 1) * inner
    return Fraction(doubled, 2)


@lru_cache(maxsize=None)
def _trace_gamma0(M: int, k: int, n: int) -> TraceResult:
    identity = Fraction(k - 1, 12) * psi(M) * _square_part(n, k)
    elliptic = -elliptic_sum(n, k, lambda d: cm_count_x0(d, M)) / 2
    hyperbolic = -_hyperbolic_gamma0(M, k, n)
    return TraceResult.from_terms(identity, elliptic, hyperbolic, _parabolic(n, k))


def trace_gamma0(M: IntLike, k: int, n: int) -> TraceResult:
    """tr(T_n | S_k(Gamma0(M))) for gcd(n, M) = 1."""
    M = int(M)
    _check_weight(k)
    _check_coprime(n, M)
    _x0_local(-4, M)  # rejects unsupported level shapes up front
    return _trace_gamma0(M, k, n)


def trace_new_part(L: IntLike, Mpart: IntLike, k: int, n: int) -> TraceResult:
    """Trace on S_k(Gamma0(L))^{Mpart-new} by delta-inversion over the divisors of Mpart."""
    L, Mpart = int(L), int(Mpart)
    if L % Mpart:
        raise ParameterError(f"{Mpart} does not divide {L}")
    rest = L // Mpart
    if gcd(rest, Mpart) != 1:
        raise ParameterError(f"need gcd(Mpart, L/Mpart) = 1, got L={L}, Mpart={Mpart}")
    _check_weight(k)
    _check_coprime(n, L)
    out = ZERO
    for m in divisors(Mpart):
        coeff = delta_fn(Mpart // m)
        if coeff:
            out = out.scaled_add(trace_gamma0(rest * m, k, n), coeff)
    return out


@lru_cache(maxsize=None)
def _trace_quaternion(spec: QuaternionSpec, k: int, n: int, suborder: bool) -> TraceResult:
    vol = euler_phi(spec.D) * psi(spec.N) * _square_part(n, k)
    if suborder:
        identity = Fraction(k - 1, 4) * vol
        elliptic = -elliptic_sum(n, k, lambda d: cm_count_xprime(d, spec)) / 2
    else:
        identity = Fraction(k - 1, 12) * vol
        elliptic = -elliptic_sum(n, k, lambda d: cm_count_xDN(d, spec)) / 2
    return TraceResult.from_terms(identity, elliptic, 0, _parabolic(n, k))


def trace_gammaDN(spec: QuaternionSpec, k: int, n: int) -> TraceResult:
    """tr(T_n | S_k(Gamma(D, N))) for the Eichler order of level N."""
    _check_weight(k)
    _check_coprime(n, spec.DN)
    return _trace_quaternion(spec, k, n, False)


def trace_gamma_prime(spec: QuaternionSpec, k: int, n: int) -> TraceResult:
    """tr(T_n | S_k(Gamma'(D, N))) for the index-two suborder O'(D, N)."""
    _check_weight(k)
    _check_coprime(n, spec.DN)
    return _trace_quaternion(spec, k, n, True)


SPACES = ("gamma0", "new", "quat-eichler", "quat-suborder")


@dataclass(frozen=True)
class TraceQuery:
    space: str
    k: int
    n: int
    level: Optional[int] = None
    part: Optional[int] = None
    spec: Optional[QuaternionSpec] = field(default=None)

    def __post_init__(self):
        if self.space not in SPACES:
            raise ParameterError(f"unknown space {self.space!r}; expected one of {SPACES}")
        if self.space in ("gamma0", "new") and self.level is None:
            raise ParameterError(f"space {self.space} needs a level")
        if self.space == "new" and self.part is None:
            raise ParameterError("space 'new' needs the new-part divisor")
        if self.space.startswith("quat") and self.spec is None:
            raise ParameterError(f"space {self.space} needs D and N")

    def run(self) -> TraceResult:
        if self.space == "gamma0":
            return trace_gamma0(self.level, self.k, self.n)
        if self.space == "new":
            return trace_new_part(self.level, self.part, self.k, self.n)
        if self.space == "quat-eichler":
            return trace_gammaDN(self.spec, self.k, self.n)
        return trace_gamma_prime(self.spec, self.k, self.n)
