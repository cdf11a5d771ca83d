from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import ParameterError


@dataclass(frozen=True)
class EllipticClass:
    t: int
    n: int

    def __post_init__(self):
        if self.n < 1 or self.t * self.t >= 4 * self.n:
            raise ParameterError(f"need t^2 < 4n, got t={self.t}, n={self.n}")


@lru_cache(maxsize=None)
def _weight_poly(t: int, n: int, m: int) -> int:
    prev, cur = 1, t
    if m == 0:
        return prev
    for _ in range(m - 1):
        prev, cur = cur, t * cur - n * prev
    return cur


def weight_poly(ec: EllipticClass, k: int) -> int:
    """(rho^(k-1) - rhobar^(k-1)) / (rho - rhobar) for the roots of x^2 - t x + n.

    Evaluated through the integer recurrence P_m = t P_{m-1} - n P_{m-2}.
    """
    if k < 2 or k % 2:
        raise ParameterError(f"weight must be even and >= 2, got {k}")
    if not isinstance(ec, EllipticClass):
        ec = EllipticClass(*ec)
    return _weight_poly(ec.t, ec.n, k - 2)
