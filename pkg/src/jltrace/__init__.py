"""Exact Hecke trace formulas for Shimura curves of Eichler orders and of the
index-two non-Eichler suborder, with identity checkers."""

from .arith import FactoredInt, factor
from .embeddings import QuaternionSpec
from .quadratic import Discriminant, class_number, decompose
from .trace import (
    TraceQuery,
    TraceResult,
    trace_gamma0,
    trace_gamma_prime,
    trace_gammaDN,
    trace_new_part,
)

__all__ = [
    "Discriminant",
    "FactoredInt",
    "QuaternionSpec",
    "TraceQuery",
    "TraceResult",
    "class_number",
    "decompose",
    "factor",
    "trace_gamma0",
    "trace_gamma_prime",
    "trace_gammaDN",
    "trace_new_part",
]
