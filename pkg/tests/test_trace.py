from fractions import Fraction
from math import gcd

import pytest

from jltrace.embeddings import QuaternionSpec
from jltrace.errors import IntegralityError, NotCoprime, ParameterError, UnsupportedLevel
from jltrace.trace import (
    TraceQuery,
    TraceResult,
    elliptic_discriminants,
    trace_gamma0,
    trace_gamma_prime,
    trace_gammaDN,
    trace_new_part,
)
from oracles import (
    delta_coefficients,
    dim_cusp_forms_gamma0,
    kronecker,
    newform_coefficients,
    series_mul,
)
from sympy import divisor_sigma, factorint

TAU = delta_coefficients(60)


def new_dim_oracle(M, k):
    """dim of newforms of level exactly M from oracle dimensions by Mobius-style inversion."""
    def delta(n):
        out = 1
        for e in factorint(n).values():
            out *= {1: -2, 2: 1}.get(e, 0)
        return out

    return sum(delta(M // m) * dim_cusp_forms_gamma0(m, k) for m in range(1, M + 1) if M % m == 0)


def shimura_dim_oracle(D, N, k, suborder=False):
    """dim S_k for a compact quotient: (k-1)(g-1) + sum over elliptic points."""
    vol = Fraction(1)
    e2 = e3 = 1
    for p in factorint(D):
        vol *= p - 1
        e2 *= 1 - kronecker(-4, p)
        e3 *= 1 - kronecker(-3, p)
    for p in factorint(N):
        vol *= p + 1
        e2 *= 1 + kronecker(-4, p)
        e3 *= 1 + kronecker(-3, p)
    if suborder:
        # degree 3 cover, branched exactly over the order-3 points
        vol, e2, e3 = 3 * vol, 3 * e2, 0
    genus = 1 + vol / 12 - Fraction(e2, 4) - Fraction(e3, 3)
    assert genus.denominator == 1
    if k == 2:
        return int(genus)
    return int((k - 1) * (genus - 1) + e2 * (k // 4) + e3 * (k // 3))


# -- Gamma0 ------------------------------------------------------------------

def test_gamma0_examples():
    assert trace_gamma0(1, 12, 1).value == TAU[1] == 1
    assert trace_gamma0(1, 12, 2).value == TAU[2] == -24
    assert trace_gamma0(11, 2, 1).value == dim_cusp_forms_gamma0(11, 2) == 1


def test_tau_from_trace():
    for n in range(1, 31):
        assert trace_gamma0(1, 12, n).value == TAU[n], n


@pytest.mark.parametrize("n", [4, 9, 16, 25, 36, 49])
def test_square_index_needs_power_of_n_in_identity_term(n):
    assert trace_gamma0(1, 12, n).value == TAU[n]


def test_tau_multiplicative():
    for m in range(1, 31):
        for n in range(1, 31):
            if gcd(m, n) == 1:
                assert trace_gamma0(1, 12, m * n).value == trace_gamma0(1, 12, m).value * trace_gamma0(1, 12, n).value


@pytest.mark.parametrize("M", [1, 2, 3, 4, 5, 6, 7, 10, 11, 12, 14, 15, 20, 21, 28, 33])
@pytest.mark.parametrize("k", [2, 4, 6, 8, 10, 12])
def test_dimension_oracle(M, k):
    assert trace_gamma0(M, k, 1).value == dim_cusp_forms_gamma0(M, k)


@pytest.mark.parametrize("label,level,k", [("11.2.a.a", 11, 2), ("14.2.a.a", 14, 2), ("15.2.a.a", 15, 2), ("6.4.a.a", 6, 4)])
def test_newform_eigenvalues(label, level, k):
    coeffs = newform_coefficients(label, 40)
    for n in range(1, 41):
        if gcd(n, level) == 1:
            assert trace_new_part(level, level, k, n).value == coeffs[n], n


def test_weight_16_level_1_from_e4_delta():
    e4 = [1] + [240 * int(divisor_sigma(n, 3)) for n in range(1, 6)]
    f = series_mul(e4, delta_coefficients(5), 6)
    assert f[2] == 216
    assert trace_new_part(1, 1, 16, 2).value == f[2]


def test_elliptic_pairs_against_divisor_scan():
    for n in range(1, 60):
        for t in range(-15, 16):
            if t * t >= 4 * n:
                continue
            disc = t * t - 4 * n
            brute = []
            for r in range(1, -disc + 1):
                q, rem = divmod(disc, r * r)
                if rem == 0 and q % 4 in (0, 1):
                    brute.append((r, q))
            assert list(elliptic_discriminants(t, n)) == brute


def test_terms_sum_to_value():
    for M, k, n in [(1, 12, 7), (11, 2, 9), (12, 4, 25), (15, 6, 4)]:
        res = trace_gamma0(M, k, n)
        assert sum(res.terms.values()) == res.value


def test_integrality_is_enforced():
    with pytest.raises(IntegralityError):
        TraceResult.from_terms(Fraction(1, 2), 0, 0, 0)


def test_gamma0_errors():
    with pytest.raises(NotCoprime):
        trace_gamma0(6, 2, 3)
    with pytest.raises(UnsupportedLevel):
        trace_gamma0(9, 2, 1)
    with pytest.raises(ParameterError):
        trace_gamma0(5, 3, 1)
    with pytest.raises(ParameterError):
        trace_gamma0(5, 2, 0)


# -- new parts ---------------------------------------------------------------

@pytest.mark.parametrize("L,k", [(6, 2), (12, 2), (6, 4), (12, 4), (10, 6), (30, 4), (20, 2), (44, 4)])
def test_new_part_dimension(L, k):
    assert trace_new_part(L, L, k, 1).value == new_dim_oracle(L, k)


def test_new_part_examples():
    assert trace_new_part(6, 6, 2, 1).value == 0
    assert trace_new_part(12, 12, 2, 1).value == 0
    assert trace_new_part(1, 1, 16, 2).value == 216


def test_new_part_errors():
    with pytest.raises(ParameterError):
        trace_new_part(12, 5, 2, 1)
    with pytest.raises(ParameterError):
        trace_new_part(12, 2, 2, 1)


# -- quaternionic ------------------------------------------------------------

SPECS = [(6, 1), (6, 5), (6, 7), (10, 1), (10, 3), (14, 1), (22, 1), (6, 35), (30 * 7, 1)]


def test_gammaDN_examples():
    assert trace_gammaDN(QuaternionSpec(6, 1), 2, 1).value == 0
    assert trace_gammaDN(QuaternionSpec(6, 1), 4, 1).value == 1
    assert trace_gammaDN(QuaternionSpec(10, 1), 2, 1).value == 0
    assert trace_gammaDN(QuaternionSpec(14, 1), 2, 1).value == 1


@pytest.mark.parametrize("D,N", SPECS)
def test_shimura_dimensions(D, N):
    spec = QuaternionSpec(D, N)
    for k in range(2, 13, 2):
        assert trace_gammaDN(spec, k, 1).value == shimura_dim_oracle(D, N, k)
        assert trace_gamma_prime(spec, k, 1).value == shimura_dim_oracle(D, N, k, suborder=True)


def test_gamma_prime_examples():
    spec = QuaternionSpec(6, 1)
    res = trace_gamma_prime(spec, 2, 1)
    assert res.value == 0
    assert res.terms == {
        "identity_term": Fraction(1, 2),
        "elliptic_term": Fraction(-3, 2),
        "hyperbolic_term": 0,
        "parabolic_term": 1,
    }
    rhs = trace_new_part(6, 6, 2, 5).value + 2 * trace_new_part(12, 12, 2, 5).value
    assert trace_gamma_prime(spec, 2, 5).value == rhs == 0
    rhs = new_dim_oracle(6, 4) + 2 * new_dim_oracle(12, 4)
    assert trace_gamma_prime(spec, 4, 1).value == rhs == 3


def test_x14_eigenvalues_match_level_14_newform():
    # X(14, 1) has genus 1; its Hecke eigenvalues are those of 14.2.a.a
    coeffs = newform_coefficients("14.2.a.a", 40)
    spec = QuaternionSpec(14, 1)
    for n in range(1, 41):
        if gcd(n, 14) == 1:
            assert trace_gammaDN(spec, 2, n).value == coeffs[n]


def test_quaternion_errors():
    with pytest.raises(NotCoprime):
        trace_gamma_prime(QuaternionSpec(6, 5), 2, 5)
    with pytest.raises(NotCoprime):
        trace_gammaDN(QuaternionSpec(10, 1), 2, 4)


def test_trace_query_dispatch():
    spec = QuaternionSpec(6, 1)
    assert TraceQuery("gamma0", 12, 2, level=1).run().value == -24
    assert TraceQuery("new", 4, 1, level=6, part=6).run().value == 1
    assert TraceQuery("quat-eichler", 4, 1, spec=spec).run().value == 1
    assert TraceQuery("quat-suborder", 2, 1, spec=spec).run().value == 0
    with pytest.raises(ParameterError):
        TraceQuery("bogus", 2, 1, level=1)
    with pytest.raises(ParameterError):
        TraceQuery("quat-eichler", 2, 1)
