import pytest
from hypothesis import given, strategies as st

from jltrace.errors import NotADiscriminant
from jltrace.quadratic import Discriminant, class_number, decompose, is_fundamental, unit_weight
from oracles import class_number_analytic, class_number_bruteforce


@pytest.mark.parametrize("d,f,d0", [(-4, 1, -4), (-12, 2, -3), (-63, 3, -7), (-16, 2, -4), (-8, 1, -8)])
def test_decompose(d, f, d0):
    assert decompose(d) == Discriminant(d, d0, f)


@pytest.mark.parametrize("d", [0, 5, -1, -2, -5, -6])
def test_decompose_rejects(d):
    with pytest.raises(NotADiscriminant):
        decompose(d)


fundamentals = [d for d in range(-3, -400, -1) if is_fundamental(d)]


@given(st.sampled_from(fundamentals), st.integers(1, 12))
def test_decompose_inverts_composition(d0, f):
    assert decompose(f * f * d0) == Discriminant(f * f * d0, d0, f)


@pytest.mark.parametrize("d,h", [(-3, 1), (-4, 1), (-23, 3), (-12, 1), (-16, 1), (-20, 2), (-47, 5), (-71, 7)])
def test_class_number_examples(d, h):
    assert class_number(d) == h


def test_class_number_against_oracles():
    for d in range(-3, -1201, -1):
        if d % 4 in (0, 1):
            h = class_number(d)
            assert h >= 1
            assert h == class_number_bruteforce(d) == class_number_analytic(d), d


def test_class_number_relations_at_two():
    for d in range(-3, -2001, -1):
        if d % 8 == 1:
            assert class_number(4 * d) == class_number(d), d
        elif d % 8 == 5:
            assert class_number(4 * d) * unit_weight(d) == 3 * class_number(d), d


@pytest.mark.parametrize("d,w", [(-3, 3), (-4, 2), (-12, 1), (-7, 1), (-16, 1)])
def test_unit_weight(d, w):
    assert unit_weight(d) == w
