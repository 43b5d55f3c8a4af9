from fractions import Fraction
from math import comb

from hypothesis import given
from hypothesis import strategies as st

from oracles import hilbert_function_oracle
from singdist.groebner import hilbert_function
from singdist.hilbert import (
    UPoly,
    binomial_poly,
    format_upoly,
    hilbert_numerator,
    hilbert_polynomial_from_numerator,
    reduce_series,
    series_coefficient,
)
from strategies import R3, monomial_ideals


def test_upoly_arithmetic():
    p = UPoly([1, 2])
    q = UPoly([-1, 0, 3])
    assert list((p * q).coeffs) == [-1, -2, 3, 6]
    assert (p + q)(2) == 16
    assert not (p - p).coeffs
    quo, rem = UPoly([-1, 0, 1]).divmod_linear(1)
    assert list(quo.coeffs) == [1, 1] and rem == 0


def test_format():
    assert format_upoly(UPoly([1, 3])) == "3t + 1"
    assert format_upoly(UPoly([Fraction(1, 2), 0, Fraction(1, 2)])) == "(1/2)t^2 + (1/2)"
    assert format_upoly(UPoly()) == "0"


def test_binomial_poly():
    p = binomial_poly(3, 3)
    for t in range(6):
        assert p(t) == comb(t + 3, 3)


def test_numerator_point_and_line():
    # (x, y, z) in three variables: S/I = k
    assert list(hilbert_numerator([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3).coeffs) == [1, -3, 3, -1]
    q, dim = reduce_series(hilbert_numerator([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 3), 3)
    assert (list(q.coeffs), dim) == ([1], 0)
    # a line in P^3 has Hilbert polynomial t + 1
    num = hilbert_numerator([(1, 0, 0, 0), (0, 1, 0, 0)], 4)
    assert list(hilbert_polynomial_from_numerator(num, 4).coeffs) == [1, 1]


def test_numerator_twisted_cubic_initial_ideal():
    # initial ideal (y^2, yz, z^2) of the twisted cubic under grevlex
    num = hilbert_numerator([(0, 2, 0, 0), (0, 1, 1, 0), (0, 0, 2, 0)], 4)
    assert format_upoly(hilbert_polynomial_from_numerator(num, 4)) == "3t + 1"


def test_redundant_generators_ignored():
    a = hilbert_numerator([(2, 0, 0), (1, 0, 0), (1, 1, 0)], 3)
    b = hilbert_numerator([(1, 0, 0)], 3)
    assert a.coeffs == b.coeffs


@given(monomial_ideals(), st.integers(0, 6))
def test_series_matches_oracle(I, k):
    num = hilbert_numerator(I.leading_monomials(), 3)
    assert series_coefficient(num, 3, k) == hilbert_function_oracle(I.gens, 3, k)


@given(monomial_ideals())
def test_polynomial_agrees_for_large_degree(I):
    num = hilbert_numerator(I.leading_monomials(), 3)
    hp = hilbert_polynomial_from_numerator(num, 3)
    k = 12
    assert hp(k) == hilbert_function(I, k)
