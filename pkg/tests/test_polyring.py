from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singdist.parsing import parse_poly, parse_ring
from singdist.polyring import ParameterError, RingMismatch
from strategies import R3, homogeneous_polys, polys


@pytest.fixture
def R():
    return parse_ring("ring x,y,z,w params t0..t1")


def P(s, ring):
    return parse_poly(s, ring)


def test_add_cancellation(R):
    assert P("x*z - y^2", R) + P("y^2", R) == P("x*z", R)
    f = P("x*w - y*z", R)
    assert f + R.zero() == f
    assert (f + P("y*z - x*w", R)).is_zero


def test_mul(R):
    assert P("x", R) * P("y", R) == P("x*y", R)
    assert P("(x+y)*(x-y)", R) == P("x^2 - y^2", R)
    g = R.param(0) * P("x*z - y^2", R)
    assert g.is_parametric and g.specialize([2, 5]) == P("2*x*z - 2*y^2", R)


def test_product_of_parametric_factors_rejected(R):
    with pytest.raises(ParameterError):
        R.param(0) * R.param(1)


def test_ring_mismatch():
    a = parse_poly("x", parse_ring("ring x,y"))
    b = parse_poly("x", parse_ring("ring x,z"))
    with pytest.raises(RingMismatch):
        a + b


def test_partial_derivatives(R):
    f = P("x*z - y^2", R)
    assert f.diff(0) == P("z", R)
    assert f.diff(1) == P("-2*y", R)
    assert f.diff(3).is_zero


def test_specialize(R):
    f = P("t0*x + t1*y", R)
    assert f.specialize([1, 0]) == P("x", R)
    assert f.specialize([0, 0]).is_zero
    assert P("t1*y*z", R).specialize([1, 1]) == P("y*z", R)
    with pytest.raises(ValueError):
        f.specialize([1])


def test_coefficients_stay_reduced(R):
    f = P("x/2 + x/3", R)
    assert f.coefficient((1, 0, 0, 0)) == Fraction(5, 6)


def test_homogeneity_and_degree(R):
    assert P("x*y + z^2", R).is_homogeneous()
    assert not P("x*y + z", R).is_homogeneous()
    assert P("x^3*w + 1", R).degree() == 4


@given(polys(), polys(), polys())
def test_ring_axioms(f, g, h):
    assert (f + g) + h == f + (g + h)
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * g == g * f
    assert f * (g + h) == f * g + f * h
    assert f - f == R3.zero()
    assert f * R3.one() == f


@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_product_of_homogeneous_is_homogeneous(a, b, data):
    f = data.draw(homogeneous_polys(R3, a))
    g = data.draw(homogeneous_polys(R3, b))
    fg = f * g
    assert fg.is_homogeneous() and fg.degree() == a + b


@given(st.integers(1, 4), st.data())
def test_euler_identity(k, data):
    f = data.draw(homogeneous_polys(R3, k, max_terms=5))
    lhs = R3.zero()
    for i, x in enumerate(R3.gens()):
        lhs = lhs + x * f.diff(i)
    assert lhs == f.scale(k)


@given(polys(), polys())
def test_substitute_is_a_ring_map(f, g):
    x, y, z = R3.gens()
    images = [y + z, x - z, x * y]
    assert (f * g).substitute(images) == f.substitute(images) * g.substitute(images)
    assert (f + g).substitute(images) == f.substitute(images) + g.substitute(images)
