from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singdist.chern import (
    ChernCharacter,
    ChernClassVector,
    DimensionError,
    character_dual,
    character_to_chern,
    chern_to_character,
    chi_pair,
    cotangent_classes,
    euler_characteristic,
    hom_dimension,
    line_bundle,
    phi,
    phi_top_chern,
    todd_projective,
    twist_classes,
)

F = Fraction
TANGENT = ChernClassVector(2, (1, 2, 2))
IDEAL_TWIST = ChernClassVector(1, (3, 1, -5))


def test_character_of_tangent_sheaf():
    ch = chern_to_character(TANGENT)
    assert ch.coeffs == (2, 1, F(-3, 2), F(1, 6))
    assert character_dual(ch).coeffs == (2, -1, F(-3, 2), F(-1, 6))


def test_character_of_twisted_ideal_sheaf():
    assert chern_to_character(IDEAL_TWIST).coeffs == (1, 3, F(7, 2), F(1, 2))


def test_trivial_bundle():
    assert chern_to_character(ChernClassVector(1, (0, 0, 0))).coeffs == (1, 0, 0, 0)
    assert chern_to_character(ChernClassVector(3, ())).coeffs == (3, 0, 0, 0)


def test_dual_is_involution():
    ch = chern_to_character(TANGENT)
    assert ch.dual().dual() == ch
    assert ChernCharacter((4,), 3).dual() == ChernCharacter((4,), 3)


def test_todd_class():
    assert todd_projective(3).coeffs == (1, 2, F(11, 6), 1)
    assert todd_projective(1).coeffs == (1, 1)
    assert euler_characteristic(line_bundle(0, 3)) == 1


def test_chi_of_the_pair():
    chi = chi_pair(chern_to_character(TANGENT), chern_to_character(IDEAL_TWIST))
    assert chi == 9
    assert hom_dimension(chi, 6) == 15


def test_dimension_limit():
    with pytest.raises(DimensionError):
        todd_projective(4)
    with pytest.raises(DimensionError):
        chern_to_character(TANGENT, n=4)


def test_mismatched_dimensions():
    with pytest.raises(ValueError):
        line_bundle(1, 2) + line_bundle(1, 3)
    with pytest.raises(ValueError):
        chi_pair(line_bundle(0, 2), line_bundle(0, 3))


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("k", [0, 1, 2, 3])
def test_riemann_roch_line_bundles(n, k):
    assert chi_pair(line_bundle(0, n), line_bundle(k, n)) == comb(n + k, n)


def test_phi_values():
    assert phi(1, 2) == 3
    assert phi(1, 3) == 5
    assert phi(2, 3) == 20
    with pytest.raises(ValueError):
        phi(-1, 3)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("d", range(5))
def test_phi_routes_agree(d, n):
    assert phi_top_chern(d, n) == phi(d, n)


def test_cotangent_classes():
    assert cotangent_classes(3).classes == (-4, 6, -4)
    assert cotangent_classes(2).classes == (-3, 3)


def test_twist_of_line_bundle():
    # c1(O(a) ⊗ O(k)) = a + k
    assert twist_classes(ChernClassVector(1, (2,)), 3, 1).classes == (5,)


classes = st.tuples(*[st.integers(-5, 5)] * 3)


@given(st.integers(1, 3), classes)
def test_character_round_trip(r, c):
    v = ChernClassVector(r, c)
    assert character_to_chern(chern_to_character(v)) == v


@given(st.integers(1, 3), classes, st.integers(-3, 3))
def test_twist_matches_character_product(r, c, k):
    v = ChernClassVector(r, c)
    lhs = chern_to_character(twist_classes(v, k, 3))
    rhs = chern_to_character(v).twist(k)
    assert lhs == rhs


@given(classes, classes, classes)
def test_chi_is_bilinear(a, b, c):
    A = chern_to_character(ChernClassVector(2, a))
    B = chern_to_character(ChernClassVector(1, b))
    C = chern_to_character(ChernClassVector(1, c))
    assert chi_pair(A + B, C) == chi_pair(A, C) + chi_pair(B, C)
    assert chi_pair(A, B + C) == chi_pair(A, B) + chi_pair(A, C)
    assert chi_pair(A.scale(3), C) == 3 * chi_pair(A, C)


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_line_bundle_characters_multiply(a, b):
    assert line_bundle(a, 3) * line_bundle(b, 3) == line_bundle(a + b, 3)
