import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import hilbert_function_oracle, ideal_piece_dim_oracle, in_piece, quotient_piece_oracle, spoly
from singdist.distributions import singular_scheme
from singdist.forms import pfaffian4, skew_of_derivative
from singdist.groebner import (
    GroebnerBudgetExceeded,
    Ideal,
    eliminate,
    hilbert_function,
    ideal_piece_dim,
    ideal_quotient,
    in_ideal_certificate,
    intersect,
    irrelevant_ideal,
    krull_dimension,
    lift,
    minimal_generators,
    normal_form,
    radical_contains,
    saturation,
    saturation_revlex,
    saturation_with_stats,
)
from singdist.parsing import parse_ideal, parse_poly, parse_ring
from strategies import R3, homogeneous_ideals, monomial_ideals

TWISTED_CUBIC = "x*z - y^2, x*w - y*z, y*w - z^2"


def I_(s, ring):
    return parse_ideal(s, ring)


def test_normal_form_basics(xyzw):
    f = parse_poly("x*z - y^2", xyzw)
    assert normal_form(f, [f]).is_zero
    gb = I_(TWISTED_CUBIC, xyzw).groebner_basis()
    assert normal_form(xyzw.one(), gb) == xyzw.one()
    assert normal_form(parse_poly("x*(y*w - z^2)", xyzw), gb).is_zero


def test_groebner_small(xyzw):
    assert [str(g) for g in I_("x", xyzw).groebner_basis()] == ["x"]
    assert [str(g) for g in I_("x^2, x", xyzw).groebner_basis()] == ["x"]


def test_twisted_cubic_basis(xyzw):
    I = I_(TWISTED_CUBIC, xyzw)
    gb = I.groebner_basis()
    assert len(gb) == 3
    assert all(g.coefficient(g.leading_monomial()) == 1 for g in gb)
    for g in I.gens:
        assert normal_form(g, gb).is_zero
    for g in gb:
        assert in_ideal_certificate(g, I)
    assert ideal_piece_dim(I, 2) == ideal_piece_dim_oracle(I.gens, 4, 2) == 3


def test_reduced_basis_properties(xyzw, corpus):
    for row in corpus.rows:
        gb = row.ideal().groebner_basis()
        lms = [g.leading_monomial() for g in gb]
        for g in gb:
            for m in g.monomials():
                for lm in lms:
                    if lm != g.leading_monomial():
                        assert not all(a >= b for a, b in zip(m, lm))


def test_quotient(xyzw):
    R2 = parse_ring("ring x,y")
    assert ideal_quotient(I_("x*y", R2), I_("y", R2)).equals(I_("x", R2))
    I = I_(TWISTED_CUBIC, xyzw)
    assert ideal_quotient(I, I_("1", xyzw)).equals(I)
    assert ideal_quotient(I_("x^2, x*y", R2), I_("x, y", R2)).equals(I_("x", R2))


def test_quotient_against_oracle():
    R2 = parse_ring("ring x,y,z")
    I = I_("x^2, x*y", R2)
    J = I_("x, y", R2)
    Q = ideal_quotient(I, J)
    for k in range(1, 5):
        assert ideal_piece_dim(Q, k) == quotient_piece_oracle(I.gens, J.gens, 3, k)


def test_saturation_small():
    R2 = parse_ring("ring x,y")
    res = saturation_with_stats(I_("x^2, x*y", R2))
    assert res.ideal.equals(I_("x", R2)) and res.rounds == 2


def test_saturation_keeps_embedded_line_component(xyzw):
    # in P^3 the component (x^2, y) is a line, so nothing is removed
    I = I_("x^2, x*y", xyzw)
    assert saturation(I).equals(I)


def test_saturation_idempotent(xyzw):
    I = I_("x^2, x*y", parse_ring("ring x,y"))
    S = saturation(I)
    assert saturation(S).equals(S)


def test_saturation_of_example(omega1, p3):
    A = Ideal(p3, list(omega1.coeffs))
    P = pfaffian4(skew_of_derivative(omega1))
    S = saturation(A)
    target = A + Ideal(p3, [P])
    assert S.contains_ideal(target) and target.contains_ideal(S)
    assert not A.contains(P)


def test_saturation_routes_agree(corpus):
    for row in corpus.rows:
        I = row.ideal()
        assert saturation(I).equals(saturation_revlex(I))


def test_eliminate_small(xyzw):
    assert all(g.is_zero for g in eliminate(I_("x - y", xyzw), ["x"]).gens)
    E = eliminate(I_("x - y, x", xyzw), ["x"])
    assert E.equals(I_("y", xyzw))


def test_intersection(xyzw):
    I = intersect(I_("x*y - z^2, w", xyzw), I_("x, y, z", xyzw))
    assert I.equals(I_("z*w, y*w, x*w, x*y - z^2", xyzw))


def test_piece_dims_conic_point(corpus):
    I = corpus.select("T4", 1)[0].ideal()
    assert ideal_piece_dim(I, 3) == 12
    assert ideal_piece_dim(I, 4) == 25


def test_example_not_on_a_hyperplane(omega1):
    Z = singular_scheme(omega1)
    assert ideal_piece_dim(Z, 0) == ideal_piece_dim(Z, 1) == 0


def test_dimensions(xyzw, omega1):
    assert krull_dimension(irrelevant_ideal(xyzw)) == -1
    assert krull_dimension(I_(TWISTED_CUBIC, xyzw)) == 1
    assert krull_dimension(singular_scheme(omega1)) == 0
    with pytest.raises(ValueError):
        krull_dimension(I_("1", xyzw))


def test_hilbert_function_negative_degree(xyzw):
    assert hilbert_function(I_(TWISTED_CUBIC, xyzw), -1) == 0


def test_lift(xyzw):
    I = I_(TWISTED_CUBIC, xyzw)
    f = parse_poly("x^2*w - y^3", xyzw)
    h = lift(f, list(I.gens))
    assert h is not None
    total = xyzw.zero()
    for a, g in zip(h, I.gens):
        total = total + a * g
    assert total == f
    assert lift(parse_poly("x", xyzw), list(I.gens)) is None


def test_minimal_generators(xyzw):
    I = I_("x*z - y^2, x*w - y*z, y*w - z^2, x*(x*z - y^2), z*w - z*w", xyzw)
    assert len(minimal_generators(I)) == 3


def test_radical_membership(xyzw):
    I = I_("x^3, y^2", xyzw)
    assert radical_contains(I, parse_poly("x*y", xyzw))
    assert not radical_contains(I, parse_poly("z", xyzw))


def test_step_budget(monkeypatch, xyzw):
    monkeypatch.setenv("SINGDIST_MAX_STEPS", "5")
    with pytest.raises(GroebnerBudgetExceeded):
        I_(TWISTED_CUBIC + ", x^3 - w^3", xyzw).groebner_basis()


@given(homogeneous_ideals())
def test_buchberger_criterion(I):
    gb = I.groebner_basis()
    for i in range(len(gb)):
        for j in range(i + 1, len(gb)):
            assert normal_form(spoly(gb[i], gb[j]), gb).is_zero
    for g in I.gens:
        assert I.contains(g)


@given(homogeneous_ideals(), st.integers(0, 5))
def test_hilbert_function_matches_oracle(I, k):
    assert hilbert_function(I, k) == hilbert_function_oracle(I.gens, 3, k)


@given(homogeneous_ideals(max_gens=2))
def test_saturation_idempotent_random(I):
    S = saturation(I)
    assert S.contains_ideal(I)
    assert saturation(S).equals(S)


@given(monomial_ideals())
def test_saturation_routes_random(I):
    assert saturation(I).equals(saturation_revlex(I))


@given(homogeneous_ideals(max_gens=2))
def test_ideal_membership_by_pieces(I):
    gb = I.groebner_basis()
    for g in gb:
        if g.is_homogeneous():
            assert in_piece(g, I.gens, 3)
