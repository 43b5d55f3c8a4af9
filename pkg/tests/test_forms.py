from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singdist.forms import (
    SkewMatrix,
    TwistedOneForm,
    apply_to_vector,
    constant_tangent_fields,
    contract_radial,
    determinant,
    euler_relation_holds,
    integrability_ideal,
    is_integrable,
    pfaffian4,
    pfaffian_certificate,
    pfaffian_cofactors,
    skew_of_derivative,
    wedge_integrability,
)
from singdist.linalg import rank
from singdist.parsing import parse_form, parse_ideal, parse_poly
from singdist.polyring import RingSpec
from strategies import R4, radial_forms, skew_polys


def test_contraction(corpus, omega1):
    assert contract_radial(omega1).is_zero
    for row in corpus.rows:
        assert contract_radial(row.form()).is_zero
    w = parse_form("y*dx", RingSpec(("x", "y")))
    assert str(contract_radial(w)) == "x*y"


def test_euler_relation(omega1, omega2, corpus):
    assert euler_relation_holds(omega1) and euler_relation_holds(omega2)
    for row in corpus.rows:
        assert euler_relation_holds(row.form().specialize([2, 3, 5, 7, 11, 13][: row.ring().nparams]))


def test_pfaffian_formula(p3):
    a, b, c, d, e, f = (parse_poly(s, p3) for s in ["x0", "x1", "x2", "x3", "x0 + x1", "x2*x3"])
    z = p3.zero()
    B = SkewMatrix(((z, a, b, c), (-a, z, d, e), (-b, -d, z, f), (-c, -e, -f, z)))
    assert pfaffian4(B) == a * f - b * e + c * d


def test_example_pfaffian(omega1, omega2, p3):
    P1 = pfaffian4(skew_of_derivative(omega1))
    assert P1 == parse_poly("9*x0*x2 - 9*x1*x3", p3)
    P2 = pfaffian4(skew_of_derivative(omega2))
    assert P2.is_homogeneous() and P2.degree() == 4


def test_certificate(omega1, omega2, corpus):
    assert pfaffian_certificate(omega1) and pfaffian_certificate(omega2)
    w = corpus.select("T4", 1)[0].form().specialize([1, 2, 3, 5])
    assert pfaffian_certificate(w)


def test_cofactors_of_zero(p3):
    z = p3.zero()
    B = SkewMatrix(tuple((z,) * 4 for _ in range(4)))
    assert pfaffian4(B).is_zero
    assert all(q.is_zero for row in pfaffian_cofactors(B) for q in row)


def test_skew_check(p3):
    x = p3.gens()
    z = p3.zero()
    with pytest.raises(ValueError):
        SkewMatrix(((z, x[0]), (x[0], z)))


def test_inhomogeneous_rejected(p3):
    x = p3.gens()
    with pytest.raises(ValueError):
        TwistedOneForm.checked([x[0], x[1] ** 2, p3.zero(), p3.zero()], p3)
    with pytest.raises(ValueError):
        TwistedOneForm.checked([p3.zero()] * 4, p3)


def test_integrability_examples(omega1, corpus, p3):
    assert not is_integrable(omega1)
    pencil = parse_form("x1*dx0 - x0*dx1", p3)
    assert is_integrable(pencil) and wedge_integrability(pencil).is_zero()
    assert wedge_integrability(omega1).nonzero_components()


def test_integrability_locus_conic_point(corpus):
    row = corpus.select("T4", 1)[0]
    w = row.form()
    J = integrability_ideal(w)
    assert J.equals(parse_ideal("t0*t3, t1*t3, 2*t2*t3 - t3^2", J.ring))
    assert is_integrable(w, [0, 0, 1, 2])
    assert not is_integrable(w, [0, 0, 1, 1])
    assert not is_integrable(w, [1, 0, 1, 2])


@pytest.mark.parametrize("row_id", ["T2-4", "T2-5", "T2-7"])
def test_integrable_rows(corpus, row_id):
    table, case = row_id.split("-")
    w = corpus.select(table, int(case))[0].form()
    assert not integrability_ideal(w).gens
    assert is_integrable(w, [2, 3]) and is_integrable(w, [-1, 7])


def test_twisted_cubic_pencil_never_integrable(corpus):
    J = integrability_ideal(corpus.select("T2", 1)[0].form())
    assert J.equals(parse_ideal("t0^2, t0*t1, t1^2", J.ring))


def test_tangent_fields(corpus, omega1):
    assert constant_tangent_fields(omega1) == []
    w = corpus.select("T2", 4)[0].form().specialize([1, 1])
    assert constant_tangent_fields(w) == [[0, 0, 0, 1]]
    w = corpus.select("T2", 1)[0].form()
    assert constant_tangent_fields(w.specialize([1, 1])) == [[-1, 1, -1, 1]]
    assert constant_tangent_fields(w.specialize([1, -1])) == [[1, 1, 1, 1]]


def _field(entries, t):
    ring = RingSpec(("t0", "t1"))
    return [parse_poly(e, ring).evaluate(t) for e in entries]


@pytest.mark.parametrize("t", [(1, 1), (1, -1), (2, 3), (-1, 4), (5, 0), (0, 1)])
def test_parametric_tangent_field(corpus, t):
    row = corpus.select("T2", 1)[0]
    w = row.form().specialize(list(t))
    v = _field(row.tangent_field, t)
    assert apply_to_vector(w, v).is_zero
    fields = constant_tangent_fields(w)
    assert len(fields) == 1
    assert rank([fields[0], v]) == 1


def test_printed_tangent_field_fails(corpus):
    row = corpus.select("T2", 1)[0]
    w = row.form().specialize([1, 1])
    v = _field(row.printed_tangent_field, (1, 1))
    assert not apply_to_vector(w, v).is_zero


def test_fields_trace_a_twisted_cubic(corpus):
    # four members of the pencil have linearly independent tangent fields
    row = corpus.select("T2", 1)[0]
    vs = [_field(row.tangent_field, t) for t in [(1, 0), (0, 1), (1, 1), (1, 2)]]
    assert rank(vs) == 4


@given(skew_polys())
def test_pfaffian_squared_is_determinant(M):
    B = SkewMatrix(tuple(tuple(r) for r in M))
    P = pfaffian4(B)
    assert P * P == determinant(M)
    assert P.is_zero or (P.is_homogeneous() and P.degree() == 2)


@given(skew_polys())
def test_cofactor_identity(M):
    B = SkewMatrix(tuple(tuple(r) for r in M))
    P = pfaffian4(B)
    Q = pfaffian_cofactors(B)
    for i in range(4):
        for j in range(4):
            s = R4.zero()
            for k in range(4):
                s = s + Q[i][k] * M[k][j]
            assert s == (P if i == j else R4.zero())


@given(radial_forms())
def test_radial_forms_satisfy_euler(w):
    assert contract_radial(w).is_zero
    assert euler_relation_holds(w)
    assert pfaffian_certificate(w)


@given(radial_forms(), st.integers(-5, 5).filter(bool))
def test_scale_invariance(w, c):
    v = w.scale(Fraction(c))
    assert is_integrable(v) == is_integrable(w)
    assert constant_tangent_fields(v) == constant_tangent_fields(w)
    assert pfaffian4(skew_of_derivative(v)) == pfaffian4(skew_of_derivative(w)).scale(c * c)


@given(radial_forms())
def test_integrable_iff_wedge_vanishes(w):
    assert is_integrable(w) == wedge_integrability(w).is_zero()
