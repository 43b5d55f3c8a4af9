from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from singdist.distributions import (
    CodimensionOneLocus,
    GenericFormFamily,
    HypersurfaceContainment,
    classify_degree1,
    coefficient_gcd,
    degeneration_probe,
    example_form,
    expected_betti,
    fiber_dimension,
    forms_oracle,
    generic_affine_chart,
    generic_form,
    gorenstein_symmetric,
    reducedness_test,
    same_span,
    singular_scheme,
    ugcd,
    verify_main_theorem2,
)
from singdist.forms import contract_radial
from singdist.groebner import eliminate, krull_dimension, saturation
from singdist.parsing import parse_form, parse_ideal, parse_ring
from singdist.syzygy import hilbert_polynomial


def _row(corpus, row_id):
    table, case = row_id.split("-")
    return corpus.select(table, int(case))[0]


def _family(row):
    return GenericFormFamily(row.form(), saturation(row.ideal()), row.degree, list(row.ideal().gens), [])


def test_example_singular_scheme(omega1, p3):
    Z = singular_scheme(omega1)
    assert krull_dimension(Z) == 0
    assert str(hilbert_polynomial(Z)) == "5"
    want = parse_ideal("x2^2 - x0*x3, x0*x2 - x1*x3, x1^2 - x2*x3, x0*x1 - x3^2, x0^2 - x1*x2", p3)
    assert Z.equals(want)


def test_singular_scheme_of_table_member(corpus, xyzw):
    w = _row(corpus, "T2-3").form().specialize([1, 1])
    assert singular_scheme(w).equals(parse_ideal("x*w, x*y, y*z", xyzw))


def test_codimension_one_rejected(corpus):
    rec = corpus.excluded[0]
    assert rec.expect == "codimension-one"
    with pytest.raises(CodimensionOneLocus) as e:
        singular_scheme(rec.form().specialize([1, 1]))
    assert str(e.value.witness) == "x + y"


def test_coefficient_gcd(xyzw):
    w = parse_form("(x + y)*y*dx - (x + y)*x*dy", xyzw)
    assert str(coefficient_gcd(w)) == "x + y"


@pytest.mark.parametrize("row_id", ["T2-1", "T4-1"])
def test_generic_form_spans_table_family(corpus, row_id):
    row = _row(corpus, row_id)
    fam = generic_form(row.ideal(), 1)
    assert fam.fiber_linear_dim == row.expected_fiber_dim
    assert same_span(fam.members(), row.form().param_components()[1:])
    assert contract_radial(fam.form).is_zero


def test_generic_form_of_degree_two_example(omega2):
    fam = generic_form(singular_scheme(omega2), 2)
    assert fam.fiber_linear_dim == 1
    assert same_span(fam.members(), [omega2])


@pytest.mark.parametrize("table, dim", [("T2", 2), ("T3", 6), ("T4", 4)])
def test_fiber_dimensions(corpus, table, dim):
    for row in corpus.select(table):
        I = row.ideal()
        assert fiber_dimension(I, 1) == fiber_dimension(I, 1, via="oracle") == dim


def test_fiber_dimension_of_five_points(omega1):
    Z = singular_scheme(omega1)
    assert fiber_dimension(Z, 1) == len(forms_oracle(Z, 1)) == 5


def test_hypersurface_guard(xyzw):
    with pytest.raises(HypersurfaceContainment):
        fiber_dimension(parse_ideal("x", xyzw), 1)


@pytest.mark.parametrize("d, seconds", [(1, 10), (2, 60)])
def test_cyclic_example_checks(p3, d, seconds):
    import time

    start = time.perf_counter()
    report = verify_main_theorem2(example_form(p3, d))
    assert report.ok, [c.to_json() for c in report.checks if not c.passed]
    assert time.perf_counter() - start < seconds
    assert report.projective_dim == 0


def test_cyclic_example_check_rejects_planar_input():
    R = parse_ring("ring x,y,z")
    w = parse_form("y*z*dx - x*z*dy", R)
    with pytest.raises(ValueError):
        verify_main_theorem2(w)


def test_expected_betti_and_symmetry():
    assert expected_betti(1) == {0: Counter({2: 5}), 1: Counter({3: 5}), 2: Counter({5: 1})}
    for d in range(1, 6):
        assert gorenstein_symmetric(expected_betti(d), d)
    assert not gorenstein_symmetric({0: Counter({2: 5}), 1: Counter({3: 5}), 2: Counter({6: 1})}, 1)


def test_classification(corpus, omega1):
    want = {"T2": (0, 0), "T3": (2, 2), "T4": (1, 1)}
    for row in corpus.rows:
        report = classify_degree1(row.form().specialize(row.probe["equal"]))
        assert report.bucket == want[row.table], row.id
    assert classify_degree1(omega1).bucket == (3, 5)


def test_classification_reports_tangent_field(corpus):
    report = classify_degree1(_row(corpus, "T2-4").form().specialize([1, 1]))
    assert report.integrable
    assert report.to_json()["tangent_fields"] == [["0", "0", "0", "1"]]


def test_conic_point_special_member(corpus):
    row = _row(corpus, "T4-1")
    w = row.form()
    # (0,0,1,1) lies on h = 0: the scheme jumps to a conic plus a line
    assert row.h().evaluate([0, 0, 1, 1]) == 0
    degenerate = classify_degree1(w.specialize([0, 0, 1, 1]))
    assert str(degenerate.hilbert_poly) == "3t + 1" and not degenerate.integrable
    good = classify_degree1(w.specialize([0, 0, 1, 2]))
    assert good.bucket == (1, 1) and good.integrable


@pytest.mark.parametrize(
    "row_id, values, status",
    [
        ("T2-3", [1, 1], "EQUAL"),
        ("T2-3", [1, 0], "LARGER"),
        ("T4-2", [1, 2, 3, -3], "LARGER"),
        ("T4-2", [1, 2, 3, 5], "EQUAL"),
    ],
)
def test_degeneration_probes(corpus, row_id, values, status):
    assert degeneration_probe(_family(_row(corpus, row_id)), values).status == status


def test_probe_of_zero_member(corpus):
    res = degeneration_probe(_family(_row(corpus, "T2-3")), [0, 0])
    assert res.status == "LARGER" and res.hilbert_poly is None


def test_reducedness(omega1, omega2):
    cert = reducedness_test(singular_scheme(omega1))
    assert cert.reduced and cert.length == 5
    cert2 = reducedness_test(singular_scheme(omega2))
    assert cert2.reduced and cert2.length == 20


def test_reducedness_matches_elimination(omega1, p3):
    Z = singular_scheme(omega1)
    cert = reducedness_test(Z)
    E = eliminate(generic_affine_chart(Z), ["x1", "x2", "x3"])
    gens = [g for g in E.groebner_basis() if not g.is_zero]
    assert len(gens) == 1
    g = gens[0]
    lead = g.coefficient((5, 0, 0, 0))
    coeffs = [g.coefficient((k, 0, 0, 0)) / lead for k in range(6)]
    assert coeffs == cert.eliminant


def test_double_point_not_reduced():
    R = parse_ring("ring x0,x1,x2")
    cert = reducedness_test(parse_ideal("x0, x1^2", R))
    assert cert.length == 2 and not cert.reduced


def test_reducedness_needs_points(xyzw):
    with pytest.raises(ValueError):
        reducedness_test(parse_ideal("x, y", xyzw))


def _times_linear(p, r):
    # p(u) * (u - r), coefficients lowest degree first
    out = [Fraction(0)] * (len(p) + 1)
    for i, c in enumerate(p):
        out[i + 1] += c
        out[i] -= r * c
    return out


def _value(p, u):
    return sum(c * u**i for i, c in enumerate(p))


@given(
    st.lists(st.integers(-4, 4), min_size=1, max_size=3).filter(any),
    st.lists(st.integers(-4, 4), min_size=1, max_size=3).filter(any),
    st.integers(-3, 3),
)
def test_ugcd_keeps_common_root(p, q, r):
    a = _times_linear([Fraction(c) for c in p], r)
    b = _times_linear([Fraction(c) for c in q], r)
    g = ugcd(a, b)
    assert g[-1] == 1 and len(g) >= 2
    assert _value(g, r) == 0


@given(st.integers(1, 3))
def test_example_forms_are_distributions(d):
    p3 = parse_ring("ring x0,x1,x2,x3")
    w = example_form(p3, d)
    assert contract_radial(w).is_zero
    assert w.degree == d
