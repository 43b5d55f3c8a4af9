"""Hypothesis strategies for small polynomials, ideals, skew matrices and forms."""

from fractions import Fraction

from hypothesis import strategies as st

from oracles import monomials
from singdist.forms import TwistedOneForm
from singdist.groebner import Ideal
from singdist.parsing import parse_ring

R3 = parse_ring("ring x,y,z")
R4 = parse_ring("ring x0,x1,x2,x3")

small_coeffs = st.integers(min_value=-3, max_value=3).map(Fraction)


@st.composite
def polys(draw, ring=R3, max_deg=2, max_terms=4):
    n = ring.nvars
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        deg = draw(st.integers(0, max_deg))
        m = tuple(draw(st.lists(st.integers(0, deg), min_size=n, max_size=n)))
        terms[m] = draw(small_coeffs)
    return ring.from_dict(terms)


@st.composite
def homogeneous_polys(draw, ring=R3, deg=2, max_terms=3, nonzero=True):
    basis = monomials(ring.nvars, deg)
    picks = draw(st.lists(st.sampled_from(basis), min_size=1 if nonzero else 0, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(small_coeffs.filter(bool), min_size=len(picks), max_size=len(picks)))
    return ring.from_dict(dict(zip(picks, coeffs)))


@st.composite
def homogeneous_ideals(draw, ring=R3, max_gens=3, degs=(1, 2)):
    k = draw(st.integers(1, max_gens))
    gens = [draw(homogeneous_polys(ring, draw(st.sampled_from(degs)))) for _ in range(k)]
    return Ideal(ring, gens)


@st.composite
def monomial_ideals(draw, ring=R3, max_gens=4, max_deg=3):
    k = draw(st.integers(1, max_gens))
    gens = []
    for _ in range(k):
        d = draw(st.integers(1, max_deg))
        gens.append(ring.monomial(draw(st.sampled_from(monomials(ring.nvars, d)))))
    return Ideal(ring, gens)


@st.composite
def skew_polys(draw, ring=R4, deg=1, max_terms=2):
    """A skew matrix of homogeneous degree-``deg`` polynomials (zero entries allowed)."""
    n = ring.nvars
    M = [[ring.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if draw(st.booleans()):
                f = draw(homogeneous_polys(ring, deg, max_terms))
                M[i][j] = f
                M[j][i] = -f
    return M


@st.composite
def radial_forms(draw, ring=R4, d=1):
    """``A = M·x`` with ``M`` skew of degree ``d``, so that ``Σ xᵢAᵢ = 0``."""
    M = draw(skew_polys(ring, d))
    x = ring.gens()
    coeffs = []
    for row in M:
        acc = ring.zero()
        for m, xi in zip(row, x):
            acc = acc + m * xi
        coeffs.append(acc)
    if all(c.is_zero for c in coeffs):
        coeffs[0] = x[1] ** (d + 1)
        coeffs[1] = -(x[0] * x[1] ** d)
    return TwistedOneForm(tuple(coeffs), ring)
