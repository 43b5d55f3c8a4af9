"""Singular schemes, generic forms and the degree-one classification.

The generic 1-form singular along ``V(I)`` is built from the syzygies of the
minimal generators ``G`` of ``I`` in degree ``d + 2``: a syzygy ``L`` with
``Σ G_j L_j = 0`` gives the form ``Σ G_j dL_j / deg(L_j)``, whose radial
contraction is ``Σ G_j L_j = 0``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .forms import (
    TwistedOneForm,
    constant_tangent_fields,
    contract_radial,
    euler_relation_holds,
    is_integrable,
    pfaffian4,
    pfaffian_certificate,
    skew_of_derivative,
)
from .groebner import (
    Ideal,
    divide_exact,
    ideal_piece_dim,
    intersect,
    krull_dimension,
    minimal_generators,
    saturation,
)
from .hilbert import UPoly
from .linalg import nullspace, rref
from .polyring import Polynomial, RingSpec, monomials_of_degree
from .syzygy import hilbert_polynomial, minimal_free_resolution, syzygies


class NotADistribution(ValueError):
    """The coefficients do not define a distribution (``ι_R ω ≠ 0``)."""


class CodimensionOneLocus(ValueError):
    """The coefficients share a common factor, so the form vanishes on a hypersurface."""

    def __init__(self, witness: Polynomial):
        self.witness = witness
        super().__init__(f"coefficients share the common factor {witness}")


class HypersurfaceContainment(ValueError):
    """``V(I)`` lies on a hypersurface of degree ``≤ d``."""


# --------------------------------------------------------------------------
# gcd and singular schemes
# --------------------------------------------------------------------------


def poly_gcd(f: Polynomial, g: Polynomial) -> Polynomial:
    """Monic gcd via ``f·g / lcm`` with the lcm read off ``(f) ∩ (g)``."""
    if f.is_zero:
        return g.monic()
    if g.is_zero:
        return f.monic()
    ring = f.ring
    inter = intersect(Ideal(ring, [f]), Ideal(ring, [g])).groebner_basis()
    lcm = min(inter, key=lambda h: h.degree())
    return divide_exact(f * g, lcm).monic()


def coefficient_gcd(omega: TwistedOneForm) -> Polynomial:
    coeffs = [a for a in omega.parameter_free().coeffs if not a.is_zero]
    g = coeffs[0].monic()
    for a in coeffs[1:]:
        if g.is_constant:
            break
        g = poly_gcd(g, a)
    return g


def check_distribution(omega: TwistedOneForm) -> None:
    if omega.is_parametric:
        raise ValueError("specialize the parameters before computing a singular scheme")
    if all(a.is_zero for a in omega.coeffs):
        raise NotADistribution("the zero form defines no distribution")
    c = contract_radial(omega)
    if not c.is_zero:
        raise NotADistribution(f"radial contraction is {c}, not 0")


def singular_scheme(omega: TwistedOneForm) -> Ideal:
    """Saturation of the coefficient ideal; rejects forms with a common factor."""
    check_distribution(omega)
    g = coefficient_gcd(omega)
    if not g.is_constant:
        raise CodimensionOneLocus(g)
    form = omega.parameter_free()
    return saturation(Ideal(form.ring, form.coeffs))


def example_form(ring: RingSpec, d: int) -> TwistedOneForm:
    """``Σ (x_{j+1} x_j^d - x_{j-1}^{d+1}) dx_j`` with indices taken cyclically."""
    x = ring.gens()
    n = ring.nvars
    coeffs = [x[(j + 1) % n] * x[j] ** d - x[(j - 1) % n] ** (d + 1) for j in range(n)]
    return TwistedOneForm.checked(coeffs, ring)


# --------------------------------------------------------------------------
# generic forms
# --------------------------------------------------------------------------


@dataclass
class GenericFormFamily:
    form: TwistedOneForm  # parameter-linear, no constant part
    base_ideal: Ideal
    degree: int
    generators: list
    syzygy_columns: list

    @property
    def fiber_linear_dim(self) -> int:
        return self.form.ring.nparams

    def members(self) -> list[TwistedOneForm]:
        return self.form.param_components()[1:]

    def specialize(self, values: Sequence) -> TwistedOneForm:
        return self.form.specialize(values)


def check_no_hypersurface(I: Ideal, d: int) -> None:
    for k in range(d + 1):
        if ideal_piece_dim(I, k):
            raise HypersurfaceContainment(f"the ideal has nonzero elements in degree {k} <= {d}")


def _form_of_syzygy(G, column, ring) -> list[Polynomial]:
    coeffs = [ring.zero()] * ring.nvars
    for g, L in zip(G, column):
        if L.is_zero or L.is_constant:
            continue
        k = L.degree()
        for i in range(ring.nvars):
            dl = L.diff(i)
            if not dl.is_zero:
                coeffs[i] = coeffs[i] + (g * dl).scale(Fraction(1, k))
    return coeffs


def generic_form(I: Ideal, d: int, param_prefix: str = "t") -> GenericFormFamily:
    """``ω(t) = Σ_k t_k ω_k`` over the syzygies ``L^(k)`` of the minimal generators in degree ``d + 2``."""
    sat = saturation(I)
    check_no_hypersurface(sat, d)
    G = minimal_generators(sat)
    ring = sat.ring
    M = syzygies(G)
    cols = [c for j, c in enumerate(M.columns()) if M.source.twists[j] == d + 2]
    forms = [_form_of_syzygy(G, c, ring) for c in cols]
    # keep a basis of the resulting forms (they are independent for linear syzygies)
    vecs = [_form_coordinates(f, d) for f in forms]
    keep = []
    rows: list = []
    for f, v in zip(forms, vecs):
        if any(v) and len(rref(rows + [v])[1]) > len(rows):
            rows.append(v)
            keep.append(f)
    names = tuple(f"{param_prefix}{k}" for k in range(len(keep)))
    pring = ring.with_params(names)
    coeffs = [pring.zero()] * ring.nvars
    for k, f in enumerate(keep):
        t = pring.param(k)
        for i, a in enumerate(f):
            if not a.is_zero:
                coeffs[i] = coeffs[i] + t * a.in_ring(pring)
    form = TwistedOneForm(tuple(coeffs), pring)
    if not contract_radial(form).is_zero:
        raise NotADistribution("syzygy route produced a form with nonzero radial contraction")
    return GenericFormFamily(form, sat, d, G, cols)


def _form_coordinates(coeffs: Sequence[Polynomial], d: int) -> list[Fraction]:
    nv = len(coeffs)
    basis = monomials_of_degree(nv, d + 1)
    return [a.coefficient(m) for a in coeffs for m in basis]


def forms_oracle(I: Ideal, d: int) -> list[list[Polynomial]]:
    """Basis of ``{A ∈ I_{d+1}^{n+1} : Σ x_i A_i = 0}`` by plain row reduction."""
    ring = I.ring
    n = ring.nvars
    k = d + 1
    piece = ideal_piece_basis(I, k)
    if not piece:
        return []
    out_monos = {m: i for i, m in enumerate(monomials_of_degree(n, k + 1))}
    unknowns = [(i, b) for i in range(n) for b in range(len(piece))]
    rows = [[Fraction(0)] * len(unknowns) for _ in out_monos]
    for u, (i, b) in enumerate(unknowns):
        for (m, _), c in piece[b].terms.items():
            mm = m[:i] + (m[i] + 1,) + m[i + 1:]
            rows[out_monos[mm]][u] += c
    out = []
    for v in nullspace(rows, len(unknowns)):
        coeffs = [ring.zero()] * n
        for (i, b), c in zip(unknowns, v):
            if c:
                coeffs[i] = coeffs[i] + piece[b].scale(c)
        out.append(coeffs)
    return out


def ideal_piece_basis(I: Ideal, k: int) -> list[Polynomial]:
    """Basis of ``I_k`` from all degree-``k`` multiples of the generators (no Gröbner basis)."""
    ring = I.ring
    n = ring.nvars
    monos = monomials_of_degree(n, k)
    index = {m: i for i, m in enumerate(monos)}
    rows = []
    for g in I.gens:
        if not g.is_homogeneous():
            raise ValueError("ideal_piece_basis needs homogeneous generators")
        e = k - g.degree()
        if e < 0:
            continue
        for q in monomials_of_degree(n, e):
            row = [Fraction(0)] * len(monos)
            for (m, _), c in g.terms.items():
                row[index[tuple(a + b for a, b in zip(m, q))]] = c
            rows.append(row)
    red, _ = rref(rows, len(monos))
    return [ring.from_dict({m: c for m, c in zip(monos, r) if c}) for r in red]


def fiber_dimension(I: Ideal, d: int, via: str = "syzygy") -> int:
    """Linear dimension of the space of degree-``d`` forms vanishing on ``V(I)``."""
    sat = saturation(I)
    check_no_hypersurface(sat, d)
    if via == "syzygy":
        return generic_form(sat, d).fiber_linear_dim
    if via == "oracle":
        return len(forms_oracle(sat, d))
    raise ValueError(f"unknown route {via!r}")


def form_span(forms: Sequence) -> list[list[Fraction]]:
    """Row-reduced coefficient matrix over the fixed monomial × dx basis."""
    vecs = []
    d = None
    for f in forms:
        coeffs = f.coeffs if isinstance(f, TwistedOneForm) else f
        deg = max(a.degree() for a in coeffs)
        d = deg - 1 if d is None else d
        if deg - 1 != d:
            raise ValueError("forms of different degrees")
        vecs.append(_form_coordinates(coeffs, d))
    if not vecs:
        return []
    return rref(vecs)[0]


def same_span(a: Sequence, b: Sequence) -> bool:
    return form_span(a) == form_span(b)


# --------------------------------------------------------------------------
# reports
# --------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


BUCKETS = {
    (Fraction(5),): (3, 5),
    (Fraction(3), Fraction(1)): (2, 2),
    (Fraction(2), Fraction(2)): (1, 1),
    (Fraction(1), Fraction(3)): (0, 0),
}

BUCKET_LABELS = {
    (3, 5): "5 points",
    (2, 2): "line and 2 points",
    (1, 1): "conic and 1 point",
    (0, 0): "twisted cubic",
}


@dataclass
class DistributionReport:
    degree: int
    singular_ideal: Ideal
    hilbert_poly: UPoly
    projective_dim: int
    integrable: bool
    bucket: tuple | None = None
    tangent_fields: list = field(default_factory=list)
    betti: dict | None = None
    checks: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {
            "schema": 1,
            "degree": self.degree,
            "hilbert_polynomial": str(self.hilbert_poly),
            "projective_dim": self.projective_dim,
            "betti": self.betti,
            "bucket": list(self.bucket) if self.bucket else None,
            "integrable": self.integrable,
            "checks": [c.to_json() for c in self.checks],
        }
        if self.tangent_fields:
            out["tangent_fields"] = [[str(c) for c in v] for v in self.tangent_fields]
        return out

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def bucket_of(hp: UPoly) -> tuple | None:
    return BUCKETS.get(hp.coeffs)


def classify_degree1(omega: TwistedOneForm) -> DistributionReport:
    """Bucket a degree-one distribution on P³ by the Hilbert polynomial of its singular scheme."""
    if omega.nvars != 4 or omega.degree != 1:
        raise ValueError("classify_degree1 expects a degree-1 form on P^3")
    Z = singular_scheme(omega)
    hp = hilbert_polynomial(Z)
    bucket = bucket_of(hp)
    if bucket is None:
        raise ValueError(f"Hilbert polynomial {hp} is outside the degree-1 classification")
    res = minimal_free_resolution(Z)
    fields = constant_tangent_fields(omega) if bucket == (0, 0) else []
    return DistributionReport(
        degree=1,
        singular_ideal=Z,
        hilbert_poly=hp,
        projective_dim=krull_dimension(Z),
        integrable=is_integrable(omega),
        bucket=bucket,
        tangent_fields=fields,
        betti=res.betti_json(),
        checks=[Check("radial-contraction", True), Check("bucket", True, BUCKET_LABELS[bucket])],
    )


def expected_betti(d: int) -> dict:
    """Betti table of ``I(Z)`` for a generic degree-d distribution on P³ (twists may coincide)."""
    from collections import Counter

    return {
        0: Counter({d + 1: 4}) + Counter({2 * d: 1}),
        1: Counter({2 * d + 1: 4}) + Counter({d + 2: 1}),
        2: Counter({3 * d + 2: 1}),
    }


def gorenstein_symmetric(betti: dict, d: int) -> bool:
    """First and last free modules of ``S/I`` are dual under ``a ↦ (3d + 2) - a``."""
    from collections import Counter

    first = Counter({0: 1})  # S itself
    last = betti[max(betti)]
    mirrored_mid = Counter({3 * d + 2 - a: n for a, n in betti[1].items()})
    return Counter({3 * d + 2 - a: n for a, n in last.items()}) == first and mirrored_mid == betti[0]


def verify_main_theorem2(omega: TwistedOneForm) -> DistributionReport:
    """Checks for a distribution on P³ with zero-dimensional singular scheme."""
    if omega.nvars != 4:
        raise ValueError("expected a form on P^3")
    d = omega.degree
    Z = singular_scheme(omega)
    dim = krull_dimension(Z)
    if dim != 0:
        raise ValueError(f"singular scheme has dimension {dim}, expected 0")
    checks = [Check("zero-dimensional", True)]
    checks.append(Check("euler-relation", euler_relation_holds(omega)))
    B = skew_of_derivative(omega)
    P = pfaffian4(B)
    checks.append(Check("pfaffian-certificate", pfaffian_certificate(omega)))
    A = Ideal(Z.ring, [a for a in omega.parameter_free().coeffs if not a.is_zero])
    checks.append(Check("ideal-is-coefficients-plus-pfaffian", Z.equals(A + Ideal(Z.ring, [P]))))
    res = minimal_free_resolution(Z)
    betti = res.betti()
    checks.append(Check("betti-shape", betti == expected_betti(d), str(res.betti_json())))
    checks.append(Check("gorenstein-symmetry", gorenstein_symmetric(betti, d)))
    fd = fiber_dimension(Z, d)
    want = 5 if d == 1 else 1
    checks.append(Check("fiber-dimension", fd == want, f"linear {fd}, projective {fd - 1}"))
    hp = hilbert_polynomial(Z)
    return DistributionReport(
        degree=d,
        singular_ideal=Z,
        hilbert_poly=hp,
        projective_dim=dim,
        integrable=is_integrable(omega),
        bucket=bucket_of(hp) if d == 1 else None,
        betti=res.betti_json(),
        checks=checks,
    )


# --------------------------------------------------------------------------
# degenerations
# --------------------------------------------------------------------------


@dataclass
class ProbeResult:
    status: str  # "EQUAL" or "LARGER"
    hilbert_poly: UPoly | None
    note: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "hilbert_polynomial": None if self.hilbert_poly is None else str(self.hilbert_poly),
            "note": self.note,
        }


def degeneration_probe(family: GenericFormFamily, values: Sequence) -> ProbeResult:
    """Compare the singular scheme of ``ω(values)`` with the family's base ideal."""
    omega = family.specialize(values)
    if all(a.is_zero for a in omega.coeffs):
        return ProbeResult("LARGER", None, "the specialized form is zero")
    try:
        Z = singular_scheme(omega)
    except CodimensionOneLocus as e:
        return ProbeResult("LARGER", None, f"codimension-one locus {e.witness}")
    hp = hilbert_polynomial(Z) if not Z.is_unit() else UPoly()
    if Z.equals(family.base_ideal):
        return ProbeResult("EQUAL", hp)
    return ProbeResult("LARGER", hp, "singular scheme strictly contains the base scheme")


# --------------------------------------------------------------------------
# reducedness of zero-dimensional schemes
# --------------------------------------------------------------------------


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _umod(a, b):
    a = _trim(a)
    b = _trim(b)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        s = len(a) - len(b)
        for i, c in enumerate(b):
            a[s + i] -= f * c
        a = _trim(a)
    return a


def ugcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _umod(a, b)
    return [c / a[-1] for c in a] if a else a


@dataclass
class ReducednessCertificate:
    length: int
    eliminant: list  # minimal polynomial, lowest degree first
    squarefree: bool
    seed: int

    @property
    def reduced(self) -> bool:
        return self.squarefree and len(self.eliminant) - 1 == self.length


def reducedness_test(I: Ideal, seed: int = 20240601, bound: int = 7) -> ReducednessCertificate:
    """Decide whether a zero-dimensional scheme of length L is L reduced points.

    After a seeded integer change of coordinates the scheme is moved into the
    chart where the last variable is 1.  There we take the minimal polynomial
    of multiplication by the first coordinate on the affine coordinate ring.
    Its degree is at most the dimension of that ring, which is at most L; if
    the degree is L and the polynomial is squarefree, the coordinate takes L
    distinct values on the scheme, so it is reduced.  A negative answer is
    inconclusive only for an unlucky coordinate change.
    """
    if krull_dimension(I) != 0:
        raise ValueError("reducedness_test needs a zero-dimensional scheme")
    length = graded_length_of_points(I)
    A = generic_affine_chart(I, seed, bound)
    ring = I.ring
    y = ring.gens()
    powers = [ring.one()]
    for _ in range(length):
        powers.append(A.reduce(powers[-1] * y[0]))
    monos = sorted({m for f in powers for m in f.monomials()})
    rows = [[f.coefficient(m) for f in powers] for m in monos]
    kernel = nullspace(rows, length + 1)
    # the lowest-degree relation among 1, u, ..., u^L is the minimal polynomial
    minpoly = min((_trim(v) for v in kernel), key=len) if kernel else []
    if minpoly:
        minpoly = [c / minpoly[-1] for c in minpoly]
    deriv = [i * c for i, c in enumerate(minpoly)][1:]
    g = ugcd(minpoly, deriv) if minpoly else []
    return ReducednessCertificate(length, minpoly, len(g) == 1, seed)


def generic_affine_chart(I: Ideal, seed: int = 20240601, bound: int = 7) -> Ideal:
    """``I`` after a seeded random linear change of coordinates, restricted to the chart ``x_n = 1``."""
    ring = I.ring
    n = ring.nvars
    rng = random.Random(seed)
    while True:
        P = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)]
        if _int_det(P) != 0:
            break
    y = ring.gens()
    images = []
    for i in range(n):
        acc = ring.zero()
        for j in range(n):
            if P[i][j]:
                acc = acc + y[j].scale(P[i][j])
        images.append(acc.substitute(y[:-1] + [ring.one()]))
    return Ideal(ring, [g.substitute(images) for g in I.gens])


def graded_length_of_points(I: Ideal) -> int:
    """Length of a zero-dimensional projective scheme (the constant Hilbert polynomial)."""
    hp = hilbert_polynomial(I, via="series")
    if hp.degree > 0:
        raise ValueError("not zero-dimensional")
    return int(hp.coeffs[0]) if hp.coeffs else 0


def _int_det(M):
    n = len(M)
    A = [[Fraction(x) for x in r] for r in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c]), None)
        if p is None:
            return 0
        if p != c:
            A[c], A[p] = A[p], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            for k in range(c, n):
                A[r][k] -= f * A[c][k]
    return det


__all__ = [
    "NotADistribution",
    "CodimensionOneLocus",
    "HypersurfaceContainment",
    "singular_scheme",
    "generic_form",
    "GenericFormFamily",
    "fiber_dimension",
    "forms_oracle",
    "verify_main_theorem2",
    "classify_degree1",
    "DistributionReport",
    "degeneration_probe",
    "ProbeResult",
    "reducedness_test",
    "generic_affine_chart",
    "ReducednessCertificate",
    "example_form",
    "same_span",
    "form_span",
    "poly_gcd",
]
