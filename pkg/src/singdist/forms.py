"""Twisted 1-forms on projective space and the objects derived from them.

A twisted 1-form ``ω = Σ A_i dx_i`` has homogeneous coefficients of a common
degree ``d + 1``; ``d`` is the degree of the distribution it defines.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .linalg import nullspace
from .polyring import ParameterError, Polynomial, RingSpec


@dataclass(frozen=True)
class TwistedOneForm:
    coeffs: tuple
    ring: RingSpec

    @classmethod
    def checked(cls, coeffs: Sequence[Polynomial], ring: RingSpec) -> "TwistedOneForm":
        """Build a form, insisting on homogeneous coefficients of one common degree."""
        coeffs = tuple(coeffs)
        if len(coeffs) != ring.nvars:
            raise ValueError(f"expected {ring.nvars} coefficients, got {len(coeffs)}")
        degs = set()
        for c in coeffs:
            if c.is_zero:
                continue
            if not c.is_homogeneous():
                raise ValueError(f"coefficient {c} is not homogeneous")
            degs.add(c.degree())
        if len(degs) > 1:
            raise ValueError(f"coefficients have different degrees {sorted(degs)}")
        if not degs:
            raise ValueError("the zero form defines no distribution")
        if degs == {0}:
            raise ValueError("coefficients must have degree at least 1")
        return cls(coeffs, ring)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def coefficient_degree(self) -> int:
        return max(c.degree() for c in self.coeffs)

    @property
    def degree(self) -> int:
        return self.coefficient_degree - 1

    @property
    def is_parametric(self) -> bool:
        return any(c.is_parametric for c in self.coeffs)

    def specialize(self, values: Sequence) -> "TwistedOneForm":
        coeffs = tuple(c.in_ring(self.ring).specialize(values) for c in self.coeffs)
        return TwistedOneForm(coeffs, self.ring.without_params())

    def parameter_free(self) -> "TwistedOneForm":
        if self.is_parametric:
            raise ParameterError("form depends on parameters; specialize it first")
        base = self.ring.without_params()
        return TwistedOneForm(tuple(Polynomial(base, c.terms) for c in self.coeffs), base)

    def param_components(self) -> list["TwistedOneForm"]:
        """``[ω_0, ω_1, ..., ω_k]`` with ``ω = ω_0 + Σ t_i ω_{i+1}``."""
        parts = [c.in_ring(self.ring).param_parts() for c in self.coeffs]
        base = self.ring.without_params()
        return [TwistedOneForm(tuple(p[s] for p in parts), base) for s in range(self.ring.nparams + 1)]

    def scale(self, c) -> "TwistedOneForm":
        return TwistedOneForm(tuple(a.scale(c) for a in self.coeffs), self.ring)

    def __add__(self, other: "TwistedOneForm") -> "TwistedOneForm":
        return TwistedOneForm(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.ring)

    def permute(self, perm: Sequence[int]) -> "TwistedOneForm":
        """Pull back along ``x_i -> x_{perm[i]}``."""
        ring = self.ring
        images = [ring.var(perm[i]) for i in range(ring.nvars)]
        coeffs = [ring.zero()] * ring.nvars
        for i, a in enumerate(self.coeffs):
            coeffs[perm[i]] = a.substitute(images)
        return TwistedOneForm(tuple(coeffs), ring)

    def __str__(self) -> str:
        from .parsing import format_form

        return format_form(self)

    def __eq__(self, other):
        return isinstance(other, TwistedOneForm) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)


def form_from_coeffs(coeffs: Sequence[Polynomial]) -> TwistedOneForm:
    ring = coeffs[0].ring
    for c in coeffs:
        if c.ring.nparams > ring.nparams:
            ring = c.ring
    return TwistedOneForm.checked([c.in_ring(ring) for c in coeffs], ring)


def contract_radial(omega: TwistedOneForm) -> Polynomial:
    """``ι_R ω = Σ x_i A_i``."""
    ring = omega.ring
    out = ring.zero()
    for i, a in enumerate(omega.coeffs):
        out = out + ring.var(i) * a
    return out


def apply_to_vector(omega: TwistedOneForm, v: Sequence) -> Polynomial:
    """``ω(v) = Σ v_i A_i`` for constant or polynomial components ``v_i``."""
    out = omega.ring.zero()
    for vi, a in zip(v, omega.coeffs):
        out = out + a * vi
    return out


@dataclass(frozen=True)
class SkewMatrix:
    entries: tuple  # tuple of row tuples

    def __post_init__(self):
        n = len(self.entries)
        for i in range(n):
            if len(self.entries[i]) != n:
                raise ValueError("matrix is not square")
            for j in range(n):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError("matrix is not skew-symmetric")

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def apply(self, v: Sequence[Polynomial]) -> list[Polynomial]:
        out = []
        for row in self.entries:
            acc = v[0].ring.zero()
            for b, x in zip(row, v):
                if not b.is_zero:
                    acc = acc + b * x
            out.append(acc)
        return out


def skew_of_derivative(omega: TwistedOneForm) -> SkewMatrix:
    """``B_ij = ∂A_i/∂x_j - ∂A_j/∂x_i``, so that ``B·x = (d+2)·A`` when ``ι_R ω = 0``."""
    n = omega.nvars
    A = omega.coeffs
    rows = []
    for i in range(n):
        rows.append(tuple(A[i].diff(j) - A[j].diff(i) for j in range(n)))
    return SkewMatrix(tuple(rows))


def euler_relation_holds(omega: TwistedOneForm) -> bool:
    """Check ``B·x = (d+2)·A`` exactly."""
    B = skew_of_derivative(omega)
    ring = omega.ring
    lhs = B.apply(ring.gens())
    k = omega.degree + 2
    return all(l == a.scale(k) for l, a in zip(lhs, omega.coeffs))


def _check4(B: SkewMatrix):
    if B.size != 4:
        raise ValueError(f"expected a 4x4 skew matrix, got size {B.size}")


def pfaffian4(B: SkewMatrix) -> Polynomial:
    """``Pf(B) = B01·B23 - B02·B13 + B03·B12``."""
    _check4(B)
    return B[0, 1] * B[2, 3] - B[0, 2] * B[1, 3] + B[0, 3] * B[1, 2]


def _perm_sign(p) -> int:
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz expansion; fine for the 4x4 matrices used here."""
    n = len(M)
    ring = M[0][0].ring
    total = ring.zero()
    for p in permutations(range(n)):
        term = ring.one()
        for i in range(n):
            e = M[i][p[i]]
            if e.is_zero:
                term = None
                break
            term = term * e
        if term is not None:
            total = total + term.scale(_perm_sign(p))
    return total


def pfaffian_cofactors(B: SkewMatrix) -> list[list[Polynomial]]:
    """``Q`` with ``Q·B = Pf(B)·Id``; ``(-1)^(i+j) q_ij`` is the Pfaffian of ``B`` minus rows/columns ``i, j``."""
    _check4(B)
    ring = B[0, 0].ring
    Q = [[ring.zero() for _ in range(4)] for _ in range(4)]
    for i, j in combinations(range(4), 2):
        k, l = [m for m in range(4) if m not in (i, j)]
        q = B[k, l].scale((-1) ** (i + j))
        Q[i][j] = q
        Q[j][i] = -q
    return Q


def pfaffian_certificate(omega: TwistedOneForm) -> bool:
    """Verify ``Pf(B)·x_i = (d+2)·Σ_j q_ij A_j`` for every ``i``; witnesses ``Pf(B)·m ⊆ (A)``."""
    B = skew_of_derivative(omega)
    P = pfaffian4(B)
    Q = pfaffian_cofactors(B)
    ring = omega.ring
    k = omega.degree + 2
    for i in range(4):
        rhs = ring.zero()
        for j in range(4):
            rhs = rhs + Q[i][j] * omega.coeffs[j]
        if P * ring.var(i) != rhs.scale(k):
            return False
    return True


@dataclass(frozen=True)
class ThreeForm:
    """Coefficients on increasing index triples ``i < j < k``."""

    coeffs: dict

    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs.values())

    def nonzero_components(self) -> dict:
        return {k: v for k, v in self.coeffs.items() if not v.is_zero}


def wedge_integrability(omega: TwistedOneForm) -> ThreeForm:
    """``ω ∧ dω``; parametric forms must be specialized first."""
    if omega.is_parametric:
        raise ParameterError("ω∧dω is quadratic in the parameters; specialize the form first")
    A = omega.coeffs
    n = omega.nvars

    def C(a, b):
        return A[b].diff(a) - A[a].diff(b)

    out = {}
    for i, j, k in combinations(range(n), 3):
        out[(i, j, k)] = A[i] * C(j, k) - A[j] * C(i, k) + A[k] * C(i, j)
    return ThreeForm(out)


def wedge_pair(a: TwistedOneForm, b: TwistedOneForm) -> ThreeForm:
    """``a ∧ db`` for parameter-free forms."""
    A, Bc = a.coeffs, b.coeffs

    def C(i, j):
        return Bc[j].diff(i) - Bc[i].diff(j)

    out = {}
    for i, j, k in combinations(range(a.nvars), 3):
        out[(i, j, k)] = A[i] * C(j, k) - A[j] * C(i, k) + A[k] * C(i, j)
    return ThreeForm(out)


def integrability_expansion(omega: TwistedOneForm) -> dict:
    """``ω ∧ dω = Σ_{k<=l} t_k t_l Φ_kl`` for ``ω = ω_0 + Σ t_i ω_{i+1}``; keys index the components."""
    parts = omega.param_components()
    out = {}
    for k in range(len(parts)):
        for l in range(k, len(parts)):
            phi = wedge_pair(parts[k], parts[l])
            if l != k:
                other = wedge_pair(parts[l], parts[k])
                phi = ThreeForm({key: v + other.coeffs[key] for key, v in phi.coeffs.items()})
            if not phi.is_zero():
                out[(k, l)] = phi
    return out


def integrability_ideal(omega: TwistedOneForm):
    """Ideal in the parameters whose zero set is the integrable locus of the family."""
    from .groebner import Ideal

    names = omega.ring.param_vars
    if not names:
        raise ValueError("the form has no parameters")
    pr = RingSpec(tuple(names))
    one = (0,) * len(names)

    def slot_mono(s):
        e = list(one)
        if s:
            e[s - 1] += 1
        return e

    collected: dict = {}
    for (k, l), phi in integrability_expansion(omega).items():
        e = [a + b for a, b in zip(slot_mono(k), slot_mono(l))]
        for key, poly in phi.coeffs.items():
            for (m, _), c in poly.terms.items():
                collected.setdefault((key, m), {})
                t = collected[(key, m)]
                t[tuple(e)] = t.get(tuple(e), 0) + c
    gens = [pr.from_dict(t) for t in collected.values()]
    return Ideal(pr, [g for g in gens if not g.is_zero])


def is_integrable(omega: TwistedOneForm, values: Sequence | None = None) -> bool:
    if values is not None:
        omega = omega.specialize(values)
    return wedge_integrability(omega).is_zero()


def constant_tangent_fields(omega: TwistedOneForm) -> list[list[Fraction]]:
    """Basis of constant vectors ``v`` with ``Σ v_i A_i = 0``."""
    if omega.is_parametric:
        raise ParameterError("specialize the form first")
    monos = sorted({m for a in omega.coeffs for (m, _) in a.terms})
    rows = [[a.coefficient(m) for a in omega.coeffs] for m in monos]
    return nullspace(rows, omega.nvars)


def promote_parameters(p: Polynomial) -> Polynomial:
    """View a parameter-linear polynomial in the ring whose main variables include the parameters."""
    ring = p.ring
    big = RingSpec(ring.main_vars + ring.param_vars, (), ring.order)
    terms = {}
    for (m, s), c in p.terms.items():
        t = [0] * ring.nparams
        if s:
            t[s - 1] = 1
        terms[(tuple(m) + tuple(t), 0)] = c
    return Polynomial(big, terms)


def coefficient_ideal(omega: TwistedOneForm):
    from .groebner import Ideal

    form = omega.parameter_free()
    return Ideal(form.ring, [a for a in form.coeffs if not a.is_zero])


__all__ = [
    "TwistedOneForm",
    "SkewMatrix",
    "ThreeForm",
    "contract_radial",
    "skew_of_derivative",
    "euler_relation_holds",
    "pfaffian4",
    "pfaffian_cofactors",
    "pfaffian_certificate",
    "determinant",
    "wedge_integrability",
    "is_integrable",
    "integrability_expansion",
    "integrability_ideal",
    "constant_tangent_fields",
    "apply_to_vector",
    "promote_parameters",
]
