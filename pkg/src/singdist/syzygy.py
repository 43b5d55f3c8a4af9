"""Graded free modules, syzygies, minimal free resolutions and Betti tables.

Kernels are computed with one module Gröbner basis: each column ``g_j`` of a
map ``F -> G`` is paired with the unit vector ``e_j`` in ``G ⊕ F`` and the
positions of ``G`` are made to dominate.  Basis elements whose leading term
falls in ``F`` have no ``G`` part left and generate the kernel.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .groebner import (
    Buchberger,
    Ideal,
    TermOrder,
    flat_mono_key,
    leading_term,
    minimal_generators,
)
from .hilbert import UPoly, binomial_poly, hilbert_numerator
from .linalg import nullspace, rref
from .polyring import Polynomial, RingSpec, monomials_of_degree


@dataclass(frozen=True)
class GradedFreeModule:
    """``⊕ S(-a_i)`` recorded by its twists ``a_i``."""

    twists: tuple

    def __init__(self, twists: Sequence[int]):
        object.__setattr__(self, "twists", tuple(int(a) for a in twists))

    @property
    def rank(self) -> int:
        return len(self.twists)


@dataclass
class GradedMatrix:
    """Map ``source -> target``; ``entries[i][j]`` has degree ``source[j] - target[i]``."""

    ring: RingSpec
    entries: list
    source: GradedFreeModule
    target: GradedFreeModule

    def __post_init__(self):
        if len(self.entries) != self.target.rank:
            raise ValueError("row count does not match the target rank")
        for row in self.entries:
            if len(row) != self.source.rank:
                raise ValueError("column count does not match the source rank")

    @property
    def shape(self) -> tuple[int, int]:
        return self.target.rank, self.source.rank

    def column(self, j: int) -> list[Polynomial]:
        return [row[j] for row in self.entries]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.source.rank)]

    def is_graded(self) -> bool:
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.is_zero:
                    continue
                if not e.is_homogeneous() or e.degree() != self.source.twists[j] - self.target.twists[i]:
                    return False
        return True

    def has_unit_entry(self) -> bool:
        return any(not e.is_zero and e.is_constant for row in self.entries for e in row)

    def __matmul__(self, other: "GradedMatrix") -> "GradedMatrix":
        n, m = self.shape
        m2, k = other.shape
        if m != m2:
            raise ValueError("shape mismatch")
        zero = self.ring.zero()
        out = []
        for i in range(n):
            row = []
            for j in range(k):
                acc = zero
                for l in range(m):
                    a, b = self.entries[i][l], other.entries[l][j]
                    if not a.is_zero and not b.is_zero:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GradedMatrix(self.ring, out, other.source, self.target)

    def is_zero(self) -> bool:
        return all(e.is_zero for row in self.entries for e in row)

    def transpose(self) -> list[list[Polynomial]]:
        return [list(c) for c in zip(*self.entries)] if self.entries else []


def _column_degree(col, twists) -> int | None:
    for p, e in zip(twists, col):
        if not e.is_zero:
            return e.degree() + p
    return None


# --------------------------------------------------------------------------
# kernels
# --------------------------------------------------------------------------


def _vector_raw(col: Sequence[Polynomial], offset: int = 0) -> dict:
    out = {}
    for i, e in enumerate(col):
        for (m, _), c in e.terms.items():
            out[(i + offset, m)] = c
    return out


def _raw_vector(ring: RingSpec, v: dict, rank: int, offset: int = 0) -> list[Polynomial]:
    parts: list[dict] = [dict() for _ in range(rank)]
    for (p, m), c in v.items():
        parts[p - offset][(m, 0)] = c
    return [Polynomial(ring, t) for t in parts]


def minimal_submodule_generators(ring: RingSpec, vectors: Sequence[Sequence[Polynomial]], twists: Sequence[int]):
    """Greedy minimal generators of a graded submodule of ``⊕ S(-twists)``.

    Vectors are scanned by increasing degree and kept when they do not lie
    in the span of those kept so far.
    """
    order = TermOrder(flat_mono_key(ring.order, ring.nvars), twists=twists, graded=True)
    eng = Buchberger(order, rank_one=False)
    kept = []
    cands = [v for v in vectors if any(not e.is_zero for e in v)]
    cands.sort(key=lambda v: _column_degree(v, twists))
    for v in cands:
        if eng.add(_vector_raw(v)):
            eng.complete()
            kept.append(list(v))
    return kept


def kernel(M: GradedMatrix, minimal: bool = True) -> GradedMatrix:
    """Syzygy module of the columns of ``M`` as a graded matrix."""
    ring = M.ring
    m, r = M.shape
    twists = M.target.twists + M.source.twists
    order = TermOrder(flat_mono_key(ring.order, ring.nvars), twists=twists, graded=True, split=m)
    zero = (0,) * ring.nvars
    gens = []
    for j in range(r):
        v = _vector_raw(M.column(j))
        v[(m + j, zero)] = Fraction(1)
        gens.append(v)
    eng = Buchberger(order, rank_one=False)
    for g in sorted(gens, key=lambda g: order.key(leading_term(g, order))):
        eng.add(g)
        eng.complete()
    basis = eng.reduced_basis()
    syz = [g for g in basis if leading_term(g, order)[0] >= m]
    cols = [_raw_vector(ring, g, r, offset=m) for g in syz]
    if minimal:
        cols = minimal_submodule_generators(ring, cols, M.source.twists)
    else:
        cols.sort(key=lambda c: _column_degree(c, M.source.twists))
    degs = [_column_degree(c, M.source.twists) for c in cols]
    entries = [[c[i] for c in cols] for i in range(r)]
    return GradedMatrix(ring, entries, GradedFreeModule(degs), M.source)


def generator_row(gens: Sequence[Polynomial]) -> GradedMatrix:
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    for g in gens:
        if g.is_zero or not g.is_homogeneous():
            raise ValueError("generators must be nonzero and homogeneous")
    return GradedMatrix(ring, [list(gens)], GradedFreeModule([g.degree() for g in gens]), GradedFreeModule([0]))


def syzygies(G: Sequence[Polynomial]) -> GradedMatrix:
    """Matrix ``M`` whose columns minimally generate the syzygies of ``G``; ``G·M = 0``."""
    return kernel(generator_row(G))


# --------------------------------------------------------------------------
# resolutions
# --------------------------------------------------------------------------


@dataclass
class GradedResolution:
    """``... -> F_2 -> F_1 -> F_0 -> I``; ``maps[k]`` is ``F_k -> F_{k-1}`` (``F_{-1} = S``)."""

    ring: RingSpec
    maps: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.maps)

    def betti(self) -> dict[int, Counter]:
        return {k: Counter(d.source.twists) for k, d in enumerate(self.maps)}

    def betti_json(self) -> dict:
        return {str(k): {str(a): n for a, n in sorted(c.items())} for k, c in self.betti().items()}

    def betti_grid(self) -> str:
        return format_betti_grid(self.betti())

    def is_complex(self) -> bool:
        return all((a @ b).is_zero() for a, b in zip(self.maps, self.maps[1:]))

    def is_minimal(self) -> bool:
        return not any(d.has_unit_entry() for d in self.maps[1:])


def format_betti_grid(betti: dict[int, Counter]) -> str:
    """Macaulay2-style grid for the resolution of ``S/I`` (column 0 holds ``S``)."""
    cols = {0: Counter({0: 1})}
    for k, c in betti.items():
        cols[k + 1] = c
    rows = sorted({a - k for k, c in cols.items() for a in c})
    width = max(len(str(n)) for c in cols.values() for n in c.values()) + 1
    width = max(width, len(str(max(cols))) + 1)
    lines = ["      " + "".join(f"{k:>{width}}" for k in sorted(cols))]
    lines.append("total:" + "".join(f"{sum(cols[k].values()):>{width}}" for k in sorted(cols)))
    for r in rows:
        cells = []
        for k in sorted(cols):
            n = cols[k].get(r + k, 0)
            cells.append(f"{n if n else '.':>{width}}")
        lines.append(f"{r:>5}:" + "".join(cells))
    return "\n".join(lines)


def minimal_free_resolution(I: Ideal, minimal: bool = True) -> GradedResolution:
    """Resolution of the ideal ``I`` by iterated kernels.

    With ``minimal=False`` the raw Gröbner syzygies are kept at every step;
    :func:`prune_units` turns such a complex into a minimal one.
    """
    if not I.is_homogeneous():
        raise ValueError("resolutions are computed for homogeneous ideals")
    gens = minimal_generators(I) if minimal else list(I.gens)
    if not gens:
        raise ValueError("the zero ideal has no resolution")
    d = generator_row(gens)
    res = GradedResolution(I.ring, [d])
    while True:
        k = kernel(d, minimal=minimal)
        if k.source.rank == 0:
            break
        res.maps.append(k)
        d = k
        if len(res.maps) > I.nvars + 1:
            raise RuntimeError("resolution longer than the number of variables")
    return res


def prune_units(res: GradedResolution) -> GradedResolution:
    """Remove unit entries by basis changes until no map ``F_k -> F_{k-1}``, ``k >= 1``, has one."""
    maps = [[list(row) for row in d.entries] for d in res.maps]
    twists = [list(d.source.twists) for d in res.maps]
    ring = res.ring
    changed = True
    while changed:
        changed = False
        for k in range(1, len(maps)):
            hit = _find_unit(maps[k])
            if hit is None:
                continue
            i, j = hit
            _eliminate_unit(maps, k, i, j)
            del twists[k][j]
            del twists[k - 1][i]
            changed = True
            break
    out = []
    target = [0]
    for k, rows in enumerate(maps):
        if not twists[k]:
            break
        out.append(GradedMatrix(ring, rows, GradedFreeModule(twists[k]), GradedFreeModule(target)))
        target = twists[k]
    return GradedResolution(ring, out)


def _find_unit(rows):
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            if not e.is_zero and e.is_constant:
                return i, j
    return None


def _eliminate_unit(maps, k, i, j):
    d = maps[k]
    a = d[i][j].constant_value()
    # column operations on d_k, compensated by row operations on d_{k+1}
    for l in range(len(d[0])):
        if l == j or d[i][l].is_zero:
            continue
        lam = d[i][l] / a
        for r in range(len(d)):
            if not d[r][j].is_zero:
                d[r][l] = d[r][l] - lam * d[r][j]
        if k + 1 < len(maps):
            nxt = maps[k + 1]
            nxt[j] = [x + lam * y for x, y in zip(nxt[j], nxt[l])]
    # row operations on d_k; the matching column of d_{k-1} becomes zero
    for r in range(len(d)):
        if r == i or d[r][j].is_zero:
            continue
        mu = d[r][j] / a
        d[r] = [x - mu * y for x, y in zip(d[r], d[i])]
    del d[i]
    for row in d:
        del row[j]
    for row in maps[k - 1]:
        del row[i]
    if k + 1 < len(maps):
        del maps[k + 1][j]


# --------------------------------------------------------------------------
# Hilbert polynomials
# --------------------------------------------------------------------------


def hilbert_polynomial_from_betti(betti: dict[int, Counter], nvars: int) -> UPoly:
    """Hilbert polynomial of ``S/I`` from the twists of a resolution of ``I``."""
    n = nvars - 1
    hp = binomial_poly(n, n)
    for k, c in betti.items():
        sign = -1 if k % 2 == 0 else 1
        for a, mult in c.items():
            hp = hp + binomial_poly(n - a, n) * UPoly([sign * mult])
    return hp


def hilbert_polynomial(I: Ideal, via: str = "resolution") -> UPoly:
    """Hilbert polynomial of ``S/I``.

    The polynomial is unchanged by saturation, so ``I`` is used as given.
    ``via="series"`` reads it off the Hilbert series of the initial ideal.
    """
    if via == "series":
        from .hilbert import hilbert_polynomial_from_numerator

        return hilbert_polynomial_from_numerator(hilbert_numerator(I.leading_monomials(), I.nvars), I.nvars)
    if I.is_unit():
        return UPoly()
    res = minimal_free_resolution(I)
    return hilbert_polynomial_from_betti(res.betti(), I.nvars)


def regularity_bound(res: GradedResolution) -> int:
    """Degree from which the Hilbert function of ``S/I`` agrees with its polynomial."""
    return max(a - k for k, c in res.betti().items() for a in c) if res.maps else 0


# --------------------------------------------------------------------------
# linear syzygies
# --------------------------------------------------------------------------


@dataclass
class LinearSyzygySpace:
    """Syzygies of ``gens`` in the lowest degree ``min deg + 1``, as a vector space."""

    gens: list
    degree: int
    columns: list  # list of columns (lists of Polynomial)

    @property
    def dim(self) -> int:
        return len(self.columns)

    def coordinates(self) -> list[list[Fraction]]:
        return [_column_coordinates(c, self.gens, self.degree) for c in self.columns]

    def reduced(self) -> list[list[Fraction]]:
        return rref(self.coordinates(), _coordinate_length(self.gens, self.degree))[0]

    def same_span(self, other: "LinearSyzygySpace") -> bool:
        return self.degree == other.degree and self.reduced() == other.reduced()


def _entry_basis(gens, degree):
    nv = gens[0].ring.nvars
    return [monomials_of_degree(nv, degree - g.degree()) for g in gens]


def _coordinate_length(gens, degree):
    return sum(len(b) for b in _entry_basis(gens, degree))


def _column_coordinates(col, gens, degree):
    out = []
    for e, basis in zip(col, _entry_basis(gens, degree)):
        out.extend(e.coefficient(m) for m in basis)
    return out


def linear_syzygy_space(G: Sequence[Polynomial], via: str = "groebner") -> LinearSyzygySpace:
    """Syzygies of degree ``min deg(G) + 1``: linear entries on the lowest-degree generators."""
    G = list(G)
    degree = min(g.degree() for g in G) + 1
    if via == "groebner":
        M = syzygies(G)
        cols = [c for j, c in enumerate(M.columns()) if M.source.twists[j] == degree]
    elif via == "oracle":
        cols = linear_syzygy_oracle(G, degree)
    else:
        raise ValueError(f"unknown route {via!r}")
    return LinearSyzygySpace(G, degree, cols)


def linear_syzygy_oracle(G: Sequence[Polynomial], degree: int) -> list[list[Polynomial]]:
    """Solve ``sum c_j G_j = 0`` with ``c_j`` in ``S_{degree - deg G_j}`` by row reduction."""
    ring = G[0].ring
    bases = _entry_basis(G, degree)
    unknowns = [(j, m) for j, b in enumerate(bases) for m in b]
    targets = {m: i for i, m in enumerate(monomials_of_degree(ring.nvars, degree))}
    rows = [[Fraction(0)] * len(unknowns) for _ in targets]
    for u, (j, m) in enumerate(unknowns):
        for (gm, _), c in G[j].terms.items():
            mm = tuple(a + b for a, b in zip(gm, m))
            rows[targets[mm]][u] += c
    out = []
    for v in nullspace(rows, len(unknowns)):
        col = [dict() for _ in G]
        for (j, m), c in zip(unknowns, v):
            if c:
                col[j][(m, 0)] = c
        out.append([Polynomial(ring, t) for t in col])
    return out


# --------------------------------------------------------------------------
# local Ext and tensor lengths for ideals in three variables
# --------------------------------------------------------------------------


def ext_top_cyclic(I: Ideal) -> Ideal:
    """``J`` with ``Ext^3(S/I, S) ≅ S/J`` (twist dropped) for ``I`` of codimension 3 in 3 variables."""
    if I.nvars != 3:
        raise ValueError("ext_top_cyclic expects a ring with three variables")
    res = minimal_free_resolution(I)
    if res.length != 3:
        raise ValueError(f"resolution of S/I has length {res.length + 1}, expected 3")
    last = res.maps[-1]
    if last.source.rank != 1:
        raise ValueError("Ext^3 is not cyclic: the last free module has rank > 1")
    return Ideal(I.ring, [e for e in last.column(0) if not e.is_zero])


def tensor_length(J: Ideal, I: Ideal) -> int:
    """``dim_k I / (J·I)`` for homogeneous ideals when it is finite."""
    if not (I.is_homogeneous() and J.is_homogeneous()):
        raise ValueError("tensor_length is implemented for homogeneous ideals only")
    n = I.nvars
    JI = J * I
    diff = hilbert_numerator(JI.leading_monomials(), n) - hilbert_numerator(I.leading_monomials(), n)
    q = diff
    for _ in range(n):
        q, rem = q.divmod_linear(1)
        if rem != 0:
            raise ValueError("I/(J·I) has infinite length")
        q = -q
    return int(q(1))


def graded_length(I: Ideal) -> int:
    """``dim_k S/I`` for a homogeneous ideal of finite colength."""
    n = I.nvars
    q = hilbert_numerator(I.leading_monomials(), n)
    for _ in range(n):
        q, rem = q.divmod_linear(1)
        if rem != 0:
            raise ValueError("S/I has infinite length")
        q = -q
    return int(q(1))


def betti_from_json(data: dict) -> dict[int, Counter]:
    return {int(k): Counter({int(a): int(n) for a, n in v.items()}) for k, v in data.items()}


__all__ = [
    "GradedFreeModule",
    "GradedMatrix",
    "GradedResolution",
    "LinearSyzygySpace",
    "syzygies",
    "kernel",
    "linear_syzygy_space",
    "minimal_free_resolution",
    "prune_units",
    "hilbert_polynomial",
    "ext_top_cyclic",
    "tensor_length",
    "graded_length",
    "generator_row",
    "format_betti_grid",
    "betti_from_json",
    "hilbert_polynomial_from_betti",
    "regularity_bound",
    "linear_syzygy_oracle",
    "minimal_submodule_generators",
]
