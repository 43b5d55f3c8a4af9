"""Buchberger engine and the ideal toolbox built on it.

The engine works on *module* elements: dicts ``{(pos, exponents): coeff}``.
Ideals are rank-one modules (``pos == 0``).  Module orders are graded by
``deg(m) + twist[pos]`` and may split the positions into a dominant block,
which is what the syzygy computation in :mod:`singdist.syzygy` relies on.
"""

from __future__ import annotations

import heapq
import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .polyring import (
    QQ,
    Polynomial,
    RingMismatch,
    RingSpec,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
    order_key_function,
)

DEFAULT_MAX_STEPS = 20_000_000


class GroebnerBudgetExceeded(RuntimeError):
    pass


def step_budget() -> int:
    return int(os.environ.get("SINGDIST_MAX_STEPS", DEFAULT_MAX_STEPS))


# --------------------------------------------------------------------------
# term orders
# --------------------------------------------------------------------------


class TermOrder:
    """Total order on module terms ``(pos, mono)``, exposed as flat int-tuple keys.

    ``mono_key`` orders monomials (must return flat int tuples).  With
    ``graded=True`` terms are first compared by ``deg + twists[pos]``.
    ``split`` makes positions ``< split`` dominate all others (an elimination
    order on components).
    """

    def __init__(self, mono_key, twists: Sequence[int] = (0,), graded: bool = False, split: int | None = None):
        self.mono_key = mono_key
        self.twists = tuple(twists)
        self.graded = graded
        self.split = split
        self._cache: dict = {}

    def key(self, term) -> tuple:
        k = self._cache.get(term)
        if k is None:
            pos, m = term
            k = ()
            if self.split is not None:
                k = (1 if pos < self.split else 0,)
            if self.graded:
                k += (sum(m) + self.twists[pos],)
            k += tuple(self.mono_key(m)) + (-pos,)
            self._cache[term] = k
        return k

    def degree(self, term) -> int:
        pos, m = term
        return sum(m) + self.twists[pos]


def _flat_grevlex(m):
    d, rest = grevlex_key(m)
    return (d,) + rest


def flat_mono_key(order: str, nvars: int):
    base = order_key_function(order, nvars)
    if order == "grevlex":
        return _flat_grevlex
    if order == "lex":
        return base
    k = int(order.split(":", 1)[1])

    def key(m):
        a = _flat_grevlex(m[:k])
        b = _flat_grevlex(m[k:])
        return a + b

    return key


def elimination_key(elim: Sequence[int], nvars: int):
    """Block order eliminating the variables with indices ``elim``."""
    elim = list(elim)
    rest = [i for i in range(nvars) if i not in elim]

    def key(m):
        a = tuple(m[i] for i in elim)
        b = tuple(m[i] for i in rest)
        return _flat_grevlex(a) + _flat_grevlex(b)

    return key


def revlex_last_key(last: int, nvars: int):
    """Grevlex with variable ``last`` moved to the end (smallest)."""
    perm = [i for i in range(nvars) if i != last] + [last]

    def key(m):
        d, rest = grevlex_key(m, perm)
        return (d,) + rest

    return key


# --------------------------------------------------------------------------
# the engine
# --------------------------------------------------------------------------


def leading_term(f: dict, order: TermOrder):
    return max(f, key=order.key)


class Buchberger:
    """Incremental Buchberger completion with the normal selection strategy.

    Uses the product criterion (rank-one case only, where it is valid) and
    the chain criterion.  All stored elements are monic and fully reduced
    against the basis at the time of insertion.
    """

    def __init__(self, order: TermOrder, rank_one: bool = True, max_steps: int | None = None):
        self.order = order
        self.rank_one = rank_one
        self.basis: list[dict] = []
        self.lts: list = []
        self.pairs: list = []
        self.pending: set = set()
        self.steps = 0
        self.max_steps = step_budget() if max_steps is None else max_steps
        self._counter = itertools.count()

    # -- reduction ------------------------------------------------------------
    def _tick(self, n=1):
        self.steps += n
        if self.steps > self.max_steps:
            raise GroebnerBudgetExceeded(
                f"Groebner step budget of {self.max_steps} exceeded (set SINGDIST_MAX_STEPS to raise it)"
            )

    def find_reducer(self, term):
        pos, m = term
        for i, (p, lm) in enumerate(self.lts):
            if p == pos and mono_divides(lm, m):
                return i
        return None

    def reduce(self, f: dict, full: bool = True, basis: Sequence[dict] | None = None, lts=None) -> dict:
        """Remainder of ``f`` on division by the current basis (or a given one)."""
        basis = self.basis if basis is None else basis
        lts = self.lts if lts is None else lts
        key = self.order.key
        f = dict(f)
        heap = [(tuple(-x for x in key(t)), t) for t in f]
        heapq.heapify(heap)
        rem = {}
        while heap:
            _, t = heapq.heappop(heap)
            c = f.get(t)
            if c is None:
                continue
            pos, m = t
            idx = None
            for i, (p, lm) in enumerate(lts):
                if p == pos and mono_divides(lm, m):
                    idx = i
                    break
            if idx is None:
                del f[t]
                rem[t] = c
                if not full:
                    rem.update(f)
                    return rem
                continue
            g = basis[idx]
            lc = g[lts[idx]]
            q = mono_div(m, lts[idx][1])
            factor = c / lc
            self._tick()
            for (p2, m2), v in g.items():
                tt = (p2, mono_mul(m2, q))
                old = f.get(tt)
                if old is None:
                    f[tt] = -factor * v
                    heapq.heappush(heap, (tuple(-x for x in key(tt)), tt))
                else:
                    nv = old - factor * v
                    if nv:
                        f[tt] = nv
                    else:
                        del f[tt]
        return rem

    # -- basis maintenance -----------------------------------------------------
    def _monic(self, f: dict):
        lt = leading_term(f, self.order)
        lc = f[lt]
        if lc != 1:
            f = {k: v / lc for k, v in f.items()}
        return f, lt

    def add(self, f: dict) -> bool:
        """Reduce ``f`` and, if nonzero, insert it with its new S-pairs."""
        r = self.reduce(f)
        if not r:
            return False
        self._insert(r)
        return True

    def _insert(self, r: dict):
        r, lt = self._monic(r)
        k = len(self.basis)
        self.basis.append(r)
        self.lts.append(lt)
        for i in range(k):
            if self.lts[i][0] != lt[0]:
                continue
            lcm = (lt[0], mono_lcm(self.lts[i][1], lt[1]))
            if self.rank_one and all(a == 0 or b == 0 for a, b in zip(self.lts[i][1], lt[1])):
                continue
            heapq.heappush(self.pairs, (self.order.key(lcm), next(self._counter), i, k))
            self.pending.add((i, k))

    def _chain_skip(self, i, j, lcm) -> bool:
        pos, m = lcm
        for l, (p, lm) in enumerate(self.lts):
            if l == i or l == j or p != pos or not mono_divides(lm, m):
                continue
            a = (min(i, l), max(i, l))
            b = (min(j, l), max(j, l))
            if a not in self.pending and b not in self.pending:
                return True
        return False

    def spoly(self, i, j) -> dict:
        f, g = self.basis[i], self.basis[j]
        (p, a), (_, b) = self.lts[i], self.lts[j]
        lcm = mono_lcm(a, b)
        qa, qb = mono_div(lcm, a), mono_div(lcm, b)
        out: dict = {}
        for (pp, m), v in f.items():
            out[(pp, mono_mul(m, qa))] = v
        for (pp, m), v in g.items():
            t = (pp, mono_mul(m, qb))
            nv = out.get(t, 0) - v
            if nv:
                out[t] = nv
            else:
                out.pop(t, None)
        return out

    def complete(self):
        while self.pairs:
            _, _, i, j = heapq.heappop(self.pairs)
            self.pending.discard((i, j))
            pos = self.lts[i][0]
            lcm = (pos, mono_lcm(self.lts[i][1], self.lts[j][1]))
            if self._chain_skip(i, j, lcm):
                continue
            self._tick()
            r = self.reduce(self.spoly(i, j))
            if r:
                self._insert(r)
        return self

    def reduced_basis(self) -> list[dict]:
        """Minimal, interreduced, monic basis sorted by increasing leading term."""
        keep = []
        for i, (p, lm) in enumerate(self.lts):
            redundant = False
            for j, (q, lm2) in enumerate(self.lts):
                if j != i and q == p and mono_divides(lm2, lm) and (lm2 != lm or j < i):
                    redundant = True
                    break
            if not redundant:
                keep.append(i)
        basis = [self.basis[i] for i in keep]
        lts = [self.lts[i] for i in keep]
        out = []
        for i, g in enumerate(basis):
            others = basis[:i] + basis[i + 1:]
            olts = lts[:i] + lts[i + 1:]
            lt = lts[i]
            tail = {k: v for k, v in g.items() if k != lt}
            r = self.reduce(tail, basis=others, lts=olts)
            r[lt] = g[lt]
            out.append(r)
        out.sort(key=lambda g: self.order.key(leading_term(g, self.order)))
        return out


def groebner_raw(gens: Iterable[dict], order: TermOrder, rank_one: bool = True) -> list[dict]:
    eng = Buchberger(order, rank_one=rank_one)
    for g in sorted((g for g in gens if g), key=lambda g: order.key(leading_term(g, order))):
        eng.add(g)
        eng.complete()
    return eng.reduced_basis()


# --------------------------------------------------------------------------
# conversions
# --------------------------------------------------------------------------


def to_raw(f: Polynomial, pos: int = 0) -> dict:
    if f.is_parametric:
        raise ValueError("Groebner computations need parameter-free polynomials")
    return {(pos, m): c for (m, _), c in f.terms.items()}


def from_raw(ring: RingSpec, f: dict, pos: int | None = 0) -> Polynomial:
    return Polynomial(ring, {(m, 0): c for (p, m), c in f.items() if pos is None or p == pos})


def ring_order(ring: RingSpec) -> TermOrder:
    return TermOrder(flat_mono_key(ring.order, ring.nvars))


# --------------------------------------------------------------------------
# ideals
# --------------------------------------------------------------------------


@dataclass(eq=False)
class Ideal:
    """Ideal of a parameter-free polynomial ring; caches its reduced GB."""

    ring: RingSpec
    gens: tuple
    _gb: list | None = field(default=None, repr=False)
    _sat: "Ideal | None" = field(default=None, repr=False)

    def __init__(self, ring: RingSpec, gens: Iterable[Polynomial]):
        self.ring = ring.without_params() if ring.param_vars else ring
        gs = []
        for g in gens:
            if not isinstance(g, Polynomial):
                raise TypeError("ideal generators must be Polynomials")
            if g.ring.main_vars != self.ring.main_vars:
                raise RingMismatch("generator from a different ring")
            if g.is_parametric:
                raise ValueError("ideal generators must be parameter-free")
            gs.append(Polynomial(self.ring, g.terms))
        self.gens = tuple(g for g in gs if not g.is_zero)
        self._gb = None
        self._sat = None

    def __repr__(self):
        from .parsing import format_ideal

        return f"Ideal({format_ideal(self)})"

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def groebner_basis(self) -> list[Polynomial]:
        if self._gb is None:
            raw = groebner_raw((to_raw(g) for g in self.gens), ring_order(self.ring))
            self._gb = [from_raw(self.ring, g) for g in raw]
        return list(self._gb)

    def reduce(self, f: Polynomial) -> Polynomial:
        gb = self.groebner_basis()
        return normal_form(f, gb)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.contains_ideal(other) and other.contains_ideal(self)

    def is_unit(self) -> bool:
        return any(g.is_constant for g in self.groebner_basis())

    def leading_monomials(self) -> list[tuple]:
        return [g.leading_monomial() for g in self.groebner_basis()]

    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def to_json(self) -> dict:
        from .parsing import format_poly

        return {"ring": self.ring.header(), "gens": [format_poly(g) for g in self.gens]}

    @classmethod
    def from_json(cls, data: dict) -> "Ideal":
        from .parsing import parse_poly, parse_ring

        ring = parse_ring(data["ring"])
        return cls(ring, [parse_poly(s, ring) for s in data["gens"]])


def irrelevant_ideal(ring: RingSpec) -> Ideal:
    return Ideal(ring, ring.without_params().gens())


# --------------------------------------------------------------------------
# division
# --------------------------------------------------------------------------


def normal_form(f: Polynomial, G: Sequence[Polynomial]) -> Polynomial:
    """Remainder of multivariate division of ``f`` by ``G`` (in the ring's order)."""
    G = [g for g in G if not g.is_zero]
    if not G:
        return f
    order = ring_order(f.ring)
    raw = [to_raw(g) for g in G]
    eng = Buchberger(order)
    eng.basis = raw
    eng.lts = [leading_term(g, order) for g in raw]
    return from_raw(f.ring, eng.reduce(to_raw(f)))


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g`` when ``g`` divides ``f``; raises otherwise."""
    order = ring_order(f.ring)
    gr = to_raw(g)
    lt = leading_term(gr, order)
    lc = gr[lt]
    rem = to_raw(f)
    quot: dict = {}
    while rem:
        t = leading_term(rem, order)
        if not mono_divides(lt[1], t[1]):
            raise ArithmeticError("not an exact division")
        q = mono_div(t[1], lt[1])
        c = rem[t] / lc
        quot[(0, q)] = c
        for (p, m), v in gr.items():
            tt = (0, mono_mul(m, q))
            nv = rem.get(tt, 0) - c * v
            if nv:
                rem[tt] = nv
            else:
                rem.pop(tt, None)
    return from_raw(f.ring, quot)


def lift(f: Polynomial, gens: Sequence[Polynomial]) -> list[Polynomial] | None:
    """Coefficients ``h`` with ``f == sum(h_i * gens_i)``, or ``None`` if ``f`` is not in the ideal."""
    ring = f.ring
    r = len(gens)
    twists = [0] + [max(g.degree(), 0) for g in gens]
    order = TermOrder(flat_mono_key(ring.order, ring.nvars), twists=twists, graded=False, split=1)
    zero = (0,) * ring.nvars
    aug = []
    for i, g in enumerate(gens):
        v = to_raw(g, 0)
        v[(i + 1, zero)] = QQ(1)
        aug.append(v)
    gb = groebner_raw(aug, order, rank_one=False)
    eng = Buchberger(order, rank_one=False)
    eng.basis = gb
    eng.lts = [leading_term(g, order) for g in gb]
    rem = eng.reduce(to_raw(f, 0))
    if any(p == 0 for (p, _) in rem):
        return None
    return [-from_raw(ring, rem, pos=i + 1) for i in range(r)]


# --------------------------------------------------------------------------
# ideal operations
# --------------------------------------------------------------------------


def groebner_basis(I: Ideal) -> list[Polynomial]:
    return I.groebner_basis()


def eliminate(I: Ideal, variables: Iterable) -> Ideal:
    """Generators of ``I`` intersected with the subring free of ``variables``."""
    ring = I.ring
    idx = sorted({ring.index(v) if isinstance(v, str) else v for v in variables})
    order = TermOrder(elimination_key(idx, ring.nvars))
    gb = groebner_raw((to_raw(g) for g in I.gens), order)
    keep = [g for g in gb if all(m[i] == 0 for (_, m) in g for i in idx)]
    return Ideal(ring, [from_raw(ring, g) for g in keep])


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1 - t)*J``."""
    ring = I.ring
    n = ring.nvars
    gens = []
    for g in I.gens:
        gens.append({(0, (1,) + m): c for (m, _), c in g.terms.items()})
    for g in J.gens:
        h = {}
        for (m, _), c in g.terms.items():
            h[(0, (0,) + m)] = c
            h[(0, (1,) + m)] = -c
        gens.append(h)
    order = TermOrder(elimination_key([0], n + 1))
    gb = groebner_raw(gens, order)
    out = []
    for g in gb:
        if all(m[0] == 0 for (_, m) in g):
            out.append(Polynomial(ring, {(m[1:], 0): c for (_, m), c in g.items()}))
    return Ideal(ring, out)


def _quotient_by_variable(I: Ideal, i: int, infinite: bool = False) -> Ideal:
    """``I : x_i`` (or ``I : x_i^∞``) for homogeneous ``I``.

    In grevlex with ``x_i`` last, dividing each element of a homogeneous
    Gröbner basis by the power of ``x_i`` it carries gives a basis of the
    quotient.
    """
    ring = I.ring
    order = TermOrder(revlex_last_key(i, ring.nvars))
    gb = groebner_raw((to_raw(g) for g in I.gens), order)
    out = []
    for g in gb:
        k = min(m[i] for (_, m) in g)
        if not infinite:
            k = min(k, 1)
        if k:
            g = {(p, m[:i] + (m[i] - k,) + m[i + 1:]): c for (p, m), c in g.items()}
        out.append(from_raw(ring, g))
    return Ideal(ring, out)


def quotient_by_element(I: Ideal, g: Polynomial) -> Ideal:
    if g.is_zero:
        return Ideal(I.ring, [I.ring.one()])
    if g.is_constant:
        return I
    used = g.variables_used()
    if I.is_homogeneous() and len(g.terms) == 1 and g.degree() == 1 and len(used) == 1:
        return _quotient_by_variable(I, used.pop())
    inter = intersect(I, Ideal(I.ring, [g]))
    return Ideal(I.ring, [divide_exact(h, g) for h in inter.gens])


def ideal_quotient(I: Ideal, J: Ideal) -> Ideal:
    """``I : J = {f : f*J ⊆ I}`` as the intersection of the ``I : (g)``."""
    if I.ring.main_vars != J.ring.main_vars:
        raise RingMismatch("ideals live in different rings")
    if not J.gens:
        return Ideal(I.ring, [I.ring.one()])
    parts = [quotient_by_element(I, g) for g in J.gens]
    out = parts[0]
    for p in parts[1:]:
        out = intersect(out, p)
    return out


@dataclass
class SaturationResult:
    ideal: Ideal
    rounds: int


def saturation_with_stats(I: Ideal, J: Ideal | None = None) -> SaturationResult:
    J = irrelevant_ideal(I.ring) if J is None else J
    current = I
    rounds = 0
    while True:
        nxt = ideal_quotient(current, J)
        rounds += 1
        if current.contains_ideal(nxt):
            return SaturationResult(Ideal(I.ring, current.groebner_basis()), rounds)
        current = nxt


def saturation(I: Ideal, J: Ideal | None = None) -> Ideal:
    """``I : J^∞`` by iterated quotients; ``J`` defaults to the irrelevant ideal."""
    if J is None:
        if I._sat is None:
            I._sat = saturation_with_stats(I).ideal
        return I._sat
    return saturation_with_stats(I, J).ideal


def saturation_revlex(I: Ideal) -> Ideal:
    """Saturation by the irrelevant ideal as ``∩_i I : x_i^∞`` (homogeneous input)."""
    if not I.is_homogeneous():
        raise ValueError("revlex saturation needs a homogeneous ideal")
    parts = [_quotient_by_variable(I, i, infinite=True) for i in range(I.nvars)]
    out = parts[0]
    for p in parts[1:]:
        out = intersect(out, p)
    return Ideal(I.ring, out.groebner_basis())


def minimal_generators(I: Ideal) -> list[Polynomial]:
    """Greedy minimal generating set of a homogeneous ideal (degree-ascending, then input order)."""
    if not I.is_homogeneous():
        raise ValueError("minimal generators are defined here for homogeneous ideals")
    order = ring_order(I.ring)
    eng = Buchberger(order)
    kept = []
    for g in sorted(I.gens, key=lambda g: g.degree()):
        if eng.add(to_raw(g)):
            eng.complete()
            kept.append(g)
    return kept


# --------------------------------------------------------------------------
# Hilbert function and dimension
# --------------------------------------------------------------------------


def standard_monomials(I: Ideal, k: int) -> list[tuple]:
    lms = I.leading_monomials()
    return [m for m in monomials_of_degree(I.nvars, k) if not any(mono_divides(l, m) for l in lms)]


def hilbert_function(I: Ideal, k: int) -> int:
    """``dim_k (S/I)_k`` for homogeneous ``I`` via standard monomials."""
    if k < 0:
        return 0
    if not I.is_homogeneous():
        raise ValueError("Hilbert function needs a homogeneous ideal")
    return len(standard_monomials(I, k))


def ideal_piece_dim(I: Ideal, k: int) -> int:
    """``dim_k I_k``."""
    if k < 0:
        return 0
    from math import comb

    return comb(k + I.nvars - 1, I.nvars - 1) - hilbert_function(I, k)


def affine_dimension(I: Ideal) -> int:
    """Krull dimension of ``S/I`` from the initial ideal (max independent set)."""
    lms = I.leading_monomials()
    if any(not any(m) for m in lms):
        return -1
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    n = I.nvars
    for size in range(n, -1, -1):
        for U in itertools.combinations(range(n), size):
            Us = set(U)
            if not any(s <= Us for s in supports):
                return size
    return 0


def krull_dimension(I: Ideal) -> int:
    """Dimension of the projective scheme ``V(I)``; ``-1`` when it is empty."""
    if I.is_unit():
        raise ValueError("the unit ideal defines no scheme")
    return affine_dimension(I) - 1


def codimension(I: Ideal) -> int:
    return I.nvars - affine_dimension(I)


def in_ideal_certificate(f: Polynomial, I: Ideal) -> bool:
    """Check membership by an explicit representation ``f = sum h_i g_i``."""
    h = lift(f, list(I.gens))
    if h is None:
        return False
    total = f.ring.zero()
    for hi, gi in zip(h, I.gens):
        total = total + hi * gi
    return total == f


def radical_contains(I: Ideal, f: Polynomial) -> bool:
    """``f ∈ √I`` by the Rabinowitsch trick: ``1 ∈ I + (1 - s·f)``."""
    ring = I.ring
    big = RingSpec(ring.main_vars + ("_s",), (), "grevlex")
    n = ring.nvars

    def lift_poly(p):
        return Polynomial(big, {(m + (0,), 0): c for (m, _), c in p.terms.items()})

    s = big.var(n)
    gens = [lift_poly(g) for g in I.gens] + [big.one() - s * lift_poly(f)]
    return Ideal(big, gens).is_unit()


__all__ = [
    "Ideal",
    "GroebnerBudgetExceeded",
    "normal_form",
    "groebner_basis",
    "ideal_quotient",
    "saturation",
    "saturation_revlex",
    "eliminate",
    "intersect",
    "hilbert_function",
    "ideal_piece_dim",
    "krull_dimension",
    "minimal_generators",
    "lift",
    "radical_contains",
    "saturation_with_stats",
    "SaturationResult",
    "quotient_by_element",
    "standard_monomials",
    "affine_dimension",
    "codimension",
    "in_ideal_certificate",
    "irrelevant_ideal",
    "divide_exact",
    "step_budget",
]
