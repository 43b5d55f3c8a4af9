"""Sparse multivariate polynomials with exact rational coefficients.

A :class:`Polynomial` lives in a :class:`RingSpec`: an ordered block of main
variables (the homogeneous coordinates) plus an optional block of parameter
variables.  Coefficients may depend *affinely* on the parameters, which is
all the generic 1-form families ever need.

Internally a term is keyed by ``(exponents, slot)`` where ``slot == 0`` is the
parameter-free part and ``slot == i + 1`` is the part multiplying ``t_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Sequence

QQ = Fraction

Monomial = tuple  # tuple[int, ...], one exponent per main variable


class RingMismatch(ValueError):
    pass


class ParameterError(ValueError):
    """Raised when an operation would leave the parameter-linear world."""


def mono_degree(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(m: Monomial, perm: Sequence[int] | None = None):
    """Sort key: larger key means larger monomial in degree reverse lex.

    ``perm`` lists variable indices from first (largest) to last.
    """
    if perm is None:
        return (sum(m), tuple(-m[i] for i in range(len(m) - 1, -1, -1)))
    return (sum(m), tuple(-m[i] for i in reversed(perm)))


def lex_key(m: Monomial):
    return m


def elim_key(m: Monomial, k: int):
    """Block order: grevlex on the first ``k`` variables, ties by grevlex on the rest."""
    return (grevlex_key(m[:k]), grevlex_key(m[k:]))


def order_key_function(order: str, nvars: int):
    if order == "grevlex":
        return grevlex_key
    if order == "lex":
        return lex_key
    if order.startswith("elim:"):
        k = int(order.split(":", 1)[1])
        if not 0 < k <= nvars:
            raise ValueError(f"bad elimination block size {k} for {nvars} variables")
        return lambda m: elim_key(m, k)
    raise ValueError(f"unknown monomial order {order!r}")


@dataclass(frozen=True)
class RingSpec:
    """Variable names and the monomial order on the main variables.

    ``order`` is ``"grevlex"`` (default), ``"lex"`` or ``"elim:k"``; the last
    is a block order that eliminates the first ``k`` main variables.
    """

    main_vars: tuple[str, ...]
    param_vars: tuple[str, ...] = ()
    order: str = "grevlex"

    def __post_init__(self):
        object.__setattr__(self, "main_vars", tuple(self.main_vars))
        object.__setattr__(self, "param_vars", tuple(self.param_vars))
        names = self.main_vars + self.param_vars
        if len(set(names)) != len(names):
            dup = sorted({v for v in names if names.count(v) > 1})
            raise ValueError(f"duplicate variable names: {', '.join(dup)}")
        if not self.main_vars:
            raise ValueError("a ring needs at least one main variable")
        order_key_function(self.order, len(self.main_vars))

    @property
    def nvars(self) -> int:
        return len(self.main_vars)

    @property
    def nparams(self) -> int:
        return len(self.param_vars)

    @cached_property
    def sort_key(self):
        return order_key_function(self.order, self.nvars)

    def with_order(self, order: str) -> "RingSpec":
        return RingSpec(self.main_vars, self.param_vars, order)

    def with_params(self, params: Sequence[str]) -> "RingSpec":
        return RingSpec(self.main_vars, tuple(params), self.order)

    def without_params(self) -> "RingSpec":
        return RingSpec(self.main_vars, (), self.order)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = QQ(c)
        return Polynomial(self, {((0,) * self.nvars, 0): c} if c else {})

    def var(self, name_or_index) -> "Polynomial":
        i = self.index(name_or_index) if isinstance(name_or_index, str) else name_or_index
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {(tuple(e), 0): QQ(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def param(self, name_or_index) -> "Polynomial":
        if isinstance(name_or_index, str):
            i = self.param_vars.index(name_or_index)
        else:
            i = name_or_index
        return Polynomial(self, {((0,) * self.nvars, i + 1): QQ(1)})

    def index(self, name: str) -> int:
        try:
            return self.main_vars.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        return Polynomial(self, {(tuple(exps), 0): QQ(coeff)})

    def from_dict(self, d: dict) -> "Polynomial":
        """Build a parameter-free polynomial from ``{exponents: coeff}``."""
        return Polynomial(self, {(tuple(m), 0): QQ(c) for m, c in d.items() if c})

    def header(self) -> str:
        s = "ring " + ",".join(self.main_vars)
        if self.param_vars:
            s += " params " + ",".join(self.param_vars)
        if self.order != "grevlex":
            s += " order " + self.order
        return s


def monomials_of_degree(nvars: int, k: int) -> list[Monomial]:
    """All exponent vectors of total degree ``k``, in descending lex order."""
    if k < 0:
        return []
    if nvars == 1:
        return [(k,)]
    out = []
    for a in range(k, -1, -1):
        for rest in monomials_of_degree(nvars - 1, k - a):
            out.append((a,) + rest)
    return out


class Polynomial:
    """Immutable sparse polynomial; equality is equality of term maps."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: RingSpec, terms: dict):
        self.ring = ring
        self.terms = {k: v for k, v in terms.items() if v}
        self._hash = None

    # -- construction helpers -------------------------------------------------
    def _new(self, terms):
        p = Polynomial.__new__(Polynomial)
        p.ring = self.ring
        p.terms = terms
        p._hash = None
        return p

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.main_vars != self.ring.main_vars:
                raise RingMismatch(f"{self.ring.header()} vs {other.ring.header()}")
            a, b = self.ring.param_vars, other.ring.param_vars
            if a and b and a != b:
                raise RingMismatch("parameter blocks differ")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        t = dict(self.terms)
        for k, v in other.terms.items():
            s = t.get(k, 0) + v
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        ring = self.ring if self.ring.nparams >= other.ring.nparams else other.ring
        out = self._new(t)
        out.ring = ring
        return out

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_parametric and other.is_parametric:
            raise ParameterError("product of two parameter-dependent polynomials is not parameter-linear")
        t: dict = {}
        for (m1, s1), c1 in self.terms.items():
            for (m2, s2), c2 in other.terms.items():
                key = (mono_mul(m1, m2), s1 or s2)
                v = t.get(key, 0) + c1 * c2
                if v:
                    t[key] = v
                else:
                    t.pop(key, None)
        out = self._new(t)
        if other.ring.nparams > self.ring.nparams:
            out.ring = other.ring
        return out

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> "Polynomial":
        c = QQ(c)
        if not c:
            return self._new({})
        return self._new({k: v * c for k, v in self.terms.items()})

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if not other.is_constant or other.is_zero:
                raise ZeroDivisionError("division only by nonzero constants")
            other = other.constant_value()
        if not other:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / QQ(other))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.main_vars == other.ring.main_vars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.main_vars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- queries ----------------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_parametric(self) -> bool:
        return any(s for (_, s) in self.terms)

    @property
    def is_constant(self) -> bool:
        return all(not any(m) and not s for (m, s) in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise ValueError("not a constant")
        return self.terms.get(((0,) * self.ring.nvars, 0), QQ(0))

    def degree(self) -> int:
        """Total degree in the main variables; -1 for the zero polynomial."""
        return max((sum(m) for (m, _) in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for (m, _) in self.terms}) <= 1

    def monomials(self) -> list[Monomial]:
        return sorted({m for (m, _) in self.terms}, key=self.ring.sort_key, reverse=True)

    def sorted_terms(self) -> list[tuple[Monomial, int, Fraction]]:
        key = self.ring.sort_key
        items = sorted(self.terms.items(), key=lambda kv: (key(kv[0][0]), -kv[0][1]), reverse=True)
        return [(m, s, c) for (m, s), c in items]

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max((m for (m, _) in self.terms), key=self.ring.sort_key)

    def coefficient(self, mono: Monomial, slot: int = 0) -> Fraction:
        return self.terms.get((tuple(mono), slot), QQ(0))

    def variables_used(self) -> set[int]:
        return {i for (m, _) in self.terms for i, e in enumerate(m) if e}

    # -- parameter block -------------------------------------------------------
    def param_parts(self) -> list["Polynomial"]:
        """``[P0, P1, ..., Pk]`` with ``self == P0 + sum t_i * P_i``; each part parameter-free."""
        base = self.ring.without_params()
        parts: list[dict] = [dict() for _ in range(self.ring.nparams + 1)]
        for (m, s), c in self.terms.items():
            parts[s][(m, 0)] = c
        return [Polynomial(base, p) for p in parts]

    def specialize(self, values: Sequence) -> "Polynomial":
        if len(values) != self.ring.nparams:
            raise ValueError(f"expected {self.ring.nparams} parameter values, got {len(values)}")
        vals = [QQ(1)] + [QQ(v) for v in values]
        t: dict = {}
        for (m, s), c in self.terms.items():
            v = t.get((m, 0), 0) + c * vals[s]
            t[(m, 0)] = v
        return Polynomial(self.ring.without_params(), t)

    def drop_params(self) -> "Polynomial":
        """Same polynomial viewed in the parameter-free ring (must not be parametric)."""
        if self.is_parametric:
            raise ParameterError("polynomial depends on parameters")
        return Polynomial(self.ring.without_params(), self.terms)

    def in_ring(self, ring: RingSpec) -> "Polynomial":
        if ring.main_vars != self.ring.main_vars:
            raise RingMismatch("main variables differ")
        if max((s for (_, s) in self.terms), default=0) > ring.nparams:
            raise RingMismatch("target ring has too few parameters")
        return Polynomial(ring, self.terms)

    # -- calculus and substitution ----------------------------------------------
    def diff(self, i: int) -> "Polynomial":
        t: dict = {}
        for (m, s), c in self.terms.items():
            e = m[i]
            if e:
                mm = m[:i] + (e - 1,) + m[i + 1:]
                t[(mm, s)] = t.get((mm, s), 0) + c * e
        return self._new({k: v for k, v in t.items() if v})

    def substitute(self, images: Sequence["Polynomial"]) -> "Polynomial":
        """Replace main variable ``i`` by ``images[i]`` (parameter-free images)."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per main variable")
        ring = images[0].ring if images else self.ring
        out = Polynomial(ring.with_params(self.ring.param_vars), {})
        cache: dict = {}

        def power(i, e):
            if (i, e) not in cache:
                cache[(i, e)] = images[i] ** e
            return cache[(i, e)]

        for (m, s), c in self.terms.items():
            term = Polynomial(out.ring, {((0,) * ring.nvars, s): c})
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def evaluate(self, point: Sequence) -> Fraction:
        if self.is_parametric:
            raise ParameterError("specialize parameters first")
        total = QQ(0)
        pt = [QQ(v) for v in point]
        for (m, _), c in self.terms.items():
            v = c
            for x, e in zip(pt, m):
                if e:
                    v *= x ** e
            total += v
        return total

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        if self.is_parametric:
            raise ParameterError("monic() needs a parameter-free polynomial")
        return self.scale(1 / self.terms[(self.leading_monomial(), 0)])

    # -- text -------------------------------------------------------------------
    def __str__(self) -> str:
        from .parsing import format_poly

        return format_poly(self)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


def iter_pairs(seq: Sequence) -> Iterator[tuple]:
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            yield seq[i], seq[j]


def homogeneous_basis(ring: RingSpec, k: int) -> list[Polynomial]:
    return [ring.monomial(m) for m in monomials_of_degree(ring.nvars, k)]


def poly_add(f: Polynomial, g: Polynomial) -> Polynomial:
    return f + g


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    return f * g


def partial_derivative(f: Polynomial, var: int) -> Polynomial:
    return f.diff(var)


def specialize(f: Polynomial, values: Iterable) -> Polynomial:
    return f.specialize(list(values))
