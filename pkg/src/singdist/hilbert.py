"""Hilbert series of monomial ideals and Hilbert polynomials.

``UPoly`` is a tiny univariate polynomial over the rationals, used both for
Hilbert series numerators (in ``t``) and for Hilbert polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence


@dataclass(frozen=True)
class UPoly:
    coeffs: tuple  # lowest degree first, no trailing zeros

    def __init__(self, coeffs: Sequence = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def monomial(cls, k: int, c=1) -> "UPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other):
        other = _up(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return UPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_up(other))

    def __rsub__(self, other):
        return _up(other) - self

    def __mul__(self, other):
        other = _up(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(out)

    __rmul__ = __mul__

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_linear(self, root) -> tuple["UPoly", Fraction]:
        """Synthetic division by ``(t - root)``."""
        if not self.coeffs:
            return UPoly(), Fraction(0)
        cs = list(reversed(self.coeffs))
        out = [cs[0]]
        for c in cs[1:]:
            out.append(c + out[-1] * root)
        rem = out.pop()
        return UPoly(list(reversed(out))), rem

    def __str__(self):
        return format_upoly(self, "t")


def _up(x) -> UPoly:
    return x if isinstance(x, UPoly) else UPoly([x])


def format_upoly(p: UPoly, var: str = "t") -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        num = str(a) if a.denominator == 1 else f"({a})"
        if k == 0:
            body = num
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if a == 1 else f"{num}{mono}"
        parts.append((sign, body))
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for s, b in parts[1:]:
        out += f" {s} {b}"
    return out


def binomial_poly(shift: int, n: int) -> UPoly:
    """``C(t + shift, n)`` as a polynomial in ``t``."""
    p = UPoly([1])
    for j in range(n):
        p = p * UPoly([shift - j, 1])
    return p * UPoly([Fraction(1, factorial(n))])


# -- monomial ideals ----------------------------------------------------------


def _minimalize(gens):
    gens = sorted(set(gens), key=sum)
    out = []
    for m in gens:
        if not any(all(a <= b for a, b in zip(g, m)) for g in out):
            out.append(m)
    return out


def hilbert_numerator(gens: Sequence[tuple], nvars: int) -> UPoly:
    """Numerator ``N(t)`` with ``HS(S/M) = N(t) / (1 - t)^nvars`` for a monomial ideal ``M``."""
    gens = _minimalize(tuple(g) for g in gens)
    return _numerator(gens, nvars)


def _numerator(gens, nvars) -> UPoly:
    if not gens:
        return UPoly([1])
    if any(sum(g) == 0 for g in gens):
        return UPoly()
    # base case: pairwise coprime generators
    support_count = [0] * nvars
    for g in gens:
        for i, e in enumerate(g):
            if e:
                support_count[i] += 1
    if max(support_count) <= 1:
        out = UPoly([1])
        for g in gens:
            out = out * (UPoly([1]) - UPoly.monomial(sum(g)))
        return out
    # pivot on the most shared variable, at the median exponent
    i = max(range(nvars), key=lambda v: support_count[v])
    exps = sorted(g[i] for g in gens if g[i])
    e = exps[(len(exps) - 1) // 2]
    p = tuple(e if j == i else 0 for j in range(nvars))
    plus = _minimalize(list(gens) + [p])
    colon = _minimalize(tuple(max(a - b, 0) for a, b in zip(g, p)) for g in gens)
    return _numerator(plus, nvars) + UPoly.monomial(e) * _numerator(colon, nvars)


def reduce_series(num: UPoly, nvars: int) -> tuple[UPoly, int]:
    """Cancel ``(1 - t)`` factors: returns ``(Q, dim)`` with ``HS = Q / (1 - t)^dim``."""
    dim = nvars
    q = num
    while dim > 0 and q.coeffs:
        quo, rem = q.divmod_linear(1)
        if rem != 0:
            break
        q = -quo  # (t - 1) = -(1 - t)
        dim -= 1
    return q, dim


def hilbert_polynomial_from_numerator(num: UPoly, nvars: int) -> UPoly:
    q, dim = reduce_series(num, nvars)
    if dim == 0:
        return UPoly()
    out = UPoly()
    for i, c in enumerate(q.coeffs):
        if c:
            out = out + binomial_poly(dim - 1 - i, dim - 1) * UPoly([c])
    return out


def series_coefficient(num: UPoly, nvars: int, k: int) -> int:
    """Coefficient of ``t^k`` in ``num / (1 - t)^nvars``."""
    total = Fraction(0)
    for i, c in enumerate(num.coeffs):
        if c and k - i >= 0:
            total += c * comb(k - i + nvars - 1, nvars - 1)
    return int(total)
