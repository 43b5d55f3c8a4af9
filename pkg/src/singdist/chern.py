"""Chern classes, Chern characters and Riemann-Roch on Pⁿ.

Every class is a polynomial in the hyperplane class H truncated above Hⁿ,
stored as a rational vector of length n + 1.  Integration picks out the
coefficient of Hⁿ.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

MAX_DIM = 3


class DimensionError(ValueError):
    """Raised for ambient dimensions outside the supported range."""


def _check_dim(n: int) -> None:
    if not 1 <= n <= MAX_DIM:
        raise DimensionError(f"ambient dimension must be between 1 and {MAX_DIM}, got {n}")


def _mul(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if x:
            for j, y in enumerate(b[: n + 1 - i]):
                out[i + j] += x * y
    return tuple(out)


def _inverse(a: Sequence[Fraction], n: int) -> tuple[Fraction, ...]:
    if not a[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    out = [Fraction(0)] * (n + 1)
    out[0] = 1 / Fraction(a[0])
    for k in range(1, n + 1):
        s = sum((a[i] * out[k - i] for i in range(1, min(k, len(a) - 1) + 1)), Fraction(0))
        out[k] = -s * out[0]
    return tuple(out)


def _power(a: Sequence[Fraction], e: int, n: int) -> tuple[Fraction, ...]:
    out = tuple(Fraction(int(i == 0)) for i in range(n + 1))
    for _ in range(e):
        out = _mul(out, a, n)
    return out


def _exp_series(c: Fraction, n: int) -> tuple[Fraction, ...]:
    """``e^{cH}`` truncated at Hⁿ."""
    return tuple(Fraction(c) ** k / factorial(k) for k in range(n + 1))


@dataclass(frozen=True)
class ChernCharacter:
    """``(ch₀, …, chₙ)`` in powers of H."""

    coeffs: tuple
    n: int

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) > self.n + 1:
            raise ValueError(f"character has {len(coeffs)} entries, at most {self.n + 1} allowed")
        coeffs = coeffs + (Fraction(0),) * (self.n + 1 - len(coeffs))
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def rank(self) -> Fraction:
        return self.coeffs[0]

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        self._same_dim(other)
        return ChernCharacter(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.n)

    def __mul__(self, other: "ChernCharacter") -> "ChernCharacter":
        self._same_dim(other)
        return ChernCharacter(_mul(self.coeffs, other.coeffs, self.n), self.n)

    def scale(self, c) -> "ChernCharacter":
        return ChernCharacter(tuple(Fraction(c) * a for a in self.coeffs), self.n)

    def dual(self) -> "ChernCharacter":
        return character_dual(self)

    def twist(self, k: int) -> "ChernCharacter":
        """Character of ``E(k)``."""
        return self * line_bundle(k, self.n)

    def integral(self) -> Fraction:
        return self.coeffs[self.n]

    def _same_dim(self, other: "ChernCharacter") -> None:
        if self.n != other.n:
            raise ValueError(f"characters live on P^{self.n} and P^{other.n}")

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class ChernClassVector:
    """Rank and Chern classes ``(c₁, …, cₖ)``; classes above the rank are kept."""

    rank: int
    classes: tuple

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(Fraction(c) for c in self.classes))

    def total(self, n: int) -> tuple[Fraction, ...]:
        """Total Chern class ``1 + c₁H + …`` truncated at Hⁿ."""
        out = [Fraction(1)] + list(self.classes[:n])
        return tuple(out + [Fraction(0)] * (n + 1 - len(out)))

    def __str__(self) -> str:
        return f"rank {self.rank}, c = ({', '.join(str(c) for c in self.classes)})"


def chern_to_character(c: ChernClassVector, n: int = 3) -> ChernCharacter:
    """Newton's identities: power sums of the Chern roots give ``k!·ch_k``."""
    _check_dim(n)
    e = c.total(n)
    p = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        s = (-1) ** (k - 1) * k * e[k]
        for i in range(1, k):
            s += (-1) ** (i - 1) * e[i] * p[k - i]
        p[k] = s
    coeffs = [Fraction(c.rank)] + [p[k] / factorial(k) for k in range(1, n + 1)]
    return ChernCharacter(tuple(coeffs), n)


def character_to_chern(ch: ChernCharacter) -> ChernClassVector:
    """Inverse of :func:`chern_to_character`."""
    n = ch.n
    _check_dim(n)
    if ch.rank.denominator != 1:
        raise ValueError(f"rank {ch.rank} is not an integer")
    p = [Fraction(0)] + [ch.coeffs[k] * factorial(k) for k in range(1, n + 1)]
    e = [Fraction(1)] + [Fraction(0)] * n
    for k in range(1, n + 1):
        s = sum(((-1) ** (i - 1) * e[k - i] * p[i] for i in range(1, k + 1)), Fraction(0))
        e[k] = s / k
    return ChernClassVector(int(ch.rank), tuple(e[1:]))


def character_dual(ch: ChernCharacter) -> ChernCharacter:
    return ChernCharacter(tuple(c if k % 2 == 0 else -c for k, c in enumerate(ch.coeffs)), ch.n)


def line_bundle(k: int, n: int) -> ChernCharacter:
    """``ch(O(k)) = e^{kH}``."""
    return ChernCharacter(_exp_series(Fraction(k), n), n)


def todd_projective(n: int) -> ChernCharacter:
    """``(H / (1 - e^{-H}))^{n+1}`` truncated at Hⁿ."""
    _check_dim(n)
    # (1 - e^{-H}) / H = Σ (-1)^k H^k / (k+1)!
    g = tuple(Fraction((-1) ** k, factorial(k + 1)) for k in range(n + 1))
    return ChernCharacter(_power(_inverse(g, n), n + 1, n), n)


def chi_pair(chE: ChernCharacter, chF: ChernCharacter, n: int | None = None) -> Fraction:
    """``∫ ch(E)^∨ · ch(F) · td(Pⁿ)``."""
    n = chE.n if n is None else n
    if chE.n != n or chF.n != n:
        raise ValueError("characters and ambient dimension do not match")
    return (character_dual(chE) * chF * todd_projective(n)).integral()


def euler_characteristic(ch: ChernCharacter) -> Fraction:
    """``χ(F) = χ(O, F)``."""
    return chi_pair(line_bundle(0, ch.n), ch)


def hom_dimension(chi: Fraction, ext1: int) -> Fraction:
    """``dim Hom = χ + dim Ext¹`` when the higher Ext groups vanish."""
    return chi + ext1


# --------------------------------------------------------------------------
# φ(d, n): length of the singular scheme of a generic distribution
# --------------------------------------------------------------------------


def phi(d: int, n: int) -> int:
    """Closed form ``((d+1)^{n+1} - (-1)^{n+1}) / (d+2)``."""
    if d < 0 or n < 1:
        raise ValueError("phi needs d >= 0 and n >= 1")
    num = (d + 1) ** (n + 1) - (-1) ** (n + 1)
    q, r = divmod(num, d + 2)
    assert r == 0
    return q


def cotangent_classes(n: int) -> ChernClassVector:
    """``c(Ω¹) = (1 - H)^{n+1}`` from the Euler sequence."""
    total = [Fraction((-1) ** k * comb(n + 1, k)) for k in range(n + 1)]
    return ChernClassVector(n, tuple(total[1:]))


def _binom(m: int, p: int) -> Fraction:
    """``C(m, p)`` for any integer ``m``; negative tops occur when classes exceed the rank."""
    out = Fraction(1)
    for i in range(p):
        out = out * (m - i) / (i + 1)
    return out


def twist_classes(c: ChernClassVector, k: int, n: int) -> ChernClassVector:
    """Chern classes of ``E ⊗ O(k)``: ``c_j = Σ_i C(r-i, j-i) c_i k^{j-i}``."""
    r = c.rank
    base = c.total(n)
    out = []
    for j in range(1, n + 1):
        out.append(sum((_binom(r - i, j - i) * base[i] * Fraction(k) ** (j - i) for i in range(0, j + 1)), Fraction(0)))
    return ChernClassVector(r, tuple(out))


def phi_top_chern(d: int, n: int) -> Fraction:
    """``∫ cₙ(Ω¹(d+2))`` via the Euler sequence and the twist formula."""
    _check_dim(n)
    if d < 0:
        raise ValueError("phi needs d >= 0")
    return twist_classes(cotangent_classes(n), d + 2, n).classes[n - 1]


__all__ = [
    "ChernCharacter",
    "ChernClassVector",
    "DimensionError",
    "character_dual",
    "character_to_chern",
    "chern_to_character",
    "chi_pair",
    "cotangent_classes",
    "euler_characteristic",
    "hom_dimension",
    "line_bundle",
    "phi",
    "phi_top_chern",
    "todd_projective",
    "twist_classes",
]
