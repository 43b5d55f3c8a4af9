"""Text grammar for rings, polynomials, ideals and twisted 1-forms.

Polynomials use integers, variable names, ``+ - * / ^`` and parentheses.
Multiplication must be written explicitly (``t1*y*z``, never ``t1yz``);
``/`` is accepted only with a nonzero constant divisor so that rational
coefficients print and re-parse.  A 1-form is an expression that is linear
in the differential symbols ``d<var>``, e.g. ``(y*z)*dx - x*y*dz``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .polyring import ParameterError, Polynomial, RingSpec


class ParseError(ValueError):
    def __init__(self, message: str, src: str = "", pos: int = 0):
        self.pos = pos
        self.line = src.count("\n", 0, pos) + 1
        self.col = pos - (src.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} (line {self.line}, column {self.col})")


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^(),]))")


@dataclass
class _Tok:
    kind: str  # "num" | "name" | "op" | "end"
    text: str
    pos: int


def tokenize(src: str) -> list[_Tok]:
    out = []
    i = 0
    n = len(src)
    while i < n:
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m:
            raise ParseError(f"unexpected character {src[i]!r}", src, i)
        start = m.start(m.lastindex)
        if m.group(1):
            out.append(_Tok("num", m.group(1), start))
        elif m.group(2):
            out.append(_Tok("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            out.append(_Tok("op", op, start))
        i = m.end()
    out.append(_Tok("end", "", n))
    return out


class _FormVal:
    """Intermediate value: a 1-form as ``{var index: coefficient}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict):
        self.coeffs = coeffs

    def combine(self, other: "_FormVal", sign: int) -> "_FormVal":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            v = v if sign > 0 else -v
            out[k] = out[k] + v if k in out else v
        return _FormVal(out)

    def times(self, p: Polynomial) -> "_FormVal":
        return _FormVal({k: v * p for k, v in self.coeffs.items()})


class _Parser:
    def __init__(self, src: str, ring: RingSpec, allow_forms: bool):
        self.src = src
        self.ring = ring
        self.toks = tokenize(src)
        self.i = 0
        self.allow_forms = allow_forms
        self.diff_names = {}
        if allow_forms:
            taken = set(ring.main_vars) | set(ring.param_vars)
            for j, v in enumerate(ring.main_vars):
                if "d" + v not in taken:
                    self.diff_names["d" + v] = j

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def fail(self, msg, tok=None):
        tok = tok or self.tok
        raise ParseError(msg, self.src, tok.pos)

    def expect(self, text):
        if self.tok.text != text:
            self.fail(f"expected {text!r}, found {self.tok.text or 'end of input'!r}")
        self.i += 1

    def parse(self):
        if self.tok.kind == "end":
            self.fail("empty expression")
        v = self.expr()
        if self.tok.kind != "end":
            if self.tok.kind in ("name", "num") or self.tok.text == "(":
                self.fail("implicit multiplication is not allowed; write '*'")
            self.fail(f"unexpected {self.tok.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.tok.text in ("+", "-"):
            op = self.tok
            self.i += 1
            rhs = self.term()
            v = self.add(v, rhs, 1 if op.text == "+" else -1, op)
        return v

    def add(self, a, b, sign, tok):
        fa, fb = isinstance(a, _FormVal), isinstance(b, _FormVal)
        try:
            if fa and fb:
                return a.combine(b, sign)
            if fa or fb:
                if (b if fa else a).is_zero:
                    return a if fa else (b if sign > 0 else b.times(self.ring.const(-1)))
                self.fail("cannot add a polynomial and a 1-form", tok)
            return a + b if sign > 0 else a - b
        except ParameterError as e:
            self.fail(str(e), tok)

    def term(self):
        v = self.unary()
        while self.tok.text in ("*", "/"):
            op = self.tok
            self.i += 1
            rhs = self.unary()
            if op.text == "*":
                v = self.mul(v, rhs, op)
            else:
                if isinstance(rhs, _FormVal) or not rhs.is_constant or rhs.is_zero:
                    self.fail("division is only allowed by a nonzero constant", op)
                c = rhs.constant_value()
                v = v.times(self.ring.const(1 / c)) if isinstance(v, _FormVal) else v / c
        return v

    def mul(self, a, b, tok):
        fa, fb = isinstance(a, _FormVal), isinstance(b, _FormVal)
        try:
            if fa and fb:
                self.fail("product of two 1-forms is not supported", tok)
            if fa:
                return a.times(b)
            if fb:
                return b.times(a)
            return a * b
        except ParameterError as e:
            self.fail(str(e), tok)

    def unary(self):
        if self.tok.text == "-":
            self.i += 1
            v = self.unary()
            return v.times(self.ring.const(-1)) if isinstance(v, _FormVal) else -v
        if self.tok.text == "+":
            self.i += 1
            return self.unary()
        return self.power()

    def power(self):
        base_tok = self.tok
        v = self.atom()
        if self.tok.text == "^":
            self.i += 1
            if self.tok.kind != "num":
                self.fail("exponent must be a non-negative integer")
            e = int(self.tok.text)
            self.i += 1
            if isinstance(v, _FormVal):
                self.fail("cannot raise a 1-form to a power", base_tok)
            try:
                v = v ** e
            except ParameterError as err:
                self.fail(str(err), base_tok)
        return v

    def atom(self):
        t = self.tok
        if t.kind == "num":
            self.i += 1
            return self.ring.const(int(t.text))
        if t.kind == "name":
            self.i += 1
            if t.text in self.ring.main_vars:
                return self.ring.var(t.text)
            if t.text in self.ring.param_vars:
                return self.ring.param(t.text)
            if t.text in self.diff_names:
                return _FormVal({self.diff_names[t.text]: self.ring.one()})
            self.fail(f"unknown variable {t.text!r}", t)
        if t.text == "(":
            self.i += 1
            v = self.expr()
            self.expect(")")
            return v
        self.fail(f"unexpected {t.text or 'end of input'!r}")


def parse_poly(src: str, ring: RingSpec) -> Polynomial:
    v = _Parser(src, ring, allow_forms=False).parse()
    return v


def parse_form(src: str, ring: RingSpec, require_homogeneous: bool = True):
    from .forms import TwistedOneForm

    p = _Parser(src, ring, allow_forms=True)
    v = p.parse()
    if not isinstance(v, _FormVal):
        if v.is_zero:
            v = _FormVal({})
        else:
            raise ParseError("expected a 1-form (terms like (...)*dx)", src, 0)
    coeffs = [v.coeffs.get(i, ring.zero()) for i in range(ring.nvars)]
    coeffs = [c.in_ring(ring) for c in coeffs]
    try:
        return TwistedOneForm(tuple(coeffs), ring) if not require_homogeneous else TwistedOneForm.checked(coeffs, ring)
    except ValueError as e:
        raise ParseError(str(e), src, 0) from None


def parse_ideal(src: str, ring: RingSpec):
    """Comma-separated generators, optionally wrapped in parentheses."""
    from .groebner import Ideal

    s = src.strip()
    if s.startswith("(") and s.endswith(")") and _balanced(s[1:-1]):
        s = s[1:-1]
    gens = []
    for piece, offset in _split_top_level(s):
        try:
            f = parse_poly(piece, ring)
        except ParseError as e:
            raise ParseError(str(e).rsplit(" (line", 1)[0], src, offset + e.pos) from None
        if f.is_parametric:
            raise ParseError("ideal generators must be parameter-free", src, offset)
        gens.append(f.drop_params())
    return Ideal(ring.without_params(), gens)


def _balanced(s: str) -> bool:
    depth = 0
    for ch in s:
        depth += ch == "("
        depth -= ch == ")"
        if depth < 0:
            return False
    return depth == 0


def _split_top_level(s: str):
    depth = 0
    start = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            yield s[start:i], start
            start = i + 1
    if s[start:].strip():
        yield s[start:], start


_RANGE = re.compile(r"^([A-Za-z_]+)(\d+)\.\.(?:([A-Za-z_]+))?(\d+)$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _expand_names(spec: str, src: str, pos: int) -> list[str]:
    names = []
    for item in spec.split(","):
        item = item.strip()
        m = _RANGE.match(item)
        if m:
            pre, a, pre2, b = m.groups()
            if pre2 and pre2 != pre:
                raise ParseError(f"range endpoints disagree: {item}", src, pos)
            a, b = int(a), int(b)
            if b < a:
                raise ParseError(f"empty range {item}", src, pos)
            names.extend(f"{pre}{k}" for k in range(a, b + 1))
        elif _NAME.match(item):
            names.append(item)
        else:
            raise ParseError(f"bad variable name {item!r}", src, pos + max(spec.find(item), 0))
    return names


def parse_ring(decl: str) -> RingSpec:
    """``ring x,y,z,w [params t0..t5] [order grevlex|lex|elim:k]``."""
    src = decl
    words = decl.split()
    if not words or words[0] != "ring":
        raise ParseError("ring declaration must start with 'ring'", src, 0)
    sections = {"vars": "", "params": "", "order": "grevlex"}
    current = "vars"
    for w in words[1:]:
        if w in ("params", "order"):
            current = w
            sections[w] = ""
            continue
        sections[current] += w
    try:
        main = _expand_names(sections["vars"], src, src.find(sections["vars"][:1] or " "))
        params = _expand_names(sections["params"], src, src.find("params")) if sections["params"] else []
        order = sections["order"] or "grevlex"
        m = re.match(r"^elim\((\d+)\)$", order)
        if m:
            order = f"elim:{m.group(1)}"
        if not main:
            raise ParseError("no variables declared", src, len(src))
        return RingSpec(tuple(main), tuple(params), order)
    except ParseError:
        raise
    except ValueError as e:
        raise ParseError(str(e), src, 0) from None


def _format_coeff_and_factors(c: Fraction, factors: list[str]) -> tuple[str, str]:
    sign = "-" if c < 0 else "+"
    a = abs(c)
    body = "*".join(factors)
    if a == 1 and factors:
        return sign, body
    num = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
    return sign, f"{num}*{body}" if factors else num


def format_poly(f: Polynomial) -> str:
    if f.is_zero:
        return "0"
    ring = f.ring
    pieces = []
    for m, s, c in f.sorted_terms():
        factors = [ring.param_vars[s - 1]] if s else []
        for v, e in zip(ring.main_vars, m):
            if e == 1:
                factors.append(v)
            elif e > 1:
                factors.append(f"{v}^{e}")
        pieces.append(_format_coeff_and_factors(c, factors))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def format_form(form) -> str:
    parts = []
    for v, c in zip(form.ring.main_vars, form.coeffs):
        if c.is_zero:
            continue
        parts.append(f"({format_poly(c)})*d{v}")
    return " + ".join(parts) if parts else "0"


def format_ideal(I) -> str:
    return ", ".join(format_poly(g) for g in I.gens)
