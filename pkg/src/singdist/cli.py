"""Command-line front end.

Exit codes: 0 success, 1 a computation ran but a check failed (or the
input was mathematically rejected), 2 usage or parse error.

Inputs are given inline (``"x*z - y^2, x*w - y*z"``), read from a file
(``file:path``, optionally starting with a ``ring ...`` line), or taken from
a named binding (``@example1``, ``@T2-1``, ``@ext3``; see ``singdist bindings``).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import __version__
from .chern import ChernClassVector, chern_to_character, chi_pair, phi, phi_top_chern
from .corpus import CHECK_NAMES, CorpusError, load_corpus, run_regressions
from .distributions import (
    CodimensionOneLocus,
    GenericFormFamily,
    NotADistribution,
    classify_degree1,
    degeneration_probe,
    example_form,
    fiber_dimension,
    generic_form,
    singular_scheme,
    verify_main_theorem2,
)
from .forms import (
    TwistedOneForm,
    constant_tangent_fields,
    euler_relation_holds,
    integrability_ideal,
    is_integrable,
    pfaffian4,
    pfaffian_certificate,
    skew_of_derivative,
    wedge_integrability,
)
from .groebner import GroebnerBudgetExceeded, Ideal, hilbert_function, krull_dimension, minimal_generators, saturation
from .parsing import ParseError, format_form, format_poly, parse_form, parse_ideal, parse_ring
from .polyring import RingSpec
from .syzygy import ext_top_cyclic, hilbert_polynomial, minimal_free_resolution, syzygies, tensor_length

DEFAULT_RING = "ring x,y,z,w"


class UsageError(Exception):
    """Bad invocation; maps to exit code 2."""


class CheckFailed(Exception):
    """A computation completed but rejected its input; maps to exit code 1."""


# --------------------------------------------------------------------------
# session and bindings
# --------------------------------------------------------------------------


@dataclass
class Binding:
    """A named value; a corpus row carries both an ideal and a form."""

    ring: RingSpec
    ideal: Ideal | None = None
    form: TwistedOneForm | None = None
    note: str = ""


@dataclass
class Session:
    ring: RingSpec
    bindings: dict = field(default_factory=dict)
    output_mode: str = "text"

    def lookup(self, name: str) -> Binding:
        if name not in self.bindings:
            known = ", ".join(sorted(self.bindings))
            raise UsageError(f"unknown binding @{name}; known: {known}")
        return self.bindings[name]

    def ideal(self, src: str) -> Ideal:
        if src.startswith("@"):
            b = self.lookup(src[1:])
            if b.ideal is None:
                raise UsageError(f"@{src[1:]} is not an ideal")
            return b.ideal
        ring, text = self._source(src)
        return parse_ideal(text, ring)

    def form(self, src: str) -> TwistedOneForm:
        if src.startswith("@"):
            b = self.lookup(src[1:])
            if b.form is None:
                raise UsageError(f"@{src[1:]} is not a 1-form")
            return b.form
        ring, text = self._source(src)
        return parse_form(text, ring)

    def _source(self, src: str) -> tuple[RingSpec, str]:
        if not src.startswith("file:"):
            return self.ring, src
        try:
            with open(src[5:]) as fh:
                lines = [ln.strip() for ln in fh if ln.strip() and not ln.lstrip().startswith("#")]
        except OSError as e:
            raise UsageError(str(e)) from None
        ring = self.ring
        if lines and lines[0].startswith("ring "):
            ring = parse_ring(lines.pop(0))
        return ring, " ".join(lines)


def builtin_bindings() -> dict:
    out = {}
    p3 = parse_ring("ring x0,x1,x2,x3")
    for d in (1, 2):
        w = example_form(p3, d)
        out[f"example{d}"] = Binding(p3, Ideal(p3, list(w.coeffs)), w, f"cyclic degree-{d} example; ideal = coefficients")
    corpus = load_corpus()
    for r in corpus.rows:
        out[r.id] = Binding(r.ring(), r.ideal(), r.form(), r.label)
    for e in corpus.excluded:
        out[e.id] = Binding(e.ring(), e.ideal(), e.form(), e.label)
    ext = corpus.appendix.get("ext_lengths", [])
    if ext:
        ring = parse_ring(corpus.appendix["ring"])
        for i, item in enumerate(ext, 1):
            out[f"ext{i}"] = Binding(ring, parse_ideal(", ".join(item["ideal"]), ring), None, "appendix ideal")
    return out


# --------------------------------------------------------------------------
# output helpers
# --------------------------------------------------------------------------


def _emit(session: Session, data: dict, text: str) -> None:
    if session.output_mode == "json":
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _values(s: str | None) -> list[Fraction] | None:
    if s is None:
        return None
    try:
        return [Fraction(v) for v in s.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"bad --values {s!r}; expected comma-separated rationals") from None


def _vec(v) -> list[str]:
    return [str(c) for c in v]


# --------------------------------------------------------------------------
# ideal commands
# --------------------------------------------------------------------------


def cmd_gb(s: Session, a) -> int:
    I = s.ideal(a.ideal)
    gb = I.groebner_basis()
    _emit(s, {"groebner_basis": [format_poly(g) for g in gb]}, "\n".join(format_poly(g) for g in gb))
    return 0


def cmd_sat(s: Session, a) -> int:
    J = saturation(s.ideal(a.ideal))
    gens = [format_poly(g) for g in minimal_generators(J)] if J.is_homogeneous() else [format_poly(g) for g in J.gens]
    _emit(s, {"saturation": gens}, ", ".join(gens))
    return 0


def cmd_hf(s: Session, a) -> int:
    I = s.ideal(a.ideal)
    vals = [hilbert_function(I, k) for k in range(a.upto + 1)]
    _emit(s, {"hilbert_function": vals}, " ".join(str(v) for v in vals))
    return 0


def cmd_dim(s: Session, a) -> int:
    d = krull_dimension(s.ideal(a.ideal))
    _emit(s, {"projective_dim": d}, str(d))
    return 0


def cmd_syz(s: Session, a) -> int:
    I = s.ideal(a.ideal)
    M = syzygies(list(I.gens))
    cols = [[format_poly(e) for e in M.column(j)] for j in range(M.source.rank)]
    _emit(s, {"syzygies": cols}, "\n".join("(" + ", ".join(c) + ")" for c in cols))
    return 0


def cmd_res(s: Session, a) -> int:
    res = minimal_free_resolution(s.ideal(a.ideal))
    ranks = [m.source.rank for m in res.maps]
    lines = [f"F{k}: " + " + ".join(f"S(-{t})" for t in m.source.twists) for k, m in enumerate(res.maps)]
    data = {"ranks": ranks, "twists": [list(m.source.twists) for m in res.maps], "minimal": res.is_minimal()}
    _emit(s, data, "\n".join(lines))
    return 0


def cmd_betti(s: Session, a) -> int:
    from .syzygy import format_betti_grid

    res = minimal_free_resolution(s.ideal(a.ideal))
    _emit(s, {"betti": res.betti_json()}, format_betti_grid(res.betti()))
    return 0


def cmd_hp(s: Session, a) -> int:
    hp = hilbert_polynomial(s.ideal(a.ideal), via=a.via)
    _emit(s, {"hilbert_polynomial": str(hp)}, str(hp))
    return 0


def cmd_extlen(s: Session, a) -> int:
    I = s.ideal(a.ideal)
    J = ext_top_cyclic(I)
    n = tensor_length(J, I)
    _emit(s, {"ext_ideal": [format_poly(g) for g in J.gens], "length": n}, str(n))
    return 0


# --------------------------------------------------------------------------
# form commands
# --------------------------------------------------------------------------


def _specialized(s: Session, a) -> TwistedOneForm:
    w = s.form(a.form)
    vals = _values(getattr(a, "values", None))
    if vals is not None:
        w = w.specialize(vals)
    return w


def cmd_form(s: Session, a) -> int:
    w = _specialized(s, a)
    if a.action == "check-euler":
        ok = euler_relation_holds(w)
        _emit(s, {"euler_relation": ok}, "Euler relation holds" if ok else "Euler relation FAILS")
        return 0 if ok else 1
    if a.action == "integrable":
        if w.is_parametric:
            J = integrability_ideal(w)
            gens = [format_poly(g) for g in J.groebner_basis()]
            _emit(s, {"integrability_ideal": gens}, "integrable locus: " + (", ".join(gens) or "everywhere"))
            return 0
        ok = is_integrable(w)
        data = {"integrable": ok, "nonzero_components": [list(k) for k in wedge_integrability(w).nonzero_components()]}
        _emit(s, data, "integrable" if ok else "not integrable")
        return 0
    if a.action == "pfaffian":
        P = pfaffian4(skew_of_derivative(w))
        cert = pfaffian_certificate(w)
        _emit(s, {"pfaffian": format_poly(P), "certificate": cert}, format_poly(P))
        return 0 if cert else 1
    if a.action == "tangent-fields":
        fields = constant_tangent_fields(w)
        _emit(s, {"tangent_fields": [_vec(v) for v in fields]}, "\n".join("(" + ", ".join(_vec(v)) + ")" for v in fields) or "none")
        return 0
    raise UsageError(f"unknown form action {a.action}")


# --------------------------------------------------------------------------
# distribution commands
# --------------------------------------------------------------------------


def cmd_dist(s: Session, a) -> int:
    act = a.action
    if act in ("genform", "fiberdim"):
        I = s.ideal(a.input)
        if act == "genform":
            fam = generic_form(I, a.degree)
            _emit(s, {"form": format_form(fam.form), "params": list(fam.form.ring.param_vars)}, format_form(fam.form))
        else:
            syz = fiber_dimension(I, a.degree)
            orc = fiber_dimension(I, a.degree, via="oracle")
            _emit(s, {"fiber_linear_dim": syz, "oracle": orc}, str(syz))
            return 0 if syz == orc else 1
        return 0
    w = _specialized(s, a)
    if act == "sing":
        Z = singular_scheme(w)
        gens = [format_poly(g) for g in minimal_generators(Z)]
        _emit(s, {"singular_ideal": gens, "hilbert_polynomial": str(hilbert_polynomial(Z))}, ", ".join(gens))
        return 0
    if act == "verify-thm2":
        rep = verify_main_theorem2(w)
        text = "\n".join(f"{'PASS' if c.passed else 'FAIL'}  {c.name}" + (f"  [{c.detail}]" if c.detail else "") for c in rep.checks)
        _emit(s, rep.to_json(), text)
        return 0 if rep.ok else 1
    if act == "classify":
        rep = classify_degree1(w)
        text = f"bucket (c2, c3) = {tuple(rep.bucket)}  Hilbert polynomial {rep.hilbert_poly}  integrable {rep.integrable}"
        if rep.tangent_fields:
            text += "\ntangent field " + "(" + ", ".join(_vec(rep.tangent_fields[0])) + ")"
        _emit(s, rep.to_json(), text)
        return 0
    if act == "probe":
        vals = _values(a.values)
        if vals is None:
            raise UsageError("dist probe needs --values")
        base = s.ideal(a.ideal) if a.ideal else s.ideal(a.input) if a.input.startswith("@") else None
        if base is None:
            raise UsageError("dist probe needs --ideal for an inline form")
        form = s.form(a.input)
        fam = GenericFormFamily(form, saturation(base), form.degree, list(base.gens), [])
        r = degeneration_probe(fam, vals)
        _emit(s, r.to_json(), r.status + (f"  ({r.note})" if r.note else ""))
        return 0
    raise UsageError(f"unknown dist action {act}")


# --------------------------------------------------------------------------
# chern and corpus
# --------------------------------------------------------------------------


def _classes(text: str) -> tuple:
    try:
        return tuple(Fraction(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise UsageError(f"bad Chern class list {text!r}") from None


def cmd_chern(s: Session, a) -> int:
    if a.action == "chi":
        E = chern_to_character(ChernClassVector(a.rankE, _classes(a.cE)), a.n)
        F = chern_to_character(ChernClassVector(a.rankF, _classes(a.cF)), a.n)
        chi = chi_pair(E, F)
        data = {"chE_dual": _vec(E.dual().coeffs), "chF": _vec(F.coeffs), "chi": str(chi)}
        if a.ext1 is not None:
            data["dim_hom"] = str(chi + a.ext1)
        text = str(chi) if a.ext1 is None else f"{chi} + {a.ext1} = {chi + a.ext1}"
        _emit(s, data, text)
        return 0
    if a.action == "phi":
        v = phi(a.d, a.n)
        data = {"phi": v}
        ok = True
        if a.n <= 3:
            t = phi_top_chern(a.d, a.n)
            data["top_chern"] = str(t)
            ok = t == v
        _emit(s, data, str(v))
        return 0 if ok else 1
    raise UsageError(f"unknown chern action {a.action}")


def cmd_corpus(s: Session, a) -> int:
    if a.check is not None and a.check not in CHECK_NAMES:
        raise UsageError(f"unknown check {a.check!r}; choose from {', '.join(CHECK_NAMES)}")
    rep = run_regressions(a.table, a.case, a.check, jobs=a.jobs)
    if not rep.results:
        raise UsageError("no corpus rows match the selection")
    if a.junit:
        with open(a.junit, "w") as fh:
            fh.write(rep.to_junit())
    _emit(s, rep.to_json(), rep.to_text())
    return 0 if rep.passed else 1


def cmd_bindings(s: Session, a) -> int:
    rows = {k: {"ring": v.ring.header(), "ideal": v.ideal is not None, "form": v.form is not None, "note": v.note} for k, v in s.bindings.items()}
    text = "\n".join(f"@{k:<10} {v['note']}" for k, v in rows.items())
    _emit(s, rows, text)
    return 0


# --------------------------------------------------------------------------
# argument parsing
# --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="JSON output")
    common.add_argument("--ring", default=argparse.SUPPRESS, help=f"ring declaration (default {DEFAULT_RING!r})")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="parallel workers for corpus runs")

    p = _Parser(prog="singdist", description="Singular schemes of codimension-one distributions on projective space.")
    p.add_argument("--version", action="version", version=f"singdist {__version__}")
    p.add_argument("--json", action="store_true", default=False)
    p.add_argument("--ring", default=DEFAULT_RING)
    p.add_argument("--jobs", type=int, default=1)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def ideal_cmd(name, func, help_):
        q = sub.add_parser(name, parents=[common], help=help_)
        q.add_argument("ideal", help="generators, file:path or @binding")
        q.set_defaults(func=func)
        return q

    ideal_cmd("gb", cmd_gb, "reduced Gröbner basis")
    ideal_cmd("sat", cmd_sat, "saturation by the irrelevant ideal")
    ideal_cmd("hf", cmd_hf, "Hilbert function values").add_argument("--upto", type=int, default=6)
    ideal_cmd("dim", cmd_dim, "dimension of the projective scheme")
    ideal_cmd("syz", cmd_syz, "minimal syzygies of the generators")
    ideal_cmd("res", cmd_res, "minimal free resolution of the ideal")
    ideal_cmd("betti", cmd_betti, "Betti table")
    ideal_cmd("hp", cmd_hp, "Hilbert polynomial").add_argument("--via", choices=["resolution", "series"], default="resolution")
    ideal_cmd("extlen", cmd_extlen, "length of Ext^3(O_Z, O) ⊗ I_Z for a point scheme in P^2")

    q = sub.add_parser("form", parents=[common], help="1-form checks")
    q.add_argument("action", choices=["check-euler", "integrable", "pfaffian", "tangent-fields"])
    q.add_argument("form")
    q.add_argument("--values", help="specialize parameters first, e.g. 1,2")
    q.set_defaults(func=cmd_form)

    q = sub.add_parser("dist", parents=[common], help="distributions and their singular schemes")
    q.add_argument("action", choices=["sing", "genform", "fiberdim", "verify-thm2", "classify", "probe"])
    q.add_argument("input", help="a form (sing, verify-thm2, classify, probe) or an ideal (genform, fiberdim)")
    q.add_argument("--degree", type=int, default=1)
    q.add_argument("--values")
    q.add_argument("--ideal", help="base ideal for probe")
    q.set_defaults(func=cmd_dist, form=None)

    q = sub.add_parser("chern", parents=[common], help="Chern characters and Riemann-Roch")
    csub = q.add_subparsers(dest="action", parser_class=_Parser, required=True)
    c = csub.add_parser("chi", parents=[common])
    c.add_argument("--rankE", type=int, required=True)
    c.add_argument("--cE", required=True, help="c1,c2,c3")
    c.add_argument("--rankF", type=int, required=True)
    c.add_argument("--cF", required=True)
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--ext1", type=int, help="add dim Ext^1 to report dim Hom")
    c.set_defaults(func=cmd_chern)
    c = csub.add_parser("phi", parents=[common])
    c.add_argument("d", type=int)
    c.add_argument("n", type=int)
    c.set_defaults(func=cmd_chern)

    q = sub.add_parser("corpus", parents=[common], help="table regressions")
    csub = q.add_subparsers(dest="action", parser_class=_Parser, required=True)
    c = csub.add_parser("run", parents=[common])
    c.add_argument("--table", choices=["T2", "T3", "T4"])
    c.add_argument("--case", type=int)
    c.add_argument("--check")
    c.add_argument("--junit", metavar="PATH")
    c.set_defaults(func=cmd_corpus)

    q = sub.add_parser("bindings", parents=[common], help="list @name bindings")
    q.set_defaults(func=cmd_bindings)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            parser.print_help()
            return 2
        session = Session(parse_ring(args.ring), output_mode="json" if args.json else "text")
        session.bindings = builtin_bindings()
        if args.command == "dist" and args.action != "genform" and args.action != "fiberdim":
            args.form = args.input
        return args.func(session, args)
    except (UsageError, ParseError, CorpusError) as e:
        print(f"singdist: error: {e}", file=sys.stderr)
        return 2
    except (NotADistribution, CodimensionOneLocus, CheckFailed, GroebnerBudgetExceeded) as e:
        print(f"singdist: {type(e).__name__}: {e}", file=sys.stderr)
        return 1
    except ValueError as e:
        print(f"singdist: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
