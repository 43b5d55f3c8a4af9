"""Regression corpus: the classified ideals, their generic forms and expected invariants.

The data lives in ``data/corpus.json``.  :func:`run_regressions` recomputes
every invariant of every row from scratch and reports one check per
property.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from xml.etree import ElementTree as ET

from .distributions import (
    Check,
    CodimensionOneLocus,
    GenericFormFamily,
    check_no_hypersurface,
    degeneration_probe,
    forms_oracle,
    generic_form,
    same_span,
    singular_scheme,
)
from .forms import (
    TwistedOneForm,
    apply_to_vector,
    constant_tangent_fields,
    contract_radial,
    integrability_ideal,
    is_integrable,
    promote_parameters,
)
from .groebner import Ideal, radical_contains, saturation
from .parsing import format_form, parse_form, parse_poly, parse_ring
from .polyring import RingSpec
from .syzygy import betti_from_json, hilbert_polynomial, linear_syzygy_space, minimal_free_resolution


class CorpusError(ValueError):
    pass


@dataclass
class TableRow:
    table: str
    case: int
    label: str
    ideal_text: list
    form_text: str
    h_text: str
    params: str
    expected_hp: str
    expected_fiber_dim: int
    expected_betti: dict
    degree: int = 1
    tangent_field: list | None = None
    integrability: dict | None = None
    probe: dict = field(default_factory=dict)
    printed_form: str | None = None
    printed_h: str | None = None
    printed_tangent_field: list | None = None
    erratum: str | None = None
    ring_decl: str = "ring x,y,z,w"

    @property
    def id(self) -> str:
        return f"{self.table}-{self.case}"

    def ring(self) -> RingSpec:
        return parse_ring(f"{self.ring_decl} params {self.params}")

    def base_ring(self) -> RingSpec:
        return parse_ring(self.ring_decl)

    def ideal(self) -> Ideal:
        ring = self.base_ring()
        return Ideal(ring, [parse_poly(g, ring) for g in self.ideal_text])

    def form(self) -> TwistedOneForm:
        return parse_form(self.form_text, self.ring())

    def h(self):
        pr = RingSpec(self.ring().param_vars)
        return parse_poly(self.h_text, pr)


@dataclass
class ExcludedRecord:
    name: str
    table: str
    case: int
    label: str
    ideal_text: list
    form_text: str
    params: str
    expect: str  # "codimension-one" or "larger"
    samples: list
    independent_of: str | None = None
    printed_form: str | None = None
    erratum: str | None = None
    ring_decl: str = "ring x,y,z,w"

    @property
    def id(self) -> str:
        return self.name

    def ring(self) -> RingSpec:
        return parse_ring(f"{self.ring_decl} params {self.params}")

    def ideal(self) -> Ideal:
        ring = parse_ring(self.ring_decl)
        return Ideal(ring, [parse_poly(g, ring) for g in self.ideal_text])

    def form(self) -> TwistedOneForm:
        return parse_form(self.form_text, self.ring())


@dataclass
class Corpus:
    version: str
    rows: list
    excluded: list
    appendix: dict

    def select(self, table: str | None = None, case: int | None = None) -> list:
        items = list(self.rows) + list(self.excluded)
        if table is not None:
            items = [r for r in items if r.table == table]
        if case is not None:
            items = [r for r in items if r.case == case]
        return items


def load_corpus(path: str | None = None) -> Corpus:
    try:
        if path is None:
            text = resources.files("singdist").joinpath("data/corpus.json").read_text()
        else:
            with open(path) as fh:
                text = fh.read()
        data = json.loads(text)
        if data.get("schema") != 1:
            raise CorpusError(f"unsupported corpus schema {data.get('schema')!r}")
        ring_decl = data["ring"]
        tables = data["tables"]
        rows = []
        for r in data["rows"]:
            t = tables[r["table"]]
            rows.append(
                TableRow(
                    table=r["table"],
                    case=r["case"],
                    label=r["label"],
                    ideal_text=r["ideal"],
                    form_text=r["form"],
                    h_text=r["h"],
                    params=t["params"],
                    expected_hp=t["hilbert_polynomial"],
                    expected_fiber_dim=t["fiber_linear_dim"],
                    expected_betti=t["betti"],
                    degree=data["degree"],
                    tangent_field=r.get("tangent_field"),
                    integrability=r.get("integrability"),
                    probe=r.get("probe", {}),
                    printed_form=r.get("printed_form"),
                    printed_h=r.get("printed_h"),
                    printed_tangent_field=r.get("printed_tangent_field"),
                    erratum=r.get("erratum"),
                    ring_decl=ring_decl,
                )
            )
        excluded = [
            ExcludedRecord(
                name=e["name"],
                table=e["table"],
                case=e["case"],
                label=e["label"],
                ideal_text=e["ideal"],
                form_text=e["form"],
                params=e["params"],
                expect=e["expect"],
                samples=e["samples"],
                independent_of=e.get("independent_of"),
                printed_form=e.get("printed_form"),
                erratum=e.get("erratum"),
                ring_decl=ring_decl,
            )
            for e in data["excluded"]
        ]
        return Corpus(data["version"], rows, excluded, data.get("appendix", {}))
    except (KeyError, TypeError, json.JSONDecodeError) as e:
        raise CorpusError(f"corpus file is corrupt: {e}") from None


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------


CHECK_NAMES = (
    "parse",
    "contraction",
    "hypersurface-guard",
    "span",
    "hilbert-polynomial",
    "fiber-dim",
    "linear-syzygies",
    "resolution",
    "h-probe",
    "integrability",
    "tangent-field",
    "excluded",
)


def _family(row, I: Ideal) -> GenericFormFamily:
    form = row.form()
    return GenericFormFamily(form, saturation(I), row.degree, list(I.gens), [])


def _h_value(row: TableRow, values):
    return row.h().evaluate(values)


def _run_check(row: TableRow, name: str) -> Check:
    I = row.ideal()
    d = row.degree
    if name == "parse":
        form = row.form()
        again = parse_form(format_form(form), row.ring())
        return Check(name, again == form and len(form.ring.param_vars) == row.expected_fiber_dim)
    if name == "contraction":
        return Check(name, contract_radial(row.form()).is_zero)
    if name == "hypersurface-guard":
        try:
            check_no_hypersurface(saturation(I), d)
            return Check(name, True)
        except ValueError as e:
            return Check(name, False, str(e))
    if name == "span":
        fam = generic_form(I, d)
        return Check(name, same_span(fam.members(), row.form().param_components()[1:]))
    if name == "hilbert-polynomial":
        hp = hilbert_polynomial(I)
        return Check(name, str(hp) == row.expected_hp, str(hp))
    if name == "fiber-dim":
        syz = generic_form(I, d).fiber_linear_dim
        orc = len(forms_oracle(saturation(I), d))
        ok = syz == orc == row.expected_fiber_dim
        return Check(name, ok, f"syzygy {syz}, oracle {orc}")
    if name == "linear-syzygies":
        a = linear_syzygy_space(list(I.gens), "groebner")
        b = linear_syzygy_space(list(I.gens), "oracle")
        ok = a.dim == b.dim == row.expected_fiber_dim and a.same_span(b)
        return Check(name, ok, f"groebner {a.dim}, oracle {b.dim}")
    if name == "resolution":
        res = minimal_free_resolution(I)
        ok = res.betti() == betti_from_json(row.expected_betti) and res.is_complex() and res.is_minimal()
        return Check(name, ok, json.dumps(res.betti_json(), sort_keys=True))
    if name == "h-probe":
        fam = _family(row, I)
        details = []
        ok = True
        eq = row.probe.get("equal")
        if eq is not None:
            r = degeneration_probe(fam, eq)
            ok &= _h_value(row, eq) != 0 and r.status == "EQUAL"
            details.append(f"{eq}: {r.status}")
        lg = row.probe.get("larger")
        if lg is not None:
            r = degeneration_probe(fam, lg)
            ok &= _h_value(row, lg) == 0 and r.status == "LARGER"
            details.append(f"{lg}: {r.status} {r.hilbert_poly if r.hilbert_poly is not None else r.note}")
        return Check(name, ok, "; ".join(details))
    if name == "integrability":
        spec = row.integrability
        if not spec:
            return Check(name, True, "not stated")
        form = row.form()
        J = integrability_ideal(form)
        if spec["kind"] == "always":
            return Check(name, not J.gens, "ω∧dω vanishes identically in the parameters")
        if spec["kind"] == "not-always":
            eq = row.probe.get("equal")
            ok = bool(J.gens) and _h_value(row, eq) != 0 and not is_integrable(form, eq)
            return Check(name, ok, f"non-integrable at {eq}")
        if spec["kind"] == "locus":
            # The locus L must be integrable, and every integrable point off
            # h = 0 must lie on L: g*h in rad(J) for each generator g of L.
            pr = J.ring
            gens = [pr.var(v) for v in spec["vanishing"]]
            gens += [parse_poly(g, pr) for g in spec.get("relations", [])]
            h = row.h()
            locus = Ideal(pr, gens)
            contained = locus.contains_ideal(J)
            inside = all(radical_contains(J, g * h) for g in gens)
            samples_ok = all(
                h.evaluate(s) != 0 and is_integrable(form, s) for s in spec.get("integrable_samples", [])
            )
            samples_ok &= not any(is_integrable(form, s) for s in spec.get("non_integrable_samples", []))
            ok = inside and contained and samples_ok
            desc = ", ".join([f"{v} = 0" for v in spec["vanishing"]] + [f"{g} = 0" for g in spec.get("relations", [])])
            return Check(name, ok, f"integrable off h = 0 iff {desc}")
        return Check(name, False, f"unknown integrability kind {spec['kind']!r}")
    if name == "tangent-field":
        if not row.tangent_field:
            return Check(name, True, "not stated")
        form = row.form()
        coeffs = [promote_parameters(a) for a in form.coeffs]
        big = coeffs[0].ring
        v = [parse_poly(s, big) for s in row.tangent_field]
        total = big.zero()
        for a, vi in zip(coeffs, v):
            total = total + a * vi
        ok = total.is_zero
        eq = row.probe.get("equal")
        spec_form = form.specialize(eq)
        fields = constant_tangent_fields(spec_form)
        at = [vi.evaluate([0, 0, 0, 0] + list(eq)) for vi in v]
        ok &= len(fields) == 1 and _proportional(fields[0], at)
        return Check(name, ok, f"field at {eq}: {[str(c) for c in at]}")
    if name == "excluded":
        return Check(name, True, "table row")
    raise ValueError(f"unknown check {name!r}")


def _proportional(a, b) -> bool:
    return all(a[i] * b[j] == a[j] * b[i] for i in range(len(a)) for j in range(len(a))) and any(b)


def _run_excluded(rec: ExcludedRecord, name: str) -> Check:
    I = rec.ideal()
    if name == "parse":
        form = rec.form()
        return Check(name, parse_form(format_form(form), rec.ring()) == form)
    if name == "contraction":
        return Check(name, contract_radial(rec.form()).is_zero)
    if name == "span":
        fam = generic_form(I, 1)
        return Check(name, same_span(fam.members(), rec.form().param_components()[1:]), f"dim {fam.fiber_linear_dim}")
    if name == "excluded":
        form = rec.form()
        base = saturation(I)
        details = []
        ok = True
        if rec.independent_of:
            k = form.ring.index(rec.independent_of)
            free = form.coeffs[k].is_zero and all(m[k] == 0 for c in form.coeffs for (m, _) in c.terms)
            ok &= free
            details.append(f"independent of {rec.independent_of}: {free}")
        for s in rec.samples:
            omega = form.specialize(s)
            if rec.expect == "codimension-one":
                try:
                    singular_scheme(omega)
                    ok = False
                    details.append(f"{s}: accepted")
                except CodimensionOneLocus as e:
                    details.append(f"{s}: common factor {e.witness}")
            else:
                try:
                    Z = singular_scheme(omega)
                except CodimensionOneLocus as e:
                    ok = False
                    details.append(f"{s}: common factor {e.witness}")
                    continue
                strictly = base.contains_ideal(Z) and not Z.contains_ideal(base)
                ok &= strictly
                details.append(f"{s}: {'strictly larger' if strictly else 'not larger'}, hp {hilbert_polynomial(Z)}")
        return Check(name, ok, "; ".join(details))
    return Check(name, True, "not applicable")


EXCLUDED_CHECKS = ("parse", "contraction", "span", "excluded")
ROW_CHECKS = tuple(c for c in CHECK_NAMES if c != "excluded")


@dataclass
class RowResult:
    id: str
    kind: str  # "row" or "excluded"
    checks: list

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json(self) -> dict:
        return {"id": self.id, "kind": self.kind, "pass": self.passed, "checks": [c.to_json() for c in self.checks]}


def run_item(item, check: str | None = None) -> RowResult:
    if isinstance(item, TableRow):
        names = ROW_CHECKS if check is None else [check]
        runner, kind = _run_check, "row"
    else:
        names = EXCLUDED_CHECKS if check is None else [check]
        runner, kind = _run_excluded, "excluded"
    checks = []
    for n in names:
        try:
            checks.append(runner(item, n))
        except Exception as e:  # a crashing check is a failing check
            checks.append(Check(n, False, f"{type(e).__name__}: {e}"))
    return RowResult(item.id, kind, checks)


def _run_indexed(args):
    path, idx, check = args
    corpus = load_corpus(path)
    items = corpus.rows + corpus.excluded
    return run_item(items[idx], check)


@dataclass
class CorpusReport:
    version: str
    results: list

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        rows = [r for r in self.results if r.kind == "row"]
        return {
            "schema": 1,
            "corpus_version": self.version,
            "summary": {
                "rows": len(rows),
                "rows_passed": sum(r.passed for r in rows),
                "excluded": len(self.results) - len(rows),
                "excluded_passed": sum(r.passed for r in self.results if r.kind == "excluded"),
            },
            "results": [r.to_json() for r in self.results],
        }

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            failed = [c.name for c in r.checks if not c.passed]
            extra = f"  failed: {', '.join(failed)}" if failed else ""
            lines.append(f"{r.id:<10} {r.kind:<8} {status}  ({len(r.checks)} checks){extra}")
        s = self.to_json()["summary"]
        lines.append(f"rows {s['rows_passed']}/{s['rows']} passed, excluded {s['excluded_passed']}/{s['excluded']} passed")
        return "\n".join(lines)

    def to_junit(self) -> str:
        suite = ET.Element("testsuite", name="corpus", tests=str(sum(len(r.checks) for r in self.results)))
        failures = 0
        for r in self.results:
            for c in r.checks:
                tc = ET.SubElement(suite, "testcase", classname=r.id, name=c.name)
                if not c.passed:
                    failures += 1
                    f = ET.SubElement(tc, "failure", message=c.detail or "check failed")
                    f.text = c.detail
        suite.set("failures", str(failures))
        return ET.tostring(suite, encoding="unicode")


def run_regressions(
    table: str | None = None,
    case: int | None = None,
    check: str | None = None,
    jobs: int = 1,
    path: str | None = None,
) -> CorpusReport:
    corpus = load_corpus(path)
    if check is not None and check not in CHECK_NAMES:
        raise ValueError(f"unknown check {check!r}; choose from {', '.join(CHECK_NAMES)}")
    items = corpus.rows + corpus.excluded
    chosen = corpus.select(table, case)
    if jobs > 1 and len(chosen) > 1:
        idx = [items.index(it) for it in chosen]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_indexed, [(path, i, check) for i in idx]))
    else:
        results = [run_item(it, check) for it in chosen]
    return CorpusReport(corpus.version, results)


def conic_point_ideals(corpus: Corpus | None = None) -> list[Ideal]:
    corpus = corpus or load_corpus()
    return [r.ideal() for r in corpus.rows if r.table == "T4"]


def all_ideals(corpus: Corpus | None = None) -> list[tuple[str, Ideal, int]]:
    corpus = corpus or load_corpus()
    out = [(r.id, r.ideal(), r.degree) for r in corpus.rows]
    out += [(e.id, e.ideal(), 1) for e in corpus.excluded]
    return out


__all__ = [
    "TableRow",
    "ExcludedRecord",
    "Corpus",
    "load_corpus",
    "run_regressions",
    "CorpusReport",
    "CHECK_NAMES",
]
