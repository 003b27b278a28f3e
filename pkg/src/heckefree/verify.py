"""Independent verification of catalog data and completed tables.

Three layers, deliberately decoupled from how entries were derived:

* relation checks in W: every catalogued relation (and any check-only
  companion) must act identically on all points of the regular action;
* module-action checks: on a complete table, x_l.u = x_l.v for every
  relation u = v, recomputed strictly through the table, plus the quadratic
  identity (x_l.s).s = (q-1)(x_l.s) + q x_l for every entry;
* the q = 1 oracle: each filled entry, specialised at q = 1, must collapse
  to a single group-algebra term w . x_{l.s} with rep(l) s = w rep(l.s)
  in W -- at q = 1 the Hecke module degenerates to the permutation action,
  which is computed by entirely different code.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .enumerate import CosetAction, todd_coxeter
from .freeness import FillReport, ModuleVector, MultTable, apply_letter, apply_word, unit_vector
from .laurent import Q, QM1
from .presentations import Presentation, Relation, Word


class IncompleteTableError(ValueError):
    pass


@dataclass(frozen=True)
class CheckReport:
    relations_checked: int
    points: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def check_relations_in_W(
    pres: Presentation,
    checks: Iterable[Relation] = (),
    regular: CosetAction | None = None,
) -> CheckReport:
    """Every relation must hold at every point of the regular action of W.

    This is a necessary condition for the catalogued relations to be valid
    in the braid group; a failure means a transcription error.
    """
    if regular is None:
        regular = todd_coxeter(pres, ())
    violations = []
    rels = list(pres.relations) + list(checks)
    for rel in rels:
        for i in range(regular.n):
            if regular.trace(i, rel.lhs) != regular.trace(i, rel.rhs):
                violations.append(f"relation {rel} fails at coset {i + 1}")
                break
    return CheckReport(len(rels), regular.n, tuple(violations))


@dataclass(frozen=True)
class ActionReport:
    relations_checked: int
    quadratics_checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _verify_rows(table: MultTable, pres: Presentation, rows: Sequence[int]) -> list[str]:
    alg = table.alg
    unit_coeff = alg.unit()
    violations = []
    for l in rows:
        x_l = unit_vector(alg, l)
        for rel in pres.relations:
            a = apply_word(x_l, rel.lhs, table)
            b = apply_word(x_l, rel.rhs, table)
            if a is None or b is None or a != b:
                violations.append(f"x_{l + 1}: relation {rel} violated")
        for s in range(1, table.ngens + 1):
            e = table.get(l, s)
            twice = apply_letter(e, s, False, table)
            expect = QM1 * e + ModuleVector(alg, {l: Q * unit_coeff})
            if twice != expect:
                violations.append(f"x_{l + 1}: quadratic relation violated at s={s}")
    return violations


def verify_action(table: MultTable, pres: Presentation, jobs: int = 1) -> ActionReport:
    """Certify that a complete table defines a right H-module action on the
    span of the x_l: all defining relations and all quadratic relations hold
    when recomputed strictly through the table."""
    if not table.complete:
        raise IncompleteTableError("verify_action needs a complete table")
    n = table.n
    if jobs > 1:
        chunks = [range(i, n, jobs) for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = pool.map(_verify_rows, [table] * jobs, [pres] * jobs, chunks)
        violations = [v for chunk in results for v in chunk]
        violations.sort()
    else:
        violations = _verify_rows(table, pres, range(n))
    return ActionReport(
        relations_checked=n * len(pres.relations),
        quadratics_checked=n * table.ngens,
        violations=tuple(violations),
    )


@dataclass(frozen=True)
class Q1Report:
    entries_checked: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def q1_oracle(table: MultTable, regular: CosetAction) -> Q1Report:
    """Check every filled entry against the q = 1 specialisation.

    The entry for x_l.s must specialise to a single term w . x_k with
    k = l.s in the coset graph and rep(l) * s = w * rep(k) in W, evaluated
    in the regular action of W.
    """
    graph = table.graph
    alg = table.alg
    data = alg.data
    violations = []
    checked = 0
    e = regular.basepoint
    for l in range(table.n):
        for s in range(1, table.ngens + 1):
            entry = table.get(l, s)
            if entry is None:
                continue
            checked += 1
            spec = entry.eval_q1()
            k = graph.neighbor(l, s)
            if set(spec) != {k} or len(spec[k]) != 1:
                violations.append(f"x_{l + 1}.{s}: q=1 image is not a single term")
                continue
            (w, mult), = spec[k].items()
            if mult != 1:
                violations.append(f"x_{l + 1}.{s}: q=1 multiplicity {mult} != 1")
                continue
            lhs = regular.trace(e, graph.repword[l])
            lhs = regular.act(lhs, s)
            rhs = e
            for g in data.redword[w]:
                rhs = regular.act(rhs, g)
            rhs = regular.trace(rhs, graph.repword[k])
            if lhs != rhs:
                violations.append(
                    f"x_{l + 1}.{s}: rep({l + 1})*{s} != w*rep({k + 1}) in W"
                )
    return Q1Report(checked, tuple(violations))


def emit_basis(table: MultTable) -> tuple[str, ...]:
    """The representative words, in canonical order, as the free-module
    basis exhibited by a completed table; refuses on incomplete tables."""
    if not table.complete:
        raise IncompleteTableError(
            f"table has {len(table.missing())} missing entries; no basis to emit"
        )
    return tuple(str(w) for w in table.graph.repword)


def build_report(
    case: str,
    spec_text: str,
    table: MultTable,
    fill: FillReport,
    action_report: ActionReport | None = None,
    q1_report: Q1Report | None = None,
    relation_report: CheckReport | None = None,
) -> dict:
    """The JSON-ready verification report for one run."""
    n = table.n
    w0 = table.alg.data.n
    report: dict = {
        "case": case,
        "ordering": spec_text,
        "n": n,
        "w0_order": w0,
        "filled": fill.filled,
        "missing": len(fill.missing),
        "missing_entries": [f"x_{l + 1}.{s}" for l, s in fill.missing],
        "relations_checked": action_report.relations_checked if action_report else 0,
        "quadratics_checked": action_report.quadratics_checked if action_report else 0,
        "violations": list(action_report.violations) if action_report else [],
    }
    if q1_report is not None:
        report["q1_entries_checked"] = q1_report.entries_checked
        report["violations"] += list(q1_report.violations)
    if relation_report is not None:
        report["relations_in_W_checked"] = relation_report.relations_checked
        report["violations"] += list(relation_report.violations)
    if not fill.missing and action_report is not None and action_report.ok:
        # a complete verified table spans H over H0 with |W/W0| generators,
        # hence H is spanned by |W0| * |W/W0| = |W| coefficients over
        # Z[q,q^-1]
        report["spanned_by"] = w0 * n
    return report
