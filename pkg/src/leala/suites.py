"""Run the checkers in dependency order and assemble one deterministic report.

Order: axioms (Jacobi, invariance, admissibility) -> root datum -> scaling ->
lattice -> PSD certificate -> structure.  A stage that cannot run because an
earlier stage failed is listed under ``skipped``.
"""
from __future__ import annotations

import json
from typing import Dict, List, Optional, Sequence

from .algebra import (FAIL, INCONCLUSIVE, PASS, CheckReport, GradedAlgebra, check_admissible,
                      check_grade_additivity, check_graded_orthogonality, check_invariance,
                      check_jacobi)
from .constructions import (BuilderRefusal, DiagonalPattern, SimpleType, build_nullity_zero,
                            check_witt_identities, validate_pattern)
from .roots import RootDatumError, build_root_datum, lemma_suite, scale_form
from .scalars import format_scalar
from .semidefinite import check_psd, kac_suite
from . import structure

SUITES = ("axioms", "lemmas", "kac", "structure")
REPORT_FORMAT = "leala-report v1"


def _expand(suite) -> List[str]:
    if suite in (None, "all"):
        return list(SUITES)
    if isinstance(suite, str):
        suite = [s for s in suite.split(",") if s]
    bad = [s for s in suite if s not in SUITES and s != "all"]
    if bad:
        raise ValueError(f"unknown suite(s): {', '.join(bad)}")
    return list(SUITES) if "all" in suite else [s for s in SUITES if s in suite]


def run(A: GradedAlgebra, suite="all", mode="exhaustive", seed: int = 0) -> dict:
    """Return a JSON-ready report dict; ``report["summary"]`` counts verdicts."""
    wanted = _expand(suite)
    reports: List[CheckReport] = []
    out: Dict[str, object] = {"format": REPORT_FORMAT,
                              "algebra": {"dim": A.dim, "field": A.field_name(),
                                          "cartan_dim": len(A.cartan), "window": A.window},
                              "manifest": {"suites": wanted, "mode": _mode_name(mode), "seed": seed},
                              "skipped": []}

    def add(section, rep):
        reports.append(rep)
        out.setdefault(section, []).append(rep.to_json())
        return rep

    if A.dim == 0:
        out["notes"] = ["trivial: R = {0}"]
        out["summary"] = _summary(reports)
        return out

    if "axioms" in wanted:
        add("axioms", check_jacobi(A, mode, seed))
        add("axioms", check_invariance(A, mode, seed))
        add("axioms", check_grade_additivity(A))
        add("axioms", check_graded_orthogonality(A))
    adm = check_admissible(A)
    if "axioms" in wanted:
        add("axioms", adm)
    if adm.failed:
        out["skipped"] = [s for s in wanted if s != "axioms"]
        out["summary"] = _summary(reports)
        return out
    D = build_root_datum(A)
    out["roots"] = D.summary()
    try:
        u, Ds = scale_form(D)
    except RootDatumError as e:
        out["skipped"] = [s for s in wanted if s != "axioms"]
        out["notes"] = [str(e)]
        out["summary"] = _summary(reports)
        return out
    out["roots"]["form_scale"] = format_scalar(u)
    if A.window.get("builder") == "witt" and "axioms" in wanted:
        add("axioms", check_witt_identities(A))
    if "lemmas" in wanted:
        for rep in lemma_suite(Ds, A):
            add("lemmas", rep)
    kac = None
    if "kac" in wanted or "structure" in wanted:
        try:
            kac = kac_suite(Ds)
        except ValueError as e:
            out.setdefault("notes", []).append(f"lattice: {e}")
    if "kac" in wanted and kac is not None:
        rad = kac["radical"]
        add("kac", check_psd(kac["lattice"].gram, A.window))
        add("kac", kac["quotient_report"])
        out["kac_data"] = {"nullity": rad.nullity, "lattice_dim": kac["lattice"].dim,
                           "null_rank": kac["null_rank"].to_json(), "radical": rad.to_json()}
    if "structure" in wanted:
        _structure(A, D, kac, add, out)
    out["summary"] = _summary(reports)
    return out


def _structure(A, D, kac, add, out):
    data: Dict[str, object] = {}
    C = structure.core(A, D)
    data["core"] = C.to_json()
    add("structure", structure.check_core_ideal(C))
    add("structure", structure.check_lie_torus_grading(C))
    add("structure", structure.check_s_sets(C))
    tame = add("structure", structure.check_tame(A, C))
    data["tame"] = structure.is_tame(tame)
    dec = add("structure", structure.check_decomposable(A, D))
    ind = structure.is_indecomposable(dec)
    data["decomposable"] = {None: "inconclusive-at-window", True: "indecomposable (certified)",
                            False: "decomposable (witness)"}[ind]
    if kac is not None:
        t = structure.recognize_finite_type(kac["quotient"], A.window.get("type"))
        data["type"] = t.to_json()
        data["type"]["text"] = t.describe()
        if kac["radical"].nullity == 0 and not A.overflow:
            sp = structure.split_nullity_zero(A, D)
            add("structure", sp.report)
            data["split"] = {k: v for k, v in sp.to_json().items() if k != "report"}
            add("structure", structure.check_core_simple(C))
            add("structure", structure.nullity_zero_triangle(A, D))
    if A.window.get("builder") == "nullity0" and A.window.get("patterns"):
        data["tower"] = _tower(A)
    out["structure_data"] = data


def _tower(A: GradedAlgebra) -> dict:
    """Outer tower test over this level and the next two ranks of the same series."""
    t = SimpleType.parse(A.window["type"])
    patterns = [DiagonalPattern.from_json(p) for p in A.window["patterns"]]
    tower = build_nullity_zero(t.series, [t.rank, t.rank + 1, t.rank + 2], patterns, validate=False)
    out = structure.outer_tower_test(tower).to_json()
    try:
        for p in patterns:
            validate_pattern(t.series, p)
        out["refused"] = None
    except BuilderRefusal as e:
        out["refused"] = str(e)
    return out


def _mode_name(mode) -> str:
    return mode if isinstance(mode, str) else f"sampled:{mode[1]}"


def _summary(reports: Sequence[CheckReport]) -> dict:
    s = {PASS: 0, FAIL: 0, INCONCLUSIVE: 0}
    for r in reports:
        s[r.verdict] += 1
    return {"pass": s[PASS], "fail": s[FAIL], "inconclusive": s[INCONCLUSIVE],
            "failed_checks": [r.check for r in reports if r.failed]}


def exit_code(report: dict) -> int:
    return 1 if report["summary"]["fail"] else 0


def dumps(report: dict) -> str:
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def render_text(report: dict) -> str:
    """Human readable report with the root system summary table."""
    lines = []
    alg = report["algebra"]
    win = alg["window"]
    title = win.get("builder", "algebra")
    if "type" in win:
        title += f" {win['type']}"
    lines.append(f"{title}: dim {alg['dim']}, dim H {alg['cartan_dim']}, field {alg['field']}")
    for n in report.get("notes", []):
        lines.append(f"note: {n}")
    if "roots" in report:
        r = report["roots"]
        lines.append(f"roots: |R| = {r['roots']}, |Rx| = {r['anisotropic']}, |R0| = {r['isotropic']} "
                     f"(0 counted in R, not in R0), form scale {r.get('form_scale', '1')}")
    sd = report.get("structure_data", {})
    kd = report.get("kac_data")
    if kd is not None or "type" in sd:
        lines.append("")
        lines.append("root system summary")
        ty = sd.get("type", {}).get("text", "-") if sd else "-"
        if ty == "unknown" and report.get("roots", {}).get("anisotropic") == 0:
            ty = "- (null system)"
        nul = str(kd["nullity"]) if kd else "-"
        nr = kd["null_rank"]["group_rank"] if kd else None
        row = [ty, nul, "-" if nr is None else f"{nr} (at window)"]
        head = ["type of R-bar", "nullity", "null rank"]
        w = [max(len(a), len(b)) for a, b in zip(head, row)]
        lines.append("  " + "  ".join(h.ljust(k) for h, k in zip(head, w)).rstrip())
        lines.append("  " + "  ".join(c.ljust(k) for c, k in zip(row, w)).rstrip())
    if sd:
        lines.append("")
        lines.append(f"core: dim {sd['core']['dim']}")
        lines.append(f"tame: {sd['tame']}")
        lines.append(f"decomposability: {sd['decomposable']}")
        if "split" in sd:
            lines.append(f"nullity-0 split: dim D = {len(sd['split']['D'])}, dim Z = {len(sd['split']['Z'])}")
        if "tower" in sd:
            tw = sd["tower"]
            sizes = ", ".join(str(lv["support"]) for lv in tw["levels"])
            state = "stabilizing" if tw["stabilized"] else "not stabilizing"
            lines.append(f"tower: support sizes {sizes} ({state})")
    lines.append("")
    lines.append("checks")
    for section in ("axioms", "lemmas", "kac", "structure"):
        for rep in report.get(section, []):
            st = rep.get("stats", {})
            extra = f" ({st.get('inconclusive')} undecided)" if st.get("inconclusive") else ""
            lines.append(f"  [{section}] {rep['check']}: {rep['verdict']}{extra}")
    if report.get("skipped"):
        lines.append(f"skipped: {', '.join(report['skipped'])}")
    s = report["summary"]
    lines.append(f"summary: {s['pass']} pass, {s['fail']} fail, {s['inconclusive']} inconclusive")
    return "\n".join(lines) + "\n"
