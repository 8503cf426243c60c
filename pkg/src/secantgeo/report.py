"""Batch analysis: run the full pipeline on a chart or quadric system and
assemble a report with formula/oracle cross-checks and named verdicts.

Reports are deterministic: identical (input, seed, trials, order) produce
byte-identical JSON.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .defects import (DefectError, DefectReport, annihilator_matches_image_perp,
                      defect_report, fiber_contains_singloc_products,
                      fiber_dimension_identity, kernel_in_singular_locus,
                      quotient_singular_locus_match, tau_gauss_bound_check)
from .genericity import derive_stream
from .jets import JetChart, chart_at, chart_roundtrip_check, refined_third_form_cube, \
    second_fundamental_form
from .oracles import join_dimension, linear_project, tangent_join_dimension
from .polymaps import PolyMap, polymap_base_point, polymap_from_json
from .quadrics import (QuadricSystem, RankProfile, generic_vector, higher_secant_dimension,
                       is_tangentially_degenerate, quadric_system_from_json, rank_profile,
                       secant_dimension, tangential_dimension)
from .scalars import Scalar


@dataclass(frozen=True)
class AnalyzeOptions:
    seed: int = 0
    trials: int = 5
    order: int = 3
    k_max: int = 4


@dataclass(frozen=True)
class CrossCheck:
    quantity: str
    formula: int | None
    oracle: int | None

    @property
    def agree(self) -> bool | None:
        if self.formula is None or self.oracle is None:
            return None
        return self.formula == self.oracle


@dataclass(frozen=True)
class Verdict:
    name: str
    status: str  # pass | fail | not-applicable
    detail: str


@dataclass(frozen=True)
class AnalysisReport:
    descriptor: str
    input_kind: str
    options: AnalyzeOptions
    profile: RankProfile
    dims: dict
    defects: DefectReport
    defects_projected: DefectReport | None
    cross_checks: tuple[CrossCheck, ...]
    verdicts: tuple[Verdict, ...]


def load_input(obj):
    """Parse an input JSON object into (kind, map or None, base point or
    None, quadric system or None)."""
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError("input must be a JSON object with a 'kind' key")
    kind = obj["kind"]
    if kind == "poly_map":
        f = polymap_from_json(obj)
        base = polymap_base_point(obj)
        return "poly_map", f, base, None
    if kind == "quadric_system":
        return "quadric_system", None, None, quadric_system_from_json(obj)
    raise ValueError("unsupported input kind %r" % (kind,))


def _status(flag: bool | None) -> str:
    if flag is None:
        return "not-applicable"
    return "pass" if flag else "fail"


def analyze(obj, options: AnalyzeOptions = AnalyzeOptions(), descriptor: str | None = None,
            entry=None) -> AnalysisReport:
    """Run the full pipeline.  `obj` is a parsed input JSON object; a zoo
    entry may be passed directly instead."""
    if entry is not None:
        kind, f, base, s = "poly_map", entry.map, list(entry.base_point), None
        descriptor = descriptor or entry.name
    else:
        kind, f, base, s = load_input(obj)
        descriptor = descriptor or kind

    seed, trials = options.seed, options.trials
    jet: JetChart | None = None
    if f is not None:
        if base is None:
            base = [Scalar(0)] * f.domain_dim
        jet = chart_at(f, base, options.order)
        s = second_fundamental_form(jet)
    assert s is not None
    n, a = s.n, s.a
    ambient = n + a

    profile = rank_profile(s, derive_stream(seed, "profile"), trials)
    dim_tau = tangential_dimension(s, profile)
    tau_degenerate = is_tangentially_degenerate(s, profile)

    sec = None
    if jet is not None:
        sec = secant_dimension(s, jet, profile, derive_stream(seed, "secant"), trials)
    dim_sigma_formula = sec.dimension if sec is not None else None
    third_vanishes = sec.third_form_vanishes if sec is not None else None

    # sigma_k table: formula column is the span rule, which needs the cubic
    # form to vanish; with no chart the branch is unknown and the span value
    # is reported as-is
    sigma_rows = []
    for k in range(2, max(2, options.k_max) + 1):
        if k == 2:
            formula = dim_sigma_formula
            bound = n + profile.a0
        else:
            hk = higher_secant_dimension(s, k, profile, derive_stream(seed, "higher", k),
                                         trials)
            formula = hk.dimension if (third_vanishes is None or third_vanishes) else None
            bound = hk.bound
        sigma_rows.append({"k": k, "formula": formula, "bound": bound})

    # oracle columns
    oracle_x = oracle_tau = None
    oracle_sigma: dict[int, int] = {}
    tau_gauss = None
    if f is not None:
        oracle_x = join_dimension(f, 1, derive_stream(seed, "oracle", "x"), trials)
        oracle_tau = tangent_join_dimension(f, derive_stream(seed, "oracle", "tau"), trials)
        for k in range(2, max(2, options.k_max) + 1):
            oracle_sigma[k] = join_dimension(f, k, derive_stream(seed, "oracle", "join", k),
                                             trials)
        if tau_degenerate:
            tau_gauss = tau_gauss_bound_check(f, s, profile,
                                              derive_stream(seed, "oracle", "gauss"), trials)
    for row in sigma_rows:
        row["oracle"] = oracle_sigma.get(row["k"])
        have = [v for v in (row["formula"], row["oracle"]) if v is not None]
        row["within_bound"] = (max(have) <= row["bound"]) if have else None

    dim_sigma_best = oracle_sigma.get(2, dim_sigma_formula)
    sigma_degenerate = None
    if dim_sigma_best is not None:
        sigma_degenerate = dim_sigma_best < min(2 * n + 1, ambient)
    delta = (2 * n + 1 - dim_sigma_best) if dim_sigma_best is not None else None

    sigma_for_defects = dim_sigma_best if dim_sigma_best is not None else n + profile.a0
    defects = defect_report(s, profile, sigma_for_defects, derive_stream(seed, "defects"),
                            trials)

    # hypersurface reduction: when sigma is degenerate but tau is not a
    # hypersurface, the rank restriction applies to a generic projection to
    # a space where it is
    projected = None
    if f is not None and sigma_degenerate and profile.a0 < a - 1:
        proj = linear_project(f, n + profile.a0 + 1, derive_stream(seed, "projection"))
        jet2 = chart_at(proj, base, 3)
        s2 = second_fundamental_form(jet2)
        prof2 = rank_profile(s2, derive_stream(seed, "projection", "profile"), trials)
        sec2 = secant_dimension(s2, jet2, prof2, derive_stream(seed, "projection", "secant"),
                                trials)
        projected = defect_report(s2, prof2, sec2.dimension,
                                  derive_stream(seed, "projection", "defects"), trials)

    cross_checks = (
        CrossCheck("dim_x", n, oracle_x),
        CrossCheck("dim_tau", dim_tau, oracle_tau),
        *(CrossCheck("dim_sigma_%d" % row["k"], row["formula"], row["oracle"])
          for row in sigma_rows),
    )

    dims = {
        "n": n, "a": a, "ambient": ambient,
        "dim_tau": dim_tau,
        "dim_sigma": dim_sigma_formula,
        "delta_tau": n - profile.a0,
        "delta": delta,
        "tau_degenerate": tau_degenerate,
        "sigma_degenerate": sigma_degenerate,
        "third_form_vanishes": third_vanishes,
        "sigma_k": sigma_rows,
        "tau_gauss_fiber": tau_gauss.fiber_dim if tau_gauss else None,
    }

    verdicts = _verdicts(s, profile, jet, f, base, defects, projected, cross_checks,
                         sigma_rows, tau_gauss, sigma_degenerate, third_vanishes,
                         options)
    return AnalysisReport(descriptor, kind, options, profile, dims, defects, projected,
                          cross_checks, verdicts)


def _verdicts(s, profile, jet, f, base, defects: DefectReport,
              projected: DefectReport | None, cross_checks, sigma_rows, tau_gauss,
              sigma_degenerate, third_vanishes, options) -> tuple[Verdict, ...]:
    out = []
    out.append(Verdict("independent_system", _status(s.independent()),
                       "the quadrics are linearly independent" if s.independent()
                       else "degenerate system: some quadrics are dependent or zero"))

    pairs = [c for c in cross_checks if c.agree is not None]
    if pairs:
        ok = all(c.agree for c in pairs)
        bad = ", ".join("%s %s!=%s" % (c.quantity, c.formula, c.oracle)
                        for c in pairs if not c.agree)
        out.append(Verdict("formula_oracle_agreement", _status(ok),
                           "all %d cross-checked dimensions agree" % len(pairs) if ok
                           else "disagreement: " + bad))
    else:
        out.append(Verdict("formula_oracle_agreement", "not-applicable",
                           "no oracle columns for this input"))

    rows = [r for r in sigma_rows if r["within_bound"] is not None]
    ok = all(r["within_bound"] for r in rows) if rows else None
    out.append(Verdict("secant_superadditivity", _status(ok),
                       "dim sigma_k <= n + (k-1) a0 for k = %s" %
                       ",".join(str(r["k"]) for r in rows) if rows else "no sigma_k data"))

    if tau_gauss is not None:
        out.append(Verdict("tau_gauss_lower_bound", _status(tau_gauss.weak_bound_holds),
                           "fiber %d vs delta_tau + 1 = %d" %
                           (tau_gauss.fiber_dim, tau_gauss.delta_tau + 1)))
        out.append(Verdict("tau_gauss_smooth_bound", _status(tau_gauss.smooth_bound_holds),
                           "fiber %d vs delta_tau + 2 = %d (needs a smooth source)" %
                           (tau_gauss.fiber_dim, tau_gauss.delta_tau + 2)))
    else:
        detail = "tau is not degenerate" if f is not None else "needs a chart input"
        out.append(Verdict("tau_gauss_lower_bound", "not-applicable", detail))
        out.append(Verdict("tau_gauss_smooth_bound", "not-applicable", detail))

    rr = defects.rank_restriction
    rr_detail = "r = %d vs n - a + 2 = %d" % (rr.r, rr.lower)
    if not rr.applicable and projected is not None:
        rr = projected.rank_restriction
        rr_detail = "after generic projection to a hypersurface: r = %d vs n - a + 2 = %d" % \
            (rr.r, rr.lower)
    out.append(Verdict("rank_restriction", _status(rr.holds if rr.applicable else None),
                       rr_detail if rr.applicable else
                       "needs a degenerate secant variety and hypersurface tangential variety"))

    zb = defects.zak_bound
    zb_where = ""
    if not zb.applicable and projected is not None:
        zb = projected.zak_bound
        zb_where = " (after generic projection)"
    out.append(Verdict("zak_bound", _status(zb.holds if zb.applicable else None),
                       "a >= n/2 + 2 + fiber/2%s%s" %
                       (", equality" if zb.equality else "", zb_where)
                       if zb.applicable else
                       "needs a degenerate secant variety and hypersurface tangential variety"))

    cv = defects.clifford_verdict
    if cv.applicable:
        out.append(Verdict("clifford_fiber_condition", _status(cv.fiber_condition_ok),
                           "dim F_v = vertex_dim + 1"))
        out.append(Verdict("clifford_proportionality", _status(cv.proportionality_ok),
                           "minimal-subsystem restrictions to span{v} + ker II_v are proportional"))
        if cv.proportionality_ok:
            out.append(Verdict("clifford_identity", _status(cv.phi_v_is_identity),
                               "phi_v is the identity"))
            out.append(Verdict("clifford_relation", _status(cv.relation_holds),
                               "anticommutation with sign %+d on %d x %d kernel pairs; "
                               "module dim %d" % (cv.sign, cv.kernel_dim, cv.kernel_dim,
                                                  cv.module_dim)))
        else:
            out.append(Verdict("clifford_identity", "not-applicable", "no common quadric"))
            out.append(Verdict("clifford_relation", "not-applicable", "no common quadric"))
    else:
        for name in ("clifford_fiber_condition", "clifford_proportionality",
                     "clifford_identity", "clifford_relation"):
            out.append(Verdict(name, "not-applicable",
                               "tangential variety is not a hypersurface"))
    out.append(Verdict("so_membership", _status(defects.so_membership),
                       "each phi_w is skew for the annihilator pairing"
                       if defects.so_membership is not None else
                       "needs a one-dimensional annihilator in the hypersurface case"))

    # structural properties at 3 certified-generic vectors
    checks = (
        ("kernel_in_singular_locus", kernel_in_singular_locus),
        ("annihilator_matches_image_perp", annihilator_matches_image_perp),
        ("fiber_contains_singloc_products", fiber_contains_singloc_products),
        ("fiber_dimension_identity", fiber_dimension_identity),
        ("quotient_singular_locus_match", quotient_singular_locus_match),
    )
    stream = derive_stream(options.seed, "properties")
    vs = [generic_vector(s, profile, stream, options.trials) for _ in range(3)]
    for name, fn in checks:
        try:
            ok = all(fn(s, v) for v in vs)
            out.append(Verdict(name, _status(ok), "checked at 3 certified-generic vectors"))
        except DefectError as e:
            out.append(Verdict(name, "fail", str(e)))

    if jet is not None and sigma_degenerate:
        stream = derive_stream(options.seed, "third-form")
        ok = True
        for _ in range(5):
            v = generic_vector(s, profile, stream, options.trials)
            _, vanishes = refined_third_form_cube(jet, v)
            ok = ok and vanishes
        out.append(Verdict("third_form_vanishing", _status(ok),
                           "refined cubic form vanishes at 5 generic vectors"))
    else:
        out.append(Verdict("third_form_vanishing", "not-applicable",
                           "applies to charts with degenerate secant variety"))

    if jet is not None and f is not None:
        ok = chart_roundtrip_check(f, jet, derive_stream(options.seed, "roundtrip"))
        out.append(Verdict("chart_roundtrip", _status(ok),
                           "graph reproduces the chart along random curves"))
    else:
        out.append(Verdict("chart_roundtrip", "not-applicable", "needs a chart input"))
    return tuple(out)


def _defects_to_json(d: DefectReport) -> dict:
    cv = d.clifford_verdict
    return {
        "profile": _profile_to_json(d.profile),
        "vertex_dim": d.vertex_dim,
        "fiber_dim": d.fiber_dim,
        "minimal_subsystem": {"dim": d.minimal_subsystem.dim},
        "clifford_verdict": {
            "applicable": cv.applicable,
            "fiber_condition_ok": cv.fiber_condition_ok,
            "proportionality_ok": cv.proportionality_ok,
            "phi_v_is_identity": cv.phi_v_is_identity,
            "relation_holds": cv.relation_holds,
            "sign": cv.sign,
            "kernel_orthogonal_to_v": cv.kernel_orthogonal_to_v,
            "module_dim": cv.module_dim,
            "kernel_dim": cv.kernel_dim,
        },
        "so_membership": d.so_membership,
        "rank_restriction_ok": d.rank_restriction.holds if d.rank_restriction.applicable
        else None,
        "rank_restriction": {
            "applicable": d.rank_restriction.applicable,
            "holds": d.rank_restriction.holds,
            "r": d.rank_restriction.r,
            "lower": d.rank_restriction.lower,
        },
        "zak_bound_ok": d.zak_bound.holds if d.zak_bound.applicable else None,
        "zak_bound": {
            "applicable": d.zak_bound.applicable,
            "holds": d.zak_bound.holds,
            "equality": d.zak_bound.equality,
        },
    }


def _profile_to_json(p: RankProfile) -> dict:
    return {"a0": p.a0, "r": p.r, "dim_ker": p.dim_ker, "dim_ann": p.dim_ann,
            "dim_singloc": p.dim_singloc, "certified": p.certified}


def report_to_json(rep: AnalysisReport) -> dict:
    return {
        "kind": "analysis_report",
        "input": {"descriptor": rep.descriptor, "type": rep.input_kind},
        "options": {"seed": rep.options.seed, "trials": rep.options.trials,
                    "order": rep.options.order, "k_max": rep.options.k_max},
        "profile": _profile_to_json(rep.profile),
        "dims": rep.dims,
        "cross_checks": [
            {"quantity": c.quantity, "formula": c.formula, "oracle": c.oracle,
             "agree": c.agree} for c in rep.cross_checks
        ],
        "defects": _defects_to_json(rep.defects),
        "defects_projected": _defects_to_json(rep.defects_projected)
        if rep.defects_projected else None,
        "verdicts": [
            {"name": v.name, "status": v.status, "detail": v.detail}
            for v in rep.verdicts
        ],
    }


def render(rep: AnalysisReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report_to_json(rep), indent=2) + "\n"
    if fmt != "text":
        raise ValueError("format must be text or json")
    lines = []
    d = rep.dims
    lines.append("analysis of %s (%s)" % (rep.descriptor, rep.input_kind))
    lines.append("  n = %d  a = %d  ambient = %d" % (d["n"], d["a"], d["ambient"]))
    p = rep.profile
    lines.append("  profile: a0 = %d  r = %d  dim_ker = %d  dim_ann = %d  dim_singloc = %d"
                 % (p.a0, p.r, p.dim_ker, p.dim_ann, p.dim_singloc))
    lines.append("  delta_tau = %d  delta = %s  tau degenerate: %s  sigma degenerate: %s"
                 % (d["delta_tau"], d["delta"], d["tau_degenerate"], d["sigma_degenerate"]))
    lines.append("")
    lines.append("  %-14s %10s %10s %7s" % ("quantity", "formula", "oracle", "agree"))
    for c in rep.cross_checks:
        lines.append("  %-14s %10s %10s %7s" %
                     (c.quantity, _cell(c.formula), _cell(c.oracle), _cell(c.agree)))
    if d["tau_gauss_fiber"] is not None:
        lines.append("  tau Gauss fiber dimension: %d" % d["tau_gauss_fiber"])
    de = rep.defects
    lines.append("  vertex_dim = %d  fiber_dim = %d  minimal subsystem dim = %d"
                 % (de.vertex_dim, de.fiber_dim, de.minimal_subsystem.dim))
    lines.append("")
    for v in rep.verdicts:
        lines.append("  %-34s %-15s %s" % (v.name, v.status.upper(), v.detail))
    return "\n".join(lines) + "\n"


def _cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "NO"
    return str(x)
