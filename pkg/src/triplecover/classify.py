"""Classification of cover specifications: flag bundle vs cubic surface.

A cover can be given as a ternary cubic on the dual plane, as a torus pair
(G2, G3), or as raw chart data (a, b, c, d).  The report carries the branch
form, its S + 2T decomposition, the total-branch locus and the certificates
backing the verdict.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import cover as cover_mod
from . import etamap, torus
from .cover import AffineCoverData, BranchDecomposition
from .errors import (
    DegenerateCover,
    DegenerateCubic,
    IndeterminateCount,
    MultiplicityTooHigh,
    TripleCoverError,
)
from .polyring import MPoly, U_VARS, V_VARS, X_VARS, dehomogenize, divides, homogenize

CASE_FLAG_BUNDLE = "FlagBundle"
CASE_CUBIC_SURFACE = "CubicSurface"
CASE_NOT_NORMAL = "NotNormal"
CASE_INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class CoverSpec:
    kind: str  # "flag" | "torus" | "raw"
    flag_cubic: etamap.TernaryCubic | None = None
    torus_pair: torus.TorusPair | None = None
    raw: AffineCoverData | None = None

    @classmethod
    def flag(cls, cubic: etamap.TernaryCubic) -> "CoverSpec":
        return cls("flag", flag_cubic=cubic)

    @classmethod
    def torus(cls, pair: torus.TorusPair) -> "CoverSpec":
        return cls("torus", torus_pair=pair)

    @classmethod
    def raw_data(cls, cov: AffineCoverData) -> "CoverSpec":
        return cls("raw", raw=cov)


@dataclass
class ClassificationReport:
    case: str
    branch_form: MPoly | None = None
    decomposition: BranchDecomposition | None = None
    total_branch: dict = field(default_factory=dict)
    certificates: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)


# ---------------------------------------------------------------------------
# A2 cusp jet criterion


def a2_cusp_check(branch_form: MPoly, point) -> dict:
    """Jet test for an ordinary cusp of a plane curve at a rational point.

    The quadratic jet at the point must be a nonzero perfect square l^2 and
    l must not divide the cubic jet.
    """
    if branch_form.vars != X_VARS:
        raise TripleCoverError("branch form must live in (x0, x1, x2)")
    point = tuple(Fraction(c) for c in point)
    pivot = next((i for i, c in enumerate(point) if c), None)
    if pivot is None:
        raise TripleCoverError("zero vector is not a projective point")
    point = tuple(c / point[pivot] for c in point)
    perm = list(range(3))
    perm[0], perm[pivot] = perm[pivot], perm[0]
    rotated = branch_form.permute_vars(perm)
    chart = dehomogenize(rotated, U_VARS)
    p = [point[i] for i in range(3) if i != pivot]
    translated = chart.substitute(
        {
            "u1": MPoly.variable(U_VARS, "u1") + p[0],
            "u2": MPoly.variable(U_VARS, "u2") + p[1],
        },
        U_VARS,
    )
    jets = {}
    for exps, c in translated.terms.items():
        jets.setdefault(sum(exps), {})[exps] = c
    f0 = MPoly(U_VARS, jets.get(0, {}))
    f1 = MPoly(U_VARS, jets.get(1, {}))
    f2 = MPoly(U_VARS, jets.get(2, {}))
    f3 = MPoly(U_VARS, jets.get(3, {}))
    result = {
        "point": point,
        "on_curve": f0.is_zero(),
        "singular": f0.is_zero() and f1.is_zero(),
        "is_cusp": False,
        "quadratic_jet": f2,
        "cubic_jet": f3,
    }
    if not (result["on_curve"] and result["singular"]) or f2.is_zero():
        return result
    alpha = f2.terms.get((2, 0), Fraction(0))
    beta = f2.terms.get((1, 1), Fraction(0))
    gamma = f2.terms.get((0, 2), Fraction(0))
    if beta * beta - 4 * alpha * gamma != 0:
        return result  # rank-2 jet: node, not a cusp
    u1 = MPoly.variable(U_VARS, "u1")
    u2 = MPoly.variable(U_VARS, "u2")
    if alpha:
        line = 2 * alpha * u1 + beta * u2
    elif gamma:
        line = beta * u1 + 2 * gamma * u2
    else:
        return result  # beta = 0 too, so f2 = 0: handled above
    result["square_root"] = line
    divides_cubic, _ = divides(line, f3)
    result["is_cusp"] = not divides_cubic
    return result


# ---------------------------------------------------------------------------
# Raw data recognition


def _match_torus(cov: AffineCoverData) -> torus.TorusPair | None:
    """Recognize the normal form (0, 1, -2*G3', G2') exactly."""
    if not cov.a.is_zero() or cov.b != 1:
        return None
    g2_chart = cov.d
    g3_chart = cov.c / Fraction(-2)
    if g2_chart.total_degree() > 2 or g3_chart.total_degree() > 3:
        return None
    return torus.TorusPair(
        homogenize(g2_chart, 2, X_VARS),
        homogenize(g3_chart, 3, X_VARS),
    )


def _match_flag(cov: AffineCoverData) -> etamap.TernaryCubic | None:
    """Invert the eta formulas linearly and verify the match exactly."""
    b, c = cov.b, cov.c
    allowed_b = {(3, 0), (2, 0), (1, 0), (0, 0)}
    allowed_c = {(0, 3), (0, 2), (0, 1), (0, 0)}
    if any(e not in allowed_b for e in b.terms):
        return None
    if any(e not in allowed_c for e in c.terms):
        return None
    t1 = b.terms.get((3, 0), Fraction(0))
    t2 = -b.terms.get((2, 0), Fraction(0)) / 3
    t4 = b.terms.get((1, 0), Fraction(0)) / 3
    t7 = -b.terms.get((0, 0), Fraction(0))
    t3 = c.terms.get((0, 2), Fraction(0)) / 3
    t6 = -c.terms.get((0, 1), Fraction(0)) / 3
    t10 = c.terms.get((0, 0), Fraction(0))
    if c.terms.get((0, 3), Fraction(0)) != -t1:
        return None
    t5 = -cov.a.terms.get((1, 0), Fraction(0))
    t8 = cov.a.terms.get((0, 0), Fraction(0))
    t9 = -cov.d.terms.get((0, 0), Fraction(0))
    candidate = etamap.TernaryCubic((t1, t2, t3, t4, t5, t6, t7, t8, t9, t10))
    if candidate.is_zero():
        return None
    data = etamap.eta(candidate)
    if (data.a, data.b, data.c, data.d) == (cov.a, cov.b, cov.c, cov.d):
        return candidate
    return None


# ---------------------------------------------------------------------------
# Singular point witness search (for NotNormal reports)


def _rational_singular_point(f: etamap.TernaryCubic, seed: int = 0):
    """A rational common zero of the partials of f, if one is found."""
    fp = f.as_poly()
    partials = [fp.partial_derivative(v) for v in V_VARS]
    rng = random.Random(seed)
    # Chart v0 != 0.
    chart = [
        dehomogenize(p, U_VARS) for p in partials
    ]
    nonzero = [p for p in chart if not p.is_zero()]
    try:
        if len(nonzero) >= 2:
            _, pts = etamap._affine_common_zeros(nonzero, rng)
            for a, b in pts:
                if all(p.evaluate({"u1": a, "u2": b}) == 0 for p in chart):
                    return (Fraction(1), a, b)
    except IndeterminateCount:
        pass
    # v0 = 0, v1 != 0.
    line = [
        p.substitute({"v0": 0, "v1": 1, "v2": MPoly.variable(("v2",), "v2")},
                     ("v2",))
        for p in partials
    ]
    nz = [p for p in line if not p.is_zero()]
    if nz:
        from .polyring import gcd as pgcd
        from .univar import rational_roots, to_univariate

        g = nz[0]
        for p in nz[1:]:
            g = pgcd(g, p)
        if not g.is_constant():
            for r in rational_roots(to_univariate(g, "v2")):
                if all(p.evaluate({"v2": r}) == 0 for p in line):
                    return (Fraction(0), Fraction(1), r)
    else:
        return (Fraction(0), Fraction(1), Fraction(0))
    # The last candidate point (0 : 0 : 1).
    if all(p.evaluate({"v0": 0, "v1": 0, "v2": 1}) == 0 for p in partials):
        return (Fraction(0), Fraction(0), Fraction(1))
    return None


# ---------------------------------------------------------------------------
# Main entry points


def classify(spec: CoverSpec, seed: int = 0) -> ClassificationReport:
    if spec.kind == "flag":
        return _classify_flag(spec.flag_cubic, seed)
    if spec.kind == "torus":
        return _classify_torus(spec.torus_pair, seed)
    if spec.kind == "raw":
        return _classify_raw(spec.raw, seed)
    raise TripleCoverError("unknown cover specification kind %r" % spec.kind)


def _classify_flag(f: etamap.TernaryCubic, seed: int) -> ClassificationReport:
    if f is None or f.is_zero():
        raise DegenerateCubic("flag classification of the zero cubic")
    if not etamap.is_smooth_cubic(f, seed=seed):
        report = ClassificationReport(CASE_NOT_NORMAL)
        witness = _rational_singular_point(f, seed)
        report.certificates["smooth"] = False
        if witness is not None:
            report.certificates["singular_point"] = witness
            report.notes.append(
                "dual cubic is singular at (%s : %s : %s)" % witness
            )
        else:
            report.notes.append("dual cubic is singular (no rational witness)")
        return report

    cert = etamap.verify_discrim_lemma(f)
    branch = homogenize(cert.D_f, 6, X_VARS).monic()
    report = ClassificationReport(CASE_FLAG_BUNDLE, branch_form=branch)
    report.certificates["smooth"] = True
    report.certificates["lambda"] = cert.lam
    try:
        report.decomposition = cover_mod.branch_decomposition(cert.D_f)
    except (MultiplicityTooHigh, DegenerateCover, TripleCoverError) as exc:
        report.case = CASE_INDETERMINATE
        report.notes.append("branch decomposition failed: %s" % exc)
        return report

    try:
        locus = etamap.total_branch_locus(f, seed=seed)
    except IndeterminateCount as exc:
        report.case = CASE_INDETERMINATE
        report.notes.append("cusp locus count degenerated: %s" % exc)
        return report
    report.total_branch = {
        "count": locus.count,
        "rational_points": list(locus.rational_points),
    }
    if locus.count != 9:
        report.case = CASE_INDETERMINATE
        report.notes.append(
            "expected 9 total branch points on a flag cover, found %d"
            % locus.count
        )
        return report

    cusp_verdicts = []
    for point in locus.rational_points:
        verdict = a2_cusp_check(branch, point)
        fiber_cube = _perfect_cube_fiber(f, point)
        cusp_verdicts.append(
            {"point": point, "a2_cusp": verdict["is_cusp"],
             "perfect_cube_fiber": fiber_cube}
        )
        if not verdict["is_cusp"] or not fiber_cube:
            report.case = CASE_INDETERMINATE
            report.notes.append(
                "rational branch point (%s : %s : %s) failed a cusp check"
                % point
            )
    report.certificates["cusps"] = cusp_verdicts
    return report


def _perfect_cube_fiber(f: etamap.TernaryCubic, point) -> bool:
    """Is the fiber cubic at a projective point a perfect cube?

    Rotates to a chart where the point is finite before restricting.
    """
    point = tuple(Fraction(c) for c in point)
    pivot = next(i for i, c in enumerate(point) if c)
    perms = {0: (0, 1, 2), 1: (1, 0, 2), 2: (2, 1, 0)}
    fc = f if pivot == 0 else f.permuted(perms[pivot])
    scaled = tuple(c / point[pivot] for c in point)
    chart_pt = [scaled[i] for i in (perms[pivot].index(j) for j in (1, 2))]
    bc = etamap.fiber_binary_cubic(fc, tuple(chart_pt))
    return etamap.is_perfect_cube(bc)


def _classify_torus(pair: torus.TorusPair, seed: int) -> ClassificationReport:
    if pair is None:
        raise TripleCoverError("missing torus pair")
    delta = pair.delta()
    if delta.is_zero():
        report = ClassificationReport(CASE_NOT_NORMAL)
        report.notes.append("G2^3 + G3^2 = 0: the branch form vanishes")
        return report
    conditions = torus.check_conditions(pair)
    branch = delta.monic()
    report = ClassificationReport(CASE_CUBIC_SURFACE, branch_form=branch)
    report.certificates["conditions"] = conditions
    if not conditions.all_hold():
        report.case = CASE_NOT_NORMAL
        for name, verdict in (("2", conditions.condition2),
                              ("3", conditions.condition3)):
            if not verdict.holds:
                report.notes.append(
                    "condition (%s) fails%s" % (
                        name,
                        "" if verdict.witness is None
                        else " with witness %r" % verdict.witness,
                    )
                )
        return report
    cov = torus.build_cover(pair)
    chart_branch = cover_mod.derived_invariants(cov).D
    try:
        report.decomposition = cover_mod.branch_decomposition(chart_branch)
    except (MultiplicityTooHigh, DegenerateCover, TripleCoverError) as exc:
        report.notes.append("branch decomposition failed: %s" % exc)
    report.certificates["surface"] = torus.cubic_surface_form(pair)
    try:
        locus = torus.total_branch_points(pair, seed=seed)
        report.total_branch = {
            "count": locus.count_with_multiplicity,
            "rational_points": [p for p, _ in locus.rational_points],
            "multiplicities": dict(
                (p, m) for p, m in locus.rational_points
            ),
        }
    except (IndeterminateCount, TripleCoverError) as exc:
        report.notes.append("total branch point search failed: %s" % exc)
    return report


def _classify_raw(cov: AffineCoverData, seed: int) -> ClassificationReport:
    if cov is None:
        raise TripleCoverError("missing raw cover data")
    if cov.is_zero():
        raise DegenerateCover("all four data polynomials vanish")
    pair = _match_torus(cov)
    if pair is not None and not pair.delta().is_zero():
        report = _classify_torus(pair, seed)
        report.notes.append("raw data matched the cubic-surface normal form")
        return report
    cubic = _match_flag(cov)
    if cubic is not None:
        report = _classify_flag(cubic, seed)
        report.notes.append("raw data matched the eta normal form")
        return report

    report = ClassificationReport(CASE_INDETERMINATE)
    D = cover_mod.derived_invariants(cov).D
    report.notes.append("raw data matches neither constructed normal form")
    if D.is_zero():
        report.notes.append("branch polynomial D vanishes identically")
        return report
    report.branch_form = homogenize(D, 6, X_VARS).monic() \
        if D.total_degree() <= 6 else None
    try:
        report.decomposition = cover_mod.branch_decomposition(D)
    except (MultiplicityTooHigh, DegenerateCover, TripleCoverError) as exc:
        report.notes.append("branch decomposition failed: %s" % exc)
    probes = []
    for point in ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)),
                  (Fraction(0), Fraction(1)), (Fraction(1), Fraction(1))):
        verdict = cover_mod.is_total_branch_point(cov, point)
        probes.append({"point": point, "status": verdict.status})
    report.certificates["point_probes"] = probes
    return report


def cross_validate(report: ClassificationReport):
    """Re-check the bookkeeping of a finished report; returns violations."""
    violations = []
    if report.branch_form is not None:
        if report.branch_form.is_zero() or not report.branch_form.is_homogeneous() \
                or report.branch_form.total_degree() != 6:
            violations.append("branch form is not a nonzero degree-6 form")
    decomposition = report.decomposition
    if decomposition is not None:
        deg_s = max(decomposition.S.total_degree(), 0)
        deg_t = max(decomposition.T.total_degree(), 0)
        if deg_s + 2 * deg_t != 6:
            violations.append(
                "branch degrees violate deg S + 2 deg T = 6 (%d + 2*%d)"
                % (deg_s, deg_t)
            )
        rebuilt = decomposition.S * decomposition.T ** 2 * decomposition.unit
        if rebuilt != decomposition.degree6_form:
            violations.append("S * T^2 does not rebuild the branch form")
    if report.case == CASE_FLAG_BUNDLE:
        if decomposition is None or not decomposition.T.is_constant():
            violations.append("flag-bundle branch must be reduced (T = 1)")
        if report.total_branch.get("count") != 9:
            violations.append("flag-bundle reports must carry 9 cusps")
    if report.case == CASE_CUBIC_SURFACE:
        surface = report.certificates.get("surface")
        if surface is not None and report.branch_form is not None:
            disc = surface.x3_discriminant()
            exps, lead = report.branch_form.leading_term()
            mu = disc.terms.get(exps, Fraction(0)) / lead
            if not mu or disc != report.branch_form * mu:
                violations.append(
                    "surface discriminant is not proportional to the branch"
                )
    return violations
