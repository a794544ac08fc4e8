"""Ternary cubics on the dual plane and their induced cover data.

The eta map sends a cubic form f in (v0, v1, v2) to chart cover data
(a_f, b_f, c_f, d_f).  The binary cubic obtained by restricting f to the
pencil of lines through a chart point has a discriminant delta_f that is
proportional to the branch polynomial D_f; the proportionality constant is
-27 under the conventions fixed here.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .cover import AffineCoverData, derived_invariants
from .errors import (
    DegenerateCover,
    DegenerateCubic,
    IndeterminateCount,
    LemmaViolation,
    NotSmooth,
    TripleCoverError,
)
from .polyring import MPoly, U_VARS, UV_VARS, V_VARS, gcd, squarefree_part
from .univar import rational_roots, to_univariate

_SMOOTH_RETRIES = 5
_LOCUS_RETRIES = 6


@dataclass(frozen=True)
class TernaryCubic:
    """Coefficients (t1..t10) of
    t1*v0^3 + 3*t2*v0^2*v1 + 3*t3*v0^2*v2 + 3*t4*v0*v1^2 + 3*t5*v0*v1*v2
    + 3*t6*v0*v2^2 + t7*v1^3 + 3*t8*v1^2*v2 + 3*t9*v1*v2^2 + t10*v2^3.
    """

    t: tuple  # ten Fractions

    def __post_init__(self):
        if len(self.t) != 10:
            raise ValueError("a ternary cubic needs exactly ten coefficients")
        object.__setattr__(self, "t", tuple(Fraction(x) for x in self.t))

    def is_zero(self) -> bool:
        return not any(self.t)

    def as_poly(self) -> MPoly:
        t = self.t
        monomials = [
            ((3, 0, 0), 1), ((2, 1, 0), 3), ((2, 0, 1), 3), ((1, 2, 0), 3),
            ((1, 1, 1), 3), ((1, 0, 2), 3), ((0, 3, 0), 1), ((0, 2, 1), 3),
            ((0, 1, 2), 3), ((0, 0, 3), 1),
        ]
        terms = {}
        for (exps, scale), coeff in zip(monomials, t):
            if coeff:
                terms[exps] = scale * coeff
        return MPoly(V_VARS, terms)

    @classmethod
    def from_poly(cls, p: MPoly) -> "TernaryCubic":
        if p.vars != V_VARS:
            raise TripleCoverError("ternary cubics live in (v0, v1, v2)")
        if not p.is_zero() and (not p.is_homogeneous() or p.total_degree() != 3):
            raise TripleCoverError("expected a homogeneous cubic form")
        monomials = [
            ((3, 0, 0), 1), ((2, 1, 0), 3), ((2, 0, 1), 3), ((1, 2, 0), 3),
            ((1, 1, 1), 3), ((1, 0, 2), 3), ((0, 3, 0), 1), ((0, 2, 1), 3),
            ((0, 1, 2), 3), ((0, 0, 3), 1),
        ]
        t = [Fraction(p.terms.get(exps, 0)) / scale for exps, scale in monomials]
        return cls(tuple(t))

    def permuted(self, perm) -> "TernaryCubic":
        """Permute the dual coordinates (chart rotation on the base)."""
        return TernaryCubic.from_poly(self.as_poly().permute_vars(perm))


@dataclass(frozen=True)
class BinaryCubic:
    """p*v1^3 + q*v1^2*v2 + r*v1*v2^2 + s*v2^3 with MPoly entries in (u1, u2)."""

    p: MPoly
    q: MPoly
    r: MPoly
    s: MPoly

    def is_zero(self) -> bool:
        return (
            self.p.is_zero() and self.q.is_zero()
            and self.r.is_zero() and self.s.is_zero()
        )

    def entries(self):
        return (self.p, self.q, self.r, self.s)


@dataclass(frozen=True)
class DiscrimCertificate:
    delta_f: MPoly
    D_f: MPoly
    lam: Fraction


@dataclass(frozen=True)
class TotalBranchLocus:
    count: int
    rational_points: tuple  # projective points as (x0, x1, x2) Fractions
    certificate: dict


def eta(f: TernaryCubic) -> AffineCoverData:
    """Cover data (a_f, b_f, c_f, d_f) of a ternary cubic."""
    if f.is_zero():
        raise DegenerateCubic("eta of the zero cubic")
    t1, t2, t3, t4, t5, t6, t7, t8, t9, t10 = f.t
    u1 = MPoly.variable(U_VARS, "u1")
    u2 = MPoly.variable(U_VARS, "u2")
    one = MPoly.constant(U_VARS, 1)
    a = (-t1) * u1 ** 2 * u2 + (2 * t2) * u1 * u2 + t3 * u1 ** 2 \
        + (-t4) * u2 + (-t5) * u1 + t8 * one
    b = t1 * u1 ** 3 + (-3 * t2) * u1 ** 2 + (3 * t4) * u1 + (-t7) * one
    c = (-t1) * u2 ** 3 + (3 * t3) * u2 ** 2 + (-3 * t6) * u2 + t10 * one
    d = t1 * u1 * u2 ** 2 + (-t2) * u2 ** 2 + (-2 * t3) * u1 * u2 \
        + t5 * u2 + t6 * u1 + (-t9) * one
    return AffineCoverData(a, b, c, d)


def fiber_binary_cubic(f: TernaryCubic, point=None) -> BinaryCubic:
    """Restriction of f to the lines through a chart point.

    Symbolic when ``point`` is None (entries in (u1, u2)), otherwise the
    entries are evaluated at the rational chart point.
    """
    fp = f.as_poly()
    v0 = -MPoly.variable(UV_VARS, "u1") * MPoly.variable(UV_VARS, "v1") \
        - MPoly.variable(UV_VARS, "u2") * MPoly.variable(UV_VARS, "v2")
    assignment = {
        "v0": v0,
        "v1": MPoly.variable(UV_VARS, "v1"),
        "v2": MPoly.variable(UV_VARS, "v2"),
    }
    restricted = fp.substitute(assignment, UV_VARS)
    buckets = restricted.collect(("v1", "v2"))
    entries = []
    for key in ((3, 0), (2, 1), (1, 2), (0, 3)):
        coeff = buckets.get(key, MPoly.zero(UV_VARS))
        coeff = MPoly(U_VARS, {
            (e[0], e[1]): c for e, c in coeff.terms.items()
        })
        entries.append(coeff)
    bc = BinaryCubic(*entries)
    if point is None:
        return bc
    u1, u2 = point
    at = {"u1": Fraction(u1), "u2": Fraction(u2)}
    return BinaryCubic(*[
        MPoly.constant(U_VARS, e.evaluate(at)) for e in bc.entries()
    ])


def binary_cubic_discriminant(bc: BinaryCubic) -> MPoly:
    """18pqrs - 4q^3 s + q^2 r^2 - 4p r^3 - 27 p^2 s^2."""
    p, q, r, s = bc.entries()
    return (
        18 * p * q * r * s
        - 4 * q ** 3 * s
        + q ** 2 * r ** 2
        - 4 * p * r ** 3
        - 27 * p ** 2 * s ** 2
    )


def delta_f(f: TernaryCubic) -> MPoly:
    """Discriminant of the symbolic fiber cubic; chart dual-sextic equation."""
    if f.is_zero():
        raise DegenerateCubic("delta of the zero cubic")
    return binary_cubic_discriminant(fiber_binary_cubic(f))


def verify_discrim_lemma(f: TernaryCubic) -> DiscrimCertificate:
    """Certify delta_f = lambda * D_f as an exact identity."""
    delta = delta_f(f)
    D = derived_invariants(eta(f)).D
    if D.is_zero():
        raise DegenerateCover("branch polynomial D_f vanishes identically")
    exps, lead = D.leading_term()
    lam = delta.terms.get(exps, Fraction(0)) / lead
    if not lam or delta != D * lam:
        raise LemmaViolation(
            "delta_f is not a constant multiple of D_f (internal bug)"
        )
    return DiscrimCertificate(delta, D, lam)


def hessian_covariant(bc: BinaryCubic):
    """(3pr - q^2, 9ps - qr, 3qs - r^2); vanishes iff bc is a perfect cube."""
    p, q, r, s = bc.entries()
    return (3 * p * r - q * q, 9 * p * s - q * r, 3 * q * s - r * r)


def is_perfect_cube(bc: BinaryCubic) -> bool:
    """Is the binary cubic the cube of a linear form?"""
    if bc.is_zero():
        return False
    return all(h.is_zero() for h in hessian_covariant(bc))


# ---------------------------------------------------------------------------
# Smoothness


def _random_matrix(rng, n, span=5):
    while True:
        m = [[rng.randint(-span, span) for _ in range(n)] for _ in range(n)]
        if n == 2:
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        else:
            det = (
                m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
            )
        if det:
            return m


def _linear_change(p: MPoly, matrix) -> MPoly:
    """p(M * vars): substitute each variable by a row combination."""
    vars = p.vars
    gens = [MPoly.variable(vars, v) for v in vars]
    assignment = {}
    for i, v in enumerate(vars):
        acc = MPoly.zero(vars)
        for j, g in enumerate(gens):
            if matrix[i][j]:
                acc = acc + matrix[i][j] * g
        assignment[v] = acc
    return p.substitute(assignment, vars)


def is_smooth_cubic(f: TernaryCubic, seed: int = 0) -> bool:
    """Do the three partials of f share a projective zero?

    Certified smooth as soon as one random coordinate change yields coprime
    eliminants; declared singular when a shared factor is forced or every
    retry leaves a nonconstant common eliminant factor.
    """
    if f.is_zero():
        raise DegenerateCubic("smoothness of the zero cubic")
    fp = f.as_poly()
    partials = [fp.partial_derivative(v) for v in V_VARS]
    if any(p.is_zero() for p in partials):
        return False  # the remaining conics always intersect in P^2
    rng = random.Random(seed)
    for _ in range(_SMOOTH_RETRIES):
        m = _random_matrix(rng, 3)
        changed = [_linear_change(p, m) for p in partials]
        pivot = next(
            (g for g in changed if g.terms.get((2, 0, 0))), None
        )
        if pivot is None:
            continue
        others = [g for g in changed if g is not pivot]
        from .polyring import resultant

        r1 = resultant(pivot, others[0], "v0")
        r2 = resultant(pivot, others[1], "v0")
        if r1.is_zero() or r2.is_zero():
            return False  # shared factor; its curve meets the third conic
        if gcd(r1, r2).is_constant():
            return True
    return False


# ---------------------------------------------------------------------------
# Total branch locus (perfect-cube fibers = cusps of the dual sextic)


def _chart_hessian(f: TernaryCubic, chart: int):
    """Hessian-covariant entries of the fiber cubic in the given chart."""
    perms = {0: (0, 1, 2), 1: (1, 0, 2), 2: (2, 1, 0)}
    fc = f if chart == 0 else f.permuted(perms[chart])
    return hessian_covariant(fiber_binary_cubic(fc))


def _nonzero(polys):
    return [h for h in polys if not h.is_zero()]


def _univariate_common_roots(polys, var):
    """Distinct-root count and rational roots of a univariate system."""
    polys = _nonzero(polys)
    if not polys:
        raise IndeterminateCount("system vanishes identically on the line")
    g = polys[0]
    for h in polys[1:]:
        g = gcd(g, h)
    if g.is_constant():
        return 0, []
    g = squarefree_part(g)
    count = g.total_degree()
    roots = rational_roots(to_univariate(g, var))
    verified = [
        r for r in roots
        if all(not h.evaluate({var: r, **{v: 0 for v in h.vars if v != var}})
               for h in polys)
    ]
    return count, verified


def _combination_eliminants(changed, rng):
    """Eliminants built from random combinations of the chart curves.

    Used when pairwise resultants degenerate; returns None when the random
    combinations are unusable (caller retries with a new change).
    """
    from .polyring import resultant

    out = []
    for _ in range(2):
        comb = changed[0]
        for h in changed[1:]:
            comb = comb + rng.randint(1, 9) * h
        d = comb.degree_in("u2")
        lead = comb.coefficients_in("u2").get(d)
        if lead is None or not lead.is_constant():
            return None
        for h in changed:
            r = resultant(comb, h, "u2")
            if not r.is_zero():
                out.append(r)
    return out if len(out) >= 2 else None


def _affine_common_zeros(polys, rng):
    """Distinct common zeros of chart curves: (count, rational points).

    Uses a random linear change so distinct zeros separate along u1, then
    eliminates u2 by pairwise resultants.  Counts are cross-checked between
    two independent changes; disagreement raises IndeterminateCount.
    """
    from .polyring import resultant

    polys = _nonzero(polys)
    if not polys:
        raise IndeterminateCount("system vanishes identically on the chart")
    if len(polys) == 1:
        raise IndeterminateCount("single curve has no finite zero set")

    def attempt():
        for _ in range(_LOCUS_RETRIES):
            m = _random_matrix(rng, 2, span=4)
            changed = [_linear_change(h, m) for h in polys]
            # Leading u2-coefficient of each poly must be constant so the
            # eliminant roots are exactly the projected common zeros.
            ok = True
            for h in changed:
                d = h.degree_in("u2")
                lead = h.coefficients_in("u2").get(d)
                if lead is None or not lead.is_constant():
                    ok = False
                    break
            if not ok:
                continue
            # Pairs of curves may share a component (zero resultant) even
            # when the full system has a finite zero set; zero eliminants
            # are skipped as long as the surviving pairs still involve
            # every curve.
            eliminants = []
            covered = set()
            for i, j in itertools.combinations(range(len(changed)), 2):
                r = resultant(changed[i], changed[j], "u2")
                if not r.is_zero():
                    eliminants.append(r)
                    covered.update((i, j))
            if len(changed) == 2 and not eliminants:
                raise IndeterminateCount("curves share a component")
            if len(covered) < len(changed) or len(eliminants) < 2:
                extra = _combination_eliminants(changed, rng)
                if extra is None:
                    continue
                eliminants.extend(extra)
            g = eliminants[0]
            for e in eliminants[1:]:
                g = gcd(g, e)
            if g.is_zero():
                raise IndeterminateCount("eliminant gcd degenerated")
            g = squarefree_part(g) if not g.is_constant() else g
            count = max(g.total_degree(), 0)
            points = []
            if not g.is_constant():
                for alpha in rational_roots(to_univariate(g, "u1")):
                    fibers = [
                        h.substitute(
                            {"u1": alpha, "u2": MPoly.variable(U_VARS, "u2")},
                            U_VARS,
                        )
                        for h in changed
                    ]
                    fibers_nz = _nonzero(fibers)
                    if not fibers_nz:
                        continue
                    fg = fibers_nz[0]
                    for h in fibers_nz[1:]:
                        fg = gcd(fg, h)
                    if fg.is_constant():
                        continue
                    for beta in rational_roots(to_univariate(fg, "u2")):
                        at = {"u1": alpha, "u2": beta}
                        if all(not h.evaluate(at) for h in fibers):
                            x = m[0][0] * alpha + m[0][1] * beta
                            y = m[1][0] * alpha + m[1][1] * beta
                            points.append((x, y))
            return count, points
        raise IndeterminateCount("no usable coordinate change found")

    # A non-generic change can merge zeros that share a u1-coordinate, so
    # keep sampling until two independent changes tell the same story.
    seen = []
    for _ in range(_LOCUS_RETRIES):
        count, points = attempt()
        key = (count, frozenset(points))
        if key in seen:
            return count, sorted(set(points))
        seen.append(key)
    raise IndeterminateCount("counts disagree between coordinate changes")


def total_branch_locus(f: TernaryCubic, seed: int = 0) -> TotalBranchLocus:
    """All points whose fiber cubic is a perfect cube (chart by chart).

    For a smooth cubic these are the nine cusps of the dual sextic.
    """
    if not is_smooth_cubic(f, seed=seed):
        raise NotSmooth("total branch locus requires a smooth cubic")
    rng = random.Random(seed + 1)

    # Chart x0 != 0: the affine part of the locus.
    h_main = _chart_hessian(f, 0)
    count0, pts0 = _affine_common_zeros(list(h_main), rng)
    points = [(Fraction(1), a, b) for a, b in pts0]

    # Chart x1 != 0 restricted to x0 = 0.
    h1 = _chart_hessian(f, 1)
    restricted = [
        h.substitute({"u1": 0, "u2": MPoly.variable(U_VARS, "u2")}, U_VARS)
        for h in h1
    ]
    count1, roots1 = _univariate_common_roots(restricted, "u2")
    points.extend((Fraction(0), Fraction(1), r) for r in roots1)

    # Chart x2 != 0 at the single point x0 = x1 = 0.
    h2 = _chart_hessian(f, 2)
    at_origin = all(
        not h.evaluate({"u1": 0, "u2": 0}) for h in h2
    )
    count2 = 1 if at_origin else 0
    if at_origin:
        points.append((Fraction(0), Fraction(0), Fraction(1)))

    certificate = {
        "chart_counts": (count0, count1, count2),
        "hessian_chart0": h_main,
    }
    return TotalBranchLocus(count0 + count1 + count2, tuple(points), certificate)


# ---------------------------------------------------------------------------
# Reducibility


_AB_VARS = ("al", "be")


def has_linear_factor(f: TernaryCubic):
    """Rational linear factors of f: (flag, witness linear form or None)."""
    if f.is_zero():
        raise DegenerateCubic("factor search on the zero cubic")
    fp = f.as_poly()

    witness = _search_v0_lines(fp)
    if witness is not None:
        return True, witness
    witness = _search_v1_lines(fp)
    if witness is not None:
        return True, witness
    # Remaining candidate: the line v2 = 0.
    if fp.substitute(
        {"v0": MPoly.variable(V_VARS, "v0"), "v1": MPoly.variable(V_VARS, "v1"),
         "v2": 0}, V_VARS
    ).is_zero():
        return True, MPoly.variable(V_VARS, "v2")
    return False, None


def _search_v0_lines(fp: MPoly):
    """Factors v0 - al*v1 - be*v2 with symbolic (al, be)."""
    from .polyring import resultant

    vars = ("al", "be", "v1", "v2")
    al = MPoly.variable(vars, "al")
    be = MPoly.variable(vars, "be")
    v1 = MPoly.variable(vars, "v1")
    v2 = MPoly.variable(vars, "v2")
    restricted = fp.substitute({"v0": al * v1 + be * v2, "v1": v1, "v2": v2}, vars)
    system = []
    for coeff in restricted.collect(("v1", "v2")).values():
        system.append(MPoly(_AB_VARS, {
            (e[0], e[1]): c for e, c in coeff.terms.items()
        }))
    system = [e for e in system if not e.is_zero()]
    if not system:
        return None  # cannot happen for nonzero f
    candidates = set()
    positive = [e for e in system if e.degree_in("be") > 0]
    if not positive:
        # System is univariate in al already.
        g = system[0]
        for e in system[1:]:
            g = gcd(g, e)
        if g.is_constant():
            return None
        candidates.update(rational_roots(to_univariate(g, "al")))
    else:
        base = positive[0]
        elim = []
        for other in system:
            if other is base:
                continue
            if other.degree_in("be") == 0 and other.degree_in("al") == 0:
                return None  # nonzero constant equation: no solution
            try:
                e = resultant(base, other, "be")
            except TripleCoverError:
                continue
            if not e.is_zero():
                elim.append(e)
        if not elim:
            elim = [MPoly.zero(_AB_VARS)]
        g = elim[0]
        for e in elim[1:]:
            g = gcd(g, e)
        if g.is_zero():
            g = base.coefficients_in("be").get(0, MPoly.zero(_AB_VARS))
        if g.is_constant():
            return None
        if g.degree_in("al") > 0:
            candidates.update(rational_roots(to_univariate(g, "al")))
    for alpha in sorted(candidates):
        special = [
            e.substitute({"al": alpha, "be": MPoly.variable(_AB_VARS, "be")},
                         _AB_VARS)
            for e in system
        ]
        nz = [e for e in special if not e.is_zero()]
        if not nz:
            beta_options = [Fraction(0)]
        else:
            fg = nz[0]
            for e in nz[1:]:
                fg = gcd(fg, e)
            if fg.is_constant():
                continue
            beta_options = rational_roots(to_univariate(fg, "be"))
        for beta in beta_options:
            if all(not e.evaluate({"al": alpha, "be": beta}) for e in system):
                v0 = MPoly.variable(V_VARS, "v0")
                w1 = MPoly.variable(V_VARS, "v1")
                w2 = MPoly.variable(V_VARS, "v2")
                return v0 - alpha * w1 - beta * w2
    return None


def _search_v1_lines(fp: MPoly):
    """Factors v1 - ga*v2 (lines missing v0)."""
    vars = ("ga", "v0", "v2")
    ga = MPoly.variable(vars, "ga")
    v0 = MPoly.variable(vars, "v0")
    v2 = MPoly.variable(vars, "v2")
    restricted = fp.substitute({"v0": v0, "v1": ga * v2, "v2": v2}, vars)
    system = []
    for coeff in restricted.collect(("v0", "v2")).values():
        system.append(MPoly(("ga",), {(e[0],): c for e, c in coeff.terms.items()}))
    system = [e for e in system if not e.is_zero()]
    if not system:
        return None
    g = system[0]
    for e in system[1:]:
        g = gcd(g, e)
    if g.is_constant():
        return None
    for gamma in rational_roots(to_univariate(g, "ga")):
        if all(not e.evaluate({"ga": gamma}) for e in system):
            w1 = MPoly.variable(V_VARS, "v1")
            w2 = MPoly.variable(V_VARS, "v2")
            return w1 - gamma * w2
    return None
