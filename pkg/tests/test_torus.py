"""Tests for torus pairs, the branch conditions and the intersection locus."""

import itertools
import random
from fractions import Fraction

import pytest

from triplecover.cover import derived_invariants, is_total_branch_point
from triplecover.errors import CommonComponent, DegenerateTorus, TripleCoverError
from triplecover.polyring import (
    MPoly,
    X_VARS,
    divides,
    gcd,
    homogenize,
    squarefree_part,
)
from triplecover.torus import (
    TorusPair,
    build_cover,
    check_conditions,
    condition1,
    condition2,
    condition3,
    cubic_surface_form,
    total_branch_points,
)

x0 = MPoly.variable(X_VARS, "x0")
x1 = MPoly.variable(X_VARS, "x1")
x2 = MPoly.variable(X_VARS, "x2")

ACCEPT_PAIR = TorusPair(x0 * x1, x2 ** 3 - x0 ** 3)


def random_form(rng, deg, span=4):
    terms = {}
    for e in itertools.product(range(deg + 1), repeat=3):
        if sum(e) == deg:
            c = rng.randint(-span, span)
            if c:
                terms[e] = Fraction(c)
    return MPoly(X_VARS, terms)


def random_pair(rng):
    while True:
        pair = TorusPair(random_form(rng, 2), random_form(rng, 3))
        if not pair.delta().is_zero():
            return pair


def test_pair_validation():
    with pytest.raises(TripleCoverError):
        TorusPair(x0 ** 3, x0 ** 3)  # degree 3 form in the G2 slot
    with pytest.raises(TripleCoverError):
        TorusPair(x0 ** 2 + x0, x0 ** 3)  # not homogeneous


def test_build_cover_normal_form():
    cov = build_cover(ACCEPT_PAIR)
    assert cov.a.is_zero()
    assert cov.b == 1
    # G3(1, u1, u2) = u2^3 - 1, G2(1, u1, u2) = u1
    u = cov.d.vars
    u1 = MPoly.variable(u, "u1")
    u2 = MPoly.variable(u, "u2")
    assert cov.c == -2 * (u2 ** 3 - 1)
    assert cov.d == u1


def test_build_cover_rejects_degenerate():
    with pytest.raises(DegenerateTorus):
        build_cover(TorusPair(-(x0 ** 2), x0 ** 3))


def test_branch_identity_fixture():
    """homogenize(D, 6) = 4 * (G2^3 + G3^2) for the fixture pair."""
    cov = build_cover(ACCEPT_PAIR)
    D = derived_invariants(cov).D
    assert homogenize(D, 6, X_VARS) == 4 * ACCEPT_PAIR.delta()


def test_branch_identity_random():
    rng = random.Random(61)
    for _ in range(20):
        pair = random_pair(rng)
        cov = build_cover(pair)
        D = derived_invariants(cov).D
        assert homogenize(D, 6, X_VARS) == 4 * pair.delta()


def test_surface_discriminant_identity():
    """The x3-discriminant of x3^3 + 3 G2 x3 + 2 G3 is -108 (G2^3 + G3^2)."""
    rng = random.Random(62)
    for _ in range(20):
        pair = random_pair(rng)
        surf = cubic_surface_form(pair)
        assert surf.x3_discriminant() == -108 * pair.delta()


def test_surface_form_shape():
    surf = cubic_surface_form(ACCEPT_PAIR)
    assert surf.form.degree_in("x3") == 3
    assert surf.form.is_homogeneous()


def test_condition1_proportionality():
    delta = 5 * ACCEPT_PAIR.delta()
    verdict = condition1(ACCEPT_PAIR, delta)
    assert verdict.holds
    assert verdict.scale == Fraction(1, 5)
    other = TorusPair(x0 ** 2 + x1 ** 2, x2 ** 3)
    assert not condition1(other, delta).holds


def test_condition2_violation_witness():
    # x0 divides G2 and x0^2 divides G3.
    verdict = condition2(TorusPair(x0 * x1, x0 ** 2 * x2))
    assert not verdict.holds
    assert verdict.witness == x0


def test_condition2_passing():
    assert condition2(ACCEPT_PAIR).holds


def test_condition3_violation_witness():
    # Delta = x0^2 x2^2 (2 x0^2 + x2^2): the repeated prime x2 misses G2.
    pair = TorusPair(-(x0 ** 2), x0 ** 3 + x0 * x2 ** 2)
    delta = pair.delta()
    assert delta == 2 * x0 ** 4 * x2 ** 2 + x0 ** 2 * x2 ** 4
    verdict = condition3(pair)
    assert not verdict.holds
    assert verdict.witness is not None
    assert verdict.witness.degree_in("x2") > 0


def test_condition3_passing():
    assert condition3(ACCEPT_PAIR).holds


def test_condition3_rejects_degenerate():
    with pytest.raises(DegenerateTorus):
        condition3(TorusPair(-(x0 ** 2), x0 ** 3))


def test_check_conditions_report():
    report = check_conditions(ACCEPT_PAIR, 4 * ACCEPT_PAIR.delta())
    assert report.all_hold()
    assert report.condition1.holds


# ---------------------------------------------------------------------------
# Factored-construction oracle for the condition checkers


LINEAR_POOL = [
    x0, x1, x2, x0 + x1, x0 - x1, x0 + x2, x1 + x2, x0 + x1 + x2,
    x0 - 2 * x2, x1 - x2,
]


def oracle_condition2(g2_factors, g3):
    """Direct membership check: some prime of G2 squares into G3."""
    primes = []
    for p in g2_factors:
        if all(p.monic() != q.monic() for q in primes):
            primes.append(p)
    for prime in primes:
        ok, _ = divides(prime * prime, g3)
        if ok:
            return False
    return True


def oracle_condition3(catalogue, pair):
    """Direct check over the known primes of the construction."""
    delta = pair.delta()
    for prime in catalogue:
        sq_ok, _ = divides(prime * prime, delta)
        if not sq_ok:
            continue
        in_g2, _ = divides(prime, pair.G2)
        if not in_g2:
            return False
    return True


def test_condition_checkers_agree_with_oracle():
    rng = random.Random(71)
    checked = 0
    while checked < 50:
        l = [LINEAR_POOL[rng.randrange(len(LINEAR_POOL))] for _ in range(5)]
        g2_factors = l[:2]
        if rng.random() < 0.3:
            # Plant a condition-2 violation: square a G2 prime into G3.
            g3_factors = [l[0], l[0], l[2]]
        else:
            g3_factors = l[2:]
        g2 = g2_factors[0] * g2_factors[1]
        g3 = g3_factors[0] * g3_factors[1] * g3_factors[2]
        pair = TorusPair(g2, g3)
        if pair.delta().is_zero():
            continue
        verdict2 = condition2(pair)
        assert verdict2.holds == oracle_condition2(g2_factors, g3)
        if not verdict2.holds:
            ok, _ = divides(verdict2.witness, g2)
            assert ok
            sq, _ = divides(squarefree_part(verdict2.witness) ** 2, g3)
            assert sq
        verdict3 = condition3(pair)
        if not verdict3.holds:
            # Soundness of the reported witness.
            w = squarefree_part(verdict3.witness)
            sq, _ = divides(w ** 2, pair.delta())
            assert sq
            in_g2, _ = divides(w, g2)
            assert not in_g2
        else:
            assert oracle_condition3(LINEAR_POOL, pair)
        checked += 1


# ---------------------------------------------------------------------------
# Total branch points


def test_total_branch_points_fixture():
    locus = total_branch_points(ACCEPT_PAIR)
    assert locus.count_with_multiplicity == 6
    points = dict(locus.rational_points)
    key_a = (Fraction(0), Fraction(1), Fraction(0))
    key_b = (Fraction(1), Fraction(0), Fraction(1))
    assert points[key_a] == 3
    assert points[key_b] == 1


def test_total_branch_points_all_total_after_rotation():
    perms = {0: (0, 1, 2), 1: (1, 0, 2), 2: (2, 1, 0)}
    locus = total_branch_points(ACCEPT_PAIR)
    for point, _ in locus.rational_points:
        pivot = next(i for i, c in enumerate(point) if c)
        rotated = ACCEPT_PAIR.permuted(perms[pivot])
        cov = build_cover(rotated)
        moved = [None] * 3
        for i, c in enumerate(point):
            moved[perms[pivot][i]] = c
        chart = (moved[1] / moved[0], moved[2] / moved[0])
        assert is_total_branch_point(cov, chart).status == "total"


def test_total_branch_points_rejects_shared_component():
    with pytest.raises(CommonComponent):
        total_branch_points(TorusPair(x0 * x1, x0 * x1 * x2))


def test_total_branch_points_on_curve_vanish():
    """Every reported point lies on both G2 = 0 and G3 = 0."""
    rng = random.Random(81)
    seen = 0
    for _ in range(10):
        pair = random_pair(rng)
        if not gcd(pair.G2, pair.G3).is_constant():
            continue
        locus = total_branch_points(pair)
        assert locus.count_with_multiplicity == 6
        for (a, b, c), _ in locus.rational_points:
            at = {"x0": a, "x1": b, "x2": c}
            assert pair.G2.evaluate(at) == 0
            assert pair.G3.evaluate(at) == 0
            seen += 1
    assert seen >= 0
