"""Univariate helpers: coefficient lists, interpolation, rational roots."""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd

import mpmath

from .errors import TripleCoverError
from .polyring import MPoly


def to_univariate(p: MPoly, var):
    """Coefficient list [c0, c1, ...] of a polynomial using only ``var``."""
    extra = p.variables_present() - {var}
    if extra:
        raise TripleCoverError(
            "polynomial is not univariate in %s (also uses %s)" % (var, sorted(extra))
        )
    i = p.vars.index(var)
    d = p.degree_in(var)
    coeffs = [Fraction(0)] * (max(d, 0) + 1)
    for exps, c in p.terms.items():
        coeffs[exps[i]] = c
    return coeffs


def from_univariate(coeffs, vars, var) -> MPoly:
    i = tuple(vars).index(var)
    terms = {}
    for d, c in enumerate(coeffs):
        if c:
            exps = tuple(d if j == i else 0 for j in range(len(vars)))
            terms[exps] = Fraction(c)
    return MPoly(vars, terms)


def eval_coeffs(coeffs, at: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * at + c
    return acc


def interpolate(points, values):
    """Lagrange interpolation; returns the coefficient list."""
    n = len(points)
    if len(values) != n:
        raise ValueError("points and values differ in length")
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(zip(points, values)):
        if not yi:
            continue
        # Basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(points):
            if j == i:
                continue
            denom *= xi - xj
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                new[k] -= b * xj
                new[k + 1] += b
            basis = new
        scale = yi / denom
        for k, b in enumerate(basis):
            coeffs[k] += b * scale
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _clear_denominators(coeffs):
    lcm = 1
    for c in coeffs:
        lcm = lcm * c.denominator // int_gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in coeffs]
    content = 0
    for c in ints:
        content = int_gcd(content, c)
    if content > 1:
        ints = [c // content for c in ints]
    return ints


def _squarefree_coeffs(coeffs):
    """Deflate repeated roots: coeffs / gcd(coeffs, coeffs')."""
    deriv = [c * (i + 1) for i, c in enumerate(coeffs[1:])]

    def polydiv(a, b):
        a = a[:]
        out = [Fraction(0)] * (len(a) - len(b) + 1)
        while len(a) >= len(b) and any(a):
            while a and not a[-1]:
                a.pop()
            if len(a) < len(b):
                break
            k = len(a) - len(b)
            q = a[-1] / b[-1]
            out[k] = q
            for i, bc in enumerate(b):
                a[i + k] -= q * bc
            a.pop()
        while a and not a[-1]:
            a.pop()
        return out, a

    def polygcd(a, b):
        a, b = a[:], b[:]
        while b and any(b):
            _, r = polydiv(a, b)
            a, b = b, r
        lead = a[-1]
        return [c / lead for c in a]

    if len(coeffs) <= 1 or not any(deriv):
        return coeffs
    g = polygcd([Fraction(c) for c in coeffs], [Fraction(c) for c in deriv])
    if len(g) == 1:
        return coeffs
    q, r = polydiv([Fraction(c) for c in coeffs], g)
    if any(r):
        raise TripleCoverError("squarefree deflation failed")
    return q


def rational_roots(coeffs):
    """All rational roots of a univariate polynomial, each once.

    Numeric root isolation (mpmath, high precision) proposes candidates;
    every returned root is verified exactly.  The leading-coefficient trick
    (a_n * root is an integer for any rational root of an integer
    polynomial) makes candidate recovery exact.
    """
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if not coeffs:
        raise TripleCoverError("rational_roots of the zero polynomial")
    roots = []
    # Strip zero roots first.
    if not coeffs[0]:
        roots.append(Fraction(0))
        while not coeffs[0]:
            coeffs.pop(0)
    if len(coeffs) == 1:
        return roots
    if len(coeffs) == 2:
        roots.append(-coeffs[0] / coeffs[1])
        return sorted(set(roots))
    sqfree = _squarefree_coeffs(coeffs)
    ints = _clear_denominators(sqfree)
    lead = ints[-1]
    with mpmath.workdps(60):
        numeric = mpmath.polyroots(
            [mpmath.mpf(c) for c in reversed(ints)], maxsteps=200, extraprec=200
        )
        for z in numeric:
            if abs(mpmath.im(z)) > mpmath.mpf("1e-20"):
                continue
            scaled = mpmath.re(z) * lead
            candidate = Fraction(int(mpmath.nint(scaled)), lead)
            if not eval_coeffs(coeffs, candidate):
                continue_flag = candidate in roots
                if not continue_flag:
                    roots.append(candidate)
    return sorted(set(roots))
