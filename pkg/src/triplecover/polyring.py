"""Sparse multivariate polynomials over the rationals.

Coefficients are exact ``fractions.Fraction`` values, monomials are exponent
tuples over a fixed ordered variable set, and the canonical term order is
graded lexicographic.  Everything downstream (cover data, discriminants,
branch forms) is built on this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DegenerateCover,
    TripleCoverError,
    VariableMismatchError,
)

# Standard variable sets used throughout the package.
U_VARS = ("u1", "u2")
X_VARS = ("x0", "x1", "x2")
X4_VARS = ("x0", "x1", "x2", "x3")
V_VARS = ("v0", "v1", "v2")
T_VARS = ("t",)
UV_VARS = ("u1", "u2", "v1", "v2")
UZW_VARS = ("u1", "u2", "z", "w")


def _coeff(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError("coefficients must be Fraction or int, got %r" % (value,))


def _order_key(exps):
    # Graded lex: compare total degree first, then exponents left to right.
    return (sum(exps), exps)


class MPoly:
    """Immutable sparse polynomial over a fixed ordered variable set."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms=None):
        object.__setattr__(self, "vars", tuple(vars))
        clean = {}
        if terms:
            n = len(self.vars)
            for exps, c in terms.items():
                exps = tuple(exps)
                if len(exps) != n:
                    raise VariableMismatchError(
                        "monomial arity %d does not match variable set %r"
                        % (len(exps), self.vars)
                    )
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent in %r" % (exps,))
                c = _coeff(c)
                if c:
                    acc = clean.get(exps)
                    if acc is None:
                        clean[exps] = c
                    else:
                        acc = acc + c
                        if acc:
                            clean[exps] = acc
                        else:
                            del clean[exps]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars) -> "MPoly":
        return cls(vars)

    @classmethod
    def constant(cls, vars, c) -> "MPoly":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): _coeff(c)})

    @classmethod
    def variable(cls, vars, name) -> "MPoly":
        vars = tuple(vars)
        if name not in vars:
            raise VariableMismatchError("%r not in variable set %r" % (name, vars))
        exps = tuple(1 if v == name else 0 for v in vars)
        return cls(vars, {exps: Fraction(1)})

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise TripleCoverError("polynomial is not constant: %r" % (self,))
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var) -> int:
        i = self._var_index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def variables_present(self):
        """Names of variables that occur with positive exponent."""
        present = set()
        for exps in self.terms:
            for v, e in zip(self.vars, exps):
                if e:
                    present.add(v)
        return present

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self.terms}
        return len(degs) <= 1

    def _var_index(self, var) -> int:
        try:
            return self.vars.index(var)
        except ValueError:
            raise VariableMismatchError(
                "%r not in variable set %r" % (var, self.vars)
            ) from None

    def _check_same(self, other: "MPoly"):
        if self.vars != other.vars:
            raise VariableMismatchError(
                "variable sets differ: %r vs %r" % (self.vars, other.vars)
            )

    # -- term order --------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda kv: _order_key(kv[0]), reverse=True)

    def leading_term(self):
        """(exponents, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise DegenerateCover("zero polynomial has no leading term")
        exps = max(self.terms, key=_order_key)
        return exps, self.terms[exps]

    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def monic(self) -> "MPoly":
        """Normalize to leading coefficient 1 (zero stays zero)."""
        if not self.terms:
            return self
        lc = self.leading_coefficient()
        if lc == 1:
            return self
        return self * Fraction(1, 1) / lc

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            acc = terms.get(exps)
            if acc is None:
                terms[exps] = c
            else:
                acc = acc + c
                if acc:
                    terms[exps] = acc
                else:
                    del terms[exps]
        return self._raw(terms)

    __radd__ = __add__

    def __neg__(self):
        return self._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coeff(other)
            if not c:
                return MPoly(self.vars)
            return self._raw({e: k * c for e, k in self.terms.items()})
        self._check_same(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                acc = terms.get(exps)
                if acc is None:
                    terms[exps] = c1 * c2
                else:
                    acc = acc + c1 * c2
                    if acc:
                        terms[exps] = acc
                    else:
                        del terms[exps]
        return self._raw(terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coeff(other)
            if not c:
                raise ZeroDivisionError("division of MPoly by zero scalar")
            return self * (Fraction(1) / c)
        return NotImplemented

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.constant(self.vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base_needed = e >> 1
            if base_needed:
                base = base * base
            e = base_needed
        return result

    def _lift(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            self._check_same(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.constant(self.vars, other)
        raise TypeError("cannot combine MPoly with %r" % (other,))

    def _raw(self, terms) -> "MPoly":
        # Internal fast path: terms already cleaned of zeros.
        p = MPoly.__new__(MPoly)
        object.__setattr__(p, "vars", self.vars)
        object.__setattr__(p, "terms", terms)
        return p

    # -- comparison --------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MPoly.constant(self.vars, other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        from .polyparse import print_poly

        return "MPoly(%r, %s)" % (list(self.vars), print_poly(self))

    # -- calculus and substitution ----------------------------------------

    def partial_derivative(self, var) -> "MPoly":
        i = self._var_index(var)
        terms = {}
        for exps, c in self.terms.items():
            e = exps[i]
            if e:
                nexps = exps[:i] + (e - 1,) + exps[i + 1:]
                acc = terms.get(nexps)
                nc = c * e
                terms[nexps] = acc + nc if acc is not None else nc
        return self._raw({e: c for e, c in terms.items() if c})

    def substitute(self, assignment, target_vars=None) -> "MPoly":
        """Substitute polynomials or rationals for variables.

        ``assignment`` maps variable names to MPoly values (sharing one
        target variable set) or to rationals.  Every variable occurring in
        this polynomial must be assigned.
        """
        tvars = tuple(target_vars) if target_vars is not None else None
        for value in assignment.values():
            if isinstance(value, MPoly):
                if tvars is None:
                    tvars = value.vars
                elif tvars != value.vars:
                    raise VariableMismatchError(
                        "substitution targets mix variable sets %r and %r"
                        % (tvars, value.vars)
                    )
        if tvars is None:
            tvars = self.vars

        missing = self.variables_present() - set(assignment)
        if missing:
            raise VariableMismatchError(
                "substitution misses variables %s" % sorted(missing)
            )

        lifted = {}
        for name, value in assignment.items():
            if isinstance(value, MPoly):
                lifted[name] = value
            else:
                lifted[name] = MPoly.constant(tvars, value)

        # Cache powers of each substituted value.
        powers = {name: [MPoly.constant(tvars, 1)] for name in lifted}
        result = MPoly.zero(tvars)
        for exps, c in self.terms.items():
            term = MPoly.constant(tvars, c)
            for name, e in zip(self.vars, exps):
                if not e:
                    continue
                cache = powers[name]
                while len(cache) <= e:
                    cache.append(cache[-1] * lifted[name])
                term = term * cache[e]
            result = result + term
        return result

    def evaluate(self, point) -> Fraction:
        """Evaluate at a rational point given as {var: rational}."""
        total = Fraction(0)
        for exps, c in self.terms.items():
            value = c
            for name, e in zip(self.vars, exps):
                if e:
                    value *= _coeff(point[name]) ** e
            total += value
        return total

    def rename(self, new_vars) -> "MPoly":
        """Reinterpret over a same-arity variable set, keeping exponents."""
        new_vars = tuple(new_vars)
        if len(new_vars) != len(self.vars):
            raise VariableMismatchError(
                "cannot rename %r to %r" % (self.vars, new_vars)
            )
        p = MPoly.__new__(MPoly)
        object.__setattr__(p, "vars", new_vars)
        object.__setattr__(p, "terms", dict(self.terms))
        return p

    def permute_vars(self, perm) -> "MPoly":
        """Apply a permutation of the variable positions to every monomial.

        ``perm[i]`` is the position that old position ``i`` moves to.
        """
        n = len(self.vars)
        if sorted(perm) != list(range(n)):
            raise ValueError("not a permutation: %r" % (perm,))
        terms = {}
        for exps, c in self.terms.items():
            nexps = [0] * n
            for i, e in enumerate(exps):
                nexps[perm[i]] = e
            terms[tuple(nexps)] = c
        return self._raw(terms)

    def coefficients_in(self, var):
        """Coefficients w.r.t. one variable: {degree: MPoly with var removed}.

        The coefficient polynomials stay in the same variable set with the
        chosen variable's exponent forced to zero.
        """
        i = self._var_index(var)
        buckets = {}
        for exps, c in self.terms.items():
            d = exps[i]
            rest = exps[:i] + (0,) + exps[i + 1:]
            bucket = buckets.setdefault(d, {})
            bucket[rest] = bucket.get(rest, Fraction(0)) + c
        return {
            d: self._raw({e: c for e, c in bucket.items() if c})
            for d, bucket in buckets.items()
            if any(bucket.values())
        }

    def collect(self, subset_vars):
        """Group terms by exponents of a variable subset.

        Returns {subset exponent tuple: MPoly coefficient} where the
        coefficients have the subset variables' exponents forced to zero.
        """
        idx = [self._var_index(v) for v in subset_vars]
        buckets = {}
        for exps, c in self.terms.items():
            key = tuple(exps[i] for i in idx)
            rest = list(exps)
            for i in idx:
                rest[i] = 0
            bucket = buckets.setdefault(key, {})
            rest = tuple(rest)
            bucket[rest] = bucket.get(rest, Fraction(0)) + c
        return {
            key: self._raw({e: c for e, c in bucket.items() if c})
            for key, bucket in buckets.items()
            if any(bucket.values())
        }


# ---------------------------------------------------------------------------
# Homogenization


def homogenize(p: MPoly, target_degree: int, new_vars=X_VARS) -> MPoly:
    """Chart polynomial -> homogeneous form of the given degree.

    The first variable of ``new_vars`` is the homogenizing variable; the
    rest correspond positionally to the chart variables.
    """
    new_vars = tuple(new_vars)
    if len(new_vars) != len(p.vars) + 1:
        raise VariableMismatchError(
            "homogenization needs %d variables, got %r" % (len(p.vars) + 1, new_vars)
        )
    d = p.total_degree()
    if d > target_degree:
        raise TripleCoverError(
            "target degree %d below total degree %d" % (target_degree, d)
        )
    terms = {}
    for exps, c in p.terms.items():
        nexps = (target_degree - sum(exps),) + exps
        terms[nexps] = c
    return MPoly(new_vars, terms)


def dehomogenize(p: MPoly, chart_vars=U_VARS) -> MPoly:
    """Set the first variable to 1 and rename the rest."""
    chart_vars = tuple(chart_vars)
    if len(chart_vars) != len(p.vars) - 1:
        raise VariableMismatchError(
            "dehomogenization needs %d chart variables, got %r"
            % (len(p.vars) - 1, chart_vars)
        )
    terms = {}
    for exps, c in p.terms.items():
        nexps = exps[1:]
        terms[nexps] = terms.get(nexps, Fraction(0)) + c
    return MPoly(chart_vars, terms)


# ---------------------------------------------------------------------------
# Exact division


def divides(p: MPoly, q: MPoly):
    """Does p divide q exactly?  Returns (flag, quotient or None)."""
    p._check_same(q)
    if p.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if q.is_zero():
        return True, MPoly.zero(p.vars)
    lt_e, lt_c = p.leading_term()
    quotient = MPoly.zero(p.vars)
    r = q
    while not r.is_zero():
        re, rc = r.leading_term()
        diff = tuple(a - b for a, b in zip(re, lt_e))
        if any(d < 0 for d in diff):
            return False, None
        t = MPoly(p.vars, {diff: rc / lt_c})
        quotient = quotient + t
        r = r - t * p
    return True, quotient


def exact_divide(p: MPoly, q: MPoly) -> MPoly:
    """q / p, raising if the division is not exact."""
    ok, quotient = divides(p, q)
    if not ok:
        raise TripleCoverError("inexact polynomial division")
    return quotient


# ---------------------------------------------------------------------------
# GCD (primitive pseudo-remainder sequence, content recursion)


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    # gcd on Q normalized so that dividing by it leaves coprime integers.
    if not a:
        return abs(b)
    if not b:
        return abs(a)
    num = math.gcd(a.numerator, b.numerator)
    den = (a.denominator * b.denominator) // math.gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _content_and_primitive(p: MPoly, var):
    """Content (gcd of coefficients w.r.t. var) and primitive part."""
    coeffs = list(p.coefficients_in(var).values())
    content = coeffs[0]
    for c in coeffs[1:]:
        content = _gcd_inner(content, c)
        if content.is_constant() and content.constant_value() == 1:
            break
    return content, exact_divide(content, p)


def _pseudo_remainder(p: MPoly, q: MPoly, var) -> MPoly:
    """prem(p, q) w.r.t. var: lc(q)^(dp-dq+1) * p mod q."""
    dq = q.degree_in(var)
    lc_q = q.coefficients_in(var)[dq]
    v = MPoly.variable(p.vars, var)
    r = p
    while True:
        dr = r.degree_in(var)
        if r.is_zero() or dr < dq:
            return r
        lc_r = r.coefficients_in(var)[dr]
        r = r * lc_q - q * lc_r * v ** (dr - dq)


def _gcd_inner(p: MPoly, q: MPoly) -> MPoly:
    """Unnormalized gcd; keeps rational content so primitive parts work."""
    if p.is_zero():
        return q
    if q.is_zero():
        return p
    present = sorted(p.variables_present() | q.variables_present())
    if not present:
        return MPoly.constant(p.vars, _frac_gcd(p.constant_value(), q.constant_value()))
    var = present[0]
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp == 0:
        cont_q, _ = _content_and_primitive(q, var)
        return _gcd_inner(p, cont_q)
    if dq == 0:
        cont_p, _ = _content_and_primitive(p, var)
        return _gcd_inner(cont_p, q)
    cont_p, prim_p = _content_and_primitive(p, var)
    cont_q, prim_q = _content_and_primitive(q, var)
    cont = _gcd_inner(cont_p, cont_q)
    a, b = prim_p, prim_q
    if a.degree_in(var) < b.degree_in(var):
        a, b = b, a
    while True:
        r = _pseudo_remainder(a, b, var)
        if r.is_zero():
            g = b
            break
        if r.degree_in(var) == 0:
            g = MPoly.constant(p.vars, 1)
            break
        _, r = _content_and_primitive(r, var)
        a, b = b, r
    _, g = _content_and_primitive(g, var)
    return cont * g


def gcd(p: MPoly, q: MPoly) -> MPoly:
    """Greatest common divisor, normalized to leading coefficient 1."""
    p._check_same(q)
    if p.is_zero() and q.is_zero():
        return MPoly.zero(p.vars)
    return _gcd_inner(p, q).monic()


# ---------------------------------------------------------------------------
# Resultants (Sylvester determinant)


def _det_bareiss(matrix):
    """Fraction-free determinant of a square MPoly matrix (Bareiss)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    vars = matrix[0][0].vars
    m = [row[:] for row in matrix]
    sign = 1
    prev = MPoly.constant(vars, 1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot_row = next(
                (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
            )
            if pivot_row is None:
                return MPoly.zero(vars)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = exact_divide(prev, num)
            m[i][k] = MPoly.zero(vars)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign == 1 else -det


def _det_scalar(matrix):
    """Determinant of a Fraction matrix by fraction-free elimination."""
    n = len(matrix)
    m = [row[:] for row in matrix]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if not m[k][k]:
            pivot_row = next((i for i in range(k + 1, n) if m[i][k]), None)
            if pivot_row is None:
                return Fraction(0)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
            m[i][k] = Fraction(0)
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _sylvester_matrix(p: MPoly, q: MPoly, var):
    dp, dq = p.degree_in(var), q.degree_in(var)
    vars = p.vars
    zero = MPoly.zero(vars)
    pc = p.coefficients_in(var)
    qc = q.coefficients_in(var)
    p_row = [pc.get(d, zero) for d in range(dp, -1, -1)]
    q_row = [qc.get(d, zero) for d in range(dq, -1, -1)]
    n = dp + dq
    matrix = []
    for i in range(dq):
        matrix.append([zero] * i + p_row + [zero] * (n - dp - 1 - i))
    for i in range(dp):
        matrix.append([zero] * i + q_row + [zero] * (n - dq - 1 - i))
    return matrix


def _det_univariate_interp(matrix, var):
    """Determinant via evaluation/interpolation when entries only use var."""
    from .univar import interpolate, to_univariate

    vars = matrix[0][0].vars
    degree_bound = sum(
        max((e.degree_in(var) for e in row if not e.is_zero()), default=0)
        for row in matrix
    )
    points = []
    values = []
    x = 0
    coeff_rows = [[to_univariate(e, var) for e in row] for row in matrix]

    def eval_poly(coeffs, at):
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * at + c
        return acc

    while len(points) < degree_bound + 1:
        at = Fraction(x)
        x = -x if x > 0 else -x + 1
        scalar = [[eval_poly(c, at) for c in row] for row in coeff_rows]
        points.append(at)
        values.append(_det_scalar(scalar))
    coeffs = interpolate(points, values)
    terms = {}
    i = vars.index(var)
    for d, c in enumerate(coeffs):
        if c:
            exps = tuple(d if j == i else 0 for j in range(len(vars)))
            terms[exps] = c
    return MPoly(vars, terms)


def resultant(p: MPoly, q: MPoly, var) -> MPoly:
    """Resultant w.r.t. var: Sylvester determinant, p-rows above q-rows."""
    p._check_same(q)
    if p.is_zero() or q.is_zero():
        raise DegenerateCover("resultant of a zero polynomial")
    dp, dq = p.degree_in(var), q.degree_in(var)
    if dp == 0 and dq == 0:
        raise TripleCoverError("resultant: both arguments constant in %s" % var)
    if dq == 0:
        return q ** dp
    if dp == 0:
        return p ** dq
    matrix = _sylvester_matrix(p, q, var)
    remaining = (p.variables_present() | q.variables_present()) - {var}
    if len(remaining) == 1:
        return _det_univariate_interp(matrix, next(iter(remaining)))
    return _det_bareiss(matrix)


# ---------------------------------------------------------------------------
# Squarefree decomposition


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """unit * product(factor^multiplicity) == the decomposed polynomial."""

    unit: Fraction
    parts: tuple  # ((factor: MPoly, multiplicity: int), ...)

    def reassemble(self, vars) -> MPoly:
        p = MPoly.constant(vars, self.unit)
        for factor, mult in self.parts:
            p = p * factor ** mult
        return p


def _gradient_gcd(p: MPoly) -> MPoly:
    """gcd of p with all its partial derivatives (the repeated-factor core)."""
    g = p
    for var in sorted(p.variables_present()):
        g = gcd(g, p.partial_derivative(var))
        if g.is_constant():
            break
    return g


def squarefree_decomposition(p: MPoly) -> SquarefreeDecomposition:
    """Yun-style characteristic-zero decomposition via iterated gcds."""
    if p.is_zero():
        raise DegenerateCover("squarefree decomposition of zero")
    if p.is_constant():
        return SquarefreeDecomposition(p.constant_value(), ())
    core = _gradient_gcd(p)  # product f_i^(e_i - 1), monic
    distinct = exact_divide(core, p).monic()  # product of distinct factors
    parts = []
    b, g, mult = distinct, core, 1
    while not b.is_constant():
        c = gcd(b, g)  # factors of multiplicity > mult
        factor = exact_divide(c, b)
        if not factor.is_constant():
            parts.append((factor.monic(), mult))
        b = c
        if not c.is_constant():
            g = exact_divide(c, g).monic()
        mult += 1
    rebuilt = MPoly.constant(p.vars, 1)
    for factor, m in parts:
        rebuilt = rebuilt * factor ** m
    unit = exact_divide(rebuilt, p)
    if not unit.is_constant():
        raise TripleCoverError("squarefree decomposition lost a factor")
    return SquarefreeDecomposition(unit.constant_value(), tuple(parts))


def squarefree_part(p: MPoly) -> MPoly:
    """Product of the distinct irreducible factors, monic."""
    if p.is_zero():
        raise DegenerateCover("squarefree part of zero")
    if p.is_constant():
        return MPoly.constant(p.vars, 1)
    return exact_divide(_gradient_gcd(p), p).monic()


def repeated_part(p: MPoly) -> MPoly:
    """Product factor^(multiplicity - 1), monic; constant iff p squarefree."""
    if p.is_zero():
        raise DegenerateCover("repeated part of zero")
    if p.is_constant():
        return MPoly.constant(p.vars, 1)
    return _gradient_gcd(p)


def radical_divides(p: MPoly, q: MPoly):
    """Does every irreducible factor of p divide q?

    Returns (flag, offending_factor_or_None); the offending factor is a
    (possibly composite) divisor of p coprime to q.
    """
    if p.is_zero():
        raise ZeroDivisionError("radical_divides with zero first argument")
    r = squarefree_part(p)
    while True:
        g = gcd(r, q)
        if g.is_constant():
            if r.is_constant():
                return True, None
            return False, r
        r = exact_divide(g, r).monic()
