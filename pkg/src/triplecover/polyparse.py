"""Text grammar for polynomials and the canonical printer.

Grammar (LL(1), whitespace insignificant):

    expr     := ['-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := rational | var | '(' expr ')'
    rational := uint ('/' uint)?

Implicit multiplication is rejected on purpose; it keeps error offsets
precise.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import TripleCoverError
from .polyring import MPoly


class ParseError(TripleCoverError):
    def __init__(self, offset, expected, found):
        self.offset = offset
        self.expected = expected
        self.found = found
        super().__init__(
            "parse error at offset %d: expected %s, found %s"
            % (offset, expected, found)
        )


class _Lexer:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self._advance()

    def _advance(self):
        text, n = self.text, len(self.text)
        while self.pos < n and text[self.pos].isspace():
            self.pos += 1
        self.offset = self.pos
        if self.pos >= n:
            self.kind, self.value = "end", "end of input"
            return
        ch = text[self.pos]
        if ch.isdigit():
            j = self.pos
            while j < n and text[j].isdigit():
                j += 1
            self.kind, self.value = "int", text[self.pos:j]
            self.pos = j
        elif ch.isalpha() or ch == "_":
            j = self.pos
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            self.kind, self.value = "ident", text[self.pos:j]
            self.pos = j
        elif ch in "+-*/^()":
            self.kind, self.value = ch, ch
            self.pos += 1
        else:
            raise ParseError(self.pos, "a token", repr(ch))

    def take(self):
        kind, value, offset = self.kind, self.value, self.offset
        self._advance()
        return kind, value, offset

    def expect(self, kind, expected):
        if self.kind != kind:
            raise ParseError(self.offset, expected, self._describe())
        return self.take()

    def _describe(self):
        return "end of input" if self.kind == "end" else repr(self.value)


class _Parser:
    def __init__(self, text, vars):
        self.lexer = _Lexer(text)
        self.vars = tuple(vars)

    def parse(self) -> MPoly:
        p = self._expr()
        if self.lexer.kind != "end":
            raise ParseError(
                self.lexer.offset, "operator or end of input", self.lexer._describe()
            )
        return p

    def _expr(self) -> MPoly:
        negate = False
        if self.lexer.kind == "-":
            self.lexer.take()
            negate = True
        p = self._term()
        if negate:
            p = -p
        while self.lexer.kind in ("+", "-"):
            op, _, _ = self.lexer.take()
            q = self._term()
            p = p + q if op == "+" else p - q
        return p

    def _term(self) -> MPoly:
        p = self._factor()
        while self.lexer.kind == "*":
            self.lexer.take()
            p = p * self._factor()
        return p

    def _factor(self) -> MPoly:
        p = self._base()
        if self.lexer.kind == "^":
            self.lexer.take()
            _, digits, _ = self.lexer.expect("int", "exponent digits")
            p = p ** int(digits)
        return p

    def _base(self) -> MPoly:
        kind = self.lexer.kind
        if kind == "int":
            _, digits, _ = self.lexer.take()
            num = int(digits)
            if self.lexer.kind == "/":
                self.lexer.take()
                _, dens, offset = self.lexer.expect("int", "denominator digits")
                den = int(dens)
                if den == 0:
                    raise ParseError(offset, "a nonzero denominator", "0")
                return MPoly.constant(self.vars, Fraction(num, den))
            return MPoly.constant(self.vars, num)
        if kind == "ident":
            _, name, offset = self.lexer.take()
            if name not in self.vars:
                raise ParseError(
                    offset,
                    "a variable among %s" % (", ".join(self.vars)),
                    repr(name),
                )
            return MPoly.variable(self.vars, name)
        if kind == "(":
            self.lexer.take()
            p = self._expr()
            self.lexer.expect(")", "closing parenthesis")
            return p
        raise ParseError(
            self.lexer.offset,
            "a number, variable or parenthesis",
            self.lexer._describe(),
        )


def parse_poly(text: str, vars) -> MPoly:
    """Parse the canonical polynomial grammar over the given variable set."""
    return _Parser(text, vars).parse()


def _monomial_str(vars, exps):
    pieces = []
    for v, e in zip(vars, exps):
        if e == 1:
            pieces.append(v)
        elif e > 1:
            pieces.append("%s^%d" % (v, e))
    return "*".join(pieces)


def _coeff_str(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return "%d/%d" % (c.numerator, c.denominator)


def print_poly(p: MPoly) -> str:
    """Canonical rendering: graded-lex descending, explicit '*' and '^'."""
    if p.is_zero():
        return "0"
    out = []
    for exps, c in p.sorted_terms():
        mono = _monomial_str(p.vars, exps)
        mag = abs(c)
        if not mono:
            body = _coeff_str(mag)
        elif mag == 1:
            body = mono
        else:
            body = "%s*%s" % (_coeff_str(mag), mono)
        if not out:
            out.append("-" + body if c < 0 else body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)
