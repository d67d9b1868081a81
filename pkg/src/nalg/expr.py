"""Text and JSON forms of polynomials.

Grammar (whitespace is ignored)::

    poly   = term { ("+"|"-") term } ;
    term   = [ coeff [ "*" ] ] factor | coeff ;
    factor = var | "(" factor factor ")" ;
    var    = "x" digits | "x" ;            bare "x" is x1
    coeff  = [ "-" ] digits [ "/" digits ] ;

Every product needs its own pair of parentheses, so ``(x (x x))`` and
``((x x) x)`` can never be confused.  As a convenience the first term may
carry a bare sign (``-x``), which is how negative leading terms are printed.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .magma import ONE, Flavor, Monomial, Polynomial, canonicalize

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>x\d*)|(?P<op>[()+\-*/]))")


class ParseError(ValueError):
    def __init__(self, message: str, column: int, text: str = ""):
        super().__init__(f"{message} at column {column}")
        self.message = message
        self.column = column
        self.text = text


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[col - 1]!r}", col, text)
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    return tokens


def _check_parens(text: str) -> None:
    stack = []
    for i, ch in enumerate(text, 1):
        if ch == "(":
            stack.append(i)
        elif ch == ")":
            if not stack:
                raise ParseError("unmatched ')'", i, text)
            stack.pop()
    if stack:
        raise ParseError("unbalanced '('", stack[-1], text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def column(self) -> int:
        tok = self.peek()
        return tok[2] if tok else len(self.text) + 1

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, message: str):
        raise ParseError(message, self.column(), self.text)

    def poly(self) -> List[Tuple[Fraction, object]]:
        terms = [self.term(first=True)]
        while self.peek() is not None:
            tok = self.peek()
            if tok[1] not in "+-":
                self.error(f"expected '+' or '-', found {tok[1]!r}")
            self.take()
            c, f = self.term(first=False)
            terms.append((-c if tok[1] == "-" else c, f))
        return terms

    def term(self, first: bool):
        tok = self.peek()
        if tok is None:
            self.error("expected a term")
        sign = 1
        if tok[1] in "+-" and first:
            self.take()
            sign = -1 if tok[1] == "-" else 1
            tok = self.peek()
            if tok is None:
                self.error("expected a term after sign")
        elif tok[1] == "-":
            # coefficient with its own sign, e.g. "x + -2*x"
            self.take()
            sign = -1
            tok = self.peek()
            if tok is None or tok[0] != "num":
                self.error("expected digits after '-'")
        if tok[0] == "num":
            coeff = self.coeff()
            tok = self.peek()
            if tok is not None and tok[1] == "*":
                self.take()
                return sign * coeff, self.factor()
            if tok is not None and (tok[0] == "var" or tok[1] == "("):
                return sign * coeff, self.factor()
            return sign * coeff, ONE
        return Fraction(sign), self.factor()

    def coeff(self) -> Fraction:
        num = int(self.take()[1])
        tok = self.peek()
        if tok is not None and tok[1] == "/":
            self.take()
            tok = self.peek()
            if tok is None or tok[0] != "num":
                self.error("expected denominator digits")
            den = int(self.take()[1])
            if den == 0:
                raise ParseError("zero denominator", tok[2], self.text)
            return Fraction(num, den)
        return Fraction(num)

    def factor(self):
        tok = self.peek()
        if tok is None:
            self.error("expected a variable or '('")
        if tok[0] == "var":
            self.take()
            idx = int(tok[1][1:]) if len(tok[1]) > 1 else 1
            if idx < 1:
                raise ParseError("variable index must be >= 1", tok[2], self.text)
            return idx
        if tok[1] == "(":
            self.take()
            left = self.factor()
            right = self.factor()
            if self.peek() is None or self.peek()[1] != ")":
                self.error("expected ')'")
            self.take()
            return (left, right)
        self.error(f"expected a variable or '(', found {tok[1]!r}")


def parse_polynomial(text: str, flavor: Flavor = Flavor.MAGMA) -> Polynomial:
    """Parse ``text`` in the expression grammar; raises :class:`ParseError`."""
    flavor = Flavor.parse(flavor)
    _check_parens(text)
    if not text.strip():
        raise ParseError("empty expression", 1, text)
    terms = _Parser(text).poly()
    return Polynomial([(canonicalize(m, flavor), c) for c, m in terms], flavor, canonical=True)


# --------------------------------------------------------------------------
# text output

def _var(j: int, bare: bool) -> str:
    return "x" if bare and j == 1 else f"x{j}"


def format_monomial(m: Monomial, flavor: Flavor = Flavor.MAGMA, bare: bool = True) -> str:
    if m == ONE:
        return "1"
    if isinstance(m, int):
        return _var(m, bare)
    if flavor is Flavor.ASSOCIATIVE:
        out = _var(m[0], bare)
        for j in m[1:]:
            out = f"({out} {_var(j, bare)})"
        return out
    return f"({format_monomial(m[0], flavor, bare)} {format_monomial(m[1], flavor, bare)})"


def format_polynomial(p: Polynomial, bare: Optional[bool] = None) -> str:
    """Terms in decreasing ``≺`` order, leading term first."""
    if not p:
        return "0"
    if bare is None:
        bare = p.nvars() <= 1
    parts = []
    for m, c in p.sorted_terms(reverse=True):
        mono = format_monomial(m, p.flavor, bare)
        mag = abs(c)
        if m == ONE:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)


# --------------------------------------------------------------------------
# JSON

def monomial_to_json(m: Monomial, flavor: Flavor):
    if isinstance(m, int):
        return m
    if flavor is Flavor.ASSOCIATIVE:
        return list(m)
    if m == ONE:
        return []
    return [monomial_to_json(m[0], flavor), monomial_to_json(m[1], flavor)]


def monomial_from_json(obj, flavor: Flavor) -> Monomial:
    if isinstance(obj, bool):
        raise ValueError("booleans are not monomials")
    if isinstance(obj, int):
        return canonicalize(obj, flavor)
    if not isinstance(obj, list):
        raise ValueError(f"bad monomial encoding {obj!r}")
    if flavor is Flavor.ASSOCIATIVE:
        if not all(isinstance(j, int) and not isinstance(j, bool) and j >= 1 for j in obj):
            raise ValueError(f"associative monomials are lists of variable indices, got {obj!r}")
        return tuple(obj)
    if not obj:
        return ONE
    if len(obj) != 2:
        raise ValueError(f"tree nodes are two-element arrays, got {obj!r}")
    return canonicalize((monomial_from_json(obj[0], flavor), monomial_from_json(obj[1], flavor)), flavor)


def polynomial_to_json(p: Polynomial) -> dict:
    return {
        "flavor": p.flavor.value,
        "terms": [{"coeff": str(c), "monomial": monomial_to_json(m, p.flavor)}
                  for m, c in p.sorted_terms(reverse=True)],
    }


def polynomial_from_json(obj) -> Polynomial:
    if isinstance(obj, str):
        obj = json.loads(obj)
    flavor = Flavor.parse(obj["flavor"])
    terms = [(monomial_from_json(t["monomial"], flavor), Fraction(t["coeff"])) for t in obj["terms"]]
    return Polynomial(terms, flavor, canonical=True)
