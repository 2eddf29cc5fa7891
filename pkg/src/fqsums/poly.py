"""Sparse univariate polynomials over a FieldSpec.

Coefficients are element codes of the field the polynomial is used with;
the polynomial object itself does not carry the field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError
from .field import FieldSpec


@dataclass(frozen=True)
class SparsePoly:
    """Terms as (exponent, coefficient), exponents strictly increasing, no zero coefficients."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = -1
        for e, c in self.terms:
            if e <= last or not c:
                raise ValueError(f"non-canonical term list {self.terms}")
            last = e

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else -1

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms)

    @property
    def leading(self) -> int:
        return self.terms[-1][1] if self.terms else 0

    def coeff(self, e: int) -> int:
        for ee, c in self.terms:
            if ee == e:
                return c
        return 0

    @property
    def constant(self) -> int:
        return self.coeff(0)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


ZERO = SparsePoly()


def monomial(e: int, c: int = 1) -> SparsePoly:
    return SparsePoly(((e, c),)) if c else ZERO


def make_poly(spec: FieldSpec, terms) -> SparsePoly:
    """Build a polynomial from (exponent, coefficient) pairs or a dict, merging like terms."""
    acc: dict[int, int] = {}
    items = terms.items() if isinstance(terms, dict) else terms
    for e, c in items:
        if e < 0:
            raise ValueError("negative exponent")
        acc[e] = spec.add(acc.get(e, 0), spec.check(c))
    return SparsePoly(tuple((e, c) for e, c in sorted(acc.items()) if c))


def poly_add(spec: FieldSpec, f: SparsePoly, g: SparsePoly) -> SparsePoly:
    return make_poly(spec, list(f.terms) + list(g.terms))


def poly_scale(spec: FieldSpec, f: SparsePoly, c: int) -> SparsePoly:
    if not c:
        return ZERO
    return SparsePoly(tuple((e, spec.mul(a, c)) for e, a in f.terms))


def poly_sub(spec: FieldSpec, f: SparsePoly, g: SparsePoly) -> SparsePoly:
    return poly_add(spec, f, poly_scale(spec, g, spec.neg(1)))


def compose_power(f: SparsePoly, k: int) -> SparsePoly:
    """f(x^k) for k >= 1."""
    return SparsePoly(tuple((e * k, c) for e, c in f.terms))


def eval_poly(spec: FieldSpec, g: SparsePoly, x: int) -> int:
    if not x:
        return g.constant
    acc = 0
    if spec.has_tables:
        n = spec.q - 1
        lx = spec.dlog(x)
        exp, log = spec._exp, spec._log
        for e, c in g.terms:
            acc = spec.add(acc, exp[(log[c] + e * lx) % n])
        return acc
    for e, c in g.terms:
        acc = spec.add(acc, spec.mul(c, spec.pow(x, e)))
    return acc


def reduce_exponent(e: int, q: int) -> int:
    """Smallest exponent giving the same function as x^e on GF(q)."""
    return e if e < q else 1 + (e - 1) % (q - 1)


def canonicalize(spec: FieldSpec, g: SparsePoly) -> SparsePoly:
    """Reduce modulo x^q - x so that every exponent is at most q - 1."""
    if g.degree < spec.q:
        return g
    return make_poly(spec, [(reduce_exponent(e, spec.q), c) for e, c in g.terms])


# -- text syntax --------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<vec>\[[^\]]*\])|(?P<int>\d+))?\s*
        (?P<star>\*)?\s*
        (?:(?P<x>x)\s*(?:\^\s*(?P<exp>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_poly(spec: FieldSpec, text: str) -> SparsePoly:
    """Parse "x^5+x^3+x", "5*x^4+2", "-x^2+[1,2]*x^3", "0"."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    pos, terms = 0, []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text!r} at position {pos}")
        if pos and not m.group("sign"):
            raise ParseError(f"missing operator in {text!r} at position {pos}")
        vec, num, has_x = m.group("vec"), m.group("int"), m.group("x")
        if vec is None and num is None and not has_x:
            raise ParseError(f"empty term in {text!r}")
        if m.group("star") and not (has_x and (vec or num)):
            raise ParseError(f"dangling '*' in {text!r}")
        if vec is not None:
            try:
                coords = [int(t) for t in vec[1:-1].split(",") if t.strip()]
            except ValueError:
                raise ParseError(f"bad coordinate vector {vec!r}") from None
            if len(coords) > spec.m:
                raise ParseError(f"{vec} has more than {spec.m} coordinates")
            c = spec.from_coords(coords)
        elif num is not None:
            c = int(num) % spec.p
        else:
            c = 1
        if m.group("sign") == "-":
            c = spec.neg(c)
        e = (int(m.group("exp")) if m.group("exp") else 1) if has_x else 0
        terms.append((e, c))
        pos = m.end()
    return make_poly(spec, terms)


def format_poly(spec: FieldSpec, g: SparsePoly) -> str:
    if g.is_zero:
        return "0"
    parts = []
    for e, c in reversed(g.terms):
        coef = spec.format_element(c)
        if e == 0:
            parts.append(coef)
        else:
            mono = "x" if e == 1 else f"x^{e}"
            parts.append(mono if c == 1 else f"{coef}*{mono}")
    return "+".join(parts)
