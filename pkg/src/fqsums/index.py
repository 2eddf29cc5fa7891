"""Index decomposition g = a x^r f(x^s) + b and cyclotomic mappings."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BranchMismatch, ConstantPolynomial, NotDivisor
from .field import FieldSpec
from .poly import (
    SparsePoly,
    canonicalize,
    compose_power,
    eval_poly,
    make_poly,
    monomial,
    poly_add,
    poly_scale,
)


@dataclass(frozen=True)
class IndexForm:
    """Unique decomposition of a nonconstant polynomial of reduced degree <= q - 1.

    ``ell`` is the index, ``s = (q-1)/ell``, ``f`` is monic with
    gcd(exponents of f, ell) = 1, and ``n0`` counts the ell-th roots of unity
    at which f vanishes.
    """

    b: int
    a: int
    r: int
    s: int
    ell: int
    f: SparsePoly
    n0: int

    def polynomial(self, spec: FieldSpec) -> SparsePoly:
        """Rebuild a x^r f(x^s) + b."""
        body = poly_scale(spec, compose_power(self.f, self.s), self.a)
        shifted = SparsePoly(tuple((e + self.r, c) for e, c in body.terms))
        return poly_add(spec, shifted, monomial(0, self.b))


@dataclass(frozen=True)
class CyclotomicMapping:
    """x -> a_i R_i(x) on the coset C_i = gamma^i C_0 of index d; 0 -> 0.

    ``offset`` is an additive constant carried alongside (the b of an index
    form); the mapping itself always sends 0 to 0.
    """

    d: int
    branches: tuple[tuple[int, SparsePoly], ...]
    offset: int = 0

    def __post_init__(self):
        if len(self.branches) != self.d:
            raise BranchMismatch(f"expected {self.d} branches, got {len(self.branches)}")
        for _, R in self.branches:
            if R.is_zero:
                raise BranchMismatch("branch polynomials must be nonzero")

    @property
    def L(self) -> tuple[int, ...]:
        return tuple(i for i, (a, _) in enumerate(self.branches) if a)

    @property
    def n0(self) -> int:
        return self.d - len(self.L)

    def check_field(self, spec: FieldSpec):
        if (spec.q - 1) % self.d:
            raise BranchMismatch(f"{self.d} does not divide {spec.q - 1}")


def index_form(spec: FieldSpec, g: SparsePoly) -> IndexForm:
    g = canonicalize(spec, g)
    b = g.constant
    body = [(e, c) for e, c in g.terms if e > 0]
    if not body:
        raise ConstantPolynomial("polynomial is constant on the field")
    n = spec.q - 1
    r = body[0][0]
    a = body[-1][1]
    s = n
    for e, _ in body:
        s = math.gcd(s, e - r)
    ell = n // s
    inv_a = spec.inv(a)
    f = make_poly(spec, [((e - r) // s, spec.mul(c, inv_a)) for e, c in body])
    return IndexForm(b=b, a=a, r=r, s=s, ell=ell, f=f, n0=_roots_on_unit_group(spec, f, s))


def _roots_on_unit_group(spec: FieldSpec, f: SparsePoly, s: int) -> int:
    """#{z : z^ell = 1, f(z) = 0} where ell = (q-1)/s."""
    ell = (spec.q - 1) // s
    # one compiled pass over the field beats ell interpreted evaluations unless ell is tiny
    if spec.has_tables and spec.q <= 200 * ell:
        vals = kernels.eval_codes(spec.exp_table, spec.log_table, spec.zech_table,
                                  [e for e, _ in f.terms], [c for _, c in f.terms])
        # vals[1 + t] = f(gamma^t); the ell-th roots of unity are gamma^(s*i)
        return int(np.count_nonzero(vals[1::s] == 0))
    return sum(1 for z in spec.roots_of_unity(ell) if eval_poly(spec, f, z) == 0)


def mapping_from_index(spec: FieldSpec, form: IndexForm) -> CyclotomicMapping:
    xr = monomial(form.r)
    branches = tuple(
        (spec.mul(form.a, eval_poly(spec, form.f, z)), xr)
        for z in spec.roots_of_unity(form.ell)
    )
    return CyclotomicMapping(form.ell, branches, offset=form.b)


def poly_from_mapping(spec: FieldSpec, mapping: CyclotomicMapping) -> SparsePoly:
    """Interpolating polynomial of the mapping (value 0 at 0), reduced mod x^q - x."""
    mapping.check_field(spec)
    d = mapping.d
    s = (spec.q - 1) // d
    if d % spec.p == 0:
        raise NotDivisor(f"{d} is not invertible in characteristic {spec.p}")
    inv_d = spec.inv(d % spec.p)
    zeta = spec.exp(s)
    terms = []
    for i, (a_i, R) in enumerate(mapping.branches):
        if not a_i:
            continue
        base = spec.mul(inv_d, a_i)
        step = spec.pow(zeta, -i)
        w = base
        for j in range(d):
            for e, c in R.terms:
                terms.append((j * s + e, spec.mul(w, c)))
            w = spec.mul(w, step)
    g = canonicalize(spec, make_poly(spec, terms))
    c0 = g.constant
    if c0:
        # constant survives only through R_i(0) != 0; move it onto x^(q-1)
        g = make_poly(spec, [t for t in g.terms if t[0]] + [(spec.q - 1, c0)])
    return g


def mapping_eval(spec: FieldSpec, mapping: CyclotomicMapping, x: int) -> int:
    if not x:
        return 0
    a_i, R = mapping.branches[spec.dlog(x) % mapping.d]
    return spec.mul(a_i, eval_poly(spec, R, x))
