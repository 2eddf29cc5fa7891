"""Exact additive character sums, computed three independent ways."""

from __future__ import annotations

import numpy as np

from . import kernels
from .cyclotomic import CyclotomicValue, cv_char
from .field import FieldSpec
from .index import CyclotomicMapping
from .poly import SparsePoly, canonicalize, eval_poly


def trace_counts(spec: FieldSpec, g: SparsePoly) -> np.ndarray:
    """counts[t] = #{x in F_q : Tr(g(x)) = t}."""
    g = canonicalize(spec, g)
    if spec.has_tables:
        return kernels.char_hist(spec.exp_table, spec.log_table, spec.zech_table,
                                 spec.trace_table, spec.p,
                                 [e for e, _ in g.terms], [c for _, c in g.terms])
    counts = np.zeros(spec.p, dtype=np.int64)
    for x in spec.elements():
        counts[spec.trace(eval_poly(spec, g, x))] += 1
    return counts


def char_sum_full(spec: FieldSpec, g: SparsePoly) -> CyclotomicValue:
    """sum over x in F_q of psi(g(x))."""
    return CyclotomicValue.from_counts(spec.p, trace_counts(spec, g))


def char_sum_nonzero(spec: FieldSpec, g: SparsePoly) -> CyclotomicValue:
    """sum over x in F_q^* of psi(g(x))."""
    return char_sum_full(spec, g) - cv_char(spec, g.constant)


def coset_counts(spec: FieldSpec, mapping: CyclotomicMapping) -> np.ndarray:
    """Trace histogram of the mapping over F_q^*, walking each coset C_i directly."""
    mapping.check_field(spec)
    d = mapping.d
    size = (spec.q - 1) // d
    counts = np.zeros(spec.p, dtype=np.int64)
    for i, (a_i, R) in enumerate(mapping.branches):
        if not a_i:
            counts[0] += size
            continue
        for u in range(size):
            y = spec.exp(i + d * u)
            counts[spec.trace(spec.mul(a_i, eval_poly(spec, R, y)))] += 1
    return counts


def char_sum_via_cosets(spec: FieldSpec, mapping: CyclotomicMapping,
                        offset: int | None = None) -> CyclotomicValue:
    """psi(b) * (1 + sum_i sum_{y in C_i} psi(a_i R_i(y))), b the offset."""
    b = mapping.offset if offset is None else offset
    counts = coset_counts(spec, mapping)
    counts[0] += 1
    return CyclotomicValue.from_counts(spec.p, counts).rotate(spec.trace(b))
