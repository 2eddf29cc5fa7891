"""Rational points on y^q - y = g(x) over GF(q^m), counted independently three ways."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from . import kernels
from .bounds import BoundReport, binomial_parameters, compare_rational
from .charsum import char_sum_full
from .cyclotomic import CyclotomicValue
from .errors import BadExponents, ConstantPolynomial, NonIntegerResult
from .field import FieldSpec, make_field, prime_power
from .index import index_form
from .poly import SparsePoly, canonicalize, eval_poly, format_poly, parse_poly, poly_scale


@dataclass(frozen=True)
class ASInstance:
    """y^q - y = g(x) with x, y in ext = GF(q^m) and base = GF(q) embedded in ext."""

    base: FieldSpec
    ext_degree: int
    ext: FieldSpec
    g: SparsePoly
    embedding: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.base.q

    @property
    def Q(self) -> int:
        return self.ext.q

    @property
    def sub_degree(self) -> int:
        return self.base.m

    @cached_property
    def restriction(self) -> dict[int, int]:
        """Inverse of the embedding: ext code of a subfield element -> base code."""
        return {e: c for c, e in enumerate(self.embedding)}

    def relative_trace(self, x: int) -> int:
        """Tr from ext to base, as an ext code."""
        return self.ext.trace(x, self.sub_degree)

    def with_poly(self, g: SparsePoly) -> ASInstance:
        return ASInstance(self.base, self.ext_degree, self.ext, canonicalize(self.ext, g),
                          self.embedding)


def subfield_embedding(base: FieldSpec, ext: FieldSpec) -> tuple[int, ...]:
    """Image in ext of every base element code."""
    if base.m == 1:
        return tuple(range(base.p))
    # base = GF(p)[x]/(modulus); send x to the smallest root of the modulus in ext
    coeffs = SparsePoly(tuple((i, c) for i, c in enumerate(base.modulus) if c))
    theta = min(z for z in ext.subfield(base.m) if eval_poly(ext, coeffs, z) == 0)
    image = []
    for code in range(base.q):
        acc, power = 0, 1
        for c in base.coords(code):
            acc = ext.add(acc, ext.mul(c, power))
            power = ext.mul(power, theta)
        image.append(acc)
    return tuple(image)


def make_instance(q: int, m: int, g: SparsePoly | str = SparsePoly(())) -> ASInstance:
    p, e = prime_power(q)
    base = make_field(p, e)
    ext = make_field(p, e * m)
    if isinstance(g, str):
        g = parse_poly(ext, g)
    return ASInstance(base, m, ext, canonicalize(ext, g), subfield_embedding(base, ext))


def _values(inst: ASInstance, g: SparsePoly) -> np.ndarray:
    ext = inst.ext
    if ext.has_tables:
        return kernels.eval_codes(ext.exp_table, ext.log_table, ext.zech_table,
                                  [e for e, _ in g.terms], [c for _, c in g.terms])
    return np.array([eval_poly(ext, g, x) for x in ext.elements()], dtype=np.int64)


def as_count_direct(inst: ASInstance) -> int:
    """q times the number of x with Tr(g(x)) = 0 (relative trace to the base)."""
    vals = _values(inst, inst.g)
    rel = inst.ext.relative_trace_table(inst.sub_degree)
    return inst.q * int(np.count_nonzero(rel[vals] == 0))


def as_count_charsum(inst: ASInstance) -> int:
    """Sum over every additive character of the base (trivial one included)
    of the exact character sum of g over ext."""
    total = CyclotomicValue.integer(inst.ext.p, inst.Q)
    for c in inst.embedding[1:]:
        total = total + char_sum_full(inst.ext, poly_scale(inst.ext, inst.g, c))
    if not total.is_integer or int(total) < 0:
        raise NonIntegerResult(f"character-sum count {total} is not a non-negative integer")
    return int(total)


@lru_cache(maxsize=None)
def _image_multiplicity(ext: FieldSpec, sub_degree: int) -> np.ndarray:
    """mult[v] = #{y in ext : y^q - y = v} with q = p^sub_degree."""
    mult = np.zeros(ext.q, dtype=np.int64)
    for y in ext.elements():
        mult[ext.sub(ext.frobenius(y, sub_degree), y)] += 1
    mult.flags.writeable = False
    return mult


def as_count_pairs(inst: ASInstance) -> int:
    """Number of pairs (x, y) in ext^2 with y^q - y = g(x), counted literally."""
    mult = _image_multiplicity(inst.ext, inst.sub_degree)
    return int(mult[_values(inst, inst.g)].sum())


def as_report(inst: ASInstance, *, count: int | None = None) -> BoundReport:
    """Index-form interval for the point count.

    The main term uses the base-field character sum of b: the center is
    Q + (Q n0 / ell) (q [Tr(b) = 0] - 1).  For b with Tr(b) = 0 (always the case
    when g(0) = 0) it equals Q + (q-1) Q n0 / ell, which is also reported as
    the literal center.
    """
    ext, q, Q = inst.ext, inst.q, inst.Q
    g = inst.g
    if g.degree < 1:
        raise ConstantPolynomial("polynomial is constant on the field")
    form = index_form(ext, g)
    N = as_count_direct(inst) if count is None else count
    ell, n0 = form.ell, form.n0
    main = Fraction(Q * n0, ell)
    tr_zero = inst.relative_trace(form.b) == 0
    center = Q + main * (q * tr_zero - 1)
    literal_center = Q + (q - 1) * main
    rhs_coeff = Fraction((q - 1) * (ell - n0) * math.gcd(form.r, (Q - 1) // ell))
    g_rp = math.gcd(form.r, ext.p)
    params = {"q": q, "m": inst.ext_degree, "N": N, "ell": ell, "r": form.r, "s": form.s,
              "n0": n0, "b": ext.format_element(form.b), "trace_b_zero": tr_zero,
              "f": format_poly(ext, form.f), "gcd_r_p": g_rp}
    reason = ("gcd(r, p) = 1" if g_rp == 1
              else f"gcd(r, p) = {g_rp}: vanishing order divisible by p")
    report = _rational_report("artin-schreier", N, center, rhs_coeff, Q, g_rp == 1,
                              reason, params)
    if center != literal_center:
        literal = _rational_report("artin-schreier-literal", N, literal_center, rhs_coeff, Q,
                                   g_rp == 1, "center without the Tr(b) case split", params)
        report = replace(report, literal=literal)
    return report


def _rational_report(name, N, center, rhs_coeff, radicand, applicable, reason, params):
    lhs, err, rhs, verdict = compare_rational(Fraction(N) - center, rhs_coeff, radicand)
    return BoundReport(name, None, Fraction(center), 0, lhs, err, rhs,
                       rhs_coeff, radicand, applicable, reason, verdict, dict(params))


def as_binomial_report(inst: ASInstance, n: int, r: int, a: int, *,
                       count: int | None = None) -> BoundReport:
    """Two-case interval for x^n + a x^r over ext, using the ext of ``inst``."""
    ext, q, Q = inst.ext, inst.q, inst.Q
    if not (Q - 1 >= n > r >= 1) or not a:
        raise BadExponents(f"need q^m-1 >= n > r >= 1 and a != 0, got n={n}, r={r}, a={a}")
    ell, t, u = binomial_parameters(Q, n, r)
    minus_a = ext.neg(a)
    by_search = any(ext.pow(z, n - r) == minus_a for z in ext.roots_of_unity(ell))
    k = ext.dlog(minus_a)
    by_dlog = k % ((Q - 1) * u // ell) == 0
    sub = inst.with_poly(SparsePoly(((r, a), (n, 1))))
    N = as_count_direct(sub) if count is None else count
    if by_search:
        center = Q + Fraction((q - 1) * Q * u, ell)
        rhs_coeff = Fraction((q - 1) * (ell - 1) * t)
    else:
        center = Fraction(Q)
        rhs_coeff = Fraction((q - 1) * ell * t)
    params = {"q": q, "m": inst.ext_degree, "N": N, "n": n, "r": r, "ell": ell, "t": t,
              "u": u, "k": k, "root_exists": by_search, "root_by_dlog": by_dlog,
              "tests_agree": by_search == by_dlog}
    reason = "root tests agree" if by_search == by_dlog else "ROOT TESTS DISAGREE"
    return _rational_report("artin-schreier-binomial", N, center, rhs_coeff, Q, True,
                            reason, params)


def binomial_counts(inst: ASInstance, n: int, r: int, a_codes) -> dict[str, np.ndarray]:
    """Point counts of y^q - y = x^n + a x^r for many a at once, three ways.

    Returns arrays ``direct``, ``charsum`` and ``pairs`` aligned with ``a_codes``.
    """
    ext = inst.ext
    tabs = (ext.exp_table, ext.log_table, ext.zech_table)
    a_codes = np.asarray(a_codes, dtype=np.int64)
    rel = inst.ext.relative_trace_table(inst.sub_degree)
    nonzero = (rel != 0).astype(np.int64)
    direct = inst.q * kernels.binomial_hist(*tabs, nonzero, 2, n, r, 1, a_codes)[:, 0]

    p = ext.p
    counts = np.zeros((len(a_codes), p), dtype=np.int64)
    counts[:, 0] += inst.Q
    for c in inst.embedding[1:]:
        scaled = np.array([ext.mul(c, int(a)) for a in a_codes], dtype=np.int64)
        counts += kernels.binomial_hist(*tabs, ext.trace_table, p, n, r, c, scaled)
    # an integer in Z[zeta_p] has all coefficients equal except the first
    if np.any(counts[:, 1:] != counts[:, 1:2]):
        raise NonIntegerResult("character-sum count is not a rational integer")
    charsum = counts[:, 0] - counts[:, 1]

    mult = _image_multiplicity(ext, inst.sub_degree)
    top = int(mult.max())
    hist = kernels.binomial_hist(*tabs, mult, top + 1, n, r, 1, a_codes)
    pairs = hist @ np.arange(top + 1, dtype=np.int64)
    return {"direct": direct, "charsum": charsum, "pairs": pairs}


def binomial_pairs(Q: int):
    """Every exponent pair 1 <= r < n <= Q-1."""
    return [(n, r) for n in range(2, Q) for r in range(1, n)]


def verify_binomials(inst: ASInstance, pairs) -> dict:
    """Check the three point counts and the index interval on x^n + a x^r for
    every a != 0 and every (n, r) in ``pairs``.

    The interval is only scored where gcd(r, p) = 1.
    """
    ext = inst.ext
    a_codes = np.array([ext.exp(k) for k in range(ext.q - 1)], dtype=np.int64)
    out = {"binomials": 0, "count_mismatches": 0, "interval_checked": 0,
           "interval_misses": 0, "first_failure": None}
    for n, r in pairs:
        counts = binomial_counts(inst, n, r, a_codes)
        coprime = math.gcd(r, ext.p) == 1
        for j, a in enumerate(a_codes):
            out["binomials"] += 1
            d, c, pr = (int(counts[key][j]) for key in ("direct", "charsum", "pairs"))
            failure = None
            if not d == c == pr:
                out["count_mismatches"] += 1
                failure = ("counts", n, r, int(a), d, c, pr)
            elif coprime:
                out["interval_checked"] += 1
                rep = as_report(inst.with_poly(SparsePoly(((r, int(a)), (n, 1)))), count=d)
                if rep.holds != "holds":
                    out["interval_misses"] += 1
                    failure = ("interval", n, r, int(a), d, rep.lhs, rep.rhs)
            if failure and out["first_failure"] is None:
                out["first_failure"] = failure
    return out
