"""Cyclic codes in trace form: c_a = (Tr(g_a(beta^i)))_i with g_a = sum_{j in J} a_j x^j."""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .bounds import BoundReport, compare_rational
from .errors import BadCheckSet, ConstantPolynomial, NonDivisible, ShapeMismatch, ZeroCodeword
from .artin_schreier import subfield_embedding
from .field import FieldSpec, make_field, prime_power
from .index import index_form
from .poly import SparsePoly, canonicalize, compose_power, eval_poly, format_poly, make_poly


@dataclass(frozen=True)
class CodeSpec:
    q: int
    m: int
    N: int
    J: tuple[int, ...]
    base: FieldSpec
    ext: FieldSpec
    embedding: tuple[int, ...]

    @property
    def Q(self) -> int:
        return self.ext.q

    @property
    def k(self) -> int:
        return (self.Q - 1) // self.N

    @property
    def beta(self) -> int:
        return self.ext.exp(self.k)

    @property
    def u(self) -> int:
        return len(self.J)

    @property
    def sub_degree(self) -> int:
        return self.base.m

    def g_a(self, a) -> SparsePoly:
        if len(a) != len(self.J):
            raise ValueError(f"expected {len(self.J)} coefficients, got {len(a)}")
        return make_poly(self.ext, list(zip(self.J, a)))

    def to_base(self, x: int) -> int:
        """Base-field code of an ext element lying in the embedded base."""
        return self.embedding.index(x)


def make_code(q: int, m: int, N: int, J) -> CodeSpec:
    p, e = prime_power(q)
    base = make_field(p, e)
    ext = make_field(p, e * m)
    Q = ext.q
    if (Q - 1) % N:
        raise BadCheckSet(f"length {N} does not divide {Q - 1}")
    J = tuple(sorted(set(int(j) for j in J)))
    if any(not 0 <= j < N for j in J):
        raise BadCheckSet(f"check set members must lie in [0, {N})")
    return CodeSpec(q, m, N, J, base, ext, subfield_embedding(base, ext))


@dataclass(frozen=True)
class CodewordRecord:
    a: tuple[int, ...]
    word: tuple[int, ...]
    weight: int
    z: int


def _values_at_powers(code: CodeSpec, g: SparsePoly) -> np.ndarray:
    """g(gamma^t) for t = 0 .. Q-2."""
    ext = code.ext
    if ext.has_tables:
        return kernels.eval_codes(ext.exp_table, ext.log_table, ext.zech_table,
                                  [e for e, _ in g.terms], [c for _, c in g.terms])[1:]
    return np.array([eval_poly(ext, g, ext.exp(t)) for t in range(ext.q - 1)], dtype=np.int64)


def trace_codeword(code: CodeSpec, a) -> CodewordRecord:
    a = tuple(int(x) for x in a)
    vals = _values_at_powers(code, code.g_a(a))
    rel = code.ext.relative_trace_table(code.sub_degree)
    positions = np.arange(code.N, dtype=np.int64) * code.k
    traces = rel[vals[positions]]
    word = tuple(code.to_base(int(t)) for t in traces)
    z = sum(1 for c in word if c == 0)
    return CodewordRecord(a, word, code.N - z, z)


def weight_via_Ek(code: CodeSpec, a) -> int:
    """w(a) from N_3 = #{x in GF(Q) : Tr(g_a(x^k)) = 0} and the coset structure of E_k."""
    ext, k = code.ext, code.k
    G = canonicalize(ext, compose_power(code.g_a(tuple(a)), k))
    rel = ext.relative_trace_table(code.sub_degree)
    vals = _values_at_powers(code, G)
    n3 = int(np.count_nonzero(rel[vals] == 0)) + (rel[G.constant] == 0)
    e_k = n3 - 1 if rel[G.constant] == 0 else n3
    rest = code.Q - 1 - e_k
    if rest % k:
        raise NonDivisible(f"|E_k| = {e_k} leaves {rest}, not divisible by k = {k}")
    return int(rest // k)


@dataclass(frozen=True)
class MinWeightResult:
    min_weight: int | None
    argmin: tuple[int, ...] | None
    exhaustive: bool
    codewords: int


def min_weight_search(code: CodeSpec, budget: int = 1 << 16, seed: int = 0) -> MinWeightResult:
    """Smallest nonzero weight, over all parameters a when (Q^u) <= budget,
    else over ``budget`` uniformly sampled a (``exhaustive`` then False)."""
    Q, u = code.Q, code.u
    exhaustive = Q**u <= budget
    if exhaustive:
        params = itertools.product(range(Q), repeat=u)
    else:
        rng = random.Random(seed)
        params = (tuple(rng.randrange(Q) for _ in range(u)) for _ in range(budget))
    seen = {}
    for a in params:
        rec = trace_codeword(code, a)
        if rec.weight and rec.word not in seen:
            seen[rec.word] = rec
    if not seen:
        return MinWeightResult(None, None, exhaustive, 0)
    best = min(seen.values(), key=lambda rec: (rec.weight, rec.a))
    return MinWeightResult(best.weight, best.a, exhaustive, len(seen))


def _check_coprime(code: CodeSpec):
    bad = [j for j in code.J if j and math.gcd(j, code.q) != 1]
    if bad:
        raise BadCheckSet(f"check set members {bad} are not coprime to q = {code.q}")


def code_weight_report(code: CodeSpec, a, *, weight: int | None = None) -> BoundReport:
    """Window for w(a) from the index form of g_a(x^k), relative trace case split."""
    _check_coprime(code)
    a = tuple(int(x) for x in a)
    if not any(a):
        raise ZeroCodeword("a = 0 gives the zero codeword")
    ext, q, Q, k = code.ext, code.q, code.Q, code.k
    G = canonicalize(ext, compose_power(code.g_a(a), k))
    if G.degree < 1:
        raise ConstantPolynomial("g_a(x^k) is constant on the field")
    form = index_form(ext, G)
    w = trace_codeword(code, a).weight if weight is None else weight
    ell, n0 = form.ell, form.n0
    grad = math.gcd(form.r, (Q - 1) // ell)
    rhs_coeff = Fraction((q - 1) * (ell - n0) * grad, k * q)

    def center_for(case_b: bool) -> Fraction:
        return (Fraction(Q - Q // q - case_b, k)
                - Fraction((q - 1) * (Q // q) * n0, k * ell))

    zero_in_J = 0 in code.J
    case_a = zero_in_J and ext.trace(form.b, code.sub_degree) == 0
    case_a_abs = zero_in_J and ext.trace(form.b, 1) == 0
    center = center_for(not case_a)
    lhs, err, rhs, verdict = compare_rational(Fraction(w) - center, rhs_coeff, Q)
    alt = compare_rational(Fraction(w) - center_for(not case_a_abs), rhs_coeff, Q)[3]
    params = {"weight": w, "ell": ell, "r": form.r, "n0": n0, "k": k,
              "b": ext.format_element(form.b), "case": "a" if case_a else "b",
              "case_absolute_trace": "a" if case_a_abs else "b",
              "absolute_trace_changes_verdict": alt != verdict,
              "window_lo": float(center) - rhs, "window_hi": float(center) + rhs,
              "g": format_poly(ext, G)}
    return BoundReport("code-weight", None, center, 0, lhs, err, rhs, rhs_coeff, Q,
                       True, "nonzero members of J coprime to q", verdict, params)


@dataclass(frozen=True)
class WeightFloor:
    """The lower bound A - B * sqrt(radicand) with A, B rational, B >= 0."""

    rational: Fraction
    surd_coeff: Fraction
    radicand: int
    ell: int
    r: int

    @property
    def value(self) -> float:
        return float(self.rational) - float(self.surd_coeff) * math.sqrt(self.radicand)

    def at_most(self, w) -> bool:
        """Exact test of floor <= w."""
        gap = self.rational - Fraction(w)
        return gap <= 0 or gap * gap <= self.surd_coeff**2 * self.radicand


def kj_structure(code: CodeSpec) -> tuple[int, int]:
    """(ell, r) when k*J mod (Q-1) = {r + i(Q-1)/ell : 0 <= i < ell} with 0 < r < (Q-1)/ell."""
    n = code.Q - 1
    kJ = sorted({(code.k * j) % n for j in code.J})
    ell = len(kJ)
    if not ell or n % ell or len(kJ) != len(code.J):
        raise ShapeMismatch(f"k*J = {kJ} is not a full progression modulo {n}")
    step = n // ell
    r = kJ[0]
    if not 0 < r < step or kJ != [r + i * step for i in range(ell)]:
        raise ShapeMismatch(f"k*J = {kJ} is not of the form r + i*{step}")
    return ell, r


def min_weight_floor(code: CodeSpec) -> WeightFloor:
    ell, r = kj_structure(code)
    _check_coprime(code)
    q, Q, k = code.q, code.Q, code.k
    rational = Fraction((q - 1) * (Q // q), k * ell) - Fraction(1, k)
    surd = Fraction((q - 1) * (ell - 1) * math.gcd(r, (Q - 1) // ell), k * q)
    return WeightFloor(rational, surd, Q, ell, r)


def weight_table(code: CodeSpec, params=None, *, verify_bounds: bool = False):
    """Rows (a, weight, window_lo, window_hi, in_window) for every a in ``params``
    (default: all nonzero parameter vectors)."""
    if params is None:
        params = (a for a in itertools.product(range(code.Q), repeat=code.u) if any(a))
    rows = []
    for a in params:
        rec = trace_codeword(code, a)
        row = {"a": a, "weight": rec.weight, "window_lo": None, "window_hi": None,
               "in_window": None}
        if verify_bounds:
            try:
                rep = code_weight_report(code, a, weight=rec.weight)
            except ConstantPolynomial:
                pass
            else:
                row.update(window_lo=rep.params["window_lo"], window_hi=rep.params["window_hi"],
                           in_window=rep.holds == "holds", report=rep)
        rows.append(row)
    return rows

