"""Both sides of the Weil, index, cyclotomic and binomial bounds.

Sums are exact elements of Z[zeta_p].  A report compares
lhs = |sum - center| against rhs = rhs_coeff * sqrt(rhs_radicand): exactly
when |sum - center|^2 is rational, otherwise numerically with error bars
(escalating to mpmath before giving up as "inconclusive").
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction

import mpmath

from .charsum import char_sum_full, coset_counts
from .cyclotomic import CyclotomicValue, cv_abs, cv_norm_squared
from .errors import BadExponents, ConstantPolynomial
from .field import FieldSpec
from .index import CyclotomicMapping, index_form
from .poly import SparsePoly, canonicalize, format_poly

HOLDS = "holds"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"

EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class BoundReport:
    bound: str
    sum: CyclotomicValue | None
    center: Fraction
    center_phase: int
    lhs: float
    lhs_error: float
    rhs: float
    rhs_coeff: Fraction
    rhs_radicand: int
    applicable: bool
    reason: str
    holds: str
    params: dict = field(default_factory=dict)
    literal: BoundReport | None = None

    @property
    def slack(self) -> float:
        return self.rhs - self.lhs

    @property
    def violated(self) -> bool:
        return self.holds == VIOLATED

    def to_json(self) -> dict:
        out = {
            "bound": self.bound,
            "sum": self.sum.to_json() if self.sum is not None else None,
            "center": str(self.center),
            "center_phase": self.center_phase,
            "lhs": self.lhs,
            "lhs_error": self.lhs_error,
            "rhs": self.rhs,
            "rhs_coeff": str(self.rhs_coeff),
            "rhs_radicand": self.rhs_radicand,
            "applicable": self.applicable,
            "reason": self.reason,
            "holds": self.holds,
            "slack": self.slack,
            "params": {k: (str(v) if isinstance(v, Fraction) else v)
                       for k, v in self.params.items()},
        }
        if self.literal is not None:
            out["literal"] = self.literal.to_json()
        return out


def _rhs_float(coeff: Fraction, radicand: int) -> tuple[float, float]:
    rhs = float(coeff) * math.sqrt(radicand)
    return rhs, 4 * EPS * rhs


def _mp_sign(value: CyclotomicValue, den: int, rhs_sq: Fraction) -> int:
    """Sign of |value/den|^2 - rhs_sq at increasing precision (0 if unresolved)."""
    p = value.p
    for dps in (50, 200):
        with mpmath.workdps(dps):
            z = mpmath.fsum(c * mpmath.expjpi(mpmath.mpf(2 * i) / p)
                            for i, c in enumerate(value.coeffs) if c)
            diff = abs(z) ** 2 / den**2 - mpmath.mpf(rhs_sq.numerator) / rhs_sq.denominator
            if abs(diff) > mpmath.mpf(10) ** (-(dps - 10)) * max(1, float(rhs_sq)):
                return 1 if diff > 0 else -1
    return 0


def compare_cyclotomic(value: CyclotomicValue, den: int, rhs_coeff: Fraction,
                       radicand: int) -> tuple[float, float, float, str]:
    """Decide |value| / den <= rhs_coeff * sqrt(radicand).

    Returns (lhs, lhs_error, rhs, verdict).  "violated" is only returned when
    the gap exceeds the binary64 error; inside the error band an exact (or
    high-precision) check can still certify "holds".
    """
    mag, err = cv_abs(value)
    lhs, lhs_err = mag / den, err / den
    rhs, rhs_err = _rhs_float(rhs_coeff, radicand)
    if lhs - lhs_err > rhs + rhs_err:
        return lhs, lhs_err, rhs, VIOLATED
    if lhs + lhs_err < rhs - rhs_err:
        return lhs, lhs_err, rhs, HOLDS
    rhs_sq = rhs_coeff**2 * radicand
    norm = cv_norm_squared(value)
    if norm.is_integer:
        below = Fraction(norm.coeffs[0], den**2) <= rhs_sq
    else:
        below = _mp_sign(value, den, rhs_sq) < 0
    return lhs, lhs_err, rhs, HOLDS if below else INCONCLUSIVE


def compare_rational(lhs_exact: Fraction, rhs_coeff: Fraction,
                     radicand: int) -> tuple[float, float, float, str]:
    """Decide |lhs_exact| <= rhs_coeff * sqrt(radicand) exactly."""
    rhs, _ = _rhs_float(rhs_coeff, radicand)
    lhs = abs(lhs_exact)
    verdict = HOLDS if lhs * lhs <= rhs_coeff**2 * radicand else VIOLATED
    return float(lhs), 0.0, rhs, verdict


def centered_report(bound: str, total: CyclotomicValue, center: Fraction, phase: int,
                    rhs_coeff: Fraction, radicand: int, *, applicable=True, reason="",
                    params=None) -> BoundReport:
    """Report for |total - center * zeta^phase| <= rhs_coeff * sqrt(radicand)."""
    center = Fraction(center)
    den = center.denominator
    p = total.p
    scaled = CyclotomicValue(p, tuple(den * c for c in total.coeffs))
    shift = [0] * p
    shift[phase % p] = center.numerator
    scaled = scaled - CyclotomicValue(p, tuple(shift))
    lhs, err, rhs, verdict = compare_cyclotomic(scaled, den, Fraction(rhs_coeff), radicand)
    return BoundReport(bound, total, center, phase % total.p, lhs, err, rhs,
                       Fraction(rhs_coeff), radicand, applicable, reason, verdict,
                       dict(params or {}))


def _nonconstant(spec: FieldSpec, g: SparsePoly) -> SparsePoly:
    g = canonicalize(spec, g)
    if g.degree < 1:
        raise ConstantPolynomial("polynomial is constant on the field")
    return g


def weil_report(spec: FieldSpec, g: SparsePoly, *,
                total: CyclotomicValue | None = None) -> BoundReport:
    g = _nonconstant(spec, g)
    n = g.degree
    total = char_sum_full(spec, g) if total is None else total
    applicable = n % spec.p != 0
    reason = "p does not divide the degree" if applicable else "p divides the degree"
    suspected = False
    if abs(cv_abs(total)[0] - spec.q) < 1e-6:
        norm = cv_norm_squared(total)
        suspected = norm.is_integer and norm.coeffs[0] == spec.q**2
    params = {"n": n, "suspected_artin_schreier": suspected,
              "weaker_than_trivial": (n - 1) ** 2 * spec.q > spec.q**2}
    return centered_report("weil", total, Fraction(0), 0, Fraction(n - 1), spec.q,
                           applicable=applicable, reason=reason, params=params)


def index_report(spec: FieldSpec, g: SparsePoly, *,
                 total: CyclotomicValue | None = None) -> BoundReport:
    g = _nonconstant(spec, g)
    form = index_form(spec, g)
    total = char_sum_full(spec, g) if total is None else total
    q, ell, n0 = spec.q, form.ell, form.n0
    center = Fraction(q * n0, ell)
    rhs_coeff = Fraction((ell - n0) * math.gcd(form.r, form.s))
    g_rp = math.gcd(form.r, spec.p)
    params = {
        "ell": ell, "r": form.r, "s": form.s, "n0": n0,
        "b": spec.format_element(form.b), "a": spec.format_element(form.a),
        "f": format_poly(spec, form.f), "gcd_r_p": g_rp,
        "weil_rhs": (g.degree - 1) * math.sqrt(q),
        "weaker_than_trivial": rhs_coeff**2 * q > q * q,
    }
    reason = ("gcd(r, p) = 1" if g_rp == 1
              else f"gcd(r, p) = {g_rp}: vanishing order divisible by p")
    phase = spec.trace(form.b) if center else 0
    report = centered_report("index", total, center, phase, rhs_coeff, q,
                             reason=reason, params=params)
    if phase:
        literal = centered_report("index-literal", total, center, 0, rhs_coeff, q,
                                  reason="center without the psi(b) factor", params=params)
        report = replace(report, literal=literal)
    return report


CYCLO_VARIANTS = ("full", "monomial", "nonzero")


def cyclo_report(spec: FieldSpec, mapping: CyclotomicMapping, variant: str = "full") -> BoundReport:
    if variant not in CYCLO_VARIANTS:
        raise ValueError(f"variant must be one of {CYCLO_VARIANTS}")
    mapping.check_field(spec)
    q, d = spec.q, mapping.d
    L = mapping.L
    n0 = mapping.n0
    counts = coset_counts(spec, mapping)
    if variant != "nonzero":
        counts[0] += 1
        center = Fraction(q * n0, d)
    else:
        center = Fraction((q - 1) * n0, d)
    total = CyclotomicValue.from_counts(spec.p, counts)
    degrees = {i: mapping.branches[i][1].degree for i in L}
    reasons = []
    applicable = True
    if any(math.gcd(degrees[i], spec.p) != 1 for i in L):
        applicable = False
        reasons.append("some branch degree is divisible by p")
    if variant == "full" and any(mapping.branches[i][1].constant for i in L):
        applicable = False
        reasons.append("some R_i(0) != 0 (only the nonzero variant covers this)")
    if not L:
        rhs_coeff = Fraction(0)
        reasons.append("all branches vanish")
    elif variant == "monomial":
        if any(len(R) != 1 for _, R in mapping.branches):
            applicable = False
            reasons.append("branches are not all monomials")
        s = (q - 1) // d
        rhs_coeff = Fraction((d - n0) * max(math.gcd(degrees[i], s) for i in L))
    else:
        rhs_coeff = Fraction((d - n0) * max(degrees.values()))
    params = {"d": d, "n0": n0, "L": list(L),
              "r": max(degrees.values()) if L else 0, "variant": variant}
    return centered_report(f"cyclo-{variant}", total, center, 0, rhs_coeff, q,
                           applicable=applicable, reason="; ".join(reasons) or "hypotheses met",
                           params=params)


def binomial_parameters(q: int, n: int, r: int) -> tuple[int, int, int]:
    """(ell, t, u) for x^n + a x^r over F_q."""
    ell = (q - 1) // math.gcd(n - r, q - 1)
    t = math.gcd(math.gcd(n, r), q - 1)
    u = math.gcd(n - r, ell)
    return ell, t, u


def root_powers(spec: FieldSpec, n: int, r: int) -> frozenset[int]:
    """{z^(n-r) : z an ell-th root of unity}, the values -a must hit for a root."""
    ell = (spec.q - 1) // math.gcd(n - r, spec.q - 1)
    return frozenset(spec.pow(z, n - r) for z in spec.roots_of_unity(ell))


def binomial_root_tests(spec: FieldSpec, n: int, r: int, a: int, ell: int,
                        u: int, powers=None) -> tuple[bool, bool, int]:
    """(root by search over ell-th roots of unity, root by the dlog test, k = dlog(-a))."""
    minus_a = spec.neg(a)
    if powers is None:
        powers = root_powers(spec, n, r)
    by_search = minus_a in powers
    k = spec.dlog(minus_a)
    by_dlog = k % ((spec.q - 1) * u // ell) == 0
    return by_search, by_dlog, k


def binomial_report(spec: FieldSpec, n: int, r: int, a: int, *,
                    total: CyclotomicValue | None = None, powers=None,
                    with_index: bool = False) -> BoundReport:
    """The two-case binomial bound, center q*u/ell when x^(n-r) + a has an ell-th-root-of-unity root."""
    q = spec.q
    if not (q - 1 >= n > r >= 1) or not a:
        raise BadExponents(f"need q-1 >= n > r >= 1 and a != 0, got n={n}, r={r}, a={a}")
    ell, t, u = binomial_parameters(q, n, r)
    by_search, by_dlog, k = binomial_root_tests(spec, n, r, a, ell, u, powers)
    g = SparsePoly(((r, a), (n, 1)))
    total = char_sum_full(spec, g) if total is None else total
    if by_search:
        center, rhs_coeff = Fraction(q * u, ell), Fraction((ell - u) * t)
    else:
        center, rhs_coeff = Fraction(0), Fraction(ell * t)
    params = {"n": n, "r": r, "ell": ell, "t": t, "u": u, "k": k,
              "root_exists": by_search, "root_by_dlog": by_dlog,
              "tests_agree": by_search == by_dlog}
    if with_index:
        form = index_form(spec, g)
        params.update(index_ell=form.ell, index_n0=form.n0)
    reason = "root tests agree" if by_search == by_dlog else "ROOT TESTS DISAGREE"
    return centered_report("binomial", total, center, 0, rhs_coeff, q,
                           reason=reason, params=params)
