"""Exact values in Z[zeta_p] for additive character sums.

A value is an integer vector ``coeffs`` with value sum(coeffs[i] * zeta^i).
Because 1 + zeta + ... + zeta^(p-1) = 0 the vector is only defined up to
adding a constant; the canonical representative has ``coeffs[p-1] == 0``.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PrimeMismatch
from .field import FieldSpec

EPS = sys.float_info.epsilon


def _canonical(coeffs) -> tuple[int, ...]:
    top = coeffs[-1]
    return tuple(c - top for c in coeffs)


@dataclass(frozen=True)
class CyclotomicValue:
    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.p:
            raise ValueError(f"expected {self.p} coefficients, got {len(self.coeffs)}")
        if self.coeffs[-1]:
            object.__setattr__(self, "coeffs", _canonical(self.coeffs))

    @classmethod
    def from_counts(cls, p: int, counts) -> CyclotomicValue:
        """The value sum_i counts[i] zeta^i (e.g. a histogram of traces)."""
        return cls(p, tuple(int(c) for c in counts))

    @classmethod
    def integer(cls, p: int, n: int) -> CyclotomicValue:
        return cls(p, (n,) + (0,) * (p - 1))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> CyclotomicValue:
        v = [0] * p
        v[k % p] = 1
        return cls(p, tuple(v))

    @property
    def is_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def __int__(self):
        if not self.is_integer:
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def __add__(self, other):
        return cv_add(self, other)

    def __sub__(self, other):
        return cv_add(self, cv_scale(other, -1))

    def __neg__(self):
        return cv_scale(self, -1)

    def rotate(self, k: int) -> CyclotomicValue:
        """Multiply by zeta^k."""
        k %= self.p
        c = self.coeffs
        return CyclotomicValue(self.p, c[-k:] + c[:-k] if k else c)

    def to_json(self) -> dict:
        return {"p": self.p, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> CyclotomicValue:
        return cls(int(data["p"]), tuple(int(c) for c in data["coeffs"]))

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else f"{c}*z^{i}")
        return " + ".join(terms) if terms else "0"


def cv_char(spec: FieldSpec, x: int) -> CyclotomicValue:
    """psi(x) = zeta_p^Tr(x), Tr the absolute trace."""
    return CyclotomicValue.zeta(spec.p, spec.trace(x, 1))


def cv_add(a: CyclotomicValue, b: CyclotomicValue) -> CyclotomicValue:
    if a.p != b.p:
        raise PrimeMismatch(f"cannot combine values over zeta_{a.p} and zeta_{b.p}")
    return CyclotomicValue(a.p, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))


def cv_scale(a: CyclotomicValue, n: int) -> CyclotomicValue:
    return CyclotomicValue(a.p, tuple(n * x for x in a.coeffs))


@lru_cache(maxsize=None)
def _unit_circle(p: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    # angles folded into [-pi, pi] keep the per-term error near 5 ulp
    angles = [math.tau * (i if 2 * i <= p else i - p) / p for i in range(p)]
    return tuple(map(math.cos, angles)), tuple(map(math.sin, angles))


def cv_abs(a: CyclotomicValue) -> tuple[float, float]:
    """|a| in binary64 together with a conservative absolute error bound."""
    p = a.p
    cos, sin = _unit_circle(p)
    re = math.fsum(c * cos[i] for i, c in enumerate(a.coeffs) if c)
    im = math.fsum(c * sin[i] for i, c in enumerate(a.coeffs) if c)
    scale = max([1] + [abs(c) for c in a.coeffs])
    return math.hypot(re, im), 8 * p * scale * EPS


def cv_norm_squared(a: CyclotomicValue) -> CyclotomicValue:
    """|a|^2 = a * conj(a), computed exactly."""
    p, c = a.p, a.coeffs
    out = [0] * p
    nz = [(i, x) for i, x in enumerate(c) if x]
    for i, x in nz:
        for j, y in nz:
            out[(i - j) % p] += x * y
    return CyclotomicValue(p, tuple(out))


def exact_abs_squared(a: CyclotomicValue) -> Fraction | None:
    """|a|^2 as a rational when it is one, else None."""
    n = cv_norm_squared(a)
    return Fraction(n.coeffs[0]) if n.is_integer else None
