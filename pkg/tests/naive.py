"""Slow, table-free reference arithmetic used to cross-check the package.

Elements are coordinate tuples (c_0, ..., c_{m-1}) over GF(p); nothing here
imports fqsums.
"""

import cmath
import itertools
import math


class NaiveField:
    def __init__(self, p, modulus):
        """``modulus`` lists ascending coefficients of a monic irreducible."""
        self.p = p
        self.mod = tuple(modulus)
        self.m = len(modulus) - 1
        self.q = p**self.m

    def elements(self):
        return list(itertools.product(range(self.p), repeat=self.m))

    def zero(self):
        return (0,) * self.m

    def const(self, c):
        return (c % self.p,) + (0,) * (self.m - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def mul(self, a, b):
        p, m = self.p, self.m
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        for k in range(2 * m - 2, m - 1, -1):
            top = prod[k] % p
            if top:
                for i in range(m + 1):
                    prod[k - m + i] -= top * self.mod[i]
        return tuple(c % p for c in prod[:m])

    def pow(self, a, e):
        out = self.const(1)
        for _ in range(e):
            out = self.mul(out, a)
        return out

    def trace(self, a):
        """Absolute trace, an integer in [0, p)."""
        acc, x = self.zero(), a
        for _ in range(self.m):
            acc = self.add(acc, x)
            x = self.pow(x, self.p)
        assert all(c == 0 for c in acc[1:])
        return acc[0]

    def eval(self, terms, x):
        """terms: list of (exponent, coefficient tuple)."""
        acc = self.zero()
        for e, c in terms:
            acc = self.add(acc, self.mul(c, self.pow(x, e)))
        return acc

    def trace_counts(self, terms):
        counts = [0] * self.p
        for x in self.elements():
            counts[self.trace(self.eval(terms, x))] += 1
        return counts

    def char_sum(self, terms):
        return sum(cmath.exp(2j * math.pi * self.trace(self.eval(terms, x)) / self.p)
                   for x in self.elements())


def counts_to_canonical(counts):
    top = counts[-1]
    return [c - top for c in counts]
