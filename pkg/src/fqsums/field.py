"""Exact arithmetic in GF(p^m) using a polynomial basis.

Elements are plain Python ints: the coordinate vector (c_0, ..., c_{m-1})
of c_0 + c_1 x + ... + c_{m-1} x^{m-1} is stored as c_0 + c_1 p + ... +
c_{m-1} p^{m-1}.  For a prime field the element *is* its integer
representative, and the prime subfield of an extension is {0, ..., p-1}.

When q is at most the table limit the field carries exp/log tables with
respect to its fixed primitive element gamma, plus a Zech table
(log(1 + gamma^k)) and the absolute trace of every element.  Everything
still works without tables, only slower (generic polynomial arithmetic and
baby-step giant-step discrete logs).
"""

from __future__ import annotations

import itertools
import math
import re
from array import array
from functools import cached_property

import numpy as np

from .errors import (
    BadSubfield,
    DivisionByZero,
    NoPrimitiveModulus,
    NotDivisor,
    NotPrime,
    ParseError,
    Reducible,
    TooLarge,
    ZeroArgument,
)

DEFAULT_LIMIT = 1 << 20
DEFAULT_TABLE_LIMIT = 1 << 20


# -- integer helpers -------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n, ascending."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^m; raise NotPrime if q is not a prime power."""
    if q < 2:
        raise NotPrime(f"{q} is not a prime power")
    ps = prime_factors(q)
    if len(ps) != 1:
        raise NotPrime(f"{q} is not a prime power")
    p = ps[0]
    m = round(math.log(q, p))
    while p**m < q:
        m += 1
    while p**m > q:
        m -= 1
    if p**m != q:
        raise NotPrime(f"{q} is not a prime power")
    return p, m


# -- polynomials over GF(p) as ascending coefficient lists ------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], -1, p)
    for i in range(len(a) - 1, df - 1, -1):
        c = a[i] * inv_lead % p
        if c:
            for j in range(df + 1):
                a[i - df + j] = (a[i - df + j] - c * f[j]) % p
    return _trim(a[:df] if len(a) > df else a)


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _ppowmod(a, e, f, p):
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), f, p)
        base = _pmod(_pmul(base, base, p), f, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def is_irreducible(f, p: int) -> bool:
    """Rabin's test for a monic f (ascending coefficients) over GF(p)."""
    f = _trim([c % p for c in f])
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p**m, f, p) != _pmod(x, f, p):
        return False
    for t in prime_factors(m):
        h = _ppowmod(x, p ** (m // t), f, p)
        h = h + [0] * max(0, 2 - len(h))
        h[1] = (h[1] - 1) % p
        if len(_pgcd(f, _trim(h), p)) != 1:
            return False
    return True


# -- the field --------------------------------------------------------------

class FieldSpec:
    """A concrete GF(p^m) with fixed modulus and primitive element.

    Instances are immutable once built and may be shared freely.
    """

    def __init__(self, p: int, m: int, modulus, gamma: int, *,
                 table_limit: int = DEFAULT_TABLE_LIMIT):
        self.p = p
        self.m = m
        self.q = p**m
        self.modulus = tuple(modulus)
        self._pows = tuple(p**i for i in range(m))
        self.gamma = gamma
        self.has_tables = self.q <= table_limit
        self._exp = self._log = self._zech = None
        if self.has_tables:
            self._build_tables()

    # construction helpers

    def _build_tables(self):
        q, p, m = self.q, self.p, self.m
        n = q - 1
        exp = array('q', bytes(8 * n))
        if m == 1:
            x, g = 1, self.gamma
            for k in range(n):
                exp[k] = x
                x = x * g % p
        elif self.gamma == p:
            # multiplication by x: shift coordinates, reduce the top one
            low = self.modulus[:m]
            c = [1] + [0] * (m - 1)
            for k in range(n):
                exp[k] = self._from_list(c)
                top = c[-1]
                c = [0] + c[:-1]
                if top:
                    c = [(ci - top * fi) % p for ci, fi in zip(c, low)]
        else:
            x = 1
            for k in range(n):
                exp[k] = x
                x = self._mul_generic(x, self.gamma)
        log = array('q', [-1]) * q
        for k in range(n):
            log[exp[k]] = k
        zech = array('q', bytes(8 * n))
        for k in range(n):
            zech[k] = log[self._add_one(exp[k])]
        self._exp, self._log, self._zech = exp, log, zech

    def _add_one(self, x: int) -> int:
        low = x % self.p
        return x - low + (low + 1) % self.p

    def _from_list(self, c) -> int:
        return sum(ci * w for ci, w in zip(c, self._pows))

    def coords(self, x: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            x, d = divmod(x, p)
            out.append(d)
        return tuple(out)

    def from_coords(self, coords) -> int:
        coords = list(coords)
        if len(coords) > self.m:
            if any(c % self.p for c in coords[self.m:]):
                raise ValueError("too many coordinates")
            coords = coords[: self.m]
        return sum((c % self.p) * w for c, w in zip(coords, self._pows))

    def check(self, x: int) -> int:
        if not isinstance(x, (int, np.integer)) or not 0 <= x < self.q:
            raise ValueError(f"{x!r} is not an element of GF({self.q})")
        return int(x)

    # numpy views for the kernels

    @cached_property
    def exp_table(self) -> np.ndarray:
        self._need_tables()
        a = np.frombuffer(self._exp, dtype=np.int64)
        a.flags.writeable = False
        return a

    @cached_property
    def log_table(self) -> np.ndarray:
        self._need_tables()
        a = np.frombuffer(self._log, dtype=np.int64)
        a.flags.writeable = False
        return a

    @cached_property
    def zech_table(self) -> np.ndarray:
        self._need_tables()
        a = np.frombuffer(self._zech, dtype=np.int64)
        a.flags.writeable = False
        return a

    @cached_property
    def trace_table(self) -> np.ndarray:
        """Absolute trace Tr(x) in [0, p) for every element code x."""
        basis = np.array([self._trace_generic(self._pows[j], 1) for j in range(self.m)],
                         dtype=np.int64)
        digits = (np.arange(self.q, dtype=np.int64)[:, None]
                  // np.array(self._pows, dtype=np.int64)) % self.p
        t = (digits @ basis) % self.p
        t.flags.writeable = False
        return t

    def relative_trace_table(self, sub_degree: int) -> np.ndarray:
        """Tr to GF(p^sub_degree) of every element code (as codes in this field)."""
        if self.m % sub_degree:
            raise BadSubfield(f"{sub_degree} does not divide {self.m}")
        cache = self.__dict__.setdefault("_rel_traces", {})
        if sub_degree not in cache:
            p = self.p
            pw = np.array(self._pows, dtype=np.int64)
            basis = np.array([self.coords(self._trace_generic(self._pows[j], sub_degree))
                              for j in range(self.m)], dtype=np.int64)
            digits = (np.arange(self.q, dtype=np.int64)[:, None] // pw) % p
            t = ((digits @ basis) % p) @ pw
            t.flags.writeable = False
            cache[sub_degree] = t
        return cache[sub_degree]

    def _need_tables(self):
        if not self.has_tables:
            raise TooLarge(f"GF({self.q}) was built without lookup tables")

    # arithmetic

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        if self.has_tables:
            log, n = self._log, self.q - 1
            la = log[a]
            z = self._zech[(log[b] - la) % n]
            return 0 if z < 0 else self._exp[(la + z) % n]
        return self._add_generic(a, b)

    def _add_generic(self, a, b, sign=1):
        p = self.p
        out = 0
        for w in self._pows:
            da, a = a % p, a // p
            db, b = b % p, b // p
            out += ((da + sign * db) % p) * w
        return out

    def neg(self, a: int) -> int:
        if self.p == 2 or not a:
            return a
        if self.m == 1:
            return self.p - a
        return self._add_generic(0, a, -1)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self.m == 1:
            return a * b % self.p
        if self.has_tables:
            return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]
        return self._mul_generic(a, b)

    def _mul_generic(self, a, b):
        if self.m == 1:
            return a * b % self.p
        prod = _pmul(list(self.coords(a)), list(self.coords(b)), self.p)
        return self._from_list(_pmod(prod, self.modulus, self.p))

    def inv(self, a: int) -> int:
        if not a:
            raise DivisionByZero("inverse of zero")
        if self.m == 1:
            return pow(a, -1, self.p)
        if self.has_tables:
            return self._exp[(-self._log[a]) % (self.q - 1)]
        return self._pow_generic(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if not a:
            return 1 if e == 0 else 0
        if self.m == 1:
            return pow(a, e, self.p)
        if self.has_tables:
            return self._exp[self._log[a] * e % (self.q - 1)]
        return self._pow_generic(a, e % (self.q - 1))

    def _pow_generic(self, a, e):
        result, base = 1, a
        while e:
            if e & 1:
                result = self._mul_generic(result, base)
            base = self._mul_generic(base, base)
            e >>= 1
        return result

    def exp(self, k: int) -> int:
        """gamma^k."""
        if self.has_tables:
            return self._exp[k % (self.q - 1)]
        return self._pow_generic(self.gamma, k % (self.q - 1))

    def dlog(self, x: int) -> int:
        if not x:
            raise ZeroArgument("discrete log of zero")
        if self.has_tables:
            return self._log[x]
        return self._bsgs(x)

    def _bsgs(self, x: int) -> int:
        n = self.q - 1
        step = math.isqrt(n - 1) + 1
        baby = {}
        y = 1
        for j in range(step):
            baby.setdefault(y, j)
            y = self._mul_generic(y, self.gamma)
        giant = self._pow_generic(self._pow_generic(self.gamma, step), n - 1)
        y = x
        for i in range(step + 1):
            if y in baby:
                return (i * step + baby[y]) % n
            y = self._mul_generic(y, giant)
        raise AssertionError("gamma is not primitive")  # pragma: no cover

    def order(self, x: int) -> int:
        if not x:
            raise ZeroArgument("order of zero")
        n = self.q - 1
        for t in prime_factors(n):
            while n % t == 0 and self._pow_generic(x, n // t) == 1:
                n //= t
        return n

    def frobenius(self, x: int, times: int = 1) -> int:
        """x^(p^times)."""
        return self.pow(x, self.p**times)

    def _trace_generic(self, x, d):
        total, y = 0, x
        for _ in range(self.m // d):
            total = self._add_generic(total, y) if self.m > 1 else (total + y) % self.p
            y = self._pow_generic(y, self.p**d)
        return total

    def trace(self, x: int, sub_degree: int = 1) -> int:
        if sub_degree < 1 or self.m % sub_degree:
            raise BadSubfield(f"GF(p^{sub_degree}) is not a subfield of GF(p^{self.m})")
        if sub_degree == self.m:
            return x
        if self.has_tables:
            if sub_degree == 1:
                return int(self.trace_table[x])
            return int(self.relative_trace_table(sub_degree)[x])
        return self._trace_generic(x, sub_degree)

    def roots_of_unity(self, n: int) -> list[int]:
        if n < 1 or (self.q - 1) % n:
            raise NotDivisor(f"{n} does not divide {self.q - 1}")
        step = (self.q - 1) // n
        return [self.exp(step * i) for i in range(n)]

    def elements(self):
        """0 first, then gamma^0, gamma^1, ..., gamma^(q-2)."""
        yield 0
        for k in range(self.q - 1):
            yield self.exp(k)

    def subfield(self, degree: int) -> list[int]:
        """Elements of the subfield GF(p^degree), in gamma-power order."""
        if self.m % degree:
            raise BadSubfield(f"{degree} does not divide {self.m}")
        sub_q = self.p**degree
        step = (self.q - 1) // (sub_q - 1)
        return [0] + [self.exp(step * i) for i in range(sub_q - 1)]

    # presentation

    def format_element(self, x: int) -> str:
        if x < self.p:
            return str(x)
        return "[" + ",".join(map(str, self.coords(x))) + "]"

    @property
    def literal(self) -> str:
        if self.m == 1:
            return f"q={self.p}"
        return f"q={self.p}^{self.m};mod=" + ",".join(map(str, self.modulus))

    def __repr__(self):
        return f"FieldSpec({self.literal}, gamma={self.format_element(self.gamma)})"

    def __eq__(self, other):
        return (isinstance(other, FieldSpec) and self.modulus == other.modulus
                and self.p == other.p and self.gamma == other.gamma)

    def __hash__(self):
        return hash((self.p, self.modulus, self.gamma))

    def __reduce__(self):
        return (make_field, (self.p, self.m, self.modulus))


def _smallest_primitive(spec: FieldSpec) -> int:
    # total order: coordinates compared low degree first
    for c in itertools.product(range(spec.p), repeat=spec.m):
        x = spec.from_coords(c)
        if x and spec.order(x) == spec.q - 1:
            return x
    raise NoPrimitiveModulus("no primitive element")  # pragma: no cover


def _x_is_primitive(f, p, m) -> bool:
    n = p**m - 1
    return all(_ppowmod([0, 1], n // t, f, p) != [1] for t in prime_factors(n))


def canonical_modulus(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree m with x primitive."""
    for low in itertools.product(range(p), repeat=m):
        f = list(low) + [1]
        if m > 1 and low[0] == 0:
            continue
        if m == 1:
            if p == 2 and low[0] == 0:
                continue
            root = (-low[0]) % p
            if root and FieldSpec(p, 1, f, 1, table_limit=0).order(root) == p - 1:
                return tuple(f)
            continue
        if is_irreducible(f, p) and _x_is_primitive(f, p, m):
            return tuple(f)
    raise NoPrimitiveModulus(f"no primitive modulus of degree {m} over GF({p})")


def make_field(p: int, m: int = 1, modulus=None, *, limit: int = DEFAULT_LIMIT,
               table_limit: int = DEFAULT_TABLE_LIMIT) -> FieldSpec:
    """Build GF(p^m), choosing the canonical modulus unless one is supplied.

    With the canonical modulus, gamma is the class of x (m > 1) or the
    smallest primitive root (m == 1).  A supplied modulus keeps x as gamma
    when x is primitive, otherwise the smallest primitive element is used.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise ValueError("extension degree must be positive")
    if p**m > limit:
        raise TooLarge(f"{p}^{m} exceeds the field size limit {limit}")
    if modulus is None:
        modulus = canonical_modulus(p, m)
    else:
        modulus = [int(c) % p for c in modulus]
        if len(modulus) == m:
            modulus.append(1)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if not is_irreducible(modulus, p):
            raise Reducible(f"modulus {modulus} is reducible over GF({p})")
    probe = FieldSpec(p, m, modulus, 1, table_limit=0)
    if m > 1 and _x_is_primitive(list(modulus), p, m):
        gamma = p
    else:
        gamma = _smallest_primitive(probe)
    return _cached(p, m, tuple(modulus), gamma, table_limit)


_FIELDS: dict = {}


def _cached(p, m, modulus, gamma, table_limit):
    key = (p, m, modulus, gamma, table_limit)
    spec = _FIELDS.get(key)
    if spec is None:
        spec = _FIELDS[key] = FieldSpec(p, m, modulus, gamma, table_limit=table_limit)
    return spec


_LITERAL = re.compile(
    r"^\s*(?:q\s*=\s*)?(\d+)(?:\s*\^\s*(\d+))?\s*(?:;\s*mod\s*=\s*([\d,\s]+))?\s*$")


def parse_field(text: str, **kw) -> FieldSpec:
    """Parse "q=7", "q=3^2", "q=9" or "q=3^2;mod=2,1,1"."""
    match = _LITERAL.match(text)
    if not match:
        raise ParseError(f"bad field literal {text!r}")
    base, exp, mod = match.groups()
    if exp is None:
        p, m = prime_power(int(base))
    else:
        p, m = int(base), int(exp)
    modulus = None
    if mod:
        modulus = [int(c) for c in mod.replace(" ", "").split(",") if c]
    return make_field(p, m, modulus, **kw)


def arith(spec: FieldSpec, op: str, *operands: int) -> int:
    """Dispatch one of add, sub, mul, inv, pow on field elements."""
    ops = {"add": spec.add, "sub": spec.sub, "mul": spec.mul, "inv": spec.inv,
           "pow": spec.pow, "div": spec.div, "neg": spec.neg}
    try:
        fn = ops[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    return fn(*operands)


def dlog(spec: FieldSpec, x: int) -> int:
    return spec.dlog(x)


def trace(spec: FieldSpec, sub_degree: int, x: int) -> int:
    return spec.trace(x, sub_degree)


def roots_of_unity(spec: FieldSpec, n: int) -> list[int]:
    return spec.roots_of_unity(n)
