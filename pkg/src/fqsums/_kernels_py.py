"""Pure-Python fallback for the hot loops (numpy-vectorised where it pays).

Every function mirrors one in ``_kernels.pyx`` with the same signature and
results.  Tables are the FieldSpec lookup tables: ``exp`` (length Q-1),
``log`` (length Q, log[0] == -1) and ``zech`` (length Q-1, -1 where
1 + gamma^k == 0).  Field elements inside the kernels are in log form with
-1 standing for zero.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

BACKEND = "python"


def _zadd(a, b, zech, n):
    """Vectorised addition of log-form arrays."""
    d = (b - a) % n
    z = zech[d]
    s = np.where(z < 0, -1, (a + z) % n)
    s = np.where(a < 0, b, s)
    return np.where(b < 0, a, s)


def _term_logs(log, n, e, c, k):
    lc = log[c]
    if e == 0:
        return np.full(k.shape, lc, dtype=np.int64)
    return (lc + e * k) % n


def eval_codes(exp, log, zech, exps, coefs):
    """Values of sum c_e x^e at x = 0, gamma^0, ..., gamma^(Q-2), as codes."""
    q = len(log)
    n = q - 1
    k = np.arange(n, dtype=np.int64)
    acc = np.full(n, -1, dtype=np.int64)
    const = -1
    for e, c in zip(exps, coefs):
        if not c:
            continue
        if e == 0:
            const = _zadd_scalar(const, int(log[c]), zech, n)
        acc = _zadd(acc, _term_logs(log, n, int(e), int(c), k), zech, n)
    out = np.empty(q, dtype=np.int64)
    out[0] = exp[const] if const >= 0 else 0
    out[1:] = np.where(acc < 0, 0, exp[acc])
    return out


def char_hist(exp, log, zech, cls, nbins, exps, coefs):
    """Histogram of cls[g(x)] over all x in GF(Q)."""
    vals = eval_codes(exp, log, zech, exps, coefs)
    return np.bincount(np.asarray(cls)[vals], minlength=nbins).astype(np.int64)


def binomial_hist(exp, log, zech, cls, nbins, n_exp, r_exp, lead, a_codes):
    """Row j: histogram over x of cls[lead*x^n + a_j*x^r]."""
    q = len(log)
    n = q - 1
    a_codes = np.asarray(a_codes, dtype=np.int64)
    cls = np.asarray(cls)
    out = np.zeros((len(a_codes), nbins), dtype=np.int64)
    if len(a_codes) == 0:
        return out
    k = np.arange(n, dtype=np.int64)
    first = np.full(n, -1, dtype=np.int64) if not lead else (log[lead] + n_exp * k) % n
    la = log[a_codes]
    second = (la[:, None] + r_exp * k[None, :]) % n
    second = np.where(la[:, None] < 0, -1, second)
    s = _zadd(np.broadcast_to(first, second.shape), second, zech, n)
    vals = cls[np.where(s < 0, 0, exp[s])]
    rows = np.repeat(np.arange(len(a_codes)), n)
    flat = np.bincount(rows * nbins + vals.ravel(), minlength=len(a_codes) * nbins)
    out += flat.reshape(len(a_codes), nbins)
    out[:, cls[0]] += 1
    return out


def _support_params(c, n):
    support = [e for e in range(1, len(c)) if c[e]]
    r = support[0]
    s = n
    for e in support:
        s = math.gcd(s, e - r)
    return support, r, s, n // s


def _branch_logs(log, zech, c, support, r, ell, n):
    out = []
    for i in range(ell):
        acc = -1
        for e in support:
            t = (log[c[e]] + i * (e - r)) % n
            acc = _zadd_scalar(acc, t, zech, n)
        out.append(acc)
    return out


def _zadd_scalar(a, b, zech, n):
    if a < 0:
        return b
    if b < 0:
        return a
    z = zech[(b - a) % n]
    return -1 if z < 0 else (a + z) % n


def oracle_sweep(exp, log, zech, tr, p, max_deg):
    """Compare the direct character sum with the coset decomposition for
    every nonconstant polynomial of degree <= max_deg.

    Returns (checked, mismatches, first mismatching coefficient tuple or None).
    """
    q = len(log)
    n = q - 1
    if max_deg > n:
        raise ValueError("max_deg must be at most q - 1")
    exp_l = [int(v) for v in exp]
    log_l = [int(v) for v in log]
    zech_l = [int(v) for v in zech]
    tr_l = [int(v) for v in tr]
    checked = bad = 0
    first = None
    for c in itertools.product(range(q), repeat=max_deg + 1):
        if not any(c[1:]):
            continue
        checked += 1
        direct = [0] * p
        direct[tr_l[c[0]]] += 1
        for k in range(n):
            acc = -1
            for e in range(max_deg + 1):
                if c[e]:
                    acc = _zadd_scalar(acc, (log_l[c[e]] + e * k) % n, zech_l, n)
            direct[tr_l[exp_l[acc]] if acc >= 0 else 0] += 1
        support, r, s, ell = _support_params(c, n)
        branches = _branch_logs(log_l, zech_l, c, support, r, ell, n)
        coset = [0] * p
        coset[0] += 1
        for i, ai in enumerate(branches):
            if ai < 0:
                coset[0] += s
                continue
            for u in range(s):
                coset[tr_l[exp_l[(ai + r * (i + ell * u)) % n]]] += 1
        shift = tr_l[c[0]]
        coset = [coset[(t - shift) % p] for t in range(p)]
        if coset != direct:
            bad += 1
            if first is None:
                first = c
    return checked, bad, first


def roundtrip_sweep(exp, log, zech, p, max_deg, monic):
    """Index form -> cyclotomic branches -> interpolated polynomial must give
    back every g with g(0) = 0 and 1 <= deg g <= max_deg (optionally monic)."""
    q = len(log)
    n = q - 1
    if max_deg > n:
        raise ValueError("max_deg must be at most q - 1")
    log_l = [int(v) for v in log]
    zech_l = [int(v) for v in zech]
    exp_l = [int(v) for v in exp]
    checked = bad = 0
    first = None
    for c in _roundtrip_inputs(q, max_deg, monic):
        checked += 1
        support, r, s, ell = _support_params(c, n)
        branches = _branch_logs(log_l, zech_l, c, support, r, ell, n)
        inv_ell = (n - log_l[ell % p]) % n
        ok = True
        for j in range(ell):
            acc = -1
            for i, ai in enumerate(branches):
                if ai >= 0:
                    acc = _zadd_scalar(acc, (ai - s * j * i) % n, zech_l, n)
            coef = 0 if acc < 0 else exp_l[(acc + inv_ell) % n]
            e = j * s + r
            if e >= q:
                e = 1 + (e - 1) % n
            want = c[e] if e <= max_deg else 0
            if coef != want:
                ok = False
                break
        if not ok:
            bad += 1
            if first is None:
                first = c
    return checked, bad, first


def _roundtrip_inputs(q, max_deg, monic):
    if monic:
        for deg in range(1, max_deg + 1):
            for low in itertools.product(range(q), repeat=deg - 1):
                yield (0,) + low + (1,) + (0,) * (max_deg - deg)
    else:
        for tail in itertools.product(range(q), repeat=max_deg):
            if any(tail):
                yield (0,) + tail
