# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops; see _kernels_py for the reference semantics."""

import numpy as np

ctypedef long long i64

BACKEND = "cython"

cdef extern from *:
    """
    #define FQ_MAXDEG 64
    """
    int FQ_MAXDEG


cdef inline i64 zadd(i64 a, i64 b, const i64* zech, i64 n) noexcept nogil:
    cdef i64 d, z
    if a < 0:
        return b
    if b < 0:
        return a
    d = b - a
    if d < 0:
        d += n
    z = zech[d]
    if z < 0:
        return -1
    z += a
    if z >= n:
        z -= n
    return z


cdef inline i64 gcd(i64 a, i64 b) noexcept nogil:
    cdef i64 t
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline i64 mod(i64 a, i64 n) noexcept nogil:
    a = a % n
    return a + n if a < 0 else a


def eval_codes(const i64[::1] exp, const i64[::1] log, const i64[::1] zech, exps, coefs):
    cdef i64 q = log.shape[0], n = q - 1, k, j, acc, t
    cdef i64[::1] e_arr = np.ascontiguousarray(exps, dtype=np.int64)
    cdef i64[::1] c_arr = np.ascontiguousarray(coefs, dtype=np.int64)
    cdef Py_ssize_t nt = e_arr.shape[0]
    cdef i64[::1] lc = np.empty(nt, dtype=np.int64)
    cdef i64[::1] cur = np.empty(nt, dtype=np.int64)
    out_np = np.empty(q, dtype=np.int64)
    cdef i64[::1] out = out_np
    cdef i64 const_log = -1
    for j in range(nt):
        lc[j] = log[c_arr[j]] if c_arr[j] else -1
        cur[j] = lc[j]
        if e_arr[j] == 0 and c_arr[j]:
            const_log = zadd(const_log, lc[j], &zech[0], n)
    out[0] = exp[const_log] if const_log >= 0 else 0
    with nogil:
        for k in range(n):
            acc = -1
            for j in range(nt):
                if lc[j] >= 0:
                    acc = zadd(acc, cur[j], &zech[0], n)
                    t = cur[j] + e_arr[j] % n
                    cur[j] = t - n if t >= n else t
            out[k + 1] = exp[acc] if acc >= 0 else 0
    return out_np


def char_hist(const i64[::1] exp, const i64[::1] log, const i64[::1] zech,
              const i64[::1] cls, i64 nbins, exps, coefs):
    vals = eval_codes(exp, log, zech, exps, coefs)
    cdef const i64[::1] v = vals
    hist_np = np.zeros(nbins, dtype=np.int64)
    cdef i64[::1] hist = hist_np
    cdef Py_ssize_t i
    with nogil:
        for i in range(v.shape[0]):
            hist[cls[v[i]]] += 1
    return hist_np


def binomial_hist(const i64[::1] exp, const i64[::1] log, const i64[::1] zech,
                  const i64[::1] cls, i64 nbins, i64 n_exp, i64 r_exp, i64 lead, a_codes):
    cdef i64 q = log.shape[0], n = q - 1
    cdef i64[::1] a = np.ascontiguousarray(a_codes, dtype=np.int64)
    cdef Py_ssize_t na = a.shape[0], j
    out_np = np.zeros((na, nbins), dtype=np.int64)
    cdef i64[:, ::1] out = out_np
    cdef i64 k, l1, l2, s, st1, st2, la
    cdef i64 llead = log[lead] if lead else -1
    st1 = n_exp % n
    st2 = r_exp % n
    with nogil:
        for j in range(na):
            la = log[a[j]] if a[j] else -1
            out[j, cls[0]] += 1
            l1 = llead
            l2 = la
            for k in range(n):
                s = zadd(l1, l2, &zech[0], n)
                out[j, cls[exp[s] if s >= 0 else 0]] += 1
                if l1 >= 0:
                    l1 += st1
                    if l1 >= n:
                        l1 -= n
                if l2 >= 0:
                    l2 += st2
                    if l2 >= n:
                        l2 -= n
    return out_np


cdef inline bint next_tuple(i64* c, int length, i64 base) noexcept nogil:
    cdef int i
    for i in range(length - 1, -1, -1):
        c[i] += 1
        if c[i] < base:
            return True
        c[i] = 0
    return False


cdef void support_params(const i64* c, int max_deg, i64 n, int* support, int* ns,
                         i64* r, i64* s, i64* ell) noexcept nogil:
    cdef int e
    ns[0] = 0
    for e in range(1, max_deg + 1):
        if c[e]:
            support[ns[0]] = e
            ns[0] += 1
    r[0] = support[0]
    s[0] = n
    for e in range(ns[0]):
        s[0] = gcd(s[0], support[e] - r[0])
    ell[0] = n // s[0]


cdef void branch_logs(const i64* c, const int* support, int ns, i64 r, i64 ell, i64 n,
                      const i64* log, const i64* zech, i64* out) noexcept nogil:
    cdef i64 i, acc
    cdef int j
    for i in range(ell):
        acc = -1
        for j in range(ns):
            acc = zadd(acc, (log[c[support[j]]] + i * (support[j] - r)) % n, zech, n)
        out[i] = acc


def oracle_sweep(const i64[::1] exp, const i64[::1] log, const i64[::1] zech,
                 const i64[::1] tr, int p, int max_deg):
    cdef i64 q = log.shape[0], n = q - 1
    if max_deg > n:
        raise ValueError("max_deg must be at most q - 1")
    if max_deg + 1 > FQ_MAXDEG:
        raise ValueError("max_deg too large for the compiled sweep")
    cdef i64[::1] trexp_np = np.asarray(tr)[np.asarray(exp)].astype(np.int64)
    cdef const i64* trexp = &trexp_np[0]
    cdef i64[::1] c_np = np.zeros(max_deg + 1, dtype=np.int64)
    cdef i64* c = &c_np[0]
    cdef i64[::1] br_np = np.zeros(n, dtype=np.int64)
    cdef i64* br = &br_np[0]
    cdef i64[::1] d_np = np.zeros(p, dtype=np.int64)
    cdef i64[::1] b_np = np.zeros(p, dtype=np.int64)
    cdef i64* direct = &d_np[0]
    cdef i64* coset = &b_np[0]
    cdef int support[64]
    cdef int ns, e, t
    cdef i64 k, acc, r, s, ell, i, u, shift, ai, checked = 0, bad = 0
    cdef bint found = False, mismatch
    first_np = np.zeros(max_deg + 1, dtype=np.int64)
    cdef i64[::1] first = first_np
    cdef const i64* lg = &log[0]
    cdef const i64* zc = &zech[0]
    with nogil:
        while next_tuple(c, max_deg + 1, q):
            ns = 0
            for e in range(1, max_deg + 1):
                if c[e]:
                    ns = 1
                    break
            if not ns:
                continue
            checked += 1
            for t in range(p):
                direct[t] = 0
                coset[t] = 0
            direct[tr[c[0]]] += 1
            for k in range(n):
                acc = -1
                for e in range(max_deg + 1):
                    if c[e]:
                        acc = zadd(acc, (lg[c[e]] + e * k) % n, zc, n)
                direct[trexp[acc] if acc >= 0 else 0] += 1
            support_params(c, max_deg, n, support, &ns, &r, &s, &ell)
            branch_logs(c, support, ns, r, ell, n, lg, zc, br)
            coset[0] += 1
            for i in range(ell):
                ai = br[i]
                if ai < 0:
                    coset[0] += s
                    continue
                for u in range(s):
                    coset[trexp[(ai + r * (i + ell * u)) % n]] += 1
            shift = tr[c[0]]
            mismatch = False
            for t in range(p):
                if coset[mod(t - shift, p)] != direct[t]:
                    mismatch = True
            if mismatch:
                bad += 1
                if not found:
                    found = True
                    for e in range(max_deg + 1):
                        first[e] = c[e]
    return checked, bad, (tuple(int(v) for v in first_np) if found else None)


def roundtrip_sweep(const i64[::1] exp, const i64[::1] log, const i64[::1] zech,
                    int p, int max_deg, bint monic):
    cdef i64 q = log.shape[0], n = q - 1
    if max_deg > n:
        raise ValueError("max_deg must be at most q - 1")
    if max_deg + 1 > FQ_MAXDEG:
        raise ValueError("max_deg too large for the compiled sweep")
    cdef i64[::1] c_np = np.zeros(max_deg + 1, dtype=np.int64)
    cdef i64* c = &c_np[0]
    cdef i64[::1] br_np = np.zeros(n, dtype=np.int64)
    cdef i64* br = &br_np[0]
    cdef int support[64]
    cdef int ns, deg, e
    cdef i64 r, s, ell, i, j, acc, coef, want, ee, inv_ell, checked = 0, bad = 0, ai, step
    cdef bint found = False, ok, more
    first_np = np.zeros(max_deg + 1, dtype=np.int64)
    cdef i64[::1] first = first_np
    cdef const i64* lg = &log[0]
    cdef const i64* zc = &zech[0]
    cdef const i64* ex = &exp[0]
    with nogil:
        deg = 1 if monic else max_deg
        while deg <= max_deg:
            for e in range(max_deg + 1):
                c[e] = 0
            if monic:
                c[deg] = 1
            more = True
            while more:
                ns = 0
                for e in range(1, max_deg + 1):
                    if c[e]:
                        ns = 1
                        break
                if ns:
                    checked += 1
                    support_params(c, max_deg, n, support, &ns, &r, &s, &ell)
                    branch_logs(c, support, ns, r, ell, n, lg, zc, br)
                    inv_ell = mod(-lg[ell % p], n)
                    ok = True
                    for j in range(ell):
                        acc = -1
                        step = mod(-s * j, n)
                        for i in range(ell):
                            ai = br[i]
                            if ai >= 0:
                                acc = zadd(acc, (ai + step * i) % n, zc, n)
                        coef = ex[(acc + inv_ell) % n] if acc >= 0 else 0
                        ee = j * s + r
                        if ee >= q:
                            ee = 1 + (ee - 1) % n
                        want = c[ee] if ee <= max_deg else 0
                        if coef != want:
                            ok = False
                            break
                    if not ok:
                        bad += 1
                        if not found:
                            found = True
                            for e in range(max_deg + 1):
                                first[e] = c[e]
                if monic:
                    more = deg > 1 and next_tuple(c + 1, deg - 1, q)
                else:
                    more = next_tuple(c + 1, max_deg, q)
            deg += 1
    return checked, bad, (tuple(int(v) for v in first_np) if found else None)
