from fractions import Fraction

import numpy as np
import pytest

from fqsums.artin_schreier import (
    as_binomial_report,
    as_count_charsum,
    as_count_direct,
    as_count_pairs,
    as_report,
    binomial_counts,
    binomial_pairs,
    make_instance,
    subfield_embedding,
    verify_binomials,
)
from fqsums.errors import BadExponents, ConstantPolynomial
from fqsums.field import make_field
from fqsums.poly import SparsePoly

from naive import NaiveField


def all_counts(inst):
    return as_count_direct(inst), as_count_charsum(inst), as_count_pairs(inst)


def test_linear_g_gives_Q_points():
    assert all_counts(make_instance(3, 2, "x")) == (9, 9, 9)
    assert all_counts(make_instance(2, 4, "x")) == (16, 16, 16)


def test_zero_g_gives_every_pair():
    assert all_counts(make_instance(2, 4, "0")) == (32, 32, 32)
    assert all_counts(make_instance(3, 2)) == (27, 27, 27)


@pytest.mark.parametrize("q,m,g,terms,expected", [
    (3, 2, "x^2", [(2, 1)], 15),
    (2, 4, "x^3", [(3, 1)], 8),
    (2, 4, "x^3+x", [(3, 1), (1, 1)], 24),
])
def test_counts_match_naive_trace_kernel(q, m, g, terms, expected):
    F = make_field(q, m)
    N = NaiveField(q, F.modulus)
    lift = [(e, (c,) + (0,) * (m - 1)) for e, c in terms]
    n1 = sum(1 for x in N.elements() if N.trace(N.eval(lift, x)) == 0)
    assert q * n1 == expected
    assert all_counts(make_instance(q, m, g)) == (expected,) * 3


@pytest.mark.parametrize("q,m,g", [(4, 2, "x^3"), (4, 2, "x^3+x"), (9, 2, "x^4+x"),
                                   (4, 3, "x^5+x^2")])
def test_prime_power_base(q, m, g):
    d, c, pr = all_counts(make_instance(q, m, g))
    assert d == c == pr
    assert d % q == 0


def test_embedding_is_a_subfield_homomorphism():
    base, ext = make_field(2, 2), make_field(2, 4)
    emb = subfield_embedding(base, ext)
    assert len(set(emb)) == 4
    for x in range(4):
        for y in range(4):
            assert emb[base.add(x, y)] == ext.add(emb[x], emb[y])
            assert emb[base.mul(x, y)] == ext.mul(emb[x], emb[y])


def test_as_report_linear():
    rep = as_report(make_instance(3, 2, "x"))
    assert (rep.params["ell"], rep.params["n0"]) == (1, 0)
    assert rep.lhs == 0 and rep.rhs == 6.0 and rep.holds == "holds"


def test_as_report_binomial_instance():
    rep = as_report(make_instance(2, 4, "x^3+x"))
    assert (rep.params["ell"], rep.params["n0"], rep.params["N"]) == (15, 1, 24)
    assert rep.center == Fraction(256, 15)
    assert rep.holds == "holds"


def test_as_report_constant_rejected():
    with pytest.raises(ConstantPolynomial):
        as_report(make_instance(3, 2, "2"))


def test_as_report_constant_term_moves_center():
    # Tr(1) = 2 != 0 in GF(3); N = 3 was checked against the naive trace count
    rep = as_report(make_instance(3, 2, "x^5+x+1"))
    assert not rep.params["trace_b_zero"]
    assert (rep.params["N"], rep.params["n0"]) == (3, 1)
    assert rep.center == Fraction(9, 2) and rep.holds == "holds"
    assert rep.literal.center == 18 and rep.literal.holds == "violated"


def test_as_binomial_report_example():
    rep = as_binomial_report(make_instance(2, 4), 3, 1, 1)
    p = rep.params
    assert (p["ell"], p["t"], p["u"], p["N"]) == (15, 1, 1, 24)
    assert p["root_exists"] and p["tests_agree"]
    assert rep.center == Fraction(256, 15)
    assert rep.rhs == 56.0


def test_as_binomial_report_bad_exponents():
    inst = make_instance(2, 4)
    with pytest.raises(BadExponents):
        as_binomial_report(inst, 3, 3, 1)
    with pytest.raises(BadExponents):
        as_binomial_report(inst, 3, 1, 0)


def test_binomial_counts_agree_with_single_counts():
    inst = make_instance(3, 2)
    a_codes = np.arange(1, 9)
    counts = binomial_counts(inst, 5, 2, a_codes)
    for j, a in enumerate(a_codes):
        single = all_counts(inst.with_poly(SparsePoly(((2, int(a)), (5, 1)))))
        assert single == tuple(int(counts[k][j]) for k in ("direct", "charsum", "pairs"))


def test_verify_binomials_small():
    out = verify_binomials(make_instance(2, 3), binomial_pairs(8))
    assert out["binomials"] == 21 * 7
    assert out["count_mismatches"] == 0
    assert out["interval_misses"] == 0
    assert out["interval_checked"] == 7 * 12  # pairs with odd r
