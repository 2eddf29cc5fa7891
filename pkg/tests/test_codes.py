import itertools
import math
import random
from collections import Counter

import pytest

from fqsums.codes import (
    code_weight_report,
    kj_structure,
    make_code,
    min_weight_floor,
    min_weight_search,
    trace_codeword,
    weight_table,
    weight_via_Ek,
)
from fqsums.errors import BadCheckSet, ShapeMismatch, ZeroCodeword
from fqsums.field import make_field

from naive import NaiveField

SIMPLEX = make_code(2, 4, 15, [1])


def naive_distribution(m, J):
    F = make_field(2, m)
    N = NaiveField(2, F.modulus)
    gamma = tuple(int(i == 1) for i in range(m))  # x is primitive for the canonical modulus
    points = [N.pow(gamma, i) for i in range(2**m - 1)]
    elems = N.elements()
    dist = Counter()
    for a in itertools.product(elems, repeat=len(J)):
        terms = list(zip(J, a))
        dist[sum(N.trace(N.eval(terms, x)) for x in points)] += 1
    return dict(dist)


def test_simplex_constant_weight():
    for a in range(1, 16):
        assert trace_codeword(SIMPLEX, (a,)).weight == 8
        assert weight_via_Ek(SIMPLEX, (a,)) == 8


def test_simplex_window_and_floor():
    rep = code_weight_report(SIMPLEX, (1,))
    assert (rep.params["window_lo"], rep.params["window_hi"]) == (5.0, 9.0)
    assert rep.holds == "holds"
    floor = min_weight_floor(SIMPLEX)
    assert floor.value == 7.0 and floor.at_most(8) and not floor.at_most(6)


def test_simplex_min_weight_exhaustive():
    res = min_weight_search(SIMPLEX)
    assert (res.min_weight, res.exhaustive, res.codewords) == (8, True, 15)


def test_pair_check_set_distribution():
    code = make_code(2, 4, 15, [1, 3])
    dist = Counter(row["weight"] for row in weight_table(code))
    dist[0] += 1
    assert dict(dist) == {0: 1, 4: 15, 6: 100, 8: 75, 10: 60, 12: 5}
    assert dict(dist) == naive_distribution(4, [1, 3])
    assert min_weight_search(code).min_weight == 4


def test_weight_routes_agree_on_random_parameters():
    code = make_code(2, 6, 63, [1, 3, 5])
    rng = random.Random(7)
    for _ in range(1000):
        a = tuple(rng.randrange(64) for _ in range(3))
        assert trace_codeword(code, a).weight == weight_via_Ek(code, a)


def test_weight_routes_agree_on_shortened_length():
    code = make_code(2, 4, 5, [1, 2])
    for a in itertools.product(range(16), repeat=2):
        assert trace_codeword(code, a).weight == weight_via_Ek(code, a)


def test_codewords_are_linear_over_the_base():
    code = make_code(3, 2, 8, [1, 2])
    ext = code.ext
    for a, b in [((1, 2), (3, 4)), ((5, 0), (7, 8))]:
        c = tuple(ext.add(x, y) for x, y in zip(a, b))
        wa, wb = trace_codeword(code, a).word, trace_codeword(code, b).word
        assert trace_codeword(code, c).word == tuple((x + y) % 3 for x, y in zip(wa, wb))


def test_empty_check_set():
    code = make_code(2, 4, 15, [])
    res = min_weight_search(code)
    assert res.min_weight is None and res.codewords == 0


def test_shape_mismatch_before_coprimality():
    with pytest.raises(ShapeMismatch):
        min_weight_floor(make_code(2, 4, 15, [1, 6]))
    with pytest.raises(ShapeMismatch):
        kj_structure(make_code(2, 4, 15, [1, 2]))


def test_full_progression_shape():
    code = make_code(2, 4, 15, [1, 6, 11])
    assert kj_structure(code) == (3, 1)


def test_errors():
    with pytest.raises(BadCheckSet):
        make_code(2, 4, 7, [1])
    with pytest.raises(BadCheckSet):
        make_code(2, 4, 15, [15])
    with pytest.raises(BadCheckSet):
        code_weight_report(make_code(2, 4, 15, [1, 2]), (1, 1))
    with pytest.raises(ZeroCodeword):
        code_weight_report(SIMPLEX, (0,))


def test_pair_windows_all_contain_weights():
    for j1, j2 in itertools.combinations(range(1, 15, 2), 2):
        rows = weight_table(make_code(2, 4, 15, [j1, j2]), verify_bounds=True)
        assert all(row["in_window"] for row in rows if row["in_window"] is not None)


def test_report_flags_trace_convention():
    code = make_code(4, 2, 15, [0, 1])
    rep = code_weight_report(code, (1, 1))
    assert rep.params["case"] in ("a", "b")
    assert isinstance(rep.params["absolute_trace_changes_verdict"], bool)
    assert rep.params["window_lo"] <= rep.params["window_hi"]
    assert math.isfinite(rep.lhs)
