import json

import pytest

from fqsums.errors import ConfigError
from fqsums.field import make_field
from fqsums.sweep import (
    COLUMNS,
    CampaignConfig,
    SplitMix64,
    family_polys,
    random_polys,
    run_campaign,
)

SMALL = {"fields": ["q=7", "q=9"], "family": {"kind": "binomials"},
         "bounds": ["index", "binomial"], "seed": 3}


def test_splitmix_reference_outputs():
    rng = SplitMix64(0)
    assert rng.next() == 0xE220A8397B1DCDAF
    assert rng.next() == 0x6E789E6AA1B965F4


def test_splitmix_element_mapping():
    F = make_field(7)
    rng = SplitMix64(5)
    raw = SplitMix64(5).next() % 7
    x = rng.element(F)
    assert x == (0 if raw == 6 else F.exp(raw))


def test_index_bound_campaign_has_no_violations():
    rep = run_campaign({"fields": ["q=7", "q=8", "q=9", "q=11"],
                        "family": {"kind": "binomials"}, "bounds": ["index"]})
    assert rep.summary["violated"] == 0 and rep.exit_code == 0
    assert rep.summary["holds"] == len(rep.rows) - rep.summary["inapplicable"]


def test_totals_are_sums_of_per_field_totals():
    rep = run_campaign(SMALL)
    for key, value in rep.summary.items():
        assert value == sum(part[key] for part in rep.per_field.values())
    assert sum(rep.summary.values()) == len(rep.rows)


def test_literal_rows_reported_separately():
    rep = run_campaign({"fields": ["q=7", "q=9", "q=16"],
                        "family": {"kind": "random", "count": 50, "style": "structured"},
                        "bounds": ["index"], "seed": 42})
    literal = [r for r in rep.rows if r.bound == "index-literal"]
    assert sum(rep.literal_summary.values()) == len(literal) > 0
    assert sum(rep.summary.values()) == len(rep.rows) - len(literal)
    assert rep.literal_summary["violated"] > 0 and rep.exit_code == 0


def test_binomial_rows_with_u_above_one_fail_and_carry_sum():
    rep = run_campaign(SMALL)
    bad = [r for r in rep.rows if r.holds == "violated"]
    assert bad and all(r.bound == "binomial" for r in bad)
    assert all(r.sum_vector for r in bad)
    assert rep.exit_code == 1


def test_csv_identical_across_runs_and_workers(tmp_path):
    one = run_campaign(SMALL).csv_text()
    assert run_campaign(SMALL).csv_text() == one
    out = tmp_path / "rows.csv"
    run_campaign(dict(SMALL, out=str(out)), threads=2)
    assert out.read_text() == one
    assert one.splitlines()[0] == ",".join(f'"{c}"' for c in COLUMNS)


def test_empty_family_gives_zero_summary():
    rep = run_campaign({"fields": ["q=7"], "family": {"kind": "explicit", "polys": []},
                        "bounds": ["index"]})
    assert rep.rows == []
    assert set(rep.summary.values()) == {0}
    assert rep.csv_text().count("\n") == 1


def test_explicit_family_rows_per_bound():
    rep = run_campaign({"fields": ["q=7"],
                        "family": {"kind": "explicit", "polys": ["x^5+x^3+x"]},
                        "bounds": ["weil", "index", "cyclo"]})
    assert [r.bound for r in rep.rows] == ["weil", "index", "cyclo-monomial"]


@pytest.mark.parametrize("bad", [
    [],
    {"fields": "q=7"},
    {"fields": ["q=7"], "family": {"kind": "quadrics"}},
    {"fields": ["q=7"], "bounds": []},
    {"fields": ["q=7"], "bounds": ["hasse"]},
    {"fields": ["q=7"], "seed": "x"},
    {"fields": ["q=7"], "threads": 0},
    {"fields": ["q=7"], "colour": "blue"},
])
def test_config_errors(bad):
    with pytest.raises(ConfigError):
        CampaignConfig.from_dict(bad)


def test_bad_field_is_config_error():
    with pytest.raises(ConfigError):
        run_campaign({"fields": ["q=6"], "family": {"kind": "monomials"}})


def test_load_from_file(tmp_path):
    path = tmp_path / "c.json"
    path.write_text(json.dumps(SMALL))
    assert CampaignConfig.load(str(path)).fields == ["q=7", "q=9"]
    with pytest.raises(ConfigError):
        CampaignConfig.load(str(tmp_path / "missing.json"))


@pytest.mark.parametrize("style", ["dense", "sparse", "structured"])
def test_random_styles_are_seeded(style):
    F = make_field(13)
    a = list(random_polys(F, 20, 9, style=style))
    assert a == list(random_polys(F, 20, 9, style=style))
    assert a != list(random_polys(F, 20, 10, style=style))
    assert all(1 <= g.degree <= 6 for g in a)


def test_random_unknown_style():
    with pytest.raises(ConfigError):
        list(random_polys(make_field(7), 1, 0, style="lumpy"))


def test_family_sizes():
    F = make_field(7)
    assert len(list(family_polys(F, {"kind": "monomials"}, 0))) == 6 * 6
    assert len(list(family_polys(F, {"kind": "monomials", "monic": True}, 0))) == 6
    assert len(list(family_polys(F, {"kind": "binomials"}, 0))) == 15 * 6
    assert len(list(family_polys(F, {"kind": "trinomials", "sample": 25}, 0))) == 25
    F9 = make_field(3, 2)
    coprime = list(family_polys(F9, {"kind": "binomials", "coprime_r": True}, 0))
    assert all(g.terms[0][0] % 3 for g in coprime)
