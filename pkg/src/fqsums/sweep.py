"""Deterministic verification campaigns over families of polynomials.

Random polynomials come from splitmix64: state advances by 0x9E3779B97F4A7C15
and each output is mixed with the standard (30, 27, 31) xor-shift-multiply
finalizer.  An output v becomes the field element 0 when v mod q == q - 1 and
gamma^(v mod q) otherwise, so every language reproduces the same corpus.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .bounds import (
    HOLDS,
    INCONCLUSIVE,
    VIOLATED,
    binomial_report,
    cyclo_report,
    index_report,
    root_powers,
    weil_report,
)
from .charsum import char_sum_full
from .cyclotomic import CyclotomicValue
from .errors import ConfigError, FqSumsError
from .field import FieldSpec, parse_field
from .index import index_form, mapping_from_index
from .poly import SparsePoly, canonicalize, format_poly, make_poly, parse_poly

MASK = (1 << 64) - 1

BOUNDS = ("weil", "index", "binomial", "cyclo")
FAMILIES = ("monomials", "binomials", "trinomials", "random", "explicit")
COLUMNS = ("q", "poly", "ell", "r", "s", "n0", "lhs", "rhs", "holds", "slack",
           "bound", "applicable", "center", "sum_vector")
INAPPLICABLE = "inapplicable"


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        return self.next() % n

    def element(self, spec: FieldSpec) -> int:
        v = self.next() % spec.q
        return 0 if v == spec.q - 1 else spec.exp(v)

    def nonzero(self, spec: FieldSpec) -> int:
        return spec.exp(self.next() % (spec.q - 1))


@dataclass
class CampaignConfig:
    fields: list[str]
    family: dict
    bounds: list[str]
    seed: int = 0
    out: str | None = None
    threads: int = 1

    @classmethod
    def from_dict(cls, data: dict) -> CampaignConfig:
        if not isinstance(data, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(data) - {"fields", "family", "bounds", "seed", "out", "threads"}
        if unknown:
            raise ConfigError(f"unknown config keys {sorted(unknown)}")
        fields = data.get("fields")
        if not isinstance(fields, list) or not all(isinstance(f, (str, int)) for f in fields):
            raise ConfigError("fields must be a list of field literals")
        family = data.get("family", {"kind": "explicit", "polys": []})
        if not isinstance(family, dict) or family.get("kind") not in FAMILIES:
            raise ConfigError(f"family.kind must be one of {FAMILIES}")
        bounds = data.get("bounds", ["index"])
        if not isinstance(bounds, list) or not bounds or any(b not in BOUNDS for b in bounds):
            raise ConfigError(f"bounds must be a non-empty list drawn from {BOUNDS}")
        seed = data.get("seed", 0)
        if not isinstance(seed, int):
            raise ConfigError("seed must be an integer")
        threads = data.get("threads", 1)
        if not isinstance(threads, int) or threads < 1:
            raise ConfigError("threads must be a positive integer")
        out = data.get("out")
        return cls([f if isinstance(f, str) else f"q={f}" for f in fields],
                   dict(family), list(bounds), seed, out, threads)

    @classmethod
    def load(cls, path: str) -> CampaignConfig:
        try:
            with open(path) as fh:
                return cls.from_dict(json.load(fh))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc


# -- families -----------------------------------------------------------------


def _max_degree(spec: FieldSpec, family: dict) -> int:
    return min(int(family.get("max_degree", spec.q - 1)), spec.q - 1)


def _coprime_ok(spec: FieldSpec, family: dict, r: int) -> bool:
    return not family.get("coprime_r") or math.gcd(r, spec.p) == 1


def family_polys(spec: FieldSpec, family: dict, seed: int, field_index: int = 0):
    """The polynomials of ``family`` over ``spec``, in a fixed order."""
    kind = family["kind"]
    top = _max_degree(spec, family)
    nonzero = [spec.exp(k) for k in range(spec.q - 1)]
    lead = [1] if family.get("monic", kind in ("binomials", "trinomials")) else nonzero
    if kind == "monomials":
        for n in range(1, top + 1):
            if _coprime_ok(spec, family, n):
                for c in lead:
                    yield SparsePoly(((n, c),))
    elif kind == "binomials":
        for n in range(2, top + 1):
            for r in range(1, n):
                if _coprime_ok(spec, family, r):
                    for c in lead:
                        for a in nonzero:
                            yield SparsePoly(((r, a), (n, c)))
    elif kind == "trinomials":
        sample = family.get("sample")
        if sample is None:
            for n in range(3, top + 1):
                for k in range(2, n):
                    for r in range(1, k):
                        if _coprime_ok(spec, family, r):
                            for a, b in itertools.product(nonzero, repeat=2):
                                yield SparsePoly(((r, b), (k, a), (n, 1)))
        else:
            rng = SplitMix64(seed * 1000003 + field_index)
            made = 0
            while made < int(sample):
                n, k, r = sorted(rng.below(top) + 1 for _ in range(3))[::-1]
                if not n > k > r or not _coprime_ok(spec, family, r):
                    continue
                made += 1
                yield SparsePoly(((r, rng.nonzero(spec)), (k, rng.nonzero(spec)), (n, 1)))
    elif kind == "random":
        yield from random_polys(spec, int(family.get("count", 100)),
                                seed * 1000003 + field_index,
                                style=family.get("style", "dense"),
                                max_degree=top, terms=int(family.get("terms", 3)))
    elif kind == "explicit":
        for text in family.get("polys", []):
            yield parse_poly(spec, text)


def random_polys(spec: FieldSpec, count: int, seed: int, *, style: str = "dense",
                 max_degree: int = 6, terms: int = 3):
    """``count`` nonconstant polynomials of degree <= max_degree.

    style "dense" draws every coefficient, "sparse" draws ``terms`` exponents,
    "structured" draws x^r f(x^s) with s a divisor of q - 1.
    """
    if style not in ("dense", "sparse", "structured"):
        raise ConfigError(f"unknown random style {style!r}")
    rng = SplitMix64(seed)
    max_degree = min(max_degree, spec.q - 1)
    made = 0
    divisors = [d for d in range(1, spec.q) if (spec.q - 1) % d == 0]
    while made < count:
        if style == "dense":
            terms_ = [(e, rng.element(spec)) for e in range(max_degree + 1)]
        elif style == "sparse":
            terms_ = [(1 + rng.below(max_degree), rng.nonzero(spec)) for _ in range(terms)]
            terms_.append((0, rng.element(spec)))
        else:
            s = divisors[rng.below(len(divisors))]
            r = 1 + rng.below(max_degree)
            width = (max_degree - r) // s + 1
            terms_ = [(r + s * j, rng.element(spec)) for j in range(min(terms, width))]
            terms_.append((0, rng.element(spec)))
        g = canonicalize(spec, make_poly(spec, terms_))
        if g.degree >= 1:
            made += 1
            yield g


# -- evaluation ---------------------------------------------------------------


@dataclass
class Row:
    key: tuple
    q: int
    poly: str
    ell: int
    r: int
    s: int
    n0: int
    lhs: float
    rhs: float
    holds: str
    slack: float
    bound: str
    applicable: bool
    center: str
    sum_vector: str

    def csv_fields(self) -> list:
        return [getattr(self, c) for c in COLUMNS]


def _center_text(report) -> str:
    c = str(report.center)
    return c if not report.center_phase else f"{c}*z^{report.center_phase}"


def _monic_binomial(g: SparsePoly):
    if len(g.terms) == 2 and g.terms[0][0] >= 1 and g.terms[1][1] == 1:
        return g.terms[1][0], g.terms[0][0], g.terms[0][1]
    return None


def _row(key, spec, g_text, form, report) -> Row:
    holds = report.holds if report.applicable else INAPPLICABLE
    audit = report.sum is not None and report.holds != HOLDS
    return Row(key, spec.q, g_text, form.ell, form.r, form.s, form.n0, report.lhs,
               report.rhs, holds, report.slack, report.bound, report.applicable,
               _center_text(report),
               json.dumps(list(report.sum.coeffs), separators=(",", ":")) if audit else "")


def evaluate_chunk(field_text: str, field_index: int, start: int,
                   polys: list[SparsePoly], bounds: list[str]) -> list[Row]:
    spec = parse_field(field_text)
    totals = _batched_binomial_sums(spec, polys)
    rows = []
    powers_cache = {}
    for offset, g in enumerate(polys):
        g = canonicalize(spec, g)
        idx = start + offset
        g_text = format_poly(spec, g)
        form = index_form(spec, g)
        total = totals.get(offset)
        if total is None:
            total = char_sum_full(spec, g)
        for b_index, name in enumerate(bounds):
            key = (field_index, idx, b_index)
            if name == "weil":
                reps = [weil_report(spec, g, total=total)]
            elif name == "index":
                rep = index_report(spec, g, total=total)
                reps = [rep] + ([rep.literal] if rep.literal is not None else [])
            elif name == "cyclo":
                reps = [cyclo_report(spec, mapping_from_index(spec, form), "monomial")]
            else:
                shape = _monic_binomial(g)
                if shape is None:
                    continue
                n, r, a = shape
                if (n, r) not in powers_cache:
                    powers_cache[(n, r)] = root_powers(spec, n, r)
                reps = [binomial_report(spec, n, r, a, total=total,
                                        powers=powers_cache[(n, r)])]
            for j, rep in enumerate(reps):
                rows.append(_row(key + (j,), spec, g_text, form, rep))
    return rows


def _batched_binomial_sums(spec: FieldSpec, polys) -> dict[int, CyclotomicValue]:
    """Character sums of monic binomials sharing (n, r), one kernel call per pair."""
    if not spec.has_tables:
        return {}
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for i, g in enumerate(polys):
        shape = _monic_binomial(g) if g.degree < spec.q else None
        if shape is not None:
            n, r, a = shape
            groups.setdefault((n, r), []).append((i, a))
    out = {}
    for (n, r), items in groups.items():
        hist = kernels.binomial_hist(spec.exp_table, spec.log_table, spec.zech_table,
                                     spec.trace_table, spec.p, n, r, 1,
                                     np.array([a for _, a in items], dtype=np.int64))
        for (i, _), counts in zip(items, hist):
            out[i] = CyclotomicValue.from_counts(spec.p, counts)
    return out


# -- campaign -----------------------------------------------------------------


@dataclass
class CampaignReport:
    config: CampaignConfig
    rows: list[Row]
    summary: dict = field(default_factory=dict)
    per_field: dict = field(default_factory=dict)
    literal_summary: dict = field(default_factory=dict)

    @property
    def violated(self) -> int:
        return self.summary.get(VIOLATED, 0)

    @property
    def exit_code(self) -> int:
        return 0 if self.violated == 0 else 1

    def csv_text(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
        writer.writerow(COLUMNS)
        for row in self.rows:
            writer.writerow(row.csv_fields())
        return buf.getvalue()

    def write_csv(self, path: str):
        with open(path, "w", newline="") as fh:
            fh.write(self.csv_text())

    def to_json(self) -> dict:
        return {"summary": self.summary, "per_field": self.per_field,
                "literal_summary": self.literal_summary, "rows": len(self.rows),
                "out": self.config.out}


def _summarize(rows, *, literal: bool = False) -> dict:
    """Verdict counts; ``-literal`` alternative-center rows are counted only
    when ``literal`` is set, so they never decide the exit code."""
    counts = {HOLDS: 0, VIOLATED: 0, INCONCLUSIVE: 0, INAPPLICABLE: 0}
    for row in rows:
        if row.bound.endswith("-literal") == literal:
            counts[row.holds] += 1
    return counts


CHUNK = 2048


def run_campaign(config: CampaignConfig | dict, *, threads: int | None = None) -> CampaignReport:
    if isinstance(config, dict):
        config = CampaignConfig.from_dict(config)
    threads = config.threads if threads is None else threads
    jobs = []
    for f_index, text in enumerate(config.fields):
        try:
            spec = parse_field(text)
        except FqSumsError as exc:
            raise ConfigError(f"bad field {text!r}: {exc}") from exc
        polys = list(family_polys(spec, config.family, config.seed, f_index))
        for start in range(0, len(polys), CHUNK):
            jobs.append((text, f_index, start, polys[start:start + CHUNK], config.bounds))
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(evaluate_chunk, *zip(*jobs)))
    else:
        parts = [evaluate_chunk(*job) for job in jobs]
    rows = sorted((row for part in parts for row in part), key=lambda row: row.key)
    per_field = {}
    for f_index, text in enumerate(config.fields):
        per_field[text] = _summarize(row for row in rows if row.key[0] == f_index)
    report = CampaignReport(config, rows, _summarize(rows), per_field,
                            _summarize(rows, literal=True))
    if config.out:
        report.write_csv(config.out)
    return report


def default_threads() -> int:
    return max(1, os.cpu_count() or 1)
