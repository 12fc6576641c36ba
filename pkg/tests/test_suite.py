"""Scenario table integrity, runner behavior, and corpus properties."""

import json

import pytest

from derangements.families import FAMILY_ARITY
from derangements.gf import field
from derangements.matgrp import scalar_matrix_group
from derangements.suite import (
    _MAT_BUILDERS,
    _random_words,
    PAPER_SCENARIOS,
    Expectation,
    RunReport,
    Scenario,
    corpus_group,
    corpus_names,
    corpus_ok,
    corpus_record,
    matrix_record,
    run_corpus_suite,
    run_paper_suite,
    run_scenario,
)

CHEAP_IDS = ("semilinear-3", "agl1-5", "affine-scalars-9", "coverage-s2")


def test_scenario_table_is_well_formed():
    ids = [sc.id for sc in PAPER_SCENARIOS]
    assert len(ids) == len(set(ids))
    for sc in PAPER_SCENARIOS:
        assert sc.kind in ("perm", "mat", "bridge")
        assert sc.params.name in FAMILY_ARITY
        assert len(sc.params.values) == FAMILY_ARITY[sc.params.name]
        if sc.kind == "bridge":
            assert sc.mat_id in _MAT_BUILDERS
        else:
            assert sc.mat_id is None
        assert sc.expected, "a scenario with nothing to pin checks nothing"


def test_cheap_scenarios_pass():
    reports = run_paper_suite(only=CHEAP_IDS)
    assert [r.scenario_id for r in reports] == list(CHEAP_IDS)
    for r in reports:
        assert r.passed, (r.scenario_id, r.failures)
        assert r.wall_ms >= 0.0


def test_scenario_records_are_json_safe():
    reports = run_paper_suite(only=CHEAP_IDS)
    for r in reports:
        text = json.dumps(r.to_record())
        assert json.loads(text) == r.to_record()


def test_fault_injection_fails_membership_check():
    reports = run_paper_suite(inject_fault=True, only=("agl1-5",))
    (r,) = reports
    assert not r.passed
    assert r.record["checks"]["captures_multi_fixers"] is False
    assert any(f == "all_checks" for f, _, _ in r.failures)


def test_failed_expectation_reports_field_and_values():
    sc = Scenario(
        id="probe",
        description="deliberately wrong pins",
        kind="perm",
        params=next(s for s in PAPER_SCENARIOS if s.id == "agl1-5").params,
        expected=(
            Expectation("order", 21, "wrong on purpose"),
            Expectation("no.such.field", 1),
        ),
    )
    r = run_scenario(sc)
    assert not r.passed
    fields = {f for f, _, _ in r.failures}
    assert fields == {"order", "no.such.field"}
    rec = r.to_record()
    missing = [f for f in rec["failures"] if f["field"] == "no.such.field"]
    assert missing[0]["actual"] == "<missing>"
    assert [f["expected"] for f in rec["failures"] if f["field"] == "order"] == [21]


def test_worker_pool_matches_sequential():
    seq = run_paper_suite(only=CHEAP_IDS)
    par = run_paper_suite(workers=2, only=CHEAP_IDS)
    assert [r.scenario_id for r in par] == [r.scenario_id for r in seq]
    for a, b in zip(seq, par):
        assert a.record == b.record
        assert a.failures == b.failures


def test_matrix_record_scalar_group():
    rec = matrix_record(scalar_matrix_group(field(5, 1), 2))
    assert rec["order"] == 4
    assert rec["r_order"] == 1
    assert rec["index"] == 4
    assert rec["quotient_name"] == "C4"
    assert rec["irreducible"] is False  # scalars leave every line invariant
    assert rec["index_ok"] is True
    assert rec["semiregular"] is True


def test_corpus_shape():
    names = corpus_names()
    assert len(names) == len(set(names))
    assert 55 <= len(names) <= 70
    for name in names:
        g = corpus_group(name)
        assert g.degree <= 125, name
        assert g.is_transitive(), name
        assert g.order() <= 2_000_000, name


def test_corpus_record_fields():
    rec = corpus_record("agl1-5")
    assert rec["name"] == "agl1-5"
    assert rec["index"] == 4 and rec["frobenius"] is True
    assert rec["frobenius_coverage"] is True
    assert rec["order_crosscheck"] is True
    assert rec["rank_crosscheck"] is True
    assert rec["coset_average_one"] is True
    assert corpus_ok(rec)


def test_corpus_record_tiny_regular_group():
    # index 1 at degree 2: the divisibility regime, not the root bound
    rec = corpus_record("cyclic-2")
    assert rec["index"] == 1 and rec["primitive"] is True
    assert rec["checks"]["index_bound"] is True
    assert corpus_ok(rec)


def test_corpus_record_rejects_unknown_name():
    with pytest.raises(KeyError):
        corpus_group("no-such-group")


def test_corpus_suite_filters_and_order():
    records = run_corpus_suite(max_degree=9, max_order=100)
    assert [r["name"] for r in records] == corpus_names()
    by_name = {r["name"]: r for r in records}
    assert by_name["pgammal28"] == {"name": "pgammal28", "skipped": True}
    assert by_name["sym-7"] == {"name": "sym-7", "skipped": True}
    small = by_name["cyclic-5"]
    assert small.get("skipped") is None and corpus_ok(small)
    # deterministic: a second run emits identical records
    assert run_corpus_suite(max_degree=9, max_order=100) == records


def test_random_words_are_deterministic_and_valid():
    g = corpus_group("sym-4")
    words = _random_words(g, "sym-4", 10)
    again = _random_words(g, "sym-4", 10)
    assert [w.images for w in words] == [w.images for w in again]
    assert len(words) == 10
    for w in words:
        assert w in g
