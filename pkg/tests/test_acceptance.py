"""The acceptance gate: fourteen numbered criteria, exact integer equality.

Each test prints one "criterion NN ... PASS/FAIL" line (visible with -s).
Expensive objects are built once per module: the full scenario suite and
the corpus sweep are shared by every criterion below.
"""

import numpy as np
import pytest

from derangements.derange import two_derangement_coverage
from derangements.gf import field, prime_power_decompose
from derangements.permgrp import symmetric_group
from derangements.suite import run_corpus_suite, run_paper_suite

CORE_CHECKS = (
    "subgroup_transitive",
    "captures_multi_fixers",
    "rank_identity",
    "orbit_semiregular",
)


@pytest.fixture(scope="module")
def paper():
    return {r.scenario_id: r for r in run_paper_suite()}


@pytest.fixture(scope="module")
def corpus():
    return run_corpus_suite()


def _criterion(number: int, label: str, ok: bool):
    print(f"criterion {number:2d} ({label}): {'PASS' if ok else 'FAIL'}")
    assert ok, f"criterion {number} failed: {label}"


def test_criterion_01_semilinear_family(paper):
    ok = True
    for q in (3, 4, 5):
        r = paper[f"semilinear-{q}"]
        rec = r.record
        n = q * q
        ok = ok and r.passed
        ok = ok and rec["degree"] == n
        ok = ok and rec["order"] == 2 * n * (n - 1)
        ok = ok and rec["index"] == q - 1
        ok = ok and rec["primitive"] is True
        ok = ok and rec["frobenius"] is False
    # q = 3 attains index = sqrt(degree) - 1
    rec3 = paper["semilinear-3"].record
    ok = ok and (rec3["index"] + 1) ** 2 == rec3["degree"] == 9
    _criterion(1, "semilinear family", ok)


def test_criterion_02_frobenius_baseline(paper):
    ok = True
    for q in (5, 7, 8):
        r = paper[f"agl1-{q}"]
        rec = r.record
        ok = ok and r.passed
        ok = ok and rec["d_order"] == q == rec["degree"]
        ok = ok and rec["index"] == q - 1 == rec["degree"] - 1
        ok = ok and rec["frobenius"] is True
        ok = ok and rec["checks"]["subgroup_transitive"] is True
    _criterion(2, "affine line baseline", ok)


def test_criterion_03_core_checks_corpus_wide(corpus):
    ok = 55 <= len(corpus) <= 70
    for rec in corpus:
        ok = ok and not rec.get("skipped")
        ok = ok and rec["degree"] <= 125 and rec["order"] <= 2_000_000
        for key in CORE_CHECKS:
            ok = ok and rec["checks"][key] is True
    _criterion(3, "four core checks on the corpus", ok)


def test_criterion_04_index_and_stabilizer_facts(corpus):
    ok = all(rec["checks"]["index_divides"] is True for rec in corpus)
    ok = ok and all(rec["checks"]["stabilizer_generated"] is True for rec in corpus)
    nontrivial = [rec for rec in corpus if rec["index"] > 1]
    ok = ok and len(nontrivial) >= 20  # the second clause is not vacuous
    _criterion(4, "index divisibility and stabilizer facts", ok)


def test_criterion_05_imprimitive_bound(corpus):
    imprimitive = [rec for rec in corpus if not rec["primitive"]]
    ok = len(imprimitive) >= 10
    for rec in imprimitive:
        ok = ok and (rec["index"] + 1) ** 2 <= rec["degree"]
    attained = next(rec for rec in corpus if rec["name"] == "affine-scalars-3-2")
    ok = ok and not attained["primitive"]
    ok = ok and attained["index"] == 2
    ok = ok and (attained["index"] + 1) ** 2 == attained["degree"] == 9
    _criterion(5, "imprimitive index bound", ok)


def test_criterion_06_order_1512_on_28_points(paper):
    r = paper["pgammal28"]
    rec = r.record
    ok = r.passed
    ok = ok and rec["degree"] == 28
    ok = ok and rec["order"] == 1512
    ok = ok and rec["d_order"] == 504
    ok = ok and rec["index"] == 3
    ok = ok and rec["socle_match"] is True
    _criterion(6, "simple socle on 28 points", ok)


def test_criterion_07_affine_bridge(paper):
    expected_index = {"bridge-scalars-3": 2, "bridge-gl2-3": 1, "bridge-klein": 4}
    ok = True
    for sid, index in expected_index.items():
        r = paper[sid]
        rec = r.record
        ok = ok and r.passed
        ok = ok and rec["perm"]["index"] == index == rec["mat"]["index"]
        ok = ok and rec["index_match"] is True
        ok = ok and rec["quotient_match"] is True
    _criterion(7, "affine bridge", ok)


def test_criterion_08_central_product_quotients(paper):
    klein = paper["bridge-klein"].record
    ok = klein["perm"]["degree"] == 625
    ok = ok and klein["perm"]["order"] == 30000
    ok = ok and klein["mat"]["index"] == 4
    ok = ok and klein["perm"]["quotient_name"] == "C2xC2"
    for sid, index, name in (("central-a4", 12, "A4"), ("central-a5", 60, "A5")):
        r = paper[sid]
        ok = ok and r.passed
        ok = ok and r.record["index"] == index
        ok = ok and r.record["quotient_name"] == name
    _criterion(8, "central product quotients", ok)


def test_criterion_09_dihedral_family(paper):
    ok = True
    for q, order, name in ((7, 96, "D8"), (11, 240, "D12")):
        r = paper[f"dihedral-family-{q}"]
        rec = r.record
        ok = ok and r.passed
        ok = ok and rec["order"] == order
        ok = ok and rec["index"] == q + 1
        ok = ok and rec["quotient_name"] == name
        ok = ok and rec["irreducible"] is True
    _criterion(9, "dihedral quotient family", ok)


def test_criterion_10_frobenius_complement_construction(paper):
    r = paper["frobenius-complement-5-2-3"]
    rec = r.record
    ok = r.passed
    ok = ok and rec["degree"] == 125
    ok = ok and rec["order"] == 1500
    ok = ok and rec["d_order"] == 375  # 5^3 translations joined by a 3-cycle
    ok = ok and rec["index"] == 4
    ok = ok and rec["quotient_name"] == "C4"
    ok = ok and rec["frobenius"] is False
    _criterion(10, "Frobenius-complement construction", ok)


def test_criterion_11_coset_averages(corpus):
    ok = all(rec["coset_average_one"] is True for rec in corpus)
    _criterion(11, "coset fixed-point averages", ok)


def test_criterion_12_derangement_abundance(corpus):
    ok = all(rec["abundance"] is True for rec in corpus)
    ok = ok and all(
        rec["derangements"] * rec["degree"] >= rec["order"] for rec in corpus
    )
    _criterion(12, "derangement abundance", ok)


def test_criterion_13_two_derangement_coverage(paper, corpus):
    covered, witnesses = two_derangement_coverage(symmetric_group(2))
    ok = covered is False
    ok = ok and len(witnesses) == 1 and witnesses[0].images == (1, 0)
    ok = ok and paper["coverage-a5"].passed
    ok = ok and paper["coverage-a5"].record["covered"] is True
    ok = ok and paper["agl1-5"].record["covered"] is True
    frobenius_tested = [
        rec for rec in corpus if rec["frobenius"] and rec["d_order"] >= 3
    ]
    ok = ok and len(frobenius_tested) >= 10
    ok = ok and all(rec["frobenius_coverage"] is True for rec in frobenius_tested)
    _criterion(13, "two-derangement coverage", ok)


def _prime_powers_up_to(limit: int) -> list[int]:
    primes = [p for p in range(2, limit + 1) if all(p % d for d in range(2, p))]
    out = []
    for p in primes:
        q = p
        while q <= limit:
            out.append(q)
            q *= p
    return sorted(out)


def _field_axioms_hold(q: int) -> bool:
    spec = field(*prime_power_decompose(q))
    n = spec.order
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            add[a, b] = spec.add_e(a, b)
            mul[a, b] = spec.mul_e(a, b)
    idx = np.arange(n)
    ok = np.array_equal(add[add], add[:, add])  # (a+b)+c = a+(b+c)
    ok = ok and np.array_equal(mul[mul], mul[:, mul])
    ok = ok and np.array_equal(add, add.T)
    ok = ok and np.array_equal(mul, mul.T)
    ok = ok and np.array_equal(add[:, 0], idx)
    ok = ok and np.array_equal(mul[:, 1], idx)
    ok = ok and np.array_equal(mul[:, 0], np.zeros(n, dtype=np.int64))
    # a*(b+c) = a*b + a*c
    ok = ok and np.array_equal(mul[:, add], add[mul[:, :, None], mul[:, None, :]])
    # additive inverses: every row of the addition table is a permutation
    ok = ok and bool(np.all(np.sort(add, axis=1) == idx))
    # multiplicative inverses: every nonzero row hits 1 exactly once
    ok = ok and bool(np.all((mul[1:] == 1).sum(axis=1) == 1))
    return bool(ok)


def test_criterion_14_property_oracles(corpus):
    small = [rec for rec in corpus if rec["order"] <= 10_000]
    ok = len(small) >= 50
    ok = ok and all(rec["order_crosscheck"] is True for rec in small)
    ok = ok and all(rec["rank_crosscheck"] is True for rec in corpus)
    for q in _prime_powers_up_to(81):
        ok = ok and _field_axioms_hold(q)
    _criterion(14, "independent oracles", ok)
