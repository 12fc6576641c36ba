"""Built-in verification scenarios and the transitive-group corpus.

A Scenario names a construction and pins exact expected values for fields
of its analysis record.  ``run_paper_suite`` builds every scenario,
analyzes it, and compares field by field; ``run_corpus_suite`` sweeps a
fixed list of transitive groups (degree at most 125) through the full set
of structural properties: the four core subgroup checks, index
divisibility and the stabilizer facts, the imprimitivity bound, exact
coset fixed-point averages, derangement abundance, two-derangement
coverage for Frobenius actions, and independent order and rank
cross-checks.

All records are plain JSON-safe dicts with deterministic key and entry
order, so repeated runs emit identical bytes (wall times are kept on the
in-memory report objects only, never serialized).
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .derange import (
    analyze,
    bound_check,
    derangement_subgroup,
    fingerprint,
    identify_fingerprint,
    index_consequences,
    subgroup_checks,
    two_derangement_coverage,
)
from .families import (
    FamilyParams,
    affine_group,
    build_family,
    central_product_examples,
    direct_product_action,
)
from .gf import field
from .matgrp import (
    MatrixGroup,
    eigenvalue_one_subgroup,
    general_linear_gl2,
    index_bound_check,
    is_irreducible,
    quotient_perm_group,
    scalar_matrix_group,
)
from .permgrp import (
    PermGroup,
    Permutation,
    alternating_group,
    bruteforce_closure,
    coset_average_fixed_points,
    count_fixed,
    cyclic_group,
    dihedral_group,
    symmetric_group,
)

BRUTEFORCE_ORDER_CAP = 10_000
COSET_REP_COUNT = 10

_MISSING = object()


# ---------------------------------------------------------------------------
# scenario definitions


@dataclass(frozen=True)
class Expectation:
    """One pinned record field: dotted path, exact expected value, and a
    short note saying which fact the value pins down."""

    field: str
    value: object
    note: str = ""


@dataclass(frozen=True)
class Scenario:
    """A named construction plus the exact record values it must produce.

    kind is "perm" (permutation analysis), "mat" (eigenvalue-1 analysis of
    a matrix group), or "bridge" (both sides built independently and their
    index and quotient compared).
    """

    id: str
    description: str
    kind: str
    params: FamilyParams
    expected: tuple[Expectation, ...]
    extras: tuple[str, ...] = ()
    mat_id: str | None = None  # matrix side of a bridge scenario


# matrix-side builders for bridge scenarios (not all are CLI families)
_MAT_BUILDERS = {
    "scalars-3-2": lambda: scalar_matrix_group(field(3, 1), 2),
    "gl2-3": lambda: general_linear_gl2(field(3, 1)),
    "central-klein": lambda: central_product_examples("klein"),
}


def _e(field_path: str, value, note: str = "") -> Expectation:
    return Expectation(field_path, value, note)


def _semilinear_scenario(q: int) -> Scenario:
    n = q * q
    return Scenario(
        id=f"semilinear-{q}",
        description=f"semilinear maps a*x^e + c on the field of {n} elements",
        kind="perm",
        params=FamilyParams("semilinear", (q,)),
        expected=(
            _e("degree", n, "acts on the q^2 field elements"),
            _e("order", 2 * n * (n - 1), "2 q^2 (q^2 - 1) maps"),
            _e("index", q - 1, "index of the derangement-generated subgroup"),
            _e("frobenius", False, "field automorphism fixes a subfield"),
            _e("quotient_name", f"C{q - 1}", "cyclic quotient"),
            _e("primitive", True, "no invariant partition"),
            _e("bound_equality", True, "(index+1)^2 equals the degree"),
            _e("all_checks", True),
        ),
        extras=("primitive", "bound_equality"),
    )


def _agl1_scenario(q: int) -> Scenario:
    return Scenario(
        id=f"agl1-{q}",
        description=f"affine maps a*x + b on {q} points",
        kind="perm",
        params=FamilyParams("agl1", (q,)),
        expected=(
            _e("degree", q),
            _e("order", q * (q - 1)),
            _e("d_order", q, "derangements generate the translations"),
            _e("index", q - 1, "index equals degree - 1, the extreme case"),
            _e("frobenius", True, "only the identity fixes two points"),
            _e("quotient_name", f"C{q - 1}"),
            _e("all_checks", True),
        ),
        extras=("coverage",) if q == 5 else (),
    )


def _paper_scenarios() -> tuple[Scenario, ...]:
    scenarios = [
        _semilinear_scenario(3),
        _semilinear_scenario(4),
        _semilinear_scenario(5),
        _agl1_scenario(5),
        _agl1_scenario(7),
        _agl1_scenario(8),
        Scenario(
            id="affine-scalars-9",
            description="translations of a 9-element plane extended by negation",
            kind="perm",
            params=FamilyParams("affine-scalars", (3, 2)),
            expected=(
                _e("degree", 9),
                _e("order", 18),
                _e("d_order", 9, "derangements generate the translations"),
                _e("index", 2),
                _e("frobenius", True),
                _e("primitive", False, "lines through 0 form blocks"),
                _e("bound_equality", True, "(2+1)^2 = 9 meets the bound exactly"),
                _e("quotient_name", "C2"),
                _e("all_checks", True),
            ),
            extras=("primitive", "bound_equality"),
        ),
        Scenario(
            id="pgammal28",
            description="order-1512 extension of a simple group of order 504, "
            "acting on 28 cosets",
            kind="perm",
            params=FamilyParams("pgammal28", ()),
            expected=(
                _e("degree", 28),
                _e("order", 1512),
                _e("d_order", 504, "derangements generate the simple socle"),
                _e("index", 3, "cubing field automorphism survives"),
                _e("quotient_name", "C3"),
                _e("socle_match", True, "subgroup matches an independent model "
                   "of the simple group of order 504"),
                _e("all_checks", True),
            ),
            extras=("socle_match",),
        ),
        Scenario(
            id="bridge-scalars-3",
            description="negation on a 9-element plane: affine action vs "
            "matrix eigenvalue-1 analysis",
            kind="bridge",
            params=FamilyParams("affine-scalars", (3, 2)),
            mat_id="scalars-3-2",
            expected=(
                _e("perm.index", 2),
                _e("mat.index", 2),
                _e("index_match", True, "affine index equals matrix index"),
                _e("quotient_match", True, "same quotient on both sides"),
                _e("perm.quotient_name", "C2"),
            ),
        ),
        Scenario(
            id="bridge-gl2-3",
            description="full 2x2 matrix group over 3 elements: affine action "
            "vs matrix analysis",
            kind="bridge",
            params=FamilyParams("affine-gl2", (3,)),
            mat_id="gl2-3",
            expected=(
                _e("perm.order", 432),
                _e("perm.index", 1, "transvections fix vectors, index collapses"),
                _e("mat.index", 1),
                _e("index_match", True),
                _e("quotient_match", True),
                _e("perm.quotient_name", "C1"),
            ),
        ),
        Scenario(
            id="bridge-klein",
            description="central product with Klein four quotient over 625 "
            "points: affine action vs matrix analysis",
            kind="bridge",
            params=FamilyParams("affine-klein", ()),
            mat_id="central-klein",
            expected=(
                _e("perm.degree", 625),
                _e("perm.order", 30000),
                _e("perm.index", 4),
                _e("mat.order", 48),
                _e("mat.index", 4),
                _e("index_match", True),
                _e("quotient_match", True),
                _e("perm.quotient_name", "C2xC2", "non-cyclic quotient"),
                _e("mat.irreducible", True),
            ),
        ),
        Scenario(
            id="central-a4",
            description="central product realizing an alternating quotient "
            "of order 12",
            kind="mat",
            params=FamilyParams("central-a4", ()),
            expected=(
                _e("order", 528),
                _e("r_order", 44),
                _e("index", 12),
                _e("quotient_name", "A4"),
                _e("irreducible", True),
                _e("index_ok", True),
            ),
        ),
        Scenario(
            id="central-a5",
            description="central product realizing an alternating quotient "
            "of order 60",
            kind="mat",
            params=FamilyParams("central-a5", ()),
            expected=(
                _e("order", 6960),
                _e("r_order", 116),
                _e("index", 60),
                _e("quotient_name", "A5"),
                _e("irreducible", True),
                _e("index_ok", True),
            ),
        ),
        Scenario(
            id="dihedral-family-7",
            description="irreducible 4-dimensional group over 7 elements with "
            "dihedral quotient of order 8",
            kind="mat",
            params=FamilyParams("dihedral-family", (7,)),
            expected=(
                _e("order", 96),
                _e("r_order", 12),
                _e("index", 8),
                _e("quotient_name", "D8"),
                _e("irreducible", True),
                _e("index_ok", True),
            ),
        ),
        Scenario(
            id="dihedral-family-11",
            description="irreducible 4-dimensional group over 11 elements with "
            "dihedral quotient of order 12",
            kind="mat",
            params=FamilyParams("dihedral-family", (11,)),
            expected=(
                _e("order", 240),
                _e("r_order", 20),
                _e("index", 12),
                _e("quotient_name", "D12"),
                _e("irreducible", True),
                _e("index_ok", True),
            ),
        ),
        Scenario(
            id="frobenius-complement-5-2-3",
            description="rank-3 power of a 5-point cycle extended by a "
            "multiplier of order 4 and a coordinate rotation",
            kind="perm",
            params=FamilyParams("frobenius-complement", (5, 2, 3)),
            expected=(
                _e("degree", 125),
                _e("order", 1500),
                _e("d_order", 375, "base translations joined by the rotation"),
                _e("index", 4),
                _e("frobenius", False, "the rotation fixes diagonal points"),
                _e("quotient_name", "C4"),
                _e("all_checks", True),
            ),
        ),
        Scenario(
            id="coverage-s2",
            description="two points: the swap cannot be a product of two "
            "derangements",
            kind="perm",
            params=FamilyParams("symmetric", (2,)),
            expected=(
                _e("covered", False, "products of two derangements miss the swap"),
                _e("coverage_witnesses", 1),
            ),
            extras=("coverage",),
        ),
        Scenario(
            id="coverage-a5",
            description="even permutations of 5 points: everything in the "
            "group is a product of two derangements",
            kind="perm",
            params=FamilyParams("alternating", (5,)),
            expected=(
                _e("index", 1),
                _e("covered", True),
                _e("coverage_witnesses", 0),
            ),
            extras=("coverage",),
        ),
    ]
    return tuple(scenarios)


# ---------------------------------------------------------------------------
# record builders


def _resolve(record: dict, dotted: str):
    cur = record
    for part in dotted.split("."):
        if not isinstance(cur, dict) or part not in cur:
            return _MISSING
        cur = cur[part]
    return cur


def _perm_record(group: PermGroup, extras: tuple[str, ...]) -> dict:
    report = analyze(group)
    record = report.to_record()
    record["all_checks"] = report.all_checks_pass()
    if "primitive" in extras:
        record["primitive"] = group.is_primitive()
    if "bound_equality" in extras:
        record["bound_equality"] = (report.index + 1) ** 2 == report.degree
    if "socle_match" in extras:
        sub = derangement_subgroup(group)
        record["socle_match"] = fingerprint(sub) == _simple_504_fingerprint()
    if "coverage" in extras:
        covered, witnesses = two_derangement_coverage(group)
        record["covered"] = covered
        record["coverage_witnesses"] = len(witnesses)
    return record


def _faulted_perm_record(group: PermGroup, extras: tuple[str, ...]) -> dict:
    """Deliberately drop the last derangement generator and rerun the checks
    against the crippled candidate.  The membership check must fail, which
    exercises the failure path end to end."""
    sub = derangement_subgroup(group)
    candidate = PermGroup(group.degree, list(sub.generators)[:-1])
    core = subgroup_checks(group, candidate)
    cons = index_consequences(group, candidate)
    bound = bound_check(group, candidate, frobenius=False)
    record = {
        "degree": group.degree,
        "order": group.order(),
        "derangements": None,
        "d_order": candidate.order(),
        "index": core.index,
        "rank_g": core.rank_g,
        "rank_n": core.rank_n,
        "frobenius": False,
        "quotient_name": "unrecognized",
        "checks": {
            "subgroup_transitive": core.transitive,
            "captures_multi_fixers": core.captures_multi_fixers,
            "rank_identity": core.rank_identity,
            "orbit_semiregular": core.orbit_semiregular,
            "index_divides": cons.index_divides,
            "stabilizer_generated": cons.stabilizer_ok(),
            "index_bound": bound.ok,
        },
    }
    record["all_checks"] = all(record["checks"].values())
    for key in extras:
        record.setdefault(key, None)
    return record


def _matrix_profile(group: MatrixGroup):
    sub = eigenvalue_one_subgroup(group)
    bound = index_bound_check(group, sub)
    quotient = quotient_perm_group(group, sub)
    fp = fingerprint(quotient)
    record = {
        "field": group.spec.order,
        "dimension": group.d,
        "order": group.order(),
        "r_order": sub.order(),
        "index": bound.index,
        "index_ok": bound.index_ok,
        "semiregular": bound.semiregular,
        "irreducible": is_irreducible(group),
        "quotient_name": identify_fingerprint(fp),
    }
    return record, fp


def matrix_record(group: MatrixGroup) -> dict:
    """Eigenvalue-1 analysis of a matrix group as a flat JSON-safe dict."""
    record, _ = _matrix_profile(group)
    return record


def _bridge_record(perm_group: PermGroup, mat_group: MatrixGroup) -> dict:
    report = analyze(perm_group)
    perm = report.to_record()
    perm["all_checks"] = report.all_checks_pass()
    mat, mat_fp = _matrix_profile(mat_group)
    return {
        "perm": perm,
        "mat": mat,
        "index_match": report.index == mat["index"],
        "quotient_match": report.quotient == mat_fp,
    }


def _simple_504_fingerprint():
    """Fingerprint of an independently built simple group of order 504:
    the fractional-linear maps x+1, gx, 1/x on the projective line over
    the 8-element field."""
    gf8 = field(2, 3)
    inf = 8
    g = gf8._enc(gf8.primitive_element().coeffs)

    def onto(fn) -> Permutation:
        return Permutation(tuple(fn(x) for x in range(9)))

    shift = onto(lambda x: gf8.add_e(x, 1) if x != inf else inf)
    scale = onto(lambda x: gf8.mul_e(x, g) if x != inf else inf)
    invert = onto(lambda x: inf if x == 0 else (0 if x == inf else gf8.inv_e(x)))
    group = PermGroup(9, [shift, scale, invert])
    assert group.order() == 504
    return fingerprint(group)


# ---------------------------------------------------------------------------
# scenario runner


@dataclass(frozen=True)
class RunReport:
    """Outcome of one scenario: the record produced, plus every expectation
    that failed as (field, expected, actual)."""

    scenario_id: str
    description: str
    record: dict
    failures: tuple[tuple[str, object, object], ...]
    wall_ms: float

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_record(self) -> dict:
        return {
            "id": self.scenario_id,
            "description": self.description,
            "pass": self.passed,
            "failures": [
                {"field": f, "expected": e, "actual": a if a is not _MISSING else "<missing>"}
                for f, e, a in self.failures
            ],
            "record": self.record,
        }


PAPER_SCENARIOS: tuple[Scenario, ...] = _paper_scenarios()
_SCENARIOS_BY_ID = {sc.id: sc for sc in PAPER_SCENARIOS}


def run_scenario(scenario: Scenario, inject_fault: bool = False) -> RunReport:
    start = time.perf_counter()
    built = build_family(scenario.params)
    if scenario.kind == "perm":
        maker = _faulted_perm_record if inject_fault else _perm_record
        record = maker(built, scenario.extras)
    elif scenario.kind == "mat":
        record = matrix_record(built)
    elif scenario.kind == "bridge":
        record = _bridge_record(built, _MAT_BUILDERS[scenario.mat_id]())
    else:
        raise ValueError(f"unknown scenario kind {scenario.kind!r}")
    failures = []
    for exp in scenario.expected:
        actual = _resolve(record, exp.field)
        if actual != exp.value:
            failures.append((exp.field, exp.value, actual))
    wall_ms = (time.perf_counter() - start) * 1000.0
    return RunReport(scenario.id, scenario.description, record, tuple(failures), wall_ms)


def _run_scenario_by_id(scenario_id: str, inject_fault: bool) -> RunReport:
    return run_scenario(_SCENARIOS_BY_ID[scenario_id], inject_fault)


def run_paper_suite(
    workers: int = 1,
    inject_fault: bool = False,
    only: tuple[str, ...] = (),
) -> list[RunReport]:
    """Run the built-in scenarios in definition order.

    With inject_fault=True each permutation scenario drops one derangement
    generator before the checks, so the membership check must fail; this is
    a self-test of the failure path.  ``only`` restricts to the named
    scenario ids, preserving definition order.
    """
    chosen = [sc for sc in PAPER_SCENARIOS if not only or sc.id in only]
    if workers <= 1 or len(chosen) <= 1:
        return [run_scenario(sc, inject_fault) for sc in chosen]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = [
            pool.submit(_run_scenario_by_id, sc.id, inject_fault) for sc in chosen
        ]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# the corpus


def _corpus_builders() -> dict:
    """Name -> zero-argument builder, in fixed emission order."""
    builders = {}
    for n in range(2, 13):
        builders[f"cyclic-{n}"] = (cyclic_group, n)
    for n in range(2, 8):
        builders[f"sym-{n}"] = (symmetric_group, n)
    for n in range(3, 8):
        builders[f"alt-{n}"] = (alternating_group, n)
    for m in range(3, 11):
        builders[f"dihedral-{m}"] = (dihedral_group, m)
    for q in (3, 4, 5, 7, 8, 9, 11, 13):
        builders[f"agl1-{q}"] = (_family, "agl1", q)
    builders["affine-scalars-3-2"] = (_family, "affine-scalars", 3, 2)
    builders["affine-scalars-5-2"] = (_family, "affine-scalars", 5, 2)
    builders["affine-gl2-3"] = (_family, "affine-gl2", 3)
    builders["affine-gl2-4"] = (_family, "affine-gl2", 4)
    builders["affine-sl2-3"] = (_affine_sl2_3,)
    for q in (3, 4, 5, 7, 8, 9):
        builders[f"semilinear-{q}"] = (_family, "semilinear", q)
    builders["wreath-sym-2-2"] = (_family, "wreath-sym", 2, 2)
    builders["wreath-sym-3-2"] = (_family, "wreath-sym", 3, 2)
    builders["wreath-cyclic-3-2"] = (_family, "wreath-cyclic", 3, 2)
    builders["wreath-cyclic-5-2"] = (_family, "wreath-cyclic", 5, 2)
    builders["wreath-cyclic-2-3"] = (_family, "wreath-cyclic", 2, 3)
    builders["pgammal28"] = (_family, "pgammal28")
    builders["frobenius-complement-5-2-3"] = (_family, "frobenius-complement", 5, 2, 3)
    builders["frobenius-complement-7-2-2"] = (_family, "frobenius-complement", 7, 2, 2)
    builders["product-c2-c2"] = (_product, (cyclic_group, 2), (cyclic_group, 2))
    builders["product-c2-s3"] = (_product, (cyclic_group, 2), (symmetric_group, 3))
    builders["product-s3-s3"] = (_product, (symmetric_group, 3), (symmetric_group, 3))
    builders["product-a4-c2"] = (_product, (alternating_group, 4), (cyclic_group, 2))
    return builders


def _family(name: str, *values: int) -> PermGroup:
    return build_family(FamilyParams(name, tuple(values)))


def _affine_sl2_3() -> PermGroup:
    from .matgrp import special_linear_gl2

    return affine_group(special_linear_gl2(field(3, 1)))


def _product(a, b) -> PermGroup:
    return direct_product_action(a[0](*a[1:]), b[0](*b[1:]))


def _build(entry) -> PermGroup:
    fn, *args = entry
    return fn(*args)


def corpus_names() -> list[str]:
    return list(_corpus_builders())


def corpus_group(name: str) -> PermGroup:
    return _build(_corpus_builders()[name])


def _random_words(group: PermGroup, name: str, count: int) -> list[Permutation]:
    """Deterministic pseudo-random generator words, used as coset
    representatives.  Any representatives work; these just vary them."""
    rng = random.Random(f"coset-reps:{name}")
    gens = list(group.generators)
    words = []
    for _ in range(count):
        w = Permutation.identity(group.degree)
        for _ in range(rng.randint(1, 6)):
            g = rng.choice(gens)
            w = w * (g.inverse() if rng.random() < 0.5 else g)
        words.append(w)
    return words


def corpus_record(name: str, group: PermGroup | None = None) -> dict:
    """All corpus-wide properties for one group, as a JSON-safe dict."""
    if group is None:
        group = corpus_group(name)
    report = analyze(group)
    record = {"name": name}
    record.update(report.to_record())
    record["all_checks"] = report.all_checks_pass()
    record["primitive"] = group.is_primitive()
    record["sqrt_bound"] = (report.index + 1) ** 2 <= report.degree
    record["abundance"] = report.derangement_count * report.degree >= report.order

    sub = derangement_subgroup(group)
    reps = _random_words(group, name, COSET_REP_COUNT)
    record["coset_average_one"] = all(
        coset_average_fixed_points(t, sub) == 1 for t in reps
    )

    if report.frobenius and report.d_order >= 3:
        covered, _ = two_derangement_coverage(group)
        record["frobenius_coverage"] = covered
    else:
        record["frobenius_coverage"] = None

    if report.order <= BRUTEFORCE_ORDER_CAP:
        closure = bruteforce_closure(group.degree, group.generators, cap=report.order + 1)
        record["order_crosscheck"] = len(closure) == report.order
    else:
        record["order_crosscheck"] = None

    square_sum = sum(count_fixed(raw) ** 2 for raw in group._iter_element_tuples())
    record["rank_crosscheck"] = square_sum == report.rank_g * report.order
    return record


def corpus_failures(record: dict) -> list[str]:
    """Names of the required properties this corpus entry violated."""
    bad = [f"checks.{k}" for k, v in record["checks"].items() if not v]
    if not (record["primitive"] or record["sqrt_bound"]):
        bad.append("sqrt_bound")
    if not record["abundance"]:
        bad.append("abundance")
    if not record["coset_average_one"]:
        bad.append("coset_average_one")
    if record["frobenius_coverage"] is False:
        bad.append("frobenius_coverage")
    if record["order_crosscheck"] is False:
        bad.append("order_crosscheck")
    if not record["rank_crosscheck"]:
        bad.append("rank_crosscheck")
    return bad


def corpus_ok(record: dict) -> bool:
    """Did this corpus entry satisfy every property that must hold?"""
    return not corpus_failures(record)


def _corpus_record_by_name(name: str) -> dict:
    return corpus_record(name)


def run_corpus_suite(
    workers: int = 1,
    max_order: int | None = None,
    max_degree: int | None = None,
) -> list[dict]:
    """Records for every corpus group, in fixed order.  Groups exceeding
    max_order or max_degree are emitted as skip markers."""
    names = corpus_names()
    selected = []
    for name in names:
        group = corpus_group(name)
        if max_degree is not None and group.degree > max_degree:
            selected.append((name, None))
        elif max_order is not None and group.order() > max_order:
            selected.append((name, None))
        else:
            selected.append((name, group))
    kept = [name for name, group in selected if group is not None]
    if workers <= 1 or len(kept) <= 1:
        by_name = {name: corpus_record(name, group) for name, group in selected if group is not None}
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = {name: pool.submit(_corpus_record_by_name, name) for name in kept}
            by_name = {name: fut.result() for name, fut in futures.items()}
    out = []
    for name, group in selected:
        if group is None:
            out.append({"name": name, "skipped": True})
        else:
            out.append(by_name[name])
    return out
