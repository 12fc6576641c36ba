"""Derangement subgroup analysis against hand-checked small groups."""

from fractions import Fraction

import pytest

from derangements.derange import (
    AnalysisReport,
    analyze,
    bound_check,
    derangement_count,
    derangement_set,
    derangement_subgroup,
    fingerprint,
    identify_quotient,
    index_consequences,
    is_frobenius,
    splits_over,
    subgroup_checks,
    two_derangement_coverage,
    _abelian_invariants,
)
from derangements.errors import NotSubgroup, NotTransitive
from derangements.permgrp import (
    PermGroup,
    Permutation,
    alternating_group,
    cyclic_group,
    dihedral_group,
    symmetric_group,
)


def agl_1_5() -> PermGroup:
    # x -> x + 1 and x -> 2x on GF(5); sharply 2-transitive, order 20
    return PermGroup(5, [Permutation((1, 2, 3, 4, 0)), Permutation((0, 2, 4, 1, 3))])


def affine_scaling_9() -> PermGroup:
    # translations of GF(3)^2 plus negation: order 18, degree 9
    # point x + 3y  <->  vector (x, y)
    shift_x = Permutation(tuple((x + 1) % 3 + 3 * y for y in range(3) for x in range(3)))
    # careful: enumerate points in index order
    pts = [(i % 3, i // 3) for i in range(9)]
    idx = {p: i for i, p in enumerate(pts)}
    tx = Permutation(tuple(idx[((x + 1) % 3, y)] for x, y in pts))
    ty = Permutation(tuple(idx[(x, (y + 1) % 3)] for x, y in pts))
    neg = Permutation(tuple(idx[((-x) % 3, (-y) % 3)] for x, y in pts))
    assert shift_x == tx
    return PermGroup(9, [tx, ty, neg])


def test_derangement_set_s3():
    ds = derangement_set(symmetric_group(3))
    assert sorted(p.images for p in ds) == [(1, 2, 0), (2, 0, 1)]


def test_derangement_set_s4_shapes():
    ds = derangement_set(symmetric_group(4))
    assert len(ds) == 9
    shapes = sorted(tuple(sorted(len(c) for c in p.cycles())) for p in ds)
    assert shapes.count((2, 2)) == 3 and shapes.count((4,)) == 6


def test_derangement_set_regular():
    assert len(derangement_set(cyclic_group(5))) == 4


def test_derangement_subgroup_s3():
    d = derangement_subgroup(symmetric_group(3))
    assert d.order() == 3
    assert d.same_group_as(alternating_group(3))


def test_derangement_subgroup_s4_full():
    g = symmetric_group(4)
    d = derangement_subgroup(g)
    assert d.order() == 24


def test_derangement_subgroup_agl15():
    g = agl_1_5()
    assert g.order() == 20
    d = derangement_subgroup(g)
    assert d.order() == 5
    assert sorted(p.order() for p in d.iter_elements()) == [1, 5, 5, 5, 5]


def test_derangement_subgroup_needs_transitive():
    fix_last = PermGroup(4, [Permutation((1, 0, 2, 3))])
    with pytest.raises(NotTransitive):
        derangement_subgroup(fix_last)


def test_subgroup_checks_agl15():
    checks = subgroup_checks(agl_1_5())
    assert checks.all_pass()
    assert checks.index == 4
    assert checks.rank_g == 2 and checks.rank_n == 5
    assert (checks.rank_n - 1) == (checks.rank_g - 1) * checks.index


def test_subgroup_checks_candidate_detects_gap():
    g = agl_1_5()
    stab = g.stabilizer(0)
    checks = subgroup_checks(g, candidate=stab)
    assert not checks.transitive
    assert not checks.captures_multi_fixers  # the 5-cycles are not in the stabilizer
    trivial = PermGroup(5, ())
    assert not subgroup_checks(g, candidate=trivial).captures_multi_fixers


def test_subgroup_checks_candidate_must_be_subgroup():
    swap = PermGroup(5, [Permutation((1, 0, 2, 3, 4))])
    with pytest.raises(NotSubgroup):
        subgroup_checks(agl_1_5(), candidate=swap)


def test_index_consequences_agl15():
    cons = index_consequences(agl_1_5())
    assert cons.index == 4
    assert cons.index_divides  # 4 | 4
    assert cons.stabilizer_half and cons.stabilizer_generated
    assert cons.stabilizer_ok()


def test_index_consequences_index_one():
    cons = index_consequences(symmetric_group(4))
    assert cons.index == 1 and cons.index_divides and cons.stabilizer_ok()


def test_is_frobenius():
    flag, kernel = is_frobenius(agl_1_5())
    assert flag and kernel.order() == 5
    flag, kernel = is_frobenius(symmetric_group(4))
    assert not flag and kernel is None
    # regular actions are not Frobenius: the stabilizer is trivial
    flag, kernel = is_frobenius(cyclic_group(5))
    assert not flag


def test_bound_check_regimes():
    frob = bound_check(agl_1_5())
    assert frob.regime == "frobenius" and frob.ok and frob.divisor_holds
    assert not frob.sqrt_bound_holds  # 25 > 5, only divisibility applies
    prim = bound_check(symmetric_group(4))
    assert prim.regime == "primitive" and prim.index == 1 and prim.ok

    v9 = affine_scaling_9()
    assert v9.order() == 18
    rep = bound_check(v9)
    assert rep.regime == "frobenius"
    assert rep.index == 2 and rep.degree == 9
    assert rep.sqrt_bound_holds and (rep.index + 1) ** 2 == 9  # equality case
    assert not rep.primitive

    # tiny regular groups: primitive regime only demands divisibility
    tiny = bound_check(cyclic_group(2))
    assert tiny.regime == "primitive" and tiny.index == 1
    assert tiny.ok and not tiny.sqrt_bound_holds

    imprim = bound_check(cyclic_group(4))
    assert imprim.regime == "imprimitive"
    assert imprim.ok and imprim.sqrt_bound_holds  # (1+1)^2 <= 4, just barely


def test_two_derangement_coverage_small():
    covered, witnesses = two_derangement_coverage(symmetric_group(2))
    assert not covered
    assert [w.images for w in witnesses] == [(1, 0)]
    covered, witnesses = two_derangement_coverage(cyclic_group(3))
    assert covered and witnesses == []
    covered, _ = two_derangement_coverage(alternating_group(5))
    assert covered
    covered, _ = two_derangement_coverage(agl_1_5())
    assert covered


def test_splits_over():
    s3 = symmetric_group(3)
    assert splits_over(s3, derangement_subgroup(s3)) is True
    c4 = cyclic_group(4)
    squares = PermGroup(4, [Permutation((2, 3, 0, 1))])
    assert splits_over(c4, squares) is False
    g = agl_1_5()
    assert splits_over(g, derangement_subgroup(g)) is True
    assert splits_over(g, g) is True
    big = symmetric_group(9)
    assert splits_over(big, alternating_group(9), order_cap=1000) is None


def test_abelian_invariants_from_histograms():
    from collections import Counter

    assert _abelian_invariants(4, Counter({1: 1, 2: 3})) == (2, 2)
    assert _abelian_invariants(4, Counter({1: 1, 2: 1, 4: 2})) == (4,)
    assert _abelian_invariants(12, Counter({1: 1, 2: 1, 3: 2, 4: 2, 6: 2, 12: 4})) == (3, 4)
    assert _abelian_invariants(8, Counter({1: 1, 2: 3, 4: 4})) == (2, 4)


def test_fingerprint_c6():
    fp = fingerprint(cyclic_group(6))
    assert fp.order == 6 and fp.center_order == 6 and fp.derived_order == 1
    assert fp.abelian_invariants == (2, 3)


def test_identify_small_groups():
    assert identify_quotient(PermGroup(1, ())) == "C1"
    assert identify_quotient(cyclic_group(2)) == "C2"
    assert identify_quotient(cyclic_group(7)) == "C7"
    v4 = PermGroup(4, [Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))])
    assert identify_quotient(v4) == "C2xC2"
    assert identify_quotient(symmetric_group(3)) == "S3"
    assert identify_quotient(dihedral_group(4)) == "D8"
    assert identify_quotient(dihedral_group(6)) == "D12"
    assert identify_quotient(alternating_group(4)) == "A4"
    assert identify_quotient(alternating_group(5)) == "A5"
    assert identify_quotient(symmetric_group(4)) == "unrecognized"
    c3xc3 = PermGroup(6, [Permutation((1, 2, 0, 3, 4, 5)), Permutation((0, 1, 2, 4, 5, 3))])
    assert identify_quotient(c3xc3) == "unrecognized"


def test_identify_named_regular_models():
    from derangements.gf import field
    from derangements.matgrp import quaternion_gl2, regular_perm_group, special_linear_gl2

    assert identify_quotient(regular_perm_group(quaternion_gl2(field(5, 1)))) == "Q8"
    assert identify_quotient(regular_perm_group(special_linear_gl2(field(3, 1)))) == "SL(2,3)"


def test_identify_is_representation_independent():
    s4 = symmetric_group(4)
    v4 = PermGroup(4, [Permutation((1, 0, 3, 2)), Permutation((2, 3, 0, 1))])
    on_cosets = s4.quotient(v4)  # degree 6 model of S3
    assert on_cosets.degree == 6
    assert identify_quotient(on_cosets) == "S3"
    a4_regular = alternating_group(4).quotient(PermGroup(4, ()), index_cap=12)
    assert a4_regular.degree == 12
    assert identify_quotient(a4_regular) == "A4"


def test_analyze_agl15_report():
    rep = analyze(agl_1_5())
    assert rep.degree == 5 and rep.order == 20
    assert rep.derangement_count == 4 and rep.d_order == 5 and rep.index == 4
    assert rep.rank_g == 2 and rep.rank_n == 5
    assert rep.frobenius
    assert rep.quotient_name == "C4"
    assert rep.all_checks_pass()
    record = rep.to_record()
    assert list(record) == [
        "degree",
        "order",
        "derangements",
        "d_order",
        "index",
        "rank_g",
        "rank_n",
        "frobenius",
        "quotient_name",
        "checks",
    ]
    assert record["checks"] == {
        "subgroup_transitive": True,
        "captures_multi_fixers": True,
        "rank_identity": True,
        "orbit_semiregular": True,
        "index_divides": True,
        "stabilizer_generated": True,
        "index_bound": True,
    }


def test_analyze_s4():
    rep = analyze(symmetric_group(4))
    assert rep.index == 1 and rep.quotient_name == "C1"
    assert not rep.frobenius
    assert rep.regime == "primitive"
    assert rep.all_checks_pass()


def test_analyze_affine_scaling_equality_case():
    rep = analyze(affine_scaling_9())
    assert rep.index == 2
    assert rep.quotient_name == "C2"
    assert rep.frobenius
    assert rep.all_checks_pass()


def test_analyze_derangement_abundance():
    for g in (symmetric_group(4), symmetric_group(5), agl_1_5(), dihedral_group(6)):
        rep = analyze(g)
        assert rep.derangement_count * rep.degree >= rep.order


def test_regular_nonabelian_socle_forces_equality():
    # the full group generated by right translations and conjugations of A5,
    # acting on the 60 group elements; the translation copy is a regular
    # nonabelian minimal normal subgroup, so the derangements generate
    # everything
    a5 = alternating_group(5)
    elems = a5.elements()
    idx = {g.images: i for i, g in enumerate(elems)}
    right = [
        Permutation(tuple(idx[(e * g).images] for e in elems)) for g in a5.generators
    ]
    conj = [
        Permutation(tuple(idx[(g.inverse() * e * g).images] for e in elems))
        for g in a5.generators
    ]
    group = PermGroup(60, right + conj)
    assert group.order() == 3600
    rep = analyze(group)
    assert rep.index == 1
    assert rep.rank_g == 5  # orbits of the diagonal = conjugacy classes of A5
    assert rep.all_checks_pass()


def test_derangement_count_matches_set():
    for g in (symmetric_group(5), agl_1_5()):
        assert derangement_count(g) == len(derangement_set(g))
