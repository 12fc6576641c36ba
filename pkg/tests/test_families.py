"""Family constructors: orders, degrees, and their analysis results."""

import pytest

from derangements.derange import analyze, derangement_subgroup, fingerprint, identify_quotient
from derangements.errors import ConstraintViolated, DegreeTooLarge
from derangements.families import (
    FamilyParams,
    affine_group,
    build_family,
    central_product_examples,
    cyclic_multiplier_group,
    dihedral_quotient_family,
    direct_product_action,
    frobenius_complement_example,
    pgammal_28,
    semilinear_example,
    wreath_product_action,
)
from derangements.gf import field
from derangements.matgrp import (
    eigenvalue_one_subgroup,
    general_linear_gl2,
    quotient_perm_group,
    scalar_matrix_group,
)
from derangements.permgrp import PermGroup, cyclic_group, symmetric_group


def test_affine_line_gf3_is_s3():
    g = affine_group(scalar_matrix_group(field(3, 1), 1))
    assert g.degree == 3 and g.order() == 6
    assert g.same_group_as(symmetric_group(3))


def test_affine_scalars_gf3_plane():
    g = affine_group(scalar_matrix_group(field(3, 1), 2))
    assert g.degree == 9 and g.order() == 18
    rep = analyze(g)
    assert rep.index == 2 and rep.quotient_name == "C2" and rep.frobenius
    assert rep.all_checks_pass()


def test_affine_full_gl23():
    g = affine_group(general_linear_gl2(field(3, 1)))
    assert g.degree == 9 and g.order() == 432
    rep = analyze(g)
    assert rep.index == 1
    assert rep.all_checks_pass()


def test_affine_degree_cap():
    with pytest.raises(DegreeTooLarge):
        affine_group(scalar_matrix_group(field(7, 1), 6))


@pytest.mark.parametrize(
    "q,order", [(3, 144), (4, 480), (5, 1200)]
)
def test_semilinear_orders(q, order):
    g = semilinear_example(q)
    assert g.degree == q * q
    assert g.order() == order


def test_semilinear_q3_structure():
    g = semilinear_example(3)
    rep = analyze(g)
    assert rep.index == 2
    assert not rep.frobenius
    assert g.is_primitive()
    assert rep.all_checks_pass()
    # everything outside the derangement subgroup fixes exactly one point
    d = derangement_subgroup(g)
    for el in g.iter_elements():
        if el not in d:
            assert el.fixed_point_count() == 1


def test_pgammal28():
    g = pgammal_28()
    assert g.degree == 28 and g.order() == 1512
    rep = analyze(g)
    assert rep.d_order == 504 and rep.index == 3
    assert rep.quotient_name == "C3"
    assert rep.all_checks_pass()


def test_wreath_products():
    square = wreath_product_action(symmetric_group(2), 2)
    assert square.degree == 4 and square.order() == 8
    assert not square.is_primitive()
    nine = wreath_product_action(cyclic_group(3), 2)
    assert nine.degree == 9 and nine.order() == 18
    big = wreath_product_action(symmetric_group(3), 2)
    assert big.degree == 9 and big.order() == 72
    assert analyze(big).index == 1  # both coordinates carry derangements


def test_direct_product_is_generated_by_derangements():
    prod = direct_product_action(symmetric_group(3), symmetric_group(3))
    assert prod.degree == 9 and prod.order() == 36
    assert derangement_subgroup(prod).order() == 36
    mixed = direct_product_action(cyclic_group(2), symmetric_group(3))
    assert derangement_subgroup(mixed).order() == mixed.order()


def test_frobenius_complement_example_c5_c4():
    h = cyclic_multiplier_group(5, 2)
    assert h.order() == 4
    g = frobenius_complement_example(5, h, 3)
    assert g.degree == 125 and g.order() == 1500
    rep = analyze(g)
    assert rep.d_order == 375 and rep.index == 4
    assert rep.quotient_name == "C4"
    assert not rep.frobenius
    assert rep.all_checks_pass()
    # the coordinate rotation is one of the generators and lies inside
    d = derangement_subgroup(g)
    rotation = g.generators[-1]
    assert rotation in d
    for t in g.generators[:3]:
        assert t in d


def test_frobenius_complement_example_c7_c3():
    g = frobenius_complement_example(7, cyclic_multiplier_group(7, 2), 2)
    assert g.degree == 49 and g.order() == 294
    rep = analyze(g)
    assert rep.index == 3 and rep.quotient_name == "C3"


def test_frobenius_complement_rejections():
    with pytest.raises(ConstraintViolated, match="gcd"):
        frobenius_complement_example(5, cyclic_multiplier_group(5, 2), 2)
    with pytest.raises(ConstraintViolated, match="not prime"):
        frobenius_complement_example(5, cyclic_multiplier_group(5, 2), 4)
    with pytest.raises(ConstraintViolated, match="zero point"):
        # x -> 3x mod 8 fixes both 0 and 4
        frobenius_complement_example(8, cyclic_multiplier_group(8, 3), 3)
    from derangements.permgrp import Permutation

    not_linear = PermGroup(5, [Permutation((0, 2, 1, 4, 3))])
    with pytest.raises(ConstraintViolated, match="automorphism"):
        frobenius_complement_example(5, not_linear, 3)


def test_dihedral_quotient_family_q7():
    h = dihedral_quotient_family(7)
    assert h.spec.order == 7 and h.d == 4
    assert h.order() == 96
    r = eigenvalue_one_subgroup(h)
    assert h.order() // r.order() == 8
    assert identify_quotient(quotient_perm_group(h, r)) == "D8"


def test_dihedral_quotient_family_q11_order():
    h = dihedral_quotient_family(11)
    assert h.order() == 240


def test_dihedral_quotient_family_rejects():
    with pytest.raises(ConstraintViolated):
        dihedral_quotient_family(5)
    with pytest.raises(ConstraintViolated):
        dihedral_quotient_family(3)


def test_central_product_example_orders():
    assert central_product_examples("klein").order() == 48
    assert central_product_examples("a4").order() == 528
    with pytest.raises(ConstraintViolated):
        central_product_examples("dicyclic")


def test_affine_klein_order():
    g = affine_group(central_product_examples("klein"))
    assert g.degree == 625 and g.order() == 30000
    assert g.is_transitive()


def test_build_family_dispatch():
    agl = build_family(FamilyParams("agl1", (5,)))
    assert agl.order() == 20 and agl.degree == 5
    mat = build_family(FamilyParams("central-a4"))
    assert mat.order() == 528
    wreath = build_family(FamilyParams("wreath-sym", (2, 2)))
    assert wreath.order() == 8
    fam = build_family(FamilyParams("dihedral-family", (7,)))
    assert fam.order() == 96
    fc = build_family(FamilyParams("frobenius-complement", (5, 2, 3)))
    assert fc.order() == 1500


def test_build_family_rejects():
    with pytest.raises(ConstraintViolated, match="unknown family"):
        build_family(FamilyParams("mystery", ()))
    with pytest.raises(ConstraintViolated, match="parameter"):
        build_family(FamilyParams("semilinear", (3, 4)))
