"""Property tests for the algebraic laws the whole pipeline leans on."""

from hypothesis import given, settings, strategies as st

from derangements.fileio import dump_perm_group, load_perm_group
from derangements.gf import field
from derangements.permgrp import (
    PermGroup,
    Permutation,
    coset_average_fixed_points,
    count_fixed,
)

FIELDS = [(2, 2), (2, 3), (3, 2), (5, 2), (3, 3)]


def _perm(n):
    return st.permutations(list(range(n))).map(lambda xs: Permutation(tuple(xs)))


def _three_perms():
    return st.integers(min_value=2, max_value=7).flatmap(
        lambda n: st.tuples(_perm(n), _perm(n), _perm(n))
    )


@settings(max_examples=60, deadline=None)
@given(_three_perms())
def test_permutation_algebra(abc):
    a, b, c = abc
    assert ((a * b) * c).images == (a * (b * c)).images
    assert (a * a.inverse()).is_identity()
    assert ((a * b).inverse()).images == (b.inverse() * a.inverse()).images
    # the composition convention: apply left factor first
    for x in range(a.degree):
        assert (a * b)(x) == b(a(x))


@settings(max_examples=60, deadline=None)
@given(_three_perms())
def test_conjugation_preserves_fixed_points(abc):
    a, _, h = abc
    assert count_fixed(a.conjugate_by(h).images) == count_fixed(a.images)


@settings(max_examples=40, deadline=None)
@given(_three_perms())
def test_average_fixed_points_over_own_coset_is_orbit_count(abc):
    a, b, _ = abc
    group = PermGroup(a.degree, [a, b])
    orbit_count = len(group.orbits())
    for rep in (a, b, a * b, b * a, a * a * b):
        assert coset_average_fixed_points(rep, group) == orbit_count


@settings(max_examples=40, deadline=None)
@given(_three_perms())
def test_perm_file_round_trip(abc):
    a, b, _ = abc
    group = PermGroup(a.degree, [a, b])
    back = load_perm_group(dump_perm_group(group))
    assert back.degree == group.degree
    assert [g.images for g in back.generators] == [g.images for g in group.generators]
    assert back.order() == group.order()


@settings(max_examples=30, deadline=None)
@given(
    st.sampled_from(FIELDS),
    st.data(),
)
def test_field_laws(pf, data):
    spec = field(*pf)
    n = spec.order
    a = data.draw(st.integers(min_value=0, max_value=n - 1))
    b = data.draw(st.integers(min_value=0, max_value=n - 1))
    c = data.draw(st.integers(min_value=0, max_value=n - 1))
    assert spec.add_e(spec.add_e(a, b), c) == spec.add_e(a, spec.add_e(b, c))
    assert spec.mul_e(spec.mul_e(a, b), c) == spec.mul_e(a, spec.mul_e(b, c))
    assert spec.add_e(a, b) == spec.add_e(b, a)
    assert spec.mul_e(a, b) == spec.mul_e(b, a)
    assert spec.mul_e(a, spec.add_e(b, c)) == spec.add_e(
        spec.mul_e(a, b), spec.mul_e(a, c)
    )
    assert spec.add_e(a, spec.neg_e(a)) == 0
    if a != 0:
        assert spec.mul_e(a, spec.inv_e(a)) == 1
    # the p-power map is additive in characteristic p
    p = spec.p
    assert spec.pow_e(spec.add_e(a, b), p) == spec.add_e(
        spec.pow_e(a, p), spec.pow_e(b, p)
    )
