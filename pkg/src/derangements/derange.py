"""Analysis of the subgroup generated by fixed-point-free elements.

A transitive permutation group always contains elements that move every
point, and the subgroup they generate turns out to be normal, transitive,
and of index dividing n - 1; every element outside it fixes exactly one
point.  This module computes that subgroup with an exhaustive completeness
certificate, measures its index, runs the structural checks that surround
it (rank identity, semiregular quotient actions, index bounds), and
identifies the quotient group by fingerprint against a small catalog.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, ConstraintViolated, NotSubgroup, NotTransitive
from .gf import field
from .matgrp import quaternion_gl2, regular_perm_group, special_linear_gl2
from .permgrp import (
    ENUMERATION_CAP,
    PermGroup,
    Permutation,
    alternating_group,
    count_fixed,
    dihedral_group,
)

FINGERPRINT_CAP = 10_000
PRODUCT_WORK_CAP = 4_000_000
SPLIT_SEARCH_CAP = 100_000


# ---------------------------------------------------------------------------
# fingerprints and quotient identification


@dataclass(frozen=True)
class GroupFingerprint:
    """Cheap isomorphism invariants used to recognize small groups.

    element_orders is a sorted tuple of (order, count) pairs; the counts sum
    to the group order.  abelian_invariants holds the elementary divisors
    when the group is abelian, and is empty otherwise.
    """

    order: int
    element_orders: tuple[tuple[int, int], ...]
    center_order: int
    derived_order: int
    abelian_invariants: tuple[int, ...]

    def __post_init__(self):
        assert sum(c for _, c in self.element_orders) == self.order


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _abelian_invariants(order: int, hist: Counter) -> tuple[int, ...]:
    """Elementary divisors of an abelian group from its element-order counts.

    For each prime p the counts of elements of order dividing p^k determine
    the partition of the p-part; the divisors are read off its conjugate.
    """
    divisors: list[int] = []
    for p in sorted(set(_prime_factors(order))):
        v_prev = 0
        ms: list[int] = []
        k = 1
        while True:
            a_k = sum(c for o, c in hist.items() if p**k % o == 0)
            v = 0
            t = a_k
            while t % p == 0:
                t //= p
                v += 1
            assert t == 1, "count of p-power-order elements must be a p-power"
            if v == v_prev:
                break
            ms.append(v - v_prev)
            v_prev = v
            k += 1
        for k0, m in enumerate(ms, start=1):
            nxt = ms[k0] if k0 < len(ms) else 0
            divisors.extend([p**k0] * (m - nxt))
    return tuple(sorted(divisors))


def fingerprint(group: PermGroup, cap: int = FINGERPRINT_CAP) -> GroupFingerprint:
    order = group.order()
    if order > cap:
        raise CapExceeded(f"fingerprint needs order <= {cap}, got {order}")
    elems = group.elements()
    hist = Counter(g.order() for g in elems)
    gens = list(group.generators) or [group.identity()]
    center = sum(1 for g in elems if all(g * h == h * g for h in gens))
    commutators = [a.inverse() * b.inverse() * a * b for a in gens for b in gens]
    derived = group.normal_closure(commutators).order()
    invariants = _abelian_invariants(order, hist) if center == order else ()
    return GroupFingerprint(order, tuple(sorted(hist.items())), center, derived, invariants)


@lru_cache(maxsize=64)
def _dihedral_fingerprint(m: int) -> GroupFingerprint:
    return fingerprint(dihedral_group(m))


@lru_cache(maxsize=1)
def _named_catalog() -> dict:
    gf3 = field(3, 1)
    gf5 = field(5, 1)
    catalog = {
        "Q8": fingerprint(regular_perm_group(quaternion_gl2(gf5))),
        "A4": fingerprint(alternating_group(4)),
        "A5": fingerprint(alternating_group(5)),
        "SL(2,3)": fingerprint(regular_perm_group(special_linear_gl2(gf3))),
        "SL(2,5)": fingerprint(regular_perm_group(special_linear_gl2(gf5))),
    }
    # every named entry must be distinguishable from the dihedral group of
    # the same order, and from each other
    fps = list(catalog.values())
    fps.extend(_dihedral_fingerprint(o // 2) for o in (8, 12, 24, 60, 120))
    assert len(set(fps)) == len(fps), "catalog fingerprints must be pairwise distinct"
    return catalog


def identify_fingerprint(fp: GroupFingerprint) -> str:
    """Match against cyclic groups, C2xC2, S3, dihedral groups, and the
    named catalog; anything else is reported unrecognized."""
    order = fp.order
    if order == 1:
        return "C1"
    hist = dict(fp.element_orders)
    if hist.get(order):
        return f"C{order}"
    if fp.center_order == order:
        return "C2xC2" if order == 4 else "unrecognized"
    if order == 6:
        return "S3"
    for label, known in _named_catalog().items():
        if fp == known:
            return label
    if order % 2 == 0 and order >= 8 and fp == _dihedral_fingerprint(order // 2):
        return f"D{order}"
    return "unrecognized"


def identify_quotient(group: PermGroup) -> str:
    return identify_fingerprint(fingerprint(group))


# ---------------------------------------------------------------------------
# the derangement-generated subgroup


@dataclass
class _Scan:
    derangement_count: int
    subgroup: PermGroup
    multi_fixers: list[Permutation]


def _scan_derangements(group: PermGroup, cap: int = ENUMERATION_CAP) -> _Scan:
    """One streaming pass over the group.

    Derangements are folded into an incrementally grown subgroup (most are
    redundant, so rebuilds are rare); non-identity elements fixing two or
    more points are stashed and certified to lie inside the subgroup, which
    together with the construction shows every element outside it fixes
    exactly one point.
    """
    if not group.is_transitive():
        raise NotTransitive("derangement subgroup needs a transitive action")
    order = group.order()
    if order > cap:
        raise CapExceeded(f"group order {order} exceeds cap {cap}")
    degree = group.degree
    gens: list[Permutation] = []
    sub = PermGroup(degree, ())
    count = 0
    multi: list[Permutation] = []
    for raw in group._iter_element_tuples():
        fixed = count_fixed(raw)
        if fixed == 0:
            count += 1
            p = Permutation._raw(raw)
            if p not in sub:
                gens.append(p)
                sub = PermGroup(degree, gens)
        elif fixed >= 2 and fixed != degree:
            multi.append(Permutation._raw(raw))
    for p in multi:
        assert p in sub, "element with several fixed points escaped the subgroup"
    closure = group.normal_closure(gens)
    assert closure.same_group_as(sub), "derangements must generate a normal subgroup"
    return _Scan(count, sub, multi)


def derangement_set(group: PermGroup, cap: int = ENUMERATION_CAP) -> list[Permutation]:
    """All fixed-point-free elements, in enumeration order."""
    if group.order() > cap:
        raise CapExceeded(f"group order {group.order()} exceeds cap {cap}")
    return [
        Permutation._raw(t)
        for t in group._iter_element_tuples()
        if count_fixed(t) == 0
    ]


def derangement_count(group: PermGroup, cap: int = ENUMERATION_CAP) -> int:
    if group.order() > cap:
        raise CapExceeded(f"group order {group.order()} exceeds cap {cap}")
    return sum(1 for t in group._iter_element_tuples() if count_fixed(t) == 0)


def derangement_subgroup(group: PermGroup, cap: int = ENUMERATION_CAP) -> PermGroup:
    """The subgroup generated by all fixed-point-free elements."""
    return _scan_derangements(group, cap).subgroup


def _derangement_generated(group: PermGroup) -> tuple[int, PermGroup]:
    # like _scan_derangements but without the transitivity requirement;
    # used for stabilizer actions, which are rarely transitive
    gens: list[Permutation] = []
    sub = PermGroup(group.degree, ())
    count = 0
    for raw in group._iter_element_tuples():
        if count_fixed(raw) == 0:
            count += 1
            p = Permutation._raw(raw)
            if p not in sub:
                gens.append(p)
                sub = PermGroup(group.degree, gens)
    return count, sub


# ---------------------------------------------------------------------------
# structural checks


@dataclass(frozen=True)
class SubgroupChecks:
    """The four core properties of the derangement-generated subgroup."""

    transitive: bool
    captures_multi_fixers: bool
    rank_identity: bool
    orbit_semiregular: bool
    index: int
    rank_g: int
    rank_n: int | None

    def all_pass(self) -> bool:
        return (
            self.transitive
            and self.captures_multi_fixers
            and self.rank_identity
            and self.orbit_semiregular
        )


def _point_orbit_labels(group: PermGroup) -> list[int]:
    """Label each point with the smallest point of its orbit."""
    degree = group.degree
    gens = [g.images for g in group.generators]
    labels = [-1] * degree
    for start in range(degree):
        if labels[start] >= 0:
            continue
        labels[start] = start
        queue = [start]
        while queue:
            x = queue.pop()
            for g in gens:
                y = g[x]
                if labels[y] < 0:
                    labels[y] = start
                    queue.append(y)
    return labels


def _orbit_semiregular(group: PermGroup, sub: PermGroup) -> bool:
    """Stabilizer cosets outside the subgroup must move every orbit.

    With G_0 the stabilizer of point 0 and N_0 = (sub)_0, each element of
    G_0 outside N_0 has to displace every N_0-orbit other than {0}; this is
    the semiregularity of G_0/N_0 on those orbits.
    """
    g0 = group.stabilizer(0)
    n0 = sub.stabilizer(0)
    labels = _point_orbit_labels(n0)
    targets = sorted({lbl for lbl in labels if lbl != 0})
    for g in g0.iter_elements():
        if g in n0:
            continue
        im = g.images
        for x in targets:
            if labels[im[x]] == labels[x]:
                return False
    return True


def _core_checks(group: PermGroup, sub: PermGroup, captures: bool) -> SubgroupChecks:
    transitive = sub.is_transitive()
    index = group.order() // sub.order()
    rank_g = group.rank()
    rank_n = sub.rank() if transitive else None
    identity_ok = transitive and (rank_n - 1) == (rank_g - 1) * index
    semi = _orbit_semiregular(group, sub)
    return SubgroupChecks(transitive, captures, identity_ok, semi, index, rank_g, rank_n)


def subgroup_checks(
    group: PermGroup, candidate: PermGroup | None = None, cap: int = ENUMERATION_CAP
) -> SubgroupChecks:
    """Run the four core checks, either on the computed subgroup or on a
    caller-supplied candidate (useful for validating external claims)."""
    if candidate is None:
        scan = _scan_derangements(group, cap)
        captures = all(p in scan.subgroup for p in scan.multi_fixers)
        return _core_checks(group, scan.subgroup, captures)
    if not candidate.is_subgroup_of(group):
        raise NotSubgroup("candidate is not a subgroup")
    captures = True
    for raw in group._iter_element_tuples():
        if count_fixed(raw) != 1 and Permutation._raw(raw) not in candidate:
            captures = False
            break
    return _core_checks(group, candidate, captures)


@dataclass(frozen=True)
class IndexConsequences:
    index: int
    index_divides: bool
    stabilizer_half: bool | None
    stabilizer_generated: bool | None

    def stabilizer_ok(self) -> bool:
        if self.index == 1:
            return True
        return bool(self.stabilizer_half and self.stabilizer_generated)


def _stabilizer_action(group: PermGroup) -> PermGroup:
    """The stabilizer of point 0 acting on the remaining points, relabeled
    to 0..n-2.  Faithful, since a permutation fixing everything else is
    the identity."""
    st = group.stabilizer(0)
    degree = group.degree
    gens = [
        Permutation(tuple(g.images[x + 1] - 1 for x in range(degree - 1)))
        for g in st.generators
    ]
    return PermGroup(degree - 1, gens)


def index_consequences(
    group: PermGroup, candidate: PermGroup | None = None, cap: int = ENUMERATION_CAP
) -> IndexConsequences:
    """Divisibility of the index, plus the two stabilizer facts that hold
    whenever the index exceeds 1: at least half of a point stabilizer fixes
    only that point, and those elements generate the whole stabilizer."""
    sub = candidate if candidate is not None else derangement_subgroup(group, cap)
    index = group.order() // sub.order()
    divides = (group.degree - 1) % index == 0
    if index == 1:
        return IndexConsequences(1, divides, None, None)
    action = _stabilizer_action(group)
    count, generated = _derangement_generated(action)
    half = 2 * count >= action.order()
    whole = generated.order() == action.order()
    return IndexConsequences(index, divides, half, whole)


def is_frobenius(group: PermGroup, cap: int = ENUMERATION_CAP):
    """(flag, kernel): flag is true when no non-identity element fixes two
    or more points.  Regular actions are excluded by definition (their point
    stabilizers are trivial).  When true, the derangements together with the
    identity are verified to form a subgroup: the kernel."""
    if not group.is_transitive():
        raise NotTransitive("Frobenius test needs a transitive action")
    if group.order() == group.degree:
        return False, None
    scan = _scan_derangements(group, cap)
    if scan.multi_fixers:
        return False, None
    kernel = scan.subgroup
    assert kernel.order() == scan.derangement_count + 1, (
        "kernel must consist of the derangements and the identity"
    )
    return True, kernel


@dataclass(frozen=True)
class BoundCheck:
    regime: str  # "frobenius" | "primitive" | "imprimitive"
    index: int
    degree: int
    primitive: bool
    sqrt_bound_holds: bool  # (index + 1)^2 <= degree, i.e. index <= sqrt(n) - 1
    divisor_holds: bool  # index divides degree - 1
    ok: bool


def bound_check(
    group: PermGroup,
    sub: PermGroup | None = None,
    frobenius: bool | None = None,
) -> BoundCheck:
    """Which index bound applies and whether it holds.

    Imprimitive groups must satisfy (index+1)^2 <= degree, checked in exact
    integer arithmetic.  Frobenius and primitive groups only promise that
    the index divides degree - 1; whether the square-root bound also holds
    is still reported for them, but not required."""
    if sub is None:
        sub = derangement_subgroup(group)
    if frobenius is None:
        frobenius, _ = is_frobenius(group)
    index = group.order() // sub.order()
    n = group.degree
    sqrt_ok = (index + 1) ** 2 <= n
    divisor_ok = (n - 1) % index == 0
    primitive = group.is_primitive()
    if frobenius:
        regime = "frobenius"
    elif primitive:
        regime = "primitive"
    else:
        regime = "imprimitive"
    ok = sqrt_ok if regime == "imprimitive" else divisor_ok
    return BoundCheck(regime, index, n, primitive, sqrt_ok, divisor_ok, ok)


def two_derangement_coverage(
    group: PermGroup, cap: int = ENUMERATION_CAP, work_cap: int = PRODUCT_WORK_CAP
):
    """Can every element of the derangement-generated subgroup be written
    as a product of two derangements?  Returns (covered, witnesses) where
    the witnesses are the elements missed by the product set."""
    dset = [p.images for p in derangement_set(group, cap)]
    if not dset:
        raise ConstraintViolated("group has no derangements to multiply")
    if len(dset) ** 2 > work_cap:
        raise CapExceeded(f"{len(dset)}^2 products exceed the work cap")
    products = set()
    for a in dset:
        for b in dset:
            products.add(tuple(map(b.__getitem__, a)))
    sub = derangement_subgroup(group, cap)
    witnesses = [g for g in sub.iter_elements() if g.images not in products]
    return len(witnesses) == 0, witnesses


def splits_over(
    group: PermGroup, sub: PermGroup, order_cap: int = SPLIT_SEARCH_CAP
) -> bool | None:
    """Exhaustive search for a complement to sub: a subgroup of order
    |G|/|sub| meeting sub in the identity.  None means the group exceeded
    the cap and was not checked."""
    if group.order() > order_cap:
        return None
    if not sub.is_subgroup_of(group):
        raise NotSubgroup("complement search needs a subgroup")
    index = group.order() // sub.order()
    if index == 1:
        return True
    ident = group.identity().images
    # an element of a complement has the same order as its coset, so all of
    # its non-identity powers stay outside sub
    cands: list[tuple[int, ...]] = []
    for g in group.iter_elements():
        if g.is_identity() or index % g.order() != 0 or g in sub:
            continue
        if all((g**k) not in sub for k in range(2, g.order())):
            cands.append(g.images)

    def grow(base: frozenset, extra: tuple[int, ...]):
        elems = set(base)
        elems.add(extra)
        changed = True
        while changed:
            changed = False
            for a in list(elems):
                for b in list(elems):
                    c = tuple(map(b.__getitem__, a))
                    if c in elems:
                        continue
                    if len(elems) >= index:
                        return None
                    if c != ident and Permutation._raw(c) in sub:
                        return None
                    elems.add(c)
                    changed = True
        return frozenset(elems)

    def extend(current: frozenset, start: int) -> bool:
        if len(current) == index:
            return True
        for k in range(start, len(cands)):
            t = cands[k]
            if t in current:
                continue
            grown = grow(current, t)
            if grown is not None and extend(grown, k + 1):
                return True
        return False

    return extend(frozenset({ident}), 0)


# ---------------------------------------------------------------------------
# the full report

CHECK_KEYS = (
    "subgroup_transitive",
    "captures_multi_fixers",
    "rank_identity",
    "orbit_semiregular",
    "index_divides",
    "stabilizer_generated",
    "index_bound",
)


@dataclass(frozen=True)
class AnalysisReport:
    degree: int
    order: int
    derangement_count: int
    d_order: int
    index: int
    rank_g: int
    rank_n: int | None
    frobenius: bool
    quotient: GroupFingerprint
    quotient_name: str
    regime: str
    checks: dict

    def __post_init__(self):
        assert self.index * self.d_order == self.order

    def all_checks_pass(self) -> bool:
        return all(self.checks.values())

    def to_record(self) -> dict:
        return {
            "degree": self.degree,
            "order": self.order,
            "derangements": self.derangement_count,
            "d_order": self.d_order,
            "index": self.index,
            "rank_g": self.rank_g,
            "rank_n": self.rank_n,
            "frobenius": self.frobenius,
            "quotient_name": self.quotient_name,
            "checks": dict(self.checks),
        }


def analyze(group: PermGroup, cap: int = ENUMERATION_CAP) -> AnalysisReport:
    """Full pipeline: compute the derangement-generated subgroup, run every
    check, and identify the quotient."""
    scan = _scan_derangements(group, cap)
    sub = scan.subgroup
    captures = all(p in sub for p in scan.multi_fixers)
    core = _core_checks(group, sub, captures)
    cons = index_consequences(group, sub)
    frob = group.order() > group.degree and not scan.multi_fixers
    if frob:
        assert sub.order() == scan.derangement_count + 1
    bound = bound_check(group, sub, frobenius=frob)
    quotient = group.quotient(sub)
    fp = fingerprint(quotient)
    checks = {
        "subgroup_transitive": core.transitive,
        "captures_multi_fixers": core.captures_multi_fixers,
        "rank_identity": core.rank_identity,
        "orbit_semiregular": core.orbit_semiregular,
        "index_divides": cons.index_divides,
        "stabilizer_generated": cons.stabilizer_ok(),
        "index_bound": bound.ok,
    }
    return AnalysisReport(
        degree=group.degree,
        order=group.order(),
        derangement_count=scan.derangement_count,
        d_order=sub.order(),
        index=core.index,
        rank_g=core.rank_g,
        rank_n=core.rank_n,
        frobenius=frob,
        quotient=fp,
        quotient_name=identify_fingerprint(fp),
        regime=bound.regime,
        checks=checks,
    )
