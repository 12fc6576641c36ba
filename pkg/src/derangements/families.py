"""Constructors for the group families the analysis is exercised on.

Affine groups built from a matrix group plus translations, semilinear
one-dimensional groups, a degree-28 coset action of PGammaL(2,8), wreath
and direct products, Frobenius-complement quotient examples, and the
central-product matrix families with prescribed quotients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import ConstraintViolated, DegreeTooLarge
from .gf import field, prime_power_decompose
from .matgrp import (
    MatrixGroup,
    QuadraticExtension,
    binary_icosahedral_gl2,
    binary_tetrahedral_gl2,
    central_product,
    dihedral_gl2,
    general_linear_gl2,
    index_to_vector,
    is_irreducible,
    quaternion_gl2,
    scalar_matrix_group,
    vector_to_index,
)
from .permgrp import (
    PermGroup,
    Permutation,
    alternating_group,
    cyclic_group,
    dihedral_group,
    symmetric_group,
)

AFFINE_DEGREE_CAP = 100_000


def affine_group(h: MatrixGroup) -> PermGroup:
    """Translations of the vector space joined with a linear group acting on
    row vectors; a transitive group on the q^d vectors of order q^d * |h|."""
    spec = h.spec
    d = h.d
    degree = spec.order**d
    if degree > AFFINE_DEGREE_CAP:
        raise DegreeTooLarge(f"affine degree {degree} exceeds {AFFINE_DEGREE_CAP}")
    vectors = [index_to_vector(spec, d, i) for i in range(degree)]
    gens = []
    for i in range(d):
        images = []
        for v in vectors:
            w = list(v)
            w[i] = spec.add_e(w[i], 1)
            images.append(vector_to_index(spec, tuple(w)))
        gens.append(Permutation(tuple(images)))
    for mat in h.generators:
        gens.append(
            Permutation(tuple(vector_to_index(spec, mat.apply_row(v)) for v in vectors))
        )
    group = PermGroup(degree, gens)
    assert group.order() == degree * h.order(), "translations and h must intersect trivially"
    return group


@lru_cache(maxsize=32)
def semilinear_example(q: int) -> PermGroup:
    """Maps x -> a*x^e + c on the field of q^2 elements, where a is nonzero
    and e is 1 or q.  Generated by x+1, gx, and x^q; order 2q^2(q^2-1)."""
    p, f = prime_power_decompose(q)
    degree = q * q
    if degree > AFFINE_DEGREE_CAP:
        raise DegreeTooLarge(f"degree {degree} exceeds {AFFINE_DEGREE_CAP}")
    big = field(p, 2 * f)
    assert big.order == degree
    g = big._enc(big.primitive_element().coeffs)
    shift = Permutation(tuple(big.add_e(x, 1) for x in range(degree)))
    scale = Permutation(tuple(big.mul_e(x, g) for x in range(degree)))
    frob = Permutation(tuple(big.pow_e(x, q) for x in range(degree)))
    group = PermGroup(degree, [shift, scale, frob])
    assert group.order() == 2 * degree * (degree - 1)
    return group


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


@lru_cache(maxsize=1)
def pgammal_28() -> PermGroup:
    """PGammaL(2,8), order 1512, acting on the 28 cosets of the normalizer
    of a Sylow 3-subgroup.

    The projective line is the 8 field elements plus a point at infinity;
    the fractional-linear maps x+1, gx, 1/x generate the full PGL(2,8), and
    the field automorphism x -> x^2 extends it.
    """
    gf8 = field(2, 3)
    inf = 8
    g = gf8._enc(gf8.primitive_element().coeffs)

    def onto(fn) -> Permutation:
        return Permutation(tuple(fn(x) for x in range(9)))

    shift = onto(lambda x: gf8.add_e(x, 1) if x != inf else inf)
    scale = onto(lambda x: gf8.mul_e(x, g) if x != inf else inf)
    invert = onto(lambda x: inf if x == 0 else (0 if x == inf else gf8.inv_e(x)))
    frob = onto(lambda x: gf8.pow_e(x, 2) if x != inf else inf)

    pgl = PermGroup(9, [shift, scale, invert])
    assert pgl.order() == 504
    big = PermGroup(9, [shift, scale, invert, frob])
    assert big.order() == 1512

    # grow a maximal 3-subgroup greedily; maximal p-subgroups are Sylow
    three_power = [h for h in big.iter_elements() if h.order() in (3, 9)]
    sylow = PermGroup(9, ())
    changed = True
    while changed:
        changed = False
        for h in three_power:
            if h in sylow:
                continue
            cand = PermGroup(9, list(sylow.generators) + [h])
            if _is_power_of(cand.order(), 3):
                sylow = cand
                changed = True
    assert sylow.order() == 27
    norm = big.normalizer(sylow)
    assert norm.order() == 54
    action = big.coset_action(norm)
    image = action.image
    assert image.degree == 28 and image.order() == 1512
    return image


def wreath_product_action(h: PermGroup, k: int) -> PermGroup:
    """h wreath a k-cycle in product action on degree-m^k tuples."""
    m = h.degree
    degree = m**k
    if degree > AFFINE_DEGREE_CAP:
        raise DegreeTooLarge(f"degree {degree} exceeds {AFFINE_DEGREE_CAP}")
    powers = [m**i for i in range(k)]
    gens = []
    for i in range(k):
        for g in h.generators:
            images = []
            for idx in range(degree):
                x = (idx // powers[i]) % m
                images.append(idx + (g.images[x] - x) * powers[i])
            gens.append(Permutation(tuple(images)))
    if k > 1:
        images = []
        for idx in range(degree):
            coords = [(idx // powers[i]) % m for i in range(k)]
            rotated = coords[-1:] + coords[:-1]
            images.append(sum(c * powers[i] for i, c in enumerate(rotated)))
        gens.append(Permutation(tuple(images)))
    group = PermGroup(degree, gens)
    assert group.order() == h.order() ** k * k
    return group


def direct_product_action(a: PermGroup, b: PermGroup) -> PermGroup:
    """a x b acting coordinatewise on pairs (point of a, point of b)."""
    na, nb = a.degree, b.degree
    gens = []
    for g in a.generators:
        gens.append(
            Permutation(tuple(g.images[x] + na * y for y in range(nb) for x in range(na)))
        )
    for g in b.generators:
        gens.append(
            Permutation(tuple(x + na * g.images[y] for y in range(nb) for x in range(na)))
        )
    prod = PermGroup(na * nb, gens)
    assert prod.order() == a.order() * b.order()
    return prod


def cyclic_multiplier_group(m: int, a: int) -> PermGroup:
    """The subgroup of automorphisms of Z_m generated by x -> a*x."""
    if math.gcd(a % m, m) != 1:
        raise ConstraintViolated(f"{a} is not invertible mod {m}")
    return PermGroup(m, [Permutation(tuple((a * x) % m for x in range(m)))])


def frobenius_complement_example(n_order: int, h: PermGroup, q: int) -> PermGroup:
    """q copies of a regular cyclic group, extended by h acting diagonally
    and by the coordinate rotation: a transitive non-Frobenius group whose
    derangement-generated subgroup has h as its quotient.

    h must consist of automorphisms of Z_{n_order} fixing no nonzero point,
    and q must be a prime not dividing |h|.
    """
    m = n_order
    failures = []
    if m < 2:
        failures.append("kernel order must be at least 2")
    if not _is_prime(q):
        failures.append(f"q = {q} is not prime")
    if h.degree != m:
        failures.append(f"h acts on {h.degree} points, expected {m}")
    elif h.order() > 1:
        if math.gcd(q, h.order()) != 1:
            failures.append(f"gcd(q, |h|) = {math.gcd(q, h.order())} is not 1")
        for g in h.generators:
            diffs = {(g.images[(x + 1) % m] - g.images[x]) % m for x in range(m)}
            if g.images[0] != 0 or len(diffs) != 1:
                failures.append("h must act by automorphisms of the cyclic kernel")
                break
        else:
            for g in h.iter_elements():
                if not g.is_identity() and g.fixed_point_count() != 1:
                    failures.append("h must fix only the zero point")
                    break
    degree = m**q
    if degree > AFFINE_DEGREE_CAP:
        failures.append(f"degree {degree} exceeds {AFFINE_DEGREE_CAP}")
    if failures:
        raise ConstraintViolated("; ".join(failures))

    powers = [m**i for i in range(q)]
    gens = []
    for i in range(q):
        images = []
        for idx in range(degree):
            x = (idx // powers[i]) % m
            images.append(idx + (((x + 1) % m) - x) * powers[i])
        gens.append(Permutation(tuple(images)))
    for g in h.generators:
        images = []
        for idx in range(degree):
            coords = [(idx // powers[i]) % m for i in range(q)]
            images.append(sum(g.images[c] * powers[i] for i, c in enumerate(coords)))
        gens.append(Permutation(tuple(images)))
    images = []
    for idx in range(degree):
        coords = [(idx // powers[i]) % m for i in range(q)]
        rotated = coords[-1:] + coords[:-1]
        images.append(sum(c * powers[i] for i, c in enumerate(rotated)))
    gens.append(Permutation(tuple(images)))
    group = PermGroup(degree, gens)
    assert group.order() == degree * h.order() * q
    return group


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@lru_cache(maxsize=32)
def dihedral_quotient_family(q: int) -> MatrixGroup:
    """A central product in GL(4,q) whose eigenvalue-1 quotient is dihedral
    of order q+1; defined for prime powers q = 3 mod 4, q >= 7."""
    if q % 4 != 3:
        raise ConstraintViolated(f"q = {q} is not 3 mod 4")
    if q < 7:
        raise ConstraintViolated("q must be at least 7")
    p, f = prime_power_decompose(q)
    spec = field(p, f)
    x_part = dihedral_gl2(spec, q - 1)
    ext = QuadraticExtension(spec)
    rot = ext.mult_rep(ext.element_of_order(q + 1))
    refl = ext.mult_rep(ext.element_of_order(2 * (q + 1))) * ext.frobenius_matrix()
    y_part = MatrixGroup(spec, 2, [rot, refl])
    assert y_part.order() == 2 * (q + 1)
    assert y_part.contains_minus_identity()
    h = central_product(x_part, y_part)
    assert h.order() == 2 * (q * q - 1)
    assert is_irreducible(h)
    return h


@lru_cache(maxsize=8)
def central_product_examples(name: str) -> MatrixGroup:
    """Three irreducible central products in GL(4,q) with prescribed
    eigenvalue-1 quotients: klein (order 48 over GF(5)), a4 (order 528 over
    GF(23)), a5 (order 6960 over GF(59))."""
    if name == "klein":
        spec = field(5, 1)
        h = central_product(dihedral_gl2(spec, 6), quaternion_gl2(spec))
        assert h.order() == 48
    elif name == "a4":
        spec = field(23, 1)
        h = central_product(dihedral_gl2(spec, 22), binary_tetrahedral_gl2(spec))
        assert h.order() == 528
    elif name == "a5":
        spec = field(59, 1)
        h = central_product(dihedral_gl2(spec, 58), binary_icosahedral_gl2(spec))
        assert h.order() == 6960
    else:
        raise ConstraintViolated(f"unknown central product example {name!r}")
    assert is_irreducible(h)
    return h


# ---------------------------------------------------------------------------
# named construction registry (CLI entry point)


@dataclass(frozen=True)
class FamilyParams:
    """A family name plus its integer parameters, as given on a command
    line; validation happens inside the family constructors."""

    name: str
    values: tuple[int, ...] = ()


FAMILY_ARITY = {
    "symmetric": 1,
    "alternating": 1,
    "cyclic": 1,
    "dihedral": 1,
    "agl1": 1,
    "affine-scalars": 2,
    "affine-gl2": 1,
    "affine-klein": 0,
    "semilinear": 1,
    "pgammal28": 0,
    "wreath-sym": 2,
    "wreath-cyclic": 2,
    "frobenius-complement": 3,
    "central-klein": 0,
    "central-a4": 0,
    "central-a5": 0,
    "dihedral-family": 1,
}


def build_family(params: FamilyParams):
    """Construct a family member by name; returns a PermGroup or a
    MatrixGroup depending on the family."""
    name, vals = params.name, params.values
    if name not in FAMILY_ARITY:
        known = ", ".join(sorted(FAMILY_ARITY))
        raise ConstraintViolated(f"unknown family {name!r}; known: {known}")
    if len(vals) != FAMILY_ARITY[name]:
        raise ConstraintViolated(
            f"family {name!r} takes {FAMILY_ARITY[name]} parameter(s), got {len(vals)}"
        )
    if name == "symmetric":
        return symmetric_group(vals[0])
    if name == "alternating":
        return alternating_group(vals[0])
    if name == "cyclic":
        return cyclic_group(vals[0])
    if name == "dihedral":
        return dihedral_group(vals[0])
    if name == "agl1":
        (q,) = vals
        p, f = prime_power_decompose(q)
        return affine_group(scalar_matrix_group(field(p, f), 1))
    if name == "affine-scalars":
        q, d = vals
        p, f = prime_power_decompose(q)
        return affine_group(scalar_matrix_group(field(p, f), d))
    if name == "affine-gl2":
        (q,) = vals
        p, f = prime_power_decompose(q)
        return affine_group(general_linear_gl2(field(p, f)))
    if name == "affine-klein":
        return affine_group(central_product_examples("klein"))
    if name == "semilinear":
        (q,) = vals
        return semilinear_example(q)
    if name == "pgammal28":
        return pgammal_28()
    if name == "wreath-sym":
        n, k = vals
        return wreath_product_action(symmetric_group(n), k)
    if name == "wreath-cyclic":
        n, k = vals
        return wreath_product_action(cyclic_group(n), k)
    if name == "frobenius-complement":
        m, a, q = vals
        return frobenius_complement_example(m, cyclic_multiplier_group(m, a), q)
    if name == "central-klein":
        return central_product_examples("klein")
    if name == "central-a4":
        return central_product_examples("a4")
    if name == "central-a5":
        return central_product_examples("a5")
    if name == "dihedral-family":
        (q,) = vals
        return dihedral_quotient_family(q)
    raise AssertionError("unreachable")
