"""Permutation groups on {0, ..., n-1} with a deterministic stabilizer chain.

Composition is left-to-right: (g * h)(x) = h(g(x)).  The chain is built by
a deterministic Schreier-Sims procedure whose base points are always the
smallest point moved by the current stabilizer, so bases are strictly
increasing and each level group fixes every point below its base point.
That property is what makes the greedy lexicographic coset representative
in ``coset_min_rep`` correct.  Groups are immutable after construction;
the chain is built lazily on first structural query and is safe to share
across threads afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Iterator, Sequence

from .errors import (
    CapExceeded,
    DegreeMismatch,
    IndexTooLarge,
    NotNormal,
    NotSubgroup,
    NotTransitive,
)

ENUMERATION_CAP = 2_000_000
_ELEMENT_CACHE_CELLS = 4_000_000


def _compose(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Image tuple of 'apply a, then b'."""
    return tuple(map(b.__getitem__, a))


def _invert(a: tuple[int, ...]) -> tuple[int, ...]:
    inv = [0] * len(a)
    for i, x in enumerate(a):
        inv[x] = i
    return tuple(inv)


def count_fixed(images: Sequence[int]) -> int:
    return sum(1 for i, x in enumerate(images) if i == x)


class Permutation:
    """Immutable permutation stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images

    @classmethod
    def _raw(cls, images: tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        return p

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for i, a in enumerate(cyc):
                images[a] = cyc[(i + 1) % len(cyc)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if len(self.images) != len(other.images):
            raise DegreeMismatch("degrees differ")
        return Permutation._raw(_compose(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation._raw(_invert(self.images))

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = Permutation.identity(len(self.images))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate_by(self, h: "Permutation") -> "Permutation":
        """h^-1 * self * h."""
        return Permutation._raw(
            _compose(_compose(_invert(h.images), self.images), h.images)
        )

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def fixed_point_count(self) -> int:
        return count_fixed(self.images)

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                seen[start] = True
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return lcm(*(len(c) for c in self.cycles())) if self.cycles() else 1

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)


class _Level:
    __slots__ = ("base", "gens", "transversal", "orbit")

    def __init__(self, base: int, degree: int):
        self.base = base
        self.gens: list[tuple[int, ...]] = []
        self.transversal: dict[int, tuple[int, ...]] = {base: tuple(range(degree))}
        self.orbit: list[int] = [base]


def _smallest_moved(images: tuple[int, ...]) -> int:
    for i, x in enumerate(images):
        if i != x:
            return i
    raise ValueError("identity moves nothing")


def _recompute_orbit(levels: list[_Level], i: int, degree: int) -> None:
    lvl = levels[i]
    gens = [g for l in levels[i:] for g in l.gens]
    lvl.transversal = {lvl.base: tuple(range(degree))}
    lvl.orbit = [lvl.base]
    queue = 0
    while queue < len(lvl.orbit):
        pt = lvl.orbit[queue]
        queue += 1
        u = lvl.transversal[pt]
        for g in gens:
            img = g[pt]
            if img not in lvl.transversal:
                lvl.transversal[img] = _compose(u, g)
                lvl.orbit.append(img)


def _sift(levels: list[_Level], start: int, images: tuple[int, ...]):
    """Reduce images through levels[start:]; returns the residue tuple."""
    for lvl in levels[start:]:
        pt = images[lvl.base]
        if pt == lvl.base:
            continue
        u = lvl.transversal.get(pt)
        if u is None:
            return images
        images = _compose(images, _invert(u))
    return images


def _place(levels: list[_Level], start: int, images: tuple[int, ...], degree: int) -> int:
    """Insert a new strong generator at the first level >= start whose base it
    moves (appending a level when it fixes every existing base)."""
    j = start
    while j < len(levels) and images[levels[j].base] == levels[j].base:
        j += 1
    if j == len(levels):
        levels.append(_Level(_smallest_moved(images), degree))
    levels[j].gens.append(images)
    return j


def _identity_tuple(images: tuple[int, ...]) -> bool:
    return all(i == x for i, x in enumerate(images))


def _build_chain(degree: int, generators, base_seed: tuple[int, ...]) -> list[_Level]:
    levels = [_Level(b, degree) for b in base_seed]
    dirty = len(levels) - 1
    for g in generators:
        images = g.images
        if _identity_tuple(images):
            continue
        j = _place(levels, 0, images, degree)
        dirty = max(dirty, j)
    # verify levels deepest-first; a new strong generator at level j restarts
    # verification there (classic deterministic Schreier-Sims)
    i = dirty
    while i >= 0:
        _recompute_orbit(levels, i, degree)
        lvl = levels[i]
        gens_here = [g for l in levels[i:] for g in l.gens]
        clean = True
        for pt in lvl.orbit:
            u = lvl.transversal[pt]
            for g in gens_here:
                target = lvl.transversal[g[pt]]
                schreier = _compose(_compose(u, g), _invert(target))
                if _identity_tuple(schreier):
                    continue
                residue = _sift(levels, i + 1, schreier)
                if not _identity_tuple(residue):
                    i = _place(levels, i + 1, residue, degree)
                    clean = False
                    break
            if not clean:
                break
        if clean:
            i -= 1
    return levels


class PermGroup:
    """Group generated by a list of permutations of a common degree."""

    def __init__(self, degree: int, generators: Iterable = ()):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        self.degree = degree
        gens: list[Permutation] = []
        seen = set()
        for g in generators:
            if not isinstance(g, Permutation):
                g = Permutation(g)
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator degree {g.degree} in group of degree {degree}"
                )
            if g.is_identity() or g.images in seen:
                continue
            seen.add(g.images)
            gens.append(g)
        self.generators = tuple(gens)
        self._levels: list[_Level] | None = None
        self._order: int | None = None
        self._orbits: list[list[int]] | None = None
        self._stabilizers: dict[int, PermGroup] = {}
        self._elements: list[Permutation] | None = None

    # chain and membership -------------------------------------------------

    def _chain(self) -> list[_Level]:
        if self._levels is None:
            self._levels = _build_chain(self.degree, self.generators, ())
        return self._levels

    def base(self) -> tuple[int, ...]:
        return tuple(lvl.base for lvl in self._chain() if len(lvl.orbit) > 1)

    def order(self) -> int:
        if self._order is None:
            n = 1
            for lvl in self._chain():
                n *= len(lvl.orbit)
            self._order = n
        return self._order

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def sift(self, g: Permutation) -> Permutation:
        if g.degree != self.degree:
            raise DegreeMismatch("degrees differ")
        return Permutation._raw(_sift(self._chain(), 0, g.images))

    def __contains__(self, g: Permutation) -> bool:
        return self.sift(g).is_identity()

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(
            g in other for g in self.generators
        )

    def same_group_as(self, other: "PermGroup") -> bool:
        return (
            self.degree == other.degree
            and self.order() == other.order()
            and self.is_subgroup_of(other)
        )

    # orbit structure -------------------------------------------------------

    def orbits(self) -> list[list[int]]:
        if self._orbits is None:
            seen = [False] * self.degree
            out = []
            for start in range(self.degree):
                if seen[start]:
                    continue
                orb = [start]
                seen[start] = True
                q = 0
                while q < len(orb):
                    pt = orb[q]
                    q += 1
                    for g in self.generators:
                        img = g.images[pt]
                        if not seen[img]:
                            seen[img] = True
                            orb.append(img)
                out.append(sorted(orb))
            self._orbits = out
        return self._orbits

    def orbit_of(self, point: int) -> list[int]:
        for orb in self.orbits():
            if point in orb:
                return orb
        raise ValueError(f"point {point} out of range")

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def stabilizer(self, point: int) -> "PermGroup":
        """Point stabilizer, from a chain rebuilt with this point first."""
        if point not in self._stabilizers:
            chain = _build_chain(self.degree, self.generators, (point,))
            gens = [Permutation._raw(g) for lvl in chain[1:] for g in lvl.gens]
            stab = PermGroup(self.degree, gens)
            assert stab.order() * len(chain[0].orbit) == self.order()
            self._stabilizers[point] = stab
        return self._stabilizers[point]

    def rank(self) -> int:
        """Number of suborbits (orbits of a point stabilizer).

        Cross-checked against the exact character formula
        sum(fix(g)^2) == rank * |G| whenever the element scan stays under
        10^7 point images.
        """
        if not self.is_transitive():
            raise NotTransitive("rank needs a transitive group")
        r = len(self.stabilizer(0).orbits())
        if self.order() * self.degree <= 10_000_000:
            total = sum(count_fixed(el) ** 2 for el in self._iter_element_tuples())
            assert total == r * self.order(), "suborbit count disagrees with character sum"
        return r

    # block systems ----------------------------------------------------------

    def minimal_block_assignment(self, beta: int) -> tuple[int, ...] | None:
        """Finest G-congruence merging 0 and beta; None when it is all of the
        domain.  Union-find refinement, processing each merge against every
        generator once."""
        parent = list(range(self.degree))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a: int, b: int) -> bool:
            ra, rb = find(a), find(b)
            if ra == rb:
                return False
            if ra > rb:
                ra, rb = rb, ra
            parent[rb] = ra
            return True

        union(0, beta)
        pending = [(0, beta)]
        while pending:
            a, b = pending.pop()
            for g in self.generators:
                ga, gb = g.images[a], g.images[b]
                if find(ga) != find(gb):
                    ra, rb = find(ga), find(gb)
                    union(ra, rb)
                    pending.append((ra, rb))
        roots = [find(x) for x in range(self.degree)]
        if all(r == roots[0] for r in roots):
            return None
        relabel: dict[int, int] = {}
        out = []
        for r in roots:
            if r not in relabel:
                relabel[r] = len(relabel)
            out.append(relabel[r])
        return tuple(out)

    def block_systems(self) -> list["BlockSystem"]:
        """All distinct minimal nontrivial block systems (one candidate per
        seed pair {0, beta})."""
        if not self.is_transitive():
            raise NotTransitive("block systems need a transitive group")
        seen = set()
        out = []
        for beta in range(1, self.degree):
            assignment = self.minimal_block_assignment(beta)
            if assignment is None or assignment in seen:
                continue
            seen.add(assignment)
            out.append(BlockSystem.from_assignment(assignment))
        return out

    def is_primitive(self) -> bool:
        return self.is_transitive() and not self.block_systems()

    # element enumeration ----------------------------------------------------

    def _iter_element_tuples(self) -> Iterator[tuple[int, ...]]:
        levels = [lvl for lvl in self._chain() if len(lvl.orbit) > 1]
        identity = tuple(range(self.degree))
        if not levels:
            yield identity
            return
        sorted_orbits = [sorted(lvl.orbit) for lvl in levels]

        def rec(i: int, prefix: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
            if i == len(levels):
                yield prefix
                return
            transversal = levels[i].transversal
            for pt in sorted_orbits[i]:
                u = transversal[pt]
                yield from rec(i + 1, _compose(u, prefix))

        yield from rec(0, identity)

    def iter_elements(self) -> Iterator[Permutation]:
        """Stream every element exactly once, in a deterministic
        transversal-product order starting with the identity."""
        for images in self._iter_element_tuples():
            yield Permutation._raw(images)

    def elements(self, cap: int = ENUMERATION_CAP) -> list[Permutation]:
        if self.order() > cap:
            raise CapExceeded(f"group order {self.order()} exceeds cap {cap}")
        if self._elements is None:
            out = list(self.iter_elements())
            if self.order() * self.degree > _ELEMENT_CACHE_CELLS:
                return out
            self._elements = out
        return self._elements

    # coset machinery ----------------------------------------------------------

    def coset_min_rep(self, g: Permutation) -> Permutation:
        """Lexicographically least element of the right coset (self)*g.

        Greedy descent: at each chain level the undecided image positions
        start at the base point, and the candidates for it are exactly the
        images of the level orbit, so picking the minimum and recursing is
        optimal.  Relies on the strictly increasing base of the default
        chain.
        """
        if g.degree != self.degree:
            raise DegreeMismatch("degrees differ")
        w = g.images
        for lvl in self._chain():
            if len(lvl.orbit) == 1:
                continue
            best = min(lvl.orbit, key=w.__getitem__)
            if best != lvl.base:
                w = _compose(lvl.transversal[best], w)
        return Permutation._raw(w)

    def coset_action(self, subgroup: "PermGroup", index_cap: int = 100_000) -> "CosetAction":
        """Action of this group on the right cosets of ``subgroup``."""
        if not subgroup.is_subgroup_of(self):
            raise NotSubgroup("coset action needs a subgroup of this group")
        index, rem = divmod(self.order(), subgroup.order())
        if rem:
            raise AssertionError("subgroup order does not divide group order")
        if index > index_cap:
            raise IndexTooLarge(f"index {index} exceeds cap {index_cap}")
        start = subgroup.coset_min_rep(self.identity())
        reps = [start]
        lookup = {start.images: 0}
        q = 0
        while q < len(reps):
            rep = reps[q]
            q += 1
            for g in self.generators:
                nxt = subgroup.coset_min_rep(rep * g)
                if nxt.images not in lookup:
                    lookup[nxt.images] = len(reps)
                    reps.append(nxt)
        assert len(reps) == index, "coset count disagrees with the order ratio"
        gen_images = []
        for g in self.generators:
            gen_images.append(
                Permutation(
                    tuple(lookup[subgroup.coset_min_rep(rep * g).images] for rep in reps)
                )
            )
        image = PermGroup(max(index, 1), gen_images)
        return CosetAction(self, subgroup, image, reps)

    def quotient(self, normal_subgroup: "PermGroup", index_cap: int = 10_000) -> "PermGroup":
        """G/N as a permutation group on the cosets of the normal subgroup N."""
        if not normal_subgroup.is_subgroup_of(self):
            raise NotSubgroup("quotient needs a subgroup")
        for g in self.generators:
            for k in normal_subgroup.generators:
                if k.conjugate_by(g) not in normal_subgroup:
                    raise NotNormal("subgroup is not normal")
        action = self.coset_action(normal_subgroup, index_cap)
        image = action.image
        assert image.order() * normal_subgroup.order() == self.order(), (
            "coset action of a normal subgroup must have the subgroup as kernel"
        )
        return image

    def normal_closure(self, seeds: Iterable[Permutation]) -> "PermGroup":
        seeds = list(seeds)
        for s in seeds:
            if s not in self:
                raise NotSubgroup("seed lies outside the group")
        gens = [s for s in seeds if not s.is_identity()]
        closure = PermGroup(self.degree, gens)
        changed = True
        while changed:
            changed = False
            for g in self.generators:
                for k in closure.generators:
                    c = k.conjugate_by(g)
                    if c not in closure:
                        gens.append(c)
                        closure = PermGroup(self.degree, gens)
                        changed = True
        return closure

    def normalizer(self, subgroup: "PermGroup", cap: int = ENUMERATION_CAP) -> "PermGroup":
        """Normalizer by full element enumeration (exact, small groups only)."""
        if self.order() > cap:
            raise CapExceeded(f"group order {self.order()} exceeds cap {cap}")
        if not subgroup.is_subgroup_of(self):
            raise NotSubgroup("normalizer needs a subgroup")
        found = [
            g
            for g in self.iter_elements()
            if all(s.conjugate_by(g) in subgroup for s in subgroup.generators)
        ]
        return PermGroup(self.degree, found)

    def centralizer_of(self, x: Permutation, cap: int = ENUMERATION_CAP) -> "PermGroup":
        if self.order() > cap:
            raise CapExceeded(f"group order {self.order()} exceeds cap {cap}")
        found = [g for g in self.iter_elements() if g * x == x * g]
        return PermGroup(self.degree, found)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


@dataclass(frozen=True)
class BlockSystem:
    """A G-invariant partition into blocks of equal size."""

    assignment: tuple[int, ...]
    num_blocks: int
    block_size: int

    @classmethod
    def from_assignment(cls, assignment: tuple[int, ...]) -> "BlockSystem":
        num = max(assignment) + 1
        sizes = [0] * num
        for b in assignment:
            sizes[b] += 1
        assert len(set(sizes)) == 1, "blocks of a congruence must share a size"
        return cls(assignment, num, sizes[0])

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.num_blocks)]
        for pt, b in enumerate(self.assignment):
            out[b].append(pt)
        return out

    def is_trivial(self) -> bool:
        return self.num_blocks == 1 or self.block_size == 1


@dataclass(frozen=True)
class CosetAction:
    """Result of acting on right cosets: the image group, in degree order of
    the discovered canonical representatives."""

    group: PermGroup
    subgroup: PermGroup
    image: PermGroup
    reps: list[Permutation]

    @property
    def kernel_order(self) -> int:
        return self.group.order() // self.image.order()

    def apply(self, g: Permutation) -> Permutation:
        lookup = {rep.images: i for i, rep in enumerate(self.reps)}
        return Permutation(
            tuple(lookup[self.subgroup.coset_min_rep(rep * g).images] for rep in self.reps)
        )


def coset_average_fixed_points(t: Permutation, group: PermGroup) -> Fraction:
    """Exact average number of fixed points over the coset t*G.

    Equals 1 for transitive groups and the orbit count for intransitive
    ones (it is the orbit-counting average shifted by t).
    """
    if t.degree != group.degree:
        raise DegreeMismatch("degrees differ")
    timg = t.images
    total = sum(count_fixed(_compose(timg, g)) for g in group._iter_element_tuples())
    return Fraction(total, group.order())


def bruteforce_closure(degree: int, generators: Sequence[Permutation], cap: int = 100_000) -> set[tuple[int, ...]]:
    """Independent multiplication closure, used to cross-check chain orders."""
    elems = {tuple(range(degree))}
    frontier = [tuple(range(degree))]
    gens = [g.images for g in generators]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                prod = _compose(a, g)
                if prod not in elems:
                    if len(elems) >= cap:
                        raise CapExceeded(f"closure exceeded {cap} elements")
                    elems.add(prod)
                    nxt.append(prod)
        frontier = nxt
    return elems


# standard groups ------------------------------------------------------------


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    gens = [Permutation.from_cycles(n, [(0, 1)])]
    if n > 2:
        gens.append(Permutation.from_cycles(n, [tuple(range(n))]))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(max(n, 1), [])
    three = Permutation.from_cycles(n, [(0, 1, 2)])
    if n % 2:
        big = Permutation.from_cycles(n, [tuple(range(n))])
    else:
        big = Permutation.from_cycles(n, [tuple(range(1, n))])
    return PermGroup(n, [three, big])


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    return PermGroup(n, [Permutation.from_cycles(n, [tuple(range(n))])])


def dihedral_group(m: int) -> PermGroup:
    """Dihedral group of order 2m acting on m points (m >= 3)."""
    if m < 3:
        raise ValueError("dihedral action needs at least 3 points")
    rot = Permutation.from_cycles(m, [tuple(range(m))])
    ref = Permutation([(-i) % m for i in range(m)])
    return PermGroup(m, [rot, ref])
