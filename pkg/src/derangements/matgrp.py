"""Matrix groups over GF(q): enumeration, the eigenvalue-1 subgroup, exact
irreducibility by spinning, Kronecker/central products, and the degree-2
field embedding into GL(2,q).

Matrices act on row vectors (v -> v*M), so the product M*N means "apply M,
then N" and coincides with the ordinary matrix product.  Entries are stored
as encoded field integers (see gf.FieldSpec); FFElement objects are built
only at the API edges.  Deterministic throughout: searches scan matrices in
row-major encoded order, enumeration is breadth-first from the identity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import CapExceeded, ConstraintViolated, FieldMismatch
from .gf import FFElement, FieldSpec, field, prime_power_decompose
from .permgrp import PermGroup, Permutation

MAT_ENUMERATION_CAP = 2_000_000
SPIN_WORK_CAP = 1_000_000
SEMIREGULAR_VECTOR_CAP = 300_000
_NUMPY_SPIN_THRESHOLD = 20_000


class FFMatrix:
    """Immutable square matrix; rows of encoded field integers."""

    __slots__ = ("spec", "d", "rows")

    def __init__(self, spec: FieldSpec, rows: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(e) for e in row) for row in rows)
        d = len(rows)
        for row in rows:
            if len(row) != d:
                raise ValueError("matrix must be square")
            for e in row:
                if not 0 <= e < spec.order:
                    raise ValueError(f"entry {e} out of range for {spec}")
        self.spec = spec
        self.d = d
        self.rows = rows

    @classmethod
    def identity(cls, spec: FieldSpec, d: int) -> "FFMatrix":
        return cls(spec, [[1 if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def scalar(cls, spec: FieldSpec, d: int, value: int) -> "FFMatrix":
        return cls(spec, [[value if i == j else 0 for j in range(d)] for i in range(d)])

    @classmethod
    def from_elements(cls, rows: Sequence[Sequence[FFElement]]) -> "FFMatrix":
        spec = rows[0][0].spec
        return cls(spec, [[e.to_int() for e in row] for row in rows])

    def entry(self, i: int, j: int) -> FFElement:
        return self.spec.from_int(self.rows[i][j])

    def key(self) -> tuple[int, ...]:
        return tuple(e for row in self.rows for e in row)

    def __mul__(self, other: "FFMatrix") -> "FFMatrix":
        if self.spec is not other.spec:
            raise FieldMismatch(f"{self.spec} vs {other.spec}")
        if self.d != other.d:
            raise ValueError("dimension mismatch")
        spec = self.spec
        cols = tuple(zip(*other.rows))
        if spec.f == 1:
            p = spec.p
            rows = tuple(
                tuple(sum(a * b for a, b in zip(row, col)) % p for col in cols)
                for row in self.rows
            )
            return FFMatrix._raw(spec, self.d, rows)
        mul, add = spec.mul_e, spec.add_e
        out = []
        for row in self.rows:
            new = []
            for col in cols:
                acc = 0
                for a, b in zip(row, col):
                    acc = add(acc, mul(a, b))
                new.append(acc)
            out.append(tuple(new))
        return FFMatrix._raw(spec, self.d, tuple(out))

    @classmethod
    def _raw(cls, spec, d, rows) -> "FFMatrix":
        m = object.__new__(cls)
        m.spec = spec
        m.d = d
        m.rows = rows
        return m

    def __pow__(self, k: int) -> "FFMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        result = FFMatrix.identity(self.spec, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply_row(self, v: Sequence[int]) -> tuple[int, ...]:
        """Image of the row vector v (encoded ints) under this matrix."""
        spec = self.spec
        if spec.f == 1:
            p = spec.p
            return tuple(
                sum(a * b for a, b in zip(v, col)) % p for col in zip(*self.rows)
            )
        mul, add = spec.mul_e, spec.add_e
        out = []
        for col in zip(*self.rows):
            acc = 0
            for a, b in zip(v, col):
                acc = add(acc, mul(a, b))
            out.append(acc)
        return tuple(out)

    def minus_identity_rows(self) -> list[list[int]]:
        spec = self.spec
        return [
            [spec.sub_e(e, 1 if i == j else 0) for j, e in enumerate(row)]
            for i, row in enumerate(self.rows)
        ]

    def det(self) -> int:
        spec = self.spec
        m = [list(row) for row in self.rows]
        det = 1
        for col in range(self.d):
            pivot = next((r for r in range(col, self.d) if m[r][col]), None)
            if pivot is None:
                return 0
            if pivot != col:
                m[col], m[pivot] = m[pivot], m[col]
                det = spec.neg_e(det)
            det = spec.mul_e(det, m[col][col])
            inv = spec.inv_e(m[col][col])
            for r in range(col + 1, self.d):
                if m[r][col]:
                    factor = spec.mul_e(m[r][col], inv)
                    m[r] = [
                        spec.sub_e(m[r][j], spec.mul_e(factor, m[col][j]))
                        for j in range(self.d)
                    ]
        return det

    def inverse(self) -> "FFMatrix":
        spec = self.spec
        d = self.d
        m = [list(row) + [1 if i == j else 0 for j in range(d)] for i, row in enumerate(self.rows)]
        row = 0
        for col in range(d):
            pivot = next((r for r in range(row, d) if m[r][col]), None)
            if pivot is None:
                raise ZeroDivisionError("matrix is singular")
            m[row], m[pivot] = m[pivot], m[row]
            inv = spec.inv_e(m[row][col])
            m[row] = [spec.mul_e(inv, e) for e in m[row]]
            for r in range(d):
                if r != row and m[r][col]:
                    factor = m[r][col]
                    m[r] = [
                        spec.sub_e(e, spec.mul_e(factor, pe))
                        for e, pe in zip(m[r], m[row])
                    ]
            row += 1
        return FFMatrix(spec, [r[d:] for r in m])

    def is_identity(self) -> bool:
        return all(
            e == (1 if i == j else 0)
            for i, row in enumerate(self.rows)
            for j, e in enumerate(row)
        )

    def is_scalar(self) -> bool:
        diag = self.rows[0][0]
        return diag != 0 and all(
            e == (diag if i == j else 0)
            for i, row in enumerate(self.rows)
            for j, e in enumerate(row)
        )

    def multiplicative_order(self, cap: int = 10_000) -> int:
        power = self
        for k in range(1, cap + 1):
            if power.is_identity():
                return k
            power = power * self
        raise CapExceeded(f"element order exceeds {cap}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FFMatrix)
            and self.spec is other.spec
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((id(self.spec), self.rows))

    def __repr__(self) -> str:
        return f"FFMatrix({self.spec}, {[list(r) for r in self.rows]})"


def echelonize(spec: FieldSpec, rows: Iterable[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over the field; returns (rows, pivot columns).

    Zero rows are dropped; the result is the canonical basis of the row
    space.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    row = 0
    for col in range(ncols):
        pivot = next((r for r in range(row, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = spec.inv_e(m[row][col])
        m[row] = [spec.mul_e(inv, e) for e in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [
                    spec.sub_e(e, spec.mul_e(factor, pe)) for e, pe in zip(m[r], m[row])
                ]
        pivots.append(col)
        row += 1
    return m[:row], pivots


def matrix_rank(spec: FieldSpec, rows: Iterable[Sequence[int]]) -> int:
    return len(echelonize(spec, rows)[1])


def solve_homogeneous(spec: FieldSpec, rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of {x : sum_j rows[i][j]*x[j] = 0 for all i} from the echelon
    form, one vector per free column."""
    reduced, pivots = echelonize(spec, rows)
    n = len(rows[0])
    basis = []
    for j in range(n):
        if j in pivots:
            continue
        v = [0] * n
        v[j] = 1
        for r, pc in enumerate(pivots):
            v[pc] = spec.neg_e(reduced[r][j])
        basis.append(tuple(v))
    return basis


def nullspace(spec: FieldSpec, rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Basis of {v : v*M = 0} (row vectors), i.e. the homogeneous solutions
    of the transposed system."""
    return solve_homogeneous(spec, [list(col) for col in zip(*rows)])


def has_eigenvalue_one(m: FFMatrix) -> bool:
    """True iff (M - I) is singular, i.e. some nonzero row vector is fixed."""
    return matrix_rank(m.spec, m.minus_identity_rows()) < m.d


class MatrixGroup:
    """Group generated by invertible matrices over one field."""

    def __init__(self, spec: FieldSpec, d: int, generators: Iterable[FFMatrix]):
        gens = []
        seen = set()
        for g in generators:
            if not isinstance(g, FFMatrix):
                g = FFMatrix(spec, g)
            if g.spec is not spec:
                raise FieldMismatch(f"generator over {g.spec}, group over {spec}")
            if g.d != d:
                raise ValueError(f"generator dimension {g.d} in GL({d},...)")
            if g.det() == 0:
                raise ValueError("singular generator")
            if g.is_identity() or g.key() in seen:
                continue
            seen.add(g.key())
            gens.append(g)
        self.spec = spec
        self.d = d
        self.generators = tuple(gens)
        self._elements: list[FFMatrix] | None = None
        self._keyset: frozenset | None = None

    def elements(self, cap: int = MAT_ENUMERATION_CAP) -> list[FFMatrix]:
        if self._elements is None:
            identity = FFMatrix.identity(self.spec, self.d)
            out = [identity]
            seen = {identity.key()}
            q = 0
            while q < len(out):
                m = out[q]
                q += 1
                for g in self.generators:
                    prod = m * g
                    k = prod.key()
                    if k not in seen:
                        if len(out) >= cap:
                            raise CapExceeded(f"matrix closure exceeds cap {cap}")
                        seen.add(k)
                        out.append(prod)
            self._elements = out
            self._keyset = frozenset(seen)
        return self._elements

    def order(self) -> int:
        return len(self.elements())

    def key_set(self) -> frozenset:
        self.elements()
        return self._keyset

    def __contains__(self, m: FFMatrix) -> bool:
        return m.key() in self.key_set()

    def element_order_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for m in self.elements():
            k = m.multiplicative_order(cap=self.order())
            hist[k] = hist.get(k, 0) + 1
        return hist

    def scalar_values(self) -> list[int]:
        """Encodings of all lambda with lambda*I in the group, ascending."""
        return sorted(m.rows[0][0] for m in self.elements() if m.is_scalar())

    def contains_minus_identity(self) -> bool:
        return FFMatrix.scalar(self.spec, self.d, self.spec.neg_e(1)) in self

    def __repr__(self) -> str:
        return f"MatrixGroup(GL({self.d},{self.spec.order}), ngens={len(self.generators)})"


def eigenvalue_one_subgroup(group: MatrixGroup) -> MatrixGroup:
    """Subgroup generated by all elements fixing some nonzero vector.

    The generating set is conjugation-closed (conjugation preserves
    eigenvalues), so the result is normal; normality is still verified by
    conjugating the generators with the parent's generators.
    """
    gens = [m for m in group.elements() if has_eigenvalue_one(m)]
    sub = MatrixGroup(group.spec, group.d, gens)
    assert sub.key_set() <= group.key_set()
    assert group.order() % sub.order() == 0
    for g in group.generators:
        ginv = g.inverse()
        for r in sub.generators:
            if (ginv * r) * g not in sub:
                raise AssertionError("eigenvalue-1 subgroup failed normality check")
    return sub


def eigenvalue_one_index(group: MatrixGroup, sub: MatrixGroup | None = None) -> int:
    if sub is None:
        sub = eigenvalue_one_subgroup(group)
    return group.order() // sub.order()


def semiregular_on_nonzero(group: MatrixGroup) -> bool:
    """True iff no non-identity element fixes a nonzero vector."""
    return all(
        not has_eigenvalue_one(m) for m in group.elements() if not m.is_identity()
    )


# vector indexing ------------------------------------------------------------


def vector_to_index(spec: FieldSpec, v: Sequence[int]) -> int:
    idx = 0
    for e in reversed(v):
        idx = idx * spec.order + e
    return idx


def index_to_vector(spec: FieldSpec, d: int, idx: int) -> tuple[int, ...]:
    out = []
    for _ in range(d):
        out.append(idx % spec.order)
        idx //= spec.order
    return tuple(out)


def _orbit_labels_python(group: MatrixGroup) -> list[int]:
    """Orbit label per vector index under the group; label = smallest index
    in the orbit.  Index 0 (zero vector) keeps label 0."""
    spec, d = group.spec, group.d
    n = spec.order**d
    labels = [-1] * n
    labels[0] = 0
    for start in range(1, n):
        if labels[start] >= 0:
            continue
        orbit = [start]
        labels[start] = start
        qpos = 0
        while qpos < len(orbit):
            idx = orbit[qpos]
            qpos += 1
            v = index_to_vector(spec, d, idx)
            for g in group.generators:
                img = vector_to_index(spec, g.apply_row(v))
                if labels[img] < 0:
                    labels[img] = start
                    orbit.append(img)
    return labels


def _gen_arrays_numpy(group: MatrixGroup) -> tuple[np.ndarray, np.ndarray, list[np.ndarray]]:
    """(all vectors as rows, index powers, one image-index array per generator);
    prime fields only."""
    spec, d = group.spec, group.d
    p = spec.p
    n = p**d
    qpow = p ** np.arange(d, dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    vecs = (idx[:, None] // qpow[None, :]) % p
    images = []
    for g in group.generators:
        mat = np.array(g.rows, dtype=np.int64)
        w = (vecs @ mat) % p
        images.append(w @ qpow)
    return vecs, qpow, images


def _propagate_min_labels(n: int, images: list[np.ndarray]) -> np.ndarray:
    labels = np.arange(n, dtype=np.int64)
    while True:
        before = labels.copy()
        for img in images:
            np.minimum.at(labels, img, labels)
            labels = np.minimum(labels, labels[img])
        # pointer-jump within discovered label chains
        for _ in range(3):
            labels = np.minimum(labels, labels[labels])
        if np.array_equal(labels, before):
            return labels


def _orbit_labels_numpy(group: MatrixGroup) -> np.ndarray:
    _, _, images = _gen_arrays_numpy(group)
    n = group.spec.p ** group.d
    return _propagate_min_labels(n, images)


def coset_reps_mod(group: MatrixGroup, sub: MatrixGroup) -> list[FFMatrix]:
    """One representative per right coset of sub, identity's coset first."""
    sub_elements = sub.elements()
    coset_of: dict[tuple, int] = {}
    reps = []
    for m in group.elements():
        if m.key() in coset_of:
            continue
        coset_of[m.key()] = len(reps)
        for s in sub_elements:
            coset_of[(s * m).key()] = len(reps)
        reps.append(m)
    assert len(reps) * sub.order() == group.order()
    return reps


@dataclass(frozen=True)
class IndexBoundReport:
    """Outcome of the eigenvalue-1 index bound and orbit-semiregularity
    checks.  semiregular is None when the vector count exceeded the cap and
    the orbit part was skipped."""

    index: int
    bound: int
    index_ok: bool
    semiregular: bool | None

    def __bool__(self) -> bool:
        return self.index_ok and self.semiregular is not False


def index_bound_check(
    group: MatrixGroup,
    sub: MatrixGroup | None = None,
    vector_cap: int = SEMIREGULAR_VECTOR_CAP,
) -> IndexBoundReport:
    """Check |H : eigenvalue-1 subgroup| <= q^d - 1, and that every
    non-identity coset moves every subgroup orbit on nonzero vectors."""
    spec, d = group.spec, group.d
    if sub is None:
        sub = eigenvalue_one_subgroup(group)
    index = group.order() // sub.order()
    bound = spec.order**d - 1
    n = spec.order**d
    if n > vector_cap:
        return IndexBoundReport(index, bound, index <= bound, None)
    if spec.f == 1 and n > 5000:
        labels = _orbit_labels_numpy(sub) if sub.generators else np.arange(n, dtype=np.int64)
        rep_positions = np.unique(labels[1:])
        p = spec.p
        qpow = p ** np.arange(d, dtype=np.int64)
        rep_vecs = (rep_positions[:, None] // qpow[None, :]) % p
        semiregular = True
        for h in coset_reps_mod(group, sub)[1:]:
            mat = np.array(h.rows, dtype=np.int64)
            img = ((rep_vecs @ mat) % p) @ qpow
            if np.any(labels[img] == labels[rep_positions]):
                semiregular = False
                break
    else:
        labels = _orbit_labels_python(sub)
        rep_positions = sorted({lab for lab in labels[1:]})
        semiregular = True
        for h in coset_reps_mod(group, sub)[1:]:
            for pos in rep_positions:
                v = index_to_vector(spec, d, pos)
                img = vector_to_index(spec, h.apply_row(v))
                if labels[img] == labels[pos]:
                    semiregular = False
                    break
            if not semiregular:
                break
    return IndexBoundReport(index, bound, index <= bound, semiregular)


# irreducibility -------------------------------------------------------------


def _canonicalize(spec: FieldSpec, v: tuple[int, ...]) -> tuple[int, ...]:
    lead = next(e for e in v if e)
    if lead == 1:
        return v
    inv = spec.inv_e(lead)
    return tuple(spec.mul_e(inv, e) for e in v)


def _irreducibility_python(group: MatrixGroup) -> tuple[bool, list[tuple[int, ...]] | None]:
    spec, d = group.spec, group.d
    n = spec.order**d
    visited = set()
    for idx in range(1, n):
        v = index_to_vector(spec, d, idx)
        k = 0
        while not v[k]:
            k += 1
        if v[k] != 1 or v in visited:
            continue
        visited.add(v)
        orbit = [v]
        span: list[list[int]] = []
        rank = 0
        qpos = 0
        while qpos < len(orbit):
            u = orbit[qpos]
            qpos += 1
            if rank < d:
                span, pivots = echelonize(spec, span + [list(u)])
                rank = len(pivots)
            for g in group.generators:
                w = _canonicalize(spec, g.apply_row(u))
                if w not in visited:
                    visited.add(w)
                    orbit.append(w)
        if rank < d:
            return False, [tuple(r) for r in span]
    return True, None


def _rank_of_orbit_numpy(spec: FieldSpec, rows: np.ndarray, d: int) -> tuple[int, list[list[int]]]:
    span: list[list[int]] = []
    rank = 0
    for chunk_start in range(0, len(rows), 64):
        for row in rows[chunk_start : chunk_start + 64]:
            span, pivots = echelonize(spec, span + [[int(e) for e in row]])
            rank = len(pivots)
        if rank == d:
            break
    return rank, span


def _irreducibility_numpy(group: MatrixGroup) -> tuple[bool, list[tuple[int, ...]] | None]:
    spec, d = group.spec, group.d
    p = spec.p
    qpow = p ** np.arange(d, dtype=np.int64)
    blocks = []
    for lead in range(d):
        free = d - 1 - lead
        if free:
            tail = np.stack(
                np.meshgrid(*([np.arange(p, dtype=np.int64)] * free), indexing="ij"),
                axis=-1,
            ).reshape(-1, free)
        else:
            tail = np.zeros((1, 0), dtype=np.int64)
        block = np.zeros((len(tail), d), dtype=np.int64)
        block[:, lead] = 1
        if free:
            block[:, lead + 1 :] = tail
        blocks.append(block)
    c = np.concatenate(blocks)
    keys = c @ qpow
    order = np.argsort(keys)
    c = c[order]
    keys = keys[order]
    invtab = np.array([0] + [pow(x, p - 2, p) for x in range(1, p)], dtype=np.int64)
    images = []
    for g in group.generators:
        mat = np.array(g.rows, dtype=np.int64)
        w = (c @ mat) % p
        first = (w != 0).argmax(axis=1)
        lead = w[np.arange(len(w)), first]
        w = (w * invtab[lead][:, None]) % p
        img_keys = w @ qpow
        pos = np.searchsorted(keys, img_keys)
        assert np.array_equal(keys[pos], img_keys)
        images.append(pos)
    labels = _propagate_min_labels(len(c), images)
    sort_idx = np.argsort(labels, kind="stable")
    sorted_labels = labels[sort_idx]
    boundaries = np.flatnonzero(
        np.concatenate(([True], sorted_labels[1:] != sorted_labels[:-1]))
    )
    boundaries = np.append(boundaries, len(sorted_labels))
    for b in range(len(boundaries) - 1):
        rows = c[sort_idx[boundaries[b] : boundaries[b + 1]]]
        rank, span = _rank_of_orbit_numpy(spec, rows, d)
        if rank < d:
            return False, [tuple(r) for r in span]
    return True, None


def irreducibility(group: MatrixGroup) -> tuple[bool, list[tuple[int, ...]] | None]:
    """(True, None) when no proper nonzero invariant subspace exists, else
    (False, echelon basis of one).  Exhaustive spinning: for each projective
    point, the span of its orbit is the smallest invariant subspace through
    it, so checking one representative per orbit is exact."""
    spec, d = group.spec, group.d
    if d == 1:
        return True, None
    n_proj = (spec.order**d - 1) // (spec.order - 1)
    if d * n_proj > SPIN_WORK_CAP:
        raise CapExceeded(f"spinning workload {d * n_proj} exceeds {SPIN_WORK_CAP}")
    if spec.f == 1 and n_proj > _NUMPY_SPIN_THRESHOLD:
        return _irreducibility_numpy(group)
    return _irreducibility_python(group)


def is_irreducible(group: MatrixGroup) -> bool:
    return irreducibility(group)[0]


# products and embeddings ------------------------------------------------------


def kronecker(a: FFMatrix, b: FFMatrix) -> FFMatrix:
    """Kronecker product; index (i,k) of the product space is i*d_B + k, so
    (v (x) w) * (A (x) B) = (v*A) (x) (w*B) in row convention."""
    if a.spec is not b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")
    spec = a.spec
    da, db = a.d, b.d
    rows = []
    for i in range(da):
        for k in range(db):
            row = []
            for j in range(da):
                for l in range(db):
                    row.append(spec.mul_e(a.rows[i][j], b.rows[k][l]))
            rows.append(row)
    return FFMatrix(spec, rows)


def central_product(x: MatrixGroup, y: MatrixGroup) -> MatrixGroup:
    """Group generated by {a (x) I} and {I (x) b}: the central product of the
    factors over their shared scalars.  Both factors must contain -I; the
    order formula |X||Y|/|shared scalars| is asserted against enumeration."""
    if x.spec is not y.spec:
        raise FieldMismatch(f"{x.spec} vs {y.spec}")
    spec = x.spec
    if not (x.contains_minus_identity() and y.contains_minus_identity()):
        raise ConstraintViolated("central product factors must contain -I")
    ix = FFMatrix.identity(spec, x.d)
    iy = FFMatrix.identity(spec, y.d)
    gens = [kronecker(g, iy) for g in x.generators] + [
        kronecker(ix, g) for g in y.generators
    ]
    prod = MatrixGroup(spec, x.d * y.d, gens)
    y_scalars = set(y.scalar_values())
    shared = [lam for lam in x.scalar_values() if spec.inv_e(lam) in y_scalars]
    assert prod.order() * len(shared) == x.order() * y.order(), (
        "central product order disagrees with the scalar-overlap formula"
    )
    return prod


class QuadraticExtension:
    """GF(q^2) built over a FieldSpec as pairs (a0, a1) = a0 + a1*t, where
    t^2 = -b*t - c for the first (c, b) pair, in encoded order, making
    x^2 + b*x + c rootless over the base field."""

    def __init__(self, base: FieldSpec):
        self.base = base
        q = base.order
        found = None
        for c in range(q):
            for b in range(q):
                if all(
                    base.add_e(base.mul_e(a, base.add_e(a, b)), c) != 0
                    for a in range(q)
                ):
                    found = (c, b)
                    break
            if found:
                break
        assert found is not None, "a quadratic non-residue pattern always exists"
        self.c, self.b = found
        self.order = q * q

    def mul(self, u: tuple[int, int], v: tuple[int, int]) -> tuple[int, int]:
        base, b, c = self.base, self.b, self.c
        u0, u1 = u
        v0, v1 = v
        cross = base.mul_e(u1, v1)
        out0 = base.sub_e(base.mul_e(u0, v0), base.mul_e(c, cross))
        out1 = base.sub_e(
            base.add_e(base.mul_e(u0, v1), base.mul_e(u1, v0)), base.mul_e(b, cross)
        )
        return out0, out1

    def power(self, u: tuple[int, int], k: int) -> tuple[int, int]:
        result = (1, 0)
        base = u
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def multiplicative_order(self, u: tuple[int, int]) -> int:
        assert u != (0, 0)
        n = self.order - 1
        rest = n
        d = 2
        factors = []
        while d * d <= rest:
            if rest % d == 0:
                factors.append(d)
                while rest % d == 0:
                    rest //= d
            d += 1
        if rest > 1:
            factors.append(rest)
        order = n
        for r in factors:
            while order % r == 0 and self.power(u, order // r) == (1, 0):
                order //= r
        return order

    def element_of_order(self, m: int) -> tuple[int, int]:
        """First element (by a0 + q*a1 encoding) of multiplicative order m."""
        if (self.order - 1) % m:
            raise ValueError(f"no element of order {m} in GF({self.order})*")
        q = self.base.order
        for code in range(1, self.order):
            u = (code % q, code // q)
            if self.multiplicative_order(u) == m:
                return u
        raise AssertionError("cyclic group must contain the requested order")

    def mult_rep(self, u: tuple[int, int]) -> FFMatrix:
        """Matrix of w -> w*u on the base-field plane with basis {1, t}."""
        base, b, c = self.base, self.b, self.c
        u0, u1 = u
        return FFMatrix(
            base,
            [
                [u0, u1],
                [base.neg_e(base.mul_e(c, u1)), base.sub_e(u0, base.mul_e(b, u1))],
            ],
        )

    def frobenius_matrix(self) -> FFMatrix:
        """Matrix of w -> w^q; an involution conjugating mult_rep(u) to
        mult_rep(u^q)."""
        tq = self.power((0, 1), self.base.order)
        return FFMatrix(self.base, [[1, 0], [tq[0], tq[1]]])


def gf2_embedding(q: int) -> tuple[Callable[[tuple[int, int]], FFMatrix], FFMatrix]:
    """(multiplication-matrix map, Frobenius matrix) for GF(q^2) inside
    GL(2,q)."""
    p, f = prime_power_decompose(q)
    ext = QuadraticExtension(field(p, f))
    return ext.mult_rep, ext.frobenius_matrix()


# permutation views -------------------------------------------------------------


def regular_perm_group(group: MatrixGroup) -> PermGroup:
    """Right-regular permutation action on the group's own elements."""
    elements = group.elements()
    pos = {m.key(): i for i, m in enumerate(elements)}
    gens = [
        Permutation([pos[(m * g).key()] for m in elements]) for g in group.generators
    ]
    out = PermGroup(max(len(elements), 1), gens)
    assert out.order() == group.order()
    return out


def quotient_perm_group(group: MatrixGroup, sub: MatrixGroup) -> PermGroup:
    """Action of the group on right cosets of a normal subgroup; faithful on
    the quotient, so the image has order |group|/|sub|."""
    sub_elements = sub.elements()
    coset_of: dict[tuple, int] = {}
    reps = []
    for m in group.elements():
        if m.key() in coset_of:
            continue
        cid = len(reps)
        for s in sub_elements:
            coset_of[(s * m).key()] = cid
        reps.append(m)
    index = len(reps)
    assert index * sub.order() == group.order()
    gens = [
        Permutation([coset_of[(rep * g).key()] for rep in reps])
        for g in group.generators
    ]
    out = PermGroup(max(index, 1), gens)
    assert out.order() == index, "coset action must be faithful modulo the subgroup"
    return out


# named constructions ------------------------------------------------------------


def _roots_of_minus_identity(spec: FieldSpec):
    """2x2 square roots of -I, in row-major encoded lexicographic order of
    (e00, e01, e10, e11), as raw entry tuples."""
    q = spec.order
    neg_one = spec.neg_e(1)
    mul, add = spec.mul_e, spec.add_e
    for e00 in range(q):
        sq = mul(e00, e00)
        for e01 in range(q):
            for e10 in range(q):
                # row 0 of the square is (e00^2 + e01*e10, e01*(e00 + e11))
                if add(sq, mul(e01, e10)) != neg_one:
                    continue
                for e11 in range(q):
                    if mul(e01, add(e00, e11)):
                        continue
                    if mul(e10, add(e00, e11)):
                        continue
                    if add(mul(e01, e10), mul(e11, e11)) != neg_one:
                        continue
                    yield (e00, e01, e10, e11)


def quaternion_gl2(spec: FieldSpec) -> MatrixGroup:
    """The order-8 quaternion subgroup of GL(2,q), q odd: the two smallest
    anticommuting square roots of -I in row-major encoded order."""
    if spec.p == 2:
        raise ConstraintViolated("quaternion subgroup needs odd characteristic")
    mul, add = spec.mul_e, spec.add_e
    first = None
    for cand in _roots_of_minus_identity(spec):
        if first is None:
            first = cand
            continue
        a00, a01, a10, a11 = first
        b00, b01, b10, b11 = cand
        ab = (
            add(mul(a00, b00), mul(a01, b10)),
            add(mul(a00, b01), mul(a01, b11)),
            add(mul(a10, b00), mul(a11, b10)),
            add(mul(a10, b01), mul(a11, b11)),
        )
        ba = (
            add(mul(b00, a00), mul(b01, a10)),
            add(mul(b00, a01), mul(b01, a11)),
            add(mul(b10, a00), mul(b11, a10)),
            add(mul(b10, a01), mul(b11, a11)),
        )
        if all(add(x, y) == 0 for x, y in zip(ab, ba)):
            a = FFMatrix(spec, [first[0:2], first[2:4]])
            b = FFMatrix(spec, [cand[0:2], cand[2:4]])
            group = MatrixGroup(spec, 2, [a, b])
            assert group.order() == 8
            assert group.element_order_histogram() == {1: 1, 2: 1, 4: 6}
            return group
    raise AssertionError("GL(2,q) with q odd always contains a quaternion group")


def special_linear_gl2(spec: FieldSpec) -> MatrixGroup:
    """Natural SL(2,p) for prime p: a transvection and the rotation by the
    antidiagonal square root of -I generate it."""
    assert spec.f == 1, "natural SL(2,q) generators implemented for prime fields"
    p = spec.p
    gens = [
        FFMatrix(spec, [[1, 1], [0, 1]]),
        FFMatrix(spec, [[0, 1], [spec.neg_e(1), 0]]),
    ]
    group = MatrixGroup(spec, 2, gens)
    assert group.order() == p * (p * p - 1)
    return group


def general_linear_gl2(spec: FieldSpec) -> MatrixGroup:
    """All of GL(2,q): transvection + swap + a determinant-spanning torus."""
    g = spec.primitive_element().to_int()
    gens = [
        FFMatrix(spec, [[1, 1], [0, 1]]),
        FFMatrix(spec, [[0, 1], [1, 0]]),
        FFMatrix(spec, [[g, 0], [0, 1]]),
    ]
    group = MatrixGroup(spec, 2, gens)
    q = spec.order
    assert group.order() == (q * q - 1) * (q * q - q)
    return group


def scalar_matrix_group(spec: FieldSpec, d: int) -> MatrixGroup:
    """The full scalar group {lambda*I}, cyclic of order q-1."""
    g = spec.primitive_element().to_int()
    group = MatrixGroup(spec, d, [FFMatrix.scalar(spec, d, g)])
    assert group.order() == spec.order - 1
    return group


def dihedral_gl2(spec: FieldSpec, m: int) -> MatrixGroup:
    """Dihedral group of order 2m in GL(2,q) with rotation of order m: the
    split torus + swap when m | q-1, else the nonsplit torus + Frobenius
    when m | q+1."""
    if m < 3:
        raise ConstraintViolated("dihedral rotation order must be at least 3")
    q = spec.order
    if (q - 1) % m == 0:
        u = next(
            e for e in range(2, q) if spec.from_int(e).multiplicative_order() == m
        )
        rot = FFMatrix(spec, [[u, 0], [0, spec.inv_e(u)]])
        ref = FFMatrix(spec, [[0, 1], [1, 0]])
    elif (q + 1) % m == 0:
        ext = QuadraticExtension(spec)
        rot = ext.mult_rep(ext.element_of_order(m))
        ref = ext.frobenius_matrix()
    else:
        raise ConstraintViolated(f"order-{m} rotation needs m | q-1 or m | q+1")
    assert rot.multiplicative_order() == m
    assert (ref * ref).is_identity()
    assert ((ref.inverse() * rot) * ref) == rot.inverse()
    group = MatrixGroup(spec, 2, [rot, ref])
    assert group.order() == 2 * m
    return group


def binary_tetrahedral_gl2(spec: FieldSpec) -> MatrixGroup:
    """SL(2,3) as a subgroup of GL(2,q): the quaternion group extended by an
    order-3 matrix cycling its generators by conjugation.  The order-3 part
    is solved linearly (null space of the two conjugation constraints) and
    scaled by the unique cube root fixing its determinant condition."""
    if spec.order % 3 == 1:
        raise ConstraintViolated("needs a unique cube root: q not 1 mod 3")
    quat = quaternion_gl2(spec)
    a, b = quat.generators
    ab = a * b
    # entries w_{rc} -> unknown 2r + c; constraints A*W = W*B and B*W = W*(A*B)
    rows = []
    for left, right in ((a, b), (b, ab)):
        for i in range(2):
            for j in range(2):
                coeff = [0, 0, 0, 0]
                for k in range(2):
                    coeff[2 * k + j] = spec.add_e(coeff[2 * k + j], left.rows[i][k])
                    coeff[2 * i + k] = spec.sub_e(coeff[2 * i + k], right.rows[k][j])
                rows.append(coeff)
    basis = solve_homogeneous(spec, rows)
    assert basis, "conjugation constraints always have a nonzero solution"
    w = FFMatrix(spec, [basis[0][0:2], basis[0][2:4]])
    cube = w * w * w
    assert cube.is_scalar()
    lam = cube.rows[0][0]
    root = next(e for e in range(1, spec.order) if spec.pow_e(e, 3) == lam)
    w = FFMatrix.scalar(spec, 2, spec.inv_e(root)) * w
    group = MatrixGroup(spec, 2, [a, b, w])
    assert group.order() == 24
    assert group.element_order_histogram() == {1: 1, 2: 1, 3: 8, 4: 6, 6: 8}
    return group


def binary_icosahedral_gl2(spec: FieldSpec) -> MatrixGroup:
    """SL(2,5) as a subgroup of GL(2,q) for q = -1 mod 5: generated by the
    multiplication matrix of an order-10 extension element and the smallest
    trace-1 determinant-1 matrix s with trace(s*t) = 0 (which forces the
    binary icosahedral relations s^3 = t^5 = (st)^2 = -I)."""
    q = spec.order
    if (q + 1) % 5:
        raise ConstraintViolated("needs an order-10 torus element: q = -1 mod 5")
    ext = QuadraticExtension(spec)
    t = ext.mult_rep(ext.element_of_order(10))
    assert t.det() == 1
    q = spec.order
    mul, add, sub = spec.mul_e, spec.add_e, spec.sub_e
    (t00, t01), (t10, t11) = t.rows
    # scan trace-1 det-1 matrices s = [[a,b],[c,1-a]] in row-major order;
    # trace(s*t) = 0 then forces s^3 = t^5 = (st)^2 = -I, which presents
    # the binary icosahedral group, so the first hit generates it
    for a in range(q):
        e = sub(1, a)
        ae = mul(a, e)
        for b in range(q):
            for c in range(q):
                if sub(ae, mul(b, c)) != 1:
                    continue
                trace_st = add(
                    add(mul(a, t00), mul(b, t10)), add(mul(c, t01), mul(e, t11))
                )
                if trace_st:
                    continue
                s = FFMatrix(spec, [[a, b], [c, e]])
                group = MatrixGroup(spec, 2, [s, t])
                assert group.order() == 120
                assert group.element_order_histogram() == {
                    1: 1,
                    2: 1,
                    3: 20,
                    4: 30,
                    5: 24,
                    6: 20,
                    10: 24,
                }
                return group
    raise AssertionError("SL(2,5) exists in GL(2,q) whenever 5 divides q+1")
