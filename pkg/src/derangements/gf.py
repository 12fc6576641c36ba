"""Exact arithmetic in small finite fields GF(p^f).

Elements are dense coefficient vectors over GF(p) in the polynomial basis
1, t, ..., t^(f-1) modulo a fixed monic irreducible polynomial; no
logarithm tables.  The modulus for a given (p, f) is deterministic: the
lexicographically smallest monic irreducible of degree f, coefficient
sequences compared low-degree-first.  GF(p^1) uses the modulus t, i.e.
plain arithmetic mod p.  Elements serialize to integers via
e = sum(coeffs[i] * p**i), so 0 <= e < p**f.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .errors import FieldMismatch, NotPrime, TooLarge, ZeroElement

ORDER_CAP = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# Polynomials over GF(p) are tuples of ints, low degree first, no trailing zeros
# (except the zero polynomial, which is the empty tuple).


def _poly_trim(c: list[int]) -> tuple[int, ...]:
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def _poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> tuple[int, ...]:
    # m must be monic
    r = list(a)
    dm = len(m) - 1
    while len(r) - 1 >= dm and r:
        lead = r[-1]
        if lead:
            shift = len(r) - 1 - dm
            for i, mi in enumerate(m):
                r[shift + i] = (r[shift + i] - lead * mi) % p
        r.pop()
    return _poly_trim(r)


def _poly_divides(d: Sequence[int], a: Sequence[int], p: int) -> bool:
    return not _poly_mod(a, d, p)


def _monic_polys(degree: int, p: int) -> Iterator[tuple[int, ...]]:
    """All monic polynomials of the given degree, lexicographic low-first."""
    total = p**degree
    for e in range(total):
        coeffs = []
        v = e
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        yield tuple(coeffs) + (1,)


def _is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for cand in _monic_polys(d, p):
            if _poly_divides(cand, poly, p):
                return False
    return True


def _smallest_irreducible(p: int, f: int) -> tuple[int, ...]:
    if f == 1:
        return (0, 1)  # the polynomial t: reduction mod t is arithmetic mod p
    for cand in _monic_polys(f, p):
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError(f"no irreducible of degree {f} over GF({p})")


class FieldSpec:
    """A concrete finite field GF(p^f) with a fixed modulus.

    Instances are interned: ``field(p, f)`` always returns the same object,
    so identity comparison is safe.  Immutable and safe to share.
    """

    __slots__ = (
        "p",
        "f",
        "order",
        "modulus",
        "_one",
        "_zero",
        "_order_factors",
        "_enc_tables",
    )

    def __init__(self, p: int, f: int, modulus: tuple[int, ...]):
        self.p = p
        self.f = f
        self.order = p**f
        self.modulus = modulus
        self._zero = FFElement(self, (0,) * f)
        self._one = FFElement(self, (1,) + (0,) * (f - 1))
        self._order_factors = _prime_factors(self.order - 1)
        self._enc_tables = None

    def __repr__(self) -> str:
        return f"GF({self.order})"

    @property
    def zero(self) -> "FFElement":
        return self._zero

    @property
    def one(self) -> "FFElement":
        return self._one

    def element(self, value) -> "FFElement":
        """Coerce an int (encoded), an int sequence, or an FFElement."""
        if isinstance(value, FFElement):
            if value.spec is not self:
                raise FieldMismatch(f"element of {value.spec}, expected {self}")
            return value
        if isinstance(value, int):
            return self.from_int(value)
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) != self.f:
            raise ValueError(f"need {self.f} coefficients, got {len(coeffs)}")
        return FFElement(self, coeffs)

    def from_int(self, e: int) -> "FFElement":
        if not 0 <= e < self.order:
            raise ValueError(f"encoded value {e} out of range for {self}")
        coeffs = []
        for _ in range(self.f):
            coeffs.append(e % self.p)
            e //= self.p
        return FFElement(self, tuple(coeffs))

    def elements(self) -> Iterator["FFElement"]:
        """All field elements in encoded-integer order."""
        for e in range(self.order):
            yield self.from_int(e)

    def primitive_element(self) -> "FFElement":
        """The multiplicative generator with the smallest integer encoding."""
        for e in range(2, self.order):
            a = self.from_int(e)
            if a.multiplicative_order() == self.order - 1:
                return a
        # GF(2) has the empty product group; 1 generates it
        return self.one

    # internal coefficient arithmetic ------------------------------------

    def _add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a: tuple[int, ...]) -> tuple[int, ...]:
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        if self.f == 1:
            return ((a[0] * b[0]) % self.p,)
        prod = _poly_mul(a, b, self.p)
        red = _poly_mod(prod, self.modulus, self.p)
        return red + (0,) * (self.f - len(red))

    # encoded-integer arithmetic: hot paths for matrix work keep elements as
    # plain ints (the e = sum(coeffs[i] * p**i) serialization) instead of
    # FFElement objects

    def _tables(self):
        if self._enc_tables is None:
            decode = [self.from_int(e).coeffs for e in range(self.order)]
            self._enc_tables = decode
        return self._enc_tables

    def _enc(self, coeffs: tuple[int, ...]) -> int:
        e = 0
        for c in reversed(coeffs):
            e = e * self.p + c
        return e

    def add_e(self, x: int, y: int) -> int:
        if self.f == 1:
            return (x + y) % self.p
        t = self._tables()
        return self._enc(self._add(t[x], t[y]))

    def sub_e(self, x: int, y: int) -> int:
        if self.f == 1:
            return (x - y) % self.p
        t = self._tables()
        return self._enc(self._sub(t[x], t[y]))

    def neg_e(self, x: int) -> int:
        if self.f == 1:
            return (-x) % self.p
        t = self._tables()
        return self._enc(self._neg(t[x]))

    def mul_e(self, x: int, y: int) -> int:
        if self.f == 1:
            return (x * y) % self.p
        t = self._tables()
        return self._enc(self._mul(t[x], t[y]))

    def pow_e(self, x: int, k: int) -> int:
        if k < 0:
            return self.pow_e(self.inv_e(x), -k)
        if self.f == 1:
            return pow(x, k, self.p)
        result = 1
        base = x
        while k:
            if k & 1:
                result = self.mul_e(result, base)
            base = self.mul_e(base, base)
            k >>= 1
        return result

    def inv_e(self, x: int) -> int:
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        if self.f == 1:
            return pow(x, self.p - 2, self.p)
        return self.pow_e(x, self.order - 2)


def _prime_factors(n: int) -> tuple[int, ...]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return tuple(out)


class FFElement:
    """An immutable element of a FieldSpec; hashable, usable as dict key."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: FieldSpec, coeffs: tuple[int, ...]):
        self.spec = spec
        self.coeffs = coeffs

    def to_int(self) -> int:
        e = 0
        for c in reversed(self.coeffs):
            e = e * self.spec.p + c
        return e

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other) -> "FFElement":
        if isinstance(other, FFElement):
            if other.spec is not self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, int):
            return self.spec.from_int(other % self.spec.p)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FFElement(self.spec, self.spec._add(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FFElement(self.spec, self.spec._sub(self.coeffs, other.coeffs))

    def __neg__(self):
        return FFElement(self.spec, self.spec._neg(self.coeffs))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FFElement(self.spec, self.spec._mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "FFElement":
        if self.is_zero():
            raise ZeroDivisionError(f"inverse of zero in {self.spec}")
        return self ** (self.spec.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __pow__(self, k: int) -> "FFElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = self.spec.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def multiplicative_order(self) -> int:
        if self.is_zero():
            raise ZeroElement(f"zero has no multiplicative order in {self.spec}")
        order = self.spec.order - 1
        for r in self.spec._order_factors:
            while order % r == 0 and (self ** (order // r)) == self.spec.one:
                order //= r
        return order

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FFElement)
            and self.spec is other.spec
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((id(self.spec), self.coeffs))

    def __repr__(self) -> str:
        return f"ff({self.to_int()} in {self.spec})"


def prime_power_decompose(q: int) -> tuple[int, int]:
    """Split q into (p, f) with q = p**f, p prime; ValueError otherwise."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while p * p <= q and q % p:
        p += 1
    if q % p:
        p = q
    f = 0
    rest = q
    while rest % p == 0:
        rest //= p
        f += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, f


@lru_cache(maxsize=None)
def field(p: int, f: int) -> FieldSpec:
    """Construct (or fetch the interned) GF(p^f).

    Raises NotPrime for composite p and TooLarge when p**f > 2**20.
    """
    if not _is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if f < 1:
        raise ValueError(f"extension degree must be >= 1, got {f}")
    if p**f > ORDER_CAP:
        raise TooLarge(f"GF({p}^{f}) exceeds the {ORDER_CAP}-element cap")
    return FieldSpec(p, f, _smallest_irreducible(p, f))
