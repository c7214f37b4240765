"""Finite fields GF(p^k) with table-driven arithmetic.

Elements are the integers ``0 .. q-1``; an element encodes the coefficient
vector of its polynomial representative in base ``p`` (constant term is the
least significant digit).  Multiplication and inversion go through log and
antilog tables built from the least primitive element.
"""

from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from math import gcd
from typing import Sequence

import numpy as np

MAX_FIELD_SIZE = 2**20

Vec3 = tuple[int, int, int]
# upper triangle (m11, m12, m13, m22, m23, m33)
SymMat3 = tuple[int, int, int, int, int, int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p^k, or None."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                return None
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


# polynomials over GF(p) as coefficient lists, constant term first


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    a = [c % p for c in a]
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        c = a[-1] * inv_lead % p
        if c:
            shift = len(a) - len(m)
            for i, mc in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mc) % p
        a.pop()
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    # trial division by every monic polynomial of degree 1..deg/2
    deg = len(f) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            g = list(low) + [1]
            if not _poly_mod(f, g, p):
                return False
    return True


def least_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree k (low degree first)."""
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        f = list(low) + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # impossible


class Field:
    """The finite field GF(p^k)."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if k < 1:
            raise ValueError("degree must be positive")
        if p**k > MAX_FIELD_SIZE:
            raise ValueError(f"field size {p}^{k} exceeds {MAX_FIELD_SIZE}")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = least_irreducible(p, k)
        self._build_tables()

    def __repr__(self) -> str:
        return f"Field(GF({self.p}^{self.k}))"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self) -> int:
        return hash((self.p, self.k))

    @property
    def elements(self) -> range:
        return range(self.q)

    # -- encoding ---------------------------------------------------------

    def digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_digits(self, ds: Sequence[int]) -> int:
        acc = 0
        for d in reversed(ds):
            acc = acc * self.p + d % self.p
        return acc

    def _poly_mul_mod(self, a: int, b: int) -> int:
        da, db = self.digits(a), self.digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        red = _poly_mod(prod, list(self.modulus), self.p)
        return self.from_digits(red + [0] * (self.k - len(red)))

    def _poly_pow_mod(self, a: int, e: int) -> int:
        result, base = 1, a
        while e:
            if e & 1:
                result = self._poly_mul_mod(result, base)
            base = self._poly_mul_mod(base, base)
            e >>= 1
        return result

    def _build_tables(self) -> None:
        q = self.q
        n = q - 1
        primes = [r for r in range(2, n + 1) if n % r == 0 and is_prime(r)]
        g = next(
            g
            for g in range(1, q)
            if all(self._poly_pow_mod(g, n // r) != 1 for r in primes) and (n > 1 or g == 1)
        )
        exp = [1]
        for _ in range(n - 1):
            exp.append(self._poly_mul_mod(exp[-1], g))
        self.generator = g
        # exp table doubled so exp[log a + log b] never wraps
        self._exp = exp + exp
        self._log = [0] * q
        for i, x in enumerate(exp):
            self._log[x] = i

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return self.from_digits([-x for x in self.digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def cube(self, a: int) -> int:
        return self.pow(a, 3)

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        return self._log[a]

    def exp(self, i: int) -> int:
        return self._exp[i % (self.q - 1)]

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        return (self.q - 1) // gcd(self.log(a), self.q - 1)

    # numpy tables for vectorised constructions; only sensible for small q

    @cached_property
    def add_table(self) -> np.ndarray:
        q = self.q
        if self.p == 2:
            a = np.arange(q)
            return np.bitwise_xor.outer(a, a)
        return np.array([[self.add(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([self.neg(a) for a in range(self.q)], dtype=np.int64)

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        return np.array([[self.mul(a, b) for b in range(q)] for a in range(q)], dtype=np.int64)

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]


def field_create(p: int, k: int = 1) -> Field:
    return Field(p, k)


@lru_cache(maxsize=None)
def gf(q: int) -> Field:
    pk = prime_power(q)
    if pk is None:
        raise ValueError(f"{q} is not a prime power")
    return Field(*pk)


# -- vectors and symmetric matrices over a field ----------------------------


def vec_add(f: Field, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(f.add(a, b) for a, b in zip(u, v))


def vec_sub(f: Field, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(f.sub(a, b) for a, b in zip(u, v))


def vec_scale(f: Field, c: int, u: Sequence[int]) -> tuple[int, ...]:
    return tuple(f.mul(c, a) for a in u)


def dot(f: Field, u: Sequence[int], v: Sequence[int]) -> int:
    acc = 0
    for a, b in zip(u, v):
        acc = f.add(acc, f.mul(a, b))
    return acc


def cross(f: Field, u: Vec3, v: Vec3) -> Vec3:
    if len(u) != 3 or len(v) != 3:
        raise ValueError("cross product needs 3-vectors")
    m = f.mul
    return (
        f.sub(m(u[1], v[2]), m(u[2], v[1])),
        f.sub(m(u[2], v[0]), m(u[0], v[2])),
        f.sub(m(u[0], v[1]), m(u[1], v[0])),
    )


def vectors(f: Field, dim: int):
    """All vectors of GF(q)^dim in encoding order (first coordinate slowest)."""
    return itertools.product(range(f.q), repeat=dim)


def encode_vector(f: Field, u: Sequence[int]) -> int:
    acc = 0
    for a in u:
        acc = acc * f.q + a
    return acc


def decode_vector(f: Field, x: int, dim: int) -> tuple[int, ...]:
    out = []
    for _ in range(dim):
        x, r = divmod(x, f.q)
        out.append(r)
    return tuple(reversed(out))


def sym_full(m: SymMat3) -> list[list[int]]:
    a, b, c, d, e, g = m
    return [[a, b, c], [b, d, e], [c, e, g]]


def matrix_rank(f: Field, rows: list[list[int]]) -> int:
    a = [list(r) for r in rows]
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = f.inv(a[r][c])
        a[r] = [f.mul(inv, x) for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c]:
                factor = a[i][c]
                a[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(a[i], a[r])]
        r += 1
        if r == nrows:
            break
    return r


def sym_rank(f: Field, m: SymMat3) -> tuple[int, bool]:
    """Rank of a symmetric 3x3 matrix and whether it is alternating.

    Alternating means zero diagonal and rank 2, the only nonzero alternating
    shape in dimension 3.
    """
    r = matrix_rank(f, sym_full(m))
    alternating = r == 2 and m[0] == 0 and m[3] == 0 and m[5] == 0
    return r, alternating
