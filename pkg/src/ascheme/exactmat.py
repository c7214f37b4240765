"""Exact dense linear algebra over the rationals.

Everything here is sized for intersection matrices of association schemes,
i.e. at most a few dozen rows, so plain Python integers and
:class:`fractions.Fraction` are used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, NamedTuple, Sequence


class SingularMatrixError(ArithmeticError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class RatMatrix:
    """Immutable matrix of exact rationals (stored in lowest terms)."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable]):
        rows = tuple(tuple(_frac(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self._rows = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> RatMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> RatMatrix:
        return cls([[0] * cols for _ in range(rows)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._rows[i][j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def to_int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return [[int(x) for x in r] for r in self._rows]

    def transpose(self) -> RatMatrix:
        return RatMatrix(zip(*self._rows))

    T = property(transpose)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RatMatrix([{body}])"

    def _check_same_shape(self, other: RatMatrix) -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: RatMatrix) -> RatMatrix:
        self._check_same_shape(other)
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def scale(self, c) -> RatMatrix:
        c = _frac(c)
        return RatMatrix([[c * x for x in r] for r in self._rows])

    def __matmul__(self, other: RatMatrix) -> RatMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        cols = list(zip(*other._rows))
        return RatMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self._rows])

    def apply(self, vec: Sequence) -> list[Fraction]:
        """Matrix-vector product ``self @ vec``."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum((a * _frac(b) for a, b in zip(r, vec)), Fraction(0)) for r in self._rows]

    def trace(self) -> Fraction:
        if not self.is_square:
            raise ValueError("trace of non-square matrix")
        return sum((self._rows[i][i] for i in range(self.rows)), Fraction(0))


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, coefficients stored constant term first."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        coeffs = list(int(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        if not coeffs:
            coeffs = [0]
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        coeffs = [1]
        for r in roots:
            shifted = [0] + coeffs
            for i, c in enumerate(coeffs):
                shifted[i] -= r * c
            coeffs = shifted
        return cls(tuple(coeffs))

    @property
    def degree(self) -> int:
        if self.is_zero:
            return -1
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, m: RatMatrix) -> RatMatrix:
        """Horner evaluation at a square matrix."""
        n = m.rows
        acc = RatMatrix.zeros(n, n)
        ident = RatMatrix.identity(n)
        for c in reversed(self.coefficients):
            acc = acc @ m + ident.scale(c)
        return acc

    def __str__(self) -> str:
        terms = []
        for i in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[i]
            if c == 0:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
                terms.append(f"{coef} {mono}")
            else:
                sign = "-" if c < 0 else "+"
                terms.append(f"{sign} {abs(c)}{mono}")
        if not terms:
            return "0"
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


class IntegerRoots(NamedTuple):
    roots: tuple[int, ...]
    residual_degree: int


# ---------------------------------------------------------------------------
# characteristic polynomial


def _char_poly_coeffs(m: RatMatrix) -> list[Fraction]:
    # Faddeev-LeVerrier; returns coefficients constant-term first, monic.
    # On integer input every division by k is exact, so ints are used.
    n = m.rows
    integral = m.is_integral()
    rows = m.to_int_rows() if integral else m.tolist()
    zero = 0 if integral else Fraction(0)
    coeffs = [zero] * (n + 1)
    coeffs[n] = 1
    mk = [[zero] * n for _ in range(n)]
    for k in range(1, n + 1):
        mk_cols = list(zip(*mk))
        prod = [[sum(a * b for a, b in zip(r, c)) for c in mk_cols] for r in rows]
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            prod[i][i] += c_prev
        mk = prod
        tr = sum(sum(a * b for a, b in zip(rows[i], col)) for i, col in enumerate(zip(*mk)))
        if integral:
            assert tr % k == 0
            coeffs[n - k] = -tr // k
        else:
            coeffs[n - k] = -Fraction(tr) / k
    return [Fraction(c) for c in coeffs]


def char_poly(m: RatMatrix) -> IntPolynomial:
    """det(xI - m) for a square integer matrix."""
    if not m.is_square:
        raise ValueError(f"char_poly needs a square matrix, got {m.shape}")
    if not m.is_integral():
        raise ValueError("char_poly needs integer entries")
    coeffs = _char_poly_coeffs(m)
    assert all(c.denominator == 1 for c in coeffs)
    return IntPolynomial(tuple(int(c) for c in coeffs))


def rational_char_poly(m: RatMatrix) -> list[Fraction]:
    """det(xI - m) for a square rational matrix, constant term first."""
    if not m.is_square:
        raise ValueError(f"char_poly needs a square matrix, got {m.shape}")
    return _char_poly_coeffs(m)


# ---------------------------------------------------------------------------
# integer roots via exact Sturm bisection


def _trim(p: list) -> list:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in _trim(a)]
    b = [Fraction(x) for x in _trim(b)]
    if b == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [Fraction(0)], a
    quot = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a != [0]:
        shift = len(a) - len(b)
        c = a[-1] / lead
        quot[shift] = c
        for i, bc in enumerate(b):
            a[i + shift] -= c * bc
        a = _trim(a[:-1]) if len(a) > 1 else [Fraction(0)]
    return _trim(quot), _trim(a) if a else [Fraction(0)]


def _poly_gcd(a: list, b: list) -> list:
    a, b = _trim(a), _trim(b)
    while _trim(b) != [0]:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def _derivative(p: list) -> list:
    if len(p) == 1:
        return [0]
    return [i * p[i] for i in range(1, len(p))]


def _integerize(p: list) -> list[int]:
    # positive rescaling, keeps signs of values
    den = reduce(lcm, (Fraction(c).denominator for c in p), 1)
    return [int(Fraction(c) * den) for c in p]


def _sign_at_half(p: list[int], m: int) -> int:
    # sign of p(m/2) via 2^deg * p(m/2) = sum a_i m^i 2^(deg-i)
    deg = len(p) - 1
    acc = 0
    for i, a in enumerate(p):
        acc += a * m**i * 2 ** (deg - i)
    return (acc > 0) - (acc < 0)


def _sturm_chain(p: list) -> list[list[int]]:
    chain = [_trim(p), _trim(_derivative(p))]
    while len(chain[-1]) > 1 or chain[-1] != [0]:
        _, r = _poly_divmod(chain[-2], chain[-1])
        r = [-x for x in r]
        if _trim(r) == [0]:
            break
        chain.append(_trim(r))
    return [_integerize(q) for q in chain]


def _sign_changes(chain: list[list[int]], m: int) -> int:
    signs = [s for s in (_sign_at_half(q, m) for q in chain) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _deflate(p: list[int], r: int) -> list[int] | None:
    """Divide by (x - r) if exact, else None."""
    out = [0] * (len(p) - 1)
    carry = 0
    for i in range(len(p) - 1, 0, -1):
        carry = carry * r + p[i]
        out[i - 1] = carry
    if carry * r + p[0] != 0:
        return None
    return out


def integer_roots(p: IntPolynomial) -> IntegerRoots:
    """All integer roots of a monic polynomial, with multiplicity.

    Roots are isolated exactly with a Sturm sequence of the square-free part,
    bisecting over half-integer endpoints so that integer candidates are never
    interval endpoints. Whatever does not split into integer linear factors is
    reported as ``residual_degree``.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    if not p.is_monic:
        raise ValueError("integer_roots needs a monic polynomial")
    coeffs = list(p.coefficients)
    if len(coeffs) == 1:
        return IntegerRoots((), 0)

    squarefree = _poly_divmod(coeffs, _poly_gcd(coeffs, _derivative(coeffs)))[0]
    sq = _integerize(squarefree)
    if len(sq) == 1:
        return IntegerRoots((), p.degree)
    chain = _sturm_chain(sq)
    bound = 1 + max(abs(c) for c in coeffs[:-1])
    lo, hi = -2 * bound - 1, 2 * bound + 1  # half-integer units

    candidates: list[int] = []
    stack = [(lo, hi, _sign_changes(chain, lo) - _sign_changes(chain, hi))]
    while stack:
        a, b, count = stack.pop()
        if count == 0:
            continue
        if b - a == 2:
            candidates.append((a + 1) // 2)
            continue
        mid = (a + b) // 2
        if mid % 2 == 0:  # keep endpoints at odd half-units
            mid += 1
        vm = _sign_changes(chain, mid)
        stack.append((a, mid, _sign_changes(chain, a) - vm))
        stack.append((mid, b, vm - _sign_changes(chain, b)))

    roots: list[int] = []
    rest = coeffs
    for r in sorted(candidates):
        while True:
            q = _deflate(rest, r)
            if q is None:
                break
            roots.append(r)
            rest = q
    return IntegerRoots(tuple(sorted(roots, reverse=True)), len(rest) - 1)


# ---------------------------------------------------------------------------
# elimination


def _integer_rows(m: RatMatrix) -> list[list[int]]:
    out = []
    for r in m.tolist():
        den = reduce(lcm, (x.denominator for x in r), 1)
        out.append([int(x * den) for x in r])
    return out


def _bareiss_echelon(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns)."""
    a = [list(r) for r in rows]
    nrows, ncols = len(a), len(a[0])
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        pivots.append(c)
        r += 1
    return a, pivots


def rref(m: RatMatrix) -> tuple[list[list[Fraction]], list[int]]:
    rows, pivots = _bareiss_echelon(_integer_rows(m))
    red = [[Fraction(x) for x in row] for row in rows[: len(pivots)]]
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        lead = red[k][c]
        red[k] = [x / lead for x in red[k]]
        for i in range(k):
            f = red[i][c]
            if f:
                red[i] = [x - f * y for x, y in zip(red[i], red[k])]
    return red, pivots


def rank(m: RatMatrix) -> int:
    return len(_bareiss_echelon(_integer_rows(m))[1])


def determinant(m: RatMatrix) -> Fraction:
    if not m.is_square:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    dens = [reduce(lcm, (x.denominator for x in r), 1) for r in m.tolist()]
    a = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    scale = reduce(lambda x, y: x * y, dens, 1)
    return Fraction(sign * a[n - 1][n - 1], scale)


def kernel_basis(m: RatMatrix) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column (RREF order)."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for k, c in enumerate(pivots):
            vec[c] = -red[k][f]
        basis.append(vec)
    return basis


def mat_inverse(m: RatMatrix) -> RatMatrix:
    if not m.is_square:
        raise ValueError("inverse of non-square matrix")
    n = m.rows
    aug = RatMatrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.tolist())])
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise SingularMatrixError("matrix is singular")
    return RatMatrix([row[n:] for row in red[:n]])
