"""Exact arithmetic over prime fields and dense linear algebra over GF(p).

Matrices are stored as tuples of int rows reduced into ``[0, p)``. Elimination
is deterministic (first nonzero pivot, left to right) so nullspace bases are
reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Primality test, deterministic for n < 2**64 (and well beyond)."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p!r}")
    return p


@dataclass(frozen=True)
class FieldElement:
    """An element of GF(p)."""

    value: int
    modulus: int

    def __post_init__(self):
        require_prime(self.modulus)
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value + v, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value - v, self.modulus)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(v - self.value, self.modulus)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return FieldElement(self.value * v, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse in GF(p)")
        return FieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return v
        return self * FieldElement(v, self.modulus).inverse()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value


@dataclass(frozen=True)
class FieldMatrix:
    """Dense matrix over GF(p). ``entries`` holds ``rows`` tuples of ``cols`` ints."""

    modulus: int
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    @classmethod
    def from_rows(cls, p: int, rows: Sequence[Sequence], cols: int | None = None) -> "FieldMatrix":
        require_prime(p)
        data = []
        for row in rows:
            out = []
            for e in row:
                if isinstance(e, FieldElement):
                    if e.modulus != p:
                        raise ValueError(f"entry modulus {e.modulus} differs from matrix modulus {p}")
                    e = e.value
                out.append(int(e) % p)
            data.append(tuple(out))
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(r) != cols for r in data):
            raise ValueError("ragged matrix rows")
        return cls(p, len(data), cols, tuple(data))

    @classmethod
    def from_columns(cls, p: int, columns: Sequence[Sequence[int]], rows: int) -> "FieldMatrix":
        data = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls.from_rows(p, data, cols=len(columns))

    @classmethod
    def zeros(cls, p: int, rows: int, cols: int) -> "FieldMatrix":
        return cls.from_rows(p, [[0] * cols for _ in range(rows)], cols=cols)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        p = self.modulus
        return tuple(sum(a * b for a, b in zip(row, v)) % p for row in self.entries)

    def rank(self) -> int:
        return matrix_rank(self)

    def nullity(self) -> int:
        return self.cols - matrix_rank(self)


def _rref(rows: list[list[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form in place; returns (rows, pivot columns)."""
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        if inv != 1:
            rows[r] = [x * inv % p for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank_gf2(columns: Iterable[int]) -> int:
    # columns as int bitmasks; rank of their span over GF(2)
    basis: list[int] = []
    for v in columns:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def matrix_rank(m: FieldMatrix) -> int:
    """Rank over GF(p) by exact Gaussian elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.modulus == 2:
        cols = [sum(1 << i for i in range(m.rows) if m.entries[i][j]) for j in range(m.cols)]
        return rank_gf2(cols)
    _, pivots = _rref([list(r) for r in m.entries], m.cols, m.modulus)
    return len(pivots)


def nullspace_basis(m: FieldMatrix) -> list[tuple[int, ...]]:
    """Basis of {v : M v = 0}, one vector per free column in increasing order.

    Each vector has a 1 in its free column and zeros in the other free columns.
    """
    p = m.modulus
    rows, pivots = _rref([list(r) for r in m.entries], m.cols, p)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [0] * m.cols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f] % p
        basis.append(tuple(v))
    return basis


def row_space_basis(p: int, vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Reduced echelon basis of the span of ``vectors`` over GF(p)."""
    vectors = [[int(x) % p for x in v] for v in vectors]
    if not vectors:
        return []
    rows, pivots = _rref(vectors, len(vectors[0]), p)
    return [tuple(rows[i]) for i in range(len(pivots))]


def rational_reduce(n: int, d: int) -> Fraction:
    """Canonical reduced fraction with positive denominator."""
    if d == 0:
        raise ZeroDivisionError(f"rational_reduce({n}, 0): zero denominator")
    return Fraction(n, d)


def gcd_list(values: Iterable[int]) -> int:
    """gcd of a sequence; zeros are ignored and an all-zero list gives 0."""
    return reduce(math.gcd, (abs(v) for v in values), 0)


def lcm_list(values: Iterable[int]) -> int:
    vals = list(values)
    if not vals or any(v <= 0 for v in vals):
        raise ValueError("lcm_list needs a nonempty list of positive integers")
    return reduce(math.lcm, vals, 1)


def divisors(n: int) -> list[int]:
    """Positive divisors of n > 0 in increasing order."""
    if n <= 0:
        raise ValueError("divisors needs n > 0")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def prime_power_base(n: int) -> int | None:
    """Return p if n = p**s with s >= 1, else None."""
    if n < 2:
        return None
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return n
