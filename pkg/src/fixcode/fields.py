"""GF(2^r) arithmetic, matrices over GF(2^r), and their GF(2) flattening.

Field elements are r-bit masks holding polynomial-basis coefficients
(x^0 at bit 0).  A vector in GF(2^r)^m is addressed by a single point
index: coordinate j occupies bits [r*j, r*j + r), coordinate 0 least
significant.  That packing is shared by every consumer so fixed-point
indicators, classical code constructions, and flattened matrices all
agree on which coordinate is which.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .gf2 import BitMatrix

# Fixed primitive moduli, one per extension degree (bit i = coefficient of x^i).
MODULI = {
    2: 0b111,        # x^2 + x + 1
    3: 0b1011,       # x^3 + x + 1
    4: 0b10011,      # x^4 + x + 1
    5: 0b100101,     # x^5 + x^2 + 1
    6: 0b1000011,    # x^6 + x + 1
    7: 0b10001001,   # x^7 + x^3 + 1
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
}

MAX_DEGREE = 8


class FieldSpec:
    """Log/antilog tables for GF(2^r) under the fixed modulus for r."""

    __slots__ = ("r", "q", "modulus", "exp", "log", "_mul_table")

    def __init__(self, r: int):
        if not 1 <= r <= MAX_DEGREE:
            raise ValueError(f"extension degree {r} outside supported range 1..{MAX_DEGREE}")
        self.r = r
        self.q = 1 << r
        self.modulus = MODULI.get(r)
        self._mul_table = None
        if r == 1:
            self.exp = [1]
            self.log = [0, 0]
            return
        exp = []
        seen = set()
        x = 1
        for _ in range(self.q - 1):
            exp.append(x)
            seen.add(x)
            x <<= 1
            if x >> r:
                x ^= self.modulus
        if x != 1 or len(seen) != self.q - 1:
            raise AssertionError(f"modulus {self.modulus:#x} is not primitive for r={r}")
        log = [0] * self.q
        for i, v in enumerate(exp):
            log[v] = i
        self.exp = exp
        self.log = log

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.r == 1:
            return 1
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(2^r)")
        if self.r == 1:
            return 1
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e == 0:
            return 1
        if a == 0:
            return 0
        if self.r == 1:
            return 1
        return self.exp[(self.log[a] * e) % (self.q - 1)]

    def mul_table(self) -> np.ndarray:
        """Flat q*q multiplication table; entry (a << r) | b is a*b."""
        if self._mul_table is None:
            table = np.zeros(self.q * self.q, dtype=np.uint8 if self.q <= 256 else np.uint16)
            for a in range(1, self.q):
                for b in range(1, self.q):
                    table[(a << self.r) | b] = self.mul(a, b)
            self._mul_table = table
        return self._mul_table

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldSpec) and other.r == self.r

    def __hash__(self) -> int:
        return hash(("FieldSpec", self.r))

    def __repr__(self) -> str:
        return f"FieldSpec(r={self.r})"


@functools.lru_cache(maxsize=None)
def field(r: int) -> FieldSpec:
    return FieldSpec(r)


@dataclass(frozen=True)
class FqMatrix:
    """Square matrix over GF(2^r); entries[i][j] is row i, column j."""

    field: FieldSpec
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.entries)
        for row in self.entries:
            if len(row) != m:
                raise ValueError("matrix must be square")
            for e in row:
                if not 0 <= e < self.field.q:
                    raise ValueError(f"entry {e} outside GF(2^{self.field.r})")

    @property
    def m(self) -> int:
        return len(self.entries)

    @classmethod
    def from_rows(cls, f: FieldSpec, rows: Sequence[Sequence[int]]) -> "FqMatrix":
        return cls(f, tuple(tuple(r) for r in rows))

    @classmethod
    def identity(cls, f: FieldSpec, m: int) -> "FqMatrix":
        return cls(f, tuple(tuple(1 if i == j else 0 for j in range(m)) for i in range(m)))

    @classmethod
    def from_index(cls, f: FieldSpec, m: int, index: int) -> "FqMatrix":
        """Inverse of to_index: entry (i, j) sits at bit r*(i*m + j)."""
        mask = f.q - 1
        return cls(
            f,
            tuple(
                tuple((index >> (f.r * (i * m + j))) & mask for j in range(m))
                for i in range(m)
            ),
        )

    def to_index(self) -> int:
        idx = 0
        m = self.m
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                idx |= e << (self.field.r * (i * m + j))
        return idx

    def hex_string(self) -> str:
        """Row-major entries, each as a fixed-width hex group."""
        width = max(1, (self.field.r + 3) // 4)
        return "".join(f"{e:0{width}x}" for row in self.entries for e in row)

    def __mul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.field != other.field or self.m != other.m:
            raise ValueError("size or field mismatch")
        f, m = self.field, self.m
        a, b = self.entries, other.entries
        out = []
        for i in range(m):
            row = []
            for j in range(m):
                acc = 0
                for k in range(m):
                    acc ^= f.mul(a[i][k], b[k][j])
                row.append(acc)
            out.append(tuple(row))
        return FqMatrix(f, tuple(out))

    def square(self) -> "FqMatrix":
        return self * self

    def add(self, other: "FqMatrix") -> "FqMatrix":
        if self.field != other.field or self.m != other.m:
            raise ValueError("size or field mismatch")
        return FqMatrix(
            self.field,
            tuple(
                tuple(a ^ b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            ),
        )

    def add_identity(self) -> "FqMatrix":
        return self.add(FqMatrix.identity(self.field, self.m))

    def is_identity(self) -> bool:
        return self == FqMatrix.identity(self.field, self.m)

    def is_involution(self) -> bool:
        return not self.is_identity() and self.square().is_identity()

    def det(self) -> int:
        f, m = self.field, self.m
        a = [list(row) for row in self.entries]
        d = 1
        for col in range(m):
            piv = next((i for i in range(col, m) if a[i][col]), None)
            if piv is None:
                return 0
            if piv != col:
                a[col], a[piv] = a[piv], a[col]  # char 2: swaps leave det alone
            d = f.mul(d, a[col][col])
            inv = f.inv(a[col][col])
            for i in range(col + 1, m):
                if a[i][col]:
                    factor = f.mul(a[i][col], inv)
                    for j in range(col, m):
                        a[i][j] ^= f.mul(factor, a[col][j])
        return d

    def inv(self) -> "FqMatrix":
        f, m = self.field, self.m
        a = [list(row) + [1 if i == j else 0 for j in range(m)] for i, row in enumerate(self.entries)]
        for col in range(m):
            piv = next((i for i in range(col, m) if a[i][col]), None)
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            if piv != col:
                a[col], a[piv] = a[piv], a[col]
            invp = f.inv(a[col][col])
            a[col] = [f.mul(invp, e) for e in a[col]]
            for i in range(m):
                if i != col and a[i][col]:
                    factor = a[i][col]
                    a[i] = [e ^ f.mul(factor, p) for e, p in zip(a[i], a[col])]
        return FqMatrix(f, tuple(tuple(row[m:]) for row in a))


def point_index(v: Sequence[int], f: FieldSpec) -> int:
    """Pack a GF(2^r)^m vector into its point index (coordinate 0 at bit 0)."""
    idx = 0
    for j, e in enumerate(v):
        if not 0 <= e < f.q:
            raise ValueError(f"coordinate value {e} outside GF(2^{f.r})")
        idx |= e << (f.r * j)
    return idx

def point_unindex(idx: int, f: FieldSpec, m: int) -> tuple[int, ...]:
    if not 0 <= idx < 1 << (f.r * m):
        raise ValueError(f"point index {idx} out of range for GF(2^{f.r})^{m}")
    mask = f.q - 1
    return tuple((idx >> (f.r * j)) & mask for j in range(m))


def flatten(h: FqMatrix) -> BitMatrix:
    """GF(2) matrix of the same linear map on GF(2)^(r*m).

    Uses the polynomial basis in point-index order, so applying the
    flattened matrix to a packed point index equals packing h applied to
    the unpacked vector.  flatten(A*B) = flatten(A)*flatten(B).
    """
    f, m = h.field, h.m
    r = f.r
    width = r * m
    rows = [0] * width
    for j in range(m):
        for p in range(r):
            col = r * j + p
            xp = 1 << p  # the field element x^p
            for i in range(m):
                w = f.mul(h.entries[i][j], xp)
                while w:
                    b = (w & -w).bit_length() - 1
                    rows[r * i + b] |= 1 << col
                    w &= w - 1
    return BitMatrix(width, tuple(rows))


def flat_columns(m: BitMatrix) -> list[int]:
    """Column masks of a flattened matrix (column j as a packed int)."""
    cols = [0] * m.n_cols
    for i, row in enumerate(m.rows):
        r = row
        while r:
            j = (r & -r).bit_length() - 1
            cols[j] |= 1 << i
            r &= r - 1
    return cols


def flat_apply(m: BitMatrix, x: int) -> int:
    """Apply a flattened matrix to one packed vector."""
    y = 0
    for i, row in enumerate(m.rows):
        y |= ((row & x).bit_count() & 1) << i
    return y


def flat_apply_all(m: BitMatrix) -> np.ndarray:
    """Images of every packed vector 0..2^width-1 under a flattened matrix."""
    width = m.n_cols
    cols = flat_columns(m)
    x = np.arange(1 << width, dtype=np.int64)
    y = np.zeros_like(x)
    for j, c in enumerate(cols):
        y ^= ((x >> j) & 1) * c
    return y
