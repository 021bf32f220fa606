"""Packed linear algebra over GF(2).

A length-n vector lives in a Python int: coordinate j is bit j
(little-endian), and bits at or above n are always zero.  The inner
product of two vectors is the parity of the popcount of their AND.
Reduced row echelon form, with each row's pivot at its lowest set bit
and rows listed by increasing pivot, is the unique canonical basis of a
row space, so span equality is plain tuple comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


def dot(a: int, b: int) -> int:
    """Inner product of two packed vectors: |intersection| mod 2."""
    return (a & b).bit_count() & 1


@dataclass(frozen=True)
class BitVector:
    """Immutable length-n vector over GF(2), packed into an int."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"negative length {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond declared length")

    @classmethod
    def from_string(cls, s: str) -> "BitVector":
        """Parse a '0'/'1' string; character i is coordinate i."""
        bits = 0
        for i, ch in enumerate(s):
            if ch == "1":
                bits |= 1 << i
            elif ch != "0":
                raise ValueError(f"invalid bit character {ch!r}")
        return cls(len(s), bits)

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        bits = 0
        for i in indices:
            if not 0 <= i < length:
                raise ValueError(f"coordinate {i} out of range [0, {length})")
            bits |= 1 << i
        return cls(length, bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def dot(self, other: "BitVector") -> int:
        if self.length != other.length:
            raise ValueError("length mismatch")
        return dot(self.bits, other.bits)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.length) if (self.bits >> i) & 1)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.bits ^ other.bits)

    def __str__(self) -> str:
        return "".join("1" if (self.bits >> i) & 1 else "0" for i in range(self.length))


@dataclass(frozen=True)
class BitMatrix:
    """A tuple of packed rows sharing a column count."""

    n_cols: int
    rows: tuple[int, ...] = ()

    def __post_init__(self):
        for r in self.rows:
            if r < 0 or r >> self.n_cols:
                raise ValueError("row has bits beyond n_cols")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @classmethod
    def from_vectors(cls, vectors: Sequence[BitVector]) -> "BitMatrix":
        if not vectors:
            raise ValueError("cannot infer width from an empty vector list")
        n = vectors[0].length
        for v in vectors:
            if v.length != n:
                raise ValueError("length mismatch among inputs")
        return cls(n, tuple(v.bits for v in vectors))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "BitMatrix":
        return cls.from_vectors([BitVector.from_string(s) for s in rows])

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, tuple(1 << i for i in range(n)))

    @classmethod
    def zero(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_cols, (0,) * n_rows)

    def row_vectors(self) -> tuple[BitVector, ...]:
        return tuple(BitVector(self.n_cols, r) for r in self.rows)

    def __iter__(self) -> Iterator[int]:
        return iter(self.rows)


class IncrementalRref:
    """Streaming reduced-row-echelon accumulator.

    Rows may be inserted in any order; the state after each insert is the
    unique RREF of the span so far, so the final basis does not depend on
    insertion order.
    """

    def __init__(self, n_cols: int):
        self.n_cols = n_cols
        self._rows: dict[int, int] = {}  # pivot -> fully reduced row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def reduce(self, bits: int) -> int:
        """Remainder of bits after reduction against the current basis."""
        v = bits
        while v:
            p = (v & -v).bit_length() - 1
            row = self._rows.get(p)
            if row is None:
                return v
            v ^= row
        return 0

    def contains(self, bits: int) -> bool:
        return self.reduce(bits) == 0

    def add(self, bits: int) -> bool:
        """Insert a vector; True if it enlarged the span."""
        v = bits
        while v:
            p = (v & -v).bit_length() - 1
            row = self._rows.get(p)
            if row is None:
                # clear every existing pivot above p from the new row,
                # then clear column p from every existing row
                for q, r in self._rows.items():
                    if (v >> q) & 1:
                        v ^= r
                for q, r in list(self._rows.items()):
                    if (r >> p) & 1:
                        self._rows[q] = r ^ v
                self._rows[p] = v
                return True
            v ^= row
        return False

    def pivots(self) -> tuple[int, ...]:
        return tuple(sorted(self._rows))

    def basis(self) -> BitMatrix:
        return BitMatrix(self.n_cols, tuple(self._rows[p] for p in sorted(self._rows)))


def rref(m: BitMatrix) -> tuple[BitMatrix, int, tuple[int, ...]]:
    """Unique reduced row echelon form, its rank, and the pivot columns."""
    acc = IncrementalRref(m.n_cols)
    for row in m.rows:
        acc.add(row)
    return acc.basis(), acc.rank, acc.pivots()


def span_basis(vectors: Sequence[BitVector]) -> BitMatrix:
    """RREF basis of the span; zero and duplicate inputs are ignored."""
    if not vectors:
        return BitMatrix(0)
    n = vectors[0].length
    acc = IncrementalRref(n)
    for v in vectors:
        if v.length != n:
            raise ValueError("length mismatch among inputs")
        acc.add(v.bits)
    return acc.basis()


def member(basis: BitMatrix, v: BitVector) -> bool:
    """Whether v lies in the row space; basis must be in RREF."""
    if basis.n_cols != v.length:
        raise ValueError("length mismatch")
    pivot_rows = {(r & -r).bit_length() - 1: r for r in basis.rows if r}
    w = v.bits
    while w:
        p = (w & -w).bit_length() - 1
        row = pivot_rows.get(p)
        if row is None:
            return False
        w ^= row
    return True


def code_equal(a: BitMatrix, b: BitMatrix) -> bool:
    """Span equality of two RREF bases: bit-exact row comparison."""
    if a.n_cols != b.n_cols:
        raise ValueError("length mismatch")
    return a.rows == b.rows


def nullspace_basis(m: BitMatrix) -> BitMatrix:
    """RREF basis of {v : every row r of m has dot(r, v) = 0}."""
    reduced, _, pivots = rref(m)
    pivot_set = set(pivots)
    acc = IncrementalRref(m.n_cols)
    for free in range(m.n_cols):
        if free in pivot_set:
            continue
        v = 1 << free
        for p, row in zip(pivots, reduced.rows):
            if (row >> free) & 1:
                v |= 1 << p
        acc.add(v)
    return acc.basis()


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product: row i of the result XORs the rows of b selected by row i of a."""
    if a.n_cols != b.n_rows:
        raise ValueError("inner dimension mismatch")
    out = []
    for row in a.rows:
        acc = 0
        r = row
        while r:
            j = (r & -r).bit_length() - 1
            acc ^= b.rows[j]
            r &= r - 1
        out.append(acc)
    return BitMatrix(b.n_cols, tuple(out))


def transpose(m: BitMatrix, n_rows: int | None = None) -> BitMatrix:
    rows = [0] * m.n_cols
    for i, r in enumerate(m.rows):
        while r:
            j = (r & -r).bit_length() - 1
            rows[j] |= 1 << i
            r &= r - 1
    return BitMatrix(n_rows if n_rows is not None else m.n_rows, tuple(rows))


def solve(m: BitMatrix, rhs: int) -> int | None:
    """One solution x of m.x = rhs (rows dot x = rhs bits), or None.

    rhs packs the right-hand side of equation i into bit i.
    """
    if rhs < 0 or rhs >> m.n_rows:
        raise ValueError("rhs has bits beyond the number of equations")
    width = m.n_cols
    acc = IncrementalRref(width + 1)
    for i, row in enumerate(m.rows):
        acc.add(row | (((rhs >> i) & 1) << width))
    solution = 0
    for p in acc.pivots():
        if p == width:
            return None
        row = acc._rows[p]
        if (row >> width) & 1:
            solution |= 1 << p
    return solution


def kernel_ints(rows: Sequence[int], n_cols: int) -> list[int]:
    """Kernel basis of the linear map x -> (dot(row_i, x))_i, as packed ints."""
    return list(nullspace_basis(BitMatrix(n_cols, tuple(rows))).rows)


def rank_ints(rows: Iterable[int]) -> int:
    """Rank of a family of packed rows (forward elimination only)."""
    table: dict[int, int] = {}
    for v in rows:
        while v:
            p = (v & -v).bit_length() - 1
            row = table.get(p)
            if row is None:
                table[p] = v
                break
            v ^= row
    return len(table)
