"""The affine groups T semidirect SL(m, 2^r) acting on Omega = GF(2^r)^m,
their involutions, and fixed-point sets.

Elements are pairs (t, h): the map x -> h*x + t.  The composition law is
(t1, h1)(t2, h2) = (t1 + h1*t2, h1*h2), the right factor acting first.
Involutions of the semidirect product are exactly the nonzero
translations together with the pairs (t, h) where h is an involution of
SL(m, 2^r) and (I + h)t = 0; that characterization follows from squaring
the composition law and is cross-checked against brute force in tests.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import ResourceCapError
from .fields import FieldSpec, FqMatrix, field, flat_apply_all, flatten, point_index, point_unindex
from .gf2 import BitMatrix, BitVector, kernel_ints, solve

DEFAULT_SCAN_CAP_BITS = 30
_SCAN_CHUNK = 1 << 22


@dataclass(frozen=True)
class AffineGroupSpec:
    """Parameters of G = T semidirect SL(m, 2^r) acting on the 2^(r*m) points
    of T = GF(2^r)^m."""

    r: int
    m: int

    def __post_init__(self):
        if self.r < 1 or self.m < 1:
            raise ValueError("need r >= 1 and m >= 1")

    @property
    def field(self) -> FieldSpec:
        return field(self.r)

    @property
    def q(self) -> int:
        return 1 << self.r

    @property
    def n(self) -> int:
        return 1 << (self.r * self.m)

    @property
    def flat_dim(self) -> int:
        return self.r * self.m


@dataclass(frozen=True)
class GroupElement:
    """An affine map x -> h*x + t on Omega; t is a packed point index."""

    t: int
    h: FqMatrix

    def compose(self, other: "GroupElement") -> "GroupElement":
        spec_field = self.h.field
        m = self.h.m
        ht = point_index(
            _mat_vec(self.h, point_unindex(other.t, spec_field, m)), spec_field
        )
        return GroupElement(self.t ^ ht, self.h * other.h)

    def inverse(self) -> "GroupElement":
        hinv = self.h.inv()
        spec_field = self.h.field
        ht = point_index(_mat_vec(hinv, point_unindex(self.t, spec_field, self.h.m)), spec_field)
        return GroupElement(ht, hinv)

    def act(self, x: int) -> int:
        spec_field = self.h.field
        y = _mat_vec(self.h, point_unindex(x, spec_field, self.h.m))
        return point_index(y, spec_field) ^ self.t

    def is_identity(self) -> bool:
        return self.t == 0 and self.h.is_identity()

    def is_involution(self) -> bool:
        return not self.is_identity() and self.compose(self).is_identity()


@dataclass
class InvolutionSet:
    """All involutions of G, with how they were obtained."""

    spec: AffineGroupSpec
    elements: list[GroupElement]
    provenance: str  # "structural" | "scan"


def _mat_vec(h: FqMatrix, v: tuple[int, ...]) -> tuple[int, ...]:
    f = h.field
    return tuple(
        _xor_all(f.mul(h.entries[i][j], v[j]) for j in range(h.m)) for i in range(h.m)
    )


def _xor_all(items) -> int:
    acc = 0
    for x in items:
        acc ^= x
    return acc


def sl_order(m: int, q: int) -> int:
    """|SL(m, q)| = q^(m(m-1)/2) * prod_{i=2..m} (q^i - 1)."""
    if m < 1 or q < 2:
        raise ValueError("need m >= 1 and a prime power q >= 2")
    order = q ** (m * (m - 1) // 2)
    for i in range(2, m + 1):
        order *= q**i - 1
    return order


# -- involution scan over the full matrix space --------------------------------

_scan_cache: dict[tuple[int, int], tuple[FqMatrix, ...]] = {}


def scan_involutions_H(
    spec: AffineGroupSpec,
    *,
    scan_cap_bits: int = DEFAULT_SCAN_CAP_BITS,
    workers: int = 1,
    cache: bool = True,
) -> tuple[FqMatrix, ...]:
    """All h in SL(m, 2^r) with h^2 = I, h != I, by scanning every m-by-m
    matrix over GF(2^r).

    The scan space has q^(m*m) candidates; it is chunked (fixed chunk size,
    so results do not depend on the worker count) and filtered entry by
    entry with vectorized table lookups.  Output is sorted by packed matrix
    index.  In characteristic 2 an involution automatically has determinant
    one; the det filter stays as a cheap final assertion.
    """
    key = (spec.r, spec.m)
    if cache and key in _scan_cache:
        return _scan_cache[key]
    bits = spec.r * spec.m * spec.m
    if bits > scan_cap_bits:
        raise ResourceCapError(
            f"involution scan needs 2^{bits} candidates, above the configured "
            f"cap 2^{scan_cap_bits}; raise --scan-cap to at least {bits}"
        )
    f = spec.field
    chunks = [
        (lo, min(lo + _SCAN_CHUNK, 1 << bits)) for lo in range(0, 1 << bits, _SCAN_CHUNK)
    ]
    if workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _scan_chunk(f, spec.m, *c), chunks))
    else:
        parts = [_scan_chunk(f, spec.m, *c) for c in chunks]
    indexes = sorted(int(i) for part in parts for i in part)
    out = []
    for idx in indexes:
        h = FqMatrix.from_index(f, spec.m, idx)
        if h.det() != 1:
            raise AssertionError("involution with determinant != 1 (impossible in char 2)")
        out.append(h)
    result = tuple(out)
    if cache:
        _scan_cache[key] = result
    return result


def _scan_chunk(f: FieldSpec, m: int, lo: int, hi: int) -> np.ndarray:
    """Packed indexes in [lo, hi) whose matrix squares to the identity."""
    r = f.r
    mask = f.q - 1
    alive = np.arange(lo, hi, dtype=np.int64)
    mul = f.mul_table() if r > 1 else None
    for i in range(m):
        for j in range(m):
            if not len(alive):
                return alive
            acc = None
            for k in range(m):
                a = (alive >> (r * (i * m + k))) & mask
                b = (alive >> (r * (k * m + j))) & mask
                term = (a & b) if r == 1 else mul[(a << r) | b].astype(np.int64)
                acc = term if acc is None else acc ^ term
            alive = alive[acc == (1 if i == j else 0)]
    ident = FqMatrix.identity(f, m).to_index()
    return alive[alive != ident]


def involutions_H_brute(spec: AffineGroupSpec) -> tuple[FqMatrix, ...]:
    """Reference involution list: square every det-1 matrix individually."""
    f = spec.field
    out = []
    for idx in range(1 << (spec.r * spec.m * spec.m)):
        h = FqMatrix.from_index(f, spec.m, idx)
        if h.det() == 1 and h.is_involution():
            out.append(h)
    return tuple(out)


def enumerate_H(spec: AffineGroupSpec, *, scan_cap_bits: int = DEFAULT_SCAN_CAP_BITS) -> list[FqMatrix]:
    """Every element of SL(m, 2^r), by determinant filter over the matrix space."""
    bits = spec.r * spec.m * spec.m
    if bits > scan_cap_bits:
        raise ResourceCapError(
            f"full group enumeration needs 2^{bits} candidates, above cap 2^{scan_cap_bits}"
        )
    f = spec.field
    return [
        h
        for idx in range(1 << bits)
        if (h := FqMatrix.from_index(f, spec.m, idx)).det() == 1
    ]


def involutions_G(
    spec: AffineGroupSpec,
    *,
    scan_cap_bits: int = DEFAULT_SCAN_CAP_BITS,
    workers: int = 1,
) -> InvolutionSet:
    """All involutions of G: nonzero translations plus (t, h) with h an
    involution of H and t in ker(I + h)."""
    f = spec.field
    ident = FqMatrix.identity(f, spec.m)
    elements = [GroupElement(t, ident) for t in range(1, spec.n)]
    for h in scan_involutions_H(spec, scan_cap_bits=scan_cap_bits, workers=workers):
        flat = flatten(h.add_identity())
        for t in _span_points(kernel_ints(flat.rows, flat.n_cols)):
            elements.append(GroupElement(t, h))
    return InvolutionSet(spec, elements, "structural")


def involutions_G_brute(spec: AffineGroupSpec) -> InvolutionSet:
    """Reference involution list of G: square all |T|*|H| candidate pairs."""
    elements = []
    for h in enumerate_H(spec):
        for t in range(spec.n):
            g = GroupElement(t, h)
            if g.is_involution():
                elements.append(g)
    return InvolutionSet(spec, elements, "scan")


def _span_points(basis: list[int]) -> list[int]:
    """All XOR combinations of the given packed basis vectors."""
    points = [0]
    for b in basis:
        points += [p ^ b for p in points]
    return points


# -- fixed-point sets -----------------------------------------------------------


def fix_set(g: GroupElement, spec: AffineGroupSpec) -> BitVector:
    """Indicator of {x : h*x + t = x}, i.e. the solutions of (I + h)x = t.

    Empty, or an affine coset of ker(I + h) of size 2^dim ker.
    """
    flat = flatten(g.h.add_identity())
    if g.h.is_involution():
        # char-2 sanity: (I + h)^2 = 0, so the image must sit inside the kernel
        squared = _flat_square(flat)
        if any(squared.rows):
            raise AssertionError("(I + h)^2 != 0 for an involution h")
    x0 = solve(flat, g.t)
    if x0 is None:
        return BitVector(spec.n)
    bits = 0
    for p in _span_points(kernel_ints(flat.rows, flat.n_cols)):
        bits |= 1 << (x0 ^ p)
    return BitVector(spec.n, bits)


def _flat_square(m: BitMatrix) -> BitMatrix:
    out = []
    for row in m.rows:
        acc = 0
        r = row
        while r:
            j = (r & -r).bit_length() - 1
            acc ^= m.rows[j]
            r &= r - 1
        out.append(acc)
    return BitMatrix(m.n_cols, tuple(out))


def fix_set_brute(g: GroupElement, spec: AffineGroupSpec) -> BitVector:
    """Fixed-point indicator by acting on every point (test oracle)."""
    bits = 0
    for x in range(spec.n):
        if g.act(x) == x:
            bits |= 1 << x
    return BitVector(spec.n, bits)


def fiber_fix_indicators(h: FqMatrix, spec: AffineGroupSpec) -> dict[int, int]:
    """For an involution h: t -> indicator of {x : (I + h)x = t}, for every t
    in the image of I + h.

    Those fibers partition Omega, and every fiber index t automatically lies
    in ker(I + h), so each (t, h) here is an involution of G and the values
    are exactly the nonempty fixed-point sets attached to h.
    """
    flat = flatten(h.add_identity())
    images = flat_apply_all(flat)
    out: dict[int, int] = {}
    for x, t in enumerate(images.tolist()):
        out[t] = out.get(t, 0) | (1 << x)
    return out


def permutation_of(g: GroupElement, spec: AffineGroupSpec) -> list[int]:
    """The permutation x -> g(x) of the point set, as a list."""
    flat = flatten(g.h)
    images = flat_apply_all(flat) ^ g.t
    return [int(v) for v in images]


# -- generators and random elements ---------------------------------------------


def structural_generators(spec: AffineGroupSpec) -> list[GroupElement]:
    """Basis translations plus the elementary transvections I + x^p*E_ij;
    together they generate G."""
    f = spec.field
    ident = FqMatrix.identity(f, spec.m)
    gens = [GroupElement(1 << b, ident) for b in range(spec.flat_dim)]
    for i in range(spec.m):
        for j in range(spec.m):
            if i == j:
                continue
            for p in range(spec.r):
                entries = [list(row) for row in ident.entries]
                entries[i][j] = 1 << p
                gens.append(GroupElement(0, FqMatrix(f, tuple(tuple(row) for row in entries))))
    return gens


def random_element(spec: AffineGroupSpec, seed: int) -> GroupElement:
    """Seeded pseudo-random element of G: a product of elementary
    transvections paired with a random translation."""
    rng = random.Random(seed)
    f = spec.field
    h = FqMatrix.identity(f, spec.m)
    if spec.m > 1:
        for _ in range(4 * spec.m * max(1, spec.r)):
            i = rng.randrange(spec.m)
            j = rng.randrange(spec.m - 1)
            if j >= i:
                j += 1
            c = rng.randrange(1, spec.q)
            entries = [list(row) for row in FqMatrix.identity(f, spec.m).entries]
            entries[i][j] = c
            h = h * FqMatrix(f, tuple(tuple(row) for row in entries))
    return GroupElement(rng.randrange(spec.n), h)


def fixed_dim_flat(h: FqMatrix) -> int:
    """dim over GF(2) of ker(I + h) in the flattened representation."""
    flat = flatten(h.add_identity())
    return len(kernel_ints(flat.rows, flat.n_cols))
