"""Binary linear codes: duality, self-orthogonality, weight enumeration,
exact minimum weight, and the doubly-even extremality bound.

A code is stored by the unique RREF of any generating set, so two codes
are equal exactly when their stored generator rows are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import PreconditionError, ResourceCapError
from .gf2 import BitMatrix, BitVector, IncrementalRref, code_equal, dot, member, nullspace_basis, rref

EXHAUSTIVE_DIM_LIMIT = 26  # default cap on k for full codeword enumeration
BZ_WEIGHT_CAP = 16         # default cap on information weight in min_weight("bz")


@dataclass(frozen=True)
class WeightEnumerator:
    """counts[w] = number of codewords of weight w."""

    counts: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def total(self) -> int:
        return sum(self.counts)

    def min_weight(self) -> int:
        for w in range(1, len(self.counts)):
            if self.counts[w]:
                return w
        raise ValueError("zero code has no nonzero codeword")

    def nonzero(self) -> dict[int, int]:
        return {w: c for w, c in enumerate(self.counts) if c}


class LinearCode:
    """A binary [n, k] code held as the RREF of its generator matrix."""

    def __init__(self, n: int, generators: BitMatrix):
        if generators.n_cols != n:
            raise ValueError("generator width disagrees with code length")
        reduced, rank, _ = rref(generators)
        if rank != generators.n_rows:
            # make_code() is the lenient entry point; reaching here means the
            # caller handed a dependent row set as if it were a basis.
            raise ValueError("generators are not linearly independent")
        self.n = n
        self.k = rank
        self.generators = reduced
        self._min_weight: int | None = None
        self._enumerator: WeightEnumerator | None = None

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LinearCode)
            and other.n == self.n
            and other.generators.rows == self.generators.rows
        )

    def __hash__(self) -> int:
        return hash((self.n, self.generators.rows))

    def __repr__(self) -> str:
        return f"LinearCode[{self.n}, {self.k}]"

    def dual(self) -> "LinearCode":
        return LinearCode(self.n, nullspace_basis(self.generators))

    def is_self_orthogonal(self) -> bool:
        rows = self.generators.rows
        return all(
            dot(rows[i], rows[j]) == 0 for i in range(len(rows)) for j in range(i, len(rows))
        )

    def is_self_dual(self) -> bool:
        return 2 * self.k == self.n and self.is_self_orthogonal()

    def is_doubly_even(self) -> bool:
        # Every generator weight divisible by 4 plus pairwise even overlaps
        # forces wt(u + v) = wt(u) + wt(v) - 2|u & v| = 0 mod 4 inductively.
        rows = self.generators.rows
        if any(r.bit_count() % 4 for r in rows):
            return False
        return all(
            dot(rows[i], rows[j]) == 0
            for i in range(len(rows))
            for j in range(i + 1, len(rows))
        )

    def codewords(self) -> Iterable[int]:
        """All 2^k codewords, Gray-code order (small k only)."""
        word = 0
        yield word
        rows = self.generators.rows
        for g in range(1, 1 << self.k):
            word ^= rows[(g & -g).bit_length() - 1]  # Gray step flips one row
            yield word

    def weight_enumerator(self, dim_limit: int = EXHAUSTIVE_DIM_LIMIT) -> WeightEnumerator:
        if self._enumerator is None:
            if self.k > dim_limit:
                raise ResourceCapError(
                    f"weight enumeration of a dimension-{self.k} code exceeds the "
                    f"exhaustive limit {dim_limit}"
                )
            counts = _enumerate_weights(self.generators, count=True)
            self._enumerator = WeightEnumerator(tuple(int(c) for c in counts) + (0,) * (self.n + 1 - len(counts)))
        return self._enumerator

    def min_weight(
        self,
        method: str = "auto",
        *,
        dim_limit: int = EXHAUSTIVE_DIM_LIMIT,
        bz_weight_cap: int = BZ_WEIGHT_CAP,
    ) -> int:
        """Exact minimum nonzero codeword weight.

        method "exhaustive" enumerates all 2^k codewords (k <= dim_limit);
        "bz" runs information-set enumeration over disjoint information
        sets with accumulating lower bounds; "auto" picks by dimension.
        """
        if self.k == 0:
            raise ValueError("zero code has no minimum weight")
        if self._min_weight is not None:
            return self._min_weight
        if method == "auto":
            method = "exhaustive" if self.k <= dim_limit else "bz"
        if method == "exhaustive":
            if self.k > dim_limit:
                raise ResourceCapError(
                    f"exhaustive minimum weight of a dimension-{self.k} code exceeds "
                    f"the limit {dim_limit}"
                )
            d = int(_enumerate_weights(self.generators, count=False))
        elif method == "bz":
            d = _bz_min_weight(self.generators, weight_cap=bz_weight_cap)
        else:
            raise ValueError(f"unknown minimum-weight method {method!r}")
        self._min_weight = d
        return d

    def is_invariant_under(self, perm: Sequence[int]) -> bool:
        """Whether permuting coordinates by perm (old index -> new index)
        maps the code onto itself."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the coordinate set")
        acc = IncrementalRref(self.n)
        for row in self.generators.rows:
            image = 0
            r = row
            while r:
                j = (r & -r).bit_length() - 1
                image |= 1 << perm[j]
                r &= r - 1
            acc.add(image)
        return acc.basis().rows == self.generators.rows

    def contains(self, v: BitVector) -> bool:
        return member(self.generators, v)

    def save(self, path: str | Path) -> None:
        save_code(self, path)


def make_code(rows: Sequence[BitVector], n: int) -> LinearCode:
    """Canonical code spanned by the given vectors (any rank, any order)."""
    acc = IncrementalRref(n)
    for v in rows:
        if v.length != n:
            raise ValueError("length mismatch")
        acc.add(v.bits)
    return LinearCode(n, acc.basis())


def code_from_ints(rows: Iterable[int], n: int) -> LinearCode:
    acc = IncrementalRref(n)
    for bits in rows:
        acc.add(bits)
    return LinearCode(n, acc.basis())


def extremal_bound(n: int) -> int:
    """Upper bound 4*floor(n/24) + 4 on the minimum weight of a doubly even
    self-dual code of length n."""
    if n <= 0 or n % 8:
        raise ValueError(f"length {n} is not a positive multiple of 8")
    return 4 * (n // 24) + 4


def is_extremal(code: LinearCode, **min_weight_kwargs) -> bool:
    """Whether a doubly even self-dual code meets the extremality bound."""
    if not code.is_self_dual():
        raise PreconditionError("extremality is defined for self-dual codes only")
    if not code.is_doubly_even():
        raise PreconditionError("extremality is defined for doubly even codes only")
    return code.min_weight(**min_weight_kwargs) == extremal_bound(code.n)


# -- exhaustive enumeration ---------------------------------------------------

_LO_BITS = 18  # suffix-table size for blockwise codeword generation


def _pack_rows(m: BitMatrix) -> np.ndarray:
    """Rows as a (k, words) uint64 array."""
    words = max(1, (m.n_cols + 63) // 64)
    out = np.zeros((m.n_rows, words), dtype=np.uint64)
    for i, row in enumerate(m.rows):
        for w in range(words):
            out[i, w] = (row >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def _enumerate_weights(gens: BitMatrix, count: bool):
    """Full 2^k scan; returns the weight histogram or the minimum weight.

    Codewords are generated as suffix-table blocks XORed with every prefix
    combination, so the heavy work is vectorized popcounts.
    """
    k = gens.n_rows
    n = gens.n_cols
    rows = _pack_rows(gens)
    k_lo = min(k, _LO_BITS)
    table = np.zeros((1, rows.shape[1]), dtype=np.uint64)
    for i in range(k_lo):
        table = np.concatenate([table, table ^ rows[i]])
    hi_rows = rows[k_lo:]
    counts = np.zeros(n + 1, dtype=np.int64) if count else None
    best = None
    for prefix_id in range(1 << (k - k_lo)):
        prefix = np.zeros(rows.shape[1], dtype=np.uint64)
        g = prefix_id
        while g:
            i = (g & -g).bit_length() - 1
            prefix ^= hi_rows[i]
            g &= g - 1
        weights = np.bitwise_count(table ^ prefix)
        w = weights.sum(axis=1).astype(np.int64) if weights.ndim > 1 else weights.astype(np.int64)
        if count:
            counts += np.bincount(w, minlength=n + 1)
        else:
            if prefix_id == 0:
                w = w[1:]  # skip the zero codeword
            m = int(w.min()) if len(w) else None
            if m is not None and (best is None or m < best):
                best = m
    return counts if count else best


# -- information-set minimum weight -------------------------------------------


def _reduce_on_columns(rows: Sequence[int], n: int, col_order: Sequence[int]):
    """Gaussian elimination choosing pivots along col_order.

    Returns (reduced rows, pivot columns); rows are fully reduced on the
    pivot columns, so a codeword's combination vector can be read off its
    restriction to the pivots.
    """
    work = list(rows)
    pivots = []
    done = 0
    for col in col_order:
        piv = next((i for i in range(done, len(work)) if (work[i] >> col) & 1), None)
        if piv is None:
            continue
        work[done], work[piv] = work[piv], work[done]
        for i in range(len(work)):
            if i != done and (work[i] >> col) & 1:
                work[i] ^= work[done]
        pivots.append(col)
        done += 1
        if done == len(work):
            break
    return work[:done], pivots


def _information_set_matrices(gens: BitMatrix):
    """Generator matrices diagonalized on (greedily) disjoint column sets.

    Each entry is (rows, rank deficit): the deficit counts pivots that had
    to fall on columns already claimed by an earlier information set.
    """
    n, k = gens.n_cols, gens.n_rows
    used: set[int] = set()
    out = []
    while len(used) < n:
        order = [c for c in range(n) if c not in used] + [c for c in range(n) if c in used]
        rows, pivots = _reduce_on_columns(gens.rows, n, order)
        if len(rows) != k:
            raise AssertionError("generator rank dropped during re-diagonalization")
        fresh = [p for p in pivots if p not in used]
        if not fresh:
            break
        out.append((rows, k - len(fresh)))
        used.update(fresh)
    return out


def _min_combo_weight(rows: Sequence[int], w: int, best: int | None) -> int | None:
    """Minimum weight among XORs of exactly w of the given rows."""
    k = len(rows)

    def descend(start: int, remaining: int, acc: int):
        nonlocal best
        if remaining == 0:
            wt = acc.bit_count()
            if best is None or wt < best:
                best = wt
            return
        for i in range(start, k - remaining + 1):
            descend(i + 1, remaining - 1, acc ^ rows[i])

    descend(0, w, 0)
    return best


def _bz_min_weight(gens: BitMatrix, weight_cap: int = BZ_WEIGHT_CAP) -> int:
    """Exact minimum weight by enumerating low information-weight codewords
    over several disjoint information sets.

    After finishing information weight w, any unseen codeword restricted to
    information set i has weight at least w + 1 - deficit_i there, and the
    fresh parts of the sets are disjoint; the minimum is exact once that
    lower bound reaches the best weight found.
    """
    k = gens.n_rows
    matrices = _information_set_matrices(gens)
    best: int | None = None
    for w in range(1, k + 1):
        if w > weight_cap:
            raise ResourceCapError(
                f"information-weight ceiling {weight_cap} exceeded before the "
                f"minimum weight was certified (best found: {best})"
            )
        for rows, _ in matrices:
            best = _min_combo_weight(rows, w, best)
        lower = sum(max(0, w + 1 - deficit) for _, deficit in matrices)
        if best is not None and lower >= best:
            return best
    return best  # w = k enumerated every codeword


# -- code files ----------------------------------------------------------------


def save_code(code: LinearCode, path: str | Path) -> None:
    """Write the fixcode-v1 format: header then one '0'/'1' row per line."""
    lines = [f"fixcode-v1 n={code.n} k={code.k}"]
    for row in code.generators.rows:
        lines.append("".join("1" if (row >> j) & 1 else "0" for j in range(code.n)))
    Path(path).write_text("\n".join(lines) + "\n")


def load_code(path: str | Path) -> LinearCode:
    text = Path(path).read_text()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise ValueError("empty code file")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "fixcode-v1":
        raise ValueError(f"unrecognized header {lines[0]!r}")
    try:
        n = int(header[1].removeprefix("n="))
        k = int(header[2].removeprefix("k="))
    except ValueError as exc:
        raise ValueError(f"unrecognized header {lines[0]!r}") from exc
    if len(lines) != k + 1:
        raise ValueError(f"expected {k} generator rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        if len(line) != n:
            raise ValueError(f"generator row has length {len(line)}, expected {n}")
        rows.append(BitVector.from_string(line))
    code = make_code(rows, n)
    if code.k != k:
        raise ValueError(f"file claims dimension {k} but rows span dimension {code.k}")
    return code
