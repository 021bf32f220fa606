"""Constructors for the named reference codes: Reed-Muller codes and
extended quadratic residue codes.

The quadratic residue construction stays entirely inside GF(2): the code
of length p is the cyclic span of the residue indicator vector, extended
by an overall parity coordinate.  Rank assertions (with the non-residue
indicator as a fallback generator) certify the construction instead of
any extension-field factoring.
"""

from __future__ import annotations

from itertools import combinations

from .codes import LinearCode, code_from_ints
from .errors import ConstructionError
from .gf2 import IncrementalRref


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def quadratic_residues(p: int) -> frozenset[int]:
    """The nonzero squares mod p; exactly (p-1)/2 of them for odd prime p."""
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")
    return frozenset(pow(a, 2, p) for a in range(1, p))


def _cyclic_span(indicator: int, p: int) -> IncrementalRref:
    acc = IncrementalRref(p)
    mask = (1 << p) - 1
    v = indicator
    for _ in range(p):
        acc.add(v)
        v = ((v << 1) | (v >> (p - 1))) & mask
    return acc


def extended_qr(p: int) -> LinearCode:
    """Extended quadratic residue code of length p + 1 for a prime p = 8k - 1.

    Spans the cyclic shifts of the residue-set indicator, adjoins the
    all-ones vector if the span landed on the smaller even-like subcode,
    and appends a parity coordinate.  Self-duality and double evenness are
    asserted before returning.
    """
    if not is_prime(p) or p % 8 != 7:
        raise ValueError(f"{p} is not a prime congruent to 7 mod 8")
    residue_bits = 0
    for a in quadratic_residues(p):
        residue_bits |= 1 << a
    nonresidue_bits = ((1 << p) - 1) & ~residue_bits & ~1
    ranks = []
    for indicator in (residue_bits, nonresidue_bits):
        acc = _cyclic_span(indicator, p)
        all_ones = (1 << p) - 1
        if acc.rank == (p - 1) // 2 and not acc.contains(all_ones):
            acc.add(all_ones)
        ranks.append(acc.rank)
        if acc.rank == (p + 1) // 2:
            break
    else:
        raise ConstructionError(
            f"cyclic span has dimension {ranks[0]} (residues) / {ranks[1]} "
            f"(non-residues); expected {(p + 1) // 2}"
        )
    extended = []
    for row in acc.basis().rows:
        parity = row.bit_count() & 1
        extended.append(row | (parity << p))
    code = code_from_ints(extended, p + 1)
    if code.k != (p + 1) // 2 or not code.is_self_dual():
        raise ConstructionError(f"extended code of length {p + 1} failed the self-dual check")
    if not code.is_doubly_even():
        raise ConstructionError(f"extended code of length {p + 1} failed the doubly even check")
    return code


def reed_muller(order: int, m: int) -> LinearCode:
    """RM(order, m): evaluations of all boolean monomials of degree <= order
    at the 2^m points, point j having coordinate bits (j >> i) & 1.

    Monomials are listed by degree, then lexicographically by variable
    index; the evaluation vector of a monomial is the AND of its variables'
    coordinate masks.
    """
    if not 0 <= order <= m:
        raise ValueError(f"need 0 <= order <= m, got order={order}, m={m}")
    n = 1 << m
    coord_masks = []
    for i in range(m):
        mask = 0
        for idx in range(n):
            if (idx >> i) & 1:
                mask |= 1 << idx
        coord_masks.append(mask)
    rows = []
    all_ones = (1 << n) - 1
    for degree in range(order + 1):
        for support in combinations(range(m), degree):
            v = all_ones
            for i in support:
                v &= coord_masks[i]
            rows.append(v)
    code = code_from_ints(rows, n)
    expected_k = sum(_binom(m, i) for i in range(order + 1))
    if code.k != expected_k:
        raise ConstructionError(f"RM({order},{m}) monomials span dimension {code.k} != {expected_k}")
    return code


def _binom(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out
