"""The fixed-point code machinery: build C(G, Omega) as the dual of the
span of involution fixed-point sets, check containment of invariant
self-orthogonal codes, run the non-existence argument for invariant
self-dual codes of length 2^(2rs), and the bound comparisons for both
matrix-size families.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field as dc_field

from .classical import reed_muller
from .codes import LinearCode, extremal_bound
from .errors import PreconditionError, ResourceCapError, SearchRefutation
from .fields import FqMatrix, flatten
from .gf2 import BitMatrix, BitVector, IncrementalRref, member, nullspace_basis, rank_ints
from .groups import (
    AffineGroupSpec,
    DEFAULT_SCAN_CAP_BITS,
    fiber_fix_indicators,
    fix_set,
    permutation_of,
    random_element,
    scan_involutions_H,
    structural_generators,
)

MAX_POINTS = 1 << 20  # reject actions larger than this up front

# Parameter pairs for which the fixed-set cardinality fails to beat the
# extremality bound, per family (m = 2s versus m = 2s - 1).
EVEN_FAMILY_EXCEPTIONS = {(1, 2), (2, 1)}
ODD_FAMILY_EXCEPTIONS = {(1, 2), (1, 3), (2, 2)}


@dataclass
class FixSpan:
    """The span of all involution fixed-point indicators, plus scan stats."""

    spec: AffineGroupSpec
    involutions_H: tuple[FqMatrix, ...]
    fixed_dims: tuple[int, ...]  # flattened ker(I + h) dim, one per involution
    span: BitMatrix              # RREF basis of the indicator span
    distinct_fix_sets: int       # distinct nonempty indicators
    involutions_G: int           # |I(G)| under the structural characterization


@dataclass
class WitnessPair:
    """Two involutions whose fixed spaces meet only in the zero vector."""

    sigma: FqMatrix
    tau: FqMatrix
    fix_sigma: BitVector
    fix_tau: BitVector
    intersection_size: int
    inner_product: int


@dataclass
class VerificationReport:
    claim: str
    params: dict
    group: dict | None = None
    code: dict | None = None
    witness: WitnessPair | None = None
    conclusion: str = "verified"
    elapsed_ms: int = 0
    details: dict = dc_field(default_factory=dict)

    def to_json_dict(self) -> dict:
        witness = None
        if self.witness is not None:
            witness = {
                "sigma": self.witness.sigma.hex_string(),
                "tau": self.witness.tau.hex_string(),
                "inner_product": self.witness.inner_product,
            }
        return {
            "claim": self.claim,
            "params": self.params,
            "group": self.group,
            "code": self.code,
            "witness": witness,
            "conclusion": self.conclusion,
            "elapsed_ms": self.elapsed_ms,
            "details": self.details,
        }


_span_cache: dict[tuple[int, int], FixSpan] = {}


def compute_fix_span(
    spec: AffineGroupSpec,
    *,
    scan_cap_bits: int = DEFAULT_SCAN_CAP_BITS,
    workers: int = 1,
    cache: bool = True,
) -> FixSpan:
    """Scan the involutions of H and accumulate every nonempty fixed-point
    indicator of I(G) into one RREF basis.

    For h != I the nonempty fixed sets are exactly the fibers of I + h over
    its image, so the span streams fiber indicators without materializing
    group elements; translations contribute nothing (no fixed points).
    """
    key = (spec.r, spec.m)
    if cache and key in _span_cache:
        return _span_cache[key]
    if spec.n > MAX_POINTS:
        raise ResourceCapError(
            f"action on {spec.n} points exceeds the supported maximum {MAX_POINTS}"
        )
    invs = scan_involutions_H(spec, scan_cap_bits=scan_cap_bits, workers=workers, cache=cache)
    acc = IncrementalRref(spec.n)
    seen: set[int] = set()
    fixed_dims = []
    involutions_g = spec.n - 1  # the nonzero translations
    for h in invs:
        fibers = fiber_fix_indicators(h, spec)
        flat_i_plus_h = flatten(h.add_identity())
        ker_dim = spec.flat_dim - rank_ints(flat_i_plus_h.rows)
        fixed_dims.append(ker_dim)
        involutions_g += 1 << ker_dim  # one involution (t, h) per t in ker(I + h)
        for indicator in fibers.values():
            if indicator not in seen:
                seen.add(indicator)
                acc.add(indicator)
    result = FixSpan(
        spec=spec,
        involutions_H=invs,
        fixed_dims=tuple(fixed_dims),
        span=acc.basis(),
        distinct_fix_sets=len(seen),
        involutions_G=involutions_g,
    )
    if cache:
        _span_cache[key] = result
    return result


def build_c_code(
    spec: AffineGroupSpec,
    *,
    scan_cap_bits: int = DEFAULT_SCAN_CAP_BITS,
    workers: int = 1,
    cache: bool = True,
) -> LinearCode:
    """C(G, Omega): the dual of the span of involution fixed-point sets."""
    fs = compute_fix_span(spec, scan_cap_bits=scan_cap_bits, workers=workers, cache=cache)
    return LinearCode(spec.n, nullspace_basis(fs.span))


def fix_span_code(spec: AffineGroupSpec, **kwargs) -> LinearCode:
    """The span itself as a code; equals dual(build_c_code(spec))."""
    fs = compute_fix_span(spec, **kwargs)
    return LinearCode(spec.n, fs.span)


def min_fixed_dim(spec: AffineGroupSpec, **kwargs) -> int:
    """Smallest flattened fixed-space dimension over the involutions of H."""
    fs = compute_fix_span(spec, **kwargs)
    if not fs.fixed_dims:
        raise ValueError(f"SL({spec.m}, {spec.q}) has no involutions")
    return min(fs.fixed_dims)


def check_containment_theorem(
    code: LinearCode,
    spec: AffineGroupSpec,
    **kwargs,
) -> bool:
    """Whether every generator of a self-orthogonal G-invariant code lies in
    C(G, Omega).

    Raises PreconditionError when the input is not self-orthogonal or not
    invariant under the structural generators of G, so a hypothesis failure
    is never reported as a containment failure.
    """
    if code.n != spec.n:
        raise PreconditionError(f"code length {code.n} != action size {spec.n}")
    if not code.is_self_orthogonal():
        raise PreconditionError("code is not self-orthogonal")
    for g in structural_generators(spec):
        if not code.is_invariant_under(permutation_of(g, spec)):
            raise PreconditionError("code is not invariant under the acting group")
    c_code = build_c_code(spec, **kwargs)
    return all(member(c_code.generators, v) for v in code.generators.row_vectors())


def find_witness_pair(
    spec: AffineGroupSpec,
    *,
    scan_cap_bits: int = DEFAULT_SCAN_CAP_BITS,
    workers: int = 1,
    cache: bool = True,
) -> WitnessPair:
    """Two involutions of H = SL(2s, 2^r) with complementary fixed spaces.

    Scans I(H) in packed-matrix order and returns the first pair whose
    fixed spaces both have GF(2^r)-dimension s and intersect trivially.
    The intersection then contains only the zero vector, so the indicators'
    inner product is 1.
    """
    if spec.m % 2:
        raise ValueError("witness pairs need an even matrix side m = 2s")
    target = spec.flat_dim // 2  # r * s
    invs = scan_involutions_H(spec, scan_cap_bits=scan_cap_bits, workers=workers, cache=cache)
    flats = []
    for h in invs:
        flat = flatten(h.add_identity())
        if spec.flat_dim - rank_ints(flat.rows) == target:
            flats.append((h, flat))
    for i, (sigma, flat_s) in enumerate(flats):
        for tau, flat_t in flats[i + 1:]:
            if rank_ints(list(flat_s.rows) + list(flat_t.rows)) == spec.flat_dim:
                fs = fix_set(_linear_element(sigma), spec)
                ft = fix_set(_linear_element(tau), spec)
                inter = (fs.bits & ft.bits).bit_count()
                return WitnessPair(
                    sigma=sigma,
                    tau=tau,
                    fix_sigma=fs,
                    fix_tau=ft,
                    intersection_size=inter,
                    inner_product=inter & 1,
                )
    raise SearchRefutation(
        f"no pair of involutions of SL({spec.m}, {spec.q}) has complementary "
        f"{target}-dimensional fixed spaces"
    )


def _linear_element(h: FqMatrix):
    from .groups import GroupElement

    return GroupElement(0, h)


def verify_lemma(
    r: int,
    s: int,
    *,
    scan_cap_bits: int = DEFAULT_SCAN_CAP_BITS,
    workers: int = 1,
    cache: bool = True,
) -> VerificationReport:
    """Establish that no self-dual code of length 2^(2rs) is invariant under
    T semidirect SL(2s, 2^r).

    Pipeline: find a witness pair of involutions with complementary fixed
    spaces; confirm both indicators are codewords of the dual of
    C(G, Omega); confirm their inner product is 1; independently recompute
    that the dual is not self-orthogonal; conclude, since an invariant
    self-dual code B would satisfy B inside C(G, Omega) and hence force
    that dual to be self-orthogonal.
    """
    t0 = time.perf_counter()
    spec = AffineGroupSpec(r, 2 * s)
    params = {"r": r, "s": s, "m": spec.m, "n": spec.n}
    kwargs = dict(scan_cap_bits=scan_cap_bits, workers=workers, cache=cache)
    fs = compute_fix_span(spec, **kwargs)
    c_code = LinearCode(spec.n, nullspace_basis(fs.span))
    dual_code = LinearCode(spec.n, fs.span)
    checks: dict[str, bool] = {}
    witness = None
    try:
        witness = find_witness_pair(spec, **kwargs)
        checks["witness_pair_found"] = True
        checks["witness_fix_sets_in_dual"] = bool(
            member(fs.span, witness.fix_sigma) and member(fs.span, witness.fix_tau)
        )
        checks["witness_inner_product_one"] = witness.inner_product == 1
    except SearchRefutation:
        checks["witness_pair_found"] = False
    checks["dual_not_self_orthogonal"] = not dual_code.is_self_orthogonal()
    verified = all(checks.values())
    report = VerificationReport(
        claim="lemma",
        params=params,
        group=_group_stats(fs),
        code=_code_stats(c_code),
        witness=witness,
        conclusion="verified" if verified else "refuted",
        details={
            "checks": checks,
            "dim_fix_span": fs.span.n_rows,
            "min_fixed_dim": min(fs.fixed_dims) if fs.fixed_dims else None,
            "min_fixed_cardinality": 1 << min(fs.fixed_dims) if fs.fixed_dims else None,
            "statement": f"no self-dual code of length {spec.n} is invariant under "
            f"T : SL({spec.m}, {spec.q})",
            "fixed_dim_histogram": _dim_histogram(fs.fixed_dims),
        },
    )
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


def verify_remark_case(
    r: int,
    s: int,
    family: str,
    *,
    scan_cap_bits: int = DEFAULT_SCAN_CAP_BITS,
    workers: int = 1,
    cache: bool = True,
) -> VerificationReport:
    """Compare the smallest fixed-set cardinality 2^(rs) against the
    extremality bound for the action of T : SL(m, 2^r).

    family "even" uses m = 2s and length 2^(2rs); family "odd" uses
    m = 2s - 1 (needs s > 1) and length 2^((2s-1)r).  The comparison is
    expected to succeed exactly outside the known exceptional parameter
    sets; for the odd-family exceptions the identified codes are rebuilt
    and checked.
    """
    t0 = time.perf_counter()
    if family not in ("even", "odd"):
        raise ValueError(f"family must be 'even' or 'odd', got {family!r}")
    if family == "odd" and s < 2:
        raise ValueError("the odd family needs s > 1 (m = 2s - 1 >= 3)")
    m = 2 * s if family == "even" else 2 * s - 1
    spec = AffineGroupSpec(r, m)
    n = spec.n
    params = {"r": r, "s": s, "m": m, "n": n, "family": family}
    fixed_card = 1 << (r * s)
    bound = 4 * (n // 24) + 4  # the raw bound value; n may not be 0 mod 8 here
    exceptions = EVEN_FAMILY_EXCEPTIONS if family == "even" else ODD_FAMILY_EXCEPTIONS
    expected_exceptional = (r, s) in exceptions
    beats_bound = fixed_card < bound
    checks = {"bound_comparison_matches_family_table": beats_bound != expected_exceptional}
    details: dict = {
        "min_fixed_cardinality_formula": fixed_card,
        "bound_value": bound,
        "beats_bound": beats_bound,
        "exceptional_case": expected_exceptional,
    }
    kwargs = dict(scan_cap_bits=scan_cap_bits, workers=workers, cache=cache)
    group = None
    code_stats = None
    scan_feasible = r * m * m <= scan_cap_bits and n <= MAX_POINTS and m >= 2
    if scan_feasible:
        fs = compute_fix_span(spec, **kwargs)
        group = _group_stats(fs)
        checks["min_fixed_cardinality_exact"] = (1 << min(fs.fixed_dims)) == fixed_card
        details["fixed_dim_histogram"] = _dim_histogram(fs.fixed_dims)
    if family == "odd" and expected_exceptional and scan_feasible:
        c_code = LinearCode(spec.n, nullspace_basis(fs.span))
        code_stats = _code_stats(c_code)
        if (r, s) in ((1, 2), (1, 3)):
            order = 1 if s == 2 else 2
            reference = reed_muller(order, m)
            exact = c_code == reference
            fallback = (
                (c_code.n, c_code.k) == (reference.n, reference.k)
                and c_code.is_self_dual()
                and c_code.is_doubly_even()
                and c_code.min_weight() == reference.min_weight()
            )
            details["identification"] = {
                "reference": f"RM({order},{m})",
                "exact_equality": exact,
                "fallback_parameters_ok": fallback,
            }
            checks["identified_code_matches"] = exact or fallback
            code_stats = _code_stats(c_code, min_weight=c_code.min_weight())
            code_stats["extremal"] = c_code.min_weight() == extremal_bound(c_code.n)
        else:  # (2, 2): the dual is self-orthogonal with minimum weight 16
            dual_code = LinearCode(spec.n, fs.span)
            d = dual_code.min_weight()
            checks["dual_self_orthogonal"] = dual_code.is_self_orthogonal()
            checks["dual_min_weight_16"] = d == 16
            details["dual_code"] = {"n": dual_code.n, "k": dual_code.k, "min_weight": d}
    verified = all(checks.values())
    details["checks"] = checks
    report = VerificationReport(
        claim=f"remark-{family}",
        params=params,
        group=group,
        code=code_stats,
        conclusion="verified" if verified else "refuted",
        details=details,
    )
    report.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return report


def invariance_spot_check(
    code: LinearCode, spec: AffineGroupSpec, *, samples: int = 5, seed: int = 0
) -> bool:
    """Invariance of a code under seeded random elements of G."""
    return all(
        code.is_invariant_under(permutation_of(random_element(spec, seed + i), spec))
        for i in range(samples)
    )


def _group_stats(fs: FixSpan) -> dict:
    return {
        "involutions_H": len(fs.involutions_H),
        "involutions_G": fs.involutions_G,
        "distinct_fix_sets": fs.distinct_fix_sets,
    }


def _code_stats(code: LinearCode, min_weight: int | None = None) -> dict:
    return {
        "n": code.n,
        "k": code.k,
        "min_weight": min_weight,
        "self_dual": code.is_self_dual(),
        "doubly_even": code.is_doubly_even(),
        "extremal": None,
    }


def _dim_histogram(dims: tuple[int, ...]) -> dict[str, int]:
    hist: dict[str, int] = {}
    for d in sorted(dims):
        hist[str(d)] = hist.get(str(d), 0) + 1
    return hist
