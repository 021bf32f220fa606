"""Verification toolkit for binary codes invariant under affine special
linear groups, with exact minimum-weight machinery for the classical
reference codes."""

from .codes import LinearCode, WeightEnumerator, extremal_bound, is_extremal, load_code, make_code, save_code
from .classical import extended_qr, quadratic_residues, reed_muller
from .errors import ConstructionError, FixcodeError, PreconditionError, ResourceCapError, SearchRefutation
from .fields import FieldSpec, FqMatrix, field, flatten, point_index, point_unindex
from .fixengine import (
    FixSpan,
    VerificationReport,
    WitnessPair,
    build_c_code,
    check_containment_theorem,
    compute_fix_span,
    find_witness_pair,
    fix_span_code,
    min_fixed_dim,
    verify_lemma,
    verify_remark_case,
)
from .gf2 import BitMatrix, BitVector, IncrementalRref, code_equal, member, nullspace_basis, rref, span_basis
from .groups import (
    AffineGroupSpec,
    GroupElement,
    InvolutionSet,
    fix_set,
    involutions_G,
    scan_involutions_H,
    sl_order,
)

__version__ = "0.1.0"
