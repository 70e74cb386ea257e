"""Exact eigenstructure toolkit for skew-symmetric matrix pencils and polynomials.

Computes and cross-verifies: canonical blocks and their assembly, complete
eigenstructures (rank, elementary divisors, minimal indices) in exact
rational arithmetic, the generic structures of bounded-rank skew-symmetric
pencils and polynomials, odd-grade strong linearizations with grade padding,
orbit-closure degeneration rules with a reachability search, orbit
codimensions by block sums, closed forms, and tangent ranks, and randomized
genericity experiments.
"""

from .blocks import (
    BlockList,
    GeneralBlock,
    SkewBlock,
    assemble_general,
    assemble_skew,
    blocklist_eigenstructure,
    general_to_skew,
    pencil_parts,
    skew_to_general,
    structure_to_skew_blocks,
)
from .codimension import (
    CodimReport,
    codim_blocksum,
    codim_pencil_closed,
    codim_poly_generic,
    codim_tangent,
    gsyl0_tangent_claim,
)
from .degeneration import (
    ClosureResult,
    RuleApplication,
    apply_rule,
    apply_rule_paired,
    closure_reachable,
    equal_modulo_symbols,
    replay_certificate,
)
from .eigenstructure import (
    CompleteEigenstructure,
    ConvolutionProfile,
    analyze,
    convolution_matrix,
    convolution_profile,
    infinite_structure,
    left_minimal_indices,
    minimal_indices,
    same_orbit,
    smallest_infinite_multiplicity_law,
)
from .exact import (
    MatrixPolynomial,
    RationalPolynomial,
    SkewMatrixPolynomial,
    SmithForm,
    frobenius_distance,
    normal_rank,
    poly_gcd,
    rank_exact,
    rev,
    skew_smith,
    smith_form,
)
from .generic import (
    PencilGenericParams,
    PolyGenericParams,
    generic_pencil_structure,
    generic_poly_structure,
    padded_infinite_structure,
    structure_consistency,
)
from .linearize import (
    GsylPencil,
    build_linearization,
    gsyl_membership,
    pad_grade,
    verify_shift,
)
from .points import INFINITY, SymbolicPoint
from .sampling import (
    ExperimentReport,
    SampleSpec,
    analyze_float,
    monte_carlo_genericity,
    perturb_rank_increase,
    rank_fp,
    sample_bounded_rank,
)

__all__ = [
    "BlockList",
    "ClosureResult",
    "CodimReport",
    "CompleteEigenstructure",
    "ConvolutionProfile",
    "ExperimentReport",
    "GeneralBlock",
    "GsylPencil",
    "INFINITY",
    "MatrixPolynomial",
    "PencilGenericParams",
    "PolyGenericParams",
    "RationalPolynomial",
    "RuleApplication",
    "SampleSpec",
    "SkewBlock",
    "SkewMatrixPolynomial",
    "SmithForm",
    "SymbolicPoint",
    "analyze",
    "analyze_float",
    "apply_rule",
    "apply_rule_paired",
    "assemble_general",
    "assemble_skew",
    "blocklist_eigenstructure",
    "build_linearization",
    "closure_reachable",
    "codim_blocksum",
    "codim_pencil_closed",
    "codim_poly_generic",
    "codim_tangent",
    "convolution_matrix",
    "convolution_profile",
    "equal_modulo_symbols",
    "frobenius_distance",
    "general_to_skew",
    "generic_pencil_structure",
    "generic_poly_structure",
    "gsyl0_tangent_claim",
    "gsyl_membership",
    "infinite_structure",
    "left_minimal_indices",
    "minimal_indices",
    "monte_carlo_genericity",
    "normal_rank",
    "pad_grade",
    "pencil_parts",
    "padded_infinite_structure",
    "perturb_rank_increase",
    "poly_gcd",
    "rank_exact",
    "rank_fp",
    "replay_certificate",
    "rev",
    "same_orbit",
    "sample_bounded_rank",
    "skew_smith",
    "skew_to_general",
    "smallest_infinite_multiplicity_law",
    "smith_form",
    "structure_consistency",
    "structure_to_skew_blocks",
    "verify_shift",
]
