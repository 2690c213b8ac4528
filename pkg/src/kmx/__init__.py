"""kmx: exact loop-algebra realizations of affine Kac-Moody algebras.

The package builds the double extension of a Laurent-polynomial loop
algebra (central term + rotation derivation), classifies generalized
Cartan matrices, and verifies the algebraic and geometric identities of
the construction with exact rational arithmetic.
"""

from .base_lie import (
    ChevalleyTriple,
    DiagramAutomorphism,
    FiniteLieElement,
    bracket,
    chevalley_generators,
    finite_element,
    invariant_form,
    trace_form,
)
from .cartan import (
    CartanClass,
    GeneralizedCartanMatrix,
    Kind,
    NamedType,
    all_named_types,
    classify,
    decompose,
    display_name,
    folding_name,
    match_named,
    named_matrix,
    parse_name,
    validate_gcm,
)
from .errors import KmxError
from .geometry import (
    CartanSlice,
    CurvatureReport,
    OsakaType,
    SectionalResult,
    cartan_slice,
    curvature,
    curvature_report,
    dualize,
    hermitian_obstruction,
    osaka_classify,
    reflect_slice_point,
    sectional,
    slice_element,
)
from .group_action import (
    ConstantMatrix,
    ExpNilpotent,
    LoopGroupWord,
    MonodromyResult,
    TorusCocharacter,
    adjoint,
    constant_factor,
    evaluate,
    flat_solver,
    flat_span,
    gauge_action,
    identity_word,
    log_derivative,
    weyl_orbit,
    weyl_reflect,
    weyl_singular,
    word,
    word_inverse,
    word_mul,
)
from .kac_moody import (
    InvolutionSpec,
    KacMoodyElement,
    KMTriple,
    affine_generators,
    apply_involution,
    c_element,
    d_element,
    eigenspace_split,
    from_loop,
    involution_spec,
    km_bracket,
    km_element,
    lorentz_form,
    serre_check,
)
from .loop_algebra import (
    LaurentLoop,
    averaged_killing,
    cocycle,
    laurent_loop,
    loop_bracket,
    loop_derivative,
    monomial,
    reality_check,
    twist_check,
    zero_loop,
)
from .scalars import EC, ExactComplex
from .suites import (
    SUITES,
    SuiteResult,
    VerifyReport,
    run_suites,
    su2_compact_basis,
    su2_compact_split,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
