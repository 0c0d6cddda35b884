"""widthlab: a desk-scale numerical laboratory for Kolmogorov widths,
ellipsoid covering, bilinear operator equations and expanding operators.

Everything runs on finite-dimensional truncations with explicit tolerances;
asymptotic statements are exposed through exact closed-form classifiers for
parametric width-sequence models and through windowed surrogates (flagged
``exact=False``) for sampled data.
"""

from .covering import (
    ALGEBRA_AK,
    EMPTY,
    EVERYTHING,
    KDIM,
    MARGIN_BAND,
    PSD_TOL,
    ClassificationVerdict,
    CoverCertificate,
    DichotomyReport,
    RangeEquivalence,
    WeakFullnessVerdict,
    classify_WCG,
    classify_WG,
    covers,
    find_separating_projection,
    is_weakly_full,
    prescribed_cover,
    range_equiv,
    schmidt_cover,
    wot_density_experiment,
)
from .equations import (
    MatchCertificate,
    SolutionPair,
    SolvabilityVerdict,
    approx_factorization,
    factor_pair,
    first_component_member,
    match_invertible,
    solve_xay,
    xay_solvable,
)
from .errors import (
    ClassificationError,
    InfeasibleError,
    InputError,
    NotCoverableError,
    UnsolvableError,
    WidthlabError,
)
from .expanding import ExpandVerdict, classify_WE, expanding_dual_check, is_expanding
from .matrixio import format_matrix, parse_matrix, read_matrix, write_matrix
from .rigid import (
    MAX_TRUNCATION,
    CoverSearchReport,
    EdgeGraphStats,
    RigidCompactSpec,
    build_rigid_compact,
    rigid_cover_search,
)
from .seqlab import (
    DEFAULT_WINDOW,
    MIN_TERM,
    RATIO_THRESHOLD,
    Geometric,
    LacunarityVerdict,
    MajorizationVerdict,
    Power,
    Samples,
    Scaled,
    SequenceModel,
    ShiftClassification,
    Shifted,
    SuperGeometric,
    equivalent,
    is_lacunary,
    majorizes,
    max_majorizing_shift,
    parse_model,
    sample,
    strictly_majorizes,
)
from .spectra import (
    RANK_RCOND,
    Ellipsoid,
    SingularSpectrum,
    WidthSequence,
    ellipsoid,
    ellipsoid_membership,
    kolmogorov_widths,
    scale_ellipsoid,
    section_spectrum,
    singular_spectrum,
    truncate_ellipsoid,
)

__version__ = "0.1.0"
