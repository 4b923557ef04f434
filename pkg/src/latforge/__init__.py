"""latforge: lattice basis reduction with permutation-driven search.

Exact LLL reduction plus three optimization layers on top of it: hill
climbing over row permutations, block-parallel diffusion/fusion reduction,
and multistage hybrid pipelines, with a reproducible experiment harness.
"""

from .core import (
    Basis,
    BasisMetrics,
    GsoData,
    SvpResult,
    gram_det,
    gso,
    hnf,
    is_independent,
    metrics,
    reduction_key,
    same_lattice,
    svp_oracle,
)
from .errors import (
    BadBlockingError,
    BadStageParamsError,
    BoxTooLargeError,
    DegreeMismatchError,
    DegreeTooSmallError,
    DependentRowsError,
    InfeasibleRadiusError,
    LatticeError,
    NotPrimeError,
    ParseError,
    RankDeficientError,
    StageInfeasibleError,
)
from .lll import LllParams, is_lll_reduced, lll_reduce
from .perm import (
    Permutation,
    RadiusClass,
    Side,
    apply,
    count_at_radius,
    hamming_distance,
    psl2_permutations,
    radius,
    sample_at_radius,
    sample_right,
)
from .hillclimb import (
    FixedRadius,
    HcConfig,
    HcStep,
    HcTrace,
    Psl2,
    VariableRadius,
    det_bound,
    hc_fixed,
    hc_psl2,
    hc_variable,
)
from .ldsf import (
    LdsfConfig,
    LdsfRound,
    LdsfTrace,
    diffuse,
    fuse,
    ldsf_run,
    sigma,
)
from .pipeline import (
    PipelineReport,
    StageReport,
    StageSpec,
    default_four_stage,
    run_pipeline,
)
from .latfile import LatticeFile, format_lattice, load_lattice, parse_lattice
from .bench import SweepResult, SweepRow, improvement_frequency, normalize, radius_sweep
from .gen import knapsack_basis, uniform_basis

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BasisMetrics",
    "GsoData",
    "SvpResult",
    "gso",
    "metrics",
    "gram_det",
    "hnf",
    "same_lattice",
    "svp_oracle",
    "is_independent",
    "reduction_key",
    "LllParams",
    "lll_reduce",
    "is_lll_reduced",
    "Permutation",
    "RadiusClass",
    "Side",
    "hamming_distance",
    "radius",
    "sample_at_radius",
    "sample_right",
    "count_at_radius",
    "psl2_permutations",
    "apply",
    "FixedRadius",
    "VariableRadius",
    "Psl2",
    "HcConfig",
    "HcStep",
    "HcTrace",
    "det_bound",
    "hc_fixed",
    "hc_variable",
    "hc_psl2",
    "LdsfConfig",
    "LdsfRound",
    "LdsfTrace",
    "diffuse",
    "fuse",
    "ldsf_run",
    "sigma",
    "StageSpec",
    "StageReport",
    "PipelineReport",
    "default_four_stage",
    "run_pipeline",
    "LatticeFile",
    "parse_lattice",
    "format_lattice",
    "load_lattice",
    "SweepRow",
    "SweepResult",
    "radius_sweep",
    "improvement_frequency",
    "normalize",
    "uniform_basis",
    "knapsack_basis",
    "LatticeError",
    "DependentRowsError",
    "BoxTooLargeError",
    "DegreeMismatchError",
    "DegreeTooSmallError",
    "InfeasibleRadiusError",
    "NotPrimeError",
    "BadBlockingError",
    "StageInfeasibleError",
    "BadStageParamsError",
    "ParseError",
    "RankDeficientError",
]
