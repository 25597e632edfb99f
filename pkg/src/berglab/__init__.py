"""Bergman-space reflection laboratory for planar quasidisks.

Domains, reproducing kernels, quasiconformal boundary reflections, the
rational-section transform, and finite-rank operator models, plus a check
battery and CLI.

Set ``BERGLAB_THREADS`` to pin the BLAS/OpenMP thread count before numpy
loads; values already exported in the environment win.
"""
import os as _os

_threads = _os.environ.get("BERGLAB_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(_var, _threads)
del _os, _threads

from .exceptions import (  # noqa: E402
    BerglabError,
    ConfigError,
    DegeneratePointsError,
    KernelUnavailableError,
    MoebiusPoleError,
    NonIntegrableTailError,
    PointInsideDomainError,
    PoleInsideDomainError,
    ReflectionUnavailableError,
)
from .moebius import AT_INFINITY, IDENTITY_MAP, INVERSION_MAP, MoebiusMap  # noqa: E402
from .domains import (  # noqa: E402
    CuspDomain,
    DiskExterior,
    DiskInterior,
    HalfPlane,
    Membership,
    MoebiusImage,
    NAMED_DOMAINS,
    Sector,
    boundary_distance,
    domain_from_dict,
    membership,
)
from .quadrature import QuadConfig, QuadResult, integrate_domain  # noqa: E402
from .functions import (  # noqa: E402
    CallableSection,
    LinearCombination,
    MoebiusTransfer,
    RationalSection,
)
from .kernels import KernelSection, kernel, rational_expansion  # noqa: E402
from .reflections import (  # noqa: E402
    bilipschitz_estimate,
    pullback_inner,
    pullback_norm,
    reflect,
    reflect_many,
    sector_compression_ratio,
)
from .pairings import (  # noqa: E402
    gram_rational,
    pair_closed,
    pair_contour,
    pair_quadrature,
    pair_rational,
    transform_pole_image,
)
from .transform import (  # noqa: E402
    SurjectivityReport,
    TransformConfig,
    hilbert_transform,
    holomorphy_residual,
    surjectivity_diagnostic,
    transform_gram,
    transform_norm_ratio,
)
from .points import (  # noqa: E402
    cusp_approach_points,
    domain_scale,
    exterior_points,
    validate_separation,
)
from .operators import (  # noqa: E402
    ConditioningReport,
    FiniteModel,
    apply_B,
    build_finite_model,
    kernel_integral_identity,
    orthosimilar_reconstruct,
    parseval_check,
    reflection_principle,
    verify_model,
)
from .reports import make_report, render_json, render_text, run_check, run_suite  # noqa: E402

__version__ = "0.1.0"

__all__ = [
    "AT_INFINITY",
    "BerglabError",
    "CallableSection",
    "ConditioningReport",
    "ConfigError",
    "CuspDomain",
    "DegeneratePointsError",
    "DiskExterior",
    "DiskInterior",
    "FiniteModel",
    "HalfPlane",
    "IDENTITY_MAP",
    "INVERSION_MAP",
    "KernelSection",
    "KernelUnavailableError",
    "LinearCombination",
    "Membership",
    "MoebiusImage",
    "MoebiusMap",
    "MoebiusPoleError",
    "MoebiusTransfer",
    "NAMED_DOMAINS",
    "NonIntegrableTailError",
    "PointInsideDomainError",
    "PoleInsideDomainError",
    "QuadConfig",
    "QuadResult",
    "RationalSection",
    "ReflectionUnavailableError",
    "Sector",
    "SurjectivityReport",
    "TransformConfig",
    "apply_B",
    "bilipschitz_estimate",
    "boundary_distance",
    "build_finite_model",
    "cusp_approach_points",
    "domain_from_dict",
    "domain_scale",
    "exterior_points",
    "gram_rational",
    "hilbert_transform",
    "holomorphy_residual",
    "integrate_domain",
    "kernel",
    "kernel_integral_identity",
    "make_report",
    "membership",
    "orthosimilar_reconstruct",
    "pair_closed",
    "pair_contour",
    "pair_quadrature",
    "pair_rational",
    "parseval_check",
    "pullback_inner",
    "pullback_norm",
    "rational_expansion",
    "reflect",
    "reflect_many",
    "reflection_principle",
    "render_json",
    "render_text",
    "run_check",
    "run_suite",
    "sector_compression_ratio",
    "surjectivity_diagnostic",
    "transform_gram",
    "transform_norm_ratio",
    "transform_pole_image",
    "validate_separation",
    "verify_model",
]
