"""Coefficient criteria for starlike, convex, uniformly convex, parabolic
starlike and R(alpha, beta) classes of normalized analytic functions."""

__version__ = "0.1.0"

from .criteria import (  # noqa: E402
    CRITERION_IDS,
    CheckResult,
    ClassTag,
    CriterionSpec,
    KParam,
    OrderParam,
    RParam,
    check,
    classify,
    extremal,
    registry,
)
from .errors import ContractError, DomainError, SingularityError, UnsupportedError  # noqa: E402
from .series import NormalizedSeries, SampleGrid, default_grid, probe_grid  # noqa: E402
from .negative import TSeries  # noqa: E402
from .hypergeom import HyperParams, check_r_membership  # noqa: E402

__all__ = [
    "CRITERION_IDS",
    "CheckResult",
    "ClassTag",
    "ContractError",
    "CriterionSpec",
    "DomainError",
    "HyperParams",
    "KParam",
    "NormalizedSeries",
    "OrderParam",
    "RParam",
    "SampleGrid",
    "SingularityError",
    "TSeries",
    "UnsupportedError",
    "check",
    "check_r_membership",
    "classify",
    "default_grid",
    "extremal",
    "probe_grid",
    "registry",
]
