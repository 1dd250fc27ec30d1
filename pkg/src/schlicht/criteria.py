"""Registry of sufficient coefficient conditions.

Every condition has the shape ``sum_{n>=2} w(n) |a_n| <= B`` and implies
membership in one class.  Sharp rows carry the second coefficient ``c`` of
the extremal ``z - c z^2``, for which the sum equals the bound.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Union

import numpy as np

from .errors import DomainError, UnsupportedError
from .series import NormalizedSeries, weighted_sum

log = logging.getLogger(__name__)

SLACK = 1e-12
_WEIGHT_CHECK_RANGE = np.arange(2, 65, dtype=float)


class ClassTag(str, Enum):
    STARLIKE_DISK = "S*_alpha"
    CONVEX_DISK = "C_alpha"
    STARLIKE_ORDER = "S*(alpha)"
    CONVEX_ORDER = "C(alpha)"
    KUCV = "k-UCV"
    PARABOLIC = "PS(alpha)"
    R = "R(alpha,beta)"


@dataclass(frozen=True)
class OrderParam:
    alpha: float

    def __post_init__(self):
        if not (0.0 <= self.alpha < 1.0):
            raise DomainError(f"order alpha must lie in [0, 1), got {self.alpha}")


@dataclass(frozen=True)
class KParam:
    k: float

    def __post_init__(self):
        if not (self.k >= 0.0) or self.k == float("inf"):
            raise DomainError(f"k must lie in [0, inf), got {self.k}")


@dataclass(frozen=True)
class RParam:
    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.beta < 1.0):
            raise DomainError(f"beta must be < 1, got {self.beta}")


Params = Union[OrderParam, KParam, RParam]


@dataclass(frozen=True)
class CriterionSpec:
    id: str
    weight: Callable[[np.ndarray], np.ndarray]
    bound: float
    implied_class: ClassTag
    sharp: bool
    extremal_c: Optional[float]
    params: Params
    description: str = ""

    def weight_at(self, n) -> np.ndarray:
        return np.asarray(self.weight(np.asarray(n, dtype=float)), dtype=float)

    @property
    def class_params(self) -> dict:
        """Parameters of the implied class, e.g. ``{"alpha": 0.5}``."""
        p = self.params
        if isinstance(p, KParam):
            return {"k": p.k}
        if isinstance(p, RParam):
            return {"alpha": p.alpha, "beta": p.beta}
        return {"alpha": p.alpha}


@dataclass(frozen=True)
class CheckResult:
    criterion: str
    sum: float
    bound: float
    passed: bool
    implied_class: str

    @property
    def status(self) -> str:
        return "implied" if self.passed else "inconclusive"

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "sum": self.sum,
            "bound": self.bound,
            "pass": self.passed,
            "implied_class": self.implied_class,
            "status": self.status,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CheckResult":
        return cls(obj["criterion"], obj["sum"], obj["bound"], obj["pass"], obj["implied_class"])


CRITERION_IDS = (
    "mrs-starlike",
    "mrs-convex",
    "kw-kucv",
    "ali-parabolic",
    "th1-convex",
    "th1-starlike",
    "cor2-starlike",
    "th5-starlike-n",
    "th5-convex-n2",
    "th5-starlike-n2",
    "liu-r",
    "th7-nn1-r",
    "th7-n2-r",
)


def _order_rows(p: OrderParam) -> list[CriterionSpec]:
    a = p.alpha
    star_c = (1 - a) / (2 - a)
    convex_c = (1 - a) / (2 * (2 - a))
    S, C = ClassTag.STARLIKE_DISK, ClassTag.CONVEX_DISK
    return [
        CriterionSpec("mrs-starlike", lambda n: n - a, 1 - a, S, True, star_c, p,
                      "sum (n-alpha)|a_n| <= 1-alpha"),
        CriterionSpec("mrs-convex", lambda n: n * (n - a), 1 - a, C, True, convex_c, p,
                      "sum n(n-alpha)|a_n| <= 1-alpha"),
        CriterionSpec("ali-parabolic", lambda n: n - 1, (1 - a) / (2 - a), ClassTag.PARABOLIC,
                      True, star_c, p, "sum (n-1)|a_n| <= (1-alpha)/(2-alpha)"),
        CriterionSpec("th1-convex", lambda n: n * (n - 1), (1 - a) / (2 - a), C, True,
                      convex_c, p, "sum n(n-1)|a_n| <= (1-alpha)/(2-alpha)"),
        CriterionSpec("th1-starlike", lambda n: n * (n - 1), 2 * (1 - a) / (2 - a), S, True,
                      star_c, p, "sum n(n-1)|a_n| <= 2(1-alpha)/(2-alpha)"),
        CriterionSpec("cor2-starlike", lambda n: n - 1, (1 - a) / (2 - a), S, True, star_c, p,
                      "sum (n-1)|a_n| <= (1-alpha)/(2-alpha)"),
        CriterionSpec("th5-starlike-n", lambda n: n, 1 - a, S, False, None, p,
                      "sum n|a_n| <= 1-alpha"),
        CriterionSpec("th5-convex-n2", lambda n: n * n, 1 - a, C, False, None, p,
                      "sum n^2|a_n| <= 1-alpha"),
        CriterionSpec("th5-starlike-n2", lambda n: n * n, 4 * (1 - a) / (2 - a), S, True,
                      star_c, p, "sum n^2|a_n| <= 4(1-alpha)/(2-alpha)"),
    ]


def _k_rows(p: KParam) -> list[CriterionSpec]:
    k = p.k
    return [
        CriterionSpec("kw-kucv", lambda n: n * (n - 1), 1 / (k + 2), ClassTag.KUCV, True,
                      1 / (2 * (k + 2)), p, "sum n(n-1)|a_n| <= 1/(k+2)"),
    ]


def _r_rows(p: RParam, diagnostics: list[str]) -> list[CriterionSpec]:
    a, b = p.alpha, p.beta
    R = ClassTag.R
    denom = 2 * a + 2 - b
    rows = [
        CriterionSpec("liu-r", lambda n: a * n * n + (1 - a) * n - b, 1 - b, R, True,
                      (1 - b) / denom if denom > 0 else None, p,
                      "sum (alpha n^2+(1-alpha)n-beta)|a_n| <= 1-beta"),
    ]
    if denom > 0:
        rows.append(CriterionSpec("th7-nn1-r", lambda n: n * (n - 1), 2 * (1 - b) / denom, R,
                                  True, (1 - b) / denom, p,
                                  "sum n(n-1)|a_n| <= 2(1-beta)/(2alpha+2-beta)"))
    else:
        diagnostics.append(f"th7-nn1-r omitted: 2*alpha+2-beta = {denom:g} is not positive")

    if a > 1:
        diagnostics.append(f"th7-n2-r omitted: requires alpha <= 1, got {a:g}")
    elif a + b > 1:
        if 3 * a + 1 > 0:
            rows.append(CriterionSpec("th7-n2-r", lambda n: n * n, 4 * (1 - b) / (3 * a + 1), R,
                                      False, None, p,
                                      "sum n^2|a_n| <= 4(1-beta)/(3alpha+1)  [alpha+beta > 1]"))
        else:
            diagnostics.append("th7-n2-r omitted: 3*alpha+1 is not positive")
    elif denom > 0:
        rows.append(CriterionSpec("th7-n2-r", lambda n: n * n, 4 * (1 - b) / denom, R, True,
                                  (1 - b) / denom, p,
                                  "sum n^2|a_n| <= 4(1-beta)/(2alpha+2-beta)  [alpha+beta <= 1]"))
    else:
        diagnostics.append(f"th7-n2-r omitted: 2*alpha+2-beta = {denom:g} is not positive")
    return rows


def _valid(spec: CriterionSpec, diagnostics: list[str]) -> bool:
    w = spec.weight_at(_WEIGHT_CHECK_RANGE)
    if not np.all(np.isfinite(w)) or np.any(w <= 0):
        n_bad = int(_WEIGHT_CHECK_RANGE[np.argmax(~(w > 0))])
        diagnostics.append(f"{spec.id} omitted: weight is not positive at n = {n_bad}")
        return False
    if not (spec.bound > 0):
        diagnostics.append(f"{spec.id} omitted: bound {spec.bound:g} is not positive")
        return False
    return True


def registry(params: Params, diagnostics: Optional[list[str]] = None) -> list[CriterionSpec]:
    """Instantiate every criterion applicable to ``params``.

    Rows whose weight or bound is degenerate for these parameters are left
    out; a one-line reason is appended to ``diagnostics`` when given.
    """
    diag: list[str] = [] if diagnostics is None else diagnostics
    if isinstance(params, OrderParam):
        rows = _order_rows(params)
    elif isinstance(params, KParam):
        rows = _k_rows(params)
    elif isinstance(params, RParam):
        rows = _r_rows(params, diag)
    else:
        raise TypeError(f"unsupported parameter object {params!r}")
    kept = [r for r in rows if _valid(r, diag)]
    for msg in diag:
        log.debug(msg)
    return kept


def get_criterion(criterion_id: str, params: Params) -> CriterionSpec:
    diag: list[str] = []
    for spec in registry(params, diag):
        if spec.id == criterion_id:
            return spec
    if criterion_id not in CRITERION_IDS:
        raise DomainError(f"unknown criterion id {criterion_id!r}")
    reason = "; ".join(d for d in diag if d.startswith(criterion_id)) or \
        f"{criterion_id} does not take parameters {params!r}"
    raise DomainError(reason)


def check(f: NormalizedSeries, spec: CriterionSpec) -> CheckResult:
    s = weighted_sum(f, spec.weight)
    return CheckResult(spec.id, s, spec.bound, s <= spec.bound + SLACK, spec.implied_class.value)


def classify(f: NormalizedSeries, *params: Params,
             diagnostics: Optional[list[str]] = None) -> list[CheckResult]:
    """Run every registry row for each parameter set in ``params``.

    A failing row means only that this criterion is inconclusive for ``f``.
    """
    diag: list[str] = [] if diagnostics is None else diagnostics
    results = []
    for p in params:
        for spec in registry(p, diag):
            if f.degree > 64:
                w = spec.weight_at(f.indices)
                if np.any(w <= 0):
                    diag.append(f"{spec.id}: weight is not positive for some n <= {f.degree}; "
                                "sum test is vacuous for the high-degree tail")
            results.append(check(f, spec))
    return results


def extremal(spec: CriterionSpec) -> NormalizedSeries:
    """The extremal ``z - c z^2`` attaining equality in a sharp criterion."""
    if not spec.sharp or spec.extremal_c is None:
        raise UnsupportedError(f"criterion {spec.id} has no sharpness claim")
    return NormalizedSeries([-spec.extremal_c])


def eta_star_threshold(p: RParam) -> float:
    """Largest disk-starlike order implied by ``liu-r``: (2a+b)/(2a+1)."""
    if not p.alpha > 0:
        raise DomainError("eta_star_threshold requires alpha > 0")
    return (2 * p.alpha + p.beta) / (2 * p.alpha + 1)


def eta_convex_threshold(p: RParam) -> float:
    """Largest disk-convex order implied by ``liu-r``: (a-1+b)/a.  May be negative."""
    if not p.alpha > 0:
        raise DomainError("eta_convex_threshold requires alpha > 0")
    if not p.beta > 0:
        raise DomainError("eta_convex_threshold requires beta > 0")
    return (p.alpha - 1 + p.beta) / p.alpha


def clamp_order(eta: float) -> float:
    """Clamp a raw threshold into the admissible order range [0, 1)."""
    return min(max(eta, 0.0), 1.0 - 1e-15)
