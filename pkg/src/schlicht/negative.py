"""Functions with negative coefficients, f(z) = z - sum a_n z^n with a_n >= 0.

For this class the coefficient conditions are exact characterizations, so
membership is decided rather than merely implied.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .criteria import SLACK, OrderParam, RParam, eta_star_threshold
from .errors import ContractError, DomainError
from .series import NormalizedSeries


@dataclass(frozen=True)
class TSeries:
    coeffs: tuple[float, ...]

    def __init__(self, coeffs: Iterable = ()):
        values = tuple(float(c) for c in coeffs)
        for c in values:
            if not math.isfinite(c):
                raise DomainError(f"t-coefficient {c!r} is not finite")
            if c < 0:
                raise DomainError(f"t-coefficients must be nonnegative, got {c!r}")
        object.__setattr__(self, "coeffs", values)

    @property
    def degree(self) -> int:
        return 1 + len(self.coeffs)

    @property
    def indices(self) -> np.ndarray:
        return np.arange(2, self.degree + 1, dtype=float)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coeffs, dtype=float)

    def wsum(self, weight) -> float:
        if not self.coeffs:
            return 0.0
        return float(np.sum(weight(self.indices) * self.as_array()))

    def scaled(self, factor: float) -> "TSeries":
        return TSeries(c * factor for c in self.coeffs)

    def to_json(self) -> dict:
        return {"t_coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "TSeries":
        if "t_coeffs" not in obj:
            raise DomainError("t-series literal needs a 't_coeffs' key")
        return cls(obj["t_coeffs"])


@dataclass(frozen=True)
class ImpliedBound:
    weight_id: str
    sum: float
    bound: float
    sharp: bool
    holds: bool

    def to_json(self) -> dict:
        return {"weight": self.weight_id, "sum": self.sum, "bound": self.bound,
                "sharp": self.sharp, "holds": self.holds}

    @classmethod
    def from_json(cls, obj: dict) -> "ImpliedBound":
        return cls(obj["weight"], obj["sum"], obj["bound"], obj["sharp"], obj["holds"])


WEIGHTS = {
    "1": lambda n: np.ones_like(n),
    "n": lambda n: n,
    "n-1": lambda n: n - 1,
    "n(n-1)": lambda n: n * (n - 1),
    "n^2": lambda n: n * n,
}


def _bound(f: TSeries, weight_id: str, bound: float, sharp: bool) -> ImpliedBound:
    s = f.wsum(WEIGHTS[weight_id])
    return ImpliedBound(weight_id, s, bound, sharp, s <= bound + SLACK)


def to_normalized(f: TSeries) -> NormalizedSeries:
    return NormalizedSeries(-c for c in f.coeffs)


def ts_star_sum(f: TSeries, alpha: float) -> float:
    return f.wsum(lambda n: n - alpha)


def tc_sum(f: TSeries, alpha: float) -> float:
    return f.wsum(lambda n: n * (n - alpha))


def tr_weight(p: RParam):
    return lambda n: p.alpha * n * n + (1 - p.alpha) * n - p.beta


def tr_sum(f: TSeries, p: RParam) -> float:
    return f.wsum(tr_weight(p))


def member_ts_star(f: TSeries, alpha: OrderParam) -> bool:
    """Exact membership in TS*(alpha), equivalently in TS*_alpha."""
    a = alpha.alpha
    return ts_star_sum(f, a) <= 1 - a + SLACK


def member_tc(f: TSeries, alpha: OrderParam) -> bool:
    """Exact membership in TC(alpha), equivalently in TC_alpha."""
    a = alpha.alpha
    return tc_sum(f, a) <= 1 - a + SLACK


def tr_weight_warning(f: TSeries, p: RParam) -> Optional[str]:
    if not f.coeffs:
        return None
    w = tr_weight(p)(f.indices)
    if np.any(w <= 0):
        n_bad = int(f.indices[np.argmax(w <= 0)])
        return (f"TR weight alpha n^2+(1-alpha)n-beta is not positive at n = {n_bad}; "
                "the coefficient test is vacuous there")
    return None


def member_tr(f: TSeries, p: RParam) -> bool:
    """Exact membership in TR(alpha, beta)."""
    return tr_sum(f, p) <= 1 - p.beta + SLACK


def sup_f2(f: TSeries) -> float:
    """Supremum of |f''| over the unit disk, ``sum n(n-1) a_n``."""
    return f.wsum(WEIGHTS["n(n-1)"])


def second_derivative_criterion(f: TSeries, beta: float) -> bool:
    """Whether |f''(z)| <= beta throughout the disk."""
    if not beta > 0:
        raise DomainError("second_derivative_criterion requires beta > 0")
    return sup_f2(f) <= beta + SLACK


def implied_bounds_tc(f: TSeries, alpha: OrderParam) -> list[ImpliedBound]:
    if not member_tc(f, alpha):
        raise ContractError(f"f is not in TC({alpha.alpha:g})")
    a = alpha.alpha
    return [
        _bound(f, "n", (1 - a) / (2 - a), True),
        _bound(f, "n(n-1)", 1 - a, False),
        _bound(f, "n-1", (1 - a) / (2 * (2 - a)), True),
        _bound(f, "n^2", 2 * (1 - a) / (2 - a), True),
    ]


def implied_bounds_ts(f: TSeries, alpha: OrderParam) -> list[ImpliedBound]:
    if not member_ts_star(f, alpha):
        raise ContractError(f"f is not in TS*({alpha.alpha:g})")
    a = alpha.alpha
    return [
        _bound(f, "1", (1 - a) / (2 - a), True),
        _bound(f, "n-1", 1 - a, False),
        _bound(f, "n", 2 * (1 - a) / (2 - a), True),
    ]


def implied_bounds_tr(f: TSeries, p: RParam,
                      diagnostics: Optional[list[str]] = None) -> list[ImpliedBound]:
    """Coefficient bounds implied by membership in TR(alpha, beta).

    Each part is returned only under its own parameter restrictions; the
    others are reported as not applicable through ``diagnostics``.
    """
    if not member_tr(f, p):
        raise ContractError(f"f is not in TR({p.alpha:g}, {p.beta:g})")
    diag: list[str] = [] if diagnostics is None else diagnostics
    a, b = p.alpha, p.beta
    out = []

    if a > 0:
        out.append(_bound(f, "n(n-1)", (1 - b) / a, False))
    else:
        diag.append("TR part (1) not applicable: requires alpha > 0")

    if b < 3 * a + 1 and 0 <= a < 1:
        out.append(_bound(f, "n-1", (1 - b) / (1 - a), False))
    elif b >= 3 * a + 1 and a >= 0:
        out.append(_bound(f, "n-1", (1 - b) / (2 * a + 2 - b), b > 3 * a + 1))
    else:
        diag.append("TR part (2) not applicable: requires 0 <= alpha < 1, "
                    "or alpha >= 0 with beta >= 3 alpha + 1")

    if not 0 <= a <= 1:
        diag.append("TR part (3) not applicable: requires 0 <= alpha <= 1")
    elif b < 2 * (1 - a) and a > 0:
        out.append(_bound(f, "n^2", (1 - b) / a, False))
    elif b >= 2 * (1 - a) and b >= 0:
        out.append(_bound(f, "n^2", 4 * (1 - b) / (2 * a + 2 - b), b > 2 * (1 - a)))
    else:
        diag.append("TR part (3) not applicable: requires alpha > 0 when "
                    "beta < 2(1-alpha), or beta >= 0 otherwise")

    if a >= 0 and b >= 0:
        out.append(_bound(f, "n", 2 * (1 - b) / (2 * a + 2 - b), True))
    else:
        diag.append("TR part (4) not applicable: requires alpha, beta >= 0")
    return out


def tc_subset_tr_threshold(p: RParam) -> float:
    """Order eta0 = (2a+3b-2)/(2a+b) with TC(eta) contained in TR(a, b) for eta >= eta0."""
    a, b = p.alpha, p.beta
    if not (0 <= b < 1) or not a > 0 or not 2 * a + b > 0:
        raise DomainError("tc_subset_tr_threshold requires 0 <= beta < 1 and alpha > 0")
    return (2 * a + 3 * b - 2) / (2 * a + b)


def eta_thresholds_tr(p: RParam) -> tuple[float, Optional[float]]:
    """Raw (disk-starlike, disk-convex) order thresholds for members of TR(a, b).

    The convex threshold (a-1+b)/a is only valid for beta >= 0; it is
    ``None`` for negative beta.
    """
    star = eta_star_threshold(p)
    if p.beta < 0:
        return star, None
    return star, (p.alpha - 1 + p.beta) / p.alpha
