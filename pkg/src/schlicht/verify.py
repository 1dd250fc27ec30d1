"""Numerical verification of the geometric class inequalities on a sampled disk.

Each ``margin_*`` function evaluates one functional over every grid sample,
reduces it to its extreme value (min for lower-bounded functionals, max for
upper-bounded ones) and reports the signed margin to the class threshold.
Positive margin means the inequality holds at every sample.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .criteria import CriterionSpec, ClassTag, KParam, OrderParam, RParam, check
from .errors import DomainError, SingularityError, UnsupportedError
from .series import (
    ZERO_GUARD,
    DiskPoint,
    NormalizedSeries,
    SampleGrid,
    evaluate_d1,
    evaluate_d2,
    f_over_z,
)

VERDICT_TOL = 1e-9
CLOSED_FORM_TOL = 1e-6


@dataclass(frozen=True)
class VerifyResult:
    functional: str
    extreme_value: float
    witness: DiskPoint
    margin: float
    verdict: str

    @property
    def satisfied(self) -> bool:
        return self.verdict == "satisfied"

    def to_json(self) -> dict:
        return {"functional": self.functional, "extreme": self.extreme_value,
                "witness": self.witness.to_json(), "margin": self.margin,
                "verdict": self.verdict}

    @classmethod
    def from_json(cls, obj: dict) -> "VerifyResult":
        return cls(obj["functional"], obj["extreme"], DiskPoint.from_json(obj["witness"]),
                   obj["margin"], obj["verdict"])


class _Samples:
    """Lazily computed f(z)/z, f', f'' and guarded ratios on a grid."""

    def __init__(self, f: NormalizedSeries, grid: SampleGrid):
        self.grid = grid
        self.z = grid.points()
        self.fz = f_over_z(f, self.z)
        self.d1 = evaluate_d1(f, self.z)
        self._d2 = None
        self._f = f

    @property
    def d2(self):
        if self._d2 is None:
            self._d2 = evaluate_d2(self._f, self.z)
        return self._d2

    def guard(self, den: np.ndarray) -> None:
        small = np.abs(den) < ZERO_GUARD
        if np.any(small):
            i = int(np.argmax(small))
            raise SingularityError(f"zero guard tripped at sample {i}", complex(self.z[i]))

    @property
    def s(self) -> np.ndarray:
        self.guard(self.fz)
        return self.d1 / self.fz

    @property
    def q(self) -> np.ndarray:
        self.guard(self.d1)
        return self.z * self.d2 / self.d1


def _reduce(name: str, grid: SampleGrid, values: np.ndarray, mode: str,
            margin_of: Callable[[float], float]) -> VerifyResult:
    if mode == "min":
        i = int(np.argmin(values))
    else:
        i = int(np.argmax(values))
    extreme = float(values[i])
    margin = float(margin_of(extreme))
    verdict = "satisfied" if margin >= -VERDICT_TOL else "violated"
    return VerifyResult(name, extreme, grid.point_at(i), margin, verdict)


def _run(name: str, f: NormalizedSeries, grid: SampleGrid,
         compute: Callable[[_Samples], np.ndarray], mode: str,
         margin_of: Callable[[float], float]) -> VerifyResult:
    smp = _Samples(f, grid)
    try:
        values = compute(smp)
    except SingularityError as exc:
        z = exc.point
        angle = math.atan2(z.imag, z.real) % (2 * math.pi)
        return VerifyResult(name, math.nan, DiskPoint(abs(z), angle), math.nan, "singular")
    return _reduce(name, grid, values, mode, margin_of)


def margin_starlike_order(f: NormalizedSeries, alpha: OrderParam, grid: SampleGrid) -> VerifyResult:
    """min Re(z f'/f) against alpha."""
    return _run("starlike-order", f, grid, lambda s: s.s.real, "min", lambda x: x - alpha.alpha)


def margin_starlike_disk(f: NormalizedSeries, alpha: OrderParam, grid: SampleGrid) -> VerifyResult:
    """max |z f'/f - 1| against 1 - alpha."""
    return _run("starlike-disk", f, grid, lambda s: np.abs(s.s - 1), "max",
                lambda x: (1 - alpha.alpha) - x)


def margin_convex_order(f: NormalizedSeries, alpha: OrderParam, grid: SampleGrid) -> VerifyResult:
    """min Re(1 + z f''/f') against alpha."""
    return _run("convex-order", f, grid, lambda s: 1 + s.q.real, "min", lambda x: x - alpha.alpha)


def margin_convex_disk(f: NormalizedSeries, alpha: OrderParam, grid: SampleGrid) -> VerifyResult:
    """max |z f''/f'| against 1 - alpha."""
    return _run("convex-disk", f, grid, lambda s: np.abs(s.q), "max",
                lambda x: (1 - alpha.alpha) - x)


def margin_kucv(f: NormalizedSeries, k: KParam, grid: SampleGrid) -> VerifyResult:
    """min of Re(1 + z f''/f') - k |z f''/f'| against 0."""
    def compute(s: _Samples):
        q = s.q
        return 1 + q.real - k.k * np.abs(q)
    return _run("kucv", f, grid, compute, "min", lambda x: x)


def margin_parabolic(f: NormalizedSeries, alpha: OrderParam, grid: SampleGrid) -> VerifyResult:
    """min of 1 - 2 alpha + Re(z f'/f) - |z f'/f - 1| against 0."""
    def compute(s: _Samples):
        v = s.s
        return 1 - 2 * alpha.alpha + v.real - np.abs(v - 1)
    return _run("parabolic", f, grid, compute, "min", lambda x: x)


def margin_R(f: NormalizedSeries, p: RParam, grid: SampleGrid) -> VerifyResult:
    """min Re[(z f'/f)(alpha z f''/f' + 1)] against beta."""
    def compute(s: _Samples):
        # product simplifies to (z f' + alpha z^2 f'') / f, so f' may vanish
        s.guard(s.fz)
        return ((s.d1 + p.alpha * s.z * s.d2) / s.fz).real
    return _run("r-class", f, grid, compute, "min", lambda x: x - p.beta)


def sup_abs_f2(f: NormalizedSeries, grid: SampleGrid, beta: Optional[float] = None) -> VerifyResult:
    """max |f''| over the grid.

    The margin is measured against ``beta`` when given, otherwise against
    ``sum n(n-1)|a_n|``, which bounds |f''| on the whole disk.
    """
    if beta is None:
        n = f.indices
        beta = float(np.sum(n * (n - 1) * np.abs(f.as_array())))
    return _run("sup-f2", f, grid, lambda s: np.abs(s.d2), "max", lambda x: beta - x)


FUNCTIONALS = {
    "starlike-order": margin_starlike_order,
    "starlike-disk": margin_starlike_disk,
    "convex-order": margin_convex_order,
    "convex-disk": margin_convex_disk,
    "kucv": margin_kucv,
    "parabolic": margin_parabolic,
    "r-class": margin_R,
}

_PARAM_KIND = {
    "starlike-order": OrderParam,
    "starlike-disk": OrderParam,
    "convex-order": OrderParam,
    "convex-disk": OrderParam,
    "kucv": KParam,
    "parabolic": OrderParam,
    "r-class": RParam,
}


def functional_param_kind(name: str):
    return _PARAM_KIND[name]


_CLASS_FUNCTIONAL = {
    ClassTag.STARLIKE_DISK: "starlike-disk",
    ClassTag.CONVEX_DISK: "convex-disk",
    ClassTag.STARLIKE_ORDER: "starlike-order",
    ClassTag.CONVEX_ORDER: "convex-order",
    ClassTag.KUCV: "kucv",
    ClassTag.PARABOLIC: "parabolic",
    ClassTag.R: "r-class",
}


def verify_implied_class(f: NormalizedSeries, spec: CriterionSpec, grid: SampleGrid) -> VerifyResult:
    """Run the functional defining ``spec.implied_class`` with the row's parameters."""
    name = _CLASS_FUNCTIONAL[spec.implied_class]
    return FUNCTIONALS[name](f, spec.params, grid)


def degree2_boundary_value(tag: ClassTag, params, c: float, r: float) -> float:
    """Closed-form extreme of the class functional for z - c z^2 on |z| = r.

    For c > 0 the extreme sits at z = r on the positive real axis.  Returns
    the value of the same quantity that ``verify_implied_class`` reduces.
    """
    x = c * r
    if tag in (ClassTag.STARLIKE_DISK,):
        return x / (1 - x)
    if tag == ClassTag.STARLIKE_ORDER:
        return (1 - 2 * x) / (1 - x)
    if tag == ClassTag.CONVEX_DISK:
        return 2 * x / (1 - 2 * x)
    if tag == ClassTag.CONVEX_ORDER:
        return 1 - 2 * x / (1 - 2 * x)
    if tag == ClassTag.KUCV:
        w = 2 * x
        return (1 - (params.k + 2) * w) / (1 - w)
    if tag == ClassTag.PARABOLIC:
        return 1 - 2 * params.alpha + (1 - 3 * x) / (1 - x)
    if tag == ClassTag.R:
        return (1 - 2 * (1 + params.alpha) * x) / (1 - x)
    raise UnsupportedError(f"no closed form for {tag}")


@dataclass(frozen=True)
class SharpnessReport:
    """Outcome of perturbing a sharp criterion's extremal by a factor 1 + epsilon."""

    criterion: str
    epsilon: float
    perturbed_c: float
    check_sum: float
    check_bound: float
    check_fails: bool
    numeric: VerifyResult
    closed_form_extreme: float
    closed_form_agrees: bool
    boundary_gap: float
    limit_margin: float
    geometric_violation: bool
    confirmed: bool

    def to_json(self) -> dict:
        return {
            "criterion": self.criterion,
            "epsilon": self.epsilon,
            "perturbed_c": self.perturbed_c,
            "check_sum": self.check_sum,
            "check_bound": self.check_bound,
            "check_fails": self.check_fails,
            "numeric": self.numeric.to_json(),
            "closed_form_extreme": self.closed_form_extreme,
            "closed_form_agrees": self.closed_form_agrees,
            "boundary_gap": self.boundary_gap,
            "limit_margin": self.limit_margin,
            "geometric_violation": self.geometric_violation,
            "confirmed": self.confirmed,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SharpnessReport":
        return cls(obj["criterion"], obj["epsilon"], obj["perturbed_c"], obj["check_sum"],
                   obj["check_bound"], obj["check_fails"], VerifyResult.from_json(obj["numeric"]),
                   obj["closed_form_extreme"], obj["closed_form_agrees"], obj["boundary_gap"],
                   obj["limit_margin"], obj["geometric_violation"], obj["confirmed"])


def _margin_from_extreme(tag: ClassTag, params, extreme: float) -> float:
    if tag in (ClassTag.STARLIKE_DISK, ClassTag.CONVEX_DISK):
        return (1 - params.alpha) - extreme
    if tag in (ClassTag.STARLIKE_ORDER, ClassTag.CONVEX_ORDER):
        return extreme - params.alpha
    if tag == ClassTag.R:
        return extreme - params.beta
    return extreme


def _limit_margin(tag: ClassTag, params, c: float) -> float:
    """Closed-form margin of z - c z^2 as |z| -> 1 along the positive axis."""
    uses_f_prime = tag in (ClassTag.CONVEX_DISK, ClassTag.CONVEX_ORDER, ClassTag.KUCV)
    # a zero of f' (or of f/z) in the closed disk already rules the class out
    if (2 * c if uses_f_prime else c) >= 1:
        return -math.inf
    return _margin_from_extreme(tag, params, degree2_boundary_value(tag, params, c, 1.0))


def sharpness_probe(spec: CriterionSpec, epsilon: float, grid: SampleGrid) -> SharpnessReport:
    """Show that a sharp bound cannot be enlarged.

    The extremal coefficient is inflated to c (1 + epsilon).  The report
    records that the coefficient test then fails, compares the numerical
    extreme at the largest grid radius with its closed form, and gives the
    closed-form margin in the limit |z| -> 1, which is negative for every
    epsilon > 0.  With epsilon = 0 the probe degenerates to the equality case.
    """
    if not spec.sharp or spec.extremal_c is None:
        raise UnsupportedError(f"criterion {spec.id} has no sharpness claim")
    if epsilon < 0:
        raise DomainError("epsilon must be nonnegative")
    if grid.max_radius() < 0.9999:
        raise DomainError("sharpness probe needs a grid radius >= 0.9999")
    c = spec.extremal_c * (1 + epsilon)
    f = NormalizedSeries([-c])
    res = check(f, spec)
    tag, params = spec.implied_class, spec.params

    r_max = grid.max_radius()
    outer = SampleGrid([r_max], grid.angle_count)
    numeric = verify_implied_class(f, spec, outer)
    closed = degree2_boundary_value(tag, params, c, r_max)
    agrees = numeric.verdict != "singular" and abs(numeric.extreme_value - closed) <= CLOSED_FORM_TOL
    gap = _margin_from_extreme(tag, params, closed)
    limit = _limit_margin(tag, params, c)
    violated = numeric.verdict == "violated"

    if epsilon == 0:
        confirmed = res.passed and numeric.margin >= -VERDICT_TOL
    else:
        confirmed = (not res.passed) and (violated or (agrees and limit < 0))
    return SharpnessReport(spec.id, epsilon, c, res.sum, res.bound, not res.passed, numeric,
                           closed, agrees, gap, limit, violated, confirmed)
