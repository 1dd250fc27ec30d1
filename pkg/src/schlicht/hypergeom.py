"""Gaussian hypergeometric functions and membership of zF(a,b;c;z) in R(alpha, beta)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .criteria import SLACK, RParam
from .errors import DomainError
from .series import NormalizedSeries

Number = Union[float, complex]

_POLE_TOL = 1e-12


@dataclass(frozen=True)
class HyperParams:
    a: complex
    b: complex
    c: float

    def __init__(self, a: Number, b: Number, c: float):
        c = float(c)
        if round(c) <= 0 and abs(c - round(c)) < _POLE_TOL:
            raise DomainError(f"c = {c:g} is a pole (c must avoid 0, -1, -2, ...)")
        object.__setattr__(self, "a", complex(a))
        object.__setattr__(self, "b", complex(b))
        object.__setattr__(self, "c", c)

    @property
    def conjugate_pair(self) -> bool:
        """True when b is the complex conjugate of a (within 1e-12)."""
        return abs(self.b - self.a.conjugate()) < _POLE_TOL

    def to_json(self) -> dict:
        return {"a": [self.a.real, self.a.imag], "b": [self.b.real, self.b.imag], "c": self.c}

    @classmethod
    def from_json(cls, obj: dict) -> "HyperParams":
        def cx(v):
            if isinstance(v, (list, tuple)):
                return complex(float(v[0]), float(v[1]))
            return complex(v)
        return cls(cx(obj["a"]), cx(obj["b"]), obj["c"])


@dataclass(frozen=True)
class ConditionReport:
    name: str
    gate_ok: bool
    evaluable: bool
    lhs: Optional[float] = None
    rhs: Optional[float] = None
    holds: bool = False
    note: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "gate_ok": self.gate_ok, "evaluable": self.evaluable,
                "lhs": self.lhs, "rhs": self.rhs, "holds": self.holds, "note": self.note}

    @classmethod
    def from_json(cls, obj: dict) -> "ConditionReport":
        return cls(obj["name"], obj["gate_ok"], obj["evaluable"], obj["lhs"], obj["rhs"],
                   obj["holds"], obj["note"])


@dataclass(frozen=True)
class MembershipVerdict:
    condition_used: str
    lhs: Optional[float]
    rhs: Optional[float]
    holds: bool
    range_note: str = ""
    conditions: tuple[ConditionReport, ...] = field(default=())

    @property
    def status(self) -> str:
        return "implied" if self.holds else "inconclusive"

    def to_json(self) -> dict:
        return {"condition_used": self.condition_used, "lhs": self.lhs, "rhs": self.rhs,
                "holds": self.holds, "status": self.status, "range_note": self.range_note,
                "conditions": [c.to_json() for c in self.conditions]}

    @classmethod
    def from_json(cls, obj: dict) -> "MembershipVerdict":
        return cls(obj["condition_used"], obj["lhs"], obj["rhs"], obj["holds"],
                   obj["range_note"], tuple(ConditionReport.from_json(c) for c in obj["conditions"]))


def pochhammer(lam: Number, n: int) -> Number:
    """Rising factorial lam (lam+1) ... (lam+n-1); valid for every lam."""
    if n < 0 or int(n) != n:
        raise DomainError(f"pochhammer needs a nonnegative integer n, got {n!r}")
    out = 1.0 if not isinstance(lam, complex) else 1.0 + 0j
    for j in range(int(n)):
        out *= lam + j
    return out


def gamma_pos(x: float) -> float:
    """Gamma function on the positive reals."""
    if not x > 0:
        raise DomainError(f"gamma_pos requires x > 0, got {x!r}")
    return math.gamma(x)


def gauss_value_at_1(a: float, b: float, c: float) -> float:
    """F(a, b; c; 1) by Gauss's summation formula."""
    s = c - a - b
    if not s > 0:
        raise DomainError(f"Gauss summation requires RE(c-a-b)>0, got c-a-b = {s:g}")
    if a == 0 or b == 0:
        return 1.0
    args = (c, s, c - a, c - b)
    if any(t <= 0 for t in args):
        raise DomainError(f"Gamma arguments {args} must all be positive")
    if max(args) < 170:
        return gamma_pos(c) * gamma_pos(s) / (gamma_pos(c - a) * gamma_pos(c - b))
    return math.exp(math.lgamma(c) + math.lgamma(s) - math.lgamma(c - a) - math.lgamma(c - b))


def zf_coefficients(p: HyperParams, N: int) -> np.ndarray:
    """Coefficients A_2..A_N of zF(a,b;c;z) by the ratio recurrence."""
    if N < 2:
        raise DomainError("zf_series needs N >= 2")
    out = np.empty(N - 1, dtype=complex)
    A = p.a * p.b / p.c
    out[0] = A
    for n in range(2, N):
        A = A * (p.a + n - 1) * (p.b + n - 1) / ((p.c + n - 1) * n)
        out[n - 1] = A
    return out


def zf_series(p: HyperParams, N: int) -> NormalizedSeries:
    return NormalizedSeries(zf_coefficients(p, N))


def _condition_gate(cond: str, p: HyperParams, rp: RParam) -> list[str]:
    """Names of the parameter restrictions of ``cond`` that fail."""
    al, be = rp.alpha, rp.beta
    failed = []
    if not p.c > abs(p.a) + abs(p.b) + 2:
        failed.append("c>|a|+|b|+2")
    if cond == "condition-1":
        if not al >= 0:
            failed.append("alpha>=0")
    else:
        if not 1 - al >= be:
            failed.append("1-alpha>=beta")
        if not 0 <= al < 1:
            failed.append("alpha in [0,1)")
    return failed


def _bracket_terms(aa: float, bb: float, c: float):
    s = c - aa - bb
    poch2 = pochhammer(aa, 2) * pochhammer(bb, 2) / pochhammer(s - 2, 2)
    return gauss_value_at_1(aa, bb, c), poch2, aa * bb / (s - 1)


def condition_lhs(p: HyperParams, which: str) -> float:
    """Left-hand side of a membership condition (requires c > |a|+|b|+2)."""
    aa, bb = abs(p.a), abs(p.b)
    if not p.c - aa - bb - 2 > 0:
        raise DomainError("condition formulas need c > |a|+|b|+2 to be evaluable")
    F, poch2, ab = _bracket_terms(aa, bb, p.c)
    if which == "condition-1":
        return F * (poch2 + 2 * ab)
    return F * (poch2 + 3 * ab + 1)


def condition_rhs(rp: RParam, which: str) -> float:
    al, be = rp.alpha, rp.beta
    if which == "condition-1":
        return 2 * (1 - be) / (2 * al + 2 - be)
    return (6 - 5 * be + 2 * al) / (2 * al + 2 - be)


def check_r_membership(p: HyperParams, rp: RParam) -> MembershipVerdict:
    """Test whether the coefficient conditions certify zF(a,b;c;z) in R(alpha, beta).

    Condition 1 is tried before condition 2.  A verdict with ``holds=False``
    is inconclusive, never a proof of non-membership.
    """
    relaxed = p.conjugate_pair and p.c > max(0.0, 2 * (1 + p.a.real))
    range_note = ""
    reports = []
    gate_failures = {}
    for cond in ("condition-1", "condition-2"):
        failed = _condition_gate(cond, p, rp)
        if relaxed and failed == ["c>|a|+|b|+2"]:
            failed = []
            range_note = "b = conj(a): relaxed range c > max{0, 2(1+Re a)} applied"
        if failed:
            gate_failures[cond] = failed
            reports.append(ConditionReport(cond, False, False,
                                           note="gate failed: " + ", ".join(failed)))
            continue
        try:
            lhs = condition_lhs(p, cond)
        except DomainError:
            reports.append(ConditionReport(cond, True, False,
                                           note="not evaluable under stated range"))
            continue
        rhs = condition_rhs(rp, cond)
        reports.append(ConditionReport(cond, True, True, lhs, rhs, lhs <= rhs + SLACK))

    if len(gate_failures) == 2:
        detail = "; ".join(f"{k}: {', '.join(v)}" for k, v in gate_failures.items())
        raise DomainError(f"no membership condition applies ({detail})")

    for r in reports:
        if r.holds:
            return MembershipVerdict(r.name, r.lhs, r.rhs, True, range_note, tuple(reports))
    first = next((r for r in reports if r.evaluable), None)
    return MembershipVerdict("none", first.lhs if first else None,
                             first.rhs if first else None, False, range_note, tuple(reports))


@dataclass(frozen=True)
class TruncationCheck:
    """Criterion sum of a truncated zF series plus an estimate of the omitted tail."""

    N: int
    partial_sum: float
    tail_estimate: float
    bound: float
    passed: bool

    def to_json(self) -> dict:
        return {"N": self.N, "partial_sum": self.partial_sum, "tail_estimate": self.tail_estimate,
                "bound": self.bound, "pass": self.passed}

    @classmethod
    def from_json(cls, obj: dict) -> "TruncationCheck":
        return cls(obj["N"], obj["partial_sum"], obj["tail_estimate"], obj["bound"], obj["pass"])


def tail_estimate(terms: np.ndarray) -> float:
    """Estimate sum_{n>N} t_n from the last terms of a positive series.

    The local ratio t_N / t_{N-1} ~ 1 - p/N identifies a power-law decay
    n^-p; the tail is then about t_N N / (p - 1).  Returns ``inf`` when the
    series does not look summable.
    """
    t = np.abs(np.asarray(terms, dtype=float))
    if t.size < 2 or t[-1] == 0.0:
        return 0.0
    N = t.size + 1  # terms start at n = 2
    rho = t[-1] / t[-2]
    p = N * (1 - rho)
    if p <= 1:
        return math.inf
    return float(t[-1] * N / (p - 1))


def truncated_r12_check(p: HyperParams, rp: RParam, N: int = 200) -> TruncationCheck:
    """``sum n(n-1)|A_n|`` over n <= N, compared with 2(1-b)/(2a+2-b) after adding the tail estimate."""
    A = zf_coefficients(p, N)
    n = np.arange(2, N + 1, dtype=float)
    terms = n * (n - 1) * np.abs(A)
    s = float(np.sum(terms))
    tail = tail_estimate(terms)
    bound = 2 * (1 - rp.beta) / (2 * rp.alpha + 2 - rp.beta)
    return TruncationCheck(N, s, tail, bound, s + tail <= bound + SLACK)
