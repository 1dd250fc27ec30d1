"""Job and report records used by the command-line front end, with JSON I/O."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .criteria import CheckResult
from .errors import DomainError
from .hypergeom import HyperParams, MembershipVerdict, TruncationCheck
from .negative import ImpliedBound, TSeries
from .series import NormalizedSeries, SampleGrid
from .verify import SharpnessReport, VerifyResult

COMMANDS = ("classify", "verify", "sharpness", "hypergeom")
INPUT_KINDS = ("series", "t-series", "hypergeometric", "extremal")


@dataclass(frozen=True)
class JobSpec:
    command: str
    input_kind: str
    series: Optional[NormalizedSeries] = None
    tseries: Optional[TSeries] = None
    hyper: Optional[HyperParams] = None
    extremal: Optional[str] = None
    alpha: Optional[float] = None
    beta: Optional[float] = None
    k: Optional[float] = None
    grid: Optional[SampleGrid] = None
    functional: Optional[str] = None
    criterion: Optional[str] = None
    epsilon: Optional[float] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise DomainError(f"unknown command {self.command!r}")
        if self.input_kind not in INPUT_KINDS:
            raise DomainError(f"unknown input kind {self.input_kind!r}")
        present = [x is not None for x in (self.series, self.tseries, self.hyper, self.extremal)]
        if sum(present) != 1:
            raise DomainError("exactly one input (series, t-series, hypergeometric, extremal) "
                              "must be given")
        expected = INPUT_KINDS[present.index(True)]
        if expected != self.input_kind:
            raise DomainError(f"input_kind {self.input_kind!r} does not match the {expected} input")
        if self.command == "verify" and self.functional is None:
            raise DomainError("a verify job needs a functional")
        if self.command == "sharpness" and (self.criterion is None or self.epsilon is None):
            raise DomainError("a sharpness job needs a criterion and epsilon")
        if (self.command == "hypergeom") != (self.hyper is not None):
            raise DomainError("hypergeometric input goes with the hypergeom command only")

    def to_json(self) -> dict:
        out: dict = {"command": self.command, "input_kind": self.input_kind}
        if self.series is not None:
            out["input"] = self.series.to_json()
        elif self.tseries is not None:
            out["input"] = self.tseries.to_json()
        elif self.hyper is not None:
            out["input"] = {"hypergeometric": self.hyper.to_json()}
        else:
            out["input"] = {"extremal": self.extremal}
        for key in ("alpha", "beta", "k", "functional", "criterion", "epsilon"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        if self.grid is not None:
            out["grid"] = self.grid.to_json()
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "JobSpec":
        kind = obj["input_kind"]
        inp = obj["input"]
        kwargs: dict = {}
        if kind == "series":
            kwargs["series"] = NormalizedSeries.from_json(inp)
        elif kind == "t-series":
            kwargs["tseries"] = TSeries.from_json(inp)
        elif kind == "hypergeometric":
            kwargs["hyper"] = HyperParams.from_json(inp["hypergeometric"])
        else:
            kwargs["extremal"] = inp["extremal"]
        for key in ("alpha", "beta", "k", "functional", "criterion", "epsilon"):
            if key in obj:
                kwargs[key] = obj[key]
        if "grid" in obj:
            kwargs["grid"] = SampleGrid.from_json(obj["grid"])
        return cls(obj["command"], kind, **kwargs)


@dataclass(frozen=True)
class Membership:
    """Exact membership decision for a negative-coefficient input."""

    cls: str
    sum: float
    bound: float
    member: bool

    def to_json(self) -> dict:
        return {"class": self.cls, "sum": self.sum, "bound": self.bound,
                "status": "member" if self.member else "non-member"}

    @classmethod
    def from_json(cls, obj: dict) -> "Membership":
        return cls(obj["class"], obj["sum"], obj["bound"], obj["status"] == "member")


@dataclass(frozen=True)
class Threshold:
    """A class-order threshold; ``implied_order`` is the raw value clamped to [0, 1)."""

    name: str
    raw: Optional[float]
    implied_order: Optional[float]
    status: str = "implied"

    def to_json(self) -> dict:
        return {"name": self.name, "raw": self.raw, "implied_order": self.implied_order,
                "status": self.status}

    @classmethod
    def from_json(cls, obj: dict) -> "Threshold":
        return cls(obj["name"], obj["raw"], obj["implied_order"], obj["status"])


@dataclass(frozen=True)
class Report:
    job: JobSpec
    checks: tuple[CheckResult, ...] = ()
    memberships: tuple[Membership, ...] = ()
    implied_bounds: tuple[tuple[str, ImpliedBound], ...] = ()
    thresholds: tuple[Threshold, ...] = ()
    verifications: tuple[VerifyResult, ...] = ()
    sharpness: Optional[SharpnessReport] = None
    hypergeom: Optional[MembershipVerdict] = None
    truncation: Optional[TruncationCheck] = None
    warnings: tuple[str, ...] = ()
    exit_code: int = 0
    version: str = field(default=__version__)

    def to_json(self) -> dict:
        out: dict = {"version": self.version, "job": self.job.to_json()}
        out["checks"] = [c.to_json() for c in self.checks]
        out["memberships"] = [m.to_json() for m in self.memberships]
        out["implied_bounds"] = [{"source": src, **b.to_json()} for src, b in self.implied_bounds]
        out["thresholds"] = [t.to_json() for t in self.thresholds]
        out["verifications"] = [v.to_json() for v in self.verifications]
        out["sharpness"] = self.sharpness.to_json() if self.sharpness else None
        out["hypergeom"] = self.hypergeom.to_json() if self.hypergeom else None
        out["truncation"] = self.truncation.to_json() if self.truncation else None
        out["warnings"] = list(self.warnings)
        out["exit_code"] = self.exit_code
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Report":
        return cls(
            job=JobSpec.from_json(obj["job"]),
            checks=tuple(CheckResult.from_json(c) for c in obj["checks"]),
            memberships=tuple(Membership.from_json(m) for m in obj["memberships"]),
            implied_bounds=tuple((b["source"], ImpliedBound.from_json(b))
                                 for b in obj["implied_bounds"]),
            thresholds=tuple(Threshold.from_json(t) for t in obj["thresholds"]),
            verifications=tuple(VerifyResult.from_json(v) for v in obj["verifications"]),
            sharpness=SharpnessReport.from_json(obj["sharpness"]) if obj["sharpness"] else None,
            hypergeom=MembershipVerdict.from_json(obj["hypergeom"]) if obj["hypergeom"] else None,
            truncation=TruncationCheck.from_json(obj["truncation"]) if obj["truncation"] else None,
            warnings=tuple(obj["warnings"]),
            exit_code=obj["exit_code"],
            version=obj["version"],
        )


def render_json(report: Report) -> str:
    return json.dumps(report.to_json(), indent=2) + "\n"


def parse_report(text: str) -> Report:
    return Report.from_json(json.loads(text))


def _fmt(x) -> str:
    if x is None:
        return "-"
    return f"{x:.6g}"


def render_text(report: Report) -> str:
    job = report.job
    lines = [f"schlicht {report.version}: {job.command} ({job.input_kind})"]
    if report.checks:
        lines.append("")
        lines.append(f"  {'criterion':<18} {'sum':>12} {'bound':>12}  {'class':<14} status")
        for c in report.checks:
            lines.append(f"  {c.criterion:<18} {_fmt(c.sum):>12} {_fmt(c.bound):>12}  "
                         f"{c.implied_class:<14} {c.status}")
    if report.memberships:
        lines.append("")
        for m in report.memberships:
            lines.append(f"  {m.cls:<18} sum {_fmt(m.sum)} vs {_fmt(m.bound)}: "
                         f"{'member' if m.member else 'non-member'}")
    if report.implied_bounds:
        lines.append("")
        for src, b in report.implied_bounds:
            tag = " (sharp)" if b.sharp else ""
            lines.append(f"  {src}: sum {b.weight_id} a_n = {_fmt(b.sum)} <= {_fmt(b.bound)}{tag}"
                         f" {'holds' if b.holds else 'FAILS'}")
    if report.thresholds:
        lines.append("")
        for t in report.thresholds:
            lines.append(f"  {t.name}: raw {_fmt(t.raw)}, implied order {_fmt(t.implied_order)}"
                         f" [{t.status}]")
    if report.verifications:
        lines.append("")
        for v in report.verifications:
            lines.append(f"  {v.functional:<15} extreme {_fmt(v.extreme_value)} at "
                         f"r={v.witness.radius:g}, theta={v.witness.angle:.6g}; "
                         f"margin {_fmt(v.margin)}: {v.verdict}")
    if report.sharpness:
        s = report.sharpness
        lines.append("")
        lines.append(f"  sharpness of {s.criterion} with epsilon {s.epsilon:g}:")
        lines.append(f"    perturbed extremal z - {s.perturbed_c:.6g} z^2; coefficient sum "
                     f"{_fmt(s.check_sum)} vs bound {_fmt(s.check_bound)}"
                     f" ({'fails' if s.check_fails else 'passes'})")
        lines.append(f"    {s.numeric.functional} extreme {_fmt(s.numeric.extreme_value)} "
                     f"(closed form {_fmt(s.closed_form_extreme)}), margin {_fmt(s.numeric.margin)}")
        lines.append(f"    limit margin as |z| -> 1: {_fmt(s.limit_margin)}; "
                     f"{'confirmed' if s.confirmed else 'NOT confirmed'}")
    if report.hypergeom:
        h = report.hypergeom
        lines.append("")
        for c in h.conditions:
            detail = f"lhs {_fmt(c.lhs)} vs rhs {_fmt(c.rhs)}" if c.evaluable else c.note
            lines.append(f"  {c.name}: {detail}{' holds' if c.holds else ''}")
        lines.append(f"  zF(a,b;c;z) in R(alpha,beta): {h.status} ({h.condition_used})")
        if h.range_note:
            lines.append(f"  note: {h.range_note}")
    if report.truncation:
        t = report.truncation
        lines.append(f"  cross-check, N={t.N}: sum n(n-1)|A_n| = {_fmt(t.partial_sum)} "
                     f"+ tail ~{_fmt(t.tail_estimate)} vs {_fmt(t.bound)} (tail-estimated)")
    for w in report.warnings:
        lines.append(f"warning: {w}")
    return "\n".join(lines) + "\n"
