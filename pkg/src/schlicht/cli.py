"""Command-line interface.

Usage:
    schlicht classify --alpha 0 --coeffs "[-0.25]"
    schlicht verify --class starlike-order --alpha 0 --tcoeffs "[0.6]"
    schlicht sharpness th1-convex --alpha 0 --epsilon 0.1
    schlicht hypergeom --a 0.5 --b 0.5 --c 4 --alpha 0.5 --beta 0

Exit status is 0 when every requested check is implied or satisfied, 1 when
any check fails or is violated, and 2 on usage or domain errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import negative as neg
from .criteria import (
    CRITERION_IDS,
    KParam,
    OrderParam,
    RParam,
    clamp_order,
    classify,
    eta_convex_threshold,
    eta_star_threshold,
    extremal,
    get_criterion,
)
from .errors import SchlichtError, DomainError
from .hypergeom import HyperParams, check_r_membership, truncated_r12_check
from .report import JobSpec, Membership, Report, Threshold, render_json, render_text
from .series import NormalizedSeries, SampleGrid, default_grid, PROBE_RADIUS
from .verify import FUNCTIONALS, functional_param_kind, sharpness_probe, sup_abs_f2

GRID_ENV = "SCHLICHT_GRID_DEFAULT"
VERIFY_CLASSES = tuple(FUNCTIONALS) + ("sup-f2",)


class UsageError(SchlichtError):
    pass


def _load_json_arg(text: str, flag: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: malformed JSON ({exc.msg})") from None


def _load_json_file(path: str, flag: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"{flag}: cannot read {path} ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: malformed JSON in {path} ({exc.msg})") from None


def _complex_arg(text: str) -> complex:
    text = text.strip()
    if text.startswith("["):
        v = _load_json_arg(text, "complex parameter")
        return complex(float(v[0]), float(v[1]))
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise UsageError(f"cannot parse complex number {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schlicht",
        description="Coefficient criteria and disk verification for normalized analytic functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, function_input: bool = True):
        p.add_argument("--alpha", type=float, help="class order alpha (or R-class alpha with --beta)")
        p.add_argument("--beta", type=float, help="beta of R(alpha, beta)")
        p.add_argument("--k", type=float, help="k of k-UCV")
        if function_input:
            src = p.add_mutually_exclusive_group()
            src.add_argument("--coeffs", help="JSON list of a_2, a_3, ... of z + sum a_n z^n")
            src.add_argument("--tcoeffs", help="JSON list of a_n >= 0 of z - sum a_n z^n")
            src.add_argument("--input", metavar="FILE", help="JSON file holding the function")
            src.add_argument("--extremal", metavar="ID", choices=CRITERION_IDS,
                             help="extremal function of a sharp criterion")
        p.add_argument("--grid", metavar="FILE", help="JSON grid spec {\"radii\": [...], \"angles\": n}")
        p.add_argument("--json", action="store_true", help="emit the JSON report")

    p = sub.add_parser("classify", help="run every coefficient criterion")
    common(p)
    p = sub.add_parser("verify", help="evaluate a geometric functional on the disk")
    common(p)
    p.add_argument("--class", dest="functional", required=True, choices=VERIFY_CLASSES)
    p = sub.add_parser("sharpness", help="perturb the extremal of a sharp criterion")
    common(p, function_input=False)
    p.add_argument("criterion", choices=CRITERION_IDS)
    p.add_argument("--epsilon", type=float, default=0.1)
    p = sub.add_parser("hypergeom", help="membership of zF(a,b;c;z) in R(alpha, beta)")
    common(p, function_input=False)
    p.add_argument("--a", type=_complex_arg, help="a (real, a+bj, or [re, im])")
    p.add_argument("--b", type=_complex_arg, help="b (real, a+bj, or [re, im])")
    p.add_argument("--c", type=float)
    p.add_argument("--input", metavar="FILE", help="JSON file {\"hypergeometric\": {...}}")
    return parser


def _input_from_obj(obj) -> dict:
    if not isinstance(obj, dict):
        raise UsageError("input JSON must be an object")
    keys = [k for k in ("coeffs", "t_coeffs", "hypergeometric") if k in obj]
    if len(keys) != 1:
        raise UsageError("input JSON needs exactly one of 'coeffs', 't_coeffs', 'hypergeometric'")
    key = keys[0]
    if key == "coeffs":
        return {"series": NormalizedSeries.from_json(obj)}
    if key == "t_coeffs":
        return {"tseries": neg.TSeries.from_json(obj)}
    return {"hyper": HyperParams.from_json(obj["hypergeometric"])}


_KIND_OF = {"series": "series", "tseries": "t-series", "hyper": "hypergeometric",
            "extremal": "extremal"}


def _grid_from(args) -> Optional[SampleGrid]:
    path = args.grid or os.environ.get(GRID_ENV)
    if not path:
        return None
    return SampleGrid.from_json(_load_json_file(path, "--grid"))


def parse_job(argv: Sequence[str]) -> JobSpec:
    """Turn command-line arguments into a validated job."""
    return job_from_args(build_parser().parse_args(list(argv)))


def job_from_args(args: argparse.Namespace) -> JobSpec:
    inp: dict
    if args.command == "hypergeom":
        if args.input:
            inp = _input_from_obj(_load_json_file(args.input, "--input"))
        else:
            if args.a is None or args.b is None or args.c is None:
                raise UsageError("hypergeom needs --a, --b and --c (or --input)")
            inp = {"hyper": HyperParams(args.a, args.b, args.c)}
        if "hyper" not in inp:
            raise UsageError("hypergeom needs hypergeometric parameters")
        if args.alpha is None or args.beta is None:
            raise UsageError("hypergeom needs --alpha and --beta")
    elif args.command == "sharpness":
        inp = {"extremal": args.criterion}
    else:
        if args.coeffs is not None:
            inp = {"series": NormalizedSeries(_load_json_arg(args.coeffs, "--coeffs"))}
        elif args.tcoeffs is not None:
            inp = {"tseries": neg.TSeries(_load_json_arg(args.tcoeffs, "--tcoeffs"))}
        elif args.input is not None:
            inp = _input_from_obj(_load_json_file(args.input, "--input"))
        elif args.extremal is not None:
            inp = {"extremal": args.extremal}
        else:
            raise UsageError(f"{args.command} needs --coeffs, --tcoeffs, --input or --extremal")
        if "hyper" in inp:
            raise UsageError("use the hypergeom command for hypergeometric input")

    if args.alpha is None and args.beta is None and args.k is None:
        raise UsageError(f"{args.command} needs at least one of --alpha, --beta, --k")
    if args.beta is None and args.alpha is not None:
        OrderParam(args.alpha)  # validates alpha in [0, 1)

    (key, value), = inp.items()
    return JobSpec(
        command=args.command,
        input_kind=_KIND_OF[key],
        alpha=args.alpha,
        beta=args.beta,
        k=args.k,
        grid=_grid_from(args),
        functional=getattr(args, "functional", None),
        criterion=getattr(args, "criterion", None) if args.command == "sharpness" else None,
        epsilon=args.epsilon if args.command == "sharpness" else None,
        **{key: value},
    )


def _params(job: JobSpec) -> list:
    """Parameter objects requested by the job, in canonical order."""
    out = []
    if job.beta is not None:
        out.append(RParam(job.alpha if job.alpha is not None else 0.0, job.beta))
    elif job.alpha is not None:
        out.append(OrderParam(job.alpha))
    if job.k is not None:
        out.append(KParam(job.k))
    return out


def _params_for_criterion(job: JobSpec, criterion_id: str):
    if criterion_id == "kw-kucv":
        if job.k is None:
            raise UsageError("kw-kucv needs --k")
        return KParam(job.k)
    if criterion_id in ("liu-r", "th7-nn1-r", "th7-n2-r"):
        if job.beta is None:
            raise UsageError(f"{criterion_id} needs --alpha and --beta")
        return RParam(job.alpha if job.alpha is not None else 0.0, job.beta)
    if job.alpha is None:
        raise UsageError(f"{criterion_id} needs --alpha")
    return OrderParam(job.alpha)


def _function(job: JobSpec) -> NormalizedSeries:
    if job.series is not None:
        return job.series
    if job.tseries is not None:
        return neg.to_normalized(job.tseries)
    spec = get_criterion(job.extremal, _params_for_criterion(job, job.extremal))
    return extremal(spec)


def _threshold(name: str, raw: float) -> Threshold:
    # a negative raw order implies nothing about order 0, so the clamped
    # value is reported but not claimed
    return Threshold(name, raw, clamp_order(raw), "implied" if raw >= 0 else "inconclusive")


def _r_thresholds(p: RParam) -> list[Threshold]:
    out = []
    if p.alpha > 0:
        eta = eta_star_threshold(p)
        out.append(_threshold("eta-star (S*_eta)", eta))
        if p.beta > 0:
            eta = eta_convex_threshold(p)
            out.append(_threshold("eta-convex (C_eta)", eta))
        else:
            out.append(Threshold("eta-convex (C_eta)", None, None, "not-applicable"))
    return out


def _t_section(t: neg.TSeries, params: list, warnings: list[str]):
    memberships, bounds, thresholds = [], [], []
    for p in params:
        if isinstance(p, OrderParam):
            a = p.alpha
            ts = neg.member_ts_star(t, p)
            memberships.append(Membership(f"TS*({a:g})", neg.ts_star_sum(t, a), 1 - a, ts))
            if ts:
                bounds += [(f"TS*({a:g})", b) for b in neg.implied_bounds_ts(t, p)]
            tc = neg.member_tc(t, p)
            memberships.append(Membership(f"TC({a:g})", neg.tc_sum(t, a), 1 - a, tc))
            if tc:
                bounds += [(f"TC({a:g})", b) for b in neg.implied_bounds_tc(t, p)]
        elif isinstance(p, RParam):
            label = f"TR({p.alpha:g},{p.beta:g})"
            w = neg.tr_weight_warning(t, p)
            if w:
                warnings.append(w)
            tr = neg.member_tr(t, p)
            memberships.append(Membership(label, neg.tr_sum(t, p), 1 - p.beta, tr))
            if tr:
                bounds += [(label, b) for b in neg.implied_bounds_tr(t, p, warnings)]
                if p.alpha > 0:
                    star, convex = neg.eta_thresholds_tr(p)
                    thresholds.append(_threshold("TS*_eta", star))
                    if convex is None:
                        thresholds.append(Threshold("TC_eta", None, None, "not-applicable"))
                    else:
                        thresholds.append(_threshold("TC_eta", convex))
    return memberships, bounds, thresholds


def run(job: JobSpec) -> Report:
    """Execute a job.  Domain errors propagate to the caller."""
    warnings: list[str] = []
    if job.command == "classify":
        f = _function(job)
        params = _params(job)
        checks = classify(f, *params, diagnostics=warnings)
        memberships, bounds, thresholds = [], [], []
        for p in params:
            if isinstance(p, RParam):
                thresholds += _r_thresholds(p)
        if job.tseries is not None:
            memberships, bounds, t_thr = _t_section(job.tseries, params, warnings)
            thresholds += t_thr
        ok = all(c.passed for c in checks) and all(m.member for m in memberships)
        return Report(job, checks=tuple(checks), memberships=tuple(memberships),
                      implied_bounds=tuple(bounds), thresholds=tuple(thresholds),
                      warnings=tuple(warnings), exit_code=0 if ok else 1)

    if job.command == "verify":
        f = _function(job)
        grid = job.grid or default_grid().with_radius(PROBE_RADIUS)
        if job.functional == "sup-f2":
            if job.beta is not None and not job.beta > 0:
                raise DomainError("sup-f2 needs beta > 0")
            res = sup_abs_f2(f, grid, job.beta)
        else:
            kind = functional_param_kind(job.functional)
            p = next((q for q in _params(job) if isinstance(q, kind)), None)
            if p is None:
                raise UsageError(f"--class {job.functional} needs parameters of type {kind.__name__}")
            res = FUNCTIONALS[job.functional](f, p, grid)
        if res.verdict == "singular":
            warnings.append(f"singular sample at r={res.witness.radius:g}, "
                            f"theta={res.witness.angle:.6g}")
        return Report(job, verifications=(res,), warnings=tuple(warnings),
                      exit_code=0 if res.satisfied else 1)

    if job.command == "sharpness":
        spec = get_criterion(job.criterion, _params_for_criterion(job, job.criterion))
        grid = (job.grid or default_grid()).with_radius(PROBE_RADIUS)
        rep = sharpness_probe(spec, job.epsilon, grid)
        return Report(job, sharpness=rep, exit_code=0 if rep.confirmed else 1)

    rp = RParam(job.alpha, job.beta)
    verdict = check_r_membership(job.hyper, rp)
    trunc = None
    if verdict.holds and verdict.condition_used == "condition-1":
        trunc = truncated_r12_check(job.hyper, rp)
        warnings.append("truncation cross-check is tail-estimated")
    return Report(job, hypergeom=verdict, truncation=trunc, warnings=tuple(warnings),
                  exit_code=0 if verdict.holds else 1)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(argv)
        job = job_from_args(args)
        report = run(job)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code) if isinstance(exc.code, int) else 2
    except (SchlichtError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    out = render_json(report) if args.json else render_text(report)
    sys.stdout.write(out)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
