"""Command-line entry point: ``moonshine expand|verify|cm163|numerology|all``."""

from __future__ import annotations

import argparse
import inspect
import json
import re
import sys
import warnings
from collections.abc import Sequence

from . import modular
from .cm163 import CM163_J_VALUE, exp_digits_check, factorization_check, residual_check
from .denominator import dyson_eta_report
from .hauptmodul import mckay_thompson
from .numerology import NUMEROLOGY_CHECKS
from .report import Status, VerificationReport, merge
from .suite import IDENTITIES, run_suite

MIN_CM_DIGITS = 15
_ETA = re.compile(r"eta\^(-?\d+)$")
_PLAIN = {
    "j": modular.j_series,
    "j744": modular.j_minus_744,
    "e4": modular.eisenstein_e4,
    "delta": modular.delta_series,
}
_CLASSES = {"t1A": "1A", "t2A": "2A", "t2B": "2B"}


class UsageError(ValueError):
    pass


def _exit_code(status: Status) -> int:
    return 0 if status is Status.VERIFIED else (2 if status is Status.REJECTED else 1)


def _positive(name: str, value: int | None) -> None:
    if value is not None and value < 1:
        raise UsageError(f"{name} must be positive, got {value}")


def _emit(obj: dict, text: str, fmt: str) -> None:
    print(json.dumps(obj) if fmt == "json" else text)


def _series_payload(series) -> dict:
    return {
        "valuation": series.valuation,
        "order": series.order,
        "coefficients": list(series.coefficients),
        "text": str(series),
    }


def cmd_expand(args: argparse.Namespace) -> int:
    name, order = args.series, args.order
    _positive("--order", order)
    eta = _ETA.match(name)
    if args.report and not eta:
        raise UsageError("--report density applies only to eta^<m>")
    if eta:
        m = int(eta.group(1))
        if args.report:
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                rep = dyson_eta_report(m, order)
            for w in caught:
                print(f"warning: {w.message}", file=sys.stderr)
            payload = {"series": name, **_series_payload(rep.expansion), **rep.to_dict()}
            text = "\n".join([
                str(modular.EtaExpansion(rep.prefactor_exponent, rep.expansion)),
                f"nonzero coefficients: {rep.nonzero_count} of {order} (density {rep.density})",
            ])
        else:
            exp = modular.eta_power(m, order)
            payload = {"series": name, "prefactor_exponent": str(exp.prefactor_exponent),
                       **_series_payload(exp.product_part)}
            text = str(exp)
    elif name in _PLAIN:
        series = _PLAIN[name](order)
        payload, text = {"series": name, **_series_payload(series)}, str(series)
    elif name in _CLASSES:
        t = mckay_thompson(_CLASSES[name], order)
        payload = {"series": name, "class_label": t.class_label, "group_description": t.group_description,
                   **_series_payload(t.expansion)}
        text = f"T_{t.class_label} [{t.group_description}]: {t.expansion}"
    else:
        raise UsageError(f"unknown series {name!r}; expected j, j744, e4, delta, eta^<m>, t1A, t2A or t2B")
    _emit(payload, text, args.format)
    return 0


def _report_out(report: VerificationReport, fmt: str) -> int:
    _emit(report.to_dict(), report.to_text(), fmt)
    return _exit_code(report.status)


def cmd_verify(args: argparse.Namespace) -> int:
    fn = IDENTITIES[args.identity]
    accepted = inspect.signature(fn).parameters
    kwargs = {}
    for flag, key in (("--p-order", "p_order"), ("--q-order", "q_order"), ("--order", "order"), ("--z-range", "z_range")):
        value = getattr(args, key)
        if value is None:
            continue
        _positive(flag, value)
        if key not in accepted:
            raise UsageError(f"{flag} does not apply to identity {args.identity}")
        kwargs[key] = value
    return _report_out(fn(**kwargs), args.format)


def cmd_cm163(args: argparse.Namespace) -> int:
    digits, k = args.digits, args.series_order
    if digits < MIN_CM_DIGITS:
        raise UsageError(f"--digits must be at least {MIN_CM_DIGITS}, got {digits}")
    exp_report, value = exp_digits_check(digits)
    j_report, residual = residual_check(digits, k)
    fac_report = factorization_check()
    reports = [exp_report, j_report, fac_report]
    merged = merge(reports, "cm163")
    j_value = CM163_J_VALUE * 10**residual.scale + residual.mantissa
    j_text = f"{'-' if j_value < 0 else ''}{abs(j_value) // 10**residual.scale}.{abs(j_value) % 10**residual.scale:0{residual.scale}d}"
    payload = {
        "digits": digits,
        "series_order": k,
        "exp_pi_sqrt163": str(value),
        "j": j_text,
        "j_residual": residual.to_scientific(),
        "status": merged.status.value,
        "reports": [r.to_dict() for r in reports],
    }
    lines = [
        f"exp(pi*sqrt(163)) = {value}",
        f"j((1+i*sqrt(163))/2) = {j_text}",
        f"j((1+i*sqrt(163))/2) + 262537412640768000 = {residual.to_scientific()}",
        *(r.to_text() for r in reports),
    ]
    _emit(payload, "\n".join(lines), args.format)
    return _exit_code(merged.status)


def cmd_numerology(args: argparse.Namespace) -> int:
    return _report_out(NUMEROLOGY_CHECKS[args.check](), args.format)


def cmd_all(args: argparse.Namespace) -> int:
    reports, merged = run_suite()
    if args.format == "json":
        print(json.dumps({**merged.to_dict(), "reports": [r.to_dict() for r in reports]}))
    else:
        for r in reports:
            print(r.to_text())
        print(merged.to_text())
    return _exit_code(merged.status)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="moonshine", description="Exact q-series and moonshine identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="print a q-expansion")
    p.add_argument("--series", required=True, help="j, j744, e4, delta, eta^<m>, t1A, t2A, t2B")
    p.add_argument("--order", type=int, default=20)
    p.add_argument("--report", choices=("density",))
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", parents=[common], help="check an identity on a finite window")
    p.add_argument("--identity", required=True, choices=sorted(IDENTITIES))
    p.add_argument("--p-order", type=int)
    p.add_argument("--q-order", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--z-range", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cm163", parents=[common], help="exp(pi sqrt 163) and j at the CM point")
    p.add_argument("--digits", type=int, default=35)
    p.add_argument("--series-order", type=int, default=8)
    p.set_defaults(func=cmd_cm163)

    p = sub.add_parser("numerology", parents=[common], help="monster and Dynkin numerology")
    p.add_argument("--check", required=True, choices=list(NUMEROLOGY_CHECKS))
    p.set_defaults(func=cmd_numerology)

    p = sub.add_parser("all", parents=[common], help="run every check at its default window")
    p.set_defaults(func=cmd_all)
    return parser


def run(args: Sequence[str]) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(list(args))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return ns.func(ns)
    except ValueError as exc:
        print(f"moonshine: error: {exc}", file=sys.stderr)
        return 2


def run_all(fmt: str = "text") -> int:
    return run(["all", "--format", fmt])


def main() -> None:
    sys.exit(run(sys.argv[1:]))
