"""Command-line interface: every operation as a subcommand, plus a suite runner.

Reports are deterministic: JSON with sorted keys, CSV for plot series, or a
short pretty text.  Exit codes: 0 success, 1 verdict mismatch or verification
failure, 2 usage error, 3 resource limit / inconclusive result.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from typing import Dict, List, Optional, Tuple

from .conjugate import young_conjugate
from .errors import (
    BoundaryHitError,
    ConfigurationError,
    DomainError,
    GsdynError,
    InconclusiveError,
    ResourceLimitError,
    VerificationError,
)
from .jets import Gaussian, parse_model
from .polynomials import (
    AllPointsFixed,
    Polynomial,
    fixed_points,
    iterate,
    normal_form_degree1,
)
from .seminorms import SearchSpec, SeminormSpec, eval_seminorm
from .weights import CONDITIONS, check_all_conditions, check_condition, parse_weight
from .witnesses import (
    fourier_scaling_check,
    rho_construction,
    witness_deg2_topologizable,
    witness_dilation_blowup,
    witness_dilation_delta,
    witness_repelling,
    witness_square,
    witness_translation,
)

USAGE_EXIT = 2
MISMATCH_EXIT = 1
RESOURCE_EXIT = 3


# --------------------------------------------------------------------------
# output plumbing
# --------------------------------------------------------------------------


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if obj == float("-inf"):
            return "-inf"
        if obj == float("inf"):
            return "inf"
        return obj
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return _json_safe(obj.item())
    return obj


def _emit(report: dict, args, csv_rows: Optional[List[str]] = None) -> None:
    fmt = args.format
    if fmt == "csv" and csv_rows is None:
        raise ConfigurationError("this subcommand has no CSV series")
    if fmt == "json":
        text = json.dumps(_json_safe(report), sort_keys=True, indent=2) + "\n"
    elif fmt == "csv":
        text = "\n".join(csv_rows) + "\n"
    else:
        text = _pretty(report)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _pretty(report: dict, indent: int = 0) -> str:
    lines: List[str] = []
    pad = "  " * indent
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict):
            lines.append("%s%s:" % (pad, key))
            lines.append(_pretty(val, indent + 1).rstrip("\n"))
        elif isinstance(val, (list, tuple)):
            lines.append("%s%s: %s" % (pad, key, json.dumps(_json_safe(val))))
        else:
            lines.append("%s%s: %s" % (pad, key, val))
    return "\n".join(lines) + "\n"


def _series_csv(series_dict: dict) -> List[str]:
    rows = ["index,log_value,log_ratio"]
    for p in series_dict["points"]:
        ratio = "" if p["log_ratio"] is None else repr(p["log_ratio"])
        rows.append("%d,%r,%s" % (p["index"], p["log_value"], ratio))
    return rows


def _check_expect(expect: Optional[str], verdict: str) -> int:
    if expect is not None and expect != verdict:
        sys.stderr.write("expected %s, got %s\n" % (expect, verdict))
        return MISMATCH_EXIT
    if expect is None and verdict == "inconclusive":
        return RESOURCE_EXIT
    return 0


# --------------------------------------------------------------------------
# witness dispatch (shared by `witness` and `suite`)
# --------------------------------------------------------------------------


def _search_from(params: dict) -> Optional[SearchSpec]:
    kwargs = {}
    if params.get("points") is not None:
        kwargs["points"] = int(params["points"])
    if params.get("radius") is not None:
        kwargs["radius"] = float(params["radius"])
    return SearchSpec(**kwargs) if kwargs else None


def _run_witness(name: str, params: dict) -> Tuple[dict, str]:
    """Returns (payload, verdict)."""
    if name == "translation":
        series = witness_translation(
            parse_weight(params.get("weight", "gevrey:2")),
            float(params.get("lam", 1.0)),
            float(params.get("mu", 1.0)),
            parse_model(params.get("model", "gauss:1")),
            int(params.get("m_max", 15)),
        )
        return series.to_dict(), series.classification
    if name == "dilation":
        series = witness_dilation_blowup(
            parse_weight(params.get("weight", "gevrey:2")),
            float(params.get("a", 2.0)),
            float(params.get("k", 1.0)),
            float(params.get("h", 2.0)),
            int(params.get("m", 1)),
            int(params.get("ell_max", 8)),
        )
        return series.to_dict(), series.classification
    if name == "repelling":
        series = witness_repelling(
            Polynomial.parse(params.get("psi", "0,0,1")),
            params.get("x0", "1"),
            float(params.get("d", 2.0)),
            float(params.get("lam", 1.0)),
            int(params.get("m_max", 20)),
        )
        return series.to_dict(), series.classification
    if name == "square":
        series = witness_square(
            float(params.get("s", 2.0)),
            float(params.get("lam", 1.0)),
            int(params.get("m_max", 60)),
        )
        return series.to_dict(), series.classification
    if name == "deg2":
        rep = witness_deg2_topologizable(
            parse_weight(params.get("weight", "gevrey:2")),
            float(params.get("a", 3.0)),
            Polynomial.parse(params.get("psi", "0,0,1")),
            float(params.get("lam", 1.0)),
            int(params.get("m_max", 5)),
        )
        return rep.to_dict(), "finite" if rep.all_finite else "unbounded"
    if name == "delta":
        rep = witness_dilation_delta(
            parse_weight(params.get("weight", "gevrey:2")),
            float(params.get("a", 2.0)),
            float(params.get("delta", 1.0)),
            float(params.get("lam", 1.0)),
            int(params.get("m", 1)),
        )
        payload = {
            "D": rep.d,
            "log_D": rep.log_d,
            "j_star": rep.j_star,
            "scanned": rep.scanned,
        }
        return payload, "finite"
    if name == "rho":
        rc = rho_construction(
            parse_model(params.get("model", "gauss:1")),
            parse_weight(params.get("weight", "gevrey:2")),
            float(params.get("lam", 1.0)),
            int(params.get("m", 2)),
            params.get("direction", "derivative"),
        )
        payload = {
            "rho": rc.rho,
            "log_rho": rc.log_rho,
            "dominance": rc.dominance,
            "direction": rc.direction,
            "attainment": {
                "j": rc.attainment[0],
                "q": rc.attainment[1],
                "x": rc.attainment[2],
            },
            "truncation_m": rc.truncation_m,
        }
        return payload, "dominant"
    if name == "fourier":
        rep = fourier_scaling_check(
            Gaussian(float(params.get("scale", 1.0))), float(params.get("b", 2.0))
        )
        tol = float(params.get("tol", 1e-6))
        payload = {"b": rep.b, "max_error": rep.max_error, "eta_count": rep.eta_count}
        return payload, "pass" if rep.max_error < tol else "fail"
    raise ConfigurationError("unknown witness %r" % (name,))


WITNESS_NAMES = (
    "translation",
    "dilation",
    "repelling",
    "square",
    "deg2",
    "delta",
    "rho",
    "fourier",
)


# --------------------------------------------------------------------------
# subcommand handlers
# --------------------------------------------------------------------------


def _cmd_conjugate(args) -> int:
    w = parse_weight(args.weight)
    val = young_conjugate(w, args.x, method=args.method)
    report = {
        "command": "conjugate",
        "config": {"weight": args.weight, "x": args.x, "method": args.method},
        "value": val,
    }
    if args.check:
        closed = young_conjugate(w, args.x, method="closed")
        numeric = young_conjugate(w, args.x, method="numeric")
        gap = abs(closed - numeric)
        report["check"] = {"closed": closed, "numeric": numeric, "gap": gap}
        if gap > 1e-8 * max(1.0, abs(closed)):
            _emit(report, args)
            return MISMATCH_EXIT
    _emit(report, args)
    return 0


def _cmd_weight_check(args) -> int:
    w = parse_weight(args.weight)
    if args.condition:
        reports = {args.condition: check_condition(w, args.condition).to_dict()}
    else:
        reports = {rep.condition: rep.to_dict() for rep in check_all_conditions(w)}
    report = {
        "command": "weight-check",
        "config": {"weight": args.weight, "condition": args.condition},
        "conditions": reports,
    }
    _emit(report, args)
    return 0


def _cmd_seminorm(args) -> int:
    spec_kwargs = {"weight": parse_weight(args.weight) if args.weight else None}
    for key in ("lam", "mu", "s"):
        if getattr(args, key) is not None:
            spec_kwargs[key] = getattr(args, key)
    spec = SeminormSpec(args.family, **spec_kwargs)
    kwargs = {}
    if args.points is not None:
        kwargs["points"] = args.points
    if args.radius is not None:
        kwargs["radius"] = args.radius
    if args.m is not None:
        kwargs["m"] = args.m
    rep = eval_seminorm(parse_model(args.model), spec, SearchSpec(**kwargs))
    report = {
        "command": "seminorm",
        "config": {
            "model": args.model,
            "family": args.family,
            "weight": args.weight,
            "lam": args.lam,
            "mu": args.mu,
            "s": args.s,
        },
        "result": rep.to_dict(),
    }
    _emit(report, args)
    return 0


def _cmd_poly(args) -> int:
    psi = Polynomial.parse(args.psi)
    config = {"action": args.action, "psi": args.psi}
    if args.action == "iterate":
        out = iterate(psi, args.m)
        payload = {"m": args.m, "iterate": out.spec(), "degree": out.degree}
        config["m"] = args.m
    elif args.action == "fixed-points":
        pts = fixed_points(psi)
        if isinstance(pts, AllPointsFixed):
            payload = {"all_points_fixed": True, "fixed_points": []}
        else:
            payload = {
                "all_points_fixed": False,
                "fixed_points": [
                    {
                        "location": str(p.location)
                        if p.exact
                        else [str(p.location[0]), str(p.location[1])],
                        "value": p.value,
                        "multiplier": p.multiplier,
                        "kind": p.kind,
                        "exact": p.exact,
                    }
                    for p in pts
                ],
            }
    else:
        nf = normal_form_degree1(psi)
        payload = {
            "kind": nf.kind,
            "a": None if nf.a is None else str(nf.a),
            "normal_form": nf.poly.spec(),
            "conjugator": {"alpha": str(nf.conjugator.alpha), "beta": str(nf.conjugator.beta)},
        }
    report = {"command": "poly", "config": config}
    report.update(payload)
    _emit(report, args)
    return 0


def _cmd_witness(args) -> int:
    params = {
        key: getattr(args, key)
        for key in (
            "weight",
            "model",
            "psi",
            "x0",
            "a",
            "b",
            "k",
            "h",
            "m",
            "ell_max",
            "m_max",
            "lam",
            "mu",
            "s",
            "d",
            "delta",
            "direction",
            "scale",
            "tol",
            "points",
            "radius",
        )
        if getattr(args, key, None) is not None
    }
    payload, verdict = _run_witness(args.name, params)
    report = {
        "command": "witness",
        "witness": args.name,
        "config": params,
        "report": payload,
        "verdict": verdict,
    }
    csv_rows = _series_csv(payload) if "points" in payload else None
    _emit(report, args, csv_rows)
    return _check_expect(args.expect, verdict)


def _suite_entry(entry: dict) -> dict:
    name = entry.get("witness")
    params = dict(entry.get("params", {}))
    expect = entry.get("expect")
    allow_inc = bool(entry.get("allow_inconclusive", False))
    try:
        payload, verdict = _run_witness(name, params)
    except (ResourceLimitError, InconclusiveError, BoundaryHitError) as exc:
        payload, verdict = {"error": str(exc)}, "inconclusive"
    if verdict == "inconclusive":
        status = "inconclusive" if allow_inc else "fail"
    elif expect is None or expect == verdict:
        status = "pass"
    else:
        status = "fail"
    return {
        "name": entry.get("name", name),
        "witness": name,
        "params": params,
        "expect": expect,
        "verdict": verdict,
        "status": status,
        "report": payload,
    }


def _cmd_suite(args) -> int:
    if args.config:
        with open(args.config) as fh:
            try:
                config = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ConfigurationError("malformed suite config: %s" % exc)
    else:
        text = (
            resources.files("gsdyn").joinpath("suites/default.suite").read_text()
        )
        config = json.loads(text)
    entries = config.get("entries", [])
    if not isinstance(entries, list):
        raise ConfigurationError("suite config needs an 'entries' list")
    threads = max(1, int(os.environ.get("GSDYN_THREADS", "1")))
    if threads > 1 and len(entries) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_suite_entry, entries))
    else:
        results = [_suite_entry(e) for e in entries]
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for r in results:
        counts[r["status"]] += 1
    report = {
        "command": "suite",
        "config": {"path": args.config or "default.suite"},
        "summary": counts,
        "entries": results,
    }
    _emit(report, args)
    return 0 if counts["fail"] == 0 else MISMATCH_EXIT


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gsdyn",
        description="Computable Gelfand-Shilov dynamics: conjugates, seminorms, "
        "polynomial iteration, and growth witnesses.",
    )
    parser.add_argument(
        "--format",
        choices=("json", "csv", "pretty"),
        default="pretty",
        help="report format (default pretty)",
    )
    parser.add_argument("--output", default=None, help="write the report to a file")
    parser.add_argument(
        "--config", default=None, help="JSON file with flag defaults (or suite file)"
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("json", "csv", "pretty"), default=argparse.SUPPRESS
    )
    common.add_argument("--output", default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("conjugate", parents=[common], help="Young conjugate values")
    p.add_argument("--weight", required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=("auto", "closed", "numeric"), default="auto")
    p.add_argument("--check", action="store_true", help="cross-check closed vs numeric")
    p.set_defaults(func=_cmd_conjugate)

    p = sub.add_parser("weight-check", parents=[common], help="weight condition reports")
    p.add_argument("--weight", required=True)
    p.add_argument("--condition", choices=CONDITIONS, default=None)
    p.set_defaults(func=_cmd_weight_check)

    p = sub.add_parser("seminorm", parents=[common], help="certified seminorm evaluation")
    p.add_argument("--model", required=True)
    p.add_argument(
        "--family", choices=("plainp", "globalp", "expq", "gevreyseq"), default="plainp"
    )
    p.add_argument("--weight", default=None)
    p.add_argument("--lam", "--lambda", dest="lam", type=float, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--m", type=int, default=None, help="fixed truncation order")
    p.set_defaults(func=_cmd_seminorm)

    p = sub.add_parser("poly", parents=[common], help="exact polynomial dynamics")
    p.add_argument("action", choices=("iterate", "fixed-points", "normal-form"))
    p.add_argument("--psi", required=True, help="ascending coefficients, e.g. 0,0,1")
    p.add_argument("--m", type=int, default=1)
    p.set_defaults(func=_cmd_poly)

    p = sub.add_parser("witness", parents=[common], help="growth experiments with verdicts")
    p.add_argument("name", choices=WITNESS_NAMES)
    p.add_argument("--weight", default=None)
    p.add_argument("--model", default=None)
    p.add_argument("--psi", default=None)
    p.add_argument("--x0", default=None)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--b", type=float, default=None)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--h", type=float, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--ell-max", dest="ell_max", type=int, default=None)
    p.add_argument("--m-max", dest="m_max", type=int, default=None)
    p.add_argument("--lam", "--lambda", dest="lam", type=float, default=None)
    p.add_argument("--mu", type=float, default=None)
    p.add_argument("--s", type=float, default=None)
    p.add_argument("--d", type=float, default=None)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--direction", choices=("derivative", "polynomial"), default=None)
    p.add_argument("--scale", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--points", type=int, default=None)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--expect", default=None, help="required verdict; mismatch exits 1")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("suite", parents=[common], help="run a declared list of witnesses")
    p.set_defaults(func=_cmd_suite)

    return parser


def _apply_config_defaults(args, argv: List[str]) -> None:
    """--config JSON keys fill flags not given explicitly on the command line."""
    if not args.config or args.command == "suite":
        return
    with open(args.config) as fh:
        try:
            overrides = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigurationError("malformed config: %s" % exc)
    explicit = {tok.split("=")[0] for tok in argv if tok.startswith("--")}
    for key, value in overrides.items():
        flag = "--" + key.replace("_", "-")
        dest = key.replace("-", "_")
        if flag not in explicit and hasattr(args, dest):
            setattr(args, dest, value)


def main(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE_EXIT if exc.code not in (0,) else 0
    try:
        _apply_config_defaults(args, argv)
        return args.func(args)
    except (DomainError, ConfigurationError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return USAGE_EXIT
    except (ResourceLimitError, InconclusiveError, BoundaryHitError) as exc:
        sys.stderr.write("inconclusive: %s\n" % exc)
        return RESOURCE_EXIT
    except (VerificationError, GsdynError) as exc:
        sys.stderr.write("verification failed: %s\n" % exc)
        return MISMATCH_EXIT
    except FileNotFoundError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return USAGE_EXIT


if __name__ == "__main__":
    sys.exit(main())
