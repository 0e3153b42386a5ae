"""Command-line entry point.

JSON is the canonical output; text and CSV are renderings of the same
report object.  Every run carries a provenance block (version, seed,
config echo).  Exit codes: 0 success, 1 computation error, 2 usage
error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import __version__
from .curvature import (CLAIMED_CHI, curvature_report, ricci_bound_sequence,
                        rescaled_levy_check)
from .montecarlo import SamplerConfig, concentration_experiment, xi_histogram
from .roots import Series, build_root_system, root_system_json
from .volumes import (USP_DIMENSION_NOTE, closed_form_volume, group_volume,
                      log_volume, ratio_exponent, ratio_scale)


def _provenance(args) -> dict:
    cfg = {k: v for k, v in vars(args).items()
           if k not in ("func",) and v is not None}
    return {"artifact_version": __version__, "config": cfg}


def _emit(payload: dict, args) -> None:
    fmt = getattr(args, "format", "json")
    text = _render(payload, fmt)
    out_path = getattr(args, "output", None)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text)
    else:
        print(text)


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2, sort_keys=True)
    if fmt == "csv":
        flat = _flatten(payload)
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(["key", "value"])
        for k, v in flat:
            w.writerow([k, v])
        return buf.getvalue().rstrip("\n")
    lines = [f"{k} = {v}" for k, v in _flatten(payload)]
    return "\n".join(lines)


def _flatten(obj, prefix=""):
    out = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            out += _flatten(obj[k], f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            out += _flatten(v, f"{prefix}{i}.")
    else:
        out.append((prefix.rstrip("."), obj))
    return out


def _series(args) -> Series:
    return Series(args.series, args.n)


# -- subcommands ------------------------------------------------------

def cmd_roots(args) -> dict:
    return {"provenance": _provenance(args),
            "roots": root_system_json(build_root_system(_series(args)))}


def cmd_volume(args) -> dict:
    s = _series(args)
    out = {"provenance": _provenance(args)}
    if args.log or (not args.exact and s.n > 30):
        out["volume"] = {"group": s.group_name, "log_volume": log_volume(s)}
    else:
        res = group_volume(s, args.gamma)
        out["volume"] = res.to_json()
        out["closed_form"] = closed_form_volume(s).to_json()
    if s.tag == "C":
        out["note"] = USP_DIMENSION_NOTE
    return out


def cmd_ratio(args) -> dict:
    s = _series(args)
    val = ratio_exponent(s)
    asym = math.sqrt(2 * math.pi * math.e / ratio_scale(s))
    return {"provenance": _provenance(args),
            "ratio": {"group": s.group_name, "ratio_exponent": val,
                      "sphere_asymptote": asym, "quotient": val / asym}}


def cmd_curvature(args) -> dict:
    rep = curvature_report(args.series, args.n)
    out = {"provenance": _provenance(args), "curvature": rep.to_json()}
    out["chi_table"] = {
        "claimed": rep.claimed_chi,
        "adjoint_trace_oracle": rep.chi,
        "killing_scalar": rep.chi_prime,
    }
    if args.series == "usp":
        out["note"] = USP_DIMENSION_NOTE
    return out


def cmd_cpn(args) -> dict:
    from .cpn import band_mass, band_complement_mass
    from .reproduce import criterion_geometry, _pyify
    out = {"provenance": _provenance(args)}
    if args.action == "band-mass":
        out["band_mass"] = {
            "n": args.n, "eps": args.eps,
            "mass": band_mass(args.n, args.eps),
            "neighbourhood_measure": band_complement_mass(args.n, args.eps),
        }
    else:  # check-metric
        res = _pyify(criterion_geometry(points=args.points))
        ok = bool(res["vielbein_density_dev"] < args.tol
                  and res["pullback_dev"] < args.tol)
        out["check_metric"] = {**res, "tol": args.tol, "passed": ok}
        if not ok:
            raise ArithmeticError("metric cross-check failed")
    return out


def cmd_sample(args) -> dict:
    cfg = SamplerConfig(_series(args), count=args.count, seed=args.seed,
                        workers=args.workers)
    rep = concentration_experiment(cfg, args.r)
    out = {"provenance": _provenance(args), "report": rep.to_json()}
    if args.hist:
        if cfg.series.tag != "A":
            raise ValueError("--hist ksi is defined for the SU series")
        out["histogram"] = xi_histogram(cfg, bins=args.bins)
    return out


def cmd_levy(args) -> dict:
    ns = list(range(args.start, args.stop + 1))
    r_seq = ricci_bound_sequence(args.family, ns,
                                 coroot_length=args.coroot_length)
    out = {"provenance": _provenance(args),
           "ricci_bounds": {"family": args.family.upper(), "n": ns,
                            "R": r_seq}}
    if args.rescale:
        c_seq = [_scale_sequence(args.rescale, n) for n in ns]
        ok, scaled = rescaled_levy_check(r_seq, c_seq, args.floor)
        out["rescaled"] = {"c": c_seq, "R_scaled": scaled, "levy": ok}
    return out


def _scale_sequence(name: str, n: int) -> float:
    fns = {"log": lambda n: math.log(n), "sqrt": math.sqrt,
           "linear": float, "const": lambda n: 1.0}
    if name not in fns:
        raise ValueError(f"unknown rescale sequence {name!r}")
    return fns[name](n)


def cmd_reproduce(args) -> dict:
    from .reproduce import run_all
    report = run_all(seed=args.seed, quick=args.quick)
    report["provenance"] = _provenance(args)
    for c in report["criteria"]:
        status = "PASS" if c["passed"] else "FAIL"
        print(f"[{status}] criterion {c['id']}: {c['name']} "
              f"({c['runtime_s']}s)", file=sys.stderr)
    return report


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lievol",
        description="Exact volumes, curvature and concentration checks "
                    "for classical compact Lie groups")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add_common(sp, series=True, fmt=True):
        if series:
            sp.add_argument("--series", required=True,
                            help="a/su, b/spin-odd, c/usp, d/spin-even")
            sp.add_argument("--n", type=int, required=True)
        if fmt:
            sp.add_argument("--format", choices=("json", "csv", "text"),
                            default="json")
            sp.add_argument("--json", action="store_const", dest="format",
                            const="json", help="shorthand for --format json")
            sp.add_argument("--output", help="write the report to a file")

    sp = sub.add_parser("roots", help="root system data")
    add_common(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("volume", help="group volume, exact or log")
    add_common(sp)
    sp.add_argument("--gamma", type=int, default=1,
                    help="order of the central subgroup quotiented out")
    sp.add_argument("--exact", action="store_true")
    sp.add_argument("--log", action="store_true")
    sp.set_defaults(func=cmd_volume)

    sp = sub.add_parser("ratio", help="volume-ratio exponent")
    add_common(sp)
    sp.set_defaults(func=cmd_ratio)

    sp = sub.add_parser("curvature", help="Killing/Ricci/chi report")
    sp.add_argument("--series", required=True, choices=("su", "so", "usp"))
    sp.add_argument("--n", type=int, required=True,
                    help="defining matrix size")
    sp.add_argument("--report", choices=("json", "csv", "text"),
                    dest="format", default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_curvature)

    sp = sub.add_parser("cpn", help="quotient-geometry checks")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("action", choices=("band-mass", "check-metric"))
    sp.add_argument("--eps", type=float, default=0.3)
    sp.add_argument("--points", type=int, default=100)
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--format", choices=("json", "csv", "text"),
                    default="json")
    sp.add_argument("--json", action="store_const", dest="format",
                    const="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_cpn)

    sp = sub.add_parser("sample", help="Haar Monte Carlo band statistics")
    add_common(sp)
    sp.add_argument("--count", type=int, default=10_000)
    sp.add_argument("--r", type=float, default=0.3)
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--workers", type=int,
                    default=int(os.environ.get("LIEVOL_WORKERS", "1")))
    sp.add_argument("--hist", choices=("ksi",))
    sp.add_argument("--bins", type=int, default=200)
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("levy", help="Ricci bound sequences and rescaling")
    sp.add_argument("--family", required=True, choices=("su", "so", "usp"))
    sp.add_argument("--start", type=int, default=2)
    sp.add_argument("--stop", type=int, default=20)
    sp.add_argument("--coroot-length", type=float)
    sp.add_argument("--rescale", choices=("log", "sqrt", "linear", "const"))
    sp.add_argument("--floor", type=float, default=0.5)
    sp.add_argument("--format", choices=("json", "csv", "text"),
                    default="json")
    sp.add_argument("--json", action="store_const", dest="format",
                    const="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_levy)

    sp = sub.add_parser("reproduce", help="run the full verification sweep")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--quick", action="store_true")
    sp.add_argument("--format", choices=("json", "csv", "text"),
                    default="json")
    sp.add_argument("--output")
    sp.set_defaults(func=cmd_reproduce)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except (ValueError, ArithmeticError, OverflowError, ZeroDivisionError,
            np.linalg.LinAlgError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit(payload, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
