"""Command-line surface: evaluate phase shifts, cross sections and 1D
scattering amplitudes, scan the contact limit, list resonant strengths,
check half-bound states and run the classification audit.

Output is deterministic: floats are rendered with 17 significant digits in
both CSV and JSON, rows are sorted by a canonical key, and identical
invocations produce byte-identical output.  Exit codes: 0 success, 2
invalid input, 3 inconclusive classification, 4 audit failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass

from .limits import (
    InconclusiveLimitError,
    audit,
    classify_limit,
    default_xi_sequence,
    enumerate_resonances,
    grid_from_json,
    half_bound_check,
)
from .model import Family, Kinematics, PotentialSpec, TWO_D_FAMILIES
from .observables import (
    one_d_from_table,
    sigma_theta_2d,
    sigma_theta_3d,
    sigma_total_2d,
    sigma_total_3d,
)
from .phase_shifts import build_table

_1D_FAMILIES = (Family.DOUBLE_DELTA_1D, Family.WELL_1D)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3
EXIT_AUDIT_FAILED = 4


# --- deterministic rendering ----------------------------------------------


def _fmt(x: float) -> str:
    """17-significant-digit decimal rendering, shared by CSV and JSON."""
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return f"{x:.17g}"


def _json_text(obj) -> str:
    """Hand-rolled JSON writer so float rendering matches the CSV output
    exactly (the stdlib encoder uses shortest-repr floats)."""
    if obj is None:
        return "null"
    if obj is True:
        return "true"
    if obj is False:
        return "false"
    if isinstance(obj, str):
        out = obj.replace("\\", "\\\\").replace('"', '\\"')
        return f'"{out}"'
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isinf(obj):
            return "Infinity" if obj > 0 else "-Infinity"
        if math.isnan(obj):
            return "NaN"
        return _fmt(obj)
    if isinstance(obj, dict):
        inner = ", ".join(f"{_json_text(str(k))}: {_json_text(v)}" for k, v in obj.items())
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_text(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit_csv(out, header: list[str], rows: list[list]) -> None:
    out.write(",".join(header) + "\n")
    for row in rows:
        out.write(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row) + "\n")


# --- request record --------------------------------------------------------


@dataclass(frozen=True)
class RunRequest:
    """Parsed invocation: a command name plus its option mapping."""

    command: str
    options: dict


def _spec_from_options(opt: dict) -> PotentialSpec:
    family = Family(opt["family"])
    a0 = opt.get("a0")
    if a0 is None and family in TWO_D_FAMILIES:
        a0 = 1.0
    return PotentialSpec(
        family=family,
        omega=opt["omega"],
        alpha=opt["alpha"],
        a=opt.get("a") or 0.01,
        beta=opt.get("beta") or 0.0,
        a0=a0,
    )


def _xi_sequence_from_options(opt: dict) -> tuple[float, ...] | None:
    if opt.get("xi_start") is None and opt.get("xi_stop") is None and opt.get("ratio") is None:
        return None
    return default_xi_sequence(
        opt.get("xi_start") or 1e-2, opt.get("xi_stop") or 1e-8, opt.get("ratio") or 10.0
    )


def _classification_dict(cls) -> dict:
    return {
        "verdict": cls.verdict.value,
        "resonant_index": cls.resonant_index,
        "slope": cls.slope,
        "evidence": [{"xi": e.xi, "tan_delta0": e.tan_delta0} for e in cls.evidence],
    }


# --- command handlers ------------------------------------------------------


def _cmd_phase_shifts(opt, out) -> int:
    spec = _spec_from_options(opt)
    table = build_table(spec, Kinematics(opt["k"]))
    if opt["format"] == "json":
        doc = {
            "family": table.family.value,
            "k": table.k,
            "entries": [
                {"index": e.index, "tan_delta": e.tan_delta, "delta": e.delta}
                for e in table.entries
            ],
            "truncation": {"index": table.truncation_index, "reason": table.truncation_reason},
        }
        out.write(_json_text(doc) + "\n")
    else:
        _emit_csv(
            out,
            ["index", "label", "tan_delta", "delta"],
            [[e.index, e.label, e.tan_delta, e.delta] for e in table.entries],
        )
    return EXIT_OK


def _sigma_finite(spec: PotentialSpec, k: float, theta: float | None) -> dict:
    table = build_table(spec, Kinematics(k))
    if spec.family in TWO_D_FAMILIES:
        doc = {"k": k, "sigma_total": sigma_total_2d(table)}
        if theta is not None:
            doc["theta"] = theta
            doc["sigma_theta"] = sigma_theta_2d(table, theta)
    else:
        doc = {"k": k, "sigma_total": sigma_total_3d(table)}
        if theta is not None:
            doc["theta"] = theta
            doc["sigma_theta"] = sigma_theta_3d(table, theta)
    return doc


def _cmd_cross_section(opt, out) -> int:
    spec = _spec_from_options(opt)
    if spec.family in _1D_FAMILIES:
        raise ValueError("cross-section handles the 2D/3D families; use scattering-1d")
    ks = opt["k"]
    if opt.get("limit"):
        rows = []
        for k in ks:
            cls = classify_limit(spec, k, _xi_sequence_from_options(opt))
            sigma = 0.0
            if cls.limit_values and "sigma_total" in cls.limit_values:
                sigma = cls.limit_values["sigma_total"]
            rows.append({"k": k, "verdict": cls.verdict.value, "sigma_total": sigma})
    else:
        theta = opt.get("theta")
        rows = [_sigma_finite(spec, k, theta) for k in ks]
    doc = {"family": spec.family.value, "results": rows}
    if opt["format"] == "json":
        out.write(_json_text(doc) + "\n")
    else:
        header = list(rows[0].keys())
        _emit_csv(out, header, [[r[h] for h in header] for r in rows])
    return EXIT_OK


def _cmd_scattering_1d(opt, out) -> int:
    spec = _spec_from_options(opt)
    if spec.family not in _1D_FAMILIES:
        raise ValueError("scattering-1d handles the 1D families; use cross-section")
    k = opt["k"]
    if opt.get("limit"):
        cls = classify_limit(spec, k, _xi_sequence_from_options(opt))
        lv = cls.limit_values or {}
        doc = {
            "family": spec.family.value,
            "k": k,
            "verdict": cls.verdict.value,
            "R": lv.get("R"),
            "T": lv.get("T"),
        }
    else:
        table = build_table(spec, Kinematics(k))
        sc = one_d_from_table(table)
        doc = {
            "family": spec.family.value,
            "k": k,
            "R": [sc.R.real, sc.R.imag],
            "T": [sc.T.real, sc.T.imag],
            "unitarity_defect": sc.unitarity_defect,
        }
    if opt["format"] == "json":
        out.write(_json_text(doc) + "\n")
    else:
        flat = {
            key: val
            for key, val in doc.items()
            if not isinstance(val, (list, tuple)) or val is None
        }
        for key in ("R", "T"):
            if doc.get(key) is not None:
                flat[f"{key}_re"], flat[f"{key}_im"] = doc[key]
        header = list(flat.keys())
        _emit_csv(out, header, [[flat[h] for h in header]])
    return EXIT_OK


def _cmd_limit_scan(opt, out) -> int:
    spec = _spec_from_options(opt)
    cls = classify_limit(spec, opt["k"], _xi_sequence_from_options(opt))
    doc = _classification_dict(cls)
    if opt["format"] == "json":
        out.write(_json_text(doc) + "\n")
    else:
        out.write("verdict,resonant_index,slope\n")
        out.write(
            f"{doc['verdict']},"
            f"{'' if doc['resonant_index'] is None else doc['resonant_index']},"
            f"{'' if doc['slope'] is None else _fmt(doc['slope'])}\n"
        )
        _emit_csv(
            out, ["xi", "tan_delta0"], [[e["xi"], e["tan_delta0"]] for e in doc["evidence"]]
        )
    return EXIT_OK


def _cmd_resonances(opt, out) -> int:
    rs = enumerate_resonances(Family(opt["family"]), opt["nmax"])
    if opt["format"] == "json":
        out.write(_json_text([r.omega for r in rs.omegas]) + "\n")
    else:
        _emit_csv(
            out, ["label", "n", "omega"], [[r.label, r.n, r.omega] for r in rs.omegas]
        )
    return EXIT_OK


def _cmd_half_bound(opt, out) -> int:
    spec = _spec_from_options(opt)
    report = half_bound_check(spec)
    doc = {
        "family": spec.family.value,
        "exists": report.exists,
        "residual": report.residual,
        "parity": report.parity,
        "interior_amplitude": None if report.pieces is None else report.pieces.interior_amplitude,
        "exterior_amplitude": None if report.pieces is None else report.pieces.exterior_amplitude,
    }
    if opt["format"] == "json":
        out.write(_json_text(doc) + "\n")
    else:
        header = list(doc.keys())
        _emit_csv(out, header, [["" if doc[h] is None else doc[h] for h in header]])
    return EXIT_OK


def _cmd_audit(opt, out) -> int:
    specs = None
    if opt.get("grid"):
        with open(opt["grid"], encoding="utf-8") as fh:
            specs = grid_from_json(fh.read())
    failures = audit(specs, k=opt["k"])
    failures.sort(
        key=lambda f: (f.spec.family.value, f.spec.alpha, f.spec.beta, f.spec.omega)
    )
    rows = [
        {
            "family": f.spec.family.value,
            "omega": f.spec.omega,
            "alpha": f.spec.alpha,
            "beta": f.spec.beta,
            "numeric": f.numeric,
            "symbolic": f.symbolic,
        }
        for f in failures
    ]
    if opt["format"] == "json":
        out.write(_json_text({"failures": rows, "ok": not rows}) + "\n")
    else:
        header = ["family", "omega", "alpha", "beta", "numeric", "symbolic"]
        _emit_csv(out, header, [[r[h] for h in header] for r in rows])
    return EXIT_AUDIT_FAILED if rows else EXIT_OK


_HANDLERS = {
    "phase-shifts": _cmd_phase_shifts,
    "cross-section": _cmd_cross_section,
    "scattering-1d": _cmd_scattering_1d,
    "limit-scan": _cmd_limit_scan,
    "resonances": _cmd_resonances,
    "half-bound": _cmd_half_bound,
    "audit": _cmd_audit,
}


def run(request: RunRequest, out=None, err=None) -> int:
    """Execute one request; returns the process exit code."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        return _HANDLERS[request.command](request.options, out)
    except InconclusiveLimitError as exc:
        err.write(_json_text({"error": "inconclusive-classification", "detail": str(exc)}) + "\n")
        return EXIT_INCONCLUSIVE
    except (ValueError, KeyError, OSError) as exc:
        err.write(_json_text({"error": "invalid-input", "detail": str(exc)}) + "\n")
        return EXIT_INVALID


# --- argument parsing ------------------------------------------------------


def _add_spec_args(p: argparse.ArgumentParser, need_a: bool) -> None:
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--omega", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--a", type=float, required=need_a, default=None)
    p.add_argument("--a0", type=float, default=None)


def _add_sequence_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--xi-start", dest="xi_start", type=float, default=None)
    p.add_argument("--xi-stop", dest="xi_stop", type=float, default=None)
    p.add_argument("--ratio", type=float, default=None)


def _positive(name: str, value: float) -> float:
    if not (math.isfinite(value) and value > 0.0):
        raise argparse.ArgumentTypeError(f"{name} must be positive and finite, got {value}")
    return value


def _k_value(text: str) -> float:
    return _positive("k", float(text))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contactscatter",
        description="Scattering from contact-limit potentials in 1D, 2D and 3D.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("phase-shifts", help="partial-wave phase shifts at finite range")
    _add_spec_args(p, need_a=True)
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("cross-section", help="total/differential cross sections (2D/3D)")
    _add_spec_args(p, need_a=False)
    p.add_argument("--k", type=_k_value, required=True, nargs="+")
    p.add_argument("--theta", type=float, default=None)
    p.add_argument("--limit", action="store_true", help="contact-limit value via xi scan")
    _add_sequence_args(p)
    p.add_argument("--format", choices=["csv", "json"], default="json")

    p = sub.add_parser("scattering-1d", help="reflection/transmission amplitudes (1D)")
    _add_spec_args(p, need_a=False)
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--limit", action="store_true")
    _add_sequence_args(p)
    p.add_argument("--format", choices=["csv", "json"], default="json")

    p = sub.add_parser("limit-scan", help="numerical a->0 classification")
    _add_spec_args(p, need_a=False)
    p.add_argument("--k", type=_k_value, default=1.0)
    _add_sequence_args(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("resonances", help="resonant strengths of a family")
    p.add_argument("--family", required=True, choices=[f.value for f in Family])
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--format", choices=["csv", "json"], default="json")

    p = sub.add_parser("half-bound", help="zero-energy half-bound state check")
    _add_spec_args(p, need_a=True)
    p.add_argument("--format", choices=["csv", "json"], default="json")

    p = sub.add_parser("audit", help="numeric vs symbolic classification over the grid")
    p.add_argument("--k", type=_k_value, default=1.0)
    p.add_argument("--grid", default=None, help="JSON array of potential records")
    p.add_argument("--format", choices=["csv", "json"], default="json")

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    options = {k: v for k, v in vars(args).items() if k != "command"}
    return run(RunRequest(command=args.command, options=options))


if __name__ == "__main__":
    sys.exit(main())
