"""Command-line surface: thin adapters over the library with structured output.

Every subcommand resolves its parameters (flags, optional flat key=value
config file, CONE_SPECTRA_THREADS fallback), calls the library once, and
prints a JSON report embedding the tool version and the resolved config.
Exact rationals are serialized as "p/q" strings.  Exit codes: 0 success,
2 validation error, 3 numerical failure, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__, g2, geometry, presets
from .errors import (
    ConeSpectraError,
    FitUnstable,
    NoConvergence,
    QuadratureFailure,
    ValidationError,
)
from .fredholm import AC, CS, EndSpec, OperatorSpec, crossed_roots, index_report, wall_crossing
from .indicial import SLConeSpec, Window, indicial_roots, jacobi_spectrum, morse_index, symmetry_check
from .mesh import clifford_torus_mesh, icosphere, load_off, mesh_spectrum
from .spectra import TorusMetric, sphere_spectrum, torus_spectrum
from .stability import ConeComponent, ConeData, DLambdaTable, stability_report

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

NUMERICAL_ERRORS = (QuadratureFailure, NoConvergence, FitUnstable)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage errors exit 64, not argparse's 2
        self.print_usage(sys.stderr)
        raise SystemExit_usage(message)


class SystemExit_usage(Exception):
    pass


def _parse_number(text: str):
    """Exact Fraction when the literal is rational, float otherwise."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        return float(text)


def parse_window(text: str) -> Window:
    include_lo = not text.startswith("(")
    include_hi = not text.endswith(")")
    body = text.strip("[]()")
    parts = body.split(":")
    if len(parts) != 2:
        raise ValidationError(f"window '{text}' must look like lo:hi")
    return Window(
        _parse_number(parts[0]),
        _parse_number(parts[1]),
        include_lo=include_lo,
        include_hi=include_hi,
    )


def _parse_triple(text: str | None) -> tuple:
    if text is None:
        raise ValidationError("missing a required triple argument (e.g. --a or --theta)")
    parts = [p for p in text.split(",") if p]
    if len(parts) != 3:
        raise ValidationError(f"'{text}' must hold three comma-separated numbers")
    return tuple(float(p) for p in parts)


def _load_table_cone(path: str) -> ConeData:
    """A cone from a user d-table JSON: {"rows": [{"lambda", "dimension"}, ...],
    "coverage": [lo, hi]} (non-SL cones enter only this way)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    rows = tuple(
        (
            _parse_number(str(row["lambda"])),
            int(row["dimension"]),
        )
        for row in data["rows"]
    )
    lo, hi = data["coverage"]
    table = DLambdaTable(rows, Window(_parse_number(str(lo)), _parse_number(str(hi))))
    return ConeData((ConeComponent(table),))


def _resolve_cone_data(name: str, cutoff: float) -> ConeData:
    if name == "hl":
        return presets.hl_cone(cutoff)
    if name == "plane":
        return presets.plane_cone(cutoff)
    if name == "plane-pair":
        return presets.plane_pair_cone(cutoff)
    if name.startswith("torus:"):
        g11, g12, g22 = (
            _parse_number(p) for p in name.split(":", 1)[1].split(",")
        )
        return presets.torus_cone(TorusMetric(g11, g12, g22), cutoff)
    if name.startswith("table:"):
        return _load_table_cone(name.split(":", 1)[1])
    raise ValidationError(
        f"unknown cone preset '{name}' (use hl, plane, plane-pair, "
        f"torus:<g11,g12,g22>, table:<path.json>)"
    )


def _resolve_cone_specs(name: str, cutoff: float) -> list[SLConeSpec]:
    data = _resolve_cone_data(name, cutoff)
    specs = []
    for comp in data.components:
        if not isinstance(comp.kernel_source, SLConeSpec):
            raise ValidationError(f"preset '{name}' has no link spectrum")
        specs.append(comp.kernel_source)
    return specs


def _provenance(name: str) -> str:
    key = name.split(":", 1)[0]
    return presets.PRESET_PROVENANCE.get(key, "user-specified")


# ---------------------------------------------------------------------------
# subcommand handlers: each returns a JSON-ready result dict
# ---------------------------------------------------------------------------

def _cmd_spectrum(args) -> dict:
    if args.mode == "torus":
        if args.metric is None:
            raise ValidationError("spectrum torus needs --metric g11,g12,g22")
        g11, g12, g22 = (_parse_number(p) for p in args.metric.split(","))
        spectrum = torus_spectrum(TorusMetric(g11, g12, g22), args.cutoff)
    elif args.mode == "sphere":
        spectrum = sphere_spectrum(args.cutoff)
    else:  # mesh
        if args.off:
            mesh = load_off(args.off)
        elif args.builtin:
            kind, _, param = args.builtin.partition(":")
            if kind == "icosphere":
                mesh = icosphere(int(param or 3))
            elif kind == "clifford":
                mesh = clifford_torus_mesh(int(param or 64))
            else:
                raise ValidationError(f"unknown builtin mesh '{args.builtin}'")
        else:
            raise ValidationError("spectrum mesh needs --off PATH or --builtin NAME")
        spectrum = mesh_spectrum(mesh, args.count)
    return {
        "entries": [
            {"eigenvalue": float(ev), "multiplicity": m} for ev, m in spectrum.entries
        ],
        "cutoff": spectrum.cutoff,
        "exact": spectrum.exact,
    }


def _cmd_indicial(args) -> dict:
    window = parse_window(args.window)
    specs = _resolve_cone_specs(args.cone, args.cutoff)
    tables = [indicial_roots(s, window) for s in specs]
    merged: dict[float, int] = {}
    rows = []
    for t in tables:
        for r in t.roots:
            merged[r.value] = merged.get(r.value, 0) + r.total_dimension
    for value in sorted(merged):
        rows.append({"lambda": value, "dimension": merged[value]})
    result: dict = {
        "window": str(window),
        "roots": rows,
        "per_component": [json.loads(t.to_json()) for t in tables],
    }
    if args.symmetry:
        # the d-symmetry check needs a window symmetric about -1: take the hull
        hull = Window(
            min(float(window.lo), -2.0 - float(window.hi)),
            max(float(window.hi), -2.0 - float(window.lo)),
        )
        result["symmetric"] = all(symmetry_check(s, hull) for s in specs)
        result["symmetry_window"] = str(hull)
    if args.morse:
        result["morse_index"] = sum(morse_index(s) for s in specs)
    if args.jacobi:
        js = [jacobi_spectrum(s, window) for s in specs]
        result["jacobi"] = {
            "convention": js[0].convention,
            "entries": [
                {
                    "eigenvalue": e.eigenvalue,
                    "multiplicity": e.multiplicity,
                    "contributing_rates": list(e.contributing_rates),
                }
                for j in js
                for e in j.entries
            ],
        }
    return result


def _cmd_stability(args) -> dict:
    cone = _resolve_cone_data(args.cone, args.cutoff)
    if args.sym_dim is not None:
        dims = [int(p) for p in str(args.sym_dim).split(",")]
        if len(dims) == 1:
            dims = dims * len(cone.components)
        if len(dims) != len(cone.components):
            raise ValidationError("need one --sym-dim per component")
        cone = ConeData(
            tuple(
                type(c)(c.kernel_source, dims[i], c.stratum_dim, c.is_plane)
                for i, c in enumerate(cone.components)
            )
        )
    if args.stratum_dim is not None:
        dims = [int(p) for p in str(args.stratum_dim).split(",")]
        if len(dims) == 1:
            dims = dims * len(cone.components)
        cone = ConeData(
            tuple(
                type(c)(c.kernel_source, c.symmetry_group_dim, dims[i], c.is_plane)
                for i, c in enumerate(cone.components)
            )
        )
    return stability_report(cone)


def _cmd_index(args) -> dict:
    if not args.end:
        raise ValidationError("need at least one --end PRESET:RATE")
    ends = []
    for spec in args.end:
        name, _, rate = spec.rpartition(":")
        if not name:
            raise ValidationError(f"--end '{spec}' must look like PRESET:RATE")
        ends.append(EndSpec(_resolve_cone_data(name, args.cutoff), float(rate)))
    op = OperatorSpec(args.kind, tuple(ends))
    result = index_report(op)
    if args.cross:
        parts = args.cross.split(":")
        if len(parts) != 2:
            raise ValidationError("--cross must look like FROM:TO")
        rate_from, rate_to = float(parts[0]), float(parts[1])
        result["wall_crossing"] = {
            "from": rate_from,
            "to": rate_to,
            "jump": wall_crossing(op, rate_from, rate_to),
            "crossed_roots": [
                {"lambda": lam, "dimension": d}
                for lam, d in crossed_roots(op, rate_from, rate_to)
            ],
        }
    return result


def _cmd_lawlor(args) -> dict:
    if args.mode == "angles":
        params = geometry.LawlorParams(_parse_triple(args.a))
        angles = geometry.lawlor_angles(params, tol=args.tol)
        return {
            "a": list(params.a),
            "theta": list(angles.theta),
            "sum": sum(angles.theta),
            "conformal_scale": params.conformal_scale(),
        }
    if args.mode == "solve":
        target = geometry.LawlorAngles(_parse_triple(args.theta))
        params = geometry.lawlor_solve(target, args.scale, tol=args.tol)
        return {
            "theta": list(target.theta),
            "scale": args.scale,
            "a": list(params.a),
        }
    if args.mode == "profile":
        params = geometry.LawlorParams(_parse_triple(args.a))
        ys = np.linspace(args.y_min, args.y_max, args.count)
        rows = geometry.lawlor_profile(params, ys)
        return {"a": list(params.a), "rows": rows}
    if args.mode == "verify":
        params = geometry.LawlorParams(_parse_triple(args.a))
        report = geometry.verify_special_lagrangian(
            geometry.lawlor_sampler(params), args.samples, args.seed
        )
        return {
            "a": list(params.a),
            "max_omega": report.max_omega,
            "max_im_omega": report.max_im_omega,
            "max_associator": report.max_associator,
            "phase": report.phase,
            "n_samples": report.n_samples,
        }
    if args.mode == "decay":
        params = geometry.LawlorParams(_parse_triple(args.a))
        radii, norms = geometry.lawlor_decay_table(
            params,
            r_window=(args.r_min, args.r_max),
            subtract_leading=args.subtract,
            seed=args.seed,
        )
        fit = geometry.fit_decay(radii, norms)
        return {
            "a": list(params.a),
            "fitted_exponent": fit.fitted_exponent,
            "r_range": list(fit.r_range),
            "residual_of_fit": fit.residual_of_fit,
            "table": [{"r": r, "deviation": d} for r, d in zip(radii, norms)],
        }
    raise ValidationError(f"unknown lawlor mode '{args.mode}'")


def _cmd_hl(args) -> dict:
    if args.mode == "verify":
        branches = (1, 2, 3) if args.branch == 0 else (args.branch,)
        out = {}
        for b in branches:
            rep = geometry.verify_special_lagrangian(
                geometry.hl_smoothing_sampler(b, args.a), args.samples, args.seed
            )
            out[f"branch_{b}"] = {
                "max_omega": rep.max_omega,
                "max_im_omega": rep.max_im_omega,
                "max_associator": rep.max_associator,
            }
        link = geometry.verify_special_lagrangian(
            geometry.hl_link_sampler(), args.samples, args.seed
        )
        out["link"] = {"max_omega": link.max_omega}
        return out
    if args.mode == "xi-relation":
        return {
            "r_probe": args.r,
            "residual": geometry.hl_xi_relation_residual(args.r, seed=args.seed),
            "single_branch_deviation": geometry.hl_branch_deviation_magnitude(args.r),
        }
    if args.mode == "decay":
        branch = max(args.branch, 1)
        radii, norms = geometry.hl_decay_table(branch=branch, a=args.a)
        fit = geometry.fit_decay(radii, norms)
        return {
            "branch": branch,
            "fitted_exponent": fit.fitted_exponent,
            "r_range": list(fit.r_range),
            "residual_of_fit": fit.residual_of_fit,
            "table": [{"r": r, "deviation": d} for r, d in zip(radii, norms)],
        }
    raise ValidationError(f"unknown hl mode '{args.mode}'")


def _cmd_g2(args) -> dict:
    rng = np.random.default_rng(args.seed)
    worst_identity = worst_ortho = worst_norm = worst_psi = 0.0
    for _ in range(args.tuples):
        u, v, w, z = rng.normal(size=(4, 7))
        u, v, w, z = (x / np.linalg.norm(x) for x in (u, v, w, z))
        worst_identity = max(worst_identity, abs(g2.g2_identity_residual(u, v)))
        cr = g2.cross(u, v)
        worst_ortho = max(
            worst_ortho, abs(float(np.dot(cr, u))), abs(float(np.dot(cr, v)))
        )
        gram = np.array([u, v, w]) @ np.array([u, v, w]).T
        lhs = float(np.linalg.det(gram))
        assoc = g2.associator(u, v, w)
        rhs = g2.phi3(u, v, w) ** 2 + float(np.dot(assoc, assoc))
        worst_norm = max(worst_norm, abs(lhs - rhs))
        worst_psi = max(
            worst_psi, abs(g2.psi4(u, v, w, z) - float(np.dot(assoc, z)))
        )
    return {
        "tuples": args.tuples,
        "max_g2_identity_residual": worst_identity,
        "max_cross_orthogonality": worst_ortho,
        "max_associator_norm_identity": worst_norm,
        "max_psi_defect": worst_psi,
    }


def _cmd_planes(args) -> dict:
    pair = geometry.transverse_plane_pair(_parse_triple(args.theta))
    recovered = geometry.jordan_angles(pair.frame_zero, pair.frame_theta)
    return {
        "theta": list(pair.theta),
        "associative": [
            g2.is_associative_frame(pair.frame_zero),
            g2.is_associative_frame(pair.frame_theta),
        ],
        "jordan_angles": [float(t) for t in recovered],
        "splitting_dimensions": [1, 3, 3],
        "normal": list(pair.normal),
    }


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------

def _add_global_flags(parser, suppress: bool) -> None:
    # also attached to every subparser (with SUPPRESS defaults) so the
    # global flags may appear on either side of the subcommand
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--config", help="flat key = value config file", **kw)
    parser.add_argument(
        "--output-format",
        choices=("json", "csv"),
        **(kw or {"default": "json"}),
    )
    parser.add_argument("--seed", type=int, **(kw or {"default": 0}))
    parser.add_argument("--threads", type=int, **(kw or {"default": None}))


def build_parser() -> _Parser:
    parser = _Parser(prog="cone-spectra", description=__doc__)
    _add_global_flags(parser, suppress=False)
    common = _Parser(add_help=False)
    _add_global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="link Laplace spectra", parents=[common])
    p.add_argument("mode", choices=("torus", "sphere", "mesh"))
    p.add_argument("--metric", help="torus metric g11,g12,g22 (fractions allowed)")
    p.add_argument("--cutoff", type=float, default=12.0)
    p.add_argument("--off", help="OFF mesh path")
    p.add_argument("--builtin", help="icosphere:N or clifford:N test meshes")
    p.add_argument("--count", type=int, default=9)

    p = sub.add_parser("indicial", help="kernel dimensions and indicial roots", parents=[common])
    p.add_argument("--cone", required=True)
    p.add_argument("--window", default="[-2:1]")
    p.add_argument("--cutoff", type=float, default=12.0)
    p.add_argument("--morse", action="store_true")
    p.add_argument("--jacobi", action="store_true")
    p.add_argument("--symmetry", action="store_true")

    p = sub.add_parser("stability", help="stability indices", parents=[common])
    p.add_argument("--cone", required=True)
    p.add_argument("--sym-dim", help="dim H per component (comma list or single)")
    p.add_argument("--stratum-dim", help="dim Z per component")
    p.add_argument("--cutoff", type=float, default=12.0)

    p = sub.add_parser("index", help="Fredholm index of the weighted Fueter operator", parents=[common])
    p.add_argument("--kind", choices=(AC, CS), required=True)
    p.add_argument("--end", action="append", help="PRESET:RATE, repeatable")
    p.add_argument("--cross", help="FROM:TO wall crossing probe")
    p.add_argument("--cutoff", type=float, default=12.0)

    p = sub.add_parser("lawlor", help="Lawlor neck machinery", parents=[common])
    p.add_argument("mode", choices=("angles", "solve", "profile", "verify", "decay"))
    p.add_argument("--a", help="a1,a2,a3")
    p.add_argument("--theta", help="target angles t1,t2,t3")
    p.add_argument("--scale", type=float, default=1.0, help="conformal scale A")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--y-min", type=float, default=-5.0)
    p.add_argument("--y-max", type=float, default=5.0)
    p.add_argument("--count", type=int, default=101)
    p.add_argument("--r-min", type=float, default=8.0)
    p.add_argument("--r-max", type=float, default=120.0)
    p.add_argument("--subtract", action="store_true")

    p = sub.add_parser("hl", help="Harvey-Lawson cone and smoothings", parents=[common])
    p.add_argument("mode", choices=("verify", "xi-relation", "decay"))
    p.add_argument("--branch", type=int, default=0, help="1|2|3, 0 = all")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--r", type=float, default=50.0)

    p = sub.add_parser("g2", help="G2 structure-constant fuzz checks", parents=[common])
    p.add_argument("mode", choices=("check",))
    p.add_argument("--tuples", type=int, default=1000)

    p = sub.add_parser("planes", help="transverse SL plane pair", parents=[common])
    p.add_argument("--theta", required=True)
    return parser


HANDLERS = {
    "spectrum": _cmd_spectrum,
    "indicial": _cmd_indicial,
    "stability": _cmd_stability,
    "index": _cmd_index,
    "lawlor": _cmd_lawlor,
    "hl": _cmd_hl,
    "g2": _cmd_g2,
    "planes": _cmd_planes,
}


def _apply_config(parser, args, argv) -> None:
    """Config file entries act as defaults; explicit flags win."""
    if not args.config:
        return
    entries: dict[str, str] = {}
    with open(args.config, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValidationError(f"{args.config}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            entries[key] = value
    valid = {
        a.replace("--", "").replace("_", "-")
        for a in vars(args)
    }
    explicit = {
        tok.split("=", 1)[0].lstrip("-").replace("_", "-")
        for tok in argv
        if tok.startswith("--")
    }
    for key, value in entries.items():
        attr = key.replace("-", "_")
        if key.replace("_", "-") not in valid:
            raise ValidationError(f"unknown config key '{key}'")
        if key.replace("_", "-") in explicit:
            continue
        current = getattr(args, attr)
        if isinstance(current, bool):
            setattr(args, attr, value.lower() in ("1", "true", "yes"))
        elif isinstance(current, int):
            setattr(args, attr, int(value))
        elif isinstance(current, float):
            setattr(args, attr, float(value))
        elif key == "end":
            setattr(args, attr, (current or []) + [value])
        else:
            setattr(args, attr, value)


def _csv_output(command: str, result: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if command == "spectrum":
        writer.writerow(["eigenvalue", "multiplicity"])
        for e in result["entries"]:
            writer.writerow([e["eigenvalue"], e["multiplicity"]])
    elif command == "indicial":
        writer.writerow(["lambda", "dimension"])
        for e in result["roots"]:
            writer.writerow([e["lambda"], e["dimension"]])
    elif command == "lawlor" and "rows" in result:
        writer.writerow(["y", "theta1", "theta2", "theta3", "z1", "z2", "z3"])
        for row in result["rows"]:
            writer.writerow(
                [row[k] for k in ("y", "theta1", "theta2", "theta3", "z1", "z2", "z3")]
            )
    elif command in ("lawlor", "hl") and "table" in result:
        writer.writerow(["r", "deviation"])
        for row in result["table"]:
            writer.writerow([row["r"], row["deviation"]])
    else:
        raise ValidationError(f"csv output is not defined for '{command}'")
    return buf.getvalue()


_BOOLEAN_FLAGS = {"--morse", "--jacobi", "--symmetry", "--subtract"}


def _join_flag_values(argv) -> list[str]:
    """Merge '--flag value' into '--flag=value' so values like -2:1 parse."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (
            tok.startswith("--")
            and "=" not in tok
            and tok not in _BOOLEAN_FLAGS
            and i + 1 < len(argv)
            and argv[i + 1].startswith("-")
            and not argv[i + 1].startswith("--")
        ):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def run(argv) -> tuple[int, str]:
    """Parse argv, run the subcommand, return (exit code, output text)."""
    parser = build_parser()
    argv = _join_flag_values(list(argv))
    try:
        args = parser.parse_args(argv)
        _apply_config(parser, args, argv)
        if args.threads is None:
            args.threads = os.environ.get("CONE_SPECTRA_THREADS", "1")
        args.threads = int(args.threads)
        if args.threads < 1:
            raise ValidationError("--threads must be >= 1")
        result = HANDLERS[args.command](args)
    except SystemExit_usage as exc:
        return EXIT_USAGE, json.dumps({"error": "usage", "message": str(exc)})
    except NUMERICAL_ERRORS as exc:
        return EXIT_NUMERICAL, json.dumps(
            {"error": type(exc).__name__, "message": str(exc)}
        )
    except (ConeSpectraError, ValueError, OSError) as exc:
        return EXIT_VALIDATION, json.dumps(
            {"error": type(exc).__name__, "message": str(exc)}
        )
    if args.output_format == "csv":
        try:
            return EXIT_OK, _csv_output(args.command, result)
        except ValidationError as exc:
            return EXIT_VALIDATION, json.dumps(
                {"error": "ValidationError", "message": str(exc)}
            )
    config = {
        k: v for k, v in sorted(vars(args).items()) if k != "config" and v is not None
    }
    report = {
        "tool": "cone-spectra",
        "version": __version__,
        "command": args.command,
        "config": config,
        "result": result,
    }
    if args.command in ("indicial", "stability", "index") and getattr(args, "cone", None):
        report["provenance"] = _provenance(args.cone)
    if args.command == "index" and getattr(args, "end", None):
        report["provenance"] = [
            _provenance(e.rpartition(":")[0]) for e in args.end
        ]
    return EXIT_OK, json.dumps(report, sort_keys=True)


def main(argv=None) -> int:
    code, text = run(sys.argv[1:] if argv is None else argv)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
