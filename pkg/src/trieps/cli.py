"""Command-line front end: spectra, sweeps, EP search and EL3/ES3 meshing.

Subcommands: check, eigs, sweep, ep-find, el3, es3.  Options may come from
flags or from a plain key=value config file (flags win).  Numeric output is
CSV (with a ``# schema=1`` comment line) or JSON; every float is written
with 17 significant digits so identical runs are byte-identical.

Exit codes: 0 success, 1 usage or validation error, 2 infeasible check,
3 empty search result.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .errors import TriepsError
from .exceptional import (ExceptionalPoint, el3_general, el3_pt, es3_scan,
                          find_ep_along_axis)
from .model import SystemParams, build_matrix, detunings, normalize
from .pseudoherm import ph_residuals, solve_constraints
from .spectrum import (ConstraintMode, cubic_coeffs_reduced,
                       eigensolve_oracle, solve_cubic, spectrum_sweep)

SCHEMA = "# schema=1"

_MODES = {
    "none": ConstraintMode.NONE,
    "pt": ConstraintMode.PT,
    "ph-symmetric": ConstraintMode.PH_SYMMETRIC,
    "ph-asymmetric": ConstraintMode.PH_ASYMMETRIC,
    "ph-general": ConstraintMode.PH_GENERAL,
}

PARAM_KEYS = ("omega1", "omega2", "omega3", "kappa1", "kappa2", "kappa3",
              "g12", "g13", "g23")


def fmt(x) -> str:
    return format(float(x), ".17g")


def read_config_file(path: str) -> dict:
    """key=value lines; blank lines and # comments ignored."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"malformed config line: {raw!r}")
        key, val = line.split("=", 1)
        out[key.strip().replace("_", "-")] = val.strip()
    return out


def merge_config(args: argparse.Namespace, argv: list[str]
                 ) -> argparse.Namespace:
    """Fill argparse values from the config file; explicit flags override."""
    if not getattr(args, "config", None):
        return args
    file_vals = read_config_file(args.config)

    def flag_given(*names: str) -> bool:
        return any(tok == f"--{n}" or tok.startswith(f"--{n}=")
                   for tok in argv for n in names)

    for key, val in file_vals.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise ValueError(f"unknown config key {key!r}")
        if flag_given(key, dest):
            continue  # flag wins
        current = getattr(args, dest)
        if isinstance(current, bool) or val.lower() in ("true", "false"):
            setattr(args, dest, val.lower() == "true")
        elif isinstance(current, int) and not isinstance(current, bool):
            setattr(args, dest, int(val))
        elif isinstance(current, float):
            setattr(args, dest, float(val))
        else:
            try:
                setattr(args, dest, float(val))
            except ValueError:
                setattr(args, dest, val)
    return args


def params_from_args(args) -> SystemParams:
    vals = {k: getattr(args, k) for k in PARAM_KEYS}
    missing = [k for k, v in vals.items() if v is None]
    if missing:
        raise ValueError(f"missing parameters: {', '.join(missing)}")
    return SystemParams(**vals)


def output_path(args, default_name: str) -> Path:
    if args.output:
        return Path(args.output)
    outdir = Path(os.environ.get("TRIEPS_OUTDIR", "."))
    return outdir / default_name


def write_rows(path: Path, header: list[str], rows: list[list],
               fmt_name: str, config_echo: dict, diagnostics: dict) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt_name == "csv":
        lines = [SCHEMA, ",".join(header)]
        for row in rows:
            lines.append(",".join(
                cell.replace(",", ";") if isinstance(cell, str) else fmt(cell)
                for cell in row))
        path.write_text("\n".join(lines) + "\n")
    else:
        def cell_json(c):
            if isinstance(c, str):
                return c
            c = float(c)
            return c if math.isfinite(c) else None

        payload = {
            "config": config_echo,
            "rows": [dict(zip(header, [cell_json(c) for c in row]))
                     for row in rows],
            "diagnostics": diagnostics,
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def add_param_flags(sp, required=False):
    for key in PARAM_KEYS:
        sp.add_argument(f"--{key}", type=float, default=None)


def add_common_flags(sp):
    sp.add_argument("--config", default=None,
                    help="key=value config file; flags override it")
    sp.add_argument("-o", "--output", default=None,
                    help="output path (default: TRIEPS_OUTDIR or cwd)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")
    sp.add_argument("--raw-units", action="store_true",
                    help="emit raw-frame values instead of (x-omega3)/kappa2")
    sp.add_argument("--tol", type=float, default=None,
                    help="classification tolerance override")
    sp.add_argument("--jobs", type=int, default=os.cpu_count() or 1,
                    help="worker count hint; output is order-independent")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trieps",
        description="Spectra and exceptional-point structure of the ternary "
                    "gain/loss cavity model")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="pseudo-Hermiticity residuals / "
                                      "constraint solving")
    add_param_flags(sp)
    sp.add_argument("--branch", type=int, choices=(1, -1), default=1)
    add_common_flags(sp)

    sp = sub.add_parser("eigs", help="eigenvalue triple for one parameter set")
    add_param_flags(sp)
    add_common_flags(sp)

    sp = sub.add_parser("sweep", help="spectral sweep along one parameter")
    add_param_flags(sp)
    sp.add_argument("--axis", default="g13")
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--steps", type=int, default=201)
    sp.add_argument("--constraint", choices=sorted(_MODES), default="none")
    sp.add_argument("--branch", type=int, choices=(1, -1), default=1)
    add_common_flags(sp)

    sp = sub.add_parser("ep-find", help="locate EP2/EP3 along one parameter")
    add_param_flags(sp)
    sp.add_argument("--axis", default="g13")
    sp.add_argument("--lo", type=float, required=True)
    sp.add_argument("--hi", type=float, required=True)
    sp.add_argument("--grid", type=int, default=512)
    sp.add_argument("--constraint", choices=sorted(_MODES), default="none")
    sp.add_argument("--branch", type=int, choices=(1, -1), default=1)
    add_common_flags(sp)

    sp = sub.add_parser("el3", help="third-order exceptional line mesh")
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--kappa-ratio", type=float, default=0.0,
                    help="kappa1/kappa2 of the slice (0 = PT case)")
    add_common_flags(sp)

    sp = sub.add_parser("es3", help="third-order exceptional surface mesh")
    sp.add_argument("--kappa-lo", type=float, default=0.0)
    sp.add_argument("--kappa-hi", type=float, default=3.0)
    sp.add_argument("--slices", type=int, default=31)
    sp.add_argument("--samples", type=int, default=100)
    add_common_flags(sp)

    return ap


def _config_echo(args) -> dict:
    skip = {"config", "output"}
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and v is not None}


def cmd_check(args) -> int:
    have_full = all(getattr(args, k) is not None for k in PARAM_KEYS)
    if have_full:
        p = params_from_args(args)
        res = ph_residuals(normalize(p))
        print(f"r1={fmt(res.r1)} r2={fmt(res.r2)} r3={fmt(res.r3)}")
        ok = res.max_abs <= (args.tol if args.tol else 1e-9)
        print("pseudo-hermitian" if ok else "not pseudo-hermitian")
        return 0 if ok else 2
    needed = ("kappa1", "kappa2", "g12", "g13", "g23")
    missing = [k for k in needed if getattr(args, k) is None]
    if missing:
        raise ValueError(
            "check needs either the full parameter set or the constraint "
            f"inputs; missing: {', '.join(missing)}")
    sol = solve_constraints(args.kappa1, args.kappa2, args.g12, args.g13,
                            args.g23, args.branch)
    print(f"kappa3={fmt(sol.kappa3)}")
    if not sol.feasible:
        print(f"infeasible radicand={fmt(sol.radicand)}")
        return 2
    if sol.delta1_free:
        print(f"delta1=unconstrained delta2={fmt(sol.delta2)}")
    else:
        print(f"delta1={fmt(sol.delta1)} delta2={fmt(sol.delta2)}")
    return 0


def cmd_eigs(args) -> int:
    p = params_from_args(args)
    pn = normalize(p)
    work = p if args.raw_units else pn
    coeffs = cubic_coeffs_reduced(work)
    triple = solve_cubic(coeffs, tol=args.tol)
    disc = triple.disc
    shift = work.omega3
    oracle_x = eigensolve_oracle(build_matrix(work)) - shift
    dev = max(min(abs(v - ox) for ox in oracle_x) for v in triple.values)
    rows = [["lambda_plus", triple.lambda_plus.real + shift,
             triple.lambda_plus.imag],
            ["lambda_minus", triple.lambda_minus.real + shift,
             triple.lambda_minus.imag],
            ["lambda_zero", triple.lambda_zero.real + shift,
             triple.lambda_zero.imag]]
    for name, re, im in rows:
        print(f"{name}: {fmt(re)} {'+' if im >= 0 else '-'} {fmt(abs(im))}i")
    print(f"classification={triple.classification.value}")
    print(f"Delta={fmt(disc.Delta)} A={fmt(disc.A)} B={fmt(disc.B)}")
    print(f"oracle-max-deviation={fmt(dev)}")
    return 0


def cmd_sweep(args) -> int:
    base = params_from_args(args)
    rows_out = []
    rows = spectrum_sweep(base, args.axis, args.lo, args.hi, args.steps,
                          _MODES[args.constraint], branch=args.branch,
                          tol=args.tol)
    for r in rows:
        if r.excluded:
            rows_out.append([r.axis_value] + [math.nan] * 6
                            + ["excluded", "1", r.reason or ""])
            continue
        p = r.params
        vals = []
        for z in r.triple.values:
            # triples come out of the normalized frame: (lambda-omega3)/kappa2
            zz = complex(z)
            if args.raw_units:
                zz = zz * p.kappa2 + p.omega3
            vals.extend([zz.real, zz.imag])
        rows_out.append([r.axis_value] + vals
                        + [r.triple.classification.value, "0", ""])
    header = ["axis_value", "re_lambda_plus", "im_lambda_plus",
              "re_lambda_minus", "im_lambda_minus", "re_lambda_zero",
              "im_lambda_zero", "classification", "excluded", "reason"]
    path = output_path(args, f"sweep_{args.axis}.{args.format}")
    write_rows(path, header, rows_out, args.format, _config_echo(args),
               {"n_rows": len(rows_out),
                "n_excluded": sum(r.excluded for r in rows)})
    print(f"wrote {path}")
    return 0


def _ep_rows(points: list[ExceptionalPoint]) -> list[list]:
    rows = []
    for ep in points:
        p = ep.params
        d1, d2 = detunings(p)
        rows.append([ep.axis_value, float(ep.order), ep.lam.real, ep.lam.imag,
                     p.g12, p.g13, p.g23, p.kappa1, d1, d2,
                     ep.residuals[0], ep.residuals[1], ep.residuals[2]])
    return rows


_EP_HEADER = ["axis_value", "order", "re_lambda", "im_lambda", "g12", "g13",
              "g23", "kappa1", "delta1", "delta2", "resid_A", "resid_B",
              "resid_Delta"]


def cmd_ep_find(args) -> int:
    base = params_from_args(args)
    kwargs = {}
    if args.tol is not None:
        kwargs["class_tol"] = args.tol
    points = find_ep_along_axis(base, args.axis, args.lo, args.hi,
                                _MODES[args.constraint], grid=args.grid,
                                branch=args.branch, **kwargs)
    path = output_path(args, f"epfind_{args.axis}.{args.format}")
    write_rows(path, _EP_HEADER, _ep_rows(points), args.format,
               _config_echo(args), {"n_points": len(points)})
    for ep in points:
        print(f"EP{ep.order} at {args.axis}={fmt(ep.axis_value)} "
              f"lambda={fmt(ep.lam.real)}")
    print(f"wrote {path}")
    return 0 if points else 3


_MESH_HEADER = ["kappa1_ratio", "g13", "g23", "g12", "delta1", "delta2",
                "re_lambda", "im_lambda", "resid_A", "resid_B", "resid_Delta"]


def _mesh_rows(samples) -> list[list]:
    rows = []
    for mp in samples:
        p = mp.point.params
        d1, d2 = detunings(p)
        rows.append([mp.kappa1_ratio, mp.g13, mp.g23, p.g12, d1, d2,
                     mp.point.lam.real, mp.point.lam.imag,
                     mp.point.residuals[0], mp.point.residuals[1],
                     mp.point.residuals[2]])
    return rows


def cmd_el3(args) -> int:
    if args.kappa_ratio == 0.0:
        mesh = el3_pt(args.samples)
    else:
        mesh = el3_general(args.kappa_ratio, args.samples)
    path = output_path(args, "el3.%s" % args.format)
    write_rows(path, _MESH_HEADER, _mesh_rows(mesh.samples), args.format,
               _config_echo(args), dict(mesh.metadata,
                                        footprint=list(mesh.metadata["footprint"])))
    print(f"wrote {path} ({len(mesh.samples)} points)")
    return 0 if mesh.samples else 3


def cmd_es3(args) -> int:
    mesh = es3_scan(args.kappa_lo, args.kappa_hi, args.slices, args.samples)
    rows = []
    for slice_samples in mesh.samples:
        rows.extend(_mesh_rows(slice_samples))
    path = output_path(args, "es3.%s" % args.format)
    write_rows(path, _MESH_HEADER, rows, args.format, _config_echo(args),
               {"slices": args.slices, "samples_per_slice": args.samples})
    print(f"wrote {path} ({len(rows)} points)")
    return 0 if rows else 3


_COMMANDS = {
    "check": cmd_check,
    "eigs": cmd_eigs,
    "sweep": cmd_sweep,
    "ep-find": cmd_ep_find,
    "el3": cmd_el3,
    "es3": cmd_es3,
}


def main(argv=None) -> int:
    parser = build_parser()
    used_argv = list(sys.argv[1:]) if argv is None else list(argv)
    try:
        args = parser.parse_args(used_argv)
        args = merge_config(args, used_argv)
        return _COMMANDS[args.command](args)
    except (TriepsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
