"""Command-line entry point.

Subcommands: coeffs, stability, verify, converge, allen-cahn, cahn-hilliard.
Global flags --out/--seed/--json apply everywhere; a JSON config file can
preload any flag (explicit command-line flags win).  Exit codes: 0 all good,
2 completed but some scheme was judged unstable, 1 internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import __version__, certificates, coeffs, stability
from .experiments import (CONVERGENCE_DT_SWEEP, ExperimentConfig,
                          run_allen_cahn_radius, run_cahn_hilliard,
                          run_convergence)
from .outputs import (write_csv, write_field_snapshot, write_json,
                      write_manifest, write_pgm)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNSTABLE = 2


def _ensure_outdir(args):
    outdir = args.out or "."
    os.makedirs(outdir, exist_ok=True)
    return outdir


def _config_echo(args):
    return {k: v for k, v in vars(args).items()
            if k not in ("func", "config") and not callable(v)}


def _coeff_payload(rec, exact):
    def render(seq):
        if exact:
            return [str(v) for v in seq]
        return [float(v) for v in seq]

    return {
        "k": rec.k,
        "beta": str(rec.beta) if exact else float(rec.beta),
        "a": render(rec.a), "b": render(rec.b), "c": render(rec.c),
        "d": render(rec.d),
        "eta": str(rec.eta) if exact else float(rec.eta),
    }


def cmd_coeffs(args):
    beta = Fraction(args.beta) if args.exact else float(args.beta)
    rec = coeffs.scheme_coefficients(args.k, beta)
    payload = _coeff_payload(rec, args.exact)
    if args.csv:
        lines = ["symbol,index,value"]
        for name in ("a", "b", "c", "d"):
            for q, v in enumerate(payload[name]):
                lines.append(f"{name},{q},{v}")
        lines.append(f"eta,,{payload['eta']}")
        print("\n".join(lines))
    else:
        print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_stability(args):
    window = tuple(float(v) for v in args.window.split(","))
    if len(window) != 4:
        raise ValueError("--window needs re_lo,re_hi,im_lo,im_hi")
    res = tuple(int(v) for v in args.res.split(","))
    if len(res) != 2:
        raise ValueError("--res needs NX,NY")
    grid = stability.scan_region(args.k, args.beta, window=window, resolution=res)
    outdir = _ensure_outdir(args)
    stem = os.path.join(outdir, f"stability_k{args.k}_beta{args.beta:g}")
    write_pgm(stem + ".pgm", grid.mask, binary=not args.ascii_pgm)
    sidecar = {"k": args.k, "beta": args.beta, "window": list(window),
               "resolution": list(res), "area": grid.area}
    write_json(stem + ".json", sidecar)
    write_manifest(outdir, "stability", _config_echo(args) | {"window": list(window)}, args.seed)
    print(json.dumps(sidecar, sort_keys=True))
    return EXIT_OK


def _beta_grid(spec_str):
    lo, hi, step = (float(p) for p in spec_str.split(":"))
    if step <= 0 or hi < lo:
        raise ValueError("--grid requires lo <= hi and step > 0")
    n = int(round((hi - lo) / step))
    return [lo + i * step for i in range(n + 1) if lo + i * step <= hi + 1e-12]


def cmd_verify(args):
    if args.grid:
        betas = _beta_grid(args.grid)
    else:
        betas = [args.beta]
    if args.k == 5 and args.grid:
        reports = certificates.verify_k5_range(betas)
    else:
        reports = [certificates.verify_certificate(args.k, b) for b in betas]
    records = [r.as_dict() for r in reports]
    outdir = _ensure_outdir(args)
    path = os.path.join(outdir, f"verify_k{args.k}.json")
    write_json(path, records)
    write_manifest(outdir, "verify", _config_echo(args), args.seed)
    if args.json:
        print(json.dumps(records, indent=2, sort_keys=True))
    else:
        for r in reports:
            verdict = "pass" if r.passed else "FAIL"
            print(f"k={r.k} beta={r.beta:g}: {verdict}  min_f={r.min_f:.3e} "
                  f"min_h={r.min_h:.3e} rmax={r.max_root_modulus_C:.6f}")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_UNSTABLE


def _parse_betas(text):
    return [float(b) for b in str(text).split(",")]


def cmd_converge(args):
    outdir = _ensure_outdir(args)
    sweep = tuple(float(d) for d in args.dts.split(",")) if args.dts else CONVERGENCE_DT_SWEEP
    reports = []
    for beta in _parse_betas(args.beta):
        config = ExperimentConfig(name="converge", k=args.k, beta=beta,
                                  dt_sweep=sweep, resolution=args.resolution,
                                  T=args.T, seed=args.seed, out=outdir)
        rep = run_convergence(config)
        reports.append(rep)
        write_csv(os.path.join(outdir, f"converge_k{args.k}_beta{beta:g}.csv"),
                  ["dt", "l2_error"], list(zip(rep.dts, rep.errors)))
        print(f"k={rep.k} beta={rep.beta:g}: slope={rep.slope:.3f}")
    write_json(os.path.join(outdir, f"converge_k{args.k}.json"),
               [r.as_dict() for r in reports])
    write_manifest(outdir, "converge",
                   {"k": args.k, "beta": args.beta, "dts": list(sweep),
                    "resolution": args.resolution, "T": args.T}, args.seed)
    return EXIT_OK


def cmd_allen_cahn(args):
    outdir = _ensure_outdir(args)
    schemes = [tuple(s) for s in json.loads(args.schemes)] if args.schemes else \
        [(1, 1.0), (2, 1.0), (3, 3.0), (4, 3.0)]
    rows_summary = []
    diverged = False
    for k, beta in schemes:
        config = ExperimentConfig(name="allen-cahn", k=int(k), beta=float(beta),
                                  dt=args.dt, resolution=args.resolution, T=args.T,
                                  seed=args.seed, out=outdir, small=args.small)
        rep = run_allen_cahn_radius(config)
        write_csv(os.path.join(outdir, f"radius_k{k}_beta{float(beta):g}.csv"),
                  ["t", "radius", "radius_theory"], rep.rows())
        if rep.final_values is not None:
            write_field_snapshot(os.path.join(outdir, f"field_k{k}_beta{float(beta):g}"),
                                 rep.grid, rep.final_values,
                                 rep.times[-1] if rep.times else 0.0)
        entry = {"k": int(k), "beta": float(beta), "diverged": rep.diverged,
                 "max_relative_deviation": (None if rep.diverged
                                            else rep.max_relative_deviation)}
        rows_summary.append(entry)
        diverged |= rep.diverged
        print(json.dumps(entry, sort_keys=True))
    write_json(os.path.join(outdir, "radius_summary.json"), rows_summary)
    write_manifest(outdir, "allen-cahn",
                   {"schemes": [list(s) for s in schemes], "dt": args.dt,
                    "resolution": args.resolution, "T": args.T,
                    "small": args.small}, args.seed)
    return EXIT_UNSTABLE if diverged else EXIT_OK


def cmd_cahn_hilliard(args):
    outdir = _ensure_outdir(args)
    schemes = tuple(tuple(s) for s in json.loads(args.schemes)) if args.schemes else None
    config = ExperimentConfig(name="cahn-hilliard", seed=args.seed, out=outdir,
                              small=args.small, dt=args.dt, T=args.T,
                              resolution=args.resolution, schemes=schemes)
    report = run_cahn_hilliard(config, with_reference=not args.no_reference)
    for v in report.verdicts:
        write_csv(os.path.join(outdir, f"energy_k{v.k}_beta{v.beta:g}.csv"),
                  ["t", "energy", "ref_distance"],
                  list(zip(v.times, v.energy, v.ref_distance)))
        if v.final_values is not None:
            write_field_snapshot(os.path.join(outdir, f"field_k{v.k}_beta{v.beta:g}"),
                                 report.grid, v.final_values,
                                 v.times[-1] if v.times else 0.0)
        print(json.dumps(v.as_dict(), sort_keys=True))
    write_json(os.path.join(outdir, "cahn_hilliard_summary.json"),
               {"preset": report.preset, "seed": report.seed,
                "reference_checksum": report.reference_checksum,
                "verdicts": [v.as_dict() for v in report.verdicts]})
    write_manifest(outdir, "cahn-hilliard",
                   {"preset": report.preset, "small": args.small,
                    "schemes": [list(s) for s in schemes] if schemes else None},
                   args.seed)
    return EXIT_UNSTABLE if report.any_diverged else EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="betaimex",
                                     description="shifted BDF/IMEX scheme toolbox")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="JSON file preloading any flag of the subcommand")
    parser.add_argument("--out", help="output directory", default=None)
    parser.add_argument("--seed", type=int, default=1234)
    parser.add_argument("--json", action="store_true", help="prefer JSON console output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="print the coefficient record of one scheme")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", required=True)
    p.add_argument("--exact", action="store_true", help="rational arithmetic")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("stability", help="scan an absolute-stability region")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--window", default="-12,4,-8,8")
    p.add_argument("--res", default="600,600")
    p.add_argument("--ascii-pgm", action="store_true", help="write P2 instead of P5")
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("verify", help="multiplier certificate reports")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--grid", help="lo:hi:step sweep of beta")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("converge", help="manufactured-solution convergence study")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--beta", default="1", help="comma list of shifts")
    p.add_argument("--dts", help="comma list of decreasing steps")
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--T", type=float, default=None)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("allen-cahn", help="shrinking-circle radius benchmark")
    p.add_argument("--small", action="store_true", help="desk preset: 256^2, T=500")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--schemes", help='JSON list, e.g. "[[1,1],[4,3]]"')
    p.set_defaults(func=cmd_allen_cahn)

    p = sub.add_parser("cahn-hilliard", help="conserved-flow stability comparison")
    p.add_argument("--small", action="store_true",
                   help="desk preset: 64^2, eps=0.04, dt=2e-6")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--resolution", type=int, default=None)
    p.add_argument("--T", type=float, default=None)
    p.add_argument("--schemes", help='JSON list of [k, beta] pairs')
    p.add_argument("--no-reference", action="store_true",
                   help="skip the fine-step reference trajectory")
    p.set_defaults(func=cmd_cahn_hilliard)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.config:
        with open(args.config) as fh:
            loaded = json.load(fh)
        ns = argparse.Namespace(**{**vars(args), **{k: v for k, v in loaded.items()
                                                    if k in vars(args)}})
        args = parser.parse_args(argv, namespace=ns)
    try:
        return args.func(args)
    except BrokenPipeError:
        raise
    except Exception as exc:  # internal error contract: code 1 with message
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
