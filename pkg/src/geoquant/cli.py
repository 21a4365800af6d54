"""Command-line front end: run check suites and write reports and CSV data.

Reports go to stdout as JSON lines ``{check, passed, max_error, tolerance,
runtime_ms}``. Exit status is 0 when every report passes, 1 when a check
fails and 2 for usage or configuration errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import checks
from .correspondence import reference_complex_structure
from .field_models import build_lattice, two_point, vacuum_profile, write_site_csv
from .schrodinger_rep import sample_grid, write_samples_csv
from .phase_space import standard_phase_space
from .spans import CoherentSpan, Quantization

DEFAULT_SEED = 0
SEED_ENV = "GEOQUANT_SEED"


class UsageError(Exception):
    pass


def _common():
    c = argparse.ArgumentParser(add_help=False)
    c.add_argument("--config", help="JSON file with option values; flags take precedence")
    c.add_argument("--seed", type=int, help=f"random seed (default {DEFAULT_SEED}, or ${SEED_ENV})")
    return c


def _trial_parser(sub, name, help_, dim, trials):
    p = sub.add_parser(name, help=help_, parents=[_common()])
    p.add_argument("--dim", type=int, help=f"dimension of the phase space (even, default {dim})")
    p.add_argument("--trials", type=int, help=f"number of random instances (default {trials})")
    p.set_defaults(_defaults={"dim": dim, "trials": trials})
    return p


def build_parser():
    parser = argparse.ArgumentParser(prog="geoquant", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    _trial_parser(sub, "roundtrip", "J <-> Omega round trips", 4, 100)
    _trial_parser(sub, "bargmann", "Segal-Bargmann isometry, kernel and pairing checks", 2, 20)
    _trial_parser(sub, "ccr", "canonical commutation relations", 2, 20)
    _trial_parser(sub, "intertwine", "transform intertwines observables", 2, 20)
    _trial_parser(sub, "affine", "affine base change, transform and observables", 2, 5)

    p = sub.add_parser("lattice-vacuum", help="lattice vacuum checks and CSV profile", parents=[_common()])
    p.add_argument("--sites", type=int)
    p.add_argument("--mass", type=float)
    p.add_argument("--spacing", type=float)
    p.add_argument("--quantity", choices=["correlation", "variance"],
                   help="correlation <phi_0 phi_x> (default) or variance <phi_x phi_x>")
    p.add_argument("--out", help="CSV path (columns: site, value)")
    p.set_defaults(_defaults={"sites": 8, "mass": 1.0, "spacing": 1.0, "quantity": "correlation"})

    p = sub.add_parser("density-probe", help="coherent-state approximation residuals", parents=[_common()])
    p.add_argument("--count", type=int)
    p.add_argument("--spacing", type=float)
    p.add_argument("--out", help="CSV path (columns: site, value) with site = number of states")
    p.set_defaults(_defaults=dict(checks.DENSITY_DEMO))

    p = sub.add_parser("sample", help="wave function of a coherent state on a grid, as CSV", parents=[_common()])
    p.add_argument("--dim", type=int)
    p.add_argument("--label", type=float, nargs="+", help="phase-space label (default 0: the vacuum)")
    p.add_argument("--points", type=int)
    p.add_argument("--lo", type=float)
    p.add_argument("--hi", type=float)
    p.add_argument("--out", help="CSV path (columns: phi_1..phi_n, re, im)")
    p.set_defaults(_defaults={"dim": 2, "points": 41, "lo": -3.0, "hi": 3.0})
    return parser


def _resolve(args):
    """Merge built-in defaults, the config file and explicit flags (in that order)."""
    opts = dict(args._defaults)
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        if not isinstance(cfg, dict):
            raise UsageError("config must be a JSON object")
        opts.update({k.replace("-", "_"): v for k, v in cfg.items()})
    env = os.environ.get(SEED_ENV)
    if "seed" not in opts:
        try:
            opts["seed"] = int(env) if env is not None else DEFAULT_SEED
        except ValueError as exc:
            raise UsageError(f"{SEED_ENV} must be an integer") from exc
    for k, v in vars(args).items():
        if v is not None and not k.startswith("_") and k not in ("command", "config"):
            opts[k] = v
    if "dim" in opts:
        dim = opts["dim"]
        if not isinstance(dim, int) or dim < 2 or dim % 2:
            raise UsageError(f"--dim must be a positive even integer, got {dim}")
    for key in ("trials", "sites", "count", "points"):
        if key in opts and (not isinstance(opts[key], int) or opts[key] < 1):
            raise UsageError(f"--{key} must be a positive integer")
    return opts


def _lattice(opts):
    try:
        model = build_lattice(opts["sites"], opts["mass"], opts["spacing"])
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    reports = [checks.timed("lattice.vacuum_form", 1e-10, checks.lattice_error,
                            model.sites, model.mass, model.spacing)]
    if opts.get("out"):
        vals = vacuum_profile(model) if opts["quantity"] == "variance" else two_point(model)[0]
        write_site_csv(opts["out"], vals)
    return reports


def _density(opts):
    holder = {}

    def run():
        holder["r"] = checks.density_probe_demo(opts["count"], opts["spacing"])
        return checks.monotonicity_violation(holder["r"].residuals)

    reports = [checks.timed("density_probe.monotone", 0.0, run)]
    if opts.get("out"):
        write_site_csv(opts["out"], holder["r"].residuals)
    return reports


def _sample(opts):
    n = opts["dim"] // 2
    ps = standard_phase_space(n)
    quant = Quantization(ps, J=reference_complex_structure(ps))
    label = np.zeros(ps.dim) if opts.get("label") is None else np.asarray(opts["label"], dtype=float)
    if label.shape != (ps.dim,):
        raise UsageError(f"--label needs {ps.dim} values")
    span = CoherentSpan.coherent(quant, "full", label)
    phis = sample_grid(n, opts["lo"], opts["hi"], opts["points"])

    def peak():
        # |K^S_tau| peaks at phi = q(tau) with value exp(g(tau, tau)/4)
        val = abs(span(quant.q(label)))
        return abs(val - np.exp(0.25 * quant.g(label, label)))

    reports = [checks.timed("sample.peak", 1e-12, peak)]
    if opts.get("out"):
        write_samples_csv(opts["out"], span, phis)
    return reports


SUITES = {
    "roundtrip": checks.roundtrip_suite,
    "bargmann": checks.bargmann_suite,
    "ccr": checks.ccr_suite,
    "intertwine": checks.intertwine_suite,
    "affine": checks.affine_suite,
}


def run(argv=None, out=None):
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        opts = _resolve(args)
        if args.command in SUITES:
            reports = SUITES[args.command](opts["dim"], opts["trials"], opts["seed"])
        elif args.command == "lattice-vacuum":
            reports = _lattice(opts)
        elif args.command == "density-probe":
            reports = _density(opts)
        else:
            reports = _sample(opts)
    except UsageError as exc:
        print(f"geoquant: error: {exc}", file=sys.stderr)
        return 2
    for r in reports:
        print(r.to_json(), file=out)
    return 0 if all(r.passed for r in reports) else 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
