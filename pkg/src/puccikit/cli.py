"""Command-line front end: every experiment as a subcommand.

Reports are canonical JSON (sorted keys, 17-significant-digit floats, no
timestamps), so identical runs produce identical bytes. The exit status
encodes the mathematical assertions: 0 pass, 1 fail, 2 usage or parameter
error.
"""

import argparse
import json
import math
import sys

import numpy as np

from . import sweeps, suites
from .capacity import KernelParams
from .fd import (
    Annulus,
    Disk,
    Grid2D,
    Stencil,
    emp_experiment,
    removability_experiment,
    solve,
    verify_profile,
)
from .fd.experiments import BOUNDARY_FUNCTIONS, sine_cap_value
from .linalg import InputError, SymMat
from .radial import ModelParams, ParameterError
from .reporting import ConfigError, canonical_json, parse_config

PASS, FAIL, USAGE = 0, 1, 2


def _emit(report, out_path):
    text = canonical_json(report)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _floats_csv(text):
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _ints_csv(text):
    return [int(tok) for tok in text.split(",") if tok.strip()]


def cmd_ops_properties(args):
    if args.samples < 1:
        raise ConfigError("samples must be >= 1")
    if not (2 <= args.n_min <= args.n_max):
        raise ConfigError("need 2 <= n-min <= n-max")
    n_values = tuple(range(args.n_min, args.n_max + 1))
    report = {
        "config": {
            "subcommand": "ops-properties",
            "samples": args.samples,
            "n_values": list(n_values),
            "seed": args.seed,
            "tol": args.tol,
        }
    }
    included = None
    if args.include:
        with open(args.include, encoding="utf-8") as fh:
            payload = json.load(fh)
        if "matrix" not in payload:
            raise ConfigError("include file needs a 'matrix' entry")
        matrix = SymMat.from_dense(np.asarray(payload["matrix"], dtype=float),
                                   atol=1e-12)
        included = {"n": matrix.n, "accepted": True}
    worst = sweeps.property_sweep(args.samples, n_values=n_values,
                                  seed=args.seed)
    inclusions = sweeps.inclusions_sweep(
        max(1, args.samples // 2), seed=args.seed + 1
    )
    violations = {k: v for k, v in worst.items() if k != "samples"}
    max_violation = max(violations.values())
    ok = max_violation <= args.tol and inclusions["max_violation"] <= args.tol
    report.update(
        {
            "violations": violations,
            "inclusions": inclusions,
            "included_matrix": included,
            "max_violation": max_violation,
            "ok": ok,
        }
    )
    return report, ok


def cmd_radial_suite(args):
    eps_list = _floats_csv(args.eps_list)
    for eps in eps_list:
        if not (0.0 < eps < math.pi / 6.0):
            raise ParameterError(f"eps={eps} outside (0, pi/6)")
    report = suites.radial_suite(eps_list=eps_list, radii_count=args.radii)
    report["config"] = {
        "subcommand": "radial-suite",
        "eps_list": eps_list,
        "radii": args.radii,
    }
    return report, report["ok"]


def cmd_capacity_suite(args):
    n_list = _ints_csv(args.n_list)
    report = suites.capacity_suite(
        args.set, args.alpha, n_list, d=args.d, tol=args.tol
    )
    report["config"] = {
        "subcommand": "capacity-suite",
        "set": args.set,
        "alpha": args.alpha,
        "n_list": n_list,
        "d": args.d,
        "tol": args.tol,
    }
    if args.weights_csv:
        kernel = KernelParams(alpha=args.alpha, n=2, d=args.d)
        from .capacity import equilibrium_measure

        spec = suites.make_set_spec(args.set, n_list[-1], d=args.d)
        measure, _, _ = equilibrium_measure(spec, kernel, tol=args.tol)
        with open(args.weights_csv, "w", encoding="utf-8") as fh:
            fh.write("x,y,weight\n")
            for atom, w in zip(measure.atoms, measure.weights):
                fh.write(
                    f"{format(atom[0], '.17g')},{format(atom[1], '.17g')},"
                    f"{format(w, '.17g')}\n"
                )
    return report, report["ok"]


def cmd_potential_check(args):
    report = suites.potential_check(
        alpha=args.alpha,
        b=args.b,
        lam=args.lam,
        Lam=args.Lam,
        p=args.p,
        n_dim=args.n,
        atom_count=args.atoms,
        point_count=args.points,
        seed=args.seed,
    )
    report["config"] = {
        "subcommand": "potential-check",
        "alpha": args.alpha,
        "b": args.b,
        "lambda": args.lam,
        "Lambda": args.Lam,
        "p": args.p,
        "n": args.n,
        "atoms": args.atoms,
        "points": args.points,
        "seed": args.seed,
    }
    return report, report["ok"]


def _boundary_fn(name, eps):
    if name == "sine_cap":
        if eps is None:
            raise ConfigError("boundary = sine_cap needs the eps key")
        return sine_cap_value(eps)
    if name not in BOUNDARY_FUNCTIONS:
        raise ConfigError(f"unknown boundary {name!r}")
    return BOUNDARY_FUNCTIONS[name]


def cmd_solve(args):
    with open(args.config, encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    report = {"config": dict(cfg, subcommand="solve")}
    if cfg["mode"] == "verify_profile":
        if cfg["eps"] is None:
            raise ConfigError("verify_profile mode needs the eps key")
        result = verify_profile(
            cfg["eps"],
            lam=cfg["lambda"],
            Lam=cfg["Lambda"],
            p=cfg["p"],
            h=cfg["h"],
            width=cfg["stencil_width"],
        )
        ok = result["subsolution_ok"] and result["mp_violated"]
        report.update({"profile": result, "ok": ok})
        return report, ok
    if cfg["mode"] != "solve":
        raise ConfigError(f"unknown mode {cfg['mode']!r}")
    if cfg["delta"] is None:
        raise ConfigError("solve mode needs the delta key")
    params = ModelParams(
        lam=cfg["lambda"],
        Lam=cfg["Lambda"],
        p=cfg["p"],
        delta=cfg["delta"],
        b=cfg["b"],
        c=cfg["c"],
        f_minus_norm=max(-cfg["f_const"], 0.0),
    )
    if cfg["domain"] == "disk":
        domain = Disk(cfg["delta"])
    elif cfg["domain"] == "annulus":
        if cfg["r_in"] is None:
            raise ConfigError("annulus domain needs the r_in key")
        domain = Annulus(cfg["r_in"], cfg["delta"])
    else:
        raise ConfigError(f"unknown domain {cfg['domain']!r}")
    stencil = Stencil(cfg["stencil_width"])
    grid = Grid2D(
        domain, cfg["h"], stencil, boundary_fn=_boundary_fn(cfg["boundary"], cfg["eps"])
    )
    rep = solve(
        grid,
        stencil,
        params,
        f=cfg["f_const"],
        tol=cfg["tol"],
        max_iter=cfg["max_iter"],
        allow_unstable=cfg["allow_unstable"],
    )
    bound_ok = rep.interior_max <= rep.mp_bound_rhs + 10.0 * cfg["h"]
    ok = rep.converged and bound_ok
    report.update(
        {
            "solve": rep.summary(),
            "bound_slack": rep.mp_bound_rhs + 10.0 * cfg["h"] - rep.interior_max,
            "bound_ok": bound_ok,
            "ok": ok,
        }
    )
    if args.field_csv:
        rep.field.to_csv(args.field_csv)
    return report, ok


def cmd_emp(args):
    eps_seq = _floats_csv(args.eps_seq)
    params = ModelParams(
        lam=args.lam, Lam=args.Lam, p=args.p, delta=1.0, b=args.b, c=args.c
    )
    report = emp_experiment(
        h=args.h,
        eps_seq=eps_seq,
        spike=args.spike,
        params=params,
        boundary=args.boundary,
        f_const=args.f_const,
        puncture=not args.no_puncture,
        tol=args.tol,
    )
    report["config"] = {
        "subcommand": "emp",
        "h": args.h,
        "eps_seq": eps_seq,
        "spike": args.spike,
        "boundary": args.boundary,
        "f_const": args.f_const,
        "puncture": not args.no_puncture,
        "lambda": args.lam,
        "Lambda": args.Lam,
        "p": args.p,
        "b": args.b,
        "c": args.c,
        "tol": args.tol,
    }
    if report["mode"] == "plain_mp":
        ok = report["bound_ok"] and report["converged"]
    else:
        ok = (
            report["checks_ok"]
            and report["slack_monotone"]
            and report["converged"]
        )
    report["ok"] = ok
    return report, ok


def cmd_removability(args):
    radii = _floats_csv(args.radii)
    report = removability_experiment(
        h=args.h, radii=radii, probe_radius=args.probe_radius, tol=args.tol
    )
    report["config"] = {
        "subcommand": "removability",
        "h": args.h,
        "radii": radii,
        "probe_radius": args.probe_radius,
        "tol": args.tol,
    }
    ok = report["decreasing"] and report["final_ok"] and report["converged"]
    report["ok"] = ok
    return report, ok


def build_parser():
    parser = argparse.ArgumentParser(
        prog="puccikit",
        description="Degenerate Pucci operators of order p: property sweeps, "
        "radial checks, capacity studies and grid experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("ops-properties", help="operator property sweeps")
    sp.add_argument("--samples", type=int, default=10000)
    sp.add_argument("--n-min", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=6)
    sp.add_argument("--seed", type=int, default=7)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--include", help="JSON file with a matrix to validate")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_ops_properties)

    sp = sub.add_parser("radial-suite", help="fundamental solutions, "
                        "counterexample and barriers")
    sp.add_argument("--eps-list", default="0.39269908169872414,"
                    "0.2617993877991494,0.19634954084936207")
    sp.add_argument("--radii", type=int, default=200)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_radial_suite)

    sp = sub.add_parser("capacity-suite", help="equilibrium refinement study")
    sp.add_argument("--set", default="point",
                    choices=["point", "two_points", "segment", "circle",
                             "cantor"])
    sp.add_argument("--alpha", type=float, default=0.0)
    sp.add_argument("--n-list", default="16,32,64,128,256,512,1024")
    sp.add_argument("--d", type=float, default=1.0)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--weights-csv")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_capacity_suite)

    sp = sub.add_parser("potential-check", help="supersolution bound at "
                        "random off-support points")
    sp.add_argument("--alpha", type=float, default=1.0)
    sp.add_argument("--b", type=float, default=1.0)
    sp.add_argument("--lam", type=float, default=1.0)
    sp.add_argument("--Lam", type=float, default=1.0)
    sp.add_argument("--p", type=int, default=4)
    sp.add_argument("--n", type=int, default=4)
    sp.add_argument("--atoms", type=int, default=100)
    sp.add_argument("--points", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=101)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_potential_check)

    sp = sub.add_parser("solve", help="finite-difference solve from a config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--field-csv")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("emp", help="extended maximum principle experiment")
    sp.add_argument("--h", type=float, default=1.0 / 32.0)
    sp.add_argument("--eps-seq", default="1,0.1,0.01")
    sp.add_argument("--spike", type=float, default=1.0)
    sp.add_argument("--boundary", default="zero")
    sp.add_argument("--f-const", type=float, default=0.0)
    sp.add_argument("--no-puncture", action="store_true")
    sp.add_argument("--lam", type=float, default=1.0)
    sp.add_argument("--Lam", type=float, default=1.0)
    sp.add_argument("--p", type=int, default=2)
    sp.add_argument("--b", type=float, default=0.0)
    sp.add_argument("--c", type=float, default=0.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_emp)

    sp = sub.add_parser("removability", help="annulus-shrinking benchmark")
    sp.add_argument("--h", type=float, default=1.0 / 32.0)
    sp.add_argument("--radii", default="0.2,0.1,0.05,0.025")
    sp.add_argument("--probe-radius", type=float, default=0.55)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_removability)

    return parser


def main(argv=None):
    from ._backend import thread_cap

    thread_cap()  # clamp the worker budget; kernels are single-threaded
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, ok = args.func(args)
    except (ConfigError, ParameterError, InputError, OSError,
            json.JSONDecodeError) as exc:
        print(f"puccikit: error: {exc}", file=sys.stderr)
        return USAGE
    _emit(report, args.out)
    return PASS if ok else FAIL


if __name__ == "__main__":
    sys.exit(main())
