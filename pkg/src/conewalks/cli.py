"""Command-line surface.

Subcommands:
  enumerate       exact excursion counts to CSV
  polyorder       polyharmonic order of a polynomial for a model
  fit             exact expansion fit from closed-form counts
  genfun-verify   exact kernel-method identity suite
  continuum       heatkernel / laplace-verify / mc subcommands
  report-all      full acceptance suite, JSON report, nonzero exit on failure

All JSON output is deterministic for a fixed configuration (sorted keys,
17-significant-digit floats, seeded randomness).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import acceptance, asymptotics, continuum, counting, genfun, lattice, montecarlo
from .polynomials import Poly1
from .polyparse import parse_poly2

SCHEMA = "1"


def _float_repr(x: float) -> float:
    # round-trip through 17 significant digits for stable output
    return float(f"{x:.17g}")


def _jsonify(obj):
    if isinstance(obj, float):
        return _float_repr(obj)
    if isinstance(obj, Fraction):
        from .polynomials import rat_to_str

        return rat_to_str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def _emit(payload: dict, out_path: str | None):
    payload = {"schema": SCHEMA, **payload}
    text = json.dumps(_jsonify(payload), indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _resolve_model(args) -> lattice.StepModel:
    if getattr(args, "model_file", None):
        return lattice.load_model(args.model_file)
    return lattice.get_model(args.model)


def cmd_enumerate(args) -> int:
    model = _resolve_model(args)
    tables = counting.count_dp(model, args.n)
    rows = []
    for table in tables:
        for (i, j), v in sorted(table.values.items()):
            rows.append((table.n, i, j, str(v)))
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "i", "j", "count"])
            writer.writerows(rows)
    else:
        print("n,i,j,count")
        for row in rows:
            print(",".join(map(str, row)))
    return 0


def cmd_polyorder(args) -> int:
    model = _resolve_model(args)
    poly = parse_poly2(args.poly)
    order = lattice.polyharmonic_order(model, poly, cap=args.cap)
    _emit(
        {
            "command": "polyorder",
            "model": model.name,
            "poly": args.poly,
            "order": order,
        },
        args.out,
    )
    return 0 if order is not None else 3


def cmd_fit(args) -> int:
    i, j = (int(part) for part in args.target.split(","))
    fit = asymptotics.fit_model_expansion(args.model, (i, j), args.terms, args.nmax)
    _emit({"command": "fit", **fit.to_json_obj()}, args.out)
    return 0


def cmd_genfun_verify(args) -> int:
    model = lattice.get_model(args.model)
    results = genfun.verify_suite(model)
    first_fail = next((r for r in results if not r["passed"]), None)
    payload = {
        "command": "genfun-verify",
        "model": model.name,
        "suite": args.suite,
        "identities": results,
        "all_passed": first_fail is None,
        "first_failure": first_fail["identity"] if first_fail else None,
    }
    _emit(payload, args.out)
    return 0 if first_fail is None else 4


def cmd_continuum(args) -> int:
    if args.continuum_cmd == "heatkernel":
        wedge = continuum.Wedge(args.xi)
        rho, th = (float(v) for v in getattr(args, "from").split(","))
        r, eta = (float(v) for v in args.to.split(","))
        params = continuum.HeatKernelParams(eps=args.eps)
        value = continuum.heat_kernel(wedge, (rho, th), (r, eta), args.t, params)
        _emit(
            {
                "command": "continuum heatkernel",
                "xi": args.xi,
                "from": [rho, th],
                "to": [r, eta],
                "t": args.t,
                "eps": args.eps,
                "value": value,
            },
            args.out,
        )
        return 0
    if args.continuum_cmd == "laplace-verify":
        cov = continuum.CovMatrix(args.s11, args.s12, args.s22)
        p = Poly1([0] + [1] * args.pdeg)  # t + t^2 + ... + t^pdeg
        q = Poly1([0, 1, 1]) if args.pdeg >= 1 else Poly1()
        samples = [
            (0.9 + 0.3j, 1.2 - 0.1j),
            (1.5 + 0j, 0.7 + 0.2j),
            (2.0 - 0.4j, 1.0 + 0.5j),
        ]
        res = continuum.verify_functional_eqs(cov, p, q, samples)
        passed = max(res.values()) < args.tol
        _emit(
            {
                "command": "continuum laplace-verify",
                "cov": {"s11": args.s11, "s12": args.s12, "s22": args.s22},
                "theta": cov.theta,
                "pdeg": args.pdeg,
                "residuals": res,
                "tolerance": args.tol,
                "passed": passed,
            },
            args.out,
        )
        return 0 if passed else 5
    if args.continuum_cmd == "mc":
        wedge = continuum.Wedge(args.xi)
        rho, th = (float(v) for v in args.start.split(","))
        result = montecarlo.mc_survival(
            wedge, (rho, th), args.t, paths=args.paths, dt=args.dt, seed=args.seed
        )
        _emit(
            {
                "command": "continuum mc",
                "xi": args.xi,
                "start": [rho, th],
                "t": args.t,
                "paths": args.paths,
                "dt": args.dt,
                "seed": args.seed,
                "estimate": result.estimate,
                "stderr": result.stderr,
                "backend": result.backend,
            },
            args.out,
        )
        return 0
    raise AssertionError("unreachable")


def cmd_report_all(args) -> int:
    report = acceptance.run_acceptance(seed=args.seed)
    _emit({"command": "report-all", **report}, args.out)
    for check in report["checks"]:
        status = "PASS" if check["passed"] else "FAIL"
        print(f"[{status}] criterion {check['criterion']}: {check['name']}", file=sys.stderr)
    return 0 if report["all_passed"] else 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="conewalks",
        description="Quarter-plane walk enumeration and polyharmonic function toolkit",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enumerate", help="exact excursion counts")
    p.add_argument("--model", default="simple", choices=sorted(lattice.MODELS))
    p.add_argument("--model-file", help="JSON file with a custom step model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("polyorder", help="polyharmonic order of a polynomial")
    p.add_argument("--model", default="simple", choices=sorted(lattice.MODELS))
    p.add_argument("--model-file")
    p.add_argument("--poly", required=True, help='e.g. "(i+1)*(j+1)"')
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_polyorder)

    p = sub.add_parser("fit", help="exact expansion fit from closed-form counts")
    p.add_argument("--model", required=True, choices=sorted(lattice.MODELS))
    p.add_argument("--target", default="0,0", help="i,j")
    p.add_argument("--terms", type=int, default=4)
    p.add_argument("--nmax", type=int, default=2001)
    p.add_argument("--out")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("genfun-verify", help="exact kernel-method identity suite")
    p.add_argument("--model", required=True, choices=sorted(lattice.MODELS))
    p.add_argument("--suite", default="all", choices=["all"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_genfun_verify)

    p = sub.add_parser("continuum", help="continuous-side evaluators")
    csub = p.add_subparsers(dest="continuum_cmd", required=True)

    ph = csub.add_parser("heatkernel")
    ph.add_argument("--xi", type=float, required=True)
    ph.add_argument("--from", dest="from", required=True, help="rho,theta")
    ph.add_argument("--to", required=True, help="r,eta")
    ph.add_argument("--t", type=float, required=True)
    ph.add_argument("--eps", type=float, default=1e-12)
    ph.add_argument("--out")
    ph.set_defaults(func=cmd_continuum)

    pl = csub.add_parser("laplace-verify")
    pl.add_argument("--s11", type=float, required=True)
    pl.add_argument("--s12", type=float, required=True)
    pl.add_argument("--s22", type=float, required=True)
    pl.add_argument("--pdeg", type=int, default=2)
    pl.add_argument("--tol", type=float, default=1e-10)
    pl.add_argument("--out")
    pl.set_defaults(func=cmd_continuum)

    pm = csub.add_parser("mc")
    pm.add_argument("--xi", type=float, required=True)
    pm.add_argument("--start", required=True, help="rho,theta")
    pm.add_argument("--t", type=float, default=1.0)
    pm.add_argument("--paths", type=int, default=100_000)
    pm.add_argument("--dt", type=float, default=1e-3)
    pm.add_argument("--seed", type=int, default=0)
    pm.add_argument("--out")
    pm.set_defaults(func=cmd_continuum)

    p = sub.add_parser("report-all", help="run the acceptance suite")
    p.add_argument("--seed", type=int, default=20240801)
    p.add_argument("--out")
    p.set_defaults(func=cmd_report_all)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
