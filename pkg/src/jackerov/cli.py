"""Command-line front end.

Every subcommand honors --format {text,json,csv} with stable keys and is
byte-deterministic for a fixed seed and configuration.  Exit codes:
0 success, 1 usage error, 2 degree/enumeration cap exceeded, 3 a checked
theorem identity failed.  The environment variable JACKEROV_CACHE names
a directory for cached Jack expansions.
"""

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction

from .field import T
from .partitions import Partition, enumerate_partitions
from .diagrams import anisotropic
from .cumulants import free_cumulants, moments
from . import kerov as kerovmod
from . import plancherel as plmod
from .jack import DEFAULT_CAP as JACK_CAP
from .jack import DegreeCapError, ch, jack, theta
from .kerov import PolynomialityViolation, TheoremViolation, gamma_str

EXPECT_KINDS = ("Ch", "theta", "M")
SAMPLE_FIELDS = ("n", "alpha", "seed", "sup_dist", "R2", "R3", "R4", "R5",
                 "R6", "rows_scaled", "cols_scaled")


class Config:
    """Validated run configuration shared by the subcommand handlers."""

    __slots__ = ("jack_cap", "kerov_cap", "enum_cap", "grid_step", "fmt",
                 "seed", "threads")

    def __init__(self, jack_cap=JACK_CAP, kerov_cap=kerovmod.DEFAULT_CAP,
                 enum_cap=None, grid_step=1e-3, fmt="text", seed=0, threads=None):
        if jack_cap <= 0 or kerov_cap <= 0 or (enum_cap is not None and enum_cap <= 0):
            raise ValueError("caps must be positive")
        if not 0 < grid_step <= 0.1:
            raise ValueError("grid step must lie in (0, 0.1]")
        if fmt not in ("text", "json", "csv"):
            raise ValueError("format must be text, json, or csv")
        self.jack_cap = jack_cap
        self.kerov_cap = kerov_cap
        self.enum_cap = enum_cap
        self.grid_step = grid_step
        self.fmt = fmt
        self.seed = seed
        self.threads = threads if threads else (os.cpu_count() or 1)


def parse_alpha(token):
    """'t' is symbolic; 'p/q' and plain integers are exact; decimals float."""
    if token == "t":
        return "t"
    if "/" in token:
        return Fraction(token)
    try:
        return int(token)
    except ValueError:
        pass
    return float(token)


def _partition_arg(text):
    try:
        return Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit_json(obj):
    print(json.dumps(obj, indent=2))


def _csv_writer():
    return csv.writer(sys.stdout, lineterminator="\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_jack(args, cfg):
    expansion = jack(args.lam, cap=cfg.jack_cap).symfun(args.basis)
    coeffs = {str(lam): str(c)
              for lam, c in sorted(expansion.coeffs.items(),
                                   key=lambda kv: kv[0].parts)}
    if cfg.fmt == "json":
        _emit_json({"lambda": str(args.lam), "basis": args.basis,
                    "expansion": str(expansion), "coefficients": coeffs})
    elif cfg.fmt == "csv":
        w = _csv_writer()
        w.writerow(("rho", "coefficient"))
        for key, val in coeffs.items():
            w.writerow((key, val))
    else:
        print(expansion)
    return 0


def cmd_theta(args, cfg):
    val = theta(args.rho, args.lam, cap=cfg.jack_cap)
    if cfg.fmt == "json":
        _emit_json({"rho": str(args.rho), "lambda": str(args.lam),
                    "value": str(val)})
    elif cfg.fmt == "csv":
        w = _csv_writer()
        w.writerow(("rho", "lambda", "value"))
        w.writerow((str(args.rho), str(args.lam), str(val)))
    else:
        print(val)
    return 0


def cmd_ch(args, cfg):
    val = ch(args.mu, args.lam, cap=cfg.jack_cap)
    if cfg.fmt == "json":
        _emit_json({"mu": str(args.mu), "lambda": str(args.lam),
                    "value": str(val)})
    elif cfg.fmt == "csv":
        w = _csv_writer()
        w.writerow(("mu", "lambda", "value"))
        w.writerow((str(args.mu), str(args.lam), str(val)))
    else:
        print(val)
    return 0


def cmd_moments(args, cfg):
    alpha = parse_alpha(args.alpha)
    if alpha == "t":
        diagram = anisotropic(args.lam)
        render = str
    elif isinstance(alpha, float):
        if not alpha > 0:
            raise ValueError("alpha must be positive")
        diagram = anisotropic(args.lam, math.sqrt(alpha))
        render = repr
    else:
        raise ValueError(
            "moments of the anisotropic diagram live in Q(sqrt(alpha)); "
            "use --alpha t or a decimal")
    mseq = moments(diagram, args.order)
    cums = free_cumulants(mseq)
    mvals = {str(k): render(mseq[k]) for k in range(args.order + 1)}
    rvals = {str(k): render(cums[k]) for k in range(1, args.order + 1)}
    if cfg.fmt == "json":
        _emit_json({"lambda": str(args.lam), "alpha": args.alpha,
                    "M": mvals, "R": rvals})
    elif cfg.fmt == "csv":
        w = _csv_writer()
        w.writerow(("k", "M", "R"))
        for k in range(args.order + 1):
            w.writerow((k, mvals[str(k)], rvals.get(str(k), "")))
    else:
        for k in range(args.order + 1):
            print("M[%d] = %s" % (k, mvals[str(k)]))
        for k in range(1, args.order + 1):
            print("R[%d] = %s" % (k, rvals[str(k)]))
    return 0


def cmd_kerov(args, cfg):
    if args.basis == "R":
        kp = kerovmod.compute_K(args.mu, cap=cfg.kerov_cap)
    else:
        kp = kerovmod.compute_L(args.mu, cap=cfg.kerov_cap)
    report = kerovmod.verify_degree_bounds(args.mu, cap=cfg.kerov_cap)
    if cfg.fmt == "json":
        _emit_json({"mu": str(args.mu), "basis": args.basis,
                    "polynomial": str(kp), "terms": kp.terms_json(),
                    "degree_report": [
                        {"basis": rec["basis"], "rho": str(rec["rho"]),
                         "degree": rec["degree"], "bound": rec["bound"],
                         "parity_ok": rec["parity_ok"]}
                        for rec in report]})
    elif cfg.fmt == "csv":
        audit = {(rec["basis"], rec["rho"]): rec for rec in report}
        w = _csv_writer()
        w.writerow(("rho", "coefficient", "degree", "bound", "parity_ok"))
        for rho, gp in kp._ordered():
            rec = audit[(args.basis, rho)]
            w.writerow((str(rho), gamma_str(gp), rec["degree"], rec["bound"],
                        rec["parity_ok"]))
    else:
        print(kp)
        print()
        print(report)
    return 0


def cmd_verify(args, cfg):
    checks = []

    def record(name, detail):
        checks.append({"name": name, "status": "ok", "detail": detail})
        if cfg.fmt == "text":
            print("ok %-28s %s" % (name, detail))

    mus = [mu for d in range(1, cfg.kerov_cap + 1)
           for mu in enumerate_partitions(d) if mu.size + len(mu) <= cfg.kerov_cap]
    for mu in mus:
        kerovmod.verify_degree_bounds(mu, cap=cfg.kerov_cap)
        kerovmod.top_term_check(mu, cap=cfg.kerov_cap)
        record("kerov mu=%s" % mu, "degree bounds, parity, top term")
    for m in range(args.growth_max + 1):
        try:
            plmod.growth_consistency_check(m)
        except AssertionError as exc:
            raise TheoremViolation(str(exc))
        record("growth m=%d" % m, "one-step kernel matches the measure")
    rhos = [rho for d in range(2, args.rho_size + 1)
            for rho in enumerate_partitions(d) if rho[-1] >= 2]
    for rho in rhos:
        rep = plmod.expectation_degree_check(rho, range(rho.size, rho.size + 4))
        record("expectation rho=%s" % rho,
               "degree <= %d in n (%d points checked)"
               % (rep["degree_bound"], rep["checked"]))
    if cfg.fmt == "json":
        _emit_json({"ok": True, "checks": checks})
    elif cfg.fmt == "csv":
        w = _csv_writer()
        w.writerow(("name", "status", "detail"))
        for c in checks:
            w.writerow((c["name"], c["status"], c["detail"]))
    else:
        print("all %d checks passed" % len(checks))
    return 0


def _parse_expect(spec):
    kind, _, rest = spec.partition(":")
    if kind not in EXPECT_KINDS:
        raise ValueError("--expect wants Ch:MU, theta:RHO, or M:RHO")
    return kind, Partition.parse(rest)


def _expect_evaluator(kind, index, cap):
    if kind == "Ch":
        return lambda lam: ch(index, lam, cap=cap)
    if kind == "theta":
        return lambda lam: theta(index, lam, cap=cap)
    kmax = max(index) if index.parts else 0

    def from_moments(lam):
        mseq = moments(anisotropic(lam), kmax)
        out = 1
        for part in index:
            out = out * mseq[part]
        return out

    return from_moments


def cmd_plancherel(args, cfg):
    alpha = parse_alpha(args.alpha)
    if args.mode == "exact":
        if args.expect:
            if alpha != "t":
                raise ValueError("--expect needs --alpha t (exact symbolic mode)")
            kind, index = _parse_expect(args.expect)
            F = _expect_evaluator(kind, index, max(cfg.jack_cap, args.n))
            val = plmod.exact_expectation(F, args.n)
            if cfg.fmt == "json":
                _emit_json({"n": args.n, "alpha": args.alpha,
                            "expect": args.expect, "value": str(val)})
            elif cfg.fmt == "csv":
                w = _csv_writer()
                w.writerow(("n", "alpha", "expect", "value"))
                w.writerow((args.n, args.alpha, args.expect, str(val)))
            else:
                print(val)
            return 0
        dist = plmod.plancherel_dist(args.n, alpha, cap=cfg.enum_cap)
        render = repr if isinstance(alpha, float) else str
        probs = {str(lam): render(p) for lam, p in dist}
        if cfg.fmt == "json":
            _emit_json({"n": args.n, "alpha": args.alpha, "probs": probs})
        elif cfg.fmt == "csv":
            w = _csv_writer()
            w.writerow(("lambda", "probability"))
            for key, val in probs.items():
                w.writerow((key, val))
        else:
            for key, val in probs.items():
                print("%s\t%s" % (key, val))
        return 0
    # sampling mode
    if alpha == "t" or not float(alpha) > 0:
        raise ValueError("sampling needs a positive numeric alpha")
    report = plmod.limit_shape_report(args.n, float(alpha), args.samples,
                                      cfg.seed, threads=cfg.threads,
                                      grid_step=cfg.grid_step)
    rows = _sample_rows(report)
    if cfg.fmt == "json":
        _emit_json({"n": args.n, "alpha": args.alpha, "seed": cfg.seed,
                    "records": [dict(zip(SAMPLE_FIELDS, r)) for r in rows]})
    else:
        w = _csv_writer()
        w.writerow(SAMPLE_FIELDS)
        for r in rows:
            w.writerow(r)
    return 0


def _sample_rows(report):
    rows = []
    for rec in report["records"]:
        rows.append((report["n"], report["alpha"], report["seed"],
                     repr(rec["sup_distance"]),
                     repr(rec["R2"]), repr(rec["R3"]), repr(rec["R4"]),
                     repr(rec["R5"]), repr(rec["R6"]),
                     repr(rec["rows_scaled"]), repr(rec["cols_scaled"])))
    return rows


def cmd_limitshape(args, cfg):
    alpha = parse_alpha(args.alpha)
    if alpha == "t" or not float(alpha) > 0:
        raise ValueError("limit-shape sampling needs a positive numeric alpha")
    report = plmod.limit_shape_report(args.n, float(alpha), args.samples,
                                      cfg.seed, threads=cfg.threads,
                                      grid_step=cfg.grid_step)
    out = args.out
    paths = {}

    path = out + "_samples.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SAMPLE_FIELDS)
        for r in _sample_rows(report):
            w.writerow(r)
    paths["samples"] = path

    path = out + "_summary.json"
    with open(path, "w") as fh:
        json.dump({"n": report["n"], "alpha": report["alpha"],
                   "samples": report["samples"], "seed": report["seed"],
                   "summary": report["summary"]}, fh, indent=2)
        fh.write("\n")
    paths["summary"] = path

    path = out + "_curves.csv"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        header = ["x", "omega"] + ["profile%d" % k
                                   for k in range(len(report["curves"]["profiles"]))]
        w.writerow(header)
        for i, x in enumerate(report["curves"]["x"]):
            row = [repr(x), repr(report["curves"]["omega"][i])]
            row += [repr(p[i]) for p in report["curves"]["profiles"]]
            w.writerow(row)
    paths["curves"] = path

    if not args.no_figures:
        from . import figures
        paths["profile_figure"] = figures.save_profile_figure(
            report, out + "_profiles.png")
        paths["histogram_figure"] = figures.save_histogram_figure(
            report, out + "_hist.png")

    if cfg.fmt == "json":
        _emit_json({"n": args.n, "alpha": args.alpha, "seed": cfg.seed,
                    "summary": report["summary"], "files": paths})
    elif cfg.fmt == "csv":
        w = _csv_writer()
        w.writerow(("key", "value"))
        s = report["summary"]["sup_distance"]
        for key in ("mean", "median", "q90", "max"):
            w.writerow(("sup_distance_" + key, repr(s[key])))
        for key, val in paths.items():
            w.writerow((key, val))
    else:
        s = report["summary"]["sup_distance"]
        print("sup distance: mean %.5f  median %.5f  q90 %.5f  max %.5f"
              % (s["mean"], s["median"], s["q90"], s["max"]))
        print("R means:", "  ".join(
            "R%d %.4f" % (k, report["summary"]["R%d_mean" % k])
            for k in range(2, 7)))
        for key, val in paths.items():
            print("wrote %s" % val)
    return 0


# ---------------------------------------------------------------------------
# wiring

def build_parser():
    top = argparse.ArgumentParser(
        prog="jackerov",
        description="Jack characters, Kerov polynomials, and the "
                    "Jack-Plancherel measure over Q(t), t = sqrt(alpha).",
        epilog="Set JACKEROV_CACHE to a directory to cache Jack expansions "
               "across runs.")
    top.add_argument("--format", choices=("text", "json", "csv"),
                     default="text", help="output format (default text)")
    top.add_argument("--threads", type=int, default=None,
                     help="bound internal parallelism (default: cpu count)")
    top.add_argument("--seed", type=int, default=0, help="sampler seed")
    top.add_argument("--grid-step", type=float, default=1e-3,
                     help="grid step for sup-distance evaluation")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jack", help="expand a Jack polynomial")
    p.add_argument("lam", type=_partition_arg, metavar="LAMBDA")
    p.add_argument("--basis", choices=("p", "m"), default="p")
    p.add_argument("--cap", type=int, default=JACK_CAP)
    p.set_defaults(func=cmd_jack)

    p = sub.add_parser("theta", help="power-sum coefficient of a Jack polynomial")
    p.add_argument("rho", type=_partition_arg, metavar="RHO")
    p.add_argument("lam", type=_partition_arg, metavar="LAMBDA")
    p.add_argument("--cap", type=int, default=JACK_CAP)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("ch", help="evaluate a Jack character")
    p.add_argument("mu", type=_partition_arg, metavar="MU")
    p.add_argument("lam", type=_partition_arg, metavar="LAMBDA")
    p.add_argument("--cap", type=int, default=JACK_CAP)
    p.set_defaults(func=cmd_ch)

    p = sub.add_parser("moments",
                       help="moments and free cumulants of the anisotropic diagram")
    p.add_argument("lam", type=_partition_arg, metavar="LAMBDA")
    p.add_argument("order", type=int, metavar="K")
    p.add_argument("--alpha", default="t")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("kerov", help="Kerov polynomial with degree audit")
    p.add_argument("mu", type=_partition_arg, metavar="MU")
    p.add_argument("--basis", choices=("R", "M"), default="R")
    p.add_argument("--cap", type=int, default=kerovmod.DEFAULT_CAP)
    p.set_defaults(func=cmd_kerov)

    p = sub.add_parser("verify", help="run the identity-check battery")
    p.add_argument("--cap", type=int, default=6,
                   help="kerov battery covers |mu|+len(mu) <= cap")
    p.add_argument("--growth-max", type=int, default=6)
    p.add_argument("--rho-size", type=int, default=4)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plancherel", help="Jack-Plancherel probabilities, "
                       "expectations, and sampling")
    p.add_argument("n", type=int)
    p.add_argument("--alpha", default="t")
    p.add_argument("--mode", choices=("exact", "sample"), default="exact")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--expect", default=None,
                   help="Ch:MU, theta:RHO, or M:RHO (exact mode, alpha t)")
    p.add_argument("--cap", type=int, default=None,
                   help="enumeration cap override")
    p.set_defaults(func=cmd_plancherel)

    p = sub.add_parser("limitshape",
                       help="limit-shape statistics, files, and figures")
    p.add_argument("n", type=int)
    p.add_argument("--alpha", default="1")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--out", default="limitshape",
                   help="output path prefix (default ./limitshape)")
    p.add_argument("--no-figures", action="store_true",
                   help="skip the rendered figures")
    p.set_defaults(func=cmd_limitshape)

    return top


def _config_from(args):
    cap = getattr(args, "cap", None)
    kw = {"grid_step": args.grid_step, "fmt": args.format, "seed": args.seed,
          "threads": args.threads}
    if args.command in ("jack", "theta", "ch") and cap:
        kw["jack_cap"] = cap
    elif args.command in ("kerov", "verify") and cap:
        kw["kerov_cap"] = cap
    elif args.command == "plancherel":
        kw["enum_cap"] = cap
    return Config(**kw)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if not exc.code else 1
    try:
        cfg = _config_from(args)
        return args.func(args, cfg)
    except DegreeCapError as exc:
        print("cap exceeded: %s" % exc, file=sys.stderr)
        return 2
    except (TheoremViolation, PolynomialityViolation) as exc:
        print("theorem violation: %s" % exc, file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
