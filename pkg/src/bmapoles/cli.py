"""Command-line interface.

Exit codes: 0 all verdicts hold, 1 a violation (or failed certificate) was
found, 2 usage or model error.  Output depends only on the arguments.
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

from .bma import classify_values, is_infinite, pole
from .bounds import BOUNDS, HypothesisMismatch, make_bound, verify
from .formula import FormulaSyntaxError
from .jets import BranchCut, DegenerateJet
from .models import CATALOG, CLASS_VARIANTS, ClassSpec, ModelError, model_from_spec
from .orders import lower_order, upper_order
from .polygon import (AmbiguousRoot, InvalidPolygonModel, NonIntegerWinding, count_preimages_roots,
                      count_preimages_winding, cross_rational, pole_rational, polygon_from_json)
from .sampling import disk_samples
from .schwarzian import (HypothesisViolation, SchwarzianProfile, convexity_certificate,
                         nehari_region_check, pole_radius_check)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
CLASS_PARAMS = ("alpha", "A", "B", "lam", "t")


class UsageError(Exception):
    pass


# model resolution ----------------------------------------------------------------
def _kv(text):
    out = {}
    for item in filter(None, text.split(",")):
        k, sep, v = item.partition("=")
        if not sep:
            raise UsageError(f"expected key=value, got {item!r}")
        out[k.strip()] = float(v)
    return out


def _class_flags(args):
    return {k: getattr(args, k) for k in CLASS_PARAMS if getattr(args, k, None) is not None}


def _shorthand(text, args):
    """``power``, ``power:a=0.5``, ``class:janowski`` or ``class:janowski:A=1,B=-1``."""
    head, _, rest = text.partition(":")
    if head == "class":
        name, _, params = rest.partition(":")
        spec = {"kind": "class", "class": name, "seed": args.seed}
        spec.update(_class_flags(args))
        spec.update(_kv(params))
        return spec
    if head in CATALOG:
        return {"kind": "catalog", "name": head, "params": _kv(rest)}
    raise UsageError(f"unknown model {text!r}; catalog names: {', '.join(sorted(CATALOG))}")


def resolve_model(args):
    if (args.model is None) == (args.formula is None):
        raise UsageError("give exactly one of --model or --formula")
    if args.formula is not None:
        return model_from_spec({"kind": "expr", "formula": args.formula})
    text = args.model.strip()
    if text.startswith("{"):
        spec = json.loads(text)
    elif os.path.isfile(text):
        with open(text, encoding="utf-8") as fh:
            spec = json.load(fh)
    else:
        spec = _shorthand(text, args)
    return model_from_spec(spec)


# output ------------------------------------------------------------------------
def _num(x):
    if isinstance(x, complex):
        return [_num(x.real), _num(x.imag)]
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return x


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, np.integer)):
        obj = obj.item()
    if isinstance(obj, np.complexfloating):
        obj = complex(obj)
    return _num(obj)


def _emit(args, payload):
    if isinstance(payload, str):
        text = payload
    else:
        text = json.dumps(_clean(payload), sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# commands ------------------------------------------------------------------------
RADIAL_NAME = {1: "outward", 0: "on-circle", -1: "inward"}


def cmd_pole_locus(args):
    model = resolve_model(args)
    n_r, n_t = args.radii, args.angles
    r = np.linspace(0.0, args.radius_cap, n_r)[1:]
    theta = 2 * np.pi * np.arange(n_t) / n_t
    z = np.concatenate([[0j], (r[:, None] * np.exp(1j * theta)[None, :]).ravel()])
    q = np.asarray(model.q(z), dtype=complex)
    p = np.asarray(pole(model, z), dtype=complex)
    sign, _, _, re = classify_values(z, q)
    inf = is_infinite(p)
    rows = []
    for zi, pi, infi, rei, si in zip(z.tolist(), p.tolist(), inf, re.tolist(), sign):
        if infi:
            rows.append([repr(zi.real), repr(zi.imag), "inf", "inf", "inf", repr(rei),
                         RADIAL_NAME[int(si)]])
        else:
            rows.append([repr(zi.real), repr(zi.imag), repr(pi.real), repr(pi.imag),
                         repr(abs(pi)), repr(rei), RADIAL_NAME[int(si)]])
    header = ["z_re", "z_im", "p_re", "p_im", "abs_p", "re_1_plus_zq", "class"]
    if args.format == "json":
        _emit(args, {"model": model.label, "columns": header, "rows": rows})
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        _emit(args, buf.getvalue())
    return EXIT_OK


def cmd_classify(args):
    model = resolve_model(args)
    z = disk_samples(args.samples, args.seed, args.radius_cap)
    a = np.abs(np.asarray(pole(model, z), dtype=complex))
    kmin, kmax = int(np.argmin(a)), int(np.argmax(a))
    lo, hi = float(a[kmin]), float(a[kmax])
    tol = 1e-9
    if lo >= 1 - tol:
        verdict = "convex-consistent"
    elif hi <= 1 + tol:
        verdict = "concave-consistent"
    else:
        verdict = "neither"
    _emit(args, {"model": model.label, "samples": int(z.size), "min_abs_p": lo,
                 "min_witness": complex(z[kmin]), "max_abs_p": hi, "max_witness": complex(z[kmax]),
                 "verdict": verdict, "note": "sampling evidence, not proof"})
    return EXIT_OK


def cmd_orders(args):
    model = resolve_model(args)
    cap = args.radius_cap if args.radius_cap_set else 1 - 1e-4
    up, lo = upper_order(model, cap), lower_order(model, cap)
    _emit(args, {"model": model.label, "upper": up.value, "upper_witness": up.witness,
                 "lower": lo.value, "lower_witness": lo.witness, "radius_cap": cap})
    return EXIT_OK


def _bound_params(args, model):
    name = args.bound
    cap = 1 - 1e-4
    if name in ("lower_order", "inclusion_disk"):
        mu = args.mu
        if mu is None:
            mu = model.orders[0] if model.orders else lower_order(model, cap).value
        return {"mu": mu}
    if name in ("exclusion_disk", "pseudo_hyperbolic"):
        al = args.alpha
        if al is None:
            al = model.orders[1] if model.orders else upper_order(model, cap).value
        return {"alpha": al}
    if name in ("convex_alpha", "modulus_alpha", "robertson"):
        al = args.alpha
        if al is None and model.meta is not None:
            al = model.meta.convexity_order() if name != "robertson" else model.meta.alpha
        if al is None:
            raise UsageError(f"--alpha is required for {name}")
        return {"alpha": al}
    if name == "janowski":
        A, B = args.A, args.B
        if (A is None or B is None) and model.meta is not None and model.meta.variant == "janowski":
            A, B = model.meta.A, model.meta.B
        if A is None or B is None:
            raise UsageError("--A and --B are required for janowski")
        return {"A": A, "B": B}
    return {}


def cmd_verify_bound(args):
    model = resolve_model(args)
    if args.assume_class:
        model = model.replace(meta=ClassSpec(args.assume_class, **_class_flags(args)))
    bound = make_bound(args.bound, **_bound_params(args, model))
    rep = verify(model, bound, count=args.samples, seed=args.seed, radius_cap=args.radius_cap)
    d = rep.to_dict()
    d["params"] = dict(bound.params)
    _emit(args, d)
    return EXIT_OK if rep.holds else EXIT_VIOLATION


def cmd_count_poles(args):
    if args.polygon is not None:
        text = args.polygon
        if os.path.isfile(text):
            with open(text, encoding="utf-8") as fh:
                text = fh.read()
        pm = polygon_from_json(text)
        P, label = pole_rational(pm), f"polygon[{pm.variant},k={pm.k},m={pm.m}]"
    elif args.target == "cross":
        P, label = cross_rational(), "cross"
    else:
        raise UsageError("give 'cross' or --polygon JSON")
    c = complex(args.c.replace("i", "j")) if args.c not in ("inf", "infinity") else complex(math.inf, 0)
    out = {"model": label, "c": c}
    try:
        w = count_preimages_winding(P, c)
    except NonIntegerWinding as e:
        w, out["winding_error"] = None, str(e)
    try:
        r = count_preimages_roots(P, c)
    except AmbiguousRoot as e:
        r, out["roots_error"] = None, str(e)
    agree = w is not None and w == r
    out.update({"winding_count": w, "roots_count": r, "method_agreement": agree,
                "count": w if agree else None})
    _emit(args, out)
    return EXIT_OK if agree else EXIT_VIOLATION


def _profile(text):
    kind, _, val = text.partition(":")
    if kind == "constant":
        return SchwarzianProfile("constant", a=float(val)) if val else SchwarzianProfile("constant")
    if kind in ("power", "power_simple"):
        return SchwarzianProfile(kind, n=int(val))
    if kind == "nehari":
        return SchwarzianProfile("nehari", t=float(val or 1))
    raise UsageError(f"unknown profile {text!r}")


def cmd_schwarzian(args):
    model = resolve_model(args)
    cap = args.radius_cap if args.radius_cap_set else 1 - 1e-4
    if args.check == "certificate":
        if not args.profile:
            raise UsageError("--profile is required for the certificate check")
        cert = convexity_certificate(model, _profile(args.profile), args.samples, args.seed, cap)
        d = cert.to_dict()
        d["model"] = model.label
        _emit(args, d)
        return EXIT_OK if cert.certified else EXIT_VIOLATION
    try:
        if args.check == "region":
            rep = nehari_region_check(model, args.t if args.t is not None else 1.0, args.samples,
                                      args.seed, cap, region=args.region)
        else:
            rep = pole_radius_check(model, args.k, args.samples, args.seed, cap)
    except HypothesisViolation as e:
        _emit(args, {"model": model.label, "verdict": "hypothesis_violated", "reason": str(e),
                     "witness": e.witness})
        return EXIT_USAGE
    d = rep.to_dict()
    d["params"] = rep.params
    _emit(args, d)
    return EXIT_OK if rep.holds else EXIT_VIOLATION


# parser ------------------------------------------------------------------------
def _radius_cap(text):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("radius cap must lie in (0, 1)")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("model source (exactly one)")
    src.add_argument("--model", help="JSON spec, path to a JSON file, catalog name[:k=v,...] "
                                     "or class:NAME[:k=v,...]")
    src.add_argument("--formula", help="formula in z, e.g. 'z/(1-z)^2'")
    smp = common.add_argument_group("sampling")
    smp.add_argument("--samples", type=int, default=10_000)
    smp.add_argument("--seed", type=int, default=42)
    smp.add_argument("--radius-cap", type=_radius_cap, default=None)
    out = common.add_argument_group("output")
    out.add_argument("--out", help="write to this path instead of stdout")
    out.add_argument("--format", choices=("csv", "json"), default=None)
    par = common.add_argument_group("class and bound parameters")
    for name in CLASS_PARAMS:
        par.add_argument(f"--{name}", type=float)
    par.add_argument("--mu", type=float)

    p = argparse.ArgumentParser(prog="bmapoles",
                                description="Poles of best Möbius approximations on the unit disk.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pole-locus", parents=[common], help="CSV of z, P_f(z) on a polar grid")
    s.add_argument("--radii", type=int, default=17)
    s.add_argument("--angles", type=int, default=32)
    s.set_defaults(func=cmd_pole_locus, fmt="csv")

    s = sub.add_parser("classify", parents=[common], help="convex/concave consistency of sampled poles")
    s.set_defaults(func=cmd_classify, fmt="json")

    s = sub.add_parser("orders", parents=[common], help="upper and lower order estimates")
    s.set_defaults(func=cmd_orders, fmt="json")

    s = sub.add_parser("verify-bound", parents=[common], help="check one pole bound on samples")
    s.add_argument("--bound", required=True, choices=sorted(BOUNDS))
    s.add_argument("--assume-class", choices=sorted(CLASS_VARIANTS),
                   help="treat the model as a member of this class")
    s.set_defaults(func=cmd_verify_bound, fmt="json")

    s = sub.add_parser("count-poles", parents=[common], help="count solutions of P_f(z) = c in the disk")
    s.add_argument("target", nargs="?", choices=("cross",))
    s.add_argument("--polygon", help="polygon model JSON or path")
    s.add_argument("--c", default="inf", help="target value, e.g. 2, 0.5+0.1i or inf")
    s.set_defaults(func=cmd_count_poles, fmt="json")

    s = sub.add_parser("schwarzian", parents=[common], help="Schwarzian convexity criteria")
    s.add_argument("--check", choices=("certificate", "region", "radius"), default="certificate")
    s.add_argument("--profile", help="constant[:a] | power:n | power_simple:m | nehari:t")
    s.add_argument("--region", choices=("outer", "inner"), default="outer")
    s.add_argument("--k", type=float, default=2.0)
    s.set_defaults(func=cmd_schwarzian, fmt="json")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.radius_cap_set = args.radius_cap is not None
    if args.radius_cap is None:
        args.radius_cap = 1 - 1e-6
    if args.format is None:
        args.format = args.fmt
    try:
        return args.func(args)
    except BrokenPipeError:
        sys.stderr.close()
        return EXIT_OK
    except (UsageError, ModelError, FormulaSyntaxError, HypothesisMismatch, InvalidPolygonModel,
            BranchCut, DegenerateJet, json.JSONDecodeError, KeyError, ValueError) as e:
        print(f"bmapoles: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
