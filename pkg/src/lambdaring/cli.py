"""Command-line front end.

Exit codes: 0 success or equality, 1 verified inequality, 2 usage or parse
error, 3 internal inconsistency.
"""

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .context import CONTEXT, FAMILIES
from .errors import InconsistencyError, LambdaRingError, ParseError
from .expr import render
from .groups import PRESET_KINDS, bg, bun, group_motive, preset
from .higgs import adhm_motive, bb_motive, verify_mozgovoy, vb_moduli, vb_moduli_general
from .motives import Curve, lefschetz, proj
from .parser import parse_expr
from .poly import NamedVar, RatFn
from .simplify import to_adams, to_lambda

EXIT_OK, EXIT_UNEQUAL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_range(text):
    """``"3"``, ``"2..4"`` or ``"1,3,5"`` to a sorted list of integers."""
    out = set()
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if lo > hi:
                    raise UsageError(f"empty range {part!r}")
                out.update(range(lo, hi + 1))
            else:
                out.add(int(part))
    except ValueError:
        raise UsageError(f"bad integer range {text!r}") from None
    return sorted(out)


def _is_range(text):
    return ".." in text or "," in text


def _curves(specs):
    namespace, curves = {}, {}
    for spec in specs or ():
        name, _, genus = spec.partition(":")
        if not name or not genus.isdigit():
            raise UsageError(f"--curve expects NAME:GENUS, got {spec!r}")
        try:
            c = Curve(name, int(genus))
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        curves[name] = c
        namespace[f"h1_{name}"] = c.h1
    return namespace, curves


def _write(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text if text.endswith("\n") else text + "\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_simplify(args, out):
    namespace, _ = _curves(args.curve)
    e = parse_expr(args.expr, namespace)
    start = time.perf_counter()
    if args.form == "adams":
        rf = to_adams(e)
    else:
        rf = to_lambda(e, use_shortcut=not args.no_shortcut)
    rf = rf.cancel()
    elapsed = (time.perf_counter() - start) * 1000
    text = rf.to_text()
    if args.format == "json":
        out.write(json.dumps({
            "schema": 1, "form": args.form, "input": render(e), "result": text,
            "n_terms": len(rf.num.terms), "polynomial": rf.is_poly(), "runtime_ms": round(elapsed, 3),
        }) + "\n")
    else:
        out.write(text + "\n")
    if args.emit:
        _write(args.emit, text)
    return EXIT_OK


def _need(value, flag):
    if value is None:
        raise UsageError(f"this motive needs {flag}")
    return value


def motive_value(args):
    """The requested motive as a canonical ``RatFn`` in lambda form."""
    name = args.name
    if args.group:
        if args.group not in PRESET_KINDS:
            raise UsageError(f"unknown group {args.group!r}; choose from {', '.join(PRESET_KINDS)}")
        try:
            G = preset(args.group, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if not hasattr(G, "degrees"):
            if args.bg or args.bun:
                raise UsageError("GL is handled as an explicit class; --bg/--bun need a semisimple group")
            return to_lambda(G)
        if args.bg:
            return bg(G)
        if args.bun:
            return bun(G, Curve("X", _need(args.genus, "--genus")))
        return RatFn(group_motive(G))
    if name is None:
        raise UsageError("give a motive name or --group")
    if name == "lefschetz":
        return to_lambda(lefschetz())
    if name == "point":
        return RatFn.const(1)
    if name == "proj":
        n = _need(args.n, "--n")
        if n < 0:
            raise UsageError("--n must be non-negative")
        return to_lambda(proj(n))
    g = _need(args.genus, "--genus")
    if g < 1:
        raise UsageError("--genus must be at least 1")
    c = Curve("X", g)
    if name == "curve":
        return to_lambda(c.curve_class())
    if name == "jacobian":
        return to_lambda(c.jacobian())
    if name == "zeta":
        return c.Z_eval({NamedVar("t"): 1})
    if name == "P":
        return RatFn(c.P_eval({NamedVar("t"): 1}))
    if g < 2:
        raise UsageError("moduli motives need --genus >= 2")
    if name in ("vb", "vb-general"):
        r, d = _need(args.r, "--r"), args.d
        try:
            e = vb_moduli_general(c, r, d) if name == "vb-general" else vb_moduli(c, r, d)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return to_lambda(e)
    if name in ("higgs-bb", "higgs-adhm"):
        p, r = _need(args.p, "--p"), _need(args.r, "--r")
        if name == "higgs-bb":
            return RatFn(bb_motive(c, p, r))
        return RatFn(adhm_motive(c, p, r))
    raise UsageError(f"unknown motive {name!r}")


def cmd_motive(args, out):
    rf = motive_value(args).cancel()
    text = rf.to_text()
    out.write(text + "\n")
    if args.emit:
        _write(args.emit, text)
    return EXIT_OK


def _verify_case(case):
    g, p, r, perturb = case
    rep = verify_mozgovoy(g, p, r, perturb=perturb)
    dump = None
    if rep.adhm is not None:
        dump = f"# genus={g} p={p} rank={r}\nADHM: {rep.adhm.to_text()}\nBB: {rep.bb.to_text()}\n"
    return rep.to_json(), rep.error_kind, dump


def cmd_verify(args, out):
    gs, ps, rs = parse_range(args.g), parse_range(args.p), parse_range(args.r)
    cases = [(g, p, r, args.perturb_bb) for g in gs for p in ps for r in rs]
    if args.workers > 1 and len(cases) > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_verify_case, cases))
    else:
        results = [_verify_case(c) for c in cases]
    reports = [r[0] for r in results]
    many = len(cases) > 1 or any(_is_range(x) for x in (args.g, args.p, args.r))
    out.write(json.dumps(reports if many else reports[0], indent=None) + "\n")
    if args.emit:
        _write(args.emit, "".join(r[2] or "" for r in results))
    kinds = {r[1] for r in results}
    if "inconsistency" in kinds:
        return EXIT_INTERNAL
    if "usage" in kinds:
        return EXIT_USAGE
    return EXIT_OK if all(rep["equal"] for rep in reports) else EXIT_UNEQUAL


def cmd_ctx(args, out):
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    if args.n == 0 and args.family != "op":
        raise UsageError(f"family {args.family} starts at n = 1")
    out.write(CONTEXT.family(args.family, args.n).to_text() + "\n")
    return EXIT_OK


BENCH_SETS = {
    "quick": [(2, 1, 1), (2, 1, 2), (2, 1, 3)],
    "desk": [(g, p, 2) for g in (2, 3, 4) for p in (1, 2, 3)] + [(g, p, 3) for g in (2, 3) for p in (1, 2)],
}


def cmd_bench(args, out):
    rows = []
    for g, p, r in BENCH_SETS[args.cases]:
        times = []
        rep = None
        for _ in range(args.repeat):
            rep = verify_mozgovoy(g, p, r)
            times.append(rep.runtime_ms)
        rows.append({"genus": g, "p": p, "rank": r, "equal": rep.equal, "n_terms": rep.n_terms,
                     "best_ms": round(min(times), 3), "runs": args.repeat})
        out.write(json.dumps(rows[-1]) + "\n")
    return EXIT_OK if all(r["equal"] for r in rows) else EXIT_UNEQUAL


# ---------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="lambdaring", description="Lambda-ring simplification and motive verification.")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simplify", help="canonicalise an expression")
    s.add_argument("expr")
    s.add_argument("--form", choices=("adams", "lambda"), default="lambda")
    s.add_argument("--format", choices=("text", "json"), default="text")
    s.add_argument("--curve", action="append", metavar="NAME:GENUS", help="declare a curve; exposes h1_NAME")
    s.add_argument("--no-shortcut", action="store_true", help="always go through the Adams form")
    s.add_argument("--emit", metavar="FILE")
    s.set_defaults(fn=cmd_simplify)

    m = sub.add_parser("motive", help="print a motive in lambda form")
    m.add_argument("name", nargs="?", choices=(
        "point", "lefschetz", "proj", "curve", "jacobian", "P", "zeta", "vb", "vb-general", "higgs-bb", "higgs-adhm"))
    m.add_argument("--group", metavar="KIND")
    m.add_argument("--n", type=int)
    m.add_argument("--genus", type=int)
    m.add_argument("--p", type=int)
    m.add_argument("--r", type=int)
    m.add_argument("--d", type=int, default=1)
    mg = m.add_mutually_exclusive_group()
    mg.add_argument("--bg", action="store_true")
    mg.add_argument("--bun", action="store_true")
    m.add_argument("--emit", metavar="FILE")
    m.set_defaults(fn=cmd_motive)

    v = sub.add_parser("verify-mozgovoy", help="compare the ADHM and Bialynicki-Birula classes")
    v.add_argument("--g", required=True, help="genus, range a..b or list")
    v.add_argument("--p", required=True)
    v.add_argument("--r", required=True)
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--perturb-bb", action="store_true", help="negative control: add 1 to the BB class")
    v.add_argument("--emit", metavar="FILE", help="write both polynomials")
    v.set_defaults(fn=cmd_verify)

    c = sub.add_parser("ctx", help="conversion tables")
    csub = c.add_subparsers(dest="ctx_command", required=True)
    d = csub.add_parser("dump")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--family", choices=sorted(FAMILIES), required=True)
    d.set_defaults(fn=cmd_ctx)

    b = sub.add_parser("bench", help="time verification cases")
    b.add_argument("--cases", choices=sorted(BENCH_SETS), default="quick")
    b.add_argument("--repeat", type=int, default=1)
    b.set_defaults(fn=cmd_bench)
    return ap


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.fn(args, out)
    except (UsageError, ParseError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except InconsistencyError as exc:
        err.write(f"internal inconsistency: {exc}\n")
        return EXIT_INTERNAL
    except LambdaRingError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def entry():
    sys.exit(main())
