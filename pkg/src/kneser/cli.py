"""Command-line interface.

Exit status: 0 on success, 1 when a verdict or assertion fails, 2 on usage,
parse or builder errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import bounds as B
from . import verify as V
from .combinat import binom, parse_fraction, size_parameter, union_of_stars_size
from .constructions import ConstructionSpec, explicit_family, order_segment, random_family, union_of_stars
from .family import Family, FamilyFormatError, degree_profile
from .report import BoundReport
from .search import OBJECTIVES, conjecture_reports, exact_minimize, greedy_matching, local_search, max_matching_size
from .spectral import check_gammamax, check_thirdorder, linear_profile
from .surd import format_decimal

log = logging.getLogger("kneser")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FIGURE_EXACT_MAX_VERTICES = 21
FIGURE_COLUMNS = [
    "m", "lambda", "s",
    "lower_bound", "lower_hypothesis_ok",
    "upper_bound", "upper_hypothesis_ok",
    "stars_point", "lex_avg_degree", "exact_min",
]


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return parse_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"expected an exact rational like 3/2: {exc}") from None


def _dump(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _write(text: str, path: Optional[str]) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8", newline="\n")


def _read_family(path: str) -> Family:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return Family.from_text(text)


def _size_dict(n: int, k: int, m: int) -> dict:
    if k < 1:
        return {"m": m}
    sp = size_parameter(n, k, m)
    lo, hi = sp.crude_bounds()
    return {"m": m, "s": sp.s, "lambda": str(sp.lam), "crude_bounds": [str(lo), str(hi)], "crude_ok": sp.crude_ok()}


# --- construct ---------------------------------------------------------------------

def cmd_construct(args: argparse.Namespace) -> int:
    n, k = args.n, args.k
    extra = {}
    if args.kind == "stars":
        labels = args.stars if args.stars else list(range(1, _need(args.s, "--s") + 1))
        F = union_of_stars(n, k, labels)
        extra["stars"] = labels
    elif args.kind in ("explicit", "random"):
        spec = ConstructionSpec(n, k, _need(args.s, "--s"), _need(args.lam, "--lambda"), args.seed)
        if args.kind == "explicit":
            F, t = explicit_family(spec)
            extra["t"] = t
        else:
            F = random_family(spec)
            extra["seed"] = args.seed
    else:
        F = order_segment(args.kind, n, k, _need(args.m, "--m"))
    prof = degree_profile(F)
    summary = {"kind": args.kind, "n": n, "k": k, "size": len(F), "max_degree": prof.max_degree,
               "edge_count": prof.edge_count, "size_parameter": _size_dict(n, k, len(F)), **extra}
    _write(F.to_text(), args.output)
    sys.stderr.write(_dump(summary))
    return EXIT_OK


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"{flag} is required for this construction")
    return value


# --- analyze -----------------------------------------------------------------------

def analyze_family(F: Family, norms: Optional[bool] = None) -> tuple[dict, bool]:
    prof = degree_profile(F)
    out = {
        "n": F.n,
        "k": F.k,
        "size": len(F),
        "size_parameter": _size_dict(F.n, F.k, len(F)) if len(F) else {"m": 0},
        "max_degree": prof.max_degree,
        "edge_count": prof.edge_count,
        "average_degree": str(Fraction(2 * prof.edge_count, len(F))) if len(F) else None,
    }
    ok = True
    if len(F) and F.k >= 1 and F.n >= 2 * F.k + 1:
        sp = linear_profile(F, with_norms=norms)
        out["spectral"] = sp.to_dict()
        g = check_gammamax(sp)
        t = check_thirdorder(F, sp)
        out["checks"] = [g.to_dict(), t.to_dict()]
        ok = g.holds and t.holds
    return out, ok


def cmd_analyze(args: argparse.Namespace) -> int:
    F = _read_family(args.family)
    report, ok = analyze_family(F, norms=args.norms)
    _write(_dump(report), args.output)
    if args.emit_family:
        _write(F.to_text(), args.emit_family)
    return EXIT_OK if ok else EXIT_FAIL


# --- bounds ------------------------------------------------------------------------

def cmd_bounds(args: argparse.Namespace) -> int:
    n, k, s, lam = args.n, args.k, args.s, args.lam
    which = args.which
    result: dict
    report: Optional[BoundReport] = None
    if which == "main":
        report = B.main_lower_bound(n, k, _need(s, "--s"), _need(lam, "--lambda"))
    elif which == "upper":
        report = B.construction_upper_bound(n, k, _need(s, "--s"), _need(lam, "--lambda"), force=args.force)
    elif which in ("extlem3", "manylem3"):
        report = B.threshold_evaluators(which, n, k, _need(s, "--s"), _need(lam, "--lambda"), args.c0)
    elif which == "binomratio":
        report = B.binomratio(n, k, _need(args.m, "--m"))
    elif which == "random-degree":
        value = B.random_expected_degree(n, k, _need(s, "--s"), _need(lam, "--lambda"))
        result = {"name": "random_expected_degree", "value": format_decimal(value, "down"), "exact": str(value)}
    elif which == "stars":
        value = B.stars_max_degree(n, k, _need(s, "--s"))
        result = {"name": "stars_max_degree", "value": str(value), "exact": str(value)}
    if report is not None:
        if args.measured is not None:
            report = report.compare(args.measured, force=args.force)
        elif args.force and not report.hypothesis_ok:
            report = BoundReport(**{**report.__dict__, "forced": True})
        result = report.to_dict()
    _write(_dump(result), args.output)
    return EXIT_FAIL if result.get("verdict") == "violated" else EXIT_OK


# --- search / matching --------------------------------------------------------------

def cmd_search(args: argparse.Namespace) -> int:
    n, k, m = args.n, args.k, args.m
    if args.conjectures:
        _write(_dump(conjecture_reports(n, k, m)), args.output)
        return EXIT_OK
    if args.mode == "local":
        res = local_search(n, k, m, args.seed, args.iterations, args.objective)
    else:
        res = exact_minimize(n, k, m, args.objective, args.mode)
    _write(_dump(res.to_dict()), args.output)
    if args.witness:
        _write(res.witness.to_text(), args.witness)
    return EXIT_OK


def cmd_matching(args: argparse.Namespace) -> int:
    F = _read_family(args.family)
    res = greedy_matching(F)
    out = res.to_dict()
    if F.k >= 1:
        s = size_parameter(F.n, F.k, len(F)).s
        ok = F.n >= 10000 * max(s, 1) ** 5 * F.k
        out["hypothesis"] = "n >= 10000*s^5*k"
        out["hypothesis_ok"] = ok
        if not ok:
            out["note"] = "hypothesis fails; the procedure ran unconditionally"
    if args.exact:
        out["maximum"] = max_matching_size(F)
    _write(_dump(out), args.output)
    return EXIT_OK


# --- figure 1 -----------------------------------------------------------------------

def figure1_rows(n: int, k: int, s_max: int, steps: int, exact_max: int = FIGURE_EXACT_MAX_VERTICES) -> list[dict]:
    """Sample sizes m >= 1 across the segments s = 0..s_max - 1 (lambda in
    [s, s+1], ``steps`` points each) and evaluate every curve there.

    Lower bounds are rounded down, upper bounds up; lambda and the lex
    average degree are rounded down.
    """
    if k < 1 or n < 2 * k + 1:
        raise ValueError("figure data needs k >= 1 and n >= 2k + 1")
    if s_max < 1 or steps < 1:
        raise ValueError("s_max and steps must be positive")
    total = binom(n, k)
    exact_ok = total <= exact_max
    rows = []
    seen = {0}
    last = min(s_max, n - k + 1) - 1
    for s in range(last + 1):
        base = union_of_stars_size(n, k, s)
        width = binom(n - s - 1, k - 1)
        # a segment's right end is the next segment's lambda = s point
        top = steps if s == last else steps - 1
        for j in range(top + 1):
            m = base + (j * width) // steps
            if m in seen:
                continue
            seen.add(m)
            lam = s + Fraction(m - base, width)
            rows.append(_figure_row(n, k, s, lam, m, exact_ok))
    return rows


def _figure_row(n: int, k: int, s: int, lam: Fraction, m: int, exact_ok: bool) -> dict:
    lo = B.main_lower_bound(n, k, s, lam)
    hi = B.construction_upper_bound(n, k, s, lam, force=True)
    stars = ""
    if lam.denominator == 1:
        stars = str(B.stars_max_degree(n, k, int(lam))) if lam >= 1 else "0"
    lex = ""
    if m:
        e = degree_profile(order_segment("lex", n, k, m)).edge_count
        lex = format_decimal(Fraction(2 * e, m), "down")
    exact = ""
    if exact_ok and m:
        exact = str(exact_minimize(n, k, m, "max_degree").optimum)
    return {
        "m": m,
        "lambda": format_decimal(lam, "down"),
        "s": s,
        "lower_bound": lo.display(),
        "lower_hypothesis_ok": str(lo.hypothesis_ok).lower(),
        "upper_bound": hi.display(),
        "upper_hypothesis_ok": str(hi.hypothesis_ok).lower(),
        "stars_point": stars,
        "lex_avg_degree": lex,
        "exact_min": exact,
    }


def figure1_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIGURE_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def cmd_figure1(args: argparse.Namespace) -> int:
    rows = figure1_rows(args.n, args.k, args.s_max, args.steps, args.exact_max_vertices)
    _write(figure1_csv(rows), args.output)
    return EXIT_OK


# --- verify -------------------------------------------------------------------------

def cmd_verify(args: argparse.Namespace) -> int:
    results = V.run(args.suite, args.seed)
    ok = all(r.ok for r in results)
    _write(_dump({"ok": ok, "suites": [r.to_dict() for r in results]}), args.output)
    return EXIT_OK if ok else EXIT_FAIL


# --- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kneser", description="Exact tools for induced subgraphs of Kneser graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, s: bool = True, lam: bool = True) -> None:
        sp.add_argument("--n", type=int, required=True)
        sp.add_argument("--k", type=int, required=True)
        if s:
            sp.add_argument("--s", type=int)
        if lam:
            sp.add_argument("--lambda", dest="lam", type=_fraction, help="exact rational, e.g. 3/2")
        sp.add_argument("-o", "--output", help="output file (default stdout)")

    c = sub.add_parser("construct", help="build a family and write it in the text format")
    c.add_argument("kind", choices=["stars", "explicit", "random", "lex", "colex"])
    common(c)
    c.add_argument("--m", type=int, help="segment size for lex/colex")
    c.add_argument("--seed", type=int, help="seed for the random construction")
    c.add_argument("--stars", type=int, nargs="+", help="explicit star centres (default 1..s)")
    c.set_defaults(func=cmd_construct)

    a = sub.add_parser("analyze", help="degree, spectral and theorem report for a family file")
    a.add_argument("family", help="family file, or - for stdin")
    a.add_argument("-o", "--output")
    a.add_argument("--emit-family", help="rewrite the parsed family in canonical text form")
    g = a.add_mutually_exclusive_group()
    g.add_argument("--norms", dest="norms", action="store_true", default=None, help="always compute eigencomponent norms")
    g.add_argument("--no-norms", dest="norms", action="store_false", help="skip eigencomponent norms")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bounds", help="evaluate a named bound")
    b.add_argument("which", choices=["main", "upper", "random-degree", "stars", "extlem3", "manylem3", "binomratio"])
    common(b)
    b.add_argument("--m", type=int)
    b.add_argument("--c0", type=_fraction)
    b.add_argument("--measured", type=_fraction, help="compare against this measured value")
    b.add_argument("--force", action="store_true", help="evaluate outside the hypothesis range")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="exact or local minimisation")
    common(s, s=False, lam=False)
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--objective", choices=OBJECTIVES, default="max_degree")
    s.add_argument("--mode", choices=["auto", "bnb", "exhaustive", "local"], default="auto")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--iterations", type=int, default=1000)
    s.add_argument("--witness", help="also write the witness family here")
    s.add_argument("--conjectures", action="store_true", help="emit the conjecture report instead")
    s.set_defaults(func=cmd_search)

    mt = sub.add_parser("matching", help="greedy matching of a family file")
    mt.add_argument("family")
    mt.add_argument("-o", "--output")
    mt.add_argument("--exact", action="store_true", help="also report the brute-force maximum")
    mt.set_defaults(func=cmd_matching)

    f = sub.add_parser("figure1", help="CSV of bound curves against family size")
    common(f, s=False, lam=False)
    f.add_argument("--s-max", type=int, default=2)
    f.add_argument("--steps", type=int, default=8)
    f.add_argument("--exact-max-vertices", type=int, default=FIGURE_EXACT_MAX_VERTICES,
                   help="fill exact_min only when C(n,k) is at most this")
    f.set_defaults(func=cmd_figure1)

    v = sub.add_parser("verify", help="run self-check suites")
    v.add_argument("suite", choices=[*V.SUITES, "all"])
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except FamilyFormatError as exc:
        sys.stderr.write(f"kneser: parse error: {exc}\n")
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, RuntimeError, OSError) as exc:
        sys.stderr.write(f"kneser: error: {exc}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
