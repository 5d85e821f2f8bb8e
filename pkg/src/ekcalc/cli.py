"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad usage.
Reports are JSON (``"schema": 1``); charts are CSV (``t,f,dim``) or JSON.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import koszul, may_chart, steenrod
from .fpgraded import is_prime

SCHEMA = 1


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v < 0:
        raise argparse.ArgumentTypeError(f"{v} is negative")
    return v


def _degrees(text: str) -> list[int]:
    try:
        degs = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad degree list {text!r}")
    if any(d < 1 for d in degs):
        raise argparse.ArgumentTypeError("tensor generator degrees must be >= 1")
    return degs


def _module(text: str) -> tuple[str, int | None]:
    if text in ("trivial", "free", "zero"):
        return text, None
    if text.startswith("random:"):
        try:
            return "random", int(text.split(":", 1)[1])
        except ValueError:
            pass
    raise argparse.ArgumentTypeError(f"module must be trivial, free, zero or random:SEED, not {text!r}")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="ekcalc", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    mc = sub.add_parser("may-chart", help="E1-term generators and dimension table")
    mc.add_argument("--prime", type=_prime, required=True)
    mc.add_argument("--tmax", type=_nonneg, required=True)
    mc.add_argument("--fmax", type=_nonneg)
    mc.add_argument("--format", choices=("csv", "json"), default="csv")
    mc.add_argument("--out", help="output file (default: stdout)")

    st = sub.add_parser("steenrod", help="dual Steenrod quotient checks (odd p)")
    st.add_argument("--prime", type=_prime, required=True)
    st.add_argument("--n", type=_nonneg, required=True)
    st.add_argument("--conjugated", action="store_true")
    st.add_argument("--dmax", type=_nonneg, required=True)
    st.add_argument("--smax", type=int, default=3)
    st.add_argument("--check", choices=("iso", "free", "tor", "all"), default="all")
    st.add_argument("--out")

    ko = sub.add_parser("koszul", help="Koszul complex exactness over a tensor algebra")
    ko.add_argument("--prime", type=_prime, required=True)
    ko.add_argument("--vdegrees", type=_degrees, required=True)
    ko.add_argument("--module", type=_module, default=("trivial", None))
    ko.add_argument("--dmax", type=_nonneg, required=True)
    ko.add_argument("--out")

    cc = sub.add_parser("crosscheck", help="closed-form bidegrees vs operation words")
    cc.add_argument("--prime", type=_prime, required=True)
    cc.add_argument("--imax", type=_nonneg, required=True)
    cc.add_argument("--jmax", type=_nonneg, required=True)
    cc.add_argument("--out")
    return ap


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _report(command: str, params: dict, checks: list[dict]) -> dict:
    return {"schema": SCHEMA, "command": command, "params": params,
            "pass": all(c["pass"] for c in checks), "checks": checks}


def chart_payload(chart: may_chart.Chart) -> dict:
    spec = chart.spec
    return {
        "schema": SCHEMA,
        "command": "may-chart",
        "params": {"prime": spec.prime, "tmax": spec.t_max, "fmax": spec.filtration_bound},
        "generators": [{"family": g.family, "i": g.i, "j": g.j, "t": g.bidegree.t, "f": g.bidegree.w}
                       for g in chart.generators],
        "rows": [{"t": t, "f": f, "dim": d} for t, f, d in chart.rows()],
    }


def chart_csv(chart: may_chart.Chart) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["t", "f", "dim"])
    w.writerows(chart.rows())
    return buf.getvalue()


def cmd_may_chart(args) -> int:
    chart = may_chart.build_chart(may_chart.ChartSpec(args.prime, args.tmax, args.fmax))
    text = chart_csv(chart) if args.format == "csv" else _json(chart_payload(chart))
    _emit(text, args.out)
    return 0


def cmd_steenrod(args) -> int:
    if args.prime == 2:
        raise UsageError("steenrod: p=2 is out of scope (odd primes only)")
    if args.smax < 1:
        raise UsageError("steenrod: --smax must be >= 1")
    A = steenrod.DualSteenrod(args.prime, args.dmax)
    q = steenrod.QuotientSpec(args.n, args.conjugated)
    wanted = ("iso", "free", "tor") if args.check == "all" else (args.check,)
    checks = []
    if "iso" in wanted:
        checks.append(steenrod.subring_iso_check(A, q, args.dmax).as_dict())
    if "free" in wanted:
        checks.append(steenrod.freeness_check(A, q, args.dmax).as_dict())
    if "tor" in wanted:
        checks.append(steenrod.kunneth_e2(A, q, args.dmax, args.smax).as_dict())
    params = {"prime": args.prime, "n": args.n, "conjugated": args.conjugated,
              "dmax": args.dmax, "smax": args.smax, "check": args.check}
    rep = _report("steenrod", params, checks)
    _emit(_json(rep), args.out)
    return 0 if rep["pass"] else 1


def cmd_koszul(args) -> int:
    T = koszul.TensorAlgebra.from_degrees(args.prime, args.vdegrees)
    kind, seed = args.module
    if kind == "trivial":
        pres = koszul.trivial_presentation(T)
    elif kind == "free":
        pres = koszul.free_presentation()
    elif kind == "zero":
        pres = koszul.zero_presentation()
    else:
        pres = koszul.random_presentation(T, seed)
    K = koszul.build_koszul(T, pres, args.dmax)
    ex = koszul.exactness_check(K, args.dmax)
    check = ex.as_dict()
    check["module"] = {
        "generators": [list(g) for g in pres.generators],
        "relations": [[{"word": T.word_str(w), "gen": g, "coeff": c} for (w, g), c in sorted(r.items())]
                      for r in pres.relations],
    }
    params = {"prime": args.prime, "vdegrees": args.vdegrees,
              "module": kind if seed is None else f"{kind}:{seed}", "dmax": args.dmax}
    rep = _report("koszul", params, [check])
    _emit(_json(rep), args.out)
    return 0 if rep["pass"] else 1


def cmd_crosscheck(args) -> int:
    p = args.prime
    cc = may_chart.cross_check(p, args.imax, args.jmax)
    checks = [{"check": "closed-form", "pass": cc.ok, "data": {"checked": cc.checked},
               "failures": cc.mismatches}]
    if p != 2:
        checks.append(steenrod.steinberger_consistency(p, args.imax).as_dict())
    params = {"prime": p, "imax": args.imax, "jmax": args.jmax}
    rep = _report("crosscheck", params, checks)
    _emit(_json(rep), args.out)
    return 0 if rep["pass"] else 1


COMMANDS = {"may-chart": cmd_may_chart, "steenrod": cmd_steenrod,
            "koszul": cmd_koszul, "crosscheck": cmd_crosscheck}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
