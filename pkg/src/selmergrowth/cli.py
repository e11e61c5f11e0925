"""Command line surface: report, scan and verify subcommands.

Exit codes: 0 success, 1 verification failures, 2 hypothesis or input
failures, 64 usage errors.  All output is exact integer data; JSON uses a
fixed field order so emitted reports re-serialize byte-identically.
"""

import argparse
import csv
import io
import json
import os
import sys
from importlib import resources

from . import aggregate, curves, formal, tower
from .errors import SelmerGrowthError, UnsupportedP

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_HYPOTHESIS = 2
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _load_db(path=None):
    if path is None:
        path = os.environ.get("SELMER_DB")
    if path is None:
        text = resources.files("selmergrowth").joinpath("data/curves.csv").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    db = {}
    for row in csv.DictReader(io.StringIO(text)):
        db[row["label"]] = tuple(int(row[k]) for k in ("a1", "a2", "a3", "a4", "a6"))
    return db


def _resolve_curve(args):
    if args.a_invariants:
        parts = [int(x) for x in args.a_invariants.split(",")]
        if len(parts) != 5:
            raise ValueError("--a-invariants needs a1,a2,a3,a4,a6")
        return curves.curve_from_a_invariants(parts), f"[{args.a_invariants}]"
    if not args.curve:
        raise ValueError("one of --curve or --a-invariants is required")
    db = _load_db(args.db)
    if args.curve not in db:
        raise ValueError(f"unknown curve label {args.curve!r}")
    return curves.curve_from_a_invariants(db[args.curve]), args.curve


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _contribution_dict(c):
    place = c.place
    return {
        "ell": place.ell if place else 0,
        "f_v": place.f_v if place else 0,
        "q_v": place.q_v if place else 0,
        "reduction": _reduction_str(c.reduction),
        "behavior": c.behavior.kind if c.behavior else None,
        "lo": c.lo,
        "hi": c.hi,
        "reason": c.reason,
    }


def _reduction_str(red):
    if red is None:
        return None
    if red.sub:
        return f"{red.kind} {red.sub}"
    return red.kind


def report_to_dict(report):
    return {
        "curve": report.curve,
        "p": report.p,
        "m": report.m,
        "hypotheses": {
            "semistable": report.hypotheses.semistable,
            "good_at_p": report.hypotheses.good_at_p,
            "selmer_trivial_over_K": report.hypotheses.selmer_trivial_over_K,
        },
        "contributions": [_contribution_dict(c) for c in report.contributions],
        "total": {"lo": report.total_lo, "hi": report.total_hi},
        "verdict": report.verdict,
    }


def render_json(obj):
    return json.dumps(obj, indent=2, sort_keys=False)


def _render_report_table(report, out):
    out.write(f"curve {report.curve}   p = {report.p}   m = {report.m}"
              + ("" if report.m == report.m_requested else f" (from {report.m_requested})")
              + "\n")
    hyp = report.hypotheses
    out.write(f"hypotheses: semistable={hyp.semistable} good_at_p={hyp.good_at_p} "
              f"selmer_trivial_over_K={hyp.selmer_trivial_over_K} (asserted)\n")
    out.write(f"{'place':>10} {'f_v':>4} {'q_v':>8} {'reduction':>22} "
              f"{'behavior':>9} {'delta':>7}  reason\n")
    for c in report.contributions:
        if c.place is None:
            name, f_v, q_v = "infinity", "-", "-"
        else:
            name, f_v, q_v = f"over {c.place.ell}", c.place.f_v, c.place.q_v
        interval = str(c.lo) if c.lo == c.hi else f"[{c.lo},{c.hi}]"
        out.write(f"{name:>10} {f_v:>4} {q_v:>8} {_reduction_str(c.reduction) or '-':>22} "
                  f"{c.behavior.kind if c.behavior else '-':>9} {interval:>7}  {c.reason}\n")
    total = str(report.total_lo) if report.total_lo == report.total_hi \
        else f"[{report.total_lo},{report.total_hi}]"
    out.write(f"total: {total}   verdict: {report.verdict}\n")


def _render_report_csv(report, out):
    writer = csv.writer(out)
    writer.writerow(["ell", "f_v", "q_v", "reduction", "behavior", "lo", "hi", "reason"])
    for c in report.contributions:
        d = _contribution_dict(c)
        writer.writerow([d["ell"], d["f_v"], d["q_v"], d["reduction"] or "",
                         d["behavior"] or "", d["lo"], d["hi"], d["reason"]])


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_report(args, out):
    curve, label = _resolve_curve(args)
    report = aggregate.selmer_dimension(curve, args.p, args.m,
                                        assert_selmer_trivial=args.assume_selmer_trivial,
                                        label=label)
    if args.format == "json":
        out.write(render_json(report_to_dict(report)) + "\n")
    elif args.format == "csv":
        _render_report_csv(report, out)
    else:
        _render_report_table(report, out)
    return EXIT_OK


def cmd_scan(args, out):
    try:
        lo, hi = (int(x) for x in args.m_range.split(":"))
    except ValueError:
        sys.stderr.write(f"error: --m-range wants lo:hi, got {args.m_range!r}\n")
        return EXIT_USAGE
    curve, label = _resolve_curve(args)
    predicate = {"trivial": aggregate.TRIVIAL, "nontrivial": aggregate.NONTRIVIAL,
                 "undetermined": aggregate.UNDETERMINED}.get(args.filter)
    rows = aggregate.scan_m(curve, args.p, lo, hi, predicate,
                            assert_selmer_trivial=args.assume_selmer_trivial,
                            label=label)
    if args.format == "json":
        payload = [{"m": m, "total": {"lo": r.total_lo, "hi": r.total_hi},
                    "verdict": r.verdict} for m, r in rows]
        out.write(render_json(payload) + "\n")
    elif args.format == "csv":
        writer = csv.writer(out)
        writer.writerow(["m", "lo", "hi", "verdict"])
        for m, r in rows:
            writer.writerow([m, r.total_lo, r.total_hi, r.verdict])
    else:
        for m, r in rows:
            interval = str(r.total_lo) if r.total_lo == r.total_hi \
                else f"[{r.total_lo},{r.total_hi}]"
            out.write(f"m={m:<6} total={interval:<7} {r.verdict}\n")
    return EXIT_OK


def _verify_tower_checks(p, m, N, results):
    wild = m % p == 0
    tw = (tower.build_tower if wild else tower.tame_jump_tower)(p, m, N)
    ram = tw.ramification()
    results.append(("ramification-data", True,
                    f"t = {ram.t}, different exponent = {ram.m_diff} "
                    f"(jump and derivative computations agree)"))
    n_max = 2 * p
    rows = tower.trace_ideal_exponents(tw, n_max)
    expect = [(n, (ram.m_diff + n) // p) for n in range(n_max + 1)]
    ok = rows == expect
    results.append(("trace-ideal-exponents", ok,
                    f"computed {[r for _, r in rows]}, "
                    f"floor((m_diff+n)/p) = {[r for _, r in expect]}"))
    return tw, ram


def cmd_verify(args, out):
    p = args.p
    if p not in tower.SUPPORTED_TOWER_P:
        raise UnsupportedP(f"verify supports p in {tower.SUPPORTED_TOWER_P}")
    N = args.precision or 12
    results = []

    if args.trace_lemma:
        _verify_tower_checks(p, args.m, N, results)
    else:
        curve, label = _resolve_curve(args)
        curves.require_hypotheses(curve, p)
        tw, ram = _verify_tower_checks(p, args.m, N, results)

        sub = curves.ordinary_or_supersingular(curve, p)
        h_expect = 2 if sub == curves.SUPERSINGULAR else 1
        F_small = formal.formal_group_of_curve(curve, p, max(p * p + 2, 12))
        h = F_small.height(p)
        results.append(("height-vs-frobenius", h == h_expect,
                        f"height {h}, reduction {sub}"))

        ph = p ** (h - 1)
        cap = max(ph, 2)
        dec = formal.symmetric_norm_series(
            formal.formal_group_of_curve(curve, p, p * cap), p, p * cap)
        pat_ok = dec.trace_ok
        detail = []
        for i, a in sorted(dec.diagonal.items()):
            v = 0
            while a % p == 0 and v < 3:
                a //= p
                v += 1
            detail.append(f"v(a_{i})={v}")
            if i % ph != 0 and v < 1:
                pat_ok = False
            if i == ph and v != 0:
                pat_ok = False
        results.append(("addition-coefficient-pattern", pat_ok, ", ".join(detail)))

        if h == 2:
            # the supersingular table cell is exactly this norm cokernel
            T = ram.t + p if p == 5 else None
            dim = tower.stable_norm_cokernel_dimension(
                lambda prec: formal.formal_group_of_curve(curve, p, prec),
                p, args.m, N, T, tame=args.m % p != 0)
            if ram.t >= 2:
                lo_b, hi_b = 1, min(ram.t - 1, (p - 1) + 2)
                results.append(("cokernel-interval-bounds", lo_b <= dim <= hi_b,
                                f"dim {dim} vs [{lo_b}, {hi_b}]"))
            table_cell = (p - 2) if args.m % p == 0 else 0
            results.append(("cokernel-vs-table", dim == table_cell,
                            f"brute-force dim {dim}, table entry {table_cell}"))

    failed = 0
    for name, ok, detail in results:
        out.write(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}\n")
        if not ok:
            failed += 1
    out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return EXIT_OK if failed == 0 else EXIT_CHECK_FAILED


def build_parser():
    parser = _Parser(prog="selmergrowth",
                     description="Invariant Selmer dimension in Kummer layers, "
                                 "with brute-force local verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, need_m=True):
        sp.add_argument("--curve", help="curve label from the database")
        sp.add_argument("--a-invariants", help="a1,a2,a3,a4,a6 (bypasses the database)")
        sp.add_argument("--p", type=int, required=True, help="odd prime")
        if need_m:
            sp.add_argument("--m", type=int, required=True, help="Kummer radicand")
        sp.add_argument("--db", help="curve database CSV (overrides SELMER_DB)")
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")

    rep = sub.add_parser("report", help="per-place table for a single m")
    common(rep)
    rep.add_argument("--assume-selmer-trivial", action="store_true",
                     help="assert the base-field Selmer group vanishes")

    scan = sub.add_parser("scan", help="reports over a range of m")
    common(scan, need_m=False)
    scan.add_argument("--m-range", required=True, help="lo:hi inclusive")
    scan.add_argument("--filter", choices=("trivial", "nontrivial", "undetermined"))
    scan.add_argument("--assume-selmer-trivial", action="store_true")

    ver = sub.add_parser("verify", help="brute-force local verification suite")
    common(ver)
    ver.add_argument("--trace-lemma", action="store_true",
                     help="only the tower trace-ideal checks (no curve needed)")
    ver.add_argument("--precision", type=int, help="coefficient precision N")
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        if args.command == "report":
            return cmd_report(args, out)
        if args.command == "scan":
            return cmd_scan(args, out)
        return cmd_verify(args, out)
    except (SelmerGrowthError, ValueError) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    raise SystemExit(main())
