"""Command-line surface for the set-system LDPC pipeline.

Exit codes: 0 success, 2 infeasible, 3 unknown (budget exhausted), 1 error.
Errors are reported as one JSON object on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, load_paper_tables
from .setsystem import SetSystem, block_stats
from .qc import (
    assemble,
    expand,
    read_alist,
    shift_sequence_from_list,
    shifts_from_json,
    shifts_to_json,
    write_alist,
)
from .girth import inevitable_girth, tanner_girth
from .shiftsearch import SearchPolicy, search_shifts
from .construct import WeightProfile, method1, method2
from .sim import StopRule, ber_sweep, write_ber_csv

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2
EXIT_UNKNOWN = 3


def _load_fss(path) -> SetSystem:
    with open(path) as fh:
        return SetSystem.from_json(fh.read())


def _emit(doc, path=None):
    text = json.dumps(doc, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _meta(args, **params):
    out = {"tool": "fsscode", "version": __version__}
    out.update(params)
    return out


def _policy(args) -> SearchPolicy:
    return SearchPolicy(order=args.order, budget=args.budget, seed=args.seed)


def _int_list(text):
    return [int(x) for x in text.replace(" ", "").split(",") if x]


def _float_list(text):
    return [float(x) for x in text.replace(" ", "").split(",") if x]


def cmd_stats(args):
    fss = _load_fss(args.fss)
    st = block_stats(fss)
    _emit(
        {
            "meta": _meta(args, input=args.fss),
            "v": fss.v,
            "b": fss.b,
            "t": fss.t,
            "K": list(st.K),
            "R": list(st.R),
            "coverage": {str(i): sorted(vals) for i, vals in st.coverage.items()},
        },
        args.output,
    )
    return EXIT_OK


def cmd_girth(args):
    fss = _load_fss(args.fss)
    report = inevitable_girth(fss, cap=args.cap)
    doc = json.loads(report.to_json())
    doc["meta"] = _meta(args, input=args.fss, cap=args.cap)
    _emit(doc, args.output)
    return EXIT_OK


def cmd_method1(args):
    fss = _load_fss(args.fss)
    res = method1(fss, args.girth, _int_list(args.m_schedule), policy=_policy(args))
    _emit(
        {
            "meta": _meta(args, input=args.fss, girth=args.girth,
                          m_schedule=_int_list(args.m_schedule), seed=args.seed),
            "status": res.status,
            "system": json.loads(res.system.to_json()),
            "verification": json.loads(res.report.to_json()),
        },
        args.output,
    )
    return EXIT_OK


def cmd_method2(args):
    profile = WeightProfile.parse(args.K)
    res = method2(args.v, profile, args.girth, policy=_policy(args))
    doc = {
        "meta": _meta(args, v=args.v, K=list(profile.K), girth=args.girth,
                      order=args.order, budget=args.budget, seed=args.seed),
        "status": res.status,
        "expansions": res.expansions,
    }
    if res.ok:
        doc["system"] = json.loads(res.system.to_json())
        doc["verification"] = json.loads(res.report.to_json())
    _emit(doc, args.output)
    if res.status == "infeasible":
        return EXIT_INFEASIBLE
    if res.status == "unknown":
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_shifts(args):
    fss = _load_fss(args.fss)
    res = search_shifts(fss, args.m, args.girth, policy=_policy(args))
    doc = {
        "meta": _meta(args, input=args.fss, m=args.m, girth=args.girth,
                      order=args.order, budget=args.budget, seed=args.seed),
        "status": res.status,
        "expansions": res.expansions,
    }
    if res.ok:
        doc.update(json.loads(shifts_to_json(fss, res.shifts)))
        doc["verified_girth"] = res.verified_girth
    _emit(doc, args.output)
    if res.status == "infeasible":
        return EXIT_INFEASIBLE
    if res.status == "unknown":
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_expand(args):
    fss = _load_fss(args.fss)
    if args.shifts:
        with open(args.shifts) as fh:
            S = shifts_from_json(fss, fh.read())
    else:
        S = shift_sequence_from_list(fss, args.m, _int_list(args.shift_list))
    H = expand(assemble(fss, S))
    write_alist(H, args.output)
    print(json.dumps({"rows": H.rows, "cols": H.cols, "nnz": H.nnz,
                      "output": args.output}))
    return EXIT_OK


def cmd_tgirth(args):
    H = read_alist(args.alist)
    report = tanner_girth(H, cap=args.cap)
    doc = json.loads(report.to_json())
    doc["meta"] = _meta(args, input=args.alist, cap=args.cap)
    _emit(doc, args.output)
    return EXIT_OK


def cmd_simulate(args):
    H = read_alist(args.alist)
    stop = StopRule(min_frame_errors=args.min_frame_errors,
                    max_frames=args.max_frames)
    records = ber_sweep(H, _float_list(args.snr), rate=args.rate, stop=stop,
                        seed=args.seed, max_iter=args.max_iter)
    write_ber_csv(records, args.output)
    print(json.dumps({"points": len(records), "seed": args.seed,
                      "output": args.output}))
    return EXIT_OK


def cmd_verify_table(args):
    tables = load_paper_tables()
    rows = tables["girth_codes"]
    if args.row:
        rows = [r for r in rows if r["name"] == args.row]
        if not rows:
            raise ValueError(f"unknown table row {args.row!r}")
    failures = 0
    for row in rows:
        fss = SetSystem(v=row["v"],
                        blocks=tuple(tuple(range(1, row["v"] + 1))
                                     for _ in range(row["b"])))
        S = shift_sequence_from_list(fss, row["m"], row["shifts"])
        H = expand(assemble(fss, S))
        report = tanner_girth(H, cap=row["girth"] + 2)
        ok = report.girth == row["girth"] and H.cols == row["n"]
        status = "PASS" if ok else "FAIL"
        print(f"{status} {row['name']}: girth {report.girth} "
              f"(expected {row['girth']}), n={H.cols} (expected {row['n']})")
        failures += 0 if ok else 1
    return EXIT_OK if failures == 0 else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fsscode",
        description="Quasi-cyclic LDPC codes from finite set systems",
    )
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        sp.add_argument("-o", "--output", default=None)
        return sp

    def add_policy(sp):
        sp.add_argument("--order", choices=("ascending", "random"),
                        default="ascending")
        sp.add_argument("--budget", type=int, default=10_000_000)
        sp.add_argument("--seed", type=int, default=0)

    sp = add("stats", cmd_stats, help="block/replication/coverage statistics")
    sp.add_argument("--fss", required=True)

    sp = add("girth", cmd_girth, help="maximum achievable girth of a system")
    sp.add_argument("--fss", required=True)
    sp.add_argument("--cap", type=int, default=12)

    sp = add("method1", cmd_method1, help="iterated-lifting construction")
    sp.add_argument("--fss", required=True)
    sp.add_argument("--girth", type=int, required=True)
    sp.add_argument("--m-schedule", required=True)
    add_policy(sp)

    sp = add("method2", cmd_method2, help="profile-driven backtracking construction")
    sp.add_argument("--v", type=int, required=True)
    sp.add_argument("--K", required=True)
    sp.add_argument("--girth", type=int, required=True)
    add_policy(sp)

    sp = add("shifts", cmd_shifts, help="search circulant shifts for a target girth")
    sp.add_argument("--fss", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--girth", type=int, required=True)
    add_policy(sp)

    sp = add("expand", cmd_expand, help="expand a system + shifts to alist")
    sp.add_argument("--fss", required=True)
    sp.add_argument("--shifts", default=None, help="shift JSON file")
    sp.add_argument("--shift-list", default=None,
                    help="comma-separated shifts (explicit or compressed)")
    sp.add_argument("--m", type=int, default=None)
    sp.set_defaults(fn=cmd_expand)

    sp = add("tgirth", cmd_tgirth, help="Tanner girth of an alist matrix")
    sp.add_argument("--alist", required=True)
    sp.add_argument("--cap", type=int, default=16)

    sp = add("simulate", cmd_simulate, help="AWGN BER/FER sweep")
    sp.add_argument("--alist", required=True)
    sp.add_argument("--snr", required=True, help="comma-separated Eb/N0 in dB")
    sp.add_argument("--rate", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--min-frame-errors", type=int, default=100)
    sp.add_argument("--max-frames", type=int, default=100_000)
    sp.add_argument("--max-iter", type=int, default=50)

    sp = add("verify-table", cmd_verify_table,
             help="re-verify bundled reference shift sequences")
    sp.add_argument("--row", default=None)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "expand":
        if bool(args.shifts) == bool(args.shift_list):
            print(json.dumps({"error": "expand needs exactly one of "
                              "--shifts or --shift-list"}), file=sys.stderr)
            return EXIT_ERROR
        if args.shift_list and args.m is None:
            print(json.dumps({"error": "--shift-list requires --m"}),
                  file=sys.stderr)
            return EXIT_ERROR
        if not args.output:
            print(json.dumps({"error": "expand requires -o OUTPUT.alist"}),
                  file=sys.stderr)
            return EXIT_ERROR
    if args.command == "simulate" and not args.output:
        print(json.dumps({"error": "simulate requires -o OUTPUT.csv"}),
              file=sys.stderr)
        return EXIT_ERROR
    try:
        return args.fn(args)
    except Exception as ex:  # noqa: BLE001 - single CLI boundary
        print(json.dumps({"error": type(ex).__name__, "message": str(ex)}),
              file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
