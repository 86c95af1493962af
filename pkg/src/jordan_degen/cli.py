"""Command-line front end.

    jordan-degen ideals --type D --rank 4
    jordan-degen verify --type E8 --out certs
    jordan-degen verify --all --jobs 4
    jordan-degen iemu 4,4,1
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .chains import (
    certify_ideal, i_of_h, ideals_of, k_certificate, setup, solve_ie,
    verify_cartan_limit, z_window,
)
from .ideals import Partition
from .roots import CLASSICAL, EXCEPTIONAL, MIN_RANK

OUT_ENV = "JORDAN_DEGEN_OUT"
DEFAULT_OUT = "certificates"
DEFAULT_RANKS = {"A": range(1, 9), "B": range(2, 8), "C": range(2, 8), "D": range(4, 8)}
TYPE_CHOICES = list(CLASSICAL) + list(EXCEPTIONAL)


class UsageError(Exception):
    pass


def type_ranks(type_tag, rank):
    """(tag, rank) pairs for one --type/--rank combination."""
    if type_tag in EXCEPTIONAL:
        if rank is not None and rank != int(type_tag[1]):
            raise UsageError(f"{type_tag} has rank {type_tag[1]}")
        return [(type_tag, int(type_tag[1]))]
    if rank is None:
        return [(type_tag, r) for r in DEFAULT_RANKS[type_tag]]
    if rank < MIN_RANK[type_tag]:
        raise UsageError(f"type {type_tag} needs rank >= {MIN_RANK[type_tag]}")
    return [(type_tag, rank)]


def suite(args):
    if args.all:
        out = []
        for t in TYPE_CHOICES:
            out.extend(type_ranks(t, None))
        return out
    if args.type is None:
        raise UsageError("give --type or --all")
    return type_ranks(args.type, args.rank)


def type_name(tag, rank):
    return f"{tag}{rank}" if tag in CLASSICAL else tag


def dump(obj):
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# ideals


def cmd_ideals(args):
    out = []
    for tag, rank in suite(args):
        ideals = ideals_of(tag, rank)
        if not args.json:
            print(f"{type_name(tag, rank)}: {len(ideals)} ideal(s)")
        for k, a in enumerate(ideals):
            cls = a.type_class or ""
            if a.subcase:
                cls += f" ({a.subcase})"
            if not args.json:
                print(f"  [{k}] {cls:<18} {' '.join(a.labels())}")
            out.append({"type": tag, "rank": rank, "ideal_id": k, "ideal": a.labels(),
                        "class": a.type_class, "subcase": a.subcase})
    if args.json:
        sys.stdout.write(dump(out))
    return 0


# ---------------------------------------------------------------------------
# verify


def _task(tag, rank, what, timing):
    """One certificate as JSON; what is "h_to_j", "j_to_k" or an ideal id."""
    model, _, J, K = setup(tag, rank)
    if what == "h_to_j":
        cert = verify_cartan_limit(model, J)
    elif what == "j_to_k":
        cert = k_certificate(model, J, K)
    else:
        cert = certify_ideal(tag, rank, ideals_of(tag, rank)[what], what)
    return cert.to_json(timing)


def _tasks(pairs):
    out = []
    for tag, rank in pairs:
        out.append((tag, rank, "h_to_j"))
        out.append((tag, rank, "j_to_k"))
        out.extend((tag, rank, k) for k in range(len(ideals_of(tag, rank))))
    return out


def _file_name(what):
    return f"{what}.json" if isinstance(what, str) else f"ideal_{what:02d}.json"


def cmd_verify(args):
    pairs = suite(args)
    out_dir = Path(args.out or os.environ.get(OUT_ENV) or DEFAULT_OUT)
    try:
        tasks = _tasks(pairs)
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as ex:
                futs = [ex.submit(_task, *t, args.timing) for t in tasks]
                results = [f.result() for f in futs]
        else:
            results = [_task(*t, args.timing) for t in tasks]
    except Exception as e:  # build failures are reported, not raised
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return 2
    summary = []
    print(f"{'type':<6}{'chain':<18}{'ideal':>6}  {'steps':>5}  result")
    for (tag, rank, what), res in zip(tasks, results):
        name = type_name(tag, rank)
        d = out_dir / name
        d.mkdir(parents=True, exist_ok=True)
        (d / _file_name(what)).write_text(dump(res))
        ident = "" if isinstance(what, str) else str(what)
        print(f"{name:<6}{res['chain']:<18}{ident:>6}  {len(res['steps']):>5}  "
              f"{'PASS' if res['pass'] else 'FAIL'}")
        summary.append({"type": tag, "rank": rank, "task": what, "chain": res["chain"],
                        "pass": res["pass"]})
    out_dir.mkdir(parents=True, exist_ok=True)
    npass = sum(s["pass"] for s in summary)
    (out_dir / "summary.json").write_text(dump({
        "certificates": summary, "passed": npass, "total": len(summary)}))
    print(f"{npass}/{len(summary)} certificates pass; written to {out_dir}")
    return 0 if npass == len(summary) else 1


# ---------------------------------------------------------------------------
# iemu


def cmd_iemu(args):
    try:
        mu = Partition.parse(args.partition)
    except ValueError as e:
        raise UsageError(f"malformed partition {args.partition!r}: {e}") from None
    sol = solve_ie(mu)
    n = mu.size
    if args.json:
        sys.stdout.write(dump(sol.to_json()))
        return 0
    print(f"mu = ({mu})  route: {' > '.join(sol.route)}")
    print(f"z = {sol.z}")
    print(f"w = {sol.w}")
    print(f"{'h':>3} {'i(h)':>5} {'z_i(h)':>8} {'min other':>10}  ok")
    ok_all = True
    for h in range(1, n + 1):
        ih = i_of_h(mu, h)
        base = z_window(sol.z, ih, h)
        others = [z_window(sol.z, j, h) for j in range(1, n + 2 - h) if j != ih]
        lo = min(others) if others else None
        ok = lo is None or base < lo
        ok_all = ok_all and ok
        print(f"{h:>3} {ih:>5} {base:>8} {'-' if lo is None else lo:>10}  {'yes' if ok else 'NO'}")
    return 0 if ok_all else 1


# ---------------------------------------------------------------------------


def build_parser():
    p = argparse.ArgumentParser(prog="jordan-degen",
                                description="Exact degenerations of the Jordan subalgebra "
                                            "to abelian ideals of a Borel subalgebra.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_suite(q):
        q.add_argument("--type", type=str.upper, choices=TYPE_CHOICES)
        q.add_argument("--rank", type=int)
        q.add_argument("--all", action="store_true",
                       help="A<=8, B/C<=7, D 4..7 and all exceptional types")

    q = sub.add_parser("ideals", help="list n-dimensional abelian ideals")
    add_suite(q)
    q.add_argument("--json", action="store_true", help="print JSON instead of the table")
    q.set_defaults(func=cmd_ideals)

    q = sub.add_parser("verify", help="run all chains and write certificates")
    add_suite(q)
    q.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./{DEFAULT_OUT})")
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--timing", action="store_true", help="record millis in certificates")
    q.set_defaults(func=cmd_verify)

    q = sub.add_parser("iemu", help="solve the inequality system for a partition")
    q.add_argument("partition", help="comma-separated parts, e.g. 4,4,1")
    q.add_argument("--json", action="store_true")
    q.set_defaults(func=cmd_iemu)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        parser.error(str(e))


if __name__ == "__main__":
    sys.exit(main())
