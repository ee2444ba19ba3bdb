"""Batch command line front end.

Each subcommand emits one JSON object per line (or a CSV projection of the
same records) and exits 0 only if every embedded assertion passed. Exact
rationals are serialized as `num/den` strings, intervals as `[lo, hi]` pairs,
never as floats.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import classcount, formulas, matrep, measures, oracle, qseries, symfunc
from .exact import Interval
from .partition import Partition


def rat(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def interval(iv):
    return [rat(iv.lo), rat(iv.hi)]


class CheckFailure(Exception):
    pass


class Emitter:
    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream
        self.records = []

    def emit(self, record):
        self.records.append(record)
        if self.fmt == "json-lines":
            self.stream.write(json.dumps(record, sort_keys=True) + "\n")

    def close(self):
        if self.fmt == "csv" and self.records:
            keys = sorted({k for r in self.records for k in r})
            writer = csv.DictWriter(self.stream, fieldnames=keys)
            writer.writeheader()
            for r in self.records:
                writer.writerow({k: _csv_cell(r.get(k)) for k in keys})


def _csv_cell(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return v


def cmd_identities(args, out):
    rep = symfunc.verify_identity(args.name, args.vars, args.deg)
    out.emit(rep.as_record())
    if not rep.ok:
        raise CheckFailure(f"identity {args.name} failed at {rep.monomial}")


def cmd_count(args, out):
    if args.cls:
        C = matrep.parse_class_data(args.cls)
        if C.n != args.n or C.q != args.q:
            raise ValueError("class data does not match --n/--q")
    else:
        F = matrep.field(args.q)
        zm1 = matrep.MonicPoly(F, (F.neg(1), 1))
        C = matrep.ClassData(args.n, args.q, {zm1: Partition((1,) * args.n)})
    prob = formulas.prob_ggtau(C)
    count = formulas.count_solutions(C)
    record = {
        "n": args.n, "q": args.q, "class": repr(C),
        "probability": rat(prob), "solutions_per_representative": count,
        "class_size": matrep.class_size(C),
        "total_solutions": count * matrep.class_size(C),
    }
    if not args.cls:
        product = formulas.gow_macdonald_product(args.n, args.q)
        record["product_formula"] = product
        if count != product:
            raise CheckFailure("identity-class count disagrees with the product")
    out.emit(record)


def cmd_histogram(args, out):
    classes = matrep.enumerate_class_data(args.n, args.q)
    hist = oracle.brute_histogram(args.n, args.q) if args.brute else None
    mismatches = 0
    for C in sorted(classes, key=repr):
        prob = formulas.prob_ggtau(C)
        record = {"n": args.n, "q": args.q, "class": repr(C),
                  "probability": rat(prob)}
        if hist is not None:
            record["brute_count"] = hist.counts.get(C, 0)
            record["brute_proportion"] = rat(hist.proportion(C))
            if hist.proportion(C) != prob:
                record["mismatch"] = True
                mismatches += 1
        out.emit(record)
    if mismatches:
        raise CheckFailure(f"{mismatches} classes disagree with brute force")


def cmd_classes(args, out):
    report = classcount.class_count_report(args.n, args.q)
    record = report.as_record()
    if args.coset:
        out.emit({"n": args.n, "q": args.q, "coset_classes": report.k_coset})
    elif args.gl:
        out.emit({"n": args.n, "q": args.q, "gl_classes": report.k_gl})
    elif args.total:
        out.emit({"n": args.n, "q": args.q, "total_classes": report.k_total})
    elif args.bounds:
        out.emit(record)
        if not report.bound_ok:
            raise CheckFailure("class-count bound violated")
    elif args.asy:
        for parity in ("even-n", "odd-n"):
            rep = classcount.asy_report(args.q, parity)
            out.emit({
                "q": args.q, "parity": parity, "n_used": rep.n_used,
                "ratio": rat(rep.ratio), "limit": interval(rep.interval),
                "within_one_percent": rep.within_one_percent,
            })
            if not rep.within_one_percent:
                raise CheckFailure("asymptotic ratio off by more than 1%")
    else:
        out.emit(record)


def cmd_sp(args, out):
    if args.unipotent:
        from .partition import enumerate_partitions

        for mu in enumerate_partitions(args.n):
            prob = formulas.prob_unipotent(mu, args.q, "sp")
            out.emit({"n": args.n, "q": args.q, "type": repr(mu),
                      "probability": rat(prob)})
        return
    stats = oracle.brute_sp_stats(args.n, args.q)
    mismatches = 0
    for C in sorted(matrep.enumerate_class_data(args.n, args.q), key=repr):
        prob = formulas.prob_sp_class(C)
        record = {"n": args.n, "q": args.q, "class": repr(C),
                  "probability": rat(prob),
                  "brute_count": stats.counts.get(C, 0)}
        if stats.proportion(C) != prob:
            record["mismatch"] = True
            mismatches += 1
        out.emit(record)
    if mismatches:
        raise CheckFailure(f"{mismatches} symplectic classes disagree")


def cmd_measures(args, out):
    m = measures.PartitionMeasure(args.family, Fraction(args.u), args.q)
    if args.check:
        rep = measures.normalization_check(m, args.cap)
        out.emit({
            "family": args.family, "u": rat(m.u), "q": args.q,
            "cap": args.cap, "interval": interval(rep.interval),
            "width": rat(rep.width), "contains_one": rep.contains_one,
        })
        if not rep.contains_one:
            raise CheckFailure("normalization interval misses 1")
    elif args.sample:
        rng = measures.make_rng(args.seed)
        for _ in range(args.draws):
            lam = measures.sample_partition(m, args.cap, rng)
            out.emit({"family": args.family, "u": rat(m.u), "q": args.q,
                      "partition": repr(lam)})
    elif args.compare:
        rng = measures.make_rng(args.seed)
        rep = measures.empirical_limit_compare(args.n, args.q, args.trials, rng)
        for row in rep.rows:
            out.emit({
                "n": args.n, "q": args.q, "partition": repr(row.partition),
                "mass": interval(row.mass), "frequency": rat(row.frequency),
                "z_score": round(row.z_score, 3),
            })
        out.emit({"n": args.n, "q": args.q,
                  "empty_within_tolerance": rep.empty_within_tolerance,
                  "joint_ratio": rep.joint_ratio})
        if not rep.empty_within_tolerance:
            raise CheckFailure("empirical law off the limit mass")
    else:
        rep = measures.verify_product_identity(args.q, args.deg)
        out.emit({"q": args.q, "deg": args.deg, "ok": rep.ok,
                  "lhs": [rat(c) for c in rep.lhs],
                  "rhs": [rat(c) for c in rep.rhs]})
        if not rep.ok:
            raise CheckFailure("product identity failed")


def cmd_orbits(args, out):
    if args.structure:
        rep = oracle.verify_orbit_structure(args.n, args.q)
        out.emit({"n": args.n, "q": args.q, "classes_checked": rep.classes_checked,
                  "ok": rep.ok, "failures": [repr(f) for f in rep.failures]})
        if not rep.ok:
            raise CheckFailure("orbit structure check failed")
        return
    if args.sl:
        rep = oracle.sl_orbit_split_report(args.n, args.q)
        out.emit({
            "n": args.n, "q": args.q, "gl_orbits": rep.gl_orbit_count,
            "sl_orbits": sum(2 if s else 1 for s in rep.splits),
            "splits": sum(1 for s in rep.splits if s), "ok": rep.ok,
        })
        if not rep.ok:
            raise CheckFailure("SL splitting criterion failed")
        return
    rep = oracle.brute_congruence_orbits("GL", args.n, args.q)
    expected = classcount.coset_class_count(args.n, args.q)
    record = {
        "n": args.n, "q": args.q, "orbits": rep.orbit_count,
        "coset_class_count": expected, "sizes": sorted(rep.sizes),
    }
    if args.stabilizers:
        record["stabilizer_orders"] = sorted(rep.stabilizer_orders)
        bound = formulas.min_centralizer_bound(args.n, args.q) if args.n >= 2 else None
        if bound is not None:
            record["centralizer_lower_bound"] = rat(bound.lower)
            if min(rep.stabilizer_orders) < bound.lower:
                out.emit(record)
                raise CheckFailure("stabilizer below the certified bound")
    out.emit(record)
    if rep.orbit_count != expected:
        raise CheckFailure("orbit count disagrees with the generating function")


def cmd_qseries(args, out):
    rep = qseries.verify_qsum(args.kind, args.n_max)
    out.emit({"kind": args.kind, "n_max": args.n_max, "ok": rep.ok})
    if not rep.ok:
        raise CheckFailure(f"q-series check {args.kind} failed")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ggtau",
        description="Exact statistics of g*g^tau in GL(n,q) with brute-force cross-checks",
    )
    parser.add_argument("--format", choices=("json-lines", "csv"),
                        default="json-lines")
    parser.add_argument("--output", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("identities", help="symmetric-function identity checks")
    psub = p.add_subparsers(dest="action", required=True)
    pv = psub.add_parser("verify")
    pv.add_argument("--name", required=True, choices=symfunc.IDENTITY_NAMES)
    pv.add_argument("--vars", type=int, required=True)
    pv.add_argument("--deg", type=int, required=True)
    pv.set_defaults(func=cmd_identities)

    p = sub.add_parser("count", help="solution counts for one class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--class", dest="cls", default=None,
                   help="class data in the text grammar; default identity class")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("histogram", help="class distribution of g*g^tau")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--brute", action="store_true",
                   help="cross-check against full enumeration")
    p.set_defaults(func=cmd_histogram)

    p = sub.add_parser("classes", help="class counts and bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    for flag in ("coset", "gl", "total", "bounds", "asy"):
        group.add_argument(f"--{flag}", action="store_true")
    p.set_defaults(func=cmd_classes)

    p = sub.add_parser("sp", help="symplectic class statistics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--unipotent", action="store_true")
    group.add_argument("--stats", action="store_true")
    p.set_defaults(func=cmd_sp)

    p = sub.add_parser("measures", help="partition measures")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--check", action="store_true")
    group.add_argument("--sample", action="store_true")
    group.add_argument("--compare", action="store_true")
    p.add_argument("--family", choices=measures.FAMILIES, default="O-even")
    p.add_argument("--u", default="1")
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--cap", type=int, default=30)
    p.add_argument("--deg", type=int, default=8)
    p.add_argument("--draws", type=int, default=100)
    p.add_argument("--trials", type=int, default=10 ** 4)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_measures)

    p = sub.add_parser("orbits", help="congruence orbits and stabilizers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--gl", action="store_true")
    group.add_argument("--sl", action="store_true")
    group.add_argument("--stabilizers", action="store_true")
    group.add_argument("--structure", action="store_true")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("qseries", help="q-series identity checks")
    p.add_argument("--kind", required=True, choices=("euler", "qs1", "qs2", "qs3"))
    p.add_argument("--n-max", type=int, default=12)
    p.set_defaults(func=cmd_qseries)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "sample", False) or getattr(args, "compare", False):
        if args.seed is None:
            sys.stderr.write("error: sampling subcommands require --seed\n")
            return 2
    stream = io.StringIO() if args.output else sys.stdout
    out = Emitter(args.format, stream)
    try:
        args.func(args, out)
        out.close()
        status = 0
    except CheckFailure as exc:
        out.close()
        sys.stderr.write(f"check failed: {exc}\n")
        status = 1
    except (ValueError, NotImplementedError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(stream.getvalue())
    return status


if __name__ == "__main__":
    sys.exit(main())
