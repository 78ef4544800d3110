"""Command-line front end.

Commands: cohen, hurwitz, classnum, forms, hdn, verify, kronecker, selfcheck.
Exit codes: 0 success / everything verified, 1 mathematical mismatch,
2 usage or configuration error.  Rational values are printed as "p/q"
strings, never as decimals, in every output format.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from . import __version__, bqf, genus, quat, relations
from .qseries import cohen_coefficients
from .shimura import ShimuraLevel, weighted_class_number

CACHE_ENV_VAR = "HUMBERT_CACHE"
CACHE_HEADER = "humbert-classnum-cache"
CACHE_VERSION = 1

SELFCHECK_D0 = (10, 15, 21, 33)
SELFCHECK_Z_SAMPLES = 20


def fmt_rat(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_rat(text: str) -> Fraction:
    return Fraction(text)


# ---------------------------------------------------------------------------
# class-number cache file


def load_cache(path: str) -> None:
    """Load a class-number cache file; a corrupt file is ignored entirely."""
    if not os.path.exists(path):
        return
    entries: dict[int, int] = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            header = fh.readline().split()
            if len(header) != 2 or header[0] != CACHE_HEADER or int(header[1]) != CACHE_VERSION:
                raise ValueError("bad header")
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                d_str, h_str = line.split()
                d, h = int(d_str), int(h_str)
                if d >= 0 or h < 0:
                    raise ValueError("bad entry")
                entries[d] = h
    except (OSError, ValueError) as exc:
        print(f"warning: ignoring corrupt cache file {path}: {exc}", file=sys.stderr)
        return
    bqf.cache_update(entries)


def save_cache(path: str) -> None:
    """Atomically write the current class-number memo (write-temp-then-rename)."""
    entries = bqf.cache_snapshot()
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".humbert-cache-")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(f"{CACHE_HEADER} {CACHE_VERSION}\n")
            for d in sorted(entries):
                fh.write(f"{d} {entries[d]}\n")
        os.replace(tmp, path)
    except OSError as exc:
        print(f"warning: could not write cache file {path}: {exc}", file=sys.stderr)
        if os.path.exists(tmp):
            os.unlink(tmp)


def _cache_path(args) -> str | None:
    return getattr(args, "cache", None) or os.environ.get(CACHE_ENV_VAR)


# ---------------------------------------------------------------------------
# output helpers


def emit_json(command: str, params: dict, rows: list[dict], all_match: bool, extra: dict | None = None) -> None:
    doc = {"command": command, "params": params, "rows": rows, "all_match": all_match}
    if extra:
        doc.update(extra)
    print(json.dumps(doc, sort_keys=True))


def emit_csv(header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


# ---------------------------------------------------------------------------
# commands


def cmd_cohen(args) -> int:
    coeffs = cohen_coefficients(args.nmax)
    rows = [{"n": n, "a_n": a} for n, a in enumerate(coeffs)]
    if args.format == "json":
        emit_json("cohen", {"nmax": args.nmax}, rows, True, {"coefficients": coeffs})
    elif args.format == "csv":
        emit_csv(["n", "a_n"], [[n, a] for n, a in enumerate(coeffs)])
    else:
        for n, a in enumerate(coeffs):
            print(f"{n} {a}")
    return 0


def cmd_hurwitz(args) -> int:
    value = bqf.hurwitz(args.n)
    if args.format == "json":
        emit_json("hurwitz", {"n": args.n}, [{"n": args.n, "H": fmt_rat(value)}], True)
    elif args.format == "csv":
        emit_csv(["n", "H"], [[args.n, fmt_rat(value)]])
    else:
        print(fmt_rat(value))
    return 0


def cmd_classnum(args) -> int:
    value = bqf.class_number(args.d)
    if args.format == "json":
        emit_json("classnum", {"d": args.d}, [{"d": args.d, "h": value}], True)
    elif args.format == "csv":
        emit_csv(["d", "h"], [[args.d, value]])
    else:
        print(value)
    return 0


def _chars_str(form: genus.EligibleForm) -> str:
    return ";".join(f"{p}:{form.chars[p]}" for p in sorted(form.chars))


def cmd_forms(args) -> int:
    forms = genus.eligible_forms(args.d0)
    rows = []
    for f in forms:
        rows.append({
            "D0": f.d0, "a": f.form.a, "b": f.form.b, "c": f.form.c,
            "kind": f.kind, "chars": _chars_str(f), "D": f.D, "N": f.N,
            "ambiguous": f.ambiguous, "W": genus.atkin_lehner_group_order(f),
            "relation_applies": f.D > 1,
        })
    if args.format == "json":
        emit_json("forms", {"d0": args.d0}, rows, True)
    elif args.format == "csv":
        emit_csv(["D0", "a", "b", "c", "kind", "chars", "D", "N", "ambiguous", "W", "relation_applies"],
                 [[r["D0"], r["a"], r["b"], r["c"], r["kind"], r["chars"], r["D"], r["N"],
                   r["ambiguous"], r["W"], r["relation_applies"]] for r in rows])
    else:
        for r in rows:
            note = "" if r["relation_applies"] else "  [D=1: relation not applicable]"
            print(f"D0={r['D0']} form=({r['a']},{r['b']},{r['c']}) kind={r['kind']} "
                  f"chars={r['chars']} D={r['D']} N={r['N']} ambiguous={r['ambiguous']} "
                  f"|W|={r['W']}{note}")
    return 0


def cmd_hdn(args) -> int:
    level = ShimuraLevel(args.D, args.N)
    value = weighted_class_number(level, args.m)
    if args.format == "json":
        emit_json("hdn", {"D": args.D, "N": args.N, "m": fmt_rat(args.m)},
                  [{"D": args.D, "N": args.N, "m": fmt_rat(args.m), "H": fmt_rat(value)}], True)
    elif args.format == "csv":
        emit_csv(["D", "N", "m", "H"], [[args.D, args.N, fmt_rat(args.m), fmt_rat(value)]])
    else:
        print(fmt_rat(value))
    return 0


def _verify_rows(d0: int, nmax: int, jobs: int, only_form: bqf.BQF | None):
    forms = genus.eligible_forms(d0)
    if only_form is not None:
        canon = bqf.gl2_canonical(only_form)
        forms = [f for f in forms if f.form == canon]
    active = [f for f in forms if f.D > 1]
    skipped = [relations.skip_record(f) for f in forms if f.D == 1]
    tasks = [(f, n) for f in active for n in relations.admissible_n(nmax)]

    def run(task):
        return relations.verification_row(*task)

    if jobs > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(run, tasks))
    else:
        rows = [run(t) for t in tasks]
    # deterministic ordering regardless of executor: by form, then n
    rows.sort(key=lambda r: (r.form.a, r.form.b, r.form.c, r.n))
    return rows, skipped


def _print_counterexample(row: relations.VerificationRow) -> None:
    form = next(f for f in genus.eligible_forms(row.d0) if f.form == row.form)
    stats = relations.lattice_sum(form, row.n, collect_terms=True)
    print(f"counterexample: D0={row.d0} form=({row.form.a},{row.form.b},{row.form.c}) "
          f"n={row.n} lhs={fmt_rat(row.lhs)} rhs={fmt_rat(row.rhs)} a_n={row.a_n}")
    print("nonzero terms of the lattice sum:")
    for u, v, m, h in stats.terms:
        print(f"  u={u} v={v} m={fmt_rat(m)} H={fmt_rat(h)}")


def cmd_verify(args) -> int:
    cache = _cache_path(args)
    if cache:
        load_cache(cache)
    only_form = None
    if args.form:
        try:
            a, b, c = (int(part) for part in args.form.split(","))
        except ValueError:
            print("error: --form expects three comma-separated integers", file=sys.stderr)
            return 2
        only_form = bqf.BQF(a, b, c)
    rows, skipped = _verify_rows(args.d0, args.nmax, args.jobs, only_form)
    all_match = all(r.match for r in rows)
    if args.format == "json":
        emit_json("verify",
                  {"d0": args.d0, "nmax": args.nmax, "jobs": args.jobs},
                  [{"D0": r.d0, "a": r.form.a, "b": r.form.b, "c": r.form.c,
                    "D": r.D, "N": r.N, "n": r.n, "lhs": fmt_rat(r.lhs),
                    "rhs": fmt_rat(r.rhs), "match": r.match} for r in rows],
                  all_match,
                  {"skipped": [{"a": s.form.a, "b": s.form.b, "c": s.form.c,
                                "reason": s.reason} for s in skipped]})
    elif args.format == "csv":
        emit_csv(["D0", "a", "b", "c", "D", "N", "n", "lhs", "rhs", "match"],
                 [[r.d0, r.form.a, r.form.b, r.form.c, r.D, r.N, r.n,
                   fmt_rat(r.lhs), fmt_rat(r.rhs), r.match] for r in rows])
    else:
        for s in skipped:
            print(f"skipped form=({s.form.a},{s.form.b},{s.form.c}) D={s.D} N={s.N}: {s.reason}")
        for r in rows:
            print(f"D0={r.d0} form=({r.form.a},{r.form.b},{r.form.c}) D={r.D} N={r.N} "
                  f"n={r.n} lhs={fmt_rat(r.lhs)} rhs={fmt_rat(r.rhs)} match={r.match}")
        print(f"all_match={all_match} rows={len(rows)} skipped={len(skipped)}")
    if cache:
        save_cache(cache)
    if not all_match:
        first_bad = next(r for r in rows if not r.match)
        _print_counterexample(first_bad)
        return 1
    return 0


def cmd_kronecker(args) -> int:
    rows = relations.verify_kronecker(args.nmax)
    all_match = all(r.match for r in rows)
    if args.format == "json":
        emit_json("kronecker", {"nmax": args.nmax},
                  [{"n": r.n, "lhs": fmt_rat(r.lhs), "rhs": fmt_rat(r.rhs),
                    "match": r.match} for r in rows], all_match)
    elif args.format == "csv":
        emit_csv(["n", "lhs", "rhs", "match"],
                 [[r.n, fmt_rat(r.lhs), fmt_rat(r.rhs), r.match] for r in rows])
    else:
        for r in rows:
            print(f"n={r.n} lhs={fmt_rat(r.lhs)} rhs={fmt_rat(r.rhs)} match={r.match}")
        print(f"all_match={all_match}")
    return 0 if all_match else 1


def _selfcheck_form(form: genus.EligibleForm, rng: random.Random) -> tuple[bool, str]:
    ob = quat.build_order(form)       # raises if closure fails
    problems = []
    if quat.reduced_discriminant(ob) != ob.dn:
        problems.append("reduced discriminant != D*N")
    of = quat.order_form(ob)
    if bqf.gl2_canonical(of) != form.form:
        problems.append("order form not GL2-equivalent to source")
    q = quat.order_form(ob)
    for n in (1, 2, 3):
        for u in range(-2, 3):
            for v in range(-2, 3):
                if quat.det3(quat.bordered_gram(ob, n, u, v)) != 4 * ob.dn * n - q(v, -u):
                    problems.append(f"det identity fails at (n,u,v)=({n},{u},{v})")
    worst = 0.0
    for _ in range(SELFCHECK_Z_SAMPLES):
        z = complex(rng.uniform(-1.0, 1.0), rng.uniform(0.2, 2.0))
        check = quat.period_matrix_check(ob, z)
        worst = max(worst, check.max_residual)
        if not check.ok:
            problems.append(f"period residual {check.max_residual:.3e} at z={z}")
            break
    b_choices = range(-6, 7)
    for _ in range(20):
        if ob.kind == "primitive":
            b1, b2, b3 = rng.choice(b_choices), 2 * rng.randrange(-3, 4), 2 * rng.randrange(-3, 4)
        else:
            b1, b2, b3 = 2 * rng.randrange(-3, 4), rng.choice(b_choices), 2 * rng.randrange(-3, 4)
        gram = quat.cm_singular_gram(ob, b1, b2, b3)
        det = (gram[0][0] * (gram[1][1] * gram[2][2] - gram[1][2] ** 2)
               - gram[0][1] * (gram[0][1] * gram[2][2] - gram[1][2] * gram[0][2])
               + gram[0][2] * (gram[0][1] * gram[1][2] - gram[1][1] * gram[0][2]))
        bb1, bb2, bb3 = quat.trace_zero_basis(ob)
        elt = b1 * bb1 + b2 * bb2 + b3 * bb3
        if det != 4 * elt.norm():
            problems.append(f"cm gram determinant mismatch at b=({b1},{b2},{b3})")
            break
    detail = "; ".join(problems) if problems else f"max period residual {worst:.3e}"
    return (not problems, detail)


def cmd_selfcheck(args) -> int:
    d0_list = [args.d0] if args.d0 else list(SELFCHECK_D0)
    rng = random.Random(20240901)
    failures = 0
    for d0 in d0_list:
        for form in genus.eligible_forms(d0):
            if form.D == 1:
                continue
            ok, detail = _selfcheck_form(form, rng)
            status = "ok" if ok else "FAIL"
            print(f"selfcheck D0={d0} form=({form.form.a},{form.form.b},{form.form.c}) "
                  f"kind={form.kind}: {status} ({detail})")
            failures += 0 if ok else 1
    print(f"selfcheck: {'all passed' if failures == 0 else f'{failures} failure(s)'}")
    return 0 if failures == 0 else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="humbert",
        description="Exact class-number relation calculator and verifier.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("cohen", help="coefficients of the weight-5/2 Cohen-type series")
    p.add_argument("--nmax", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_cohen)

    p = sub.add_parser("hurwitz", help="Hurwitz class number H(n)")
    p.add_argument("n", type=int)
    add_format(p)
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("classnum", help="class number h(d) for a negative discriminant")
    p.add_argument("d", type=int)
    add_format(p)
    p.set_defaults(func=cmd_classnum)

    p = sub.add_parser("forms", help="eligible forms of discriminant -16*D0 with characters")
    p.add_argument("--d0", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("hdn", help="weighted class number of a Shimura level at m")
    p.add_argument("D", type=int)
    p.add_argument("N", type=int)
    p.add_argument("m", type=parse_rat)
    add_format(p)
    p.set_defaults(func=cmd_hdn)

    p = sub.add_parser("verify", help="verify the class-number relation for a D0")
    p.add_argument("--d0", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--form", type=str, default=None, metavar="a,b,c",
                   help="restrict to the GL2-class of this form")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--cache", type=str, default=None,
                   help=f"class-number cache file (or ${CACHE_ENV_VAR})")
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("kronecker", help="verify the Hurwitz-Kronecker relation up to nmax")
    p.add_argument("--nmax", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_kronecker)

    p = sub.add_parser("selfcheck", help="run the quaternion-order property suite")
    p.add_argument("--d0", type=int, default=None)
    p.set_defaults(func=cmd_selfcheck)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
