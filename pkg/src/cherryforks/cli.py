"""Command-line interface.

Subcommands
-----------
generate    sample random trees (Newick lines) or an (a, b) histogram
dist        exact joint/marginal tables as CSV or JSON
moments     closed-form moment table, one CSV row per n
tvd         rooted-vs-unrooted cherry TV distances over an n range
analyze     shape checks: logconcave | mode | changepoint | identities
count       per-tree (a, b) for a file of Newick trees
verify      oracle-vs-recursion-vs-closed-form equality matrix

Conventions: exact values are printed as separate numerator/denominator
columns plus a convenience float; every command is deterministic given its
flags (and seed); ``--out -`` or omitting ``--out`` writes to stdout, and
relative output paths resolve against ``$CHERRYFORKS_OUT_DIR`` when set.
Rooted Newick input/output marks the top split with the label ``R``; the
``--rooted`` flag forces the rooted reading regardless of the marker.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import analysis, distributions as dist, moments, oracle
from .growth import Model, grow, sample_counts
from .newick import parse_newick, write_newick
from .trees import TreeError, count_subtrees

OUT_DIR_ENV = "CHERRYFORKS_OUT_DIR"


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        return
    path = out
    if not os.path.isabs(path):
        base = os.environ.get(OUT_DIR_ENV, "")
        if base:
            path = os.path.join(base, path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _parse_n_range(text: str) -> tuple[int, int]:
    if ".." in text:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def _float_repr(x: Fraction) -> str:
    return repr(float(x))


# ---------------------------------------------------------------------------
# generate
# ---------------------------------------------------------------------------


def _cmd_generate(args: argparse.Namespace) -> int:
    model = Model.parse(args.model)
    if args.hist:
        hist = sample_counts(model, args.n, rooted=args.rooted,
                             reps=args.reps, seed=args.seed)
        lines = ["a,b,count"]
        for (a, b) in sorted(hist):
            lines.append(f"{a},{b},{hist[(a, b)]}")
        _emit("\n".join(lines) + "\n", args.out)
        return 0
    lines = []
    for rep in range(args.reps):
        tree, _ = grow(model, args.n, rooted=args.rooted,
                       seed=(args.seed, rep))
        lines.append(write_newick(tree))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# dist
# ---------------------------------------------------------------------------


def _joint_rows(pmf: dist.JointPmf) -> list[dict]:
    rows = []
    for (a, b) in sorted(pmf.table, key=lambda ab: (ab[1], ab[0])):
        p = pmf.table[(a, b)]
        rows.append({"a": a, "b": b, "numerator": p.numerator,
                     "denominator": p.denominator, "float64": float(p)})
    return rows


def _marginal_rows(pmf: dist.MarginalPmf) -> list[dict]:
    rows = []
    for k in sorted(pmf.table):
        p = pmf.table[k]
        rows.append({"k": k, "numerator": p.numerator,
                     "denominator": p.denominator, "float64": float(p)})
    return rows


def _rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return "\n"
    header = list(rows[0])
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(repr(v) if isinstance(v, float) else str(v)
                              for v in (row[h] for h in header)))
    return "\n".join(lines) + "\n"


def _cmd_dist(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    model = Model.parse(args.model)
    kind = args.which
    try:
        if kind == "joint":
            if args.rooted:
                parser.error("rooted joint tables are not provided by the "
                             "recursions; use the verify oracle for n <= 9")
            table = dist.joint_unrooted(model, args.n)
            rows = _joint_rows(table)
            meta = {"model": model.value, "rooted": False, "n": args.n,
                    "kind": "joint"}
        elif kind == "cherry":
            pmf = (dist.cherry_pmf_rooted(model, args.n) if args.rooted
                   else dist.cherry_pmf_unrooted(model, args.n))
            rows = _marginal_rows(pmf)
            meta = {"model": model.value, "rooted": args.rooted, "n": args.n,
                    "kind": "cherry"}
        else:  # pitchfork
            if args.rooted:
                parser.error("rooted pitchfork marginals are out of scope; "
                             "only moments are available for rooted "
                             "pitchforks")
            joint = dist.joint_unrooted(model, args.n)
            pmf = dist.marginal_from_joint(joint, "pitchfork")
            rows = _marginal_rows(pmf)
            meta = {"model": model.value, "rooted": False, "n": args.n,
                    "kind": "pitchfork"}
    except TreeError as exc:
        parser.error(str(exc))
        return 2
    if args.format == "json":
        _emit(json.dumps({**meta, "entries": rows}, indent=2) + "\n",
              args.out)
    else:
        _emit(_rows_to_csv(rows), args.out)
    return 0


# ---------------------------------------------------------------------------
# moments
# ---------------------------------------------------------------------------


def _cmd_moments(args: argparse.Namespace) -> int:
    lo, hi = args.n
    model_sel = ([Model.parse(args.model)] if args.model
                 else [Model.PDA, Model.YHK])
    rooted_sel = ([args.rooted] if args.rooted is not None
                  else [True, False])
    combos = [(m, r) for m in model_sel for r in rooted_sel]
    header = ["n"]
    for m, r in combos:
        tag = f"{m.value}_{'rooted' if r else 'unrooted'}"
        for field in moments.FIELDS:
            header.extend([f"{tag}_{field}", f"{tag}_{field}_float"])
    lines = [",".join(header)]
    for n in range(lo, hi + 1):
        row = [str(n)]
        for m, r in combos:
            for field in moments.FIELDS:
                v = moments.table_value(m, r, field, n)
                if v is None:
                    row.extend(["", ""])
                else:
                    row.extend([f"{v.numerator}/{v.denominator}",
                                repr(float(v))])
        lines.append(",".join(row))
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# tvd
# ---------------------------------------------------------------------------


def _cmd_tvd(args: argparse.Namespace) -> int:
    lo, hi = args.n
    models = ([Model.parse(args.model)] if args.model
              else [Model.YHK, Model.PDA])
    lines = ["n,model,tvd_numerator,tvd_denominator,tvd_float"]
    for model in models:
        seq = analysis.tvd_sequence(model, lo, max(hi, lo + 1))
        for n, d in zip(seq.n_values, seq.distances):
            if n > hi:
                break
            lines.append(f"{n},{model.value},{d.numerator},{d.denominator},"
                         f"{float(d)!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------


def _analyze_pmf(model: Model, rooted: bool, statistic: str, n: int):
    if statistic == "cherry":
        return (dist.cherry_pmf_rooted(model, n) if rooted
                else dist.cherry_pmf_unrooted(model, n))
    if rooted:
        raise TreeError("rooted pitchfork marginals are out of scope")
    return dist.marginal_from_joint(dist.joint_unrooted(model, n),
                                    "pitchfork")


def _cmd_analyze(args: argparse.Namespace,
                 parser: argparse.ArgumentParser) -> int:
    lo, hi = args.n
    if args.check == "identities":
        ok = analysis.floor_identities_hold(hi, n_min=max(lo, 4))
        print(f"{'PASS' if ok else 'FAIL'} quarter-point floor identities "
              f"for n <= {hi}")
        return 0 if ok else 1
    model = Model.parse(args.model)
    lines: list[str] = []
    try:
        if args.check == "logconcave":
            lines.append("n,model,rooted,statistic,log_concave,modes,"
                         "first_violation")
            for n in range(lo, hi + 1):
                pmf = _analyze_pmf(model, args.rooted, args.statistic, n)
                rep = analysis.log_concavity(pmf)
                lines.append(
                    f"{n},{model.value},{args.rooted},{args.statistic},"
                    f"{rep.is_log_concave},{'|'.join(map(str, rep.modes))},"
                    f"{'' if rep.first_violation is None else rep.first_violation}")
        elif args.check == "mode":
            lines.append("n,model,rooted,statistic,modes,quarter_ceil")
            for n in range(lo, hi + 1):
                pmf = _analyze_pmf(model, args.rooted, args.statistic, n)
                rep = analysis.log_concavity(pmf)
                lines.append(f"{n},{model.value},{args.rooted},"
                             f"{args.statistic},"
                             f"{'|'.join(map(str, rep.modes))},"
                             f"{analysis.nabla(n)}")
        else:  # changepoint
            lines.append("n,kappa_low,kappa_high")
            for n, (k_lo, k_hi) in sorted(
                    analysis.change_point_scan(max(lo, 6), hi).items()):
                lines.append(f"{n},{k_lo},{k_hi}")
    except TreeError as exc:
        parser.error(str(exc))
        return 2
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# count
# ---------------------------------------------------------------------------


def _cmd_count(args: argparse.Namespace,
               parser: argparse.ArgumentParser) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            texts = [line.strip() for line in fh if line.strip()]
    except OSError as exc:
        parser.error(str(exc))
        return 2
    lines = ["a,b"]
    for text in texts:
        tree = parse_newick(text, rooted=True if args.rooted else None)
        c = count_subtrees(tree)
        lines.append(f"{c.a},{c.b}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify(args: argparse.Namespace) -> int:
    max_n = args.max_n
    results: list[tuple[str, bool]] = []

    def check(name: str, ok: bool) -> None:
        results.append((name, ok))
        print(f"{'PASS' if ok else 'FAIL'}  {name}")

    base = {Model.PDA: {(2, 2): Fraction(6, 7), (0, 3): Fraction(1, 7)},
            Model.YHK: {(2, 2): Fraction(4, 5), (0, 3): Fraction(1, 5)}}
    for model in (Model.PDA, Model.YHK):
        check(f"{model.value} joint base n=6",
              dict(dist.joint_unrooted(model, 6).table) == base[model])

    for model in (Model.PDA, Model.YHK):
        cap = min(max_n, oracle.PATH_ENUM_MAX_N[model])
        for n in range(6, cap + 1):
            paths = oracle.exact_by_path_enumeration(model, n)
            check(f"{model.value} joint n={n} == path enumeration",
                  dict(paths.table) == dict(dist.joint_unrooted(model, n).table))

    for n in range(6, min(max_n, oracle.TREE_ENUM_MAX_N) + 1):
        trees = oracle.exact_by_tree_enumeration(n)
        check(f"pda joint n={n} == tree enumeration",
              dict(trees.table) == dict(dist.joint_unrooted(Model.PDA, n).table))
        cherry = dist.marginal_from_joint(trees, "cherry")
        check(f"pda cherry marginal n={n} == closed form",
              dict(cherry.table) == dist.pda_cherry_closed_form(n))

    for n in range(4, min(max_n, oracle.PATH_ENUM_MAX_N[Model.PDA]) + 1):
        check(f"pda paths n={n} == trees",
              dict(oracle.exact_by_path_enumeration(Model.PDA, n).table)
              == dict(oracle.exact_by_tree_enumeration(n).table))

    for n in range(4, min(max_n, 8) + 1):
        rooted = oracle.exact_by_tree_enumeration(n, rooted=True)
        cherry = dist.marginal_from_joint(rooted, "cherry")
        check(f"pda rooted cherry n={n} == closed form",
              dict(cherry.table) == dist.pda_rooted_cherry_closed_form(n))

    for n in range(4, min(max_n, oracle.PATH_ENUM_MAX_N[Model.YHK]) + 1):
        rooted = oracle.exact_by_path_enumeration(Model.YHK, n, rooted=True)
        cherry = dist.marginal_from_joint(rooted, "cherry")
        check(f"yhk rooted cherry n={n} == recursion",
              dict(cherry.table) == dict(dist.cherry_pmf_rooted(Model.YHK, n).table))

    rec = {p.n: dict(p.table)
           for p in dist.iter_cherry_pmfs(Model.PDA, False, 128)}
    check("pda cherry closed form == recursion, n <= 128",
          all(rec[n] == dist.pda_cherry_closed_form(n)
              for n in range(4, 129)))
    check("pda rooted cherry closed form == unrooted mixture, n <= 128",
          all(dist.pda_rooted_cherry_closed_form(n)
              == dist.pda_rooted_cherry_from_unrooted(n)
              for n in range(4, 129)))
    check("yhk rooted single-cherry boundary mass, n <= 64",
          all(dist.cherry_pmf_rooted(Model.YHK, n).prob(1)
              == dist.yhk_rooted_single_cherry_mass(n)
              for n in range(2, 65)))

    failed = [name for name, ok in results if not ok]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return 1 if failed else 0


# ---------------------------------------------------------------------------
# parser wiring
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cherryforks",
        description="Exact and simulated cherry/pitchfork statistics on "
                    "random binary phylogenetic trees.",
        epilog="Rooted Newick trees mark the top split with the label 'R'; "
               "internally a degree-one root vertex is kept above that "
               "split. Set CHERRYFORKS_BACKEND=numpy to disable the numba "
               "kernels.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model(p, required=True):
        p.add_argument("--model", choices=["yhk", "pda"], required=required)

    p = sub.add_parser("generate", help="sample random trees")
    add_model(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rooted", action="store_true")
    p.add_argument("--reps", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hist", action="store_true",
                   help="emit an a,b,count histogram instead of Newick lines")
    p.add_argument("--out", default=None)

    p = sub.add_parser("dist", help="exact distribution tables")
    add_model(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rooted", action="store_true")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--joint", dest="which", action="store_const",
                       const="joint")
    group.add_argument("--cherry", dest="which", action="store_const",
                       const="cherry")
    group.add_argument("--pitchfork", dest="which", action="store_const",
                       const="pitchfork")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", default=None)

    p = sub.add_parser("moments", help="closed-form moment table")
    add_model(p, required=False)
    p.add_argument("--n", type=_parse_n_range, required=True,
                   metavar="N|A..B")
    rooted = p.add_mutually_exclusive_group()
    rooted.add_argument("--rooted", dest="rooted", action="store_true",
                        default=None)
    rooted.add_argument("--unrooted", dest="rooted", action="store_false")
    p.add_argument("--out", default=None)

    p = sub.add_parser("tvd", help="rooted-vs-unrooted cherry TV distances")
    add_model(p, required=False)
    p.add_argument("--n", type=_parse_n_range, required=True,
                   metavar="N|A..B")
    p.add_argument("--out", default=None)

    p = sub.add_parser("analyze", help="shape and identity checks")
    p.add_argument("--check", required=True,
                   choices=["logconcave", "mode", "changepoint", "identities"])
    p.add_argument("--model", choices=["yhk", "pda"], default="pda")
    p.add_argument("--rooted", action="store_true")
    p.add_argument("--statistic", choices=["cherry", "pitchfork"],
                   default="cherry")
    p.add_argument("--n", type=_parse_n_range, required=True,
                   metavar="N|A..B")
    p.add_argument("--out", default=None)

    p = sub.add_parser("count", help="count cherries/pitchforks in a "
                                     "Newick file (one tree per line)")
    p.add_argument("file")
    p.add_argument("--rooted", action="store_true",
                   help="force the rooted reading even without an R marker")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="oracle equality matrix")
    p.add_argument("--max-n", type=int, default=8, dest="max_n",
                   help="cap for the enumeration oracles (tree enumeration "
                        "grows as (2n-5)!!; 8 keeps it instant, 9 is the "
                        "hard limit)")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "generate":
            if args.n < 2 or (not args.rooted and args.hist and args.n < 4):
                parser.error("need n >= 2 (n >= 4 for unrooted histograms)")
            if args.reps < 1:
                parser.error("need reps >= 1")
            return _cmd_generate(args)
        if args.command == "dist":
            return _cmd_dist(args, parser)
        if args.command == "moments":
            if args.n[0] < 4:
                parser.error("closed-form moments start at n = 4")
            return _cmd_moments(args)
        if args.command == "tvd":
            if args.n[0] < 4:
                parser.error("TV distances start at n = 4")
            return _cmd_tvd(args)
        if args.command == "analyze":
            return _cmd_analyze(args, parser)
        if args.command == "count":
            return _cmd_count(args, parser)
        if args.command == "verify":
            if not 4 <= args.max_n <= oracle.TREE_ENUM_MAX_N:
                parser.error(f"--max-n must be between 4 and "
                             f"{oracle.TREE_ENUM_MAX_N}")
            return _cmd_verify(args)
        parser.error(f"unknown command {args.command!r}")
        return 2
    except TreeError as exc:
        parser.error(str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
