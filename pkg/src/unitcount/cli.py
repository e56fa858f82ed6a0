"""Command-line entry point.

Subcommands: count, sweep, bound, family, growth, audit, equation.  Every run
is determined by the invocation plus its input files; timing appears only in
clearly marked columns.  Exit codes: 0 success, 1 domain error, 2 budget
exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import growth as growth_mod
from .bounds import bound_table, nondegenerate_cap_log10
from .equations import (
    classify_by_vanishing_subsums,
    count_solutions,
    count_system_sum_squares,
    load_equation,
)
from .families import load_set, set_to_json
from .matrices import (
    BudgetExceededError,
    CharPolyKey,
    SweepOptions,
    count_charpoly,
    count_det,
    count_power_sums,
    count_rank,
    sweep,
)
from .minors import audit_prop_zero_cofactors
from .scalars import parse_scalar


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage problems as exit code 1."""

    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def _budget_value(text: str) -> int:
    # accept scientific notation like 2e8
    return int(float(text))


def _write_text(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        Path(out).write_text(text, encoding="utf-8")


def _sweep_options(args, **stats) -> SweepOptions:
    return SweepOptions(budget=args.budget, shards=args.shards, **stats)


# -- count ---------------------------------------------------------------------


def _cmd_count(args) -> int:
    elements = load_set(args.set)
    field = elements.field
    if args.stat == "det":
        target = parse_scalar(args.d, field)
        opts = _sweep_options(args, rank=False, det=True)
        print(count_det(elements, args.n, target, options=opts))
    elif args.stat == "rank":
        opts = _sweep_options(args, rank=True, det=False)
        print(
            count_rank(
                elements,
                args.m,
                args.n,
                args.r,
                cumulative=not args.exact,
                options=opts,
            )
        )
    elif args.stat == "charpoly":
        key = CharPolyKey.from_text(args.coeffs, field)
        opts = _sweep_options(args, rank=False, det=False, charpoly=True)
        print(count_charpoly(elements, args.n, key, options=opts))
    else:
        t1 = parse_scalar(args.t1, field)
        t2 = parse_scalar(args.t2, field)
        opts = _sweep_options(args, rank=False, det=False, powersums=True)
        print(count_power_sums(elements, args.n, t1, t2, options=opts))
    return 0


# -- sweep ---------------------------------------------------------------------

_STAT_NAMES = ("rank", "det", "charpoly", "powersums")


def _cmd_sweep(args) -> int:
    elements = load_set(args.set)
    wanted = [s.strip() for s in args.stats.split(",") if s.strip()]
    unknown = [s for s in wanted if s not in _STAT_NAMES]
    if unknown:
        raise ValueError(f"unknown statistics {unknown}; expected {_STAT_NAMES}")
    if not wanted:
        raise ValueError("no statistics requested")
    opts = SweepOptions(
        rank="rank" in wanted,
        det="det" in wanted,
        charpoly="charpoly" in wanted,
        powersums="powersums" in wanted,
        budget=args.budget,
        shards=args.shards,
    )
    hist = sweep(elements, args.m, args.n, options=opts)
    hist.validate()
    lines = ["statistic,key,count"]
    for statistic, key, count in hist.csv_rows():
        lines.append(f"{statistic},\"{key}\",{count}")
    _write_text("\n".join(lines) + "\n", args.out)
    return 0


# -- bound ---------------------------------------------------------------------


def _print_bound_rows(rows) -> None:
    width = max(len(r.source) for r in rows)
    rwidth = max(len(r.regime) for r in rows)
    for row in rows:
        print(f"{row.source:<{width}}  {row.regime:<{rwidth}}  {row.value}")


def _cmd_bound(args) -> int:
    kind = args.kind
    if kind == "rank":
        rows = bound_table("rank", n=args.n, m=args.m, r=args.r)
    elif kind == "det":
        rows = bound_table("det", n=args.n, target_is_zero=not args.nonzero)
    elif kind == "charpoly":
        if args.n == 2:
            rows = bound_table(
                "charpoly", n=2, c0_zero=args.c0_zero, c1_zero=args.c1_zero
            )
        else:
            rows = bound_table(
                "charpoly",
                n=args.n,
                c1_zero=args.c1_zero,
                c2_zero=args.c2_zero,
                field_real=not args.complex_entries,
                twice_c2_equals_c1=args.twice_c2_equals_c1,
                constant_term_zero=args.c0_zero or None,
            )
    elif kind == "equation":
        rows = bound_table("equation", n=args.n, homogeneous=not args.inhomogeneous)
    elif kind == "system":
        rows = bound_table("system", n=args.n)
    else:
        digits = nondegenerate_cap_log10(args.n, args.group_rank)
        print(f"log10(cap) = {digits}")
        return 0
    _print_bound_rows(rows)
    return 0


# -- family --------------------------------------------------------------------


def _cmd_family(args) -> int:
    elements = load_set(args.spec)
    text = json.dumps(set_to_json(elements), indent=2, sort_keys=True) + "\n"
    _write_text(text, args.out)
    return 0


# -- growth --------------------------------------------------------------------


def _cmd_growth(args) -> int:
    if args.list:
        for name in growth_mod.list_presets():
            print(name)
        return 0
    if args.config:
        spec = growth_mod.load_experiment(args.config)
    elif args.preset:
        spec = growth_mod.preset(args.preset)
    else:
        raise ValueError("growth needs --config FILE, --preset NAME, or --list")
    result = growth_mod.run_experiment(spec)
    report = growth_mod.analyze(result)
    if args.out:
        csv_path, json_path = growth_mod.emit(result, report, args.out)
        print(f"wrote {csv_path} and {json_path}")
    else:
        print(json.dumps(report.to_json(), indent=2, sort_keys=True))
    print(
        f"{report.name}: slope={report.fit.slope:.6f}"
        f" theoretical={report.theoretical} verdict={report.verdict}"
    )
    return 0


# -- audit ---------------------------------------------------------------------


def _cmd_audit(args) -> int:
    elements = load_set(args.set)
    summary = audit_prop_zero_cofactors(
        elements,
        args.n,
        args.trials,
        args.seed,
        min_nonsingular=args.min_nonsingular,
    )
    text = json.dumps(summary.to_json(), indent=2, sort_keys=True) + "\n"
    _write_text(text, args.out)
    return 0 if summary.passed else 1


# -- equation ------------------------------------------------------------------


def _cmd_equation(args) -> int:
    if args.action == "system":
        elements = load_set(args.set)
        print(count_system_sum_squares(args.n, elements))
        return 0
    eq = load_equation(args.eq)
    elements = load_set(args.set)
    if args.action == "count":
        if args.max_entries is not None:
            print(count_solutions(eq, elements, max_entries=args.max_entries))
        else:
            print(count_solutions(eq, elements))
        return 0
    classification = classify_by_vanishing_subsums(eq, elements)
    classes = {
        ",".join(str(i) for i in indices) if indices else "none": count
        for indices, count in classification.classes.items()
    }
    obj = {"classes": classes, "total": classification.total}
    print(json.dumps(obj, indent=2, sort_keys=True))
    return 0


# -- parser --------------------------------------------------------------------


def _add_budget_shards(p) -> None:
    p.add_argument(
        "--budget",
        type=_budget_value,
        default=None,
        help="work cap for sweeps (accepts 2e8 style; default from UNITCOUNT_BUDGET)",
    )
    p.add_argument("--shards", type=int, default=1, help="sweep shard count")


def build_parser() -> _Parser:
    parser = _Parser(prog="unitcount", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    # count
    p_count = sub.add_parser("count", help="count matrices with a fixed statistic")
    count_sub = p_count.add_subparsers(dest="stat", required=True)
    p_det = count_sub.add_parser("det", help="matrices with a given determinant")
    p_det.add_argument("--set", required=True, help="element set JSON file")
    p_det.add_argument("-n", type=int, required=True, help="matrix dimension")
    p_det.add_argument("--d", required=True, help="determinant target scalar")
    _add_budget_shards(p_det)
    p_rank = count_sub.add_parser("rank", help="matrices of bounded or exact rank")
    p_rank.add_argument("--set", required=True)
    p_rank.add_argument("-m", type=int, required=True, help="rows")
    p_rank.add_argument("-n", type=int, required=True, help="columns")
    p_rank.add_argument("-r", type=int, required=True, help="rank threshold")
    p_rank.add_argument(
        "--exact",
        action="store_true",
        help="count rank == r instead of rank <= r",
    )
    _add_budget_shards(p_rank)
    p_cp = count_sub.add_parser("charpoly", help="matrices with a given charpoly")
    p_cp.add_argument("--set", required=True)
    p_cp.add_argument("-n", type=int, required=True)
    p_cp.add_argument(
        "--coeffs",
        required=True,
        help="comma list c_0,...,c_{n-1} of non-leading coefficients",
    )
    _add_budget_shards(p_cp)
    p_ps = count_sub.add_parser(
        "powersums", help="matrices with given tr X and tr X^2"
    )
    p_ps.add_argument("--set", required=True)
    p_ps.add_argument("-n", type=int, required=True)
    p_ps.add_argument("--t1", required=True, help="trace target")
    p_ps.add_argument("--t2", required=True, help="trace-of-square target")
    _add_budget_shards(p_ps)
    p_count.set_defaults(handler=_cmd_count)

    # sweep
    p_sweep = sub.add_parser("sweep", help="full histogram sweep over all matrices")
    p_sweep.add_argument("--set", required=True)
    p_sweep.add_argument("-m", type=int, required=True, help="rows")
    p_sweep.add_argument("-n", type=int, required=True, help="columns")
    p_sweep.add_argument(
        "--stats",
        default="rank,det",
        help="comma list from rank,det,charpoly,powersums",
    )
    p_sweep.add_argument("--out", default=None, help="output CSV path ('-' stdout)")
    _add_budget_shards(p_sweep)
    p_sweep.set_defaults(handler=_cmd_sweep)

    # bound
    p_bound = sub.add_parser("bound", help="print theoretical exponents")
    bound_sub = p_bound.add_subparsers(dest="kind", required=True)
    b_rank = bound_sub.add_parser("rank", help="rank-count exponent")
    b_rank.add_argument("-n", type=int, required=True)
    b_rank.add_argument("-m", type=int, required=True)
    b_rank.add_argument("-r", type=int, required=True)
    b_det = bound_sub.add_parser("det", help="determinant-count exponent")
    b_det.add_argument("-n", type=int, required=True)
    b_det.add_argument(
        "--nonzero", action="store_true", help="nonzero determinant target"
    )
    b_cp = bound_sub.add_parser("charpoly", help="charpoly-count exponent")
    b_cp.add_argument("-n", type=int, required=True)
    b_cp.add_argument("--c0-zero", action="store_true", help="constant term is zero")
    b_cp.add_argument("--c1-zero", action="store_true", help="trace coefficient zero")
    b_cp.add_argument("--c2-zero", action="store_true", help="second coefficient zero")
    b_cp.add_argument(
        "--twice-c2-equals-c1", action="store_true", help="2*c2 equals c1"
    )
    b_cp.add_argument(
        "--complex-entries",
        action="store_true",
        help="entries from the Gaussian rationals",
    )
    b_eq = bound_sub.add_parser("equation", help="linear-equation solution exponent")
    b_eq.add_argument("-n", type=int, required=True)
    b_eq.add_argument("--inhomogeneous", action="store_true")
    b_sys = bound_sub.add_parser("system", help="sum and sum-of-squares system")
    b_sys.add_argument("-n", type=int, required=True)
    b_cap = bound_sub.add_parser(
        "cap", help="log10 of the nondegenerate-solution cap"
    )
    b_cap.add_argument("-n", type=int, required=True)
    b_cap.add_argument(
        "--group-rank", type=int, required=True, help="rank of the ambient group"
    )
    p_bound.set_defaults(handler=_cmd_bound)

    # family
    p_family = sub.add_parser("family", help="materialize a family spec to a set")
    p_family.add_argument("--spec", required=True, help="family or set JSON file")
    p_family.add_argument("--out", default=None, help="output path ('-' stdout)")
    p_family.set_defaults(handler=_cmd_family)

    # growth
    p_growth = sub.add_parser("growth", help="run a growth experiment")
    p_growth.add_argument("--config", default=None, help="experiment config JSON")
    p_growth.add_argument("--preset", default=None, help="preconfigured experiment")
    p_growth.add_argument("--list", action="store_true", help="list presets")
    p_growth.add_argument("--out", default=None, help="output directory")
    p_growth.set_defaults(handler=_cmd_growth)

    # audit
    p_audit = sub.add_parser("audit", help="randomized property audits")
    audit_sub = p_audit.add_subparsers(dest="what", required=True)
    a_minors = audit_sub.add_parser(
        "minors", help="cofactor-expansion audit of random matrices"
    )
    a_minors.add_argument("--set", required=True)
    a_minors.add_argument("-n", type=int, required=True)
    a_minors.add_argument("--trials", type=int, default=100)
    a_minors.add_argument("--seed", type=int, default=0)
    a_minors.add_argument(
        "--min-nonsingular",
        type=int,
        default=0,
        help="keep sampling until this many nonsingular matrices were checked",
    )
    a_minors.add_argument("--out", default=None, help="output path ('-' stdout)")
    p_audit.set_defaults(handler=_cmd_audit)

    # equation
    p_eq = sub.add_parser("equation", help="linear equations over an element set")
    eq_sub = p_eq.add_subparsers(dest="action", required=True)
    e_count = eq_sub.add_parser("count", help="count solution tuples")
    e_count.add_argument("--eq", required=True, help="equation JSON file")
    e_count.add_argument("--set", required=True)
    e_count.add_argument(
        "--max-entries",
        type=_budget_value,
        default=None,
        help="memory cap for the meet-in-the-middle table",
    )
    e_classify = eq_sub.add_parser(
        "classify", help="group solutions by first vanishing subsum"
    )
    e_classify.add_argument("--eq", required=True)
    e_classify.add_argument("--set", required=True)
    e_system = eq_sub.add_parser(
        "system", help="count tuples with vanishing sum and sum of squares"
    )
    e_system.add_argument("-n", type=int, required=True)
    e_system.add_argument("--set", required=True)
    p_eq.set_defaults(handler=_cmd_equation)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
