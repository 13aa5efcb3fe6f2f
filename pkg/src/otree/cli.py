"""Command-line interface: ``otree <subcommand> ...``.

Every subcommand is a thin adapter over the library.  Exit status is 0 on
success, 1 on a domain error (bad forest syntax, order bound, failed law)
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from pathlib import Path

from . import butcher, cuts, forest, grafting, hopf, lincomb, series, tables
from .laws import REGISTRY, run_laws

FORMATS = ("text", "json", "latex")


class DomainError(Exception):
    pass


class _Stdin:
    """Read standard input at most once, however many arguments are ``-``."""

    def __init__(self, stream):
        self.stream = stream
        self.value = None

    def resolve(self, arg: str) -> str:
        if arg != "-":
            return arg
        if self.value is None:
            self.value = self.stream.read().strip()
        return self.value


def _dump_json(data) -> str:
    return json.dumps(data, ensure_ascii=False, separators=(",", ":"))


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _show_lincomb(a: lincomb.LinComb, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(lincomb.lincomb_to_json(a))
    return lincomb.format_lincomb(a, fmt)


def _show_tensor(x: lincomb.TensorComb, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(lincomb.tensor_to_json(x))
    return lincomb.format_tensor(x, fmt)


def _show_forest(f, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(forest.print_forest(f))
    if fmt == "latex":
        return forest.print_forest(f, "latex")
    return forest.print_forest(f) or lincomb.UNIT_SYMBOL


def _show_scalar(v, fmt: str) -> str:
    return _dump_json(lincomb.format_coeff(v)) if fmt == "json" else lincomb.format_coeff(v)


# --------------------------------------------------------------------------
# Subcommands
# --------------------------------------------------------------------------

def cmd_enumerate(args, io) -> int:
    colors = [c for c in args.colors.split(",") if c]
    if args.unordered:
        found = butcher.enumerate_classes(args.order, colors)
        if args.filter != "all":
            found = [f for f in found if forest._keep(f, args.filter)]
    elif args.count and args.filter == "all":
        forest.check_bound(args.order)
        count = sum(1 for _ in forest.iter_forests(args.order, colors))
        _emit(io.out, str(count))
        return 0
    else:
        found = forest.enumerate_forests(args.order, colors, args.filter)
    if args.count:
        _emit(io.out, str(len(found)))
    elif args.format == "json":
        _emit(io.out, _dump_json([forest.print_forest(f) for f in found]))
    else:
        for f in found:
            _emit(io.out, _show_forest(f, args.format))
    return 0


def _binary(op):
    def run(args, io) -> int:
        a = lincomb.parse_lincomb(io.stdin.resolve(args.a))
        b = lincomb.parse_lincomb(io.stdin.resolve(args.b))
        _emit(io.out, _show_lincomb(op(a, b), args.format))
        return 0

    return run


def _graft_with_count(args, io) -> int:
    if not args.words:
        return _binary(grafting.graft)(args, io)
    a, b = forest.parse_forest(io.stdin.resolve(args.a)), forest.parse_forest(io.stdin.resolve(args.b))
    res = grafting.graft_direct_result(a, b)
    _emit(io.out, _show_lincomb(res.value, args.format))
    _emit(io.out, f"words: {res.term_count}")
    return 0


def _gl_with_count(args, io) -> int:
    if not args.words:
        return _binary(grafting.gl_product)(args, io)
    a, b = forest.parse_forest(io.stdin.resolve(args.a)), forest.parse_forest(io.stdin.resolve(args.b))
    res = grafting.gl_direct(a, b)
    _emit(io.out, _show_lincomb(res.value, args.format))
    _emit(io.out, f"words: {res.term_count}")
    return 0


COPRODUCTS = {
    "cuts": hopf.coproduct_N,
    "recursive": hopf.coproduct_N_recursive,
    "words": hopf.coproduct_F,
}
ANTIPODES = {
    "closed": hopf.antipode_N,
    "recursive": hopf.antipode_N_recursive,
    "cut-recursive": hopf.antipode_N_cut_recursive,
    "reversal": hopf.reversal_SF,
}


def cmd_coproduct(args, io) -> int:
    a = lincomb.parse_lincomb(io.stdin.resolve(args.expr))
    _emit(io.out, _show_tensor(COPRODUCTS[args.method](a), args.format))
    return 0


def cmd_antipode(args, io) -> int:
    a = lincomb.parse_lincomb(io.stdin.resolve(args.expr))
    _emit(io.out, _show_lincomb(ANTIPODES[args.method](a), args.format))
    return 0


def cmd_cuts(args, io) -> int:
    f = forest.parse_forest(io.stdin.resolve(args.forest))
    table = cuts.cut_table(f, args.family)
    if args.format == "json":
        data = [
            {
                "index": i,
                "cut": [{"node": list(n.node), "count": n.count} for n in c.nodal_cuts],
                "kinds": sorted(c.kinds()),
                "P": lincomb.lincomb_to_json(r.cut_part),
                "R": forest.print_forest(r.remainder),
            }
            for i, c, r in table
        ]
        _emit(io.out, _dump_json(data))
        return 0
    style = "latex" if args.format == "latex" else "text"
    cells = [
        (str(i), str(c), ",".join(k for k in cuts.FAMILIES if k in c.kinds()),
         lincomb.format_lincomb(r.cut_part, style), _show_forest(r.remainder, args.format))
        for i, c, r in table
    ]
    header = ("i", "cut", "kinds", "P", "R")
    widths = [max(len(row[j]) for row in cells + [header]) for j in range(len(header))]
    for row in [header] + cells:
        _emit(io.out, "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return 0


def cmd_symmetrize(args, io) -> int:
    a = lincomb.parse_lincomb(io.stdin.resolve(args.expr))
    if args.inverse:
        result = butcher.omega_inv(a)
    elif args.orbit:
        result = butcher.omega_orbit(a)
    else:
        result = butcher.omega(a)
    _emit(io.out, _show_lincomb(result, args.format))
    return 0


def _per_forest(fn, show):
    def run(args, io) -> int:
        f = forest.parse_forest(io.stdin.resolve(args.forest))
        _emit(io.out, show(fn(f), args.format))
        return 0

    return run


def _read_series(arg: str, io) -> series.Series:
    text = io.stdin.resolve(arg)
    if not text.lstrip().startswith("{"):
        try:
            text = Path(text).read_text(encoding="utf-8")
        except OSError as exc:
            raise DomainError(f"cannot read series file {arg!r}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DomainError(f"invalid series JSON at character {exc.pos}: {exc.msg}") from None
    return series.Series.from_json(data)


def _show_series(s: series.Series, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(s.to_json())
    if fmt == "latex":
        return lincomb.format_lincomb(lincomb.LinComb(s.coeffs), "latex")
    return series.series_to_text(s)


def cmd_series_compose(args, io) -> int:
    a = _read_series(args.alpha, io)
    if args.inverse:
        result = series.inverse(a)
    else:
        result = series.compose_gl(a, _read_series(args.beta, io))
    _emit(io.out, _show_series(result, args.format))
    return 0


def cmd_series_exp(args, io) -> int:
    _emit(io.out, _show_series(series.exp_gl(_read_series(args.alpha, io)), args.format))
    return 0


def cmd_series_log(args, io) -> int:
    _emit(io.out, _show_series(series.log_gl(_read_series(args.alpha, io)), args.format))
    return 0


def cmd_series_check(args, io) -> int:
    s = _read_series(args.alpha, io)
    flags = {"logarithmic": series.is_logarithmic(s), "exponential": series.is_exponential(s)}
    if args.format == "json":
        _emit(io.out, _dump_json({"cutoff": s.cutoff, **flags}))
    else:
        for k, v in flags.items():
            _emit(io.out, f"{k}: {'yes' if v else 'no'}")
    return 0


def cmd_tables(args, io) -> int:
    names = args.table or list(tables.TABLES)
    if args.format == "json":
        _emit(io.out, _dump_json(tables.render_json(names, args.max_order)))
    else:
        io.out.write(tables.render_text(names, args.max_order, args.format))
    return 0


def cmd_verify(args, io) -> int:
    unknown = [n for n in args.law or () if n not in REGISTRY]
    if unknown:
        raise DomainError(f"unknown law {unknown[0]!r}; see --list")
    if args.list:
        for law in REGISTRY.values():
            _emit(io.out, f"{law.name:26s} [{law.group}] {law.description}")
        return 0
    reports = run_laws(args.max_order, args.law)
    if args.format == "json":
        data = [
            {"law": r.law.name, "ok": r.ok, "seconds": round(r.seconds, 3), "failures": r.failures[:20]}
            for r in reports
        ]
        _emit(io.out, _dump_json(data))
    else:
        for r in reports:
            status = "ok" if r.ok else f"FAILED ({len(r.failures)})"
            _emit(io.out, f"{r.law.name:26s} {status:12s} {r.seconds:6.2f}s")
            for msg in r.failures[:5]:
                _emit(io.out, f"    {msg}")
    return 0 if all(r.ok for r in reports) else 1


# --------------------------------------------------------------------------
# Parser
# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text", help="output format (default: text)")

    parser = argparse.ArgumentParser(
        prog="otree",
        description="Algebra of ordered colored rooted forests. Forest arguments use the "
        "bracket grammar, e.g. '()(())' or 'a(b())'; '-' reads an argument from stdin.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help, description=help)
        p.set_defaults(func=fn)
        return p

    p = add("enumerate", cmd_enumerate, "list all forests with a given number of nodes")
    p.add_argument("order", type=int)
    p.add_argument("--colors", default=forest.DEFAULT_COLOR, help="comma-separated color tokens")
    p.add_argument("--filter", choices=forest.FILTERS, default="all")
    p.add_argument("--count", action="store_true", help="print only the number of forests")
    p.add_argument("--unordered", action="store_true", help="list unordered classes instead")

    for name, fn, help in (
        ("graft", _graft_with_count, "left grafting a[b]"),
        ("gl", _gl_with_count, "Grossman-Larson product a∘b"),
    ):
        p = add(name, fn, help)
        p.add_argument("a")
        p.add_argument("b")
        p.add_argument("--words", action="store_true", help="use direct attachment and report the word count")
    for name, op, help in (
        ("shuffle", lincomb.shuffle, "shuffle product a⧢b"),
        ("concat", lincomb.concat, "concatenation product ab"),
    ):
        p = add(name, _binary(op), help)
        p.add_argument("a")
        p.add_argument("b")

    p = add("coproduct", cmd_coproduct, "coproduct of a linear combination of forests")
    p.add_argument("expr")
    p.add_argument("--method", choices=sorted(COPRODUCTS), default="cuts",
                   help="cut sum, last-tree recursion, or deconcatenation")
    p = add("antipode", cmd_antipode, "antipode of a linear combination of forests")
    p.add_argument("expr")
    p.add_argument("--method", choices=sorted(ANTIPODES), default="closed")

    p = add("cuts", cmd_cuts, "table of left cuts of a forest")
    p.add_argument("forest")
    p.add_argument("--family", choices=cuts.FAMILIES + ("all",), default="all")

    p = add("symmetrize", cmd_symmetrize, "symmetrization of a linear combination")
    p.add_argument("expr")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--inverse", action="store_true", help="apply the left inverse instead")
    group.add_argument("--orbit", action="store_true", help="compute as σ times the orbit sum")

    add("sigma", _per_forest(forest.sigma, _show_scalar), "symmetry coefficient").add_argument("forest")
    add("pi", _per_forest(forest.pi, _show_scalar), "total permutation count").add_argument("forest")
    add("forget", _per_forest(forest.forget, _show_forest), "canonical unordered representative").add_argument("forest")

    p = add("series-compose", cmd_series_compose, "GL composition of two series (JSON files or literals)")
    p.add_argument("alpha")
    p.add_argument("beta", nargs="?")
    p.add_argument("--inverse", action="store_true", help="print the group inverse of alpha instead")
    add("series-exp", cmd_series_exp, "GL exponential of a logarithmic series").add_argument("alpha")
    add("series-log", cmd_series_log, "GL logarithm of an exponential series").add_argument("alpha")
    add("series-check", cmd_series_check, "test the logarithmic and exponential criteria").add_argument("alpha")

    p = add("tables", cmd_tables, "regenerate product, coproduct and antipode tables")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--table", action="append", choices=tables.TABLES)

    p = add("verify", cmd_verify, "run the algebraic law battery")
    p.add_argument("--max-order", type=int, default=5)
    p.add_argument("--law", action="append", metavar="NAME")
    p.add_argument("--list", action="store_true", help="list the available laws")
    return parser


class _IO:
    def __init__(self, out, stdin):
        self.out = out
        self.stdin = _Stdin(stdin)


DOMAIN_ERRORS = (
    DomainError,
    forest.ForestSyntaxError,
    forest.OrderBoundError,
    cuts.CutError,
    series.SeriesError,
    ValueError,
)


def main(argv=None, out=None, err=None, stdin=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "series-compose" and not args.inverse and args.beta is None:
        err.write("otree series-compose: error: the following arguments are required: beta\n")
        return 2
    try:
        return args.func(args, _IO(out, stdin or sys.stdin))
    except DOMAIN_ERRORS as exc:
        err.write(f"otree {args.command}: error: {exc}\n")
        return 1


def entry() -> None:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    sys.exit(main())


if __name__ == "__main__":
    entry()
