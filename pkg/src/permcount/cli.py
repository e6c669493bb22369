"""Command line front end.

Exit codes: 0 computed (and verified, for verifications), 1 a verification
failed or checks were skipped, 2 invalid usage.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import __version__
from .enumeration import (
    ClassSpec,
    LevelSetSpec,
    class_size,
    enumerate_class,
    enumerate_level_set,
    level_set_size,
)
from .lemma import FQuery, count_F_brute, count_F_recursive, default_order, verify_lemma1, verify_recursion
from .perm import CycleType, Permutation, PermutationError
from .products import (
    ALL,
    BRUTE,
    REDUCED,
    STRICT,
    GQuery,
    count_G_detail,
    diag_coefficient,
    verify_covering,
    verify_diag,
    verify_lemma2,
)
from .report import AggregateReport, Report, timed, to_csv, to_json, to_text
from .verify import verify_all, verify_oracles

log = logging.getLogger("permcount")


class UsageError(Exception):
    pass


def _workers(text):
    if text == "auto":
        return "auto"
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("workers must be a positive integer or 'auto'")
    if v < 1:
        raise argparse.ArgumentTypeError("workers must be a positive integer or 'auto'")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=_workers, default=1, help="thread count or 'auto'")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--time-budget", type=float, default=None, metavar="SECONDS")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    p = argparse.ArgumentParser(prog="permcount", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"permcount {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("levelset", parents=[common], help="permutations of S_n with a given reflection length")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--list", action="store_true", help="list the elements too")
    s.add_argument("--notation", choices=("cycle", "oneline"), default="cycle")

    s = sub.add_parser("class", parents=[common], help="a conjugacy class of S_n")
    s.add_argument("--type", required=True, dest="cycle_type", help="cycle type, e.g. 3,1")
    s.add_argument("--list", action="store_true")
    s.add_argument("--notation", choices=("cycle", "oneline"), default="cycle")

    s = sub.add_parser("count-f", parents=[common], help="F_k(i, j, tau) in S_m")
    s.add_argument("--m", type=int, required=True)
    s.add_argument("--k", type=int, default=0)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--tau", default="()", help="cycle or one-line notation")
    s.add_argument("--method", choices=("brute", "recursion", "both"), default="brute")

    s = sub.add_parser("count-g", parents=[common], help="G(i, j) in S_{2g-2}")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--i", type=int, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--variant", choices=(STRICT, ALL), default=STRICT)
    s.add_argument("--method", choices=(BRUTE, REDUCED, "both"), default=BRUTE)

    s = sub.add_parser("diag-coeff", parents=[common], help="N(g-1,g-1) - N(g-2,g)")
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--method", choices=(BRUTE, REDUCED), default=REDUCED)
    s.add_argument("--direct", action="store_true", help="also count straight from conditions (1)-(3)")

    v = sub.add_parser("verify", help="verification suites")
    vs = v.add_subparsers(dest="target", required=True)
    s = vs.add_parser("lemma1", parents=[common])
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--m", type=int)
    grp.add_argument("--g", type=int)
    s.add_argument("--exhaustive-max", type=int, default=5)
    s = vs.add_parser("lemma2", parents=[common])
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--variant", choices=(STRICT, ALL, "both"), default="both")
    s.add_argument("--method", choices=(BRUTE, REDUCED), default=REDUCED)
    s = vs.add_parser("recursion", parents=[common])
    grp = s.add_mutually_exclusive_group(required=True)
    grp.add_argument("--m", type=int)
    grp.add_argument("--g", type=int)
    s.add_argument("--queries", type=int, default=None, help="random queries (default: exhaustive up to m=5, else 100)")
    s.add_argument("--seed", type=int, default=0)
    s = vs.add_parser("covering", parents=[common])
    s.add_argument("--g", type=int, required=True)
    s.add_argument("--method", choices=(BRUTE, REDUCED), default=REDUCED)
    s = vs.add_parser("oracles", parents=[common])
    s.add_argument("--n-max", type=int, default=8)
    s = vs.add_parser("all", parents=[common])
    s.add_argument("--g-max", type=int, required=True)
    return p


def _check(cond, msg):
    if not cond:
        raise UsageError(msg)


def _listing(perms, notation):
    return [p.cycle_string() if notation == "cycle" else p.one_line() for p in perms]


def _run_levelset(a):
    spec = LevelSetSpec(a.n, a.i)
    rep = Report("levelset", {"n": a.n, "i": a.i}, method="by-cycle-type")
    with timed(rep):
        rep.counts["size"] = level_set_size(a.n, a.i)
        if a.list:
            rep.query["elements"] = _listing(enumerate_level_set(spec), a.notation)
    return rep


def _run_class(a):
    try:
        parts = tuple(int(x) for x in a.cycle_type.replace("(", "").replace(")", "").split(",") if x.strip())
    except ValueError:
        raise UsageError(f"cannot parse cycle type {a.cycle_type!r}")
    ct = CycleType(parts)
    rep = Report("class", {"type": str(ct)}, method="enumeration")
    with timed(rep):
        rep.counts["size"] = class_size(ct)
        if a.list:
            rep.query["elements"] = _listing(enumerate_class(ClassSpec(ct)), a.notation)
    return rep


def _run_count_f(a):
    _check(2 <= a.m <= 16, "--m must be in 2..16")
    tau = Permutation.parse(a.tau, a.m)
    q = FQuery(a.m, a.k, a.i, a.j, tau)
    order = default_order(a.m)
    rep = Report("count-f", q.as_dict(), method=a.method, order=order.name)
    with timed(rep):
        if a.method in ("brute", "both"):
            rep.counts["brute"] = count_F_brute(q, order, a.workers)
        if a.method in ("recursion", "both"):
            rep.counts["recursion"] = count_F_recursive(q, order)
        if a.method == "both":
            rep.verified = rep.counts["brute"] == rep.counts["recursion"]
    return rep


def _run_count_g(a):
    methods = (BRUTE, REDUCED) if a.method == "both" else (a.method,)
    rep = Report("count-g", {"g": a.g, "i": a.i, "j": a.j, "variant": a.variant}, method=a.method)
    with timed(rep):
        for method in methods:
            d = count_G_detail(GQuery(a.g, a.i, a.j, a.variant, method), a.workers)
            key = "G" if len(methods) == 1 else f"G[{method}]"
            rep.counts[key] = d["value"]
            if len(methods) == 1:
                rep.method = d["method"]
        if len(methods) > 1:
            rep.verified = len(set(rep.counts.values())) == 1
    return rep


def _run_diag(a):
    _check(a.g >= 3, "--g must be at least 3")
    if a.direct:
        rep = verify_diag(a.g, a.method, a.workers, direct_max_g=a.g)
        return rep
    rep = Report("diag-coeff", {"g": a.g}, method=a.method)
    with timed(rep):
        dc = diag_coefficient(a.g, a.method, a.workers)
        rep.counts.update(dc.as_counts())
        rep.verified = dc.value > 0
    return rep


def _m_from(a):
    if a.m is not None:
        return a.m
    _check(a.g >= 3, "--g must be at least 3")
    return 2 * a.g - 3


def _run_verify(a):
    t = a.target
    if t == "lemma1":
        m = _m_from(a)
        _check(3 <= m <= 16, "m must be in 3..16")
        return verify_lemma1(m, exhaustive_max=a.exhaustive_max)
    if t == "lemma2":
        _check(3 <= a.g <= 9, "--g must be in 3..9")
        variants = (STRICT, ALL) if a.variant == "both" else (a.variant,)
        return verify_lemma2(a.g, variants, a.method, a.workers)
    if t == "recursion":
        m = _m_from(a)
        _check(2 <= m <= 16, "m must be in 2..16")
        count = a.queries if a.queries is not None else (None if m <= 5 else 100)
        return verify_recursion(m, count, a.seed, workers=a.workers)
    if t == "covering":
        _check(3 <= a.g <= 9, "--g must be in 3..9")
        return verify_covering(a.g, a.method, a.workers)
    if t == "oracles":
        _check(1 <= a.n_max <= 10, "--n-max must be in 1..10")
        return verify_oracles(a.n_max)
    if t == "all":
        _check(a.g_max >= 3, "--g-max must be at least 3")
        return verify_all(a.g_max, a.time_budget, a.workers)
    raise UsageError(f"unknown verification {t!r}")


def _validate_common(a):
    for name in ("g",):
        v = getattr(a, name, None)
        if v is not None and a.command in ("count-g", "diag-coeff"):
            _check(3 <= v <= 9, f"--{name} must be in 3..9 (degree 2g-2 at most 16)")
    if getattr(a, "time_budget", None) is not None:
        _check(a.time_budget > 0, "--time-budget must be positive")


def run(argv=None) -> tuple[object, int, str]:
    """Parse ``argv`` and execute; returns (report, exit code, output format)."""
    parser = build_parser()
    a = parser.parse_args(argv)
    if getattr(a, "verbose", False):
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(message)s")
    _validate_common(a)
    dispatch = {
        "levelset": _run_levelset,
        "class": _run_class,
        "count-f": _run_count_f,
        "count-g": _run_count_g,
        "diag-coeff": _run_diag,
        "verify": _run_verify,
    }
    report = dispatch[a.command](a)
    if isinstance(report, AggregateReport):
        code = 0 if report.verified else 1
    else:
        code = 1 if (report.verified is False or report.skipped) else 0
    return report, code, a.format


def render(report, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report).rstrip("\n")
    return to_text(report)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, code, fmt = run(argv)
    except (UsageError, PermutationError, ValueError) as exc:
        print(f"permcount: error: {exc}", file=sys.stderr)
        return 2
    print(render(report, fmt))
    return code


if __name__ == "__main__":
    sys.exit(main())
