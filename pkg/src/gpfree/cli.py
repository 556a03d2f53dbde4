"""Command-line front end.

Every subcommand emits a single Report: command, inputs, result, optional
enclosure, provenance, runtime_ms.  JSON output is deterministic (sorted
keys; runtime_ms is the only field that varies between identical runs), and
decimals are rounded toward the bound they certify so printed digits stay
sound.  Exit codes: 0 success, 2 usage error, 3 node budget exhausted (a
partial report with the verified prefix is still emitted).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import constructions, density, exclusions, modn
from .enclosure import Enclosure, decimal_str
from .hitting import DEFAULT_NODE_BUDGET, BudgetExceeded
from .progressions import RatioKind
from .smooth import PrimeSet

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3

DEFAULT_DIGITS = 6
DEFAULT_CACHE_DIR = "./gpfree-cache"

# Largest limits the solver certifies at desk scale for each prime set; the
# splice pipeline lifts and merges down this ladder.
DIRECT_LIMITS = {
    RatioKind.RATIONAL: {(2, 3): 5832, (2, 3, 5): 540, (2, 3, 5, 7): 150},
    RatioKind.INTEGER: {(2, 3): 9216, (2, 3, 5): 512},
}

# Lifted tables extend to base_limit * q**LIFT_DEPTH: the upper bound keeps
# improving with every lifted entry, and by depth 8 the remaining tail is
# below 1e-7 while the entry count stays in the hundreds.
LIFT_DEPTH = 8


def _fraction_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _rational_field(x: Fraction, digits: int, direction: str) -> Dict[str, str]:
    return {"fraction": _fraction_str(x), "decimal": decimal_str(x, digits, direction)}


def _enclosure_field(e: Enclosure, digits: int) -> List[Dict[str, str]]:
    return [
        _rational_field(e.lo, digits, "down"),
        _rational_field(e.hi, digits, "up"),
    ]


def _parse_primes(text: str) -> PrimeSet:
    try:
        primes = tuple(sorted(int(t) for t in text.split(",") if t.strip()))
        return PrimeSet(primes)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _parse_kind(text: str) -> RatioKind:
    try:
        return RatioKind(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"kind must be rational or integer, not {text!r}")


def _parse_width(text: str) -> Fraction:
    try:
        return Fraction(text) if "/" in text else Fraction(float(text)).limit_denominator(10**12)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


class Report:
    def __init__(self, command: str, inputs: Dict):
        self.command = command
        self.inputs = inputs
        self.result = None
        self.enclosure: Optional[List[Dict[str, str]]] = None
        self.provenance: Optional[str] = None
        self.started = time.monotonic()
        self.rows: Optional[List[Sequence]] = None  # TSV body
        self.header: Optional[Sequence[str]] = None

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "enclosure": self.enclosure,
            "provenance": self.provenance,
            "runtime_ms": int((time.monotonic() - self.started) * 1000),
        }
        return json.dumps(payload, sort_keys=True)

    def to_tsv(self, no_header: bool) -> str:
        lines = []
        if self.header and not no_header:
            lines.append("\t".join(self.header))
        for row in self.rows or []:
            lines.append("\t".join(str(c) for c in row))
        return "\n".join(lines)

    def emit(self, args) -> None:
        if args.format == "json":
            print(self.to_json())
        else:
            print(self.to_tsv(getattr(args, "no_header", False)))


def _cache_dir(args) -> str:
    return os.environ.get("GPFREE_CACHE_DIR") or args.cache_dir


def _direct_limit(primes: PrimeSet, kind: RatioKind) -> int:
    try:
        return DIRECT_LIMITS[kind][primes.primes]
    except KeyError:
        raise SystemExit(
            f"no default solver limit for primes {primes.primes} ({kind.value}); "
            "pass --limit explicitly"
        )


def _spliced_table(
    primes: PrimeSet, kind: RatioKind, args
) -> exclusions.ExclusionTable:
    """Merged table over `primes`: direct tables for each prefix of the prime
    ladder, lifted up one prime at a time and min-merged at every rung."""
    ladder = primes.primes
    if ladder[:2] != (2, 3):
        raise SystemExit("splice pipeline starts from the primes 2,3")
    cache = _cache_dir(args)
    table = exclusions.cached_direct_table(
        PrimeSet((2, 3)), kind, _direct_limit(PrimeSet((2, 3)), kind), cache,
        node_budget=args.node_budget, threads=args.threads,
    )
    for i in range(2, len(ladder)):
        q = ladder[i]
        prefix = PrimeSet(ladder[: i + 1])
        lifted = exclusions.lift_table(table, q, table.verified_limit * q**LIFT_DEPTH)
        direct = exclusions.cached_direct_table(
            prefix, kind, _direct_limit(prefix, kind), cache,
            node_budget=args.node_budget, threads=args.threads,
        )
        table = exclusions.merge_tables([lifted, direct])
    return table


# ---------------------------------------------------------------------------
# subcommand handlers (each returns an exit code)


def cmd_exclusions(args) -> int:
    report = Report(
        "exclusions",
        {
            "primes": list(args.primes.primes),
            "kind": args.kind.value,
            "limit": args.limit,
        },
    )
    table = exclusions.cached_direct_table(
        args.primes, args.kind, args.limit, _cache_dir(args),
        node_budget=args.node_budget, threads=args.threads,
    )
    report.result = {
        "positions": list(table.positions),
        "verified_limit": table.verified_limit,
    }
    report.provenance = table.provenance
    report.header = ("index", "position")
    report.rows = [(i + 1, n) for i, n in enumerate(table.positions)]
    report.emit(args)
    return EXIT_OK if table.verified_limit >= args.limit else EXIT_BUDGET


def cmd_bound(args) -> int:
    kind = RatioKind.INTEGER if args.quantity == "beta" else RatioKind.RATIONAL
    report = Report(
        "bound",
        {
            "quantity": args.quantity,
            "side": args.side,
            "primes": list(args.primes.primes),
            "splice": args.splice,
        },
    )
    if args.side == "upper":
        if args.splice == "auto" and len(args.primes.primes) > 2:
            table = _spliced_table(args.primes, kind, args)
        else:
            table = exclusions.cached_direct_table(
                args.primes, kind, args.limit or _direct_limit(args.primes, kind),
                _cache_dir(args), node_budget=args.node_budget, threads=args.threads,
            )
        value = density.alpha_upper_bound(table)
        report.result = _rational_field(value, args.digits, "up")
        report.provenance = table.provenance
        report.rows = [(report.result["fraction"], report.result["decimal"])]
    else:
        table = exclusions.cached_direct_table(
            args.primes, kind, args.limit or _direct_limit(args.primes, kind),
            _cache_dir(args), node_budget=args.node_budget, threads=args.threads,
        )
        if args.global_tail:
            enc = density.alpha_global_lower(args.width, table)
            report.result = _rational_field(enc.lo, args.digits, "down")
            report.enclosure = _enclosure_field(enc, args.digits)
        else:
            value = density.alpha_lower_bound(table, table.verified_limit)
            report.result = _rational_field(value, args.digits, "down")
        report.provenance = table.provenance
        report.rows = [(report.result["fraction"], report.result["decimal"])]
    report.header = ("fraction", "decimal")
    report.emit(args)
    return EXIT_OK


def cmd_rankin(args) -> int:
    report = Report("rankin", {"width": str(args.width)})
    enc = density.rankin_density(args.width)
    report.enclosure = _enclosure_field(enc, args.digits)
    report.result = report.enclosure
    report.header = ("lo", "hi")
    report.rows = [(report.enclosure[0]["decimal"], report.enclosure[1]["decimal"])]
    report.emit(args)
    return EXIT_OK


def cmd_tail(args) -> int:
    report = Report(
        "tail", {"primes": list(args.primes.primes), "limit": args.limit}
    )
    enc = density.tail_sum(args.primes, args.limit)
    report.enclosure = _enclosure_field(enc, args.digits)
    report.result = _rational_field(enc.hi, args.digits, "up")
    report.header = ("fraction", "decimal")
    report.rows = [(report.result["fraction"], report.result["decimal"])]
    report.emit(args)
    return EXIT_OK


def cmd_alpha2(args) -> int:
    report = Report("alpha2", {"exponent_limit": args.exponent_limit})
    enc = density.alpha2_series(args.exponent_limit, node_budget=args.node_budget)
    report.enclosure = _enclosure_field(enc, args.digits)
    report.result = report.enclosure
    report.header = ("lo", "hi")
    report.rows = [(report.enclosure[0]["decimal"], report.enclosure[1]["decimal"])]
    report.emit(args)
    return EXIT_OK


def cmd_graded(args) -> int:
    report = Report("graded", {"prime": args.prime, "width": str(args.width)})
    enc = density.graded_density(args.prime, args.width)
    report.enclosure = _enclosure_field(enc, args.digits)
    report.result = report.enclosure
    report.header = ("lo", "hi")
    report.rows = [(report.enclosure[0]["decimal"], report.enclosure[1]["decimal"])]
    report.emit(args)
    return EXIT_OK


def cmd_beta_search(args) -> int:
    report = Report(
        "beta-search",
        {
            "primes": list(args.primes.primes),
            "exponent_bound": args.exponent_bound,
            "budget": args.budget,
        },
    )
    start = density.astar_product_set(args.primes, args.exponent_bound)
    improved = density.improve_exponent_set(start, budget=args.budget)
    enc = density.evaluate_exponent_set(improved, args.width)
    report.result = {
        "vector_count": len(improved.vectors),
        "lower_bound": _rational_field(enc.lo, args.digits, "down"),
    }
    report.enclosure = _enclosure_field(enc, args.digits)
    report.header = ("vector_count", "lower_bound")
    report.rows = [(len(improved.vectors), report.result["lower_bound"]["decimal"])]
    report.emit(args)
    return EXIT_OK


def cmd_intervals(args) -> int:
    report = Report("intervals", {})
    s = constructions.six_interval_set()
    ok, certs = constructions.verify_intervals_gp_free(s)
    report.result = {
        "interval_count": len(s.intervals),
        "total_length": _rational_field(s.total_length, args.digits, "down"),
        "gp_free": ok,
        "ratios_checked": [c.ratio for c in certs],
    }
    report.header = ("ratio", "ok")
    report.rows = [(c.ratio, c.ok) for c in certs]
    report.emit(args)
    return EXIT_OK


def cmd_stitch(args) -> int:
    report = Report("stitch", {"n1": args.n1, "count": args.count})
    steps = constructions.stitch_schedule(args.n1, args.count)
    report.result = [
        {
            "value": st.value,
            "separation_strict": st.separation_strict,
            "separation_equal": st.separation_equal,
        }
        for st in steps
    ]
    report.header = ("i", "value", "separation_strict", "separation_equal")
    report.rows = [
        (i + 1, st.value, st.separation_strict, st.separation_equal)
        for i, st in enumerate(steps)
    ]
    report.emit(args)
    return EXIT_OK


def cmd_modn(args) -> int:
    report = Report("modn", {"n": args.n})
    size, witness = modn.exact_E(
        args.n, node_budget=args.node_budget, threads=args.threads
    )
    report.result = {"size": size, "witness": sorted(witness)}
    report.header = ("n", "size")
    report.rows = [(args.n, size)]
    report.emit(args)
    return EXIT_OK


def cmd_astar(args) -> int:
    report = Report("astar", {"limit": args.limit})
    members = list(density.astar(args.limit).elements)
    report.result = members
    report.header = ("member",)
    report.rows = [(m,) for m in members]
    report.emit(args)
    return EXIT_OK


def cmd_cache(args) -> int:
    cache = _cache_dir(args)
    report = Report("cache", {"action": args.action, "cache_dir": cache})
    entries = sorted(
        f for f in (os.listdir(cache) if os.path.isdir(cache) else [])
        if f.endswith(".json")
    )
    if args.action == "clear":
        for f in entries:
            os.remove(os.path.join(cache, f))
        report.result = {"removed": entries}
        report.rows = [(f, "removed") for f in entries]
    else:
        report.result = {"entries": entries}
        report.rows = [(f,) for f in entries]
    report.header = ("entry",) if args.action == "inspect" else ("entry", "status")
    report.emit(args)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpfree",
        description="Bounds and exact computations for geometric-progression-free sets",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p, cache=True):
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--no-header", action="store_true")
        p.add_argument("--digits", type=int, default=DEFAULT_DIGITS)
        p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
        p.add_argument("--threads", type=int, default=1)
        if cache:
            p.add_argument("--cache-dir", default=DEFAULT_CACHE_DIR)

    p = sub.add_parser("exclusions", help="certified exclusion table positions")
    p.add_argument("--primes", type=_parse_primes, required=True)
    p.add_argument("--kind", type=_parse_kind, default=RatioKind.RATIONAL)
    p.add_argument("--limit", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_exclusions)

    p = sub.add_parser("bound", help="density bounds from exclusion tables")
    p.add_argument("--quantity", choices=("alpha", "beta"), required=True)
    p.add_argument("--side", choices=("upper", "lower"), required=True)
    p.add_argument("--primes", type=_parse_primes, required=True)
    p.add_argument("--splice", choices=("auto", "direct"), default="direct")
    p.add_argument("--limit", type=int)
    p.add_argument("--global", dest="global_tail", action="store_true",
                   help="multiply the lower bound by the remaining Euler tail")
    p.add_argument("--width", type=_parse_width, default=Fraction(1, 10**6))
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("rankin", help="enclosure of the greedy-set density")
    p.add_argument("--width", type=_parse_width, required=True)
    common(p, cache=False)
    p.set_defaults(func=cmd_rankin)

    p = sub.add_parser("tail", help="smooth reciprocal tail beyond a limit")
    p.add_argument("--primes", type=_parse_primes, required=True)
    p.add_argument("--limit", type=int, required=True)
    common(p, cache=False)
    p.set_defaults(func=cmd_tail)

    p = sub.add_parser("alpha2", help="single-prime series enclosure")
    p.add_argument("--exponent-limit", type=int, required=True)
    common(p, cache=False)
    p.set_defaults(func=cmd_alpha2)

    p = sub.add_parser("graded", help="graded greedy density at one prime")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--width", type=_parse_width, required=True)
    common(p, cache=False)
    p.set_defaults(func=cmd_graded)

    p = sub.add_parser("beta-search", help="exponent-vector local search")
    p.add_argument("--primes", type=_parse_primes, required=True)
    p.add_argument("--exponent-bound", type=int, default=13)
    p.add_argument("--budget", type=int, default=64)
    p.add_argument("--width", type=_parse_width, default=Fraction(1, 10**6))
    common(p, cache=False)
    p.set_defaults(func=cmd_beta_search)

    p = sub.add_parser("intervals", help="verify the six-interval construction")
    common(p, cache=False)
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("stitch", help="block-size schedule and separation checks")
    p.add_argument("--n1", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    common(p, cache=False)
    p.set_defaults(func=cmd_stitch)

    p = sub.add_parser("modn", help="largest progression-free residue set mod n")
    p.add_argument("--n", type=int, required=True)
    common(p, cache=False)
    p.set_defaults(func=cmd_modn)

    p = sub.add_parser("astar", help="exponents with no ternary digit 2")
    p.add_argument("--limit", type=int, required=True)
    common(p, cache=False)
    p.set_defaults(func=cmd_astar)

    p = sub.add_parser("cache", help="inspect or clear the table cache")
    p.add_argument("action", choices=("inspect", "clear"))
    common(p)
    p.set_defaults(func=cmd_cache)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        partial = Report(args.subcommand, {"error": "budget_exceeded"})
        partial.result = {
            "error": str(exc),
            "verified_index": exc.verified_index,
        }
        partial.rows = [("budget_exceeded", str(exc))]
        partial.header = ("status", "detail")
        partial.emit(args)
        return EXIT_BUDGET
    except (ValueError, SystemExit) as exc:
        if isinstance(exc, SystemExit):
            print(exc, file=sys.stderr)
            return EXIT_USAGE
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
