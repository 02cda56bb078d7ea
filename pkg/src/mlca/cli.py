"""Command-line interface: ``mlca <command> ...`` or ``python -m mlca``.

Exit codes: 0 success, 2 bad arguments or unparsable input, 3 a
precondition failed (e.g. a non-maximal CA where one is required),
4 an integer factorization ran out of budget.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Sequence

from . import __version__
from .automaton import char_poly
from .complemented import complementize, complemented_cycle_structure, marginal_fixed_point
from .factor import BUDGET_ENV, FactorizationBudgetExceeded
from .generators import (
    cost,
    minimal_cost_search,
    random_search_gfq,
    strategy,
    walk90p,
    walk150p,
)
from .gfpoly import format_poly, is_irreducible, is_primitive, parse_poly
from .maximality import (
    cycle_structure,
    decide_maximal_exhaustive,
    decide_maximal_primitive,
)
from .phaseshift import phase_shifts
from .prng import BitFormat, StreamSpec, export_bits, monobit, stream_bits
from .rules import (
    Boundary,
    Kind,
    RuleVector,
    decode_rule_number,
    format_config,
    format_rules,
    parse_config,
    parse_rules,
)
from .synthesis import congruence_trace, synthesize

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_BUDGET = 4


class UsageError(Exception):
    pass


def _parse(fn: Callable, *args):
    try:
        return fn(*args)
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from exc


def _rules(args) -> RuleVector:
    return _parse(parse_rules, args.rules, args.q)


def _positions(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad position list {text!r}") from None


def _rules_doc(r: RuleVector) -> Any:
    if r.numbers is not None:
        return list(r.numbers)
    return [list(t) for t in r.triples]


# -- commands -------------------------------------------------------------------
# Each returns (payload dict, text lines).


def cmd_charpoly(args):
    rules = _rules(args)
    p = char_poly(rules, args.bc)
    doc = {"rules": _rules_doc(rules), "q": rules.q, "bc": args.bc, "charpoly": format_poly(p),
           "irreducible": is_irreducible(p)}
    return doc, [format_poly(p)]


def cmd_maximal(args):
    rules = _rules(args)
    verdicts = []
    if args.method in ("exhaustive", "both"):
        verdicts.append(decide_maximal_exhaustive(rules, args.bc))
    # "both" quietly drops the primitivity test where it does not apply
    applicable = rules.is_linear and args.bc == Boundary.NULL.value
    if args.method == "primitive" or (args.method == "both" and applicable):
        if args.bc != Boundary.NULL.value:
            raise ValueError("the primitivity criterion applies to null boundary")
        verdicts.append(decide_maximal_primitive(rules))
    doc = {"rules": _rules_doc(rules), "q": rules.q, "bc": args.bc,
           "verdicts": [v.to_dict() for v in verdicts]}
    lines = []
    for v in verdicts:
        tag = "maximal" if v.maximal else "not maximal"
        extra = f" (cycle length {v.cycle_length})" if v.maximal else (f" ({v.reason})" if v.reason else "")
        lines.append(f"{v.method.value}: {tag}{extra}")
    return doc, lines


def cmd_synth(args):
    p = _parse(parse_poly, args.poly, 2)
    res = synthesize(p)
    tr = congruence_trace(p)
    doc = {
        "poly": format_poly(p),
        "realizations": [_rules_doc(res.rules), _rules_doc(res.reversed)],
        "intermediates": {k: format_poly(getattr(tr, k)) for k in ("f", "f_inv", "g", "theta", "beta", "q")},
        "primitive": is_primitive(p),
    }
    return doc, [format_rules(res.rules), format_rules(res.reversed)]


def cmd_search(args):
    n, q = args.n, args.q
    doc: dict[str, Any] = {"n": n, "q": q, "method": args.method}
    if args.method == "strategy":
        if q != 2:
            raise UsageError("strategies are binary")
        r = strategy(n, args.strategy)
        doc["strategy"] = args.strategy
    elif args.method == "mincost":
        if q != 2:
            raise UsageError("minimal-cost search is binary")
        r = minimal_cost_search(n)
    else:
        if args.seed is None:
            raise UsageError("random search needs --seed")
        hit = random_search_gfq(n, q, args.budget, args.seed)
        doc["seed"] = args.seed
        r = None
        if hit is not None:
            r, doc["attempts"] = hit
    doc["found"] = r is not None
    doc["rules"] = None if r is None else _rules_doc(r)
    if r is None:
        return doc, ["none"]
    doc["charpoly"] = format_poly(char_poly(r))
    if q == 2:
        doc["cost"] = cost(r)
    return doc, [format_rules(r)]


def cmd_walk(args):
    w = walk90p(args.n) if args.which == 90 else walk150p(args.n)
    doc = {"n": args.n, "which": args.which, **w.to_dict()}
    line = " ".join(f"p{i}" for i in w.indices)
    return doc, [f"{line}  covered_all={w.covered_all} total={w.total}"]


def cmd_phase(args):
    rules = _rules(args)
    rep = phase_shifts(rules, args.pivot)
    doc = {"rules": _rules_doc(rules), **rep.to_dict()}
    return doc, [f"cell {i}: {s}" for i, s in enumerate(rep.shifts)]


def cmd_cycles(args):
    rules = _rules(args)
    if rules.kind is Kind.COMPLEMENTED:
        cs = complemented_cycle_structure(rules, args.bc)
    else:
        cs = cycle_structure(rules, args.bc)
    doc = {"rules": _rules_doc(rules), "bc": args.bc, "structure": str(cs), **cs.to_dict()}
    lines = [str(cs)]
    if cs.transients:
        lines.append(f"transient configurations: {cs.transients}")
    return doc, lines


def cmd_complement(args):
    base = _rules(args)
    rules = complementize(base, _positions(args.positions))
    verdict = decide_maximal_exhaustive(rules)
    fixed = marginal_fixed_point(rules)
    doc = {
        "rules": _rules_doc(rules),
        "inversion": format_config(rules.inversion),
        "verdict": verdict.to_dict(),
        "fixed_point": None if fixed is None else format_config(fixed),
    }
    tag = "maximal" if verdict.maximal else "not maximal"
    return doc, [format_rules(rules), f"{tag}; fixed point {doc['fixed_point']}"]


def cmd_prng(args):
    rules = _rules(args)
    seed = _parse(parse_config, args.seed, 2)
    spec = StreamSpec(rules, seed, args.gamma)
    bits = stream_bits(spec, args.steps)
    header = spec.header(args.steps, len(bits))
    written = export_bits(bits, args.out, args.format, header)
    ones, zeros = monobit(bits)
    doc = {**header, "out": args.out, "format": args.format, "bytes": written, "ones": ones, "zeros": zeros}
    return doc, [f"wrote {len(bits)} bits ({written} bytes) to {args.out}"]


def cmd_rule(args):
    info = decode_rule_number(args.number)
    doc = {"number": info.number, "category": info.category,
           "triple": None if info.triple is None else list(info.triple), "table": info.bits}
    trip = "" if info.triple is None else f" (a,d,b)={info.triple}"
    return doc, [f"{info.number}: {info.category}{trip} table {info.bits}"]


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mlca", description="Maximal-length cellular automata toolkit.",
                                epilog=f"Set {BUDGET_ENV} to change the factorization budget.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def rules_args(sp, bc=True):
        sp.add_argument("--rules", required=True,
                        help='rule numbers "90,150,..." or JSON triples "[[a,d,b],...]"')
        sp.add_argument("--q", type=int, default=2, help="field size (prime)")
        if bc:
            sp.add_argument("--bc", choices=[b.value for b in Boundary], default="null")

    sp = sub.add_parser("charpoly", help="characteristic polynomial")
    rules_args(sp)
    sp.set_defaults(func=cmd_charpoly)

    sp = sub.add_parser("maximal", help="decide maximality")
    rules_args(sp)
    sp.add_argument("--method", choices=["exhaustive", "primitive", "both"], default="both")
    sp.set_defaults(func=cmd_maximal)

    sp = sub.add_parser("synth", help="90/150 CAs for an irreducible GF(2) polynomial")
    sp.add_argument("--poly", required=True, help='e.g. "x^5+x^2+1" or 0x25')
    sp.set_defaults(func=cmd_synth)

    sp = sub.add_parser("search", help="find a maximal CA")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, default=2)
    sp.add_argument("--method", choices=["strategy", "mincost", "random"], required=True)
    sp.add_argument("--strategy", type=int, choices=[1, 2, 3], default=3)
    sp.add_argument("--seed", type=int, help="RNG seed (required for random)")
    sp.add_argument("--budget", type=int, default=1000, help="random attempts")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("walk", help="p-configuration walk of CA(90') or CA(150')")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--which", type=int, choices=[90, 150], default=90)
    sp.set_defaults(func=cmd_walk)

    sp = sub.add_parser("phase", help="phase shifts against a pivot cell")
    rules_args(sp, bc=False)
    sp.add_argument("--pivot", type=int, default=0)
    sp.set_defaults(func=cmd_phase)

    sp = sub.add_parser("cycles", help="cycle structure by enumeration")
    rules_args(sp)
    sp.set_defaults(func=cmd_cycles)

    sp = sub.add_parser("complement", help="complement cells of a 90/150 CA")
    rules_args(sp, bc=False)
    sp.add_argument("--positions", required=True, help="comma-separated cell indices")
    sp.set_defaults(func=cmd_complement)

    sp = sub.add_parser("prng", help="write a bitstream")
    rules_args(sp, bc=False)
    sp.add_argument("--seed", required=True, help='initial configuration, cell 0 first, e.g. "1000"')
    sp.add_argument("--gamma", type=int, default=0, help="cells skipped between output sites")
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--format", choices=[f.value for f in BitFormat], default="raw")
    sp.set_defaults(func=cmd_prng)

    sp = sub.add_parser("rule", help="decode a Wolfram rule number")
    sp.add_argument("number", type=int)
    sp.set_defaults(func=cmd_rule)
    return p


def _emit_error(as_json: bool, command: str | None, kind: str, message: str) -> None:
    if as_json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "command": command, "status": "error",
                          "error": kind, "message": message}, sort_keys=True))
    print(f"mlca: {kind}: {message}", file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        doc, lines = args.func(args)
    except UsageError as exc:
        _emit_error(args.json, args.command, "usage", str(exc))
        return EXIT_USAGE
    except FactorizationBudgetExceeded as exc:
        _emit_error(args.json, args.command, "factorization-budget", str(exc))
        return EXIT_BUDGET
    except ValueError as exc:
        _emit_error(args.json, args.command, "precondition", str(exc))
        return EXIT_PRECONDITION
    if args.json:
        out = {"schema_version": SCHEMA_VERSION, "command": args.command, "status": "ok", **doc}
        print(json.dumps(out, sort_keys=True))
    else:
        print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
