"""Command-line front end.

Exit codes: 0 verified/true, 1 refuted/false, 2 unknown, 3 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .errors import BudgetExceeded, GcdmfError
from .interval import IntervalMonoid
from .multifraction import (Answer, format_trace, is_irreducible, mf_equivalent, mf_format, mf_parse, reduce_search,
                            unital)
from .poset import Poset, is_local_lattice, parse_std, poset_from_json, poset_to_dot, poset_to_json
from .presented import STANDARD_PRESENTATIONS, PresentedMonoid, free_commutative, parse_presentation
from .scenarios import FAIL, UNKNOWN, run_scenario
from .zigzag import Inconclusive, NotSemiConvergent, SemiConvergent, format_zigzag, semiconv_certificate

EXIT_OK, EXIT_FALSE, EXIT_UNKNOWN, EXIT_USAGE = 0, 1, 2, 3

DEFAULT_BUDGETS = {"states": 100_000, "radius": 16}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with 2, which means UNKNOWN here
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def budgets(args) -> dict:
    """Defaults, then GCDMF_BUDGET (``states=N,radius=N``), then explicit flags."""
    out = dict(DEFAULT_BUDGETS)
    env = os.environ.get("GCDMF_BUDGET", "").strip()
    if env:
        for item in env.split(","):
            key, _, val = item.partition("=")
            key = key.strip()
            if key not in out or not val.strip().isdigit():
                raise UsageError(f"bad GCDMF_BUDGET entry {item!r}")
            out[key] = int(val)
    if getattr(args, "budget_states", None) is not None:
        out["states"] = args.budget_states
    if getattr(args, "budget_radius", None) is not None:
        out["radius"] = args.budget_radius
    return out


def load_poset(args) -> Poset:
    if args.std:
        return parse_std(args.std)
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return poset_from_json(fh.read())
    raise UsageError("give --std NAME or a poset JSON file")


def load_monoid(spec: str | None, pres_file: str | None):
    if pres_file:
        with open(pres_file, encoding="utf-8") as fh:
            return PresentedMonoid(parse_presentation(fh.read()))
    if not spec:
        raise UsageError("give --std-monoid NAME or --presentation FILE")
    name, _, arg = spec.partition("=")
    if name in STANDARD_PRESENTATIONS:
        return PresentedMonoid(STANDARD_PRESENTATIONS[name]())
    if name == "free_commutative":
        if not arg.isdigit():
            raise UsageError("free_commutative needs =k")
        return PresentedMonoid(free_commutative(int(arg)))
    return IntervalMonoid(parse_std(spec))


def _emit(args, text: str, payload: dict) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True) if args.json else text)


def _answer_code(ans: Answer) -> int:
    return {Answer.YES: EXIT_OK, Answer.NO: EXIT_FALSE, Answer.UNKNOWN: EXIT_UNKNOWN}[ans]


# ---------------------------------------------------------------- commands

def cmd_poset(args) -> int:
    p = load_poset(args)
    if args.action == "validate":
        ok, witness = is_local_lattice(p)
        text = f"{p.n} elements, {len(p.covers)} covers, local lattice: {'yes' if ok else 'no'}"
        if not ok:
            x, (y, z) = witness
            text += f" (fails at {p.label(x)} for {p.label(y)}, {p.label(z)})"
        _emit(args, text, {"elements": p.n, "covers": len(p.covers), "local_lattice": ok})
        return EXIT_OK if ok else EXIT_FALSE
    if args.action == "show":
        print(poset_to_json(p))
        return EXIT_OK
    dot = poset_to_dot(p)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(dot)
    else:
        print(dot, end="")
    return EXIT_OK


def cmd_semiconv(args) -> int:
    p = load_poset(args)
    ok, _ = is_local_lattice(p)
    if not ok:
        raise UsageError("the poset is not a local lattice")
    b = budgets(args)
    res = semiconv_certificate(p, args.depth, budget=b["states"])
    M = IntervalMonoid(p, require_local_lattice=False)
    if isinstance(res, SemiConvergent):
        scope = f"-up-to-depth-{args.depth}" if args.depth else ""
        text = f"SemiConvergent{scope}: {res.note} ({res.examined} zigzags examined)"
        _emit(args, text, {"verdict": "SemiConvergent", "depth": args.depth, "examined": res.examined})
        return EXIT_OK
    if isinstance(res, NotSemiConvergent):
        lit = mf_format(M, res.multifraction)
        text = f"NotSemiConvergent: witness {lit} (zigzag {format_zigzag(p, res.zigzag)})"
        _emit(args, text, {"verdict": "NotSemiConvergent", "witness": lit})
        return EXIT_FALSE
    assert isinstance(res, Inconclusive)
    text = f"Inconclusive (loop search budget of {b['states']} states): unitality undecided for " + "; ".join(res.details)
    _emit(args, text, {"verdict": "Inconclusive", "details": res.details})
    return EXIT_UNKNOWN


def cmd_verify(args) -> int:
    reports = run_scenario(args.scenario, args.n)
    if args.json:
        print(json.dumps([r.to_dict() for r in reports], indent=2))
    else:
        for r in reports:
            print(f"== {r.scenario}: {r.overall.upper()} ({r.seconds:.2f} s)")
            for c in r.checks:
                ev = f"  [{c.evidence}]" if c.evidence else ""
                print(f"  {c.status.upper():7} {c.name}{ev}")
    states = [r.overall for r in reports]
    if FAIL in states:
        return EXIT_FALSE
    if UNKNOWN in states:
        return EXIT_UNKNOWN
    return EXIT_OK


def cmd_mf(args) -> int:
    M = load_monoid(args.std_monoid, args.presentation)
    b = budgets(args)
    a = mf_parse(M, args.literal)
    if args.action == "reduce":
        res = reduce_search(M, a, "exhaustive_set", state_cap=max(b["states"], 1))
        outcomes = [mf_format(M, m) for m in res.irreducibles]
        trace_lines: list[str] = []
        first_goal = res.irreducibles[0] if res.irreducibles else None
        if first_goal is not None:
            tr = reduce_search(M, a, "to_target", target=first_goal)
            trace_lines = format_trace(M, tr.trace)
        text = "\n".join(trace_lines + [f"irreducible: {o}" for o in outcomes])
        _emit(args, text, {"trace": trace_lines, "irreducible": outcomes, "states": res.states})
        return EXIT_OK
    if args.action == "irreducible":
        irr = is_irreducible(M, a)
        _emit(args, "true" if irr else "false", {"irreducible": irr})
        return EXIT_OK if irr else EXIT_FALSE
    if args.action == "unital":
        v = unital(M, a, budget=b["states"], radius=b["radius"])
        _emit(args, f"{v.answer.value}: {v.evidence}", {"unital": v.answer.value, "evidence": v.evidence})
        return _answer_code(v.answer)
    if args.other is None:
        raise UsageError("equiv needs two multifractions")
    v = mf_equivalent(M, a, mf_parse(M, args.other), budget=b["states"], radius=b["radius"])
    _emit(args, f"{v.answer.value}: {v.evidence}", {"equivalent": v.answer.value, "evidence": v.evidence})
    return _answer_code(v.answer)


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gcdmf", description="Interval monoids, multifraction reduction and semi-convergence checks.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, poset=True):
        if poset:
            p.add_argument("file", nargs="?", help="poset JSON file")
            p.add_argument("--std", help="standard poset, e.g. PA, PB, PCn=4, PAn=3, bowtie, chain=3")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--budget-states", type=int, dest="budget_states")
        p.add_argument("--budget-radius", type=int, dest="budget_radius")

    p = sub.add_parser("poset", help="validate, show or export a poset")
    p.add_argument("action", choices=["validate", "show", "dot"])
    common(p)
    p.add_argument("--dot", help="write DOT output to this path")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("semiconv", help="semi-convergence certificate from zigzags")
    common(p)
    p.add_argument("--depth", type=int, help="only zigzags up to this length")
    p.set_defaults(func=cmd_semiconv)

    p = sub.add_parser("verify", help="run a named verification scenario")
    p.add_argument("scenario", choices=["propA", "propB", "propC", "propAn", "propD", "quotients", "all"])
    p.add_argument("n", nargs="?", type=int)
    common(p, poset=False)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mf", help="work with one multifraction")
    p.add_argument("action", choices=["reduce", "irreducible", "unital", "equiv"])
    p.add_argument("literal")
    p.add_argument("other", nargs="?")
    p.add_argument("--std-monoid", dest="std_monoid",
                   help="PA, PCn=4, ... (interval monoids) or MB, Q11, QC4, QC6, MD, free_commutative=k")
    p.add_argument("--presentation", help="presentation file (text or JSON)")
    common(p, poset=False)
    p.set_defaults(func=cmd_mf)
    return ap


def _check_scenario_args(args) -> None:
    if args.command != "verify" or args.n is None:
        return
    if args.scenario == "propC" and args.n not in (4, 6):
        raise UsageError("propC supports n = 4 or 6")
    if args.scenario == "propAn" and not 1 <= args.n <= 3:
        raise UsageError("propAn supports 1 <= n <= 3")
    if args.scenario not in ("propC", "propAn"):
        raise UsageError(f"{args.scenario} takes no parameter")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _check_scenario_args(args)
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"UNKNOWN: {exc}")
        return EXIT_UNKNOWN
    except (UsageError, GcdmfError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"gcdmf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
