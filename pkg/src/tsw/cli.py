"""Command-line front end.

Every command reads formulas in the text grammar and teams/families as
JSON, prints either a human-readable line or (with ``--json``) a stable
JSON document, and exits 0 on success, 1 on parse/validation problems,
2 when a variable or size cap is exceeded, and 3 on an internal
invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .definability import (
    build_reduced_truth_function,
    builtin_connective,
    condition_check,
    find_truth_function,
    is_consistent,
    normalize,
    refute_uniform_definition,
    search_contexts,
)
from .errors import (
    CapExceededError,
    InternalInvariantError,
    ParseError,
    ValidationError,
)
from .expressiveness import synth_inql, synth_pd, theta_star, translate
from .formulas import Top, is_atom, max_placeholder, substitute, to_text
from .parsing import parse
from .semantics import (
    check_basic_properties,
    entails,
    equivalent,
    evaluate,
    truth_set,
    valid,
    var_set,
)
from .teams import Team, TeamFamily, VarSet

DEFAULT_SEARCH_POOL = "r1,r2,bot,top,p,!p,=(p)"


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems through the exit-code table
    instead of exiting 2."""

    def error(self, message):
        raise ValidationError(message)


def _build_parser() -> _Parser:
    top = _Parser(prog="tsw", description="team-semantics workbench")
    sub = top.add_subparsers(dest="command", required=True)

    def cmd(name: str, help: str) -> argparse.ArgumentParser:
        return sub.add_parser(name, help=help, description=help)

    def flag_json(p):
        p.add_argument("--json", action="store_true", help="emit JSON")

    def flag_vars(p):
        p.add_argument("--vars", help="comma-separated variable names")

    def flag_caps(p):
        p.add_argument("--max-vars", type=int, default=3, help="variable cap (default 3)")
        p.add_argument("--force", action="store_true", help="raise the cap to the hard maximum")

    p = cmd("parse", "parse a formula and print its canonical form")
    p.add_argument("-f", "--formula", required=True)
    flag_json(p)

    p = cmd("eval", "evaluate a formula on a team")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("-t", "--team", required=True, help="team JSON file or inline rows")
    flag_vars(p)
    flag_json(p)

    p = cmd("truthset", "all satisfying teams over a variable set")
    p.add_argument("-f", "--formula", required=True)
    flag_vars(p)
    flag_caps(p)
    flag_json(p)

    p = cmd("valid", "whether every team satisfies the formula")
    p.add_argument("-f", "--formula", required=True)
    flag_json(p)

    p = cmd("entails", "whether the first formula entails the second")
    p.add_argument("-f", "--formula", action="append", required=True)
    flag_caps(p)
    flag_json(p)

    p = cmd("equiv", "whether two formulas have the same truth set")
    p.add_argument("-f", "--formula", action="append", required=True)
    flag_caps(p)
    flag_json(p)

    p = cmd("properties", "check the guaranteed structural properties")
    p.add_argument("-f", "--formula", required=True)
    flag_vars(p)
    p.add_argument("--seed", type=int, default=0)
    flag_caps(p)
    flag_json(p)

    p = cmd("theta", "the formula excluding one team from all its superteams")
    p.add_argument("-t", "--team", required=True, help="team JSON file or inline rows")
    flag_vars(p)
    p.add_argument("--raw", action="store_true", help="keep the two-sided tensor shape")
    flag_json(p)

    p = cmd("synth", "synthesize a formula for a downward-closed family")
    p.add_argument("--family", required=True, help="family JSON file")
    p.add_argument("--target", choices=["pd", "inql"], required=True)
    flag_caps(p)
    flag_json(p)

    p = cmd("translate", "re-express a formula in a target fragment")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--target", choices=["pd", "inql"], required=True)
    flag_caps(p)
    flag_json(p)

    p = cmd("subst", "substitute instances into a context's placeholders")
    p.add_argument("-c", "--context", required=True)
    p.add_argument("-f", "--formula", action="append", required=True, help="instance for r1, r2, ...")
    flag_json(p)

    p = cmd("normalize", "remove inconsistent subformulas from a context")
    p.add_argument("-c", "--context", required=True)
    flag_json(p)

    p = cmd("consistent", "whether some nonempty team satisfies the all-top instance")
    p.add_argument("-c", "--context", required=True)
    flag_json(p)

    p = cmd("truthfn", "find a truth function for an instantiated context on a team")
    p.add_argument("-c", "--context", required=True)
    p.add_argument("-f", "--formula", action="append", required=True, help="instance for r1, r2, ...")
    p.add_argument("-t", "--team", required=True, help="team JSON file or inline rows")
    flag_vars(p)
    flag_json(p)

    p = cmd("reduce", "a truth function keeping placeholder leaves off the full team")
    p.add_argument("-c", "--context", required=True)
    flag_vars(p)
    flag_json(p)

    p = cmd("refute", "counterexample to a context defining a connective")
    p.add_argument("-c", "--context", required=True)
    p.add_argument("--connective", choices=["or", "imp"], required=True)
    p.add_argument("--extended", action="store_true", help="append diagnostic instances")
    flag_json(p)

    p = cmd("search", "refute every context up to a size bound")
    p.add_argument("--connective", choices=["or", "imp"], required=True)
    p.add_argument("--pool", default=DEFAULT_SEARCH_POOL, help="comma-separated atom pool")
    p.add_argument("--max-size", type=int, default=7, help="syntax-tree node bound (default 7)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    flag_json(p)

    p = cmd("conditions", "check the non-definability preconditions of a connective")
    p.add_argument("--connective", choices=["or", "imp", "contra"], required=True)
    flag_json(p)

    return top


def _parse_vars(csv: Optional[str]) -> Optional[VarSet]:
    if csv is None:
        return None
    names = [part.strip() for part in csv.split(",") if part.strip()]
    if not names:
        raise ValidationError("--vars needs at least one name")
    return VarSet.from_names(names)


def _load_team(arg: str, vars: Optional[VarSet]) -> Team:
    text = arg.strip()
    if text.startswith("["):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as e:
            raise ValidationError(f"bad inline team JSON: {e}") from None
        if vars is None:
            raise ValidationError("inline team rows need --vars")
        return Team.from_rows(vars, rows)
    try:
        with open(text) as fh:
            obj = json.load(fh)
    except OSError as e:
        raise ValidationError(f"cannot read team file: {e}") from None
    except json.JSONDecodeError as e:
        raise ValidationError(f"bad team JSON in {text}: {e}") from None
    team = Team.from_json(obj)
    if vars is not None and team.vars != vars:
        raise ValidationError("--vars disagrees with the team file's variable set")
    return team


def _load_family(path: str) -> TeamFamily:
    try:
        with open(path) as fh:
            obj = json.load(fh)
    except OSError as e:
        raise ValidationError(f"cannot read family file: {e}") from None
    except json.JSONDecodeError as e:
        raise ValidationError(f"bad family JSON in {path}: {e}") from None
    return TeamFamily.from_json(obj)


def _two_formulas(texts: list[str], what: str):
    if len(texts) != 2:
        raise ValidationError(f"{what} needs exactly two -f/--formula arguments")
    return parse(texts[0]), parse(texts[1])


def _emit(args, human: str, payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def _bool_result(args, value: bool) -> None:
    _emit(args, "true" if value else "false", {"result": value})


def _formula_result(args, phi) -> None:
    _emit(args, to_text(phi), {"formula": to_text(phi)})


def _truth_function_human(tau) -> str:
    lines = []
    for node in tau.tree.nodes:
        team = tau.assignment[node.id]
        lines.append(f"node {node.id}  {to_text(node.formula)}  ->  {json.dumps(team.rows())}")
    return "\n".join(lines)


def _run(argv: Optional[Sequence[str]]) -> int:
    args = _build_parser().parse_args(argv)

    if args.command == "parse":
        phi = parse(args.formula)
        _emit(args, to_text(phi), {"formula": to_text(phi), "vars": var_set(phi).names()})

    elif args.command == "eval":
        phi = parse(args.formula)
        team = _load_team(args.team, _parse_vars(args.vars))
        _bool_result(args, evaluate(phi, team))

    elif args.command == "truthset":
        phi = parse(args.formula)
        vars = _parse_vars(args.vars)
        family = truth_set(phi, vars, max_vars=args.max_vars, force=args.force)
        if args.json:
            print(json.dumps(family.to_json(), indent=2))
        else:
            print(f"{len(family)} teams over {{{','.join(family.vars.names())}}}")
            for team in family.teams():
                print(json.dumps(team.rows()))

    elif args.command == "valid":
        _bool_result(args, valid(parse(args.formula)))

    elif args.command == "entails":
        a, b = _two_formulas(args.formula, "entails")
        _bool_result(args, entails(a, b, max_vars=args.max_vars, force=args.force))

    elif args.command == "equiv":
        a, b = _two_formulas(args.formula, "equiv")
        _bool_result(args, equivalent(a, b, max_vars=args.max_vars, force=args.force))

    elif args.command == "properties":
        phi = parse(args.formula)
        report = check_basic_properties(
            phi,
            _parse_vars(args.vars),
            seed=args.seed,
            max_vars=args.max_vars,
            force=args.force,
        )
        if args.json:
            print(json.dumps(report.to_json(), indent=2))
        else:
            for check in report.checks:
                mark = "pass" if check.passed else "FAIL"
                print(f"{check.name}: {mark}  ({check.detail})")

    elif args.command == "theta":
        team = _load_team(args.team, _parse_vars(args.vars))
        _formula_result(args, theta_star(team, raw=args.raw))

    elif args.command == "synth":
        family = _load_family(args.family)
        synth = synth_pd if args.target == "pd" else synth_inql
        _formula_result(args, synth(family, max_vars=args.max_vars, force=args.force))

    elif args.command == "translate":
        phi = parse(args.formula)
        _formula_result(
            args, translate(phi, args.target, max_vars=args.max_vars, force=args.force)
        )

    elif args.command == "subst":
        context = parse(args.context)
        instances = [parse(t) for t in args.formula]
        _formula_result(args, substitute(context, instances))

    elif args.command == "normalize":
        _formula_result(args, normalize(parse(args.context)))

    elif args.command == "consistent":
        _bool_result(args, is_consistent(parse(args.context)))

    elif args.command == "truthfn":
        context = parse(args.context)
        instances = [parse(t) for t in args.formula]
        team = _load_team(args.team, _parse_vars(args.vars))
        tau = find_truth_function(context, instances, team)
        if args.json:
            payload = {"found": tau is not None}
            payload["truth_function"] = tau.to_json() if tau is not None else None
            print(json.dumps(payload, indent=2))
        elif tau is None:
            print("none (the team does not satisfy the instantiated context)")
        else:
            print(_truth_function_human(tau))

    elif args.command == "reduce":
        context = parse(args.context)
        vars = _parse_vars(args.vars)
        if vars is None:
            vars = var_set(substitute(context, [Top()] * max_placeholder(context)))
        tau = build_reduced_truth_function(context, vars)
        if args.json:
            payload = tau.to_json()
            payload["context"] = to_text(tau.tree.node(0).formula)
            print(json.dumps(payload, indent=2))
        else:
            print(_truth_function_human(tau))

    elif args.command == "refute":
        context = parse(args.context)
        c = builtin_connective(args.connective)
        ce = refute_uniform_definition(context, c, extended=args.extended)
        if args.json:
            print(json.dumps(ce.to_json(), indent=2))
        else:
            inst = ", ".join(to_text(t) for t in ce.instances)
            print(f"instances: {inst}")
            print(f"team: {json.dumps(ce.team.rows())} over {{{','.join(ce.vars.names())}}}")
            print(f"context gives {str(ce.lhs).lower()}, connective gives {str(ce.rhs).lower()}")

    elif args.command == "search":
        pool = [_parse_pool_atom(t) for t in args.pool.split(",")]
        c = builtin_connective(args.connective)
        report = search_contexts(
            c, pool, args.max_size, jobs=args.jobs, seed=args.seed
        )
        if args.json:
            print(json.dumps(report.to_json(), indent=2))
        else:
            print(
                f"{report.refuted}/{report.total} contexts refuted "
                f"(size <= {report.max_size}, {report.elapsed_s}s)"
            )
            for label, count in sorted(report.by_instance.items()):
                print(f"  {label}: {count}")
            if report.unrefuted:
                print(f"unrefuted: {', '.join(report.unrefuted)}")

    elif args.command == "conditions":
        report = condition_check(builtin_connective(args.connective))
        if args.json:
            print(json.dumps(report.to_json(), indent=2))
        else:
            for w in report.witnesses:
                mark = "holds" if w.holds else "FAILS"
                inst = f"  [{', '.join(w.instances)}]" if w.instances else ""
                print(f"({w.condition}) {mark}: {w.detail}{inst}")

    else:  # pragma: no cover - argparse enforces the choices
        raise InternalInvariantError(f"unhandled command {args.command!r}")

    return 0


def _parse_pool_atom(text: str):
    phi = parse(text.strip())
    if not is_atom(phi):
        raise ValidationError(f"pool entry {text.strip()!r} is not an atom")
    return phi


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        return _run(argv)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except ValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except CapExceededError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except InternalInvariantError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
