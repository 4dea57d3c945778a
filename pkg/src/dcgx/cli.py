"""``dcgx`` command line: check, transform and parse ``.dcg`` grammars.

Exit status: 0 on success, 1 when the grammar is not offline-parsable (or a
transformation precondition fails, or no parse is found), 2 on usage and
input errors.
"""

from __future__ import annotations

import argparse
import sys

from .engine import StepLimitExceeded, parse, parse_bounded
from .errors import (
    DcgError,
    EmptyRulePresent,
    GrammarSyntaxError,
    LimitExceeded,
    NotOfflineParsable,
    SeedRulesMissing,
    UnknownNonterminal,
)
from .grammar import RESERVED, Grammar, format_term, parse_symbol, parse_term, read_grammar, write_grammar
from .opcheck import is_offline_parsable
from .term import Compound, functor_of, unify, variables
from .transform_empty import eliminate_empty
from .transform_leftcorner import eliminate_left_recursion, encode, transform

OK, FAIL, USAGE = 0, 1, 2


class _InputError(Exception):
    pass


def _load(path: str, allow_reserved: bool = False) -> Grammar:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise _InputError(f"cannot read {path}: {e.strerror or e}") from e
    try:
        return read_grammar(text, allow_reserved=allow_reserved)
    except GrammarSyntaxError as e:
        raise _InputError("\n".join(f"{path}:{d}" for d in e.diagnostics)) from e


def _uses_reserved(g: Grammar) -> bool:
    return any(sym.name in RESERVED for sym in g.nonterminals)


def cmd_check(args) -> int:
    g = _load(args.file)
    try:
        start = parse_symbol(args.start) if args.start else None
    except ValueError as e:
        raise _InputError(str(e)) from e
    if start is not None and start not in g.nonterminals:
        raise _InputError(f"start symbol {start} does not occur in {args.file}")
    verdict = is_offline_parsable(g, start)
    print(verdict)
    return OK if verdict.offline_parsable else FAIL


def cmd_transform(args) -> int:
    if args.stage == "leftcorner":
        g = _load(args.file, allow_reserved=True)
        # an already encoded grammar only needs the final step
        out = eliminate_left_recursion(g if _uses_reserved(g) else encode(g))
    else:
        g = _load(args.file)
        if args.stage == "empty":
            out = eliminate_empty(g)
        elif args.stage == "encode":
            out = encode(g)
        else:
            out = transform(g)
    text = write_grammar(out)
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as e:
            raise _InputError(f"cannot write {args.output}: {e.strerror or e}") from e
    else:
        sys.stdout.write(text)
    return OK


def _answer_text(goal, binding) -> str:
    # the values of the goal's named variables; a goal without any is echoed
    vs = list(dict.fromkeys(v for v in variables(goal) if v.name != "_"))
    if not vs:
        return format_term(binding)
    s = unify(goal, binding)
    return ", ".join(format_term(s(v)) for v in vs)


def cmd_parse(args) -> int:
    try:
        goal = parse_term(args.goal)
    except GrammarSyntaxError as e:
        raise _InputError(f"bad goal {args.goal!r}: {e}") from e
    if functor_of(goal) is None:
        raise _InputError("goal must be a nonterminal call, not a variable")
    tokens = args.tokens.split()

    if args.raw:
        g = _load(args.file, allow_reserved=True)
        run_grammar, run_goal = g, goal
        sols = parse_bounded(g, goal, tokens, args.depth or 25, args.max_solutions)
    else:
        g = _load(args.file)
        if functor_of(goal) not in g.nonterminals:
            raise _InputError(f"{goal} is not a nonterminal of {args.file}")
        run_grammar, run_goal = transform(g), Compound("g", [goal])
        if args.depth:
            sols = parse_bounded(run_grammar, run_goal, tokens, args.depth, args.max_solutions)
        else:
            sols = parse(run_grammar, run_goal, tokens, args.max_solutions)

    for sol in sols:
        binding = sol.binding
        if not args.raw:
            binding = binding.args[0]
        print(_answer_text(goal, binding))
        if args.tree:
            print(sol.derivation.format(run_grammar))
    return OK if sols else FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dcgx", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide offline-parsability")
    c.add_argument("file")
    c.add_argument("--start", metavar="SYM/ARITY", help="judge usefulness from this start symbol only")
    c.set_defaults(func=cmd_check)

    t = sub.add_parser("transform", help="print a transformed grammar")
    t.add_argument("file")
    t.add_argument("--stage", choices=["empty", "encode", "leftcorner", "full"], required=True)
    t.add_argument("-o", "--output", metavar="OUT")
    t.set_defaults(func=cmd_transform)

    q = sub.add_parser("parse", help="parse a token string")
    q.add_argument("file")
    q.add_argument("--goal", required=True, metavar="TERM")
    q.add_argument("--tokens", required=True, help='space separated, e.g. "people sleep"')
    q.add_argument("--raw", action="store_true", help="run the grammar as written, with a depth bound")
    q.add_argument("--depth", type=_positive, metavar="N")
    q.add_argument("--max-solutions", type=_positive, metavar="N")
    q.add_argument("--tree", action="store_true", help="print derivation trees")
    q.set_defaults(func=cmd_parse)
    return p


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        n = 0
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.func(args)
    except _InputError as e:
        print(f"dcgx: {e}", file=sys.stderr)
        return USAGE
    except UnknownNonterminal as e:
        print(f"dcgx: {e}", file=sys.stderr)
        return USAGE
    except (NotOfflineParsable, LimitExceeded, EmptyRulePresent, SeedRulesMissing, StepLimitExceeded) as e:
        print(f"dcgx: {type(e).__name__}: {e}", file=sys.stderr)
        return FAIL
    except DcgError as e:
        print(f"dcgx: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
