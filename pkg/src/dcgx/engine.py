"""Top-down, leftmost, depth-first interpreter for DCGs over token lists.

This is what a Prolog system does with a DCG compiled to difference lists,
except that the input position is an index into the token list.  Rules are
tried in grammar order and all solutions are enumerated by backtracking.

The search keeps an explicit choice-point stack instead of recursing, so
deep derivations do not hit Python's recursion limit.  Bindings live in one
triangular environment per parse and are undone through a trail, as in a
WAM.  A rule whose body starts with a terminal that cannot match the next
token is skipped without being applied.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field
from itertools import islice

from .errors import DcgError, UnknownNonterminal
from .grammar import Grammar, Rule, Terminal, rename_apart
from .term import EMPTY, Atom, Compound, Term, Var, apply, functor_of, is_variant, unify


class StepLimitExceeded(DcgError):
    pass


@dataclass
class ParseStats:
    """Counters filled in by a parse; pass one in to inspect them afterwards."""

    attempts: int = 0  # head unifications tried
    steps: int = 0  # rule applications (successful head unifications)
    solutions: int = 0


@dataclass(frozen=True)
class DerivationTree:
    rule: int
    children: tuple[DerivationTree, ...]
    span: tuple[int, int]

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)

    def walk(self) -> Iterator[DerivationTree]:
        yield self
        for c in self.children:
            yield from c.walk()

    def format(self, grammar: Grammar | None = None, indent: str = "  ") -> str:
        lines = []

        def emit(node, level):
            label = f"#{node.rule}"
            if grammar is not None:
                label += f" {grammar.rules[node.rule]}"
            lines.append(f"{indent * level}{label} [{node.span[0]},{node.span[1]})")
            for c in node.children:
                emit(c, level + 1)

        emit(self, 0)
        return "\n".join(lines)


@dataclass(frozen=True)
class Solution:
    binding: Term
    derivation: DerivationTree = field(compare=False)

    def __str__(self):
        return str(self.binding)


def tokenize_input(tokens: str | Sequence[str]) -> tuple[str, ...]:
    if isinstance(tokens, str):
        return tuple(tokens.split())
    return tuple(tokens)


_END = object()
_CLOSE = object()


# The environment and renaming maps are keyed by variable id, which is
# noticeably faster than hashing Var objects.

def _deref(t: Term, env: dict) -> Term:
    while type(t) is Var:
        b = env.get(t.id)
        if b is None:
            return t
        t = b
    return t


def resolve(t: Term, env: dict) -> Term:
    """Fully instantiate `t` under the triangular bindings `env`."""
    t = _deref(t, env)
    if t.ground or type(t) is not Compound:
        return t
    args = [resolve(a, env) for a in t.args]
    if all(x is y for x, y in zip(args, t.args)):
        return t
    return Compound(t.functor, args)


def _rename(t: Term, mapping: dict, fresh) -> Term:
    if t.ground:
        return t
    if type(t) is Var:
        v = mapping.get(t.id)
        if v is None:
            v = mapping[t.id] = fresh.fresh()
        return v
    return Compound(t.functor, [_rename(a, mapping, fresh) for a in t.args])


def _occurs(v: Var, t: Term, env: dict) -> bool:
    stack = [t]
    while stack:
        x = _deref(stack.pop(), env)
        if x is v or (type(x) is Var and x.id == v.id):
            return True
        if type(x) is Compound and not x.ground:
            stack.extend(x.args)
    return False


def _unify(a: Term, b: Term, env: dict, trail: list, occurs_check: bool) -> bool:
    # binds into `env`, recording each bound variable on `trail`
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        x = _deref(x, env)
        y = _deref(y, env)
        if x is y:
            continue
        if type(y) is Var:
            if x == y:
                continue
            if occurs_check and type(x) is Compound and _occurs(y, x, env):
                return False
            env[y.id] = x
            trail.append(y.id)
        elif type(x) is Var:
            if occurs_check and type(y) is Compound and _occurs(x, y, env):
                return False
            env[x.id] = y
            trail.append(x.id)
        elif type(x) is Atom or type(y) is Atom:
            if x != y:
                return False
        else:
            if x.functor != y.functor or len(x.args) != len(y.args):
                return False
            if x.ground and y.ground:
                if x != y:
                    return False
                continue
            stack.extend(zip(x.args, y.args))
    return True


def _unify_head(goal: Term, head: Term, mapping: dict, env: dict, trail: list, occurs_check: bool, fresh) -> bool:
    # unify against the rule head as written; the first occurrence of a head
    # variable is simply mapped to the goal subterm, later ones are unified
    stack = [(goal, head)]
    while stack:
        x, h = stack.pop()
        if h.ground:
            if not _unify(x, h, env, trail, occurs_check):
                return False
        elif type(h) is Var:
            m = mapping.get(h.id)
            if m is None:
                mapping[h.id] = x
            elif not _unify(x, m, env, trail, occurs_check):
                return False
        else:
            x = _deref(x, env)
            if type(x) is Var:
                t = _rename(h, mapping, fresh)
                if occurs_check and _occurs(x, t, env):
                    return False
                env[x.id] = t
                trail.append(x.id)
            elif type(x) is Compound and x.functor == h.functor and len(x.args) == len(h.args):
                stack.extend(zip(x.args, h.args))
            else:
                return False
    return True


def _may_match(goal: Term, head: Term, env: dict) -> bool:
    # cheap first-level clash test, done before paying for renaming
    if type(goal) is not Compound:
        return True
    for a, b in zip(goal.args, head.args):
        a = _deref(a, env)
        if type(a) is Var or type(b) is Var:
            continue
        if type(a) is not type(b):
            return False
        if type(a) is Compound:
            if a.functor != b.functor or len(a.args) != len(b.args):
                return False
        elif a.name != b.name:
            return False
    return True


def _key(t: Term):
    if type(t) is Compound:
        return (t.functor, len(t.args))
    if type(t) is Atom:
        return (t.name, 0)
    return None


def _index(g: Grammar) -> dict:
    # functor -> (all candidates, candidates by principal functor of the first argument)
    flat: dict = {}
    for i, r in enumerate(g.rules):
        first = r.body[0].token if r.body and isinstance(r.body[0], Terminal) else None
        flat.setdefault(functor_of(r.head), []).append((i, r, first))
    index = {}
    for fa, cands in flat.items():
        by_arg: dict = {}
        if fa[1]:
            keys = {_key(c[1].head.args[0]) for c in cands} - {None}
            for k in keys:
                by_arg[k] = tuple(c for c in cands if _key(c[1].head.args[0]) in (k, None))
            by_arg[None] = tuple(c for c in cands if _key(c[1].head.args[0]) is None)
        index[fa] = (tuple(cands), by_arg)
    return index


def _check_goal(g: Grammar, goal: Term):
    fa = functor_of(goal)
    if fa is None or fa not in g.nonterminals:
        raise UnknownNonterminal(f"{goal} is not a nonterminal call of this grammar")


def _build_tree(trace) -> DerivationTree:
    events = []
    while trace is not None:
        events.append(trace[0])
        trace = trace[1]
    events.reverse()
    stack: list[list] = []
    root = None
    for ev in events:
        if ev[0] is _CLOSE:
            rule, start, children = stack.pop()
            node = DerivationTree(rule, tuple(children), (start, ev[1]))
            if stack:
                stack[-1][2].append(node)
            else:
                root = node
        else:
            stack.append([ev[0], ev[1], []])
    return root


def iter_solutions(
    g: Grammar,
    goal: Term,
    tokens: str | Sequence[str],
    depth: int | None = None,
    occurs_check: bool = True,
    stats: ParseStats | None = None,
    max_steps: int | None = None,
) -> Iterator[Solution]:
    """Lazily enumerate the solutions of `goal` over the whole of `tokens`.

    With `depth`, a nonterminal goal at derivation depth greater than `depth`
    is not expanded (the root goal is at depth 1).
    """
    _check_goal(g, goal)
    toks = tokenize_input(tokens)
    n = len(toks)
    if stats is None:
        stats = ParseStats()
    index = _index(g)
    fresh = g.fresh_source(goal)
    env: dict = {}
    trail: list = []

    # stack entry: (goal, depth, pending goals, pos, trace, next candidate, trail length)
    stack: list = []
    cur = (goal, 1, None, 0, None, 0, 0)
    attempts = steps = 0
    try:
        while True:
            if cur is None:
                if not stack:
                    break
                cur = stack.pop()
            term, d, rest, pos, trace, ci, mark = cur
            cur = None
            while len(trail) > mark:
                del env[trail.pop()]
            if depth is not None and d > depth:
                continue
            if type(term) is Var:
                term = _deref(term, env)
            if type(term) is Compound:
                entry = index.get((term.functor, len(term.args)))
                if entry is None:
                    continue
                a0 = _deref(term.args[0], env)
                if type(a0) is Var:
                    cands = entry[0]
                else:
                    by_arg = entry[1]
                    cands = by_arg.get((a0.functor, len(a0.args)) if type(a0) is Compound else (a0.name, 0))
                    if cands is None:
                        cands = by_arg[None]
            else:
                entry = index.get((term.name, 0))
                if entry is None:
                    continue
                cands = entry[0]
            chosen = None
            while ci < len(cands):
                idx, rule, first = cands[ci]
                ci += 1
                if first is not None and (pos >= n or toks[pos] != first):
                    continue
                if not _may_match(term, rule.head, env):
                    continue
                attempts += 1
                mapping: dict = {}
                if _unify_head(term, rule.head, mapping, env, trail, occurs_check, fresh):
                    chosen = rule
                    break
                while len(trail) > mark:
                    del env[trail.pop()]
            if chosen is None:
                continue
            if ci < len(cands):
                stack.append((term, d, rest, pos, trace, ci, mark))
            steps += 1
            if max_steps is not None and steps > max_steps:
                raise StepLimitExceeded(f"more than {max_steps} rule applications")

            goals = (_END, rest)
            for item in reversed(chosen.body):
                if type(item) is Terminal:
                    goals = (item.token, goals)
                else:
                    goals = ((_rename(item.term, mapping, fresh), d + 1), goals)
            trace = ((idx, pos), trace)

            while goals is not None:
                item, goals = goals
                if item is _END:
                    trace = ((_CLOSE, pos), trace)
                elif type(item) is str:
                    if pos < n and toks[pos] == item:
                        pos += 1
                    else:
                        break
                else:
                    cur = (item[0], item[1], goals, pos, trace, 0, len(trail))
                    break
            else:
                if pos == n:
                    stats.solutions += 1
                    stats.attempts += attempts
                    stats.steps += steps
                    attempts = steps = 0
                    yield Solution(resolve(goal, env), _build_tree(trace))
    finally:
        stats.attempts += attempts
        stats.steps += steps


def parse(
    g: Grammar,
    goal: Term,
    tokens: str | Sequence[str],
    max_solutions: int | None = None,
    occurs_check: bool = True,
    stats: ParseStats | None = None,
    max_steps: int | None = None,
) -> list[Solution]:
    """All solutions of `goal` over `tokens`, in depth-first order.

    Terminates for grammars produced by ``transform`` from an offline-parsable
    grammar.  On left-recursive or empty-rule grammars it may not; use
    :func:`parse_bounded` there.
    """
    if max_solutions is not None and max_solutions < 1:
        raise ValueError("max_solutions must be positive")
    it = iter_solutions(g, goal, tokens, None, occurs_check, stats, max_steps)
    return list(islice(it, max_solutions))


def parse_bounded(
    g: Grammar,
    goal: Term,
    tokens: str | Sequence[str],
    depth: int,
    max_solutions: int | None = None,
    occurs_check: bool = True,
    stats: ParseStats | None = None,
    max_steps: int | None = None,
) -> list[Solution]:
    """Like :func:`parse`, but derivations deeper than `depth` rule applications are cut off."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if max_solutions is not None and max_solutions < 1:
        raise ValueError("max_solutions must be positive")
    _check_goal(g, goal)
    if depth == 0:
        return []
    it = iter_solutions(g, goal, tokens, depth, occurs_check, stats, max_steps)
    return list(islice(it, max_solutions))


def derivation_check(
    g: Grammar,
    sol: Solution,
    tokens: str | Sequence[str],
    goal: Term | None = None,
    occurs_check: bool = True,
) -> bool:
    """Replay the derivation of `sol` and confirm it yields `sol.binding` over `tokens`.

    The replay starts from `goal` when given, otherwise from the most general
    instance of the binding's functor.
    """
    toks = tokenize_input(tokens)
    if goal is None:
        fa = functor_of(sol.binding)
        if fa is None:
            return False
        fresh0 = g.fresh_source(sol.binding)
        goal = Compound(fa[0], [fresh0.fresh() for _ in range(fa[1])]) if fa[1] else sol.binding
    fresh = g.fresh_source(goal, sol.binding)

    def replay(node: DerivationTree, term: Term, start: int, s):
        if node.span[0] != start or not 0 <= node.rule < len(g.rules):
            return None
        rule: Rule = rename_apart(g.rules[node.rule], fresh)
        s = unify(term, rule.head, s, occurs_check)
        if s is None:
            return None
        pos = start
        children = iter(node.children)
        for item in rule.body:
            if isinstance(item, Terminal):
                if pos >= len(toks) or toks[pos] != item.token:
                    return None
                pos += 1
                continue
            child = next(children, None)
            if child is None:
                return None
            res = replay(child, item.term, pos, s)
            if res is None:
                return None
            s, pos = res
        if next(children, None) is not None or pos != node.span[1]:
            return None
        return s, pos

    res = replay(sol.derivation, goal, 0, EMPTY)
    if res is None or res[1] != len(toks):
        return False
    return is_variant(apply(res[0], goal), sol.binding)
