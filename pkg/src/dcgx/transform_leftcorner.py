"""Generic left-corner encoding and removal of the one left-recursive rule pair.

Every rule ``a(T) --> b(S), rest`` becomes ``d(b(S), a(T)) --> rest'`` and
every rule ``a(T) --> [tok], rest`` becomes ``t(a(T)) --> [tok], rest'``,
where ``rest'`` wraps each nonterminal call ``c(V)`` as ``g(c(V))``.  The
encoded grammar starts with the two generic rules::

    g(X) --> g(Y), d(Y,X).
    g(X) --> t(X).

which left-recursion elimination swaps for::

    g(X) --> t(Y), d_tc(Y,X).
    d_tc(X,X) --> [].
    d_tc(X,Z) --> d(X,Y), d_tc(Y,Z).
"""

from __future__ import annotations

from .errors import EmptyRulePresent, SeedRulesMissing
from .grammar import Grammar, NonterminalCall, Rule, Terminal
from .term import Compound, Term, VarSource
from .transform_empty import DEFAULT_LIMIT, eliminate_empty


def _call(functor: str, *args: Term) -> NonterminalCall:
    return NonterminalCall(Compound(functor, args))


def seed_rules(fresh: VarSource) -> tuple[Rule, Rule]:
    x, y = fresh.fresh("X"), fresh.fresh("Y")
    left_rec = Rule(Compound("g", [x]), (_call("g", y), _call("d", y, x)))
    x = fresh.fresh("X")
    via_t = Rule(Compound("g", [x]), (_call("t", x),))
    return left_rec, via_t


def closure_rules(fresh: VarSource) -> tuple[Rule, Rule, Rule]:
    x, y = fresh.fresh("X"), fresh.fresh("Y")
    g_rule = Rule(Compound("g", [x]), (_call("t", y), _call("d_tc", y, x)))
    x = fresh.fresh("X")
    base = Rule(Compound("d_tc", [x, x]), ())
    x, y, z = fresh.fresh("X"), fresh.fresh("Y"), fresh.fresh("Z")
    step = Rule(Compound("d_tc", [x, z]), (_call("d", x, y), _call("d_tc", y, z)))
    return g_rule, base, step


def _wrap(items) -> tuple:
    return tuple(_call("g", i.term) if isinstance(i, NonterminalCall) else i for i in items)


def encode_rule(rule: Rule) -> Rule:
    if not rule.body:
        raise EmptyRulePresent(f"cannot encode empty rule {rule}")
    first, rest = rule.body[0], rule.body[1:]
    if isinstance(first, Terminal):
        return Rule(Compound("t", [rule.head]), (first,) + _wrap(rest))
    return Rule(Compound("d", [first.term, rule.head]), _wrap(rest))


def encode(g: Grammar) -> Grammar:
    """Encode an empty-free grammar into the generic g/t/d form."""
    for r in g.rules:
        if r.is_empty:
            raise EmptyRulePresent(f"grammar still contains the empty rule {r}")
    fresh = g.fresh_source()
    return Grammar(seed_rules(fresh) + tuple(encode_rule(r) for r in g.rules))


def eliminate_left_recursion(encoded: Grammar) -> Grammar:
    """Replace the two generic g rules by the g/d_tc rules, keeping the rest in order."""
    fresh = encoded.fresh_source()
    wanted = [r.variant_key() for r in seed_rules(VarSource())]
    positions = []
    for key in wanted:
        pos = next((i for i, r in enumerate(encoded.rules) if r.variant_key() == key), None)
        if pos is None:
            raise SeedRulesMissing("grammar lacks the generic rules g(X) --> g(Y), d(Y,X). and g(X) --> t(X).")
        positions.append(pos)
    first = min(positions)
    out: list[Rule] = []
    for i, r in enumerate(encoded.rules):
        if i == first:
            out.extend(closure_rules(fresh))
        elif i not in positions:
            out.append(r)
    return Grammar(tuple(out))


def transform(g: Grammar, limit: int = DEFAULT_LIMIT, occurs_check: bool = True) -> Grammar:
    """Empty-rule elimination, encoding and left-recursion elimination in one go."""
    return eliminate_left_recursion(encode(eliminate_empty(g, limit=limit, occurs_check=occurs_check)))
