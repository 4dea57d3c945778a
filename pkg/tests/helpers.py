import itertools
from collections import Counter

from dcgx.engine import parse, parse_bounded
from dcgx.grammar import Grammar, Rule
from dcgx.term import Atom, Compound, Substitution, functor_of, variables, variant_key


def general_goal(g: Grammar, sym):
    fresh = g.fresh_source()
    if sym.arity == 0:
        return Atom(sym.name)
    return Compound(sym.name, [fresh.fresh(f"A{i}") for i in range(sym.arity)])


def oracle_depth(g: Grammar, n_tokens: int) -> int:
    # an offline-parsable grammar has no derivation of n tokens deeper than this
    return (n_tokens + 1) * max(1, len(g.nonterminals)) + 1


def bounded_solutions(g: Grammar, goal, tokens, depth=None, max_steps=None) -> Counter:
    if functor_of(goal) not in g.nonterminals:
        return Counter()
    if depth is None:
        depth = oracle_depth(g, len(tokens))
    sols = parse_bounded(g, goal, tokens, depth, max_steps=max_steps)
    return Counter(variant_key(s.binding) for s in sols)


def stable_solutions(g: Grammar, goal, tokens, max_steps=None) -> Counter:
    d = oracle_depth(g, len(tokens))
    a = bounded_solutions(g, goal, tokens, d, max_steps)
    b = bounded_solutions(g, goal, tokens, 2 * d, max_steps)
    assert a == b, f"depth {d} is not enough for {tokens}"
    return a


def transformed_solutions(tg: Grammar, goal, tokens, **kw) -> Counter:
    return Counter(variant_key(s.binding.args[0]) for s in parse(tg, Compound("g", [goal]), tokens, **kw))


def strings(vocab, max_len, min_len=1):
    vocab = sorted(vocab)
    for n in range(min_len, max_len + 1):
        yield from itertools.product(vocab, repeat=n)


def freeze(t):
    """Replace each variable by a distinct new atom, for one-way matching."""
    return Substitution({v: Atom(f"$frozen{v.id}") for v in variables(t)})


def rule_term(r: Rule):
    items = [Compound("$t", [Atom(i.token)]) if hasattr(i, "token") else i.term for i in r.body]
    return Compound("$rule", [r.head] + items)
