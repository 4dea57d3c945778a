"""Removal of empty productions by repeated partial evaluation.

Empty rules are taken from the work list in FIFO order.  For each one, every
rule of the work list with a unifiable body occurrence of its nonterminal is
specialised: the occurrence is dropped and the unifier applied to the whole
rule.  Rules appended during a scan are scanned too.  Empty rules themselves
are moved aside and are not part of the result, which is therefore
equivalent to the input on non-empty strings only.
"""

from __future__ import annotations

from collections import deque

from .errors import LimitExceeded, NotOfflineParsable
from .grammar import Grammar, NonterminalCall, Rule, rename_apart
from .opcheck import is_offline_parsable
from .term import apply, functor_of, unify

DEFAULT_LIMIT = 10_000


def _specialise(rule: Rule, k: int, empty: Rule, occurs_check: bool) -> Rule | None:
    """Partially evaluate body item `k` of `rule` against an (already renamed) empty rule."""
    s = unify(rule.body[k].term, empty.head, occurs_check=occurs_check)
    if s is None:
        return None
    body = tuple(
        NonterminalCall(apply(s, item.term)) if isinstance(item, NonterminalCall) else item
        for j, item in enumerate(rule.body)
        if j != k
    )
    return Rule(apply(s, rule.head), body)


def eliminate_empty(
    g: Grammar,
    limit: int = DEFAULT_LIMIT,
    check: bool = True,
    occurs_check: bool = True,
) -> Grammar:
    """Return an equivalent grammar (on non-empty strings) without empty rules.

    Raises NotOfflineParsable when `check` is on and the grammar fails the
    offline-parsability test, and LimitExceeded when more than `limit` rules
    get generated.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    if check:
        verdict = is_offline_parsable(g)
        if not verdict.offline_parsable:
            raise NotOfflineParsable(verdict)

    fresh = g.fresh_source()
    list1: list[Rule | None] = list(g.rules)  # moved-out slots become None
    seen = {r.variant_key() for r in g.rules}
    pending = deque(i for i, r in enumerate(list1) if r.is_empty)
    generated = 0

    while pending:
        idx = pending.popleft()
        er, list1[idx] = list1[idx], None
        name_arity = functor_of(er.head)
        i = 0
        while i < len(list1):
            r = list1[i]
            i += 1
            if r is None:
                continue
            for k, item in enumerate(r.body):
                if not isinstance(item, NonterminalCall) or functor_of(item.term) != name_arity:
                    continue
                new = _specialise(r, k, rename_apart(er, fresh), occurs_check)
                if new is None:
                    continue
                key = new.variant_key()
                if key in seen:
                    continue
                seen.add(key)
                generated += 1
                if generated > limit:
                    raise LimitExceeded(
                        f"more than {limit} rules generated while removing empty rules; "
                        "the grammar is probably not offline-parsable"
                    )
                list1.append(new)
                if new.is_empty:
                    pending.append(len(list1) - 1)

    return Grammar(tuple(r for r in list1 if r is not None))
