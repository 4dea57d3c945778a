"""Offline-parsability: is the context-free skeleton infinitely ambiguous?

A reduced CFG is infinitely ambiguous exactly when some useful symbol A
derives A.  Such a derivation is a cycle in the *chain graph*, which has an
edge A -> B for every production ``A ::= α B β`` whose α and β are nullable.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .grammar import Grammar, SkeletonCFG, Symbol, skeleton


@dataclass(frozen=True)
class OPVerdict:
    offline_parsable: bool
    witness: tuple[Symbol, ...] | None
    nullable: frozenset[Symbol]
    useful: frozenset[Symbol]

    def __str__(self):
        if self.offline_parsable:
            return "offline-parsable"
        return "NOT offline-parsable: " + " -> ".join(str(s) for s in self.witness)


def nullable_set(cfg: SkeletonCFG) -> frozenset[Symbol]:
    nullable: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in cfg.productions:
            if p.lhs not in nullable and all(x in nullable for x in p.rhs):
                nullable.add(p.lhs)
                changed = True
    return frozenset(nullable)


def productive_set(cfg: SkeletonCFG) -> frozenset[Symbol]:
    productive: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in cfg.productions:
            if p.lhs not in productive and all(
                not isinstance(x, Symbol) or x in productive for x in p.rhs
            ):
                productive.add(p.lhs)
                changed = True
    return frozenset(productive)


def useful_set(cfg: SkeletonCFG, start: Iterable[Symbol] | None = None) -> frozenset[Symbol]:
    """Symbols that are productive and reachable from `start` through productive rules.

    With no `start`, every symbol counts as a start symbol.
    """
    productive = productive_set(cfg)
    roots = cfg.symbols if start is None else frozenset(start)
    seen = {s for s in roots if s in productive}
    todo = list(seen)
    while todo:
        a = todo.pop()
        for p in cfg.productions:
            if p.lhs != a:
                continue
            if not all(not isinstance(x, Symbol) or x in productive for x in p.rhs):
                continue
            for x in p.rhs:
                if isinstance(x, Symbol) and x not in seen:
                    seen.add(x)
                    todo.append(x)
    return frozenset(seen)


def chain_graph(cfg: SkeletonCFG, nullable: frozenset[Symbol], useful: frozenset[Symbol]) -> dict[Symbol, list[Symbol]]:
    edges: dict[Symbol, list[Symbol]] = {}
    for p in cfg.productions:
        if p.lhs not in useful:
            continue
        # all rhs symbols must be productive for the production to matter
        if not all(not isinstance(x, Symbol) or x in useful for x in p.rhs):
            continue
        for k, b in enumerate(p.rhs):
            if not isinstance(b, Symbol):
                continue
            rest = p.rhs[:k] + p.rhs[k + 1:]
            if all(x in nullable for x in rest):
                succ = edges.setdefault(p.lhs, [])
                if b not in succ:
                    succ.append(b)
    return edges


def find_cycle(edges: dict[Symbol, list[Symbol]]) -> tuple[Symbol, ...] | None:
    """Return some cycle ``(a1, ..., ak, a1)`` of the graph, or None."""
    WHITE, GREY, BLACK = 0, 1, 2
    colour: dict[Symbol, int] = {}
    for root in edges:
        if colour.get(root, WHITE) != WHITE:
            continue
        path = [root]
        colour[root] = GREY
        stack = [iter(edges.get(root, ()))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                colour[path.pop()] = BLACK
                continue
            c = colour.get(nxt, WHITE)
            if c == GREY:
                i = path.index(nxt)
                return tuple(path[i:]) + (nxt,)
            if c == WHITE:
                colour[nxt] = GREY
                path.append(nxt)
                stack.append(iter(edges.get(nxt, ())))
    return None


def is_offline_parsable(g: Grammar, start: Symbol | Iterable[Symbol] | None = None) -> OPVerdict:
    cfg = skeleton(g)
    if isinstance(start, Symbol):
        start = [start]
    nullable = nullable_set(cfg)
    useful = useful_set(cfg, start)
    cycle = find_cycle(chain_graph(cfg, nullable, useful))
    return OPVerdict(cycle is None, cycle, nullable, useful)
