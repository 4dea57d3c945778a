"""First-order terms, idempotent substitutions and unification.

Terms are immutable.  Variables compare by their integer id only; the name
is kept for display.  Fresh ids come from a :class:`VarSource` that callers
pass explicitly, so there is no module-level counter.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Iterator, Mapping
from typing import Union


class Var:
    __slots__ = ("_name", "id")

    ground = False

    def __init__(self, name: str | None, id: int):
        self._name = name
        self.id = id

    @property
    def name(self) -> str:
        return self._name if self._name is not None else f"_G{self.id}"

    def __eq__(self, other):
        return isinstance(other, Var) and other.id == self.id

    def __hash__(self):
        return self.id

    def __repr__(self):
        return f"Var({self.name!r}, {self.id})"

    def __str__(self):
        return self.name


class Atom:
    __slots__ = ("name",)

    ground = True

    def __init__(self, name: str):
        self.name = name

    def __eq__(self, other):
        return isinstance(other, Atom) and other.name == self.name

    def __hash__(self):
        return hash(("Atom", self.name))

    def __repr__(self):
        return f"Atom({self.name!r})"

    def __str__(self):
        return self.name


class Compound:
    __slots__ = ("functor", "args", "ground", "_hash")

    def __init__(self, functor: str, args: Iterable[Term]):
        args = tuple(args)
        if not args:
            raise ValueError(f"compound {functor!r} needs at least one argument; use Atom")
        self.functor = functor
        self.args = args
        self.ground = all(a.ground for a in args)
        self._hash = None

    @property
    def arity(self) -> int:
        return len(self.args)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, Compound)
            and other.functor == self.functor
            and other.args == self.args
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.functor, self.args))
        return self._hash

    def __repr__(self):
        return f"Compound({self.functor!r}, {list(self.args)!r})"

    def __str__(self):
        return f"{self.functor}({','.join(str(a) for a in self.args)})"


Term = Union[Var, Atom, Compound]


class VarSource:
    """Issues variable ids that are never reused within one computation."""

    def __init__(self, start: int = 0):
        self._ids = itertools.count(start)

    def next_id(self) -> int:
        return next(self._ids)

    def fresh(self, name: str | None = None) -> Var:
        # unnamed variables display as _G<id>
        return Var(name, next(self._ids))


def functor_of(t: Term) -> tuple[str, int] | None:
    """Return the name/arity pair of an atom or compound, None for variables."""
    if isinstance(t, Compound):
        return t.functor, len(t.args)
    if isinstance(t, Atom):
        return t.name, 0
    return None


def variables(t: Term) -> Iterator[Var]:
    """Yield the variables of `t` left to right, with repetitions."""
    stack = [t]
    while stack:
        x = stack.pop()
        if isinstance(x, Var):
            yield x
        elif isinstance(x, Compound) and not x.ground:
            stack.extend(reversed(x.args))


def occurs(v: Var, t: Term) -> bool:
    if t.ground:
        return False
    if isinstance(t, Var):
        return t == v
    return any(occurs(v, a) for a in t.args)


def max_var_id(terms: Iterable[Term]) -> int:
    return max((v.id for t in terms for v in variables(t)), default=-1)


class Substitution(Mapping):
    """An idempotent map from variables to terms.

    Every range term is fully resolved: no variable of the domain occurs in
    any binding.  Instances are never mutated after construction.
    """

    __slots__ = ("_map",)

    def __init__(self, bindings: Mapping[Var, Term] | None = None):
        m = dict(bindings) if bindings else {}
        if m:
            # resolve once so that arbitrary (acyclic) input becomes idempotent
            changed = True
            while changed:
                changed = False
                for k, v in m.items():
                    r = _apply(m, v)
                    if r is not v:
                        if occurs(k, r):
                            raise ValueError(f"cyclic binding for {k}")
                        m[k] = r
                        changed = True
        self._map = m

    @classmethod
    def _trusted(cls, m: dict) -> Substitution:
        s = cls.__new__(cls)
        s._map = m
        return s

    def __getitem__(self, v: Var) -> Term:
        return self._map[v]

    def __iter__(self):
        return iter(self._map)

    def __len__(self):
        return len(self._map)

    def __repr__(self):
        inner = ", ".join(f"{k} ↦ {v}" for k, v in self._map.items())
        return "{" + inner + "}"

    def __call__(self, t: Term) -> Term:
        return _apply(self._map, t)


EMPTY = Substitution()


def _apply(m: Mapping[Var, Term], t: Term) -> Term:
    if t.ground or not m:
        return t
    if isinstance(t, Var):
        return m.get(t, t)
    new = [_apply(m, a) for a in t.args]
    if all(x is y for x, y in zip(new, t.args)):
        return t
    return Compound(t.functor, new)


def apply(s: Mapping[Var, Term], t: Term) -> Term:
    """Instantiate `t` by an idempotent substitution."""
    if isinstance(s, Substitution):
        return _apply(s._map, t)
    return _apply(s, t)


def unify(
    t1: Term,
    t2: Term,
    s: Substitution = EMPTY,
    occurs_check: bool = True,
) -> Substitution | None:
    """Most general unifier of `t1` and `t2` extending `s`, or None.

    When two unbound variables meet, the one coming from `t2` is bound to the
    one from `t1`, so callers that pass (goal, renamed rule head) keep the goal's
    variable names.
    """
    m = dict(s._map)
    stack = [(t1, t2)]
    while stack:
        a, b = stack.pop()
        a = _apply(m, a)
        b = _apply(m, b)
        if a is b:
            continue
        if isinstance(b, Var):
            if a == b:
                continue
            if not _bind(m, b, a, occurs_check):
                return None
        elif isinstance(a, Var):
            if not _bind(m, a, b, occurs_check):
                return None
        elif isinstance(a, Atom):
            if a != b:
                return None
        elif isinstance(b, Atom):
            return None
        else:
            if a.functor != b.functor or len(a.args) != len(b.args):
                return None
            stack.extend(zip(a.args, b.args))
    return Substitution._trusted(m)


def _bind(m: dict, v: Var, t: Term, occurs_check: bool) -> bool:
    if occurs_check and occurs(v, t):
        return False
    one = {v: t}
    for k, r in m.items():
        if not r.ground:
            m[k] = _apply(one, r)
    m[v] = t
    return True


def variant_key(t: Term, numbering: dict | None = None):
    """A hashable key equal for two terms iff they are alphabetic variants.

    Pass the same `numbering` dict across several terms to key them jointly
    (e.g. a rule's head and body).
    """
    if numbering is None:
        numbering = {}
    if isinstance(t, Var):
        n = numbering.get(t)
        if n is None:
            n = numbering[t] = len(numbering)
        return ("$V", n)
    if isinstance(t, Atom):
        return t.name
    if t.ground:
        return t
    return (t.functor,) + tuple(variant_key(a, numbering) for a in t.args)


def is_variant(t1: Term, t2: Term) -> bool:
    return variant_key(t1) == variant_key(t2)


def rename(t: Term, mapping: dict, fresh: VarSource) -> Term:
    """Copy `t` replacing each variable by a fresh one, recorded in `mapping`."""
    if t.ground:
        return t
    if isinstance(t, Var):
        v = mapping.get(t)
        if v is None:
            v = mapping[t] = fresh.fresh()
        return v
    return Compound(t.functor, [rename(a, mapping, fresh) for a in t.args])
