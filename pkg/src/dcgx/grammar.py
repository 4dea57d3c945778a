"""DCG rules and grammars, the ``.dcg`` text format, and the CF skeleton.

Concrete syntax::

    % comment to end of line
    s(s(NP,VP)) --> np(NP), vp(VP).
    vp(vp(v(sleep),C)) --> [sleep], comp(C).
    comp(nil) --> [].

Variables start with an uppercase letter or ``_`` (a bare ``_`` is fresh at
every occurrence); atoms, functors and tokens start with a lowercase letter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Union

from .errors import Diagnostic, GrammarSyntaxError
from .term import Atom, Compound, Term, Var, VarSource, functor_of, max_var_id, rename, variables, variant_key

RESERVED = frozenset({"g", "t", "d", "d_tc"})


class Symbol(NamedTuple):
    name: str
    arity: int

    def __str__(self):
        return f"{self.name}/{self.arity}"


def parse_symbol(text: str) -> Symbol:
    """Parse ``name/arity``; a bare name means arity 0."""
    name, sep, arity = text.strip().partition("/")
    if not re.fullmatch(r"[a-z][A-Za-z0-9_]*", name) or (sep and not arity.isdigit()):
        raise ValueError(f"bad symbol {text!r}, expected name/arity")
    return Symbol(name, int(arity) if sep else 0)


@dataclass(frozen=True)
class Terminal:
    token: str

    def __str__(self):
        return f"[{self.token}]"


@dataclass(frozen=True)
class NonterminalCall:
    term: Term

    @property
    def symbol(self) -> Symbol:
        return Symbol(*functor_of(self.term))

    def __str__(self):
        return str(self.term)


BodyItem = Union[Terminal, NonterminalCall]


@dataclass(frozen=True)
class Rule:
    head: Term
    body: tuple[BodyItem, ...] = ()

    def __post_init__(self):
        if functor_of(self.head) is None:
            raise ValueError("rule head must be an atom or compound term")
        object.__setattr__(self, "body", tuple(self.body))

    @property
    def symbol(self) -> Symbol:
        return Symbol(*functor_of(self.head))

    @property
    def is_empty(self) -> bool:
        return not self.body

    def terms(self):
        yield self.head
        for item in self.body:
            if isinstance(item, NonterminalCall):
                yield item.term

    def variant_key(self):
        numbering: dict = {}
        head = variant_key(self.head, numbering)
        body = tuple(
            ("$T", item.token) if isinstance(item, Terminal) else variant_key(item.term, numbering)
            for item in self.body
        )
        return head, body

    def is_variant(self, other: Rule) -> bool:
        return self.variant_key() == other.variant_key()

    def __str__(self):
        return format_rule(self)


def rename_apart(rule: Rule, fresh: VarSource) -> Rule:
    """Alphabetic variant of `rule` whose variables are all new."""
    mapping: dict = {}
    head = rename(rule.head, mapping, fresh)
    body = [
        NonterminalCall(rename(i.term, mapping, fresh)) if isinstance(i, NonterminalCall) else i
        for i in rule.body
    ]
    if not mapping:
        return rule
    return Rule(head, tuple(body))


@dataclass(frozen=True)
class Grammar:
    rules: tuple[Rule, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    @cached_property
    def nonterminals(self) -> frozenset[Symbol]:
        out = set()
        for r in self.rules:
            out.add(r.symbol)
            out.update(i.symbol for i in r.body if isinstance(i, NonterminalCall))
        return frozenset(out)

    @cached_property
    def terminals(self) -> frozenset[str]:
        return frozenset(i.token for r in self.rules for i in r.body if isinstance(i, Terminal))

    @cached_property
    def max_var_id(self) -> int:
        return max_var_id(t for r in self.rules for t in r.terms())

    def fresh_source(self, *terms: Term) -> VarSource:
        """A variable source whose ids clash with nothing in this grammar or `terms`."""
        return VarSource(max(self.max_var_id, max_var_id(terms)) + 1)

    def __str__(self):
        return write_grammar(self)


# --------------------------------------------------------------- reading

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<comment>%[^\n]*)
  | (?P<arrow>-->)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<name>[a-z][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],.])
    """,
    re.VERBOSE,
)


class _Tok(NamedTuple):
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str, diagnostics: list[Diagnostic]) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            diagnostics.append(Diagnostic(line, pos - line_start + 1, f"unexpected character {text[pos]!r}"))
            pos += 1
            continue
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(_Tok(m.group() if kind in ("punct", "arrow") else kind, m.group(), line, pos - line_start + 1))
        for nl in re.finditer("\n", m.group()):
            line += 1
            line_start = pos + nl.end()
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


class _SyntaxError(Exception):
    def __init__(self, tok: _Tok, message: str):
        self.diagnostic = Diagnostic(tok.line, tok.col, message)


class _Reader:
    def __init__(self, toks: list[_Tok], fresh: VarSource, allow_reserved: bool):
        self.toks = toks
        self.i = 0
        self.fresh = fresh
        self.allow_reserved = allow_reserved
        self.scope: dict[str, Var] = {}

    @property
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        tok = self.toks[self.i]
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, kind: str) -> _Tok:
        tok = self.next()
        if tok.kind != kind:
            found = "end of input" if tok.kind == "eof" else repr(tok.text)
            raise _SyntaxError(tok, f"expected {kind!r}, found {found}")
        return tok

    def term(self) -> Term:
        tok = self.next()
        if tok.kind == "var":
            if tok.text == "_":
                return self.fresh.fresh("_")
            v = self.scope.get(tok.text)
            if v is None:
                v = self.scope[tok.text] = self.fresh.fresh(tok.text)
            return v
        if tok.kind != "name":
            raise _SyntaxError(tok, f"expected a term, found {tok.text or 'end of input'!r}")
        if self.peek.kind != "(":
            return Atom(tok.text)
        self.next()
        args = [self.term()]
        while self.peek.kind == ",":
            self.next()
            args.append(self.term())
        self.expect(")")
        return Compound(tok.text, args)

    def call(self, where: str) -> Term:
        tok = self.peek
        t = self.term()
        if isinstance(t, Var):
            raise _SyntaxError(tok, f"{where} must be a nonterminal call, not a variable")
        if not self.allow_reserved and functor_of(t)[0] in RESERVED:
            raise _SyntaxError(tok, f"reserved nonterminal name {functor_of(t)[0]!r}")
        return t

    def rule(self) -> Rule:
        self.scope = {}
        if self.peek.kind == "[":
            raise _SyntaxError(self.peek, "rule head must be a nonterminal call")
        head = self.call("rule head")
        self.expect("-->")
        body: list[BodyItem] = []
        while True:
            if self.peek.kind == "[":
                self.next()
                if self.peek.kind != "]":
                    body.append(Terminal(self.expect("name").text))
                    while self.peek.kind == ",":
                        self.next()
                        body.append(Terminal(self.expect("name").text))
                self.expect("]")
            else:
                body.append(NonterminalCall(self.call("body item")))
            if self.peek.kind != ",":
                break
            self.next()
        self.expect(".")
        return Rule(head, tuple(body))

    def recover(self):
        while self.peek.kind not in (".", "eof"):
            self.next()
        self.next()


def read_grammar(text: str, allow_reserved: bool = False, fresh: VarSource | None = None) -> Grammar:
    """Parse ``.dcg`` source text.

    Raises GrammarSyntaxError with one diagnostic per bad rule.  The reader
    resynchronises at the next ``.`` so several errors can be reported at once.
    With `allow_reserved` the generic nonterminals ``g``, ``t``, ``d`` and
    ``d_tc`` are accepted (needed to read back transformed grammars).
    """
    diagnostics: list[Diagnostic] = []
    toks = _tokenize(text, diagnostics)
    reader = _Reader(toks, fresh or VarSource(), allow_reserved)
    rules = []
    while reader.peek.kind != "eof":
        try:
            rules.append(reader.rule())
        except _SyntaxError as e:
            diagnostics.append(e.diagnostic)
            reader.recover()
    if diagnostics:
        diagnostics.sort(key=lambda d: (d.line, d.column))
        raise GrammarSyntaxError(diagnostics)
    return Grammar(tuple(rules))


def parse_term(text: str, fresh: VarSource | None = None) -> Term:
    """Parse a single term such as ``s(S)``."""
    diagnostics: list[Diagnostic] = []
    reader = _Reader(_tokenize(text, diagnostics), fresh or VarSource(), True)
    try:
        t = reader.term()
        reader.expect("eof")
    except _SyntaxError as e:
        diagnostics.append(e.diagnostic)
    if diagnostics:
        raise GrammarSyntaxError(diagnostics)
    return t


# --------------------------------------------------------------- writing

def display_names(terms) -> dict[Var, str]:
    """Pick printable, pairwise distinct names for the variables of `terms`.

    Source names are kept unless two different variables share one.  A ``_``
    that occurs more than once gets a real name, since re-reading would split it.
    """
    counts: dict[Var, int] = {}
    for t in terms:
        for v in variables(t):
            counts[v] = counts.get(v, 0) + 1
    by_name: dict[str, list[Var]] = {}
    for v in counts:
        by_name.setdefault(v.name, []).append(v)
    used = set(by_name)
    names: dict[Var, str] = {}
    for name, vs in by_name.items():
        for k, v in enumerate(vs):
            if name == "_" and counts[v] == 1:
                names[v] = "_"
            elif k == 0 and name != "_":
                names[v] = name
            else:
                base = "_V" if name == "_" else name
                n = 1
                while f"{base}{n}" in used:
                    n += 1
                names[v] = f"{base}{n}"
                used.add(names[v])
    return names


def format_term(t: Term, names: dict[Var, str] | None = None) -> str:
    if isinstance(t, Var):
        return names.get(t, t.name) if names else t.name
    if isinstance(t, Atom):
        return t.name
    return f"{t.functor}({','.join(format_term(a, names) for a in t.args)})"


def format_rule(rule: Rule) -> str:
    names = display_names(rule.terms())
    head = format_term(rule.head, names)
    if not rule.body:
        return f"{head} --> []."
    items = ", ".join(
        f"[{i.token}]" if isinstance(i, Terminal) else format_term(i.term, names) for i in rule.body
    )
    return f"{head} --> {items}."


def write_grammar(g: Grammar) -> str:
    return "".join(format_rule(r) + "\n" for r in g.rules)


# --------------------------------------------------------------- skeleton

@dataclass(frozen=True)
class Production:
    lhs: Symbol
    rhs: tuple[Union[Symbol, str], ...]

    def __str__(self):
        if not self.rhs:
            return f"{self.lhs} ::= ε"
        return f"{self.lhs} ::= " + " ".join(str(x) if isinstance(x, Symbol) else repr(x) for x in self.rhs)


@dataclass(frozen=True)
class SkeletonCFG:
    productions: tuple[Production, ...]
    terminals: frozenset[str] = field(default_factory=frozenset)

    @cached_property
    def symbols(self) -> frozenset[Symbol]:
        out = set()
        for p in self.productions:
            out.add(p.lhs)
            out.update(x for x in p.rhs if isinstance(x, Symbol))
        return frozenset(out)


def skeleton(g: Grammar) -> SkeletonCFG:
    """Erase all arguments: one production per rule, in rule order."""
    prods = tuple(
        Production(r.symbol, tuple(i.token if isinstance(i, Terminal) else i.symbol for i in r.body))
        for r in g.rules
    )
    return SkeletonCFG(prods, g.terminals)
