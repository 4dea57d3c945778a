"""Make offline-parsable DCGs safe for plain top-down parsing.

Typical use::

    from dcgx import read_grammar, transform, parse, parse_term
    g = read_grammar(open("sleep.dcg").read())
    for sol in parse(transform(g), parse_term("g(s(S))"), "people sleep"):
        print(sol.binding)
"""

from .engine import DerivationTree, ParseStats, Solution, derivation_check, iter_solutions, parse, parse_bounded
from .errors import (
    DcgError,
    Diagnostic,
    EmptyRulePresent,
    GrammarSyntaxError,
    LimitExceeded,
    NotOfflineParsable,
    SeedRulesMissing,
    UnknownNonterminal,
)
from .grammar import (
    Grammar,
    NonterminalCall,
    Rule,
    SkeletonCFG,
    Symbol,
    Terminal,
    format_rule,
    format_term,
    parse_symbol,
    parse_term,
    read_grammar,
    rename_apart,
    skeleton,
    write_grammar,
)
from .opcheck import OPVerdict, is_offline_parsable, nullable_set, useful_set
from .term import Atom, Compound, Substitution, Term, Var, VarSource, apply, is_variant, unify
from .transform_empty import eliminate_empty
from .transform_leftcorner import eliminate_left_recursion, encode, transform

__all__ = [
    "Atom",
    "Compound",
    "DcgError",
    "DerivationTree",
    "Diagnostic",
    "EmptyRulePresent",
    "Grammar",
    "GrammarSyntaxError",
    "LimitExceeded",
    "NonterminalCall",
    "NotOfflineParsable",
    "OPVerdict",
    "ParseStats",
    "Rule",
    "SeedRulesMissing",
    "SkeletonCFG",
    "Solution",
    "Substitution",
    "Symbol",
    "Term",
    "Terminal",
    "UnknownNonterminal",
    "Var",
    "VarSource",
    "apply",
    "derivation_check",
    "eliminate_empty",
    "eliminate_left_recursion",
    "encode",
    "format_rule",
    "format_term",
    "is_offline_parsable",
    "is_variant",
    "iter_solutions",
    "nullable_set",
    "parse",
    "parse_bounded",
    "parse_symbol",
    "parse_term",
    "read_grammar",
    "rename_apart",
    "skeleton",
    "transform",
    "unify",
    "useful_set",
    "write_grammar",
]

__version__ = "0.1.0"
