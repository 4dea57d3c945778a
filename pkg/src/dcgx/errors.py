class DcgError(Exception):
    """Base class for every error this package raises on purpose."""


class Diagnostic:
    __slots__ = ("line", "column", "message")

    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message

    def __str__(self):
        return f"{self.line}:{self.column}: {self.message}"

    def __repr__(self):
        return f"Diagnostic({self.line}, {self.column}, {self.message!r})"


class GrammarSyntaxError(DcgError):
    def __init__(self, diagnostics: list[Diagnostic]):
        self.diagnostics = list(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))


class NotOfflineParsable(DcgError):
    def __init__(self, verdict):
        self.verdict = verdict
        cycle = " -> ".join(str(s) for s in verdict.witness or ())
        super().__init__(f"grammar is not offline-parsable: {cycle}")


class LimitExceeded(DcgError):
    """Empty-rule elimination generated more rules than allowed.

    On a grammar that passed the offline-parsability check this should not
    happen; it most likely means the grammar is not offline-parsable.
    """


class EmptyRulePresent(DcgError):
    pass


class SeedRulesMissing(DcgError):
    pass


class UnknownNonterminal(DcgError):
    pass
