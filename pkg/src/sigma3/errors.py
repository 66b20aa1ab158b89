"""Exception types shared across the package.

Each error maps to a distinct failure mode so callers (and the CLI exit-code
contract) can tell "not tabulated" apart from "search gave up".
"""


class Sigma3Error(Exception):
    """Base class for all package errors."""


class ParseError(Sigma3Error, ValueError):
    """A textual literal (group, complex, wedge, vector, descriptor) failed to parse."""

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class UnsupportedTable(Sigma3Error):
    """A (host, degree) pair outside the tabulated range."""


class UnknownComposite(Sigma3Error):
    """A (morphism, generator) pair absent from the closed-world composition table."""

    def __init__(self, morph, gen, detail=""):
        self.morph = morph
        self.gen = gen
        msg = f"composite {morph} o {gen} is not in the composition table"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class Indeterminate(Sigma3Error):
    """A bounded search or rewrite exhausted its budget, or no rule applies."""


class FlagMismatch(Sigma3Error):
    """Operation flags contradict the attaching data or the case selection."""


class InvalidSplitting(Sigma3Error):
    """Manifold invariants or splitting data violate a structural constraint."""


class NoCarrier(Sigma3Error):
    """No admissible carrier X exists for the 3-primary part of the top cell."""


class NotApplicable(Sigma3Error):
    """Hypotheses of a transfer lemma do not hold for the given patterns."""


class NotAdmissible(Sigma3Error):
    """A coefficient lies outside the admissible attaching-map domain."""


class UnsupportedPattern(Sigma3Error):
    """A cone pattern outside the families an operation lemma covers."""
