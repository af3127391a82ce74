"""Error taxonomy shared by every senselex module.

Each error carries a stable ``code`` string so the HTTP layer and the CLI
can map failures onto wire formats / exit codes without string matching.
"""

from __future__ import annotations


class SenselexError(Exception):
    code = "Error"

    def __init__(self, message: str = ""):
        super().__init__(message or self.code)
        self.message = message or self.code


# --- annotation validation -------------------------------------------------

class ValidationError(SenselexError):
    code = "ValidationError"


class WrongTagSet(ValidationError):
    code = "WrongTagSet"


class MissingSecondary(ValidationError):
    code = "MissingSecondary"


class UnexpectedSecondary(ValidationError):
    code = "UnexpectedSecondary"


# --- adjudication ----------------------------------------------------------

class EmptyInput(SenselexError):
    code = "EmptyInput"


class UnknownAnnotator(SenselexError):
    code = "UnknownAnnotator"


# --- service ---------------------------------------------------------------

class DuplicateEmail(SenselexError):
    code = "DuplicateEmail"


class IncompleteQuiz(SenselexError):
    code = "IncompleteQuiz"


class NotPending(SenselexError):
    code = "NotPending"


class Unauthorized(SenselexError):
    code = "Unauthorized"


class BadCredentials(SenselexError):
    code = "BadCredentials"


class InvalidSession(SenselexError):
    code = "InvalidSession"


class NoTasksLeft(SenselexError):
    code = "NoTasksLeft"


class UnknownWord(SenselexError):
    code = "UnknownWord"


class UnknownRequest(SenselexError):
    code = "UnknownRequest"


class EmptyField(SenselexError):
    code = "EmptyField"


# --- corpus / file formats -------------------------------------------------

class FormatError(SenselexError):
    code = "FormatError"

    def __init__(self, message: str = "", line: int | None = None):
        super().__init__(message)
        self.line = line


class UnknownTag(FormatError):
    code = "UnknownTag"


class EmptyLexicon(SenselexError):
    code = "EmptyLexicon"


# --- embeddings / learners -------------------------------------------------

class HeaderMismatch(FormatError):
    code = "HeaderMismatch"


class DimensionMismatch(FormatError):
    code = "DimensionMismatch"


class EmptyCorpus(SenselexError):
    code = "EmptyCorpus"


class NonfiniteLoss(SenselexError):
    code = "NonfiniteLoss"
