"""Error types and diagnostics for the feature term compiler."""

from typing import Optional

from pydantic import BaseModel


class Diagnostic(BaseModel):
    """One reportable problem."""
    error_class: str
    message: str
    file: Optional[str] = None
    line: Optional[int] = None
    column: Optional[int] = None

    def render(self) -> str:
        where = self.file or "<input>"
        if self.line is not None:
            where += f":{self.line}"
            if self.column is not None:
                where += f":{self.column}"
        return f"{where}: {self.error_class}: {self.message}"


class FitError(Exception):
    """Base class for every error the compiler reports to the user."""

    error_class = "error"

    def __init__(self, message: str, file: Optional[str] = None,
                 line: Optional[int] = None, column: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.file = file
        self.line = line
        self.column = column

    def located(self, file: Optional[str] = None, line: Optional[int] = None) -> "FitError":
        """Fill in a location the raising code did not know about."""
        if self.file is None:
            self.file = file
        if self.line is None:
            self.line = line
        return self

    def to_diagnostic(self) -> Diagnostic:
        return Diagnostic(
            error_class=self.error_class,
            message=self.message,
            file=self.file,
            line=self.line,
            column=self.column,
        )

    def __str__(self) -> str:
        return self.to_diagnostic().render()


class FitSyntaxError(FitError):
    error_class = "syntax"


class SignatureError(FitError):
    error_class = "signature"


class TemplateError(FitError):
    error_class = "template"


class SearchError(FitError):
    error_class = "search"


class InconsistencyError(FitError):
    error_class = "inconsistency"


class EmptyDomainError(FitError):
    error_class = "empty-domain"


class DecodeError(FitError):
    error_class = "decode"


class UnknownPredicateError(FitError):
    error_class = "runtime"


class KnowledgeBaseError(FitError):
    error_class = "kb"


class StepLimitError(FitError):
    error_class = "runtime"
