"""Exception types shared across the package."""
from __future__ import annotations


class EpisimError(Exception):
    """Base class for all errors raised by episim."""


class ValidationError(EpisimError):
    """One or more configuration fields violate their constraints.

    ``problems`` holds every violation as ``(field, message)`` so callers
    (CLI, HTTP gateway) can surface the complete list in one response.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [("", problems)]
        self.problems = list(problems)
        lines = "; ".join(f"{f}: {m}" if f else m for f, m in self.problems)
        super().__init__(f"invalid configuration: {lines}")

    @property
    def fields(self):
        return [f for f, _ in self.problems]


class InputError(EpisimError):
    """An input file is malformed. Collects every row-level diagnostic."""

    def __init__(self, path, diagnostics):
        self.path = str(path)
        self.diagnostics = list(diagnostics)
        summary = "\n".join(self.diagnostics)
        super().__init__(f"{self.path}: {len(self.diagnostics)} problem(s)\n{summary}")


class NotFoundError(EpisimError):
    """Unknown scenario id, county fips, or similar lookup failure."""


class HistoryViolationError(EpisimError):
    """A branch tried to change the timeline before its branch day."""


class HorizonError(EpisimError):
    """A simulation step was requested past the configured horizon."""
