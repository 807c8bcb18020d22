"""Exception types shared across the package."""


class LaxdynError(Exception):
    """Base class for all errors raised by laxdyn."""


class ShapeError(LaxdynError):
    """Raised when values do not fit together (wrong sets, missing keys,
    mismatched parameters) before any law can even be checked."""


class ValidationError(LaxdynError):
    """Raised by builders when a constructed value violates its laws.

    Carries the full violation report so callers can show every witness.
    """

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report

    def __str__(self):
        base = super().__str__()
        lines = self.report.lines()
        if not lines:
            return base
        return base + "\n" + "\n".join("  " + ln for ln in lines)


class SpecFormatError(LaxdynError):
    """Raised on malformed or unresolvable spec documents.

    ``path`` points at the offending field, e.g. ``body.transitions.d``.
    """

    def __init__(self, message, path=""):
        super().__init__(message)
        self.path = path

    def __str__(self):
        msg = super().__str__()
        return f"{self.path}: {msg}" if self.path else msg


class OracleBoundError(LaxdynError):
    """Raised when the brute-force realization oracle refuses an instance
    whose candidate count exceeds its configured bound."""
