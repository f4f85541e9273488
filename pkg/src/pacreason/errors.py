class SizeLimitError(RuntimeError):
    """An exhaustive computation was asked to run beyond its hard size guard."""


class InfeasibleParameters(RuntimeError):
    """Theory-derived sample sizes or widths are too large to run."""


class FormatError(ValueError):
    """Malformed input text. ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnsolvableSystem(ValueError):
    """An F2 linear system with no solutions."""
