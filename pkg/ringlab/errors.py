from typing import Any, Optional


class RingLabError(RuntimeError):
    """Base class of all errors raised by ringlab"""


class RingMismatchError(RingLabError):
    def __init__(self, expected: str, actual: str) -> None:
        self.expected = expected
        self.actual = actual
        super().__init__(
            'Element of ring `{}` used in ring `{}`'.format(actual, expected)
        )


class NotEnumerableError(RingLabError):
    def __init__(self, ring: str) -> None:
        self.ring = ring
        super().__init__(
            'Ring `{}` is arithmetic-only and not enumerable'.format(ring)
        )


class ConstructionError(RingLabError):
    """
    Invalid input to a ring, endomorphism or action constructor.

    Attributes
    ----------
    verdict: :class:`ringlab.witness.Verdict` or ``None``
        The failing verdict, when the error comes from a validation scan
    """
    def __init__(self, message: str, verdict: Optional[Any] = None) -> None:
        self.verdict = verdict
        super().__init__(message)


class ElementError(RingLabError):
    """A literal or payload does not typecheck against a ring"""


class BudgetExceeded(RingLabError):
    """
    A scan would exceed one of the configured budgets.

    The library never truncates a scan silently; it refuses instead.

    Attributes
    ----------
    budget: str
        Name of the budget (``max_pairs``, ``max_degree`` ...)
    required: int
        What the scan needs
    limit: int
        The configured limit
    flag: str
        The CLI flag that raises the limit
    """
    def __init__(
        self,
        budget: str,
        required: int,
        limit: int,
        flag: str
    ) -> None:
        self.budget = budget
        self.required = required
        self.limit = limit
        self.flag = flag
        super().__init__(
            'Refused: {} needs {} but the budget is {}. '
            'Raise it with `{} {}`'.format(
                budget, required, limit, flag, required
            )
        )


class InconclusiveError(RingLabError):
    """No certificate could be found within budget"""


class DSLSyntaxError(RingLabError):
    """
    Parse error in a ring expression or element literal

    Attributes
    ----------
    line: int
        1-based line of the error
    column: int
        1-based column of the error
    """
    def __init__(self, message: str, text: str, position: int) -> None:
        self.text = text
        self.position = position
        self.line = text.count('\n', 0, position) + 1
        line_start = text.rfind('\n', 0, position) + 1
        self.column = position - line_start + 1
        line_end = text.find('\n', position)
        if line_end < 0:
            line_end = len(text)
        self.source_line = text[line_start:line_end]
        super().__init__('{} at line {}, column {}\n{}\n{}^'.format(
            message,
            self.line,
            self.column,
            self.source_line,
            ' ' * (self.column - 1)
        ))


class WitnessError(RingLabError):
    """A witness file does not parse or does not typecheck"""
