"""Exception hierarchy shared across the package.

The split matters for the CLI: malformed input (unresolvable ids, bad JSON)
is reported differently from semantically invalid data or violated operation
preconditions.
"""


class InputError(ValueError):
    """Input is structurally malformed: duplicate ids, dangling references,
    unparseable payloads."""


class PreconditionError(ValueError):
    """An operation's precondition does not hold for the given arguments."""


class InvalidTreeError(PreconditionError):
    """An operation that requires a valid tree received an invalid one."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class MoveNotApplicable(PreconditionError):
    """A move cannot be applied: either its own preconditions fail or the
    resulting tree does not validate."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ResourceLimitError(RuntimeError):
    """An enumeration bound exceeds the configured resource limits."""


class CurveError(ValueError):
    """A generating curve is malformed or non-generic (tangential crossing,
    crossing too close to a vertex or endpoint, coincident crossings)."""


class GeometryError(RuntimeError):
    """Internal inconsistency detected by the geometric pipeline; indicates a
    bug or a pathological input that slipped past the genericity checks."""
