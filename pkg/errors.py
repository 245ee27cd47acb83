"""
Exception hierarchy for the RA-loop workbench.

Every error carries the exit status the command line reports for it.
Property failures are not errors: they come back as PropertyCheck records.
"""


class WorkbenchError(Exception):
    exit_status = 1


class DimensionError(WorkbenchError, ValueError):
    """Exponent vector length does not match the factor count of its group."""


class GroupMismatchError(WorkbenchError, ValueError):
    """Operands belong to different groups, presentations or loops."""


class NotEnumerableError(WorkbenchError, ValueError):
    """Enumeration or materialization requested for an infinite center."""

    exit_status = 2


class ConstraintError(WorkbenchError, ValueError):
    """Parameters violate a row, type or configuration constraint."""

    exit_status = 2


class DocumentParseError(WorkbenchError, ValueError):
    """Malformed Cayley file, presentation document or spec document."""

    exit_status = 3


class NormalizationError(WorkbenchError, RuntimeError):
    """A rewrite produced a presentation other than the one it promised."""

    exit_status = 4
