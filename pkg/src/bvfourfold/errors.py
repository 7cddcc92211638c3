"""Exception hierarchy.

Anything derived from :class:`InvalidInput` is a user error (CLI exit code 2);
:class:`InvariantViolation` means an internal consistency check failed
(CLI exit code 3).
"""

from __future__ import annotations


class InvalidInput(ValueError):
    """Input rejected by a precondition check."""


class DegenerateModel(InvalidInput):
    """The discriminant 4A^3 + 27B^2 vanishes identically."""


class NonMinimalModel(InvalidInput):
    """Some point has ord(A) >= 4 and ord(B) >= 6."""

    def __init__(self, message: str, stratum=None):
        super().__init__(message)
        self.stratum = stratum


class UnsupportedConfiguration(InvalidInput):
    """The fiber configuration is outside what a formula covers."""


class InvariantViolation(RuntimeError):
    """An internal identity failed; this points at a bug, not at the input."""

    def __init__(self, message: str, data=None):
        super().__init__(message)
        self.data = data
