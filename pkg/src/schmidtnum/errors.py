"""Exception types shared across the package.

Two failure classes are distinguished so the command-line layer can map
them onto distinct exit codes: bad input (ValidationError, exit 1) versus
a numerical result that violates an internal integrity check
(NumericsError, exit 2).
"""


class ValidationError(ValueError):
    """Input violates a documented precondition or file-format invariant."""


class NumericsError(RuntimeError):
    """A computed quantity failed an internal numerical-integrity check."""
