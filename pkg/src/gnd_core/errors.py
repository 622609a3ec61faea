"""
Exceptions raised by gnd-core.

Checking never raises: the kernel reports violations. Parsing, elaboration
and translation raise subclasses of GndError.
"""
from typing import Optional


class GndError(Exception):
    """Base class for all gnd-core errors."""
    pass


class FormulaSyntaxError(GndError):
    """Raised when a formula or sequent does not parse."""

    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position})"
        super().__init__(message)


class ScriptSyntaxError(GndError):
    """Raised when a script file is malformed. Carries the offending text line."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class AlphabetError(ScriptSyntaxError):
    """A formula uses a connective the declared system does not have."""
    pass


class ElaborationError(GndError):
    """Raised when a derived rule cannot be expanded."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ShapeMismatch(ElaborationError):
    """Premises or conclusion do not have the shape the rule requires."""
    pass


class MacroNotInSystem(ElaborationError):
    """The derived rule is not available in the script's system."""
    pass


class UnboundVariableError(GndError):
    """Evaluation met a variable the valuation does not assign."""
    pass


class TranslationError(GndError):
    """A translation was asked for an unsupported pair or produced a bad proof."""
    pass


class HilbertError(GndError):
    """Raised for Hilbert scripts that cannot be transformed."""
    pass
