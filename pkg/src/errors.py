"""
Exception hierarchy shared by the algebra, fibration and suite packages.
"""

from typing import Optional


class AlgebraError(Exception):
    """Base class for every error raised by the workbench"""


class InvalidArgumentError(AlgebraError, ValueError):
    """Input violates a documented precondition"""


class SpecParseError(InvalidArgumentError):
    """A group/action spec or JSON document could not be parsed"""

    def __init__(self, message: str, position: Optional[str] = None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class ResourceLimitError(AlgebraError):
    """An enumeration would exceed the configured budget"""

    def __init__(self, what: str, required: int, bound: int):
        self.what = what
        self.required = required
        self.bound = bound
        super().__init__(
            f"{what} needs {required} candidates, over the enumeration bound {bound}"
        )


class InternalInconsistencyError(AlgebraError):
    """A universal property failed where the theory guarantees it (broken oracle)"""


class UnknownSuiteError(InvalidArgumentError):
    """The requested verification suite does not exist"""

    def __init__(self, name: str, known):
        self.name = name
        super().__init__(f"unknown suite {name!r}, expected one of: {', '.join(known)}")
