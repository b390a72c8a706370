"""Exception types shared across the package."""


class CvpolError(Exception):
    """Base class for all package-specific errors."""


class PhysicsError(CvpolError):
    """A requested state or operation violates quantum-mechanical constraints."""


class ScenarioError(CvpolError):
    """A scenario file is malformed. Carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message
