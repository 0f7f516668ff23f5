"""Exception hierarchy shared by every module.

Each exception carries a stable ``kind`` string so the command line front
end can map it to an exit code and a machine readable payload.
"""


class TlhierError(Exception):
    kind = "error"

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": str(self)}


class InputError(TlhierError, ValueError):
    """Malformed user input: bad regex, unknown letter, bad JSON."""

    kind = "input"


class RegexSyntaxError(InputError):
    kind = "syntax"

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position

    def to_json(self) -> dict:
        return {"kind": self.kind, "message": str(self), "position": self.position}


class AlphabetMismatch(InputError):
    kind = "alphabet_mismatch"


class ResourceLimit(TlhierError):
    """A configurable size guard was exceeded."""

    kind = "resource"


class BaseUnsupported(TlhierError):
    """The requested base class has no implemented pair engine."""

    kind = "unsupported"


class ExactnessRequired(TlhierError):
    kind = "exactness_required"
