"""Exception hierarchy shared by the simulator, the oracles and the CLI."""


class ZenoError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 4


class InvalidParameterError(ZenoError, ValueError):
    """An angle, probability or matrix argument is outside its allowed domain."""

    exit_code = 2


class QubitIndexError(ZenoError, IndexError):
    """A qubit index is out of range, or control equals target."""

    exit_code = 2


class CapacityError(ZenoError):
    """The requested register exceeds the statevector capacity."""

    exit_code = 3


class AngleParseError(InvalidParameterError):
    """An angle expression could not be parsed."""

    def __init__(self, expr: str, token: str, reason: str = "unexpected token"):
        self.expr = expr
        self.token = token
        super().__init__(f"cannot parse angle {expr!r}: {reason} {token!r}")


class UsageError(ZenoError):
    exit_code = 2


class InvariantViolation(ZenoError):
    """A numerical invariant (norm, trace, cross-route agreement) failed at runtime."""

    exit_code = 4
