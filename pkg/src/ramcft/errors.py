"""Exception types shared across the package."""


class RamcftError(Exception):
    pass


class NotAPthPower(RamcftError):
    pass


class ZeroPolynomial(RamcftError):
    pass


class ZeroFunction(RamcftError):
    pass


class FieldMismatch(RamcftError):
    pass


class ParseError(RamcftError):
    def __init__(self, msg, token=None, pos=None):
        self.msg = msg
        self.token = token
        self.pos = pos
        if token is not None:
            msg = f"{msg} (token {token!r} at position {pos})"
        super().__init__(msg)


class InsufficientPrecision(RamcftError):
    pass


class NotInFiltration(RamcftError):
    pass


class LengthMismatch(RamcftError):
    pass


class LengthOverflow(RamcftError):
    pass


class NonTermination(RamcftError):
    pass


class BudgetExceeded(RamcftError):
    pass


class ConductorTooSmall(RamcftError):
    pass


class ImperfectResidue(RamcftError):
    pass


class NoPreimage(RamcftError):
    pass


class MalformedPresentation(RamcftError):
    pass


class PreconditionViolated(RamcftError):
    pass


class RamifiedPlace(RamcftError):
    pass


class RestrictionUndefined(RamcftError):
    pass


class CommonComponent(RamcftError):
    pass


class DegenerateConfiguration(RamcftError):
    pass
