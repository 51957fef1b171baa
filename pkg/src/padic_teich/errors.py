"""Exception hierarchy shared by every module of the package."""


class PadicError(Exception):
    """Base class for all errors raised by padic_teich."""


class DomainError(PadicError, ValueError):
    """Input lies outside the domain where the operation is defined."""


class ZeroInput(DomainError):
    pass


class DivisionByZero(PadicError, ZeroDivisionError):
    pass


class PrecisionExhausted(PadicError):
    """Not enough p-adic digits remain to produce a meaningful result."""


class NonConvergence(PadicError):
    pass


# ramified extensions

class ModulusMismatch(PadicError, ValueError):
    pass


class WildRamificationUnsupported(PadicError):
    def __init__(self, message, d=None):
        super().__init__(message)
        self.d = d


# witt vectors

class LengthMismatch(PadicError, ValueError):
    pass


# diffeomorphism group

class NotAMember(DomainError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class NotInImage(DomainError):
    pass


class NotBijective(PadicError):
    pass


class ZeroScale(DomainError):
    pass


# integration

class DepthInsufficient(PadicError):
    """Subdivision hit the depth limit; carries the partial value and its error bound."""

    def __init__(self, message, partial=None, error_bound=None):
        super().__init__(message)
        self.partial = partial
        self.error_bound = error_bound


class VanishingForm(DomainError):
    pass


class VanishingDensity(DomainError):
    pass


class BadReduction(DomainError):
    pass


# tate curves

class OutOfRange(DomainError):
    pass


class MissingRoot(PadicError):
    pass


class PoleAtTorsionPoint(DomainError):
    pass


class BranchUnavailable(PadicError):
    pass


class ProductMismatch(DomainError):
    pass


class NotTorsion(DomainError):
    pass
