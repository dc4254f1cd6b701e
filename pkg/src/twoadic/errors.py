"""Exception hierarchy shared by all modules."""


class TwoAdicError(Exception):
    """Base class for every error raised by this package."""


class PrecisionExceeded(TwoAdicError):
    """A computation asked for more low-order bits than the value carries."""


class EvenDivisor(TwoAdicError):
    """Inversion of a non-unit: only odd residues are invertible in Z_2."""


class ModulusTooLarge(TwoAdicError):
    """An exhaustive check over residues mod 2^k was requested with k too big."""


class InvalidParameter(TwoAdicError):
    pass


class NotDivisible(TwoAdicError):
    """A van der Put coefficient misses its mandatory divided power.

    This is the finite signature of a map that is not 1-Lipschitz.
    """

    def __init__(self, index, coefficient=None):
        self.index = index
        self.coefficient = coefficient
        msg = f"coefficient at index {index} is not divisible by 2^floor(log2({index}))"
        if coefficient is not None:
            msg += f" (value {coefficient})"
        super().__init__(msg)


class NotInvariant(TwoAdicError):
    """The sphere is not mapped into itself, so conjugation is undefined."""


class WrongProvenance(TwoAdicError):
    """A decision procedure was applied to a map family it does not cover."""


class PreconditionViolated(TwoAdicError):
    pass


class MapSyntaxError(TwoAdicError):
    """Parse failure in the map expression language."""

    def __init__(self, position, message, expected=None):
        self.position = position
        self.expected = tuple(expected) if expected else ()
        super().__init__(f"at position {position}: {message}")


class NonConstantExponent(MapSyntaxError):
    def __init__(self, position):
        super().__init__(position, "exponent of '**' must be a nonnegative integer literal")


class NonConstantInvArgument(MapSyntaxError):
    def __init__(self, position):
        super().__init__(position, "argument of inv(...) must not contain 'x'")


class EvenInvConstant(MapSyntaxError):
    def __init__(self, position):
        super().__init__(position, "argument of inv(...) must be odd")
