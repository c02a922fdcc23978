"""Exception hierarchy.

Two families matter to callers: validation failures (bad inputs, wrong domain
objects) and computation-domain failures (an otherwise well-posed request that
the numerical contract cannot honour). The CLI maps them to exit codes 2 and 3.
"""


class JacobiFormError(Exception):
    """Base class for all library-specific errors."""


class ValidationError(JacobiFormError, ValueError):
    """Invalid input or out-of-contract argument (CLI exit code 2)."""


class ComputationDomainError(JacobiFormError, ArithmeticError):
    """Well-formed request outside the guaranteed computation domain (CLI exit code 3)."""


# -- lattice validation -------------------------------------------------------

class NotSymmetricError(ValidationError):
    pass


class OddDiagonalError(ValidationError):
    pass


class NotPositiveDefiniteError(ValidationError):
    def __init__(self, minor_index, minor_value):
        self.minor_index = minor_index
        self.minor_value = minor_value
        super().__init__(
            f"leading principal minor {minor_index} is {minor_value} (must be positive)"
        )


class DegenerateError(ValidationError):
    pass


class NotInDualLatticeError(ValidationError):
    pass


class NonIntegralArgumentError(ValidationError):
    pass


# -- number theory ------------------------------------------------------------

class NotADiscriminantError(ValidationError):
    pass


class NotFundamentalError(ValidationError):
    pass


# -- series / representation domain -------------------------------------------

class NotIsotropicError(ValidationError):
    pass


class OddWeightError(ValidationError):
    pass


class UnsupportedOrderError(ValidationError):
    pass


class ConvergenceDomainError(ComputationDomainError):
    pass


class OutOfRangeError(ComputationDomainError):
    pass


class TailTooLargeError(ComputationDomainError):
    pass


class ResourceLimitError(ComputationDomainError):
    pass


class StabilizationFailureError(ComputationDomainError):
    pass
