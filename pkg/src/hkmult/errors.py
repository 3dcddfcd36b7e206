"""Exception hierarchy. Every error carries a machine-readable ``code``."""


class HKError(Exception):
    code = "error"
    exit_status = 1

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        out = {"code": self.code, "message": self.message}
        out.update(self.details)
        return out


class InputError(HKError):
    """Malformed or invalid user input (exit status 2)."""

    code = "input_error"
    exit_status = 2


class ParseError(InputError):
    code = "syntax_error"

    def __init__(self, message, line=None, column=None):
        super().__init__(message, line=line, column=column)
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return self.message
        return f"{self.message} (line {self.line}, column {self.column})"


class UnknownVariableError(ParseError):
    code = "unknown_variable"


class NotPrimeError(InputError):
    code = "not_prime"


class RingMismatchError(InputError):
    code = "ring_mismatch"


class InhomogeneousError(InputError):
    code = "inhomogeneous"


class NotPowerOfCharacteristicError(InputError):
    code = "not_power_of_p"


class QuotientNotSupportedError(InputError):
    """Raised where Tor over a non-regular quotient ring would be required."""

    code = "quotient_not_supported"


class NotZeroDimensionalError(HKError):
    code = "not_zero_dimensional"
    exit_status = 2


class PoleAtOneError(HKError):
    code = "pole_at_one"
    exit_status = 2


class DivisibilityError(HKError):
    """An exact division left a nonzero remainder."""

    code = "not_divisible"


class IdentityViolation(HKError):
    """An identity that must hold exactly did not."""

    code = "identity_violation"


class ResourceCapError(HKError):
    code = "resource_cap"
    exit_status = 3
