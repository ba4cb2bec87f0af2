"""Exception hierarchy.

Usage-type errors (bad parameters, malformed inputs) map to CLI exit code 2.
VerificationError subclasses signal a failed numerical property check and map
to exit code 1.
"""


class ProgsetError(Exception):
    """Base class for all package errors."""


# --- usage / construction errors -------------------------------------------

class ConfigError(ProgsetError):
    pass


class NotPrime(ProgsetError):
    def __init__(self, p: int):
        super().__init__(f"p={p} is not prime")
        self.p = p


class ReducibleModulus(ProgsetError):
    pass


class FieldTooLarge(ProgsetError):
    def __init__(self, q: int, max_q: int):
        super().__init__(f"q={q} exceeds the configured maximum {max_q}")
        self.q = q
        self.max_q = max_q


class FieldMismatch(ProgsetError):
    pass


class ZeroInverse(ProgsetError):
    pass


class DlogOfZero(ProgsetError):
    pass


class SetFileError(ProgsetError):
    pass


class KTooSmall(ProgsetError):
    pass


class KTooLarge(ProgsetError):
    pass


class KExceedsCharacteristic(ProgsetError):
    pass


class SetTooSmall(ProgsetError):
    pass


class ZeroShift(ProgsetError):
    pass


class BadDensity(ProgsetError):
    pass


class EvenCharacteristic(ProgsetError):
    pass


class NotADivisor(ProgsetError):
    pass


class NotPrimeField(ProgsetError):
    pass


class IoError(ProgsetError):
    pass


# --- verification failures --------------------------------------------------

class VerificationError(ProgsetError):
    """A numerical property check failed; carries the offending instance."""


class OrthogonalityViolation(VerificationError):
    def __init__(self, what: str, magnitude: float):
        super().__init__(f"orthogonality violated at {what}: residual {magnitude:.3e}")
        self.what = what
        self.magnitude = magnitude


class WeilViolation(VerificationError):
    def __init__(self, chars, value: float, bound: float):
        super().__init__(
            f"Weil bound violated for characters {chars}: |sum|={value:.6f} > {bound:.6f}"
        )
        self.chars = tuple(chars)
        self.value = value
        self.bound = bound


class GpStructureViolation(VerificationError):
    def __init__(self, chars, value: float, bound: float):
        super().__init__(
            f"GP structure bound violated for characters {chars}: |sum|={value:.6f} >= {bound:.6f}"
        )
        self.chars = tuple(chars)
        self.value = value
        self.bound = bound


class IdentityViolation(VerificationError):
    def __init__(self, what: str, deviation: float):
        super().__init__(f"counting identity violated at {what}: deviation {deviation:.3e}")
        self.what = what
        self.deviation = deviation


class CauchyViolation(VerificationError):
    def __init__(self, lhs: float, rhs: float):
        super().__init__(f"Cauchy step violated: {lhs:.6f} > {rhs:.6f}")
        self.lhs = lhs
        self.rhs = rhs


class TheoremCounterexample(VerificationError):
    """A set pair met an exact theorem hypothesis but no progression was found."""

    def __init__(self, message: str, dump: dict):
        super().__init__(message)
        self.dump = dump
