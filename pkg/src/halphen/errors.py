class HalphenError(Exception):
    """Base class for errors raised by this package."""


class InvalidGenusError(HalphenError, ValueError):
    pass


class InconsistentSystemError(HalphenError):
    """A linear system that should be solvable has no (triangular) solution."""


class DegenerateProfileError(HalphenError):
    pass


class NonConstantError(HalphenError):
    """An expression expected to be independent of x still contains P or Pp."""


class NotACubeError(HalphenError):
    def __init__(self, leading):
        super().__init__(f"leading coefficient {leading} is not the cube of a rational")
        self.leading = leading


class InvariantViolation(HalphenError):
    """An asserted structural invariant (degree law, monicity, ...) failed."""


class NotInCorpusError(HalphenError, KeyError):
    pass


class ZeroDenominatorError(HalphenError, ZeroDivisionError):
    pass
