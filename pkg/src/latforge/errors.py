"""Exception hierarchy shared by all latforge modules."""


class LatticeError(Exception):
    """Base class for all latforge errors."""


class DependentRowsError(LatticeError):
    """Basis rows are linearly dependent over the rationals."""


class BoxTooLargeError(LatticeError):
    """Enumeration box exceeds the configured budget."""


class DegreeMismatchError(LatticeError):
    """Permutation degree does not match the object it is applied to."""


class InfeasibleRadiusError(LatticeError):
    """No permutation exists at the requested Hamming radius."""


class DegreeTooSmallError(LatticeError):
    """Degree too small for the requested sampling operation."""


class NotPrimeError(LatticeError):
    """Parameter expected to be prime is not."""


class BadBlockingError(LatticeError):
    """Rows cannot be partitioned into blocks of the requested shape."""


class StageInfeasibleError(LatticeError):
    """A pipeline stage cannot run on a basis of this rank."""


class BadStageParamsError(LatticeError):
    """Stage template parameters are inconsistent."""


class ParseError(LatticeError):
    """Malformed lattice file.  Carries the 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"parse error at line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class RankDeficientError(LatticeError):
    """Parsed rows do not form a basis (rank below row count)."""
