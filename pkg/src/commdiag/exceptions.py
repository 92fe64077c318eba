"""Exception hierarchy.

Errors fall in three families that the CLI maps to distinct exit codes:
input problems (bad shapes, unparsable files), failed checks (the
matrices do not satisfy a hypothesis such as commutation), and numerical
failures (the algorithm could not certify its own output).
"""


class CommDiagError(Exception):
    """Base class for every error raised by this package."""


class InputError(CommDiagError, ValueError):
    """Malformed or non-conformable input."""


class DimensionError(InputError):
    pass


class InvalidPermutation(InputError):
    pass


class InvalidSpec(InputError):
    pass


class ParseError(InputError):
    """Matrix text could not be parsed.

    ``line`` is the 1-based line in the text, ``row`` the 1-based matrix
    row on that line (if any) and ``column`` the 1-based entry within it.
    """

    def __init__(self, message, line=None, column=None, row=None):
        self.line = line
        self.column = column
        self.row = row
        where = []
        if line is not None:
            where.append(f"line {line}")
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"entry {column}")
        prefix = ", ".join(where) + ": " if where else ""
        super().__init__(prefix + message)


class CheckFailed(CommDiagError):
    """A structural hypothesis does not hold for the given inputs."""


class NotCommuting(CheckFailed):
    pass


class NotStarCommuting(CheckFailed):
    pass


class NoCorrespondence(CheckFailed):
    """Two eigenvector matrices are not related by a column permutation and scaling."""


class NumericalError(CommDiagError, ArithmeticError):
    """The computation ran but its result could not be certified."""


class SingularMatrixError(NumericalError):
    def __init__(self, message, pivot=0.0):
        self.pivot = pivot
        super().__init__(f"{message} (pivot magnitude {pivot:.3e})")


class NotDiagonalizable(NumericalError):
    pass


class NonConvergence(NumericalError):
    pass


class RankDeficientCluster(NumericalError):
    pass


class AmbiguousClustering(NumericalError):
    pass


class BlockLeakage(NumericalError):
    """The restriction matrix is not block diagonal to tolerance."""


class InternalDiagnostic(NumericalError):
    """An invariant that holds in exact arithmetic was violated beyond rounding."""
