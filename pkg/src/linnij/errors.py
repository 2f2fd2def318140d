"""Exception types shared across the package."""


class LinnijError(Exception):
    """Base class for package-specific errors."""


class RadicandMismatchError(LinnijError):
    """Two scalars with different nonzero radicands met in one operation."""


class NotRepresentableError(LinnijError):
    """A required square root does not exist in the working field."""


class DimensionMismatchError(LinnijError):
    """Operands disagree on variable count or matrix shape."""


class SingularMatrixError(LinnijError):
    """A matrix that must be invertible is not."""


class DependentSigmasError(LinnijError):
    """The Jacobian determinant of a sigma set vanishes identically.

    ``indices`` lists the 1-based positions whose differentials are
    linear combinations of the previous ones.
    """

    def __init__(self, indices):
        self.indices = list(indices)
        names = ", ".join("sigma_%d" % i for i in self.indices)
        super().__init__(
            "Jacobian determinant vanishes identically; "
            "functionally dependent entries: %s" % names
        )


class FormatError(LinnijError):
    """Malformed textual or JSON input."""
