"""
Exception hierarchy shared by all numerics modules
"""


class QfiNoiseError(Exception):
    """Base class for library errors"""


class ArgumentError(QfiNoiseError, ValueError):
    """Invalid argument to a constructor or operation"""


class DimensionMismatchError(QfiNoiseError, ValueError):
    """Operand shapes or site dimensions are inconsistent"""


class NotHermitianError(QfiNoiseError, ValueError):
    """A Hermitian operand was required"""


class NotPSDError(QfiNoiseError, ValueError):
    """An eigenvalue fell below the negative PSD tolerance"""


class StateArgumentError(ArgumentError):
    """Invalid state constructor argument"""


class EnsembleConfigError(QfiNoiseError):
    """Invalid Hamiltonian ensemble configuration"""


class UnsupportedRestrictionError(QfiNoiseError):
    """The requested computation does not support this generator restriction"""


class DomainError(QfiNoiseError, ValueError):
    """Argument outside the mathematical domain of the operation"""
