class QswError(Exception):
    """Base class of every error raised by qswnet."""


class ConfigError(QswError, ValueError):
    """Invalid experiment configuration."""


class ModelSpecError(ConfigError):
    """Malformed model-spec string or impossible layered network."""


class MaskViolationError(ConfigError):
    """Hamiltonian or transition matrix not supported on the topology mask."""


class UnsupportedEnsembleError(ConfigError):
    """Unknown ensemble family, or an ensemble that does not fit the requested operation."""


class InvalidStateError(QswError, ValueError):
    """Density matrix or Bloch vector violating its invariants."""


class NumericalError(QswError, ArithmeticError):
    """Non-finite evolution or a result violating a physical bound."""
