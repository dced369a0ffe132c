# errors.py
# Exception hierarchy; each family maps onto one CLI exit code


class KrigmorphError(Exception):
    """Base class for every error raised by krigmorph."""

    exit_code = 1


# Exit 2: invalid flags, settings or arguments
class ConfigurationError(KrigmorphError):
    exit_code = 2


class DomainError(KrigmorphError, ValueError):
    exit_code = 2


class DimensionError(KrigmorphError, ValueError):
    exit_code = 2


# Exit 3: unreadable inputs
class ParseError(KrigmorphError):
    exit_code = 3


class MeshReadError(ParseError):
    """A mesh file failed to parse. The message carries path and line number."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        if line is None:
            super().__init__(f"{self.path}: {message}")
        else:
            super().__init__(f"{self.path}:{line}: {message}")


class ParamFileError(ParseError):
    pass


class TableReadError(ParseError):
    pass


# Exit 4: numerical failures
class NumericalError(KrigmorphError):
    exit_code = 4


class SingularMatrixError(NumericalError):
    pass


class ZeroVarianceError(NumericalError):
    pass


class NoSelectableCandidateError(NumericalError):
    pass


class InternalConsistencyError(NumericalError):
    pass
