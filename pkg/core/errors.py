# Errors
# - LaminateError
# - DomainError / InadmissibleError
# - OrientationError
# - ConstraintError
# - InvertibilityError
# - ArgumentError
# - SingularConfigurationError
# - ConstructionError
# - ConfigError
# - NumericalCheckError


class LaminateError(Exception):
    pass

class DomainError(LaminateError):
    pass

class InadmissibleError(DomainError):
    pass

class OrientationError(LaminateError):
    pass

class ConstraintError(LaminateError):
    pass

class InvertibilityError(LaminateError):
    pass

class ArgumentError(LaminateError):
    pass

class SingularConfigurationError(LaminateError):
    pass

class ConstructionError(LaminateError):
    pass

class ConfigError(LaminateError):
    """Malformed or incomplete analysis config. `key` / `line` point at the culprit when known."""

    def __init__(self, message: str, key: str = None, line: int = None):
        super().__init__(message)
        self.key = key
        self.line = line

class NumericalCheckError(LaminateError):
    pass
