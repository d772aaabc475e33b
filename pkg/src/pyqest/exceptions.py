class PyqestError(Exception):
    pass


class IndexOutOfRange(PyqestError, IndexError):
    pass


class InvalidPair(PyqestError, ValueError):
    pass


class DegenerateState(PyqestError, ArithmeticError):
    pass


class NonFiniteState(PyqestError, ArithmeticError):
    pass


class EmptySeries(PyqestError, ValueError):
    pass


class WindowTooShort(PyqestError, ValueError):
    pass


class RegimeViolation(PyqestError, ValueError):
    pass


class ConfigError(PyqestError, ValueError):
    pass


class ParseError(ConfigError):
    pass


class ValidationError(ConfigError):
    pass
