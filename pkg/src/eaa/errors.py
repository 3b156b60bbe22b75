"""Exception hierarchy shared by every module of the package."""


class EAAError(Exception):
    """Base class for all errors raised by :mod:`eaa`."""


class NonMonotonicToggles(EAAError, ValueError):
    pass


class NegativeTime(EAAError, ValueError):
    pass


class BadInterval(EAAError, ValueError):
    pass


class ArityMismatch(EAAError, ValueError):
    pass


class ZeroDelay(EAAError, ValueError):
    pass


class GridMismatch(EAAError, ValueError):
    pass


class IndexOutOfRange(EAAError, IndexError):
    pass


class ParseError(EAAError, ValueError):
    """Syntax error in a formula or expression, carrying the offending position."""

    def __init__(self, message: str, position: int | None = None, text: str | None = None):
        self.message = message
        self.position = position
        self.text = text
        if position is None:
            super().__init__(message)
        else:
            super().__init__(f"{message} (at column {position + 1})")


class UnknownIdentifier(ParseError):
    pass


class UnsettledTrajectory(EAAError):
    """An unbounded temporal operator was asked about a trajectory whose future is unknown."""


class QuantifierPresent(EAAError, ValueError):
    pass


class UnsupportedConnector(EAAError, ValueError):
    pass


class EmptyDelaySpace(EAAError, ValueError):
    pass


class UnquantifiedOverManyPaths(EAAError, ValueError):
    pass


class SpecError(EAAError, ValueError):
    """Invalid automaton spec file; names the section and line at fault."""

    def __init__(self, message: str, section: str | None = None, line: int | None = None):
        self.message = message
        self.section = section
        self.line = line
        where = []
        if section is not None:
            where.append(f"section [{section}]")
        if line is not None:
            where.append(f"line {line}")
        super().__init__(f"{', '.join(where)}: {message}" if where else message)
