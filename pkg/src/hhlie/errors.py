"""Exception hierarchy shared by every module."""


class HHLieError(Exception):
    """Base class for all errors raised by hhlie."""


class InputError(HHLieError):
    """Malformed or inconsistent input (exit code 3 in the CLI)."""


class UnknownId(InputError):
    pass


class ShortRelation(InputError):
    pass


class NonParallelRelation(InputError):
    pass


class BadParameters(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class IncomparablePaths(HHLieError):
    """Two paths that the weight order cannot separate."""


class ZeroElement(HHLieError):
    pass


class NonTerminating(HHLieError):
    pass


class NotConfluent(InputError):
    """The reduction system has overlaps that do not resolve."""

    def __init__(self, overlaps):
        self.overlaps = list(overlaps)
        shown = ", ".join(str(o) for o in self.overlaps[:3])
        more = "" if len(self.overlaps) <= 3 else f" (+{len(self.overlaps) - 3} more)"
        super().__init__(f"reduction system is not confluent: {shown}{more}")


class InfiniteDimensional(InputError):
    pass


class CapExceeded(HHLieError):
    pass


class NotParallel(HHLieError):
    pass


class NotGraded(HHLieError):
    pass


class NotLocal(HHLieError):
    pass


class BracketNotClosed(HHLieError):
    pass


class CriterionContradiction(HHLieError):
    """A fired sufficient criterion disagrees with the direct computation."""
