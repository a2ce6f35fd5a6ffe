"""Exception hierarchy.

Everything raised on bad input derives from :class:`PieError` (itself a
``ValueError``); failures of the redistribution solver derive from
:class:`SolverError`. The CLI maps the two families to exit codes 1 and 2.
"""


class PieError(ValueError):
    pass


# distribution construction
class EmptyDistribution(PieError):
    pass


class NegativeLevel(PieError):
    pass


class NonPositiveShare(PieError):
    pass


class ShareSumOutOfTolerance(PieError):
    pass


class AllZeroLevels(PieError):
    pass


class InvalidTable(PieError):
    pass


class BinCountZero(PieError):
    pass


class InvalidSpec(PieError):
    pass


class NegativeResultLevel(PieError):
    pass


# lorenz / sampler
class POutOfRange(PieError):
    pass


class AllZero(PieError):
    pass


class TruncationSignificant(PieError):
    pass


class TooFewEntries(PieError):
    pass


# dataset io
class ParseError(PieError):
    def __init__(self, message, *, path=None, line=None, field=None):
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = ", ".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)
        self.message = message
        self.path = path
        self.line = line
        self.field = field


class UnknownKind(ParseError):
    pass


class MissingPayload(ParseError):
    pass


class DatasetNotFound(PieError, FileNotFoundError):
    pass


# redistribution solver
class SolverError(PieError):
    pass


class UnreachableTarget(SolverError):
    pass


class NegativeLevelRequired(SolverError):
    pass


class NoConvergence(SolverError):
    pass
