"""Exception hierarchy shared by all modules."""


class USPGraphError(Exception):
    """Base class for every error raised by this package."""


class GraphError(USPGraphError, ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class LoopEdge(GraphError):
    pass


class Disconnected(GraphError):
    pass


class VertexOutOfRange(GraphError, IndexError):
    pass


class NotAdjacent(GraphError):
    pass


class GraphMismatch(USPGraphError, ValueError):
    pass


class UnknownClassId(USPGraphError, KeyError):
    pass


class WitnessNotFiner(USPGraphError, ValueError):
    pass


class NotFiner(USPGraphError, ValueError):
    pass


class InternalInconsistency(USPGraphError, AssertionError):
    """Two independent computations of the same fact disagree (a bug)."""


class PartitionMismatch(USPGraphError, ValueError):
    pass


class NotEquitable(USPGraphError, ValueError):
    pass


class NotTwoClasses(USPGraphError, ValueError):
    pass


class NotCertifiedUsp(USPGraphError, ValueError):
    pass


class IsomorphismFailure(USPGraphError, AssertionError):
    """The explicit quotient/product bijection failed; carries the witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PreconditionNotMet(USPGraphError, ValueError):
    pass


class BudgetExceeded(USPGraphError, RuntimeError):
    pass


class TooManyClasses(USPGraphError, ValueError):
    pass


class TooLarge(USPGraphError, ValueError):
    pass


class ParseError(USPGraphError, ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)
        self.line = line
        self.field = field
