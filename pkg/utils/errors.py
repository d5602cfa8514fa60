class InputError(ValueError):
    """
    Raised when a caller passes input an operation cannot accept, such as an
    out-of-range generator index, an empty set where a nonempty one is needed,
    or a word that is required to be geodesic but is not.
    """


class PreconditionError(InputError):
    """
    Raised when a mathematical hypothesis of an operation fails for the given
    graph (for example a join-reducible graph passed to ``extend_to_letter``).
    """


class GraphParseError(InputError):
    """
    Raised by the graph file parser. Carries the 1-based line and column of
    the offending token.
    """

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class OutOfBallError(KeyError):
    """
    Raised when an oracle lookup falls outside the enumerated ball.
    """

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "element outside ball"


class ResourceGuardError(MemoryError):
    """
    Raised when a configured size cap (oracle element cap, filter vertex cap)
    would be exceeded.
    """


class InvariantViolation(RuntimeError):
    """
    Raised when an internal mathematical invariant fails. These indicate a bug
    or a graph outside the hypotheses an operation was built for.
    """
