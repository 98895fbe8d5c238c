"""Exception hierarchy shared by every module of the package."""


class LiftError(Exception):
    """Base class for all errors raised by liftbasis."""


class InvalidModulus(LiftError, ValueError):
    """The requested modulus is not a prime power p**nu with nu >= 1."""


class NotAUnit(LiftError, ValueError):
    """An integer that should be invertible modulo p**nu shares a factor with p."""


class DimensionMismatch(LiftError, ValueError):
    pass


class IndexOutOfRange(LiftError, IndexError):
    pass


class NotSquare(LiftError, ValueError):
    pass


class ShapeMismatch(LiftError, ValueError):
    pass


class StreamExhausted(LiftError):
    """A finite row stream ran out before the requested row."""


class FormatError(LiftError, ValueError):
    """Malformed matrix, stream or lift document text."""


class TooManyRows(LiftError, ValueError):
    """More rows than columns: the rows cannot be part of a basis."""


class NotABasisModP(LiftError):
    """Elimination found a working row with no entry prime to p.

    ``row`` is the 0-based index of the offending input row.
    """

    def __init__(self, row, modulus=None):
        self.row = row
        self.modulus = modulus
        where = f" modulo {modulus.p}^{modulus.nu}" if modulus is not None else ""
        super().__init__(
            f"no pivot in row {row}: after clearing earlier pivot columns every "
            f"entry is divisible by p, so the rows are not a basis{where}"
        )


class StabilizationTimeout(LiftError):
    """Streaming elimination hit ``max_loops`` before the target rows settled.

    ``blocking`` maps each processed but unsettled row to the columns still
    holding it back: columns with no pivot yet, or pivot columns whose
    reduction row is not yet an identity row.  ``unread`` lists target rows
    the loop never reached.
    """

    def __init__(self, loops, blocking, unread=()):
        self.loops = loops
        self.blocking = {r: sorted(cols) for r, cols in blocking.items()}
        self.unread = list(unread)
        parts = [f"row {r} waits on columns {cols}" for r, cols in sorted(self.blocking.items())]
        if self.unread:
            parts.append(f"rows {self.unread} not read yet")
        super().__init__(f"rows not stabilized after {loops} loops: " + "; ".join(parts))
