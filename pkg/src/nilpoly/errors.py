"""Exception types. Everything user-facing derives from ``NilpolyError``."""


class NilpolyError(Exception):
    pass


class RingError(NilpolyError, ValueError):
    """Operands live in different rings (rational vs. mod m, or moduli differ)."""


class LayoutError(NilpolyError, ValueError):
    """Variable blocks, arities or matrix sizes do not match."""


class NotPolynomialError(NilpolyError, ValueError):
    """Samples are inconsistent with the claimed degree."""


class MembershipError(NilpolyError, ValueError):
    """A matrix is not in the subgroup an operation requires."""


class InternalError(NilpolyError, RuntimeError):
    """A proven bound or identity failed; indicates a bug, never bad input."""
