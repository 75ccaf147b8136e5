"""Exception hierarchy shared by every module.

The CLI maps these onto exit statuses: parse errors exit 2, domain errors
exit 3 and budget exhaustion exits 4.
"""


class ErgoalgError(Exception):
    """Base class for all library errors."""


class ParseError(ErgoalgError, ValueError):
    """Malformed JSON description or rational literal."""


class DomainError(ErgoalgError, ValueError):
    """An operation's precondition does not hold for its inputs."""


class CarrierMismatch(DomainError):
    """Operands live on different measure spaces."""


class BudgetExceeded(ErgoalgError, RuntimeError):
    """A construction or refinement needed more depth than configured."""
