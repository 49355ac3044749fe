"""Exception hierarchy shared by every module."""


class CnRError(Exception):
    """Base class for all package errors."""


class DisconnectedGraphError(CnRError):
    """Input graph is not connected (or not strongly connected when directed)."""


class UnknownVertexError(CnRError, KeyError):
    pass


class BudgetExceededError(CnRError):
    """A configured state-space or search-node cap was hit."""


class InvalidCertificateError(CnRError, ValueError):
    """A supplied deletion set does not have the claimed structure."""


class InvalidSpecError(CnRError, ValueError):
    pass


class IllegalMoveError(CnRError):
    def __init__(self, message, state=None):
        super().__init__(message)
        self.state = state


class InfeasibleConstructionError(CnRError):
    pass


class MalformedInputError(CnRError, ValueError):
    pass


class MalformedStateError(CnRError, ValueError):
    """A game state that does not fit the graph, the variant or the turn."""
