class ObstError(Exception):
    """Base class for all library errors."""


class ParseError(ObstError):
    """Malformed instance, tree, or assignment text."""


class InfeasibleError(ObstError):
    """The memory model cannot accommodate the nodes that must be placed."""


class SizeGuardError(ObstError):
    """Input exceeds the documented size limit of an exponential-time path."""
