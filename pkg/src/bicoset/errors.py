"""Exception hierarchy shared by the library and the command line."""


class BicosetError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""

    exit_code = 2


class GroupTableError(BicosetError):
    pass


class NonAssociative(GroupTableError):
    pass


class NoIdentity(GroupTableError):
    pass


class NotLatinSquare(GroupTableError):
    pass


class NotNormal(BicosetError):
    pass


class NotSubgroup(BicosetError):
    pass


class CapExceeded(BicosetError):
    exit_code = 3


class NotDoubleCosetUnion(BicosetError):
    def __init__(self, which, message=None):
        self.which = which
        super().__init__(message or f"NotDoubleCosetUnion S_{which}")


class IdentityInConnectionSet(BicosetError):
    pass


class ConnectionSetMeetsSubgroup(BicosetError):
    pass


class NotIntermediate(BicosetError):
    pass


class NotNatural(BicosetError):
    pass


class NotRefinement(BicosetError):
    pass


class NotAJoin(BicosetError):
    """The closure identity ``S_i = K_i S_i K_{i+1}`` fails.

    ``witness`` is ``(i, k_i, s_i, k_next)`` with ``k_i * s_i * k_next`` outside S_i.
    """

    def __init__(self, witness):
        self.witness = witness
        i, k, s, k2 = witness
        super().__init__(f"NotAJoin: k={k}, s={s}, k'={k2} leaves S_{i}")


class LoopError(BicosetError):
    pass


class InstanceError(BicosetError):
    """Malformed instance file; ``field`` names the offending key."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")
