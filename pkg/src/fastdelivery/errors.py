"""Exception hierarchy shared by all solvers."""


class DeliveryError(Exception):
    """Base class for every error raised by this package."""


class InputError(DeliveryError):
    """Malformed instance, schedule or formula input."""


class UnknownAgent(InputError):
    pass


class EmptyHandoverList(InputError):
    pass


class EpsilonOutOfRange(InputError):
    pass


class NotAPath(InputError):
    pass


class NonUniformVelocities(InputError):
    pass


class MalformedFormula(InputError):
    pass


class UnsatisfiedAssignment(InputError):
    pass


class NotExtremalSchedule(InputError):
    pass


class DuplicateEntry(InputError):
    pass


class Infeasible(DeliveryError):
    """The package cannot be delivered at all."""


class UnreachablePoint(Infeasible):
    pass


class NoPickupPoint(Infeasible):
    pass


class GuardExceeded(DeliveryError):
    """An exponential oracle was asked to run beyond its size guard."""


class EmptySet(DeliveryError):
    pass


class EmptyWindow(EmptySet):
    pass


class BadParameters(InputError):
    pass
