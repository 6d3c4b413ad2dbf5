
class SphereDubinsException(Exception):
    pass


class DomainError(SphereDubinsException, ValueError):
    """ An argument is outside the domain of the operation. """
    pass


class InvalidInstance(SphereDubinsException):
    """ Raised while reading instance files and command-line flags. """
    pass


class InconsistentSolution(SphereDubinsException):
    """ Should never happen on valid input: signals a bug. """
    pass
