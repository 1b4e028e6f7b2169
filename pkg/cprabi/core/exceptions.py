class CasimirRabiError(Exception):
    """
    Base exception for cprabi
    """


class AngularMomentumError(CasimirRabiError, ValueError):
    """
    Raised when angular momentum quantum numbers are not valid half-integers,
    e.g. j=0.3 or a (j, m) pair with mixed integer/half-integer character
    """


class StateMismatchError(CasimirRabiError, ValueError):
    """
    Raised when a hyperfine state doesn't belong to the manifold
    expected by a transition line
    """


class SpeciesDataError(CasimirRabiError):
    """
    Raised when species document is malformed or violates data invariants
    """

    def __init__(self, message, messages=None):
        super().__init__(message)
        # Field-level messages in marshmallow format
        self.messages = messages or {}


class ConfigError(CasimirRabiError):
    """
    Raised when sweep configuration is invalid
    """

    def __init__(self, message, messages=None):
        super().__init__(message)
        self.messages = messages or {}


class QuadratureError(CasimirRabiError):
    """
    Raised when numerical integration doesn't converge or integrand
    is not finite on the integration range
    """


class UnanchoredDistanceError(CasimirRabiError, ValueError):
    """
    Raised when damping estimate is requested outside the distance range
    covered by the tabulated anchors
    """


class PreconditionError(CasimirRabiError, ValueError):
    """
    Raised when operation is called outside of its validity domain
    """
