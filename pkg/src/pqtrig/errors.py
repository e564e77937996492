"""Exception hierarchy for pqtrig."""


class PQTrigError(Exception):
    """Base class for all pqtrig errors."""


class ParamDomainError(PQTrigError):
    """Parameter pair (p, q) outside the open square (1, inf)^2."""


class ArgDomainError(PQTrigError):
    """Function argument outside the function's domain."""


class DomainError(PQTrigError):
    """Invalid integration interval or tolerance."""


class NonConvergence(PQTrigError):
    """Error estimate failed to reach tolerance within the evaluation budget."""


class DivergentIntegral(PQTrigError):
    """Semi-infinite integral diverges (tail decay exponent <= 1)."""


class SlowConvergence(PQTrigError):
    """Series truncated before reaching tolerance (argument too close to 1)."""


class DerivativeUnavailable(PQTrigError):
    """No analytic derivative and the point is too close to the domain boundary
    for finite differencing."""
