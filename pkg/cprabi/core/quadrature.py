import math
from typing import Callable, NamedTuple, Optional, Sequence

from scipy import integrate

from .exceptions import QuadratureError
from .log import getLogger

logger = getLogger()


class QuadratureResult(NamedTuple):
    value: float
    abs_error_estimate: float
    evaluations: int


def truncation_point(decay_scale: float) -> float:
    """
    Upper integration limit in units of the integration variable.
    Integrands are bounded by an e^(-2u) envelope beyond decay_scale.
    """
    if not decay_scale > 0:
        raise ValueError(f"Decay scale must be positive, got {decay_scale}")
    return max(50.0, 40.0 / decay_scale)


def _checked(integrand: Callable[[float], float]) -> Callable[[float], float]:
    def wrapper(u):
        try:
            value = integrand(u)
        except ZeroDivisionError:
            raise QuadratureError(f"Integrand is singular at u={u}")
        if not math.isfinite(value):
            raise QuadratureError(f"Integrand is not finite at u={u}: {value}")
        return value

    return wrapper


def integrate_semiinfinite(
    integrand: Callable[[float], float],
    decay_scale: float,
    *,
    rel_tol: float = 1e-9,
    points: Optional[Sequence[float]] = None,
    limit: int = 200,
) -> QuadratureResult:
    """
    Integrates exponentially decaying integrand over [0, inf).

    Adaptive Gauss-Kronrod quadrature (QUADPACK) is applied on
    [0, truncation_point(decay_scale)].

    :param integrand: real function of u >= 0
    :param decay_scale: scale beyond which integrand decays exponentially
    :param rel_tol: requested relative tolerance
    :param points: optional breakpoints (e.g. poles near real axis)
    :param limit: maximum number of subintervals
    :raises QuadratureError: non-convergence or non-finite integrand
    """
    upper = truncation_point(decay_scale)
    checked = _checked(integrand)
    # Integrand must be finite at the endpoint even if QUADPACK never hits it
    checked(0.0)

    breakpoints = None
    if points:
        breakpoints = sorted(p for p in points if 0 < p < upper) or None

    result = integrate.quad(
        checked,
        0.0,
        upper,
        epsabs=0.0,
        epsrel=rel_tol,
        limit=limit,
        points=breakpoints,
        full_output=1,
    )
    value, abserr, info = result[:3]
    if len(result) > 3:
        raise QuadratureError(
            f"Quadrature didn't converge after {info['last']} subdivisions: "
            f"{result[3]}"
        )
    if not math.isfinite(value) or not math.isfinite(abserr):
        raise QuadratureError(f"Quadrature returned non-finite value {value}")

    logger.debug(
        "Quadrature finished",
        extra={"evaluations": info["neval"], "abs_error": abserr},
    )
    return QuadratureResult(
        value=value, abs_error_estimate=abs(abserr), evaluations=info["neval"]
    )
