"""zetakit: the Riemann zeta function over the whole complex plane from
rapidly converging incomplete-gamma series, plus the Laguerre, Kummer and
incomplete-gamma machinery those series are built on."""

from zetakit.numeric import (
    ConvergenceError,
    DomainError,
    NearZeroDenominatorError,
    PoleError,
    SeriesResult,
    binomial_general,
    gamma,
    log_gamma,
    pow_principal,
    rgamma,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "NearZeroDenominatorError",
    "PoleError",
    "SeriesResult",
    "binomial_general",
    "gamma",
    "log_gamma",
    "pow_principal",
    "rgamma",
]
