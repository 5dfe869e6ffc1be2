"""Numerical toolkit for iterated second-moment ladders on the critical line.

Builds the slowly-deviating ladder function phi1 from the cumulative second
moment of Hardy's Z-function, iterates it into disconnected segment systems,
and verifies the exact and asymptotic transformation formulas satisfied by
multiple products of |zeta(1/2 + it)|^2 over those segments.
"""

from .critical_line import (CriticalPoint, ZeroPair, euler_maclaurin_zeta_sq,
                            find_zero_pair, hardy_z, rs_theta, scan_zeros,
                            zero_count_estimate, zeta_sq)
from .errors import (AdmissibilityError, BracketingError, DomainError,
                     InvalidPartitionError, PrecisionLossWarning,
                     QuadratureError, RangeEscapeError, SearchExhaustedError,
                     ZetaLadderError)
from .formulas import (GeoMeanReport, MeanValueWitness, RatioRecord,
                       conjugate_ratio, external_mean_value,
                       factorization_ratio, geometric_mean_report,
                       product_integral, product_integral_ztilde,
                       proof_chain_check, rh_gap_table, verify_identity_61,
                       zero_gap_experiment)
from .ladder import (AsymptoticConstants, DisconnectedSet, LadderConfig,
                     LadderModel, Segment, build_ladder, check_set_properties,
                     disconnected_set, hl_integral, ladder_derivative,
                     ladder_iterate, ladder_value)
from .primes import PrimeCounter, pi_approx, pi_exact
from .quadrature import QuadratureConfig, integrate_adaptive

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "CriticalPoint", "ZeroPair", "hardy_z", "zeta_sq", "rs_theta",
    "euler_maclaurin_zeta_sq", "find_zero_pair", "scan_zeros",
    "zero_count_estimate",
    "PrimeCounter", "pi_exact", "pi_approx",
    "LadderModel", "LadderConfig", "build_ladder", "hl_integral",
    "ladder_value", "ladder_iterate", "ladder_derivative",
    "Segment", "DisconnectedSet", "AsymptoticConstants",
    "disconnected_set", "check_set_properties",
    "QuadratureConfig", "integrate_adaptive",
    "RatioRecord", "MeanValueWitness", "GeoMeanReport",
    "product_integral", "product_integral_ztilde", "verify_identity_61",
    "conjugate_ratio", "zero_gap_experiment", "factorization_ratio",
    "external_mean_value", "geometric_mean_report", "proof_chain_check",
    "rh_gap_table",
    "ZetaLadderError", "DomainError", "RangeEscapeError", "AdmissibilityError",
    "QuadratureError", "SearchExhaustedError", "InvalidPartitionError",
    "BracketingError", "PrecisionLossWarning",
]
