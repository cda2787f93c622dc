"""Commuters between symmetric tent maps and the ordinal patterns they realize.

Everything is computed in exact rational arithmetic; approximations to the
commuter come with certified enclosures.
"""

__version__ = "0.1.0"

from .numerics import Enclosure, Order, parse_rational, strictly_below  # noqa: E402
from .tentmap import FULL_TENT, PiecewiseLinearMap, TentMap, iterate, preimages_of_half  # noqa: E402
from .patterns import (  # noqa: E402
    PatternSet,
    Permutation,
    TieError,
    enumerate_allowed,
    is_allowed,
    pat,
    sigma,
    sigma_realization_interval,
)
from .commuter import CommuterEvaluator, Convention, GapInterval  # noqa: E402
from .bounds import certify_avoidance, mu_estimate, mu_exact, table1  # noqa: E402

__all__ = [
    "CommuterEvaluator",
    "Convention",
    "Enclosure",
    "FULL_TENT",
    "GapInterval",
    "Order",
    "PatternSet",
    "Permutation",
    "PiecewiseLinearMap",
    "TentMap",
    "TieError",
    "certify_avoidance",
    "enumerate_allowed",
    "is_allowed",
    "iterate",
    "mu_estimate",
    "mu_exact",
    "parse_rational",
    "pat",
    "preimages_of_half",
    "sigma",
    "sigma_realization_interval",
    "strictly_below",
    "table1",
]
