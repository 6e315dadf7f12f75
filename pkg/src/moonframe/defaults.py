"""
Every verification threshold in one place.

Bump DEFAULTS_VERSION whenever a value here changes; reports record it so a
run can be matched to the thresholds it used.
"""

from __future__ import annotations

import os

from .errors import InputError

DEFAULTS_VERSION = "1"

ORDER_ENV = "MOONFRAME_ORDER"
ORDER = 30  # integer powers of q, i.e. 1440 exponent units
MAX_ORDER = 60

J_ROUTE_ORDER = 20
ISING_IDENTITY_ORDER = 30
CHARACTER_ORDER = 4  # order used for module-character comparisons

GRID = (0.5, 0.7, 0.9, 0.95, 0.99)

# r(q) on GRID, from an independent 40-digit mpmath evaluation
# (q-Pochhammer products), registered once and frozen.
RATIO_ORACLE = {
    0.5: 1.2700204338963489e-15,
    0.7: 1.6860156807947428e-15,
    0.9: 7.515564100444305e-14,
    0.95: 9.832182415303831e-11,
    0.99: 3.286791684939545e17,
}
RATIO_REL_TOL = 1e-12
RATIO_GROWTH_THRESHOLD = 1e32  # oracle growth r(0.99)/r(0.5) is 2.588e32

SEARCH_MAX_ORDER = 4
SEARCH_BUDGET = 600.0

FUSION_RANDOM_TRIPLES = 100_000
RANDOM_CODES = 200


def default_order() -> int:
    """ORDER, overridden by the MOONFRAME_ORDER environment variable."""
    raw = os.environ.get(ORDER_ENV)
    if raw is None or raw == "":
        return ORDER
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"{ORDER_ENV}={raw!r} is not an integer") from None
    if not 0 <= n <= MAX_ORDER:
        raise InputError(f"{ORDER_ENV} must lie in [0, {MAX_ORDER}]")
    return n


def as_dict() -> dict:
    return {
        "defaults_version": DEFAULTS_VERSION,
        "order": ORDER,
        "j_route_order": J_ROUTE_ORDER,
        "grid": list(GRID),
        "ratio_rel_tol": RATIO_REL_TOL,
        "ratio_growth_threshold": RATIO_GROWTH_THRESHOLD,
        "search_max_order": SEARCH_MAX_ORDER,
        "search_budget": SEARCH_BUDGET,
    }
