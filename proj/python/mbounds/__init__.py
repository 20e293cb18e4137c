"""No-arbitrage bounds on option prices from observed call quotes."""

from ._core import (
    Error,
    Payoff1D,
    Payoff2D,
    Surface,
    bound_1d,
    bound_2d_approx,
    bound_2d_exact,
    bound_basket,
    check_no_arbitrage,
    distribution,
    psi,
    vertex_count_bound,
)

__all__ = [
    "Error",
    "Payoff1D",
    "Payoff2D",
    "Surface",
    "bound_1d",
    "bound_2d_approx",
    "bound_2d_exact",
    "bound_basket",
    "check_no_arbitrage",
    "distribution",
    "psi",
    "vertex_count_bound",
]
