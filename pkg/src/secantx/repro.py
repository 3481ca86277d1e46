"""The x^3 - 8, k = 2 experiment in quad-equivalent arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .analysis import asymptotic_constant, empirical_order, order_of_convergence, sigma_sequence
from .corpus import lookup
from .iterate import SolveReport, SolverConfig, solve
from .realnum import QUAD_PRECISION, Real, RealContext

ENTRY = "cube-8"
K = 2
STARTS = ("5", "4")
SIGMA_REL_TOL = 0.01
ORDER_WINDOW = (5, 6)
ORDER_ABS_TOL = 0.1


@dataclass(frozen=True)
class LimitCheck:
    name: str
    observed: Tuple[Optional[Real], ...]
    target: Real
    tolerance: str
    passed: bool


def run(precision: int = QUAD_PRECISION) -> SolveReport:
    ctx = RealContext(precision)
    problem = lookup(ENTRY).problem(ctx)
    return solve(problem, SolverConfig(k=K, initial_points=STARTS, precision=precision))


def limit_checks(report: SolveReport) -> List[LimitCheck]:
    """Compare the tail of the sigma and order columns with their theoretical limits."""
    ctx = RealContext(report.precision)
    entry = lookup(ENTRY)
    L = asymptotic_constant(entry.derivative_at_root(1, ctx), entry.derivative_at_root(K + 1, ctx), K, ctx)
    s2 = order_of_convergence(K, ctx=ctx)

    sigmas = [s for s in sigma_sequence(report.errors, K) if s is not None]
    last = sigmas[-1] if sigmas else None
    sigma_ok = last is not None and abs(last - L) <= SIGMA_REL_TOL * abs(L)

    orders = empirical_order(report.errors)
    window = tuple(orders[n] if n < len(orders) else None for n in ORDER_WINDOW)
    order_ok = all(v is not None and abs(v - s2) <= ORDER_ABS_TOL for v in window)
    return [
        LimitCheck("last sigma_n vs L", (last,), L, f"relative {SIGMA_REL_TOL:g}", sigma_ok),
        LimitCheck(
            f"order estimates at n={ORDER_WINDOW[0]},{ORDER_WINDOW[1]} vs s_2",
            window,
            s2,
            f"absolute {ORDER_ABS_TOL:g}",
            order_ok,
        ),
    ]
