"""Convergence analytics: theoretical order, error constants, estimators.

Sequences returned by the estimators line up with the input error list;
positions where an estimate is undefined hold ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import DomainError, OutOfRange
from .iterate import SolveReport
from .realnum import DEFAULT_PRECISION, Real, RealContext, RealLike

DEFAULT_ORDER_TOL = "1e-30"


def _ctx(ctx: Optional[RealContext]) -> RealContext:
    return ctx if ctx is not None else RealContext(DEFAULT_PRECISION)


def order_polynomial(s: Real, k: int) -> Real:
    """``s^(k+1) - sum_{i=0}^{k} s^i``."""
    total = 0
    power = s ** 0
    for _ in range(k + 1):
        total += power
        power *= s
    return power - total


def order_of_convergence(k: int, tol: RealLike = DEFAULT_ORDER_TOL, ctx: Optional[RealContext] = None) -> Real:
    """Root in (1, 2) of ``s^(k+1) = 1 + s + ... + s^k``, by bisection.

    Bisection continues until the bracket is narrower than ``tol`` and the
    polynomial residual at the midpoint is at most ``tol``.
    """
    if k < 1:
        raise OutOfRange("k must be >= 1")
    ctx = _ctx(ctx)
    tol = ctx.real(tol)
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = ctx.mpf(1), ctx.mpf(2)
    while True:
        mid = (lo + hi) / 2
        if mid == lo or mid == hi:
            return mid
        g = order_polynomial(mid, k)
        if hi - lo <= tol and abs(g) <= tol:
            return mid
        if g < 0:
            lo = mid
        elif g > 0:
            hi = mid
        else:
            return mid


def order_bounds(k: int, ctx: Optional[RealContext] = None) -> Tuple[Real, Real]:
    """``(2 - 2^(-k-1) e, 2 - 2^(-k-1))``; only stated for ``k >= 2``."""
    if k < 2:
        raise OutOfRange(f"order bounds hold for k >= 2, got k={k}")
    ctx = _ctx(ctx)
    scale = ctx.ldexp(ctx.one, -k - 1)
    return 2 - scale * ctx.e, 2 - scale


def asymptotic_constant(fprime_at_root: RealLike, f_k1_at_root: RealLike, k: int,
                        ctx: Optional[RealContext] = None) -> Real:
    """``(-1)^(k+1) / (k+1)! * f^(k+1)(alpha) / f'(alpha)``."""
    ctx = _ctx(ctx)
    d1 = ctx.real(fprime_at_root)
    dk1 = ctx.real(f_k1_at_root)
    if d1 == 0:
        raise DomainError("f'(alpha) must be non-zero")
    sign = -1 if (k + 1) % 2 else 1
    return sign * dk1 / (math.factorial(k + 1) * d1)


def error_ratio_limit(L: RealLike, k: int, s_k: RealLike, ctx: Optional[RealContext] = None) -> Real:
    """``|L|^((s_k - 1) / k)``, taken as 0 when ``L = 0``."""
    ctx = _ctx(ctx)
    L = ctx.real(L)
    if L == 0:
        return ctx.zero
    return ctx.real_pow(abs(L), (ctx.real(s_k) - 1) / k)


def sigma_sequence(errors: Sequence[Optional[Real]], k: int) -> List[Optional[Real]]:
    """``eps_{n+1} / (eps_n eps_{n-1} ... eps_{n-k})`` for each index ``n``.

    Absent when the window runs off either end or touches a zero error.
    """
    out: List[Optional[Real]] = []
    for n in range(len(errors)):
        if n < k or n + 1 >= len(errors):
            out.append(None)
            continue
        window = errors[n - k : n + 2]
        if any(e is None or e == 0 for e in window):
            out.append(None)
            continue
        denom = window[0]
        for e in window[1:-1]:
            denom = denom * e
        out.append(window[-1] / denom)
    return out


def empirical_order(errors: Sequence[Optional[Real]]) -> List[Optional[Real]]:
    """``log|eps_{n+1}/eps_n| / log|eps_n/eps_{n-1}|`` for each index ``n``."""
    out: List[Optional[Real]] = []
    for n in range(len(errors)):
        if n < 1 or n + 1 >= len(errors):
            out.append(None)
            continue
        a, b, c = errors[n - 1], errors[n], errors[n + 1]
        if any(e is None or e == 0 for e in (a, b, c)):
            out.append(None)
            continue
        ctx = b.context
        below = ctx.ln(abs(b / a))
        if below == 0:
            out.append(None)
            continue
        out.append(ctx.ln(abs(c / b)) / below)
    return out


def squared_error_ratios(errors: Sequence[Optional[Real]]) -> List[Optional[Real]]:
    """``eps_{n+1} / eps_n^2``, the quadratic-convergence constant estimate."""
    out: List[Optional[Real]] = []
    for n in range(len(errors)):
        if n + 1 >= len(errors) or not errors[n] or errors[n + 1] is None or errors[n + 1] == 0:
            out.append(None)
        else:
            out.append(errors[n + 1] / errors[n] ** 2)
    return out


def efficiency_index(order: RealLike, evals_per_iteration: int, ctx: Optional[RealContext] = None) -> Real:
    """``order^(1/p)`` for a method costing ``p`` evaluations per iteration."""
    ctx = _ctx(ctx)
    order = ctx.real(order)
    if not order > 1:
        raise DomainError("efficiency index needs order > 1")
    if evals_per_iteration < 1:
        raise ValueError("evals_per_iteration must be positive")
    return ctx.root(order, evals_per_iteration)


@dataclass(frozen=True)
class OrderProfile:
    k: int
    s_k: Real
    lower_bound: Optional[Real]
    upper_bound: Optional[Real]
    efficiency_index: Real
    L: Optional[Real] = None
    error_ratio_limit: Optional[Real] = None


def order_profile(k: int, fprime_at_root: RealLike | None = None, f_k1_at_root: RealLike | None = None,
                  ctx: Optional[RealContext] = None) -> OrderProfile:
    ctx = _ctx(ctx)
    s = order_of_convergence(k, ctx=ctx)
    lo, hi = order_bounds(k, ctx) if k >= 2 else (None, None)
    L = limit = None
    if fprime_at_root is not None and f_k1_at_root is not None:
        L = asymptotic_constant(fprime_at_root, f_k1_at_root, k, ctx)
        limit = error_ratio_limit(L, k, s, ctx)
    return OrderProfile(k, s, lo, hi, efficiency_index(s, 1, ctx), L, limit)


# -- step-level identities -------------------------------------------------


@dataclass(frozen=True)
class StepIdentity:
    n: int
    contraction: Real
    predicted: Real
    replayed: Real
    recorded: Optional[Real]


def step_identities(report: SolveReport) -> List[StepIdentity]:
    """Contraction factors ``C_n`` for every generalized-secant step.

    ``C_n = (p'(x_n) - f[x_n, alpha]) / p'(x_n)`` with
    ``f[x_n, alpha] = f(x_n) / eps_n``. ``predicted`` is ``C_n eps_n``;
    ``replayed`` is ``x_n - f(x_n)/p'(x_n) - alpha`` evaluated at twice the
    working precision from the stored values, i.e. the step before its final
    rounding; ``recorded`` is the stored ``eps_{n+1}``.
    """
    if report.known_root is None:
        return []
    wide = RealContext(2 * report.precision)
    alpha = wide.real(report.known_root)
    out = []
    recs = report.records
    for prev, cur in zip(recs, recs[1:]):
        if cur.deriv is None or prev.error is None or prev.error == 0:
            continue
        eps = wide.real(prev.x) - alpha
        fn = wide.real(prev.f)
        dp = wide.real(cur.deriv)
        contraction = (dp - fn / eps) / dp
        replayed = wide.real(prev.x) - fn / dp - alpha
        out.append(StepIdentity(cur.n - 1, contraction, contraction * eps, replayed, cur.error))
    return out


# -- equal-cost comparison -------------------------------------------------


@dataclass(frozen=True)
class CostPairing:
    q: int
    indices: Tuple[int, ...]
    xs: Tuple[Real, ...]
    errors: Tuple[Optional[Real], ...]


def equal_cost_table(runs: Sequence[Tuple[SolveReport, int]]) -> List[CostPairing]:
    """Pair iterates of several methods at equal evaluation cost.

    Method ``i`` with ``m_i`` evaluations per iteration contributes iterate
    ``q * prod_{j != i} m_j``, so every entry of row ``q`` has consumed
    ``q * prod_j m_j`` evaluations. Rows stop at the shortest report.
    """
    if not runs:
        return []
    costs = [m for _, m in runs]
    if any(m < 1 for m in costs):
        raise ValueError("evaluations per iteration must be positive")
    strides = [math.prod(costs[:i] + costs[i + 1:]) for i in range(len(costs))]
    rows = []
    q = 1
    while True:
        idx = tuple(q * s for s in strides)
        if any(i >= len(r.records) for i, (r, _) in zip(idx, runs)):
            return rows
        recs = [r.records[i] for i, (r, _) in zip(idx, runs)]
        rows.append(CostPairing(q, idx, tuple(x.x for x in recs), tuple(x.error for x in recs)))
        q += 1


def equal_cost_compare(report1: SolveReport, m1: int, report2: SolveReport, m2: int) -> List[CostPairing]:
    """Pair iterate ``q*m2`` of method 1 with iterate ``q*m1`` of method 2."""
    return equal_cost_table([(report1, m1), (report2, m2)])
