"""Generalized secant and Newton-Raphson drivers.

The generalized secant method of order ``k`` replaces ``f'(x_n)`` in
Newton's update by ``p'(x_n)``, where ``p`` interpolates ``f`` at the
last ``k + 1`` iterates. After start-up it costs one evaluation of ``f``
per iteration; ``k = 1`` is the classical secant method.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Callable, List, Mapping, Optional, Tuple

from .divdiff import DiagonalState, derivative_at_newest, init_diagonal, push_node
from .errors import DerivativeBreakdown, DuplicateNode, SecantxError
from .realnum import DEFAULT_PRECISION, Real, RealContext, RealLike

DEFAULT_MAX_ITERATIONS = 100
DEFAULT_STEP_CAP = 10**10


class Termination(str, enum.Enum):
    CONVERGED = "Converged"
    RESIDUAL_ZERO = "ResidualZero"
    MAX_ITERATIONS = "MaxIterations"
    DERIVATIVE_BREAKDOWN = "DerivativeBreakdown"
    DUPLICATE_NODE = "DuplicateNode"
    NAN_ENCOUNTERED = "NaNEncountered"

    @property
    def success(self) -> bool:
        return self in (Termination.CONVERGED, Termination.RESIDUAL_ZERO)


@dataclass(frozen=True)
class ProblemSpec:
    """A scalar equation ``f(x) = 0``.

    ``f`` and ``fprime`` receive context-bound reals and must compute in
    the argument's context (plain operator arithmetic does).
    """

    f: Callable[[Real], Real]
    fprime: Optional[Callable[[Real], Real]] = None
    higher_derivatives_at_root: Mapping[int, RealLike] = field(default_factory=dict)
    known_root: Optional[RealLike] = None
    name: str = "f"


@dataclass(frozen=True)
class SolverConfig:
    k: int = 1
    initial_points: Tuple[RealLike, ...] = ()
    precision: int = DEFAULT_PRECISION
    tol_residual: RealLike = 0
    # None selects 2**-(precision - 10) * (1 + |x_n|); an explicit value is absolute.
    tol_step: Optional[RealLike] = None
    max_iterations: int = DEFAULT_MAX_ITERATIONS
    step_cap: RealLike = DEFAULT_STEP_CAP

    def __post_init__(self):
        object.__setattr__(self, "initial_points", tuple(self.initial_points))
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be positive")
        n = len(self.initial_points)
        # Newton runs take their start separately and leave initial_points empty.
        if n and (n < 2 or n > self.k + 1):
            raise ValueError(f"need between 2 and k+1={self.k + 1} initial points, got {n}")


@dataclass(frozen=True)
class IterationRecord:
    n: int
    x: Real
    f: Real
    deriv: Optional[Real] = None
    error: Optional[Real] = None
    k_used: int = 0


@dataclass(frozen=True)
class SolveReport:
    records: Tuple[IterationRecord, ...]
    termination: Termination
    method: str
    k: int
    precision: int
    evaluations: int
    start_count: int
    evals_per_iteration: int = 1
    message: str = ""
    known_root: Optional[Real] = None

    @property
    def final_x(self) -> Real:
        return self.records[-1].x

    @property
    def xs(self) -> List[Real]:
        return [r.x for r in self.records]

    @property
    def errors(self) -> List[Optional[Real]]:
        return [r.error for r in self.records]

    @property
    def iterations(self) -> int:
        return len(self.records) - self.start_count


class _Counted:
    """Wraps a function so every call is counted and arithmetic faults become NaN."""

    def __init__(self, fn: Callable[[Real], Real], ctx: RealContext):
        self.fn = fn
        self.ctx = ctx
        self.calls = 0

    def __call__(self, x: Real) -> Real:
        self.calls += 1
        try:
            return self.ctx.real(self.fn(x))
        except (SecantxError, ArithmeticError, ValueError, TypeError):
            return self.ctx.nan


def _bad(ctx: RealContext, v: Real) -> bool:
    return not ctx.isfinite(v)


def generalized_secant_step(state: DiagonalState, f_newest: Optional[Real] = None) -> Real:
    """Next iterate ``x_n - f(x_n) / p'(x_n)`` from a window's diagonal."""
    x_next, _ = _secant_step(state, f_newest)
    return x_next


def _secant_step(state: DiagonalState, f_newest: Optional[Real] = None) -> Tuple[Real, Real]:
    fn = state.diagonal[0] if f_newest is None else f_newest
    dp = derivative_at_newest(state)
    if dp == 0:
        raise DerivativeBreakdown("interpolant derivative vanished at the newest node")
    return state.nodes[0] - fn / dp, dp


class _Run:
    """Shared bookkeeping for both drivers."""

    def __init__(self, problem: ProblemSpec, config: SolverConfig):
        self.ctx = ctx = RealContext(config.precision)
        self.config = config
        self.f = _Counted(problem.f, ctx)
        self.alpha = None if problem.known_root is None else ctx.real(problem.known_root)
        self.tol_residual = ctx.real(config.tol_residual)
        self.tol_step = None if config.tol_step is None else ctx.real(config.tol_step)
        self.step_cap = ctx.real(config.step_cap)
        self.records: List[IterationRecord] = []

    def record(self, x: Real, fx: Real, deriv=None, k_used: int = 0) -> IterationRecord:
        err = None if self.alpha is None else x - self.alpha
        rec = IterationRecord(len(self.records), x, fx, deriv, err, k_used)
        self.records.append(rec)
        return rec

    def residual_stop(self, fx: Real) -> Optional[Termination]:
        if _bad(self.ctx, fx):
            return Termination.NAN_ENCOUNTERED
        if fx == 0:
            return Termination.RESIDUAL_ZERO
        if abs(fx) <= self.tol_residual:
            return Termination.CONVERGED
        return None

    def step_tolerance(self, x: Real) -> Real:
        if self.tol_step is not None:
            return self.tol_step
        ctx = self.ctx
        return ctx.ldexp(ctx.one, -(ctx.precision - 10)) * (1 + abs(x))

    def runaway(self, step: Real, x: Real) -> bool:
        return abs(step) > self.step_cap * (1 + abs(x))


def solve(problem: ProblemSpec, config: SolverConfig) -> SolveReport:
    """Run the generalized secant method of order ``config.k``.

    With fewer than ``k + 1`` starting points the window grows by one node
    per step (secant step first) until it holds ``k + 1`` nodes.
    Failures end the run and are reported through ``termination``.
    """
    run = _Run(problem, config)
    ctx = run.ctx
    k = config.k
    xs = [ctx.real(v) for v in config.initial_points]
    if len(xs) < 2:
        raise ValueError("the secant methods need at least two initial points")
    if len(set(xs)) != len(xs):
        raise DuplicateNode("initial points must be pairwise distinct")

    def finish(term: Termination, message: str = "") -> SolveReport:
        return SolveReport(
            records=tuple(run.records),
            termination=term,
            method="gsec",
            k=k,
            precision=ctx.precision,
            evaluations=run.f.calls,
            start_count=len(xs),
            evals_per_iteration=1,
            message=message,
            known_root=run.alpha,
        )

    fs = []
    for x in xs:
        fx = run.f(x)
        run.record(x, fx)
        fs.append(fx)
        stop = run.residual_stop(fx)
        if stop is not None:
            return finish(stop, "stopped on a starting point")

    state = init_diagonal(list(zip(xs, fs))[::-1])
    iterations = 0
    while True:
        if iterations >= config.max_iterations:
            return finish(Termination.MAX_ITERATIONS)
        x_n = state.nodes[0]
        try:
            x_new, dp = _secant_step(state)
        except DerivativeBreakdown as exc:
            return finish(Termination.DERIVATIVE_BREAKDOWN, str(exc))
        if _bad(ctx, x_new):
            run.record(x_new, ctx.nan, dp, state.k)
            return finish(Termination.NAN_ENCOUNTERED, "non-finite iterate")
        if run.runaway(x_new - x_n, x_n):
            return finish(Termination.MAX_ITERATIONS, "step exceeded the runaway cap")
        iterations += 1
        f_new = run.f(x_new)
        run.record(x_new, f_new, dp, state.k)

        stop = run.residual_stop(f_new)
        if stop is not None:
            return finish(stop)
        if abs(x_new - x_n) <= run.step_tolerance(x_n):
            return finish(Termination.CONVERGED)
        if x_new in state.nodes:
            return finish(Termination.DUPLICATE_NODE, "iterate repeats a stored node")
        state = push_node(state, x_new, f_new, grow=state.k < k)


def secant_solve(problem: ProblemSpec, config: SolverConfig) -> SolveReport:
    """Classical two-point secant method (``k = 1``)."""
    cfg = SolverConfig(
        k=1,
        initial_points=config.initial_points[:2],
        precision=config.precision,
        tol_residual=config.tol_residual,
        tol_step=config.tol_step,
        max_iterations=config.max_iterations,
        step_cap=config.step_cap,
    )
    report = solve(problem, cfg)
    return replace(report, method="secant")


def newton_solve(problem: ProblemSpec, x0: RealLike, config: SolverConfig) -> SolveReport:
    """Newton-Raphson from ``x0``; each iteration costs ``f`` and ``f'``."""
    if problem.fprime is None:
        raise ValueError(f"problem {problem.name!r} has no derivative for Newton's method")
    run = _Run(problem, config)
    ctx = run.ctx
    fprime = _Counted(problem.fprime, ctx)

    def finish(term: Termination, message: str = "") -> SolveReport:
        return SolveReport(
            records=tuple(run.records),
            termination=term,
            method="newton",
            k=1,
            precision=ctx.precision,
            evaluations=run.f.calls + fprime.calls,
            start_count=1,
            evals_per_iteration=2,
            message=message,
            known_root=run.alpha,
        )

    x = ctx.real(x0)
    fx = run.f(x)
    run.record(x, fx)
    stop = run.residual_stop(fx)
    if stop is not None:
        return finish(stop, "stopped on the starting point")
    for _ in range(config.max_iterations):
        d = fprime(x)
        if _bad(ctx, d):
            return finish(Termination.NAN_ENCOUNTERED, "non-finite derivative")
        if d == 0:
            return finish(Termination.DERIVATIVE_BREAKDOWN, "f' vanished")
        step = fx / d
        if run.runaway(step, x):
            return finish(Termination.MAX_ITERATIONS, "step exceeded the runaway cap")
        x_new = x - step
        fx = run.f(x_new)
        run.record(x_new, fx, d, 1)
        stop = run.residual_stop(fx)
        if stop is not None:
            return finish(stop)
        if abs(x_new - x) <= run.step_tolerance(x):
            return finish(Termination.CONVERGED)
        x = x_new
    return finish(Termination.MAX_ITERATIONS)
