"""Built-in test equations with analytic metadata.

Every derivative is written out by hand as an expression in ``x`` and
evaluated at the root on demand, so constants such as ``L`` come out at
whatever precision the caller works in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import NotFound
from .expression import Expression, parse
from .iterate import ProblemSpec
from .realnum import Real, RealContext


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    expression: str
    known_root: str
    derivatives: Mapping[int, str]
    suggested_k: int
    suggested_initial_points: Tuple[str, ...]
    description: str = ""
    polynomial_degree: Optional[int] = None

    def parsed(self) -> Expression:
        return parse(self.expression)

    def root(self, ctx: RealContext) -> Real:
        return parse(self.known_root)(ctx.zero, ctx)

    def derivative(self, order: int) -> Expression:
        if order not in self.derivatives:
            raise NotFound(f"{self.name}: no derivative of order {order}")
        return parse(self.derivatives[order])

    def derivatives_at_root(self, ctx: RealContext) -> Dict[int, Real]:
        alpha = self.root(ctx)
        return {order: parse(text)(alpha, ctx) for order, text in sorted(self.derivatives.items())}

    def derivative_at_root(self, order: int, ctx: RealContext) -> Real:
        if self.polynomial_degree is not None and order > self.polynomial_degree:
            return ctx.zero
        return self.derivative(order)(self.root(ctx), ctx)

    def problem(self, ctx: RealContext) -> ProblemSpec:
        fprime = parse(self.derivatives[1]) if 1 in self.derivatives else None
        return ProblemSpec(
            f=self.parsed(),
            fprime=fprime,
            higher_derivatives_at_root=self.derivatives_at_root(ctx),
            known_root=self.root(ctx),
            name=self.name,
        )


_X_COS_ROOT = (
    "0.73908513321516064165531208767387340401341175890075746496568063577"
    "328465488354759459937610693176653184980124664"
)
_WALLIS_ROOT = (
    "2.09455148154232659148238654057930296385730610562823918030412852904"
    "53121899834836671462672817771577578608395212"
)

_ENTRIES = (
    CorpusEntry(
        name="cube-8",
        expression="x^3 - 8",
        known_root="2",
        derivatives={1: "3*x^2", 2: "6*x", 3: "6", 4: "0"},
        suggested_k=2,
        suggested_initial_points=("5", "4"),
        description="cube root of 8; k=2 from 5, 4 is the reference run",
        polynomial_degree=3,
    ),
    CorpusEntry(
        name="sqrt2",
        expression="x^2 - 2",
        known_root="2^0.5",
        derivatives={1: "2*x", 2: "2", 3: "0"},
        suggested_k=2,
        suggested_initial_points=("1", "2"),
        description="square root of 2",
        polynomial_degree=2,
    ),
    CorpusEntry(
        name="x-cos",
        expression="x - cos(x)",
        known_root=_X_COS_ROOT,
        derivatives={1: "1 + sin(x)", 2: "cos(x)", 3: "-sin(x)", 4: "-cos(x)", 5: "sin(x)"},
        suggested_k=2,
        suggested_initial_points=("0", "1"),
        description="fixed point of cos (Dottie number)",
    ),
    CorpusEntry(
        name="exp-m2",
        expression="exp(x) - 2",
        known_root="ln(2)",
        derivatives={i: "exp(x)" for i in range(1, 6)},
        suggested_k=3,
        suggested_initial_points=("0", "1"),
        description="natural logarithm of 2",
    ),
    CorpusEntry(
        name="wallis",
        expression="x^3 - 2*x - 5",
        known_root=_WALLIS_ROOT,
        derivatives={1: "3*x^2 - 2", 2: "6*x", 3: "6", 4: "0"},
        suggested_k=3,
        suggested_initial_points=("2", "3"),
        description="Wallis's cubic; degree <= k, so the iteration is Newton's after start-up",
        polynomial_degree=3,
    ),
    CorpusEntry(
        name="quartic",
        expression="x^4 - 10*x^2 + 9",
        known_root="3",
        derivatives={1: "4*x^3 - 20*x", 2: "12*x^2 - 20", 3: "24*x", 4: "24", 5: "0"},
        suggested_k=4,
        suggested_initial_points=("3.5", "2.5"),
        description="roots +-1, +-3; degree 4 polynomial for k=4 runs",
        polynomial_degree=4,
    ),
)


def builtin_corpus() -> List[CorpusEntry]:
    return list(_ENTRIES)


def lookup(name: str) -> CorpusEntry:
    for entry in _ENTRIES:
        if entry.name == name:
            return entry
    raise NotFound(f"no corpus entry named {name!r}; known: {', '.join(e.name for e in _ENTRIES)}")
