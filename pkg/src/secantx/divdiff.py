"""Divided differences and the bottom diagonal of the difference table.

Nodes are always kept newest-first, ``[x_n, x_{n-1}, ..., x_{n-k}]``, and
``diagonal[i]`` holds ``f[x_{n-i}, ..., x_n]``. Only that diagonal is ever
stored; a new point updates it in ``k`` divisions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

from .errors import DuplicateNode
from .realnum import Real

Point = Tuple[Real, Real]


def _check_distinct(xs: Sequence[Real]) -> None:
    seen = set()
    for x in xs:
        # mpf hashes agree with equality, so exact duplicates collide here.
        if x in seen:
            raise DuplicateNode(f"repeated abscissa {x}")
        seen.add(x)


def divided_difference(points: Sequence[Point]) -> Real:
    """Highest-order divided difference ``f[x_0, ..., x_m]`` over ``points``.

    Uses ``f[x_i..x_m] = (f[x_i..x_{m-1}] - f[x_{i+1}..x_m]) / (x_i - x_m)``
    in the order the points are given, keeping a single working column.
    """
    if not points:
        raise ValueError("need at least one point")
    xs = [p[0] for p in points]
    _check_distinct(xs)
    column = [p[1] for p in points]
    for order in range(1, len(points)):
        column = [
            (column[i] - column[i + 1]) / (xs[i] - xs[i + order])
            for i in range(len(column) - 1)
        ]
    return column[0]


@dataclass(frozen=True)
class DiagonalState:
    nodes: Tuple[Real, ...]
    diagonal: Tuple[Real, ...]

    def __post_init__(self):
        if len(self.nodes) != len(self.diagonal) or not self.nodes:
            raise ValueError("nodes and diagonal must be non-empty and of equal length")

    @property
    def k(self) -> int:
        """Degree of the interpolant, one less than the node count."""
        return len(self.nodes) - 1

    @property
    def newest(self) -> Real:
        return self.nodes[0]

    @property
    def f_newest(self) -> Real:
        return self.diagonal[0]


def push_node(state: DiagonalState, x_new: Real, f_new: Real, *, grow: bool = False) -> DiagonalState:
    """Advance the window by one node.

    With ``grow=False`` the oldest node drops out and the width stays the
    same; ``grow=True`` keeps every node (used while bootstrapping).
    """
    if x_new in state.nodes:
        raise DuplicateNode(f"node {x_new} already in the window")
    old = state.diagonal
    width = len(old) + 1 if grow else len(old)
    new = [f_new]
    for i in range(1, width):
        new.append((old[i - 1] - new[i - 1]) / (state.nodes[i - 1] - x_new))
    nodes = (x_new,) + state.nodes[: width - 1]
    return DiagonalState(nodes, tuple(new))


def init_diagonal(points: Sequence[Point]) -> DiagonalState:
    """Build the bottom diagonal for ``points`` given newest-first."""
    if not points:
        raise ValueError("need at least one point")
    _check_distinct([p[0] for p in points])
    oldest_x, oldest_f = points[-1]
    state = DiagonalState((oldest_x,), (oldest_f,))
    for x, fx in reversed(points[:-1]):
        state = push_node(state, x, fx, grow=True)
    return state


def from_history(xs: Iterable[Real], fs: Iterable[Real]) -> DiagonalState:
    """Diagonal over chronologically ordered samples (oldest first)."""
    pts = list(zip(xs, fs))
    return init_diagonal(pts[::-1])


def derivative_at_newest(state: DiagonalState) -> Real:
    """``p'(x_n)`` for the interpolant through the window.

    ``f[x_n,x_{n-1}] + sum_{i>=2} f[x_n..x_{n-i}] * prod_{j=1}^{i-1} (x_n - x_{n-j})``
    """
    if len(state.nodes) < 2:
        raise ValueError("derivative needs at least two nodes")
    xn = state.nodes[0]
    d = state.diagonal
    total = d[1]
    prod = None
    for i in range(2, len(d)):
        factor = xn - state.nodes[i - 1]
        prod = factor if prod is None else prod * factor
        total = total + d[i] * prod
    return total


def newton_form_eval(state: DiagonalState, x: Real) -> Real:
    """Value of the interpolating polynomial at ``x`` (nested Newton form)."""
    d = state.diagonal
    acc = d[-1]
    for i in range(len(d) - 2, -1, -1):
        acc = d[i] + (x - state.nodes[i]) * acc
    return acc
