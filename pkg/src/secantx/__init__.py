"""Generalized secant method with one function evaluation per step.

The iteration replaces ``f'(x_n)`` in Newton's update by the derivative of
the polynomial interpolating ``f`` at the last ``k + 1`` iterates, and
keeps only the bottom diagonal of the divided-difference table.
"""

from .analysis import (
    OrderProfile,
    asymptotic_constant,
    efficiency_index,
    empirical_order,
    equal_cost_compare,
    error_ratio_limit,
    order_bounds,
    order_of_convergence,
    order_profile,
    sigma_sequence,
)
from .corpus import CorpusEntry, builtin_corpus, lookup
from .divdiff import (
    DiagonalState,
    derivative_at_newest,
    divided_difference,
    init_diagonal,
    newton_form_eval,
    push_node,
)
from .expression import Expression, parse
from .iterate import (
    IterationRecord,
    ProblemSpec,
    SolveReport,
    SolverConfig,
    Termination,
    generalized_secant_step,
    newton_solve,
    secant_solve,
    solve,
)
from .realnum import DEFAULT_PRECISION, QUAD_PRECISION, RealContext, format_real

__version__ = "0.1.0"
