import pytest

from oracles import textbook_secant
from secantx.corpus import builtin_corpus, lookup
from secantx.errors import DuplicateNode
from secantx.expression import parse
from secantx.iterate import ProblemSpec, SolverConfig, Termination, newton_solve, secant_solve, solve
from secantx.realnum import RealContext

CTX = RealContext(256)


def problem(text, root=None, fprime=None):
    return ProblemSpec(parse(text), None if fprime is None else parse(fprime), known_root=root)


def test_cubic_k2_run_shape():
    report = solve(lookup("cube-8").problem(RealContext(113)),
                   SolverConfig(k=2, initial_points=("5", "4"), precision=113))
    assert report.termination is Termination.RESIDUAL_ZERO
    assert report.final_x == 2
    assert len(report.records) == report.evaluations == 10
    assert [r.k_used for r in report.records] == [0, 0, 1] + [2] * 7
    assert report.start_count == 2 and report.iterations == 8


def test_k1_is_textbook_secant():
    f = parse("x^3 - 2*x - 5")
    report = solve(ProblemSpec(f), SolverConfig(k=1, initial_points=("2", "3"), max_iterations=8))
    want = textbook_secant(f, CTX.mpf(2), CTX.mpf(3), 8)
    assert report.xs == want[: len(report.xs)]


def test_secant_solve_labels_and_truncates_points():
    report = secant_solve(problem("x^2 - 2"), SolverConfig(k=3, initial_points=("1", "2", "3")))
    assert report.method == "secant" and report.k == 1
    assert report.xs[:2] == [1, 2]


def test_full_window_from_start_skips_bootstrap():
    report = solve(problem("x^2 - 2"), SolverConfig(k=2, initial_points=("1", "2", "1.5")))
    assert all(r.k_used == 2 for r in report.records[3:])


@pytest.mark.parametrize("entry", builtin_corpus(), ids=lambda e: e.name)
def test_corpus_converges(entry):
    report = solve(entry.problem(CTX), SolverConfig(k=entry.suggested_k,
                                                    initial_points=entry.suggested_initial_points))
    assert report.termination.success
    assert abs(report.final_x - entry.root(CTX)) <= CTX.mpf(10) ** -70


@pytest.mark.parametrize("entry", builtin_corpus(), ids=lambda e: e.name)
def test_errors_contract_near_root(entry):
    report = solve(entry.problem(CTX), SolverConfig(k=entry.suggested_k,
                                                    initial_points=entry.suggested_initial_points))
    errs = [abs(e) for e in report.errors]
    tail = [i for i in range(len(errs) - 1) if errs[i] < CTX.mpf("0.05") and errs[i + 1] > CTX.mpf(10) ** -70]
    assert tail
    for i in tail[1:]:
        assert errs[i + 1] < errs[i]


def test_residual_tolerance_converges():
    report = solve(problem("x^2 - 2"), SolverConfig(k=2, initial_points=("1", "2"), tol_residual="1e-10"))
    assert report.termination is Termination.CONVERGED
    assert abs(report.records[-1].f) <= CTX.mpf("1e-10")


def test_explicit_step_tolerance_is_absolute():
    report = solve(problem("x - cos(x)"), SolverConfig(k=2, initial_points=("0", "1"), tol_step="1e-3"))
    assert report.termination is Termination.CONVERGED
    assert abs(report.xs[-1] - report.xs[-2]) <= CTX.mpf("1e-3")
    assert len(report.records) < 8


def test_max_iterations():
    report = solve(problem("x - cos(x)"), SolverConfig(k=2, initial_points=("0", "1"), max_iterations=3))
    assert report.termination is Termination.MAX_ITERATIONS
    assert report.iterations == 3 and not report.termination.success


def test_residual_zero_on_start():
    report = solve(problem("x^2 - 4"), SolverConfig(k=2, initial_points=("2", "5")))
    assert report.termination is Termination.RESIDUAL_ZERO and len(report.records) == 1


def test_flat_function_breaks_down():
    report = solve(problem("x - x + 1"), SolverConfig(k=2, initial_points=("0", "1")))
    assert report.termination is Termination.DERIVATIVE_BREAKDOWN
    assert report.evaluations == 2


def test_domain_error_becomes_nan():
    report = solve(problem("ln(x)"), SolverConfig(k=1, initial_points=("5", "4")))
    assert report.termination is Termination.NAN_ENCOUNTERED
    assert CTX.isnan(report.records[-1].f)


def test_runaway_step_is_capped():
    report = solve(problem("exp(x) - 2"), SolverConfig(k=1, initial_points=("-40", "-41"), step_cap=100))
    assert report.termination is Termination.MAX_ITERATIONS
    assert "runaway" in report.message


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(k=0)
    with pytest.raises(ValueError):
        SolverConfig(k=1, initial_points=("1", "2", "3"))
    with pytest.raises(ValueError):
        SolverConfig(k=2, initial_points=("1",))
    with pytest.raises(ValueError):
        SolverConfig(max_iterations=0)
    with pytest.raises(ValueError):
        solve(problem("x"), SolverConfig(k=1))
    with pytest.raises(DuplicateNode):
        solve(problem("x"), SolverConfig(k=2, initial_points=("1", "1.0")))


def test_precision_is_honoured():
    report = solve(problem("x^2 - 2"), SolverConfig(k=2, initial_points=("1", "2"), precision=64))
    assert report.precision == 64
    assert report.final_x.context.prec == 64
    assert abs(report.final_x - RealContext(64).sqrt(2)) <= RealContext(64).ulp(report.final_x)


def test_newton_quadratic_and_costs():
    p = lookup("cube-8").problem(CTX)
    report = newton_solve(p, "5", SolverConfig())
    assert report.termination.success
    assert report.evals_per_iteration == 2
    assert report.evaluations == 1 + 2 * report.iterations
    ratios = [report.errors[i + 1] / report.errors[i] ** 2 for i in range(3, 6)]
    assert abs(ratios[-1] - CTX.mpf("0.5")) < CTX.mpf("0.01")


def test_newton_needs_derivative():
    with pytest.raises(ValueError):
        newton_solve(problem("x^2 - 2"), "1", SolverConfig())


def test_newton_zero_derivative():
    report = newton_solve(problem("x^2 + 1", fprime="2*x"), "0", SolverConfig())
    assert report.termination is Termination.DERIVATIVE_BREAKDOWN
