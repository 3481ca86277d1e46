import pytest
from hypothesis import given, settings, strategies as st

from secantx.errors import DivisionByZero, DomainError, ExpressionSyntaxError, UnknownIdentifier
from secantx.expression import BinOp, Neg, Num, Var, parse, to_text
from secantx.realnum import RealContext

CTX = RealContext(128)


def ev(text, x):
    return parse(text)(CTX.mpf(x))


def test_precedence_and_associativity():
    assert ev("1 + 2 * 3", 0) == 7
    assert ev("2 ^ 3 ^ 2", 0) == 512
    assert ev("8 / 4 / 2", 0) == 1
    assert ev("10 - 4 - 3", 0) == 3
    assert ev("(1 + 2) * 3", 0) == 9


def test_unary_minus_binds_looser_than_power():
    assert ev("-x^2", 3) == -9
    assert ev("(-x)^2", 3) == 9
    assert ev("2^-1", 0) == CTX.mpf("0.5")
    assert ev("--x", 4) == 4
    assert parse("-x^2").tree == Neg(BinOp("^", Var(), Num("2")))


def test_functions_and_unicode_minus():
    assert ev("exp(0) + cos(0) + sin(0) + ln(1)", 0) == 2
    assert ev("x − 1", 3) == 2
    assert abs(ev("x - cos(x)", "0.5") - (CTX.mpf("0.5") - CTX.cos(CTX.mpf("0.5")))) == 0


def test_number_forms():
    assert ev(".5 + 1. + 2e1 + 3E-1", 0) == CTX.mpf("21.8")


def test_non_integer_exponent_rules():
    assert abs(ev("2^0.5", 0) - CTX.sqrt(2)) <= CTX.ulp(CTX.sqrt(2))
    assert ev("exp(x)^0.5", 0) == 1
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("x^0.5")
    assert info.value.position == 1
    assert ev("x^-2", 2) == CTX.mpf("0.25")


def test_syntax_errors_point_at_offset():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("x +")
    assert info.value.position == 3
    lines = info.value.annotated().splitlines()
    assert lines[1:] == ["  x +", "     ^"]
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("(x + 1")
    assert info.value.position == 6
    with pytest.raises(ExpressionSyntaxError) as info:
        parse("x $ 1")
    assert info.value.position == 2
    with pytest.raises(ExpressionSyntaxError):
        parse("x 1")


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifier) as info:
        parse("2 * y")
    assert info.value.position == 4
    with pytest.raises(UnknownIdentifier):
        parse("tan(x)")


def test_evaluation_errors_surface():
    with pytest.raises(DivisionByZero):
        ev("1 / x", 0)
    with pytest.raises(DomainError):
        ev("ln(x)", -1)


def test_context_follows_argument():
    e = parse("x / 3")
    lo, hi = RealContext(30), RealContext(300)
    assert e(lo.one).context is lo
    assert e(hi.one).context is hi
    assert e(hi.one) != hi.real(e(lo.one))


leaves = st.sampled_from([Var(), Num("2"), Num("0.5"), Num("13")])


def _trees(children):
    ops = st.sampled_from(["+", "-", "*", "/", "^"])
    return st.one_of(
        st.builds(Neg, children),
        st.builds(lambda op, a, b: BinOp(op, a, b if op != "^" else Num("3")), ops, children, children),
    )


@settings(max_examples=300, deadline=None)
@given(st.recursive(leaves, _trees, max_leaves=8))
def test_printer_round_trips(tree):
    assert parse(to_text(tree)).tree == tree


def test_equality_and_str():
    assert parse("x^3 - 8") == parse("x ^ 3 - 8")
    assert str(parse("(x)*(2)")) == "x * 2"
    assert len({parse("x+1"), parse("x + 1")}) == 1
