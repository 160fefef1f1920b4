"""Grammar surface: precedence, errors with byte offsets, field syntax."""
import pytest

from wavesym.charts import BASE_COORDS
from wavesym.expr import UnknownIdentifier, equal, mul, rat, sym
from wavesym.parse import ParseError, parse, parse_vector_field


def test_precedence(ch):
    assert equal(parse("1 + 2*3^2", ch), rat(19))
    # ^ is right-associative
    assert equal(parse("2^3^2", ch), rat(512))
    assert equal(parse("-2^2", ch), rat(-4))
    assert equal(parse("6/4", ch), rat(3) / rat(2))
    assert equal(parse("2*x/x", ch), rat(2))


def test_unary_minus(ch):
    assert equal(parse("-x + x", ch), rat(0))
    assert equal(parse("--x", ch), sym(ch.get("x")))


def test_jet_names(ch):
    assert parse("u_xt", ch) == parse("u_tx", ch)
    assert parse("u_ttx", ch) == sym(ch.jet("u", 2, 1))


def test_ln_abs_spelling(ch):
    assert parse("ln(abs(u_x))", ch) == parse("lnabs(u_x)", ch)
    with pytest.raises(ParseError):
        parse("ln(u_x)", ch)


def test_syntax_error_offset(ch):
    with pytest.raises(ParseError) as err:
        parse("x + $", ch)
    assert "offset 4" in str(err.value)


def test_unknown_identifier(ch):
    with pytest.raises(UnknownIdentifier):
        parse("x + bogus", ch)


def test_arity_mismatch(ch):
    with pytest.raises(ParseError):
        parse("f(x)", ch)


def test_explicit_args(ch):
    e = parse("F(x - eps*lnabs(u_x))", ch)
    assert e.fn.name == "F"
    # default-argument application prints bare and round-trips
    assert parse("f", ch) == parse("f(x,u_x)", ch)


def test_vector_field_syntax(ch):
    V = parse_vector_field("2*t@t + u@u", ch, BASE_COORDS)
    assert equal(V.coeff("t"), mul(rat(2), sym(ch.get("t"))))
    assert equal(V.coeff("u"), sym(ch.get("u")))
    W = parse_vector_field("-p*t@t + eps@x + u@u", ch, BASE_COORDS)
    assert equal(W.coeff("t"), mul(rat(-1), sym(ch.get("p")), sym(ch.get("t"))))
    X = parse_vector_field("t^(-2)@t - (x+1)@x", ch, BASE_COORDS)
    assert equal(X.coeff("x"), mul(rat(-1), parse("x+1", ch)))
    with pytest.raises(ParseError):
        parse_vector_field("2*t", ch, BASE_COORDS)
    with pytest.raises(ParseError):
        parse_vector_field("1@nope", ch, BASE_COORDS)
