import pytest

from relinv.expressions import ExpressionError, VariableTable, parse_expression, parse_many, render

T = VariableTable.of("x", "y", "y1")


@pytest.mark.parametrize("text, expected", [
    ("1 + 2*3", "7"),
    ("-x^2", "-x^2"),
    ("(-x)^2", "x^2"),
    ("2^-1", "1/2"),
    ("x^2^3", "x^8"),
    ("x/y/2", "1/2*x/y"),
    ("1 - x - y", "-x - y + 1"),
])
def test_precedence_and_associativity(text, expected):
    assert render(parse_expression(text, T), T) == render(parse_expression(expected, T), T)


def test_round_trip():
    for text in ["x^2 - 1/2*y", "(x + y1)/(y - 3)", "y1^3*x - 7", "0"]:
        f = parse_expression(text, T)
        assert parse_expression(render(f, T), T) == f


@pytest.mark.parametrize("text, pos", [("x +", 3), ("2x", 1), ("x ^ y", 4), ("(x", 2), ("x $ y", 2),
                                      ("w + 1", 0), ("1/(x - x)", 1)])
def test_errors_are_positioned(text, pos):
    with pytest.raises(ExpressionError) as err:
        parse_expression(text, T)
    assert err.value.position == pos
    assert "position" in str(err.value)


def test_unknown_identifier_message():
    with pytest.raises(ExpressionError, match="unknown"):
        parse_expression("z", T)


def test_table_rejects_duplicates_and_bad_names():
    with pytest.raises(ValueError):
        VariableTable.of("x", "x")
    with pytest.raises(ValueError):
        VariableTable.of("1x")


def test_parameters_extend_a_table():
    t = T.with_parameters(["A"])
    assert t.index("A") == 3 and t.name(0) == "x"
    assert t.roles[3] == "parameter"


def test_parse_many():
    a, b = parse_many(["x", "y^2"], T)
    assert render(a * b, T) == "x*y^2"
