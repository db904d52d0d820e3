import pytest

from lambdaring.errors import ParseError
from lambdaring.expr import Leaf, lefschetz_leaf, polyvar_leaf, structural_equal
from lambdaring.operands import Free
from lambdaring.parser import parse_expr


def test_worked_example_parses():
    ns = {}
    e = parse_expr("lambda(2, adams(2, x) - y/2)", ns)
    x, y = ns["x"], ns["y"]
    assert structural_equal(e, (x.adams(2) - y / 2).lambda_(2))


def test_identifiers_are_interned_per_namespace():
    ns = {}
    e = parse_expr("x*x + x", ns)
    assert structural_equal(e, ns["x"] * ns["x"] + ns["x"])
    assert isinstance(ns["x"].operand, Free)


def test_reserved_names():
    assert structural_equal(parse_expr("L^2 - 1"), lefschetz_leaf() ** 2 - 1)
    assert structural_equal(parse_expr("t*T"), polyvar_leaf("t") * polyvar_leaf("T"))


def test_precedence_and_unary_minus():
    ns = {}
    e = parse_expr("-x^2 + 3*y/4", ns)
    x, y = ns["x"], ns["y"]
    assert structural_equal(e, -(x ** 2) + y * 3 / 4)


def test_negative_exponent_extension():
    ns = {}
    e = parse_expr("(1 - x)^-1", ns)
    assert structural_equal(e, (1 - ns["x"]) ** -1)


def test_namespace_values_are_used():
    y = Leaf(Free("w"))
    assert structural_equal(parse_expr("sigma(3, w)", {"w": y}), y.sigma(3))


@pytest.mark.parametrize("text, line, column, fragment", [
    ("lambda(x, y)", 1, 8, "integer degree"),
    ("foo(2, x)", 1, 1, "unknown function"),
    ("x +", 1, 4, "expected"),
    ("x + $", 1, 5, "unexpected character"),
    ("x\n  + (y", 2, 7, "')'"),
    ("adams(0, x)", 1, 7, "psi^0"),
    ("lambda + 1", 1, 1, "lambda"),
    ("x y", 1, 3, ""),
])
def test_errors_carry_position(text, line, column, fragment):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    err = info.value
    assert (err.line, err.column) == (line, column)
    assert fragment in str(err)


def test_error_message_format():
    with pytest.raises(ParseError) as info:
        parse_expr("lambda(x, y)")
    assert str(info.value) == "lambda takes an integer degree as its first argument, found 'x' (line 1, column 8)"
