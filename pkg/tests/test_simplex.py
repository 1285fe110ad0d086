from fractions import Fraction

import pytest

from vpnhub.scripts.logging import UnboundedError, ValidationError
from vpnhub.scripts.simplex import LinearProgram, simplex_solve


def test_single_bound():
    lp = LinearProgram(("x",), {"x": 1}, (({"x": 2}, 3),))
    optimum, solution = simplex_solve(lp)
    assert optimum == Fraction(3, 2)
    assert solution == {"x": Fraction(3, 2)}


def test_two_variables():
    # max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3
    lp = LinearProgram(
        ("x", "y"),
        {"x": 3, "y": 2},
        (({"x": 1, "y": 1}, 4), ({"x": 1, "y": 3}, 6), ({"x": 1}, 3)),
    )
    optimum, solution = simplex_solve(lp)
    assert optimum == 11
    assert solution == {"x": 3, "y": 1}


def test_degenerate_rows():
    lp = LinearProgram(
        ("x", "y"),
        {"x": 1, "y": 1},
        (({"x": 1, "y": 1}, 1), ({"x": 1}, 1), ({"y": 1}, 1), ({"x": 2, "y": 2}, 2)),
    )
    optimum, solution = simplex_solve(lp)
    assert optimum == 1
    assert solution["x"] + solution["y"] == 1


def test_bland_does_not_cycle():
    lp = LinearProgram(
        ("x4", "x5", "x6", "x7"),
        {"x4": Fraction(3, 4), "x5": -20, "x6": Fraction(1, 2), "x7": -6},
        (
            ({"x4": Fraction(1, 4), "x5": -8, "x6": -1, "x7": 9}, 0),
            ({"x4": Fraction(1, 2), "x5": -12, "x6": Fraction(-1, 2), "x7": 3}, 0),
            ({"x6": 1}, 1),
        ),
    )
    optimum, _ = simplex_solve(lp)
    assert optimum == Fraction(5, 4)


def test_zero_objective():
    optimum, solution = simplex_solve(LinearProgram(("x",), {}, (({"x": 1}, 5),)))
    assert optimum == 0
    assert solution == {"x": 0}


def test_unbounded():
    lp = LinearProgram(("x", "y"), {"x": 1}, (({"x": 1, "y": -1}, 1),))
    with pytest.raises(UnboundedError):
        simplex_solve(lp)


def test_zero_has_to_be_feasible():
    with pytest.raises(ValidationError) as e:
        simplex_solve(LinearProgram(("x",), {"x": 1}, (({"x": 1}, -1),)))
    assert e.value.invariant == "0 is feasible"


def test_undeclared_variable():
    with pytest.raises(ValidationError):
        simplex_solve(LinearProgram(("x",), {"x": 1}, (({"y": 1}, 1),)))
