import time
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reprspace.compact import contained_in
from reprspace.overt import intersects
from reprspace.reals import (
    expr_function,
    finite_real_set,
    from_bounds,
    open_interval,
    parse_expr,
    precision_cost,
    real_approx,
    real_arith,
    real_from_rational,
    real_less,
    real_max,
    sup_compact,
    sup_on_unit,
    sup_overt,
    to_lower,
    to_upper,
    unit_interval,
)
from reprspace.sets import member
from reprspace.spaces import REAL, Function, Point, evaluate

F = Fraction
fractions = st.fractions(min_value=-100, max_value=100, max_denominator=1000)


def yes(s, fuel=10**4):
    return s.name.confirms(fuel)


def real(q):
    return real_from_rational(F(q))


@settings(max_examples=100, deadline=None)
@given(fractions, st.integers(0, 12))
def test_approximations_are_within_bound(q, n):
    assert abs(real_approx(real_from_rational(q), n) - q) <= F(1, 2**n)


def test_precision_cost():
    assert [precision_cost(n) for n in range(5)] == [1, 3, 7, 15, 31]


def test_arithmetic():
    assert abs(real_approx(real_arith("+", real("1/3"), real("1/6")), 20) - F(1, 2)) <= F(1, 2**20)
    assert abs(real_approx(real_arith("*", real("1/3"), real("0")), 20)) <= F(1, 2**20)
    x, y = real("22/7"), real("-13/5")
    back = real_arith("-", real_arith("+", x, y), y)
    assert abs(real_approx(back, 16) - F(22, 7)) <= F(1, 2**16)


@settings(max_examples=60, deadline=None)
@given(fractions, fractions, st.sampled_from("+-*"))
def test_arithmetic_matches_rationals(a, b, op):
    exact = {"+": a + b, "-": a - b, "*": a * b}[op]
    assert abs(real_approx(real_arith(op, real_from_rational(a), real_from_rational(b)), 12) - exact) <= F(1, 2**12)


def test_less():
    lt = real_less(real("1/3"), real("1/2"))
    assert not yes(lt, 30)
    assert yes(lt, 31)
    assert not yes(real_less(real("1/2"), real("1/3")), 10**6)
    x = real("1/3")
    assert not yes(real_less(x, x), 10**6)


def test_less_on_tiny_gap():
    lt = real_less(real("0"), real(F(1, 2**20)))
    assert not yes(lt, 10**6)
    assert yes(lt, 2**24)


def test_open_interval():
    u = open_interval(F(0), F(1))
    assert yes(member(real("1/2"), u))
    assert not yes(member(real("1"), u), 10**5)
    assert not yes(member(real("-1/3"), u), 10**5)


@settings(max_examples=60, deadline=None)
@given(fractions, st.integers(0, 10))
def test_lower_and_upper_bounds(q, n):
    x = real_from_rational(q)
    lo, hi = to_lower(x).name.rational(n), to_upper(x).name.rational(n)
    assert lo <= q <= hi
    assert hi - lo <= F(4, 2**n)


def test_from_bounds():
    x = real("5/7")
    back = from_bounds(to_lower(x), to_upper(x))
    assert abs(real_approx(back, 14) - F(5, 7)) <= F(1, 2**14)


def test_bound_streams_are_monotone():
    k, a = finite_real_set([F(0), F(1, 3), F(1, 2)])
    lower, upper = sup_overt(a).name, sup_compact(k).name
    lows = [lower.rational(n) for n in range(10)]
    highs = [upper.rational(n) for n in range(10)]
    assert lows == sorted(lows) and highs == sorted(highs, reverse=True)
    assert lows[-1] <= F(1, 2) <= highs[-1]


def test_real_max():
    k, a = finite_real_set([F(0), F(1, 3), F(1, 2)])
    assert abs(real_approx(real_max(k, a), 20) - F(1, 2)) <= F(1, 2**20)
    k, a = finite_real_set([F(-3), F(-7, 2)])
    assert abs(real_approx(real_max(k, a), 12) + 3) <= F(1, 2**12)


def test_unit_interval():
    k, a = unit_interval()
    assert yes(contained_in(k, open_interval(F(-1), F(2))), 10**5)
    assert yes(contained_in(k, open_interval(F(-1, 4), F(5, 4))), 10**5)
    assert not yes(contained_in(k, open_interval(F(0), F(2))), 10**4)
    assert yes(intersects(a, open_interval(F(2, 5), F(3, 5))))
    assert yes(intersects(a, open_interval(F(1, 2), F(3, 4))))
    assert not yes(intersects(a, open_interval(F(2), F(3))), 10**4)


def test_expressions():
    e = parse_expr("x*(1-x)")
    assert e.at(F(1, 4)) == F(3, 16)
    assert parse_expr("-2 + 0.5*x").at(F(2)) == F(-1)
    f = expr_function("x*x - 1/3")
    assert f.space == Function(REAL, REAL)
    assert abs(real_approx(evaluate(f, real("1/2")), 12) + F(1, 12)) <= F(1, 2**12)
    for bad in ("", "x +", "(x", "x y", "2 ^ x"):
        with pytest.raises(ValueError):
            parse_expr(bad)


def test_sup_on_unit_low_precision():
    start = time.perf_counter()
    s = sup_on_unit(expr_function("x*(1-x)"))
    assert abs(real_approx(s, 4) - F(1, 4)) <= F(1, 2**4)
    s = sup_on_unit(expr_function("x - 1"))
    assert abs(real_approx(s, 4)) <= F(1, 2**4)
    assert time.perf_counter() - start < 30


def test_spaces_of_results():
    assert isinstance(real("1"), Point) and real("1").space == REAL
