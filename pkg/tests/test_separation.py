from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from reprspace.compact import cantor_as_compact, contained_in, finite_compact, sat_singleton
from reprspace.names import NatName, ZEROS, word
from reprspace.overt import finite_overt
from reprspace.reals import from_bounds, real_arith, real_from_rational, to_lower, to_upper
from reprspace.separation import (
    closed_singleton,
    diagonal_complement,
    eq,
    graph,
    graph_inv,
    k_to_closed,
    neq,
    proper_preimage,
    v_to_open,
)
from reprspace.sets import bit_open, cylinder_open, full_open, member
from reprspace.spaces import (
    CANTOR,
    NAT,
    SIERP,
    Closed,
    MissingCapability,
    Point,
    Product,
    TOP,
    const_fn,
    identity,
    make_product,
    nat_encode,
    program_function,
)
from reprspace.t2vm import assemble, fn


def yes(s, fuel=10**4):
    return s.name.confirms(fuel)


def pt(w):
    return Point(CANTOR, word(w))


def real(q):
    return real_from_rational(Fraction(q))


def test_neq_examples():
    assert yes(neq(real("1/3"), real("1/2")))
    x = real("1/3")
    assert not yes(neq(x, x), 10**6)
    assert yes(neq(nat_encode(2), nat_encode(3)))
    assert yes(neq(pt("0010"), pt("0011")))
    assert not yes(neq(pt("0010"), pt("0010")), 10**5)


@settings(max_examples=200, deadline=None)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=1000),
       st.fractions(min_value=-5, max_value=5, max_denominator=100))
def test_neq_is_sound_on_equal_points(q, r):
    x = real(q)
    for y in (x, real(q), real_arith("+", real_arith("-", x, real(r)), real(r)),
              from_bounds(to_lower(x), to_upper(x))):
        assert not yes(neq(x, y), 10**5)


@settings(max_examples=100, deadline=None)
@given(st.fractions(min_value=-50, max_value=50, max_denominator=1000),
       st.fractions(min_value=-50, max_value=50, max_denominator=1000))
def test_neq_confirms_distinct_rationals(q, r):
    if q != r:
        assert yes(neq(real(q), real(r)), 10**6)


def test_eq_on_nat():
    assert yes(eq(nat_encode(4), nat_encode(4)))
    assert not yes(eq(nat_encode(4), nat_encode(5)), 10**5)


def test_missing_capabilities():
    with pytest.raises(MissingCapability):
        eq(pt("1"), pt("1"))
    with pytest.raises(MissingCapability):
        neq(TOP, TOP)


def test_closed_singleton():
    s = closed_singleton(pt("01"))
    assert not yes(member(pt("01"), s), 10**5)
    for w in ("1", "011", "00"):
        assert yes(member(pt(w), s))
    r = closed_singleton(real("1/3"))
    assert yes(member(real("1/2"), r))
    assert not yes(member(real("1/3"), r), 10**5)


def test_k_to_closed():
    single = k_to_closed(sat_singleton(pt("1")))
    alone = closed_singleton(pt("1"))
    for w in ("0", "1", "11", "101"):
        assert yes(member(pt(w), single)) == yes(member(pt(w), alone))
    assert not yes(member(pt("0110"), k_to_closed(cantor_as_compact())), 10**5)
    two = k_to_closed(finite_compact([pt("0"), pt("1")], CANTOR))
    assert yes(member(pt("01"), two))
    assert not yes(member(pt("1"), two), 10**5)


def test_v_to_open():
    a = finite_overt([nat_encode(2), nat_encode(7)], NAT)
    u = v_to_open(a)
    assert yes(member(nat_encode(7), u))
    assert not yes(member(nat_encode(3), u), 10**5)


def test_diagonal_complement_is_neq():
    d = diagonal_complement(CANTOR)
    for a, b in (("0", "0"), ("0", "1"), ("101", "1")):
        assert yes(member(make_product(pt(a), pt(b)), d), 10**3) == yes(neq(pt(a), pt(b)), 10**3)


def test_graph():
    g = graph(identity(CANTOR))
    assert yes(member(make_product(pt("0"), pt("1")), g))
    assert not yes(member(make_product(pt("01"), pt("01")), g), 10**5)
    c = graph(const_fn(pt("1"), CANTOR))
    assert yes(member(make_product(pt("0"), pt("0")), c))
    assert not yes(member(make_product(pt("0"), pt("1")), c), 10**5)


SHIFT = assemble("CONST r1 1\nCONST r2 1\nl: READINPUT r0 r1\nWRITE r0\nADD r1 r2\nJMP l")


def test_graph_inv_on_cantor():
    f = program_function(SHIFT, CANTOR, CANTOR)
    y = graph_inv(graph(f), pt("10110"))
    assert y.name.prefix(8) == [0, 1, 1, 0, 0, 0, 0, 0]


def test_graph_inv_of_bottom_on_sierpinski():
    # a closed graph into S: with f constantly bottom, {(x, bottom)} is closed
    g = Point(Closed(Product(CANTOR, SIERP)), fn("PROJ2"))
    assert not yes(graph_inv(g, pt("1")), 10**5)


def test_proper_preimage():
    k = cantor_as_compact()
    whole_pre = proper_preimage(identity(CANTOR), k)
    assert yes(contained_in(whole_pre, full_open(CANTOR)))
    assert not yes(contained_in(whole_pre, bit_open(0, 1)), 10**5)
    single = proper_preimage(identity(CANTOR), sat_singleton(pt("1")))
    assert yes(contained_in(single, bit_open(0, 1)))
    assert yes(contained_in(single, cylinder_open(["10"])))
    # const 1...: the preimage of {0...} is empty, of {1...} everything
    c = const_fn(pt("1"), CANTOR)
    assert yes(contained_in(proper_preimage(c, sat_singleton(pt("0"))), cylinder_open([])))
    assert not yes(contained_in(proper_preimage(c, sat_singleton(pt("1"))), bit_open(0, 1)), 10**5)


def test_nat_compare_reads_unary_names():
    assert yes(eq(Point(NAT, word("0001")), Point(NAT, NatName(3))))
    assert not yes(eq(Point(NAT, ZEROS), Point(NAT, NatName(3))), 10**4)
