import pytest

from reprspace.names import NatName, Periodic, ZEROS, word
from reprspace.sets import (
    bit_open,
    closed_product,
    complement,
    countable_intersection,
    countable_union,
    cut,
    cylinder_open,
    empty_closed,
    empty_open,
    full_closed,
    full_open,
    join_bound,
    member,
    open_product,
    preimage,
    seq_closed_product,
    set_intersection,
    set_union,
    sierp_and,
    sierp_countable_or,
    sierp_or,
)
from reprspace.spaces import (
    BOTTOM,
    CANTOR,
    NAT,
    SIERP,
    Closed,
    DescriptorMismatch,
    Open,
    Point,
    Product,
    const_fn,
    identity,
    make_product,
    sequence,
    sierp_at,
)


def yes(s, fuel=10**3):
    return s.name.confirms(fuel)


def pt(w):
    return Point(CANTOR, word(w))


U, V = bit_open(0, 1), bit_open(1, 1)


def test_sierpinski_examples():
    assert yes(sierp_and(sierp_at(3), sierp_at(5)), 100)
    assert not yes(sierp_and(sierp_at(3), BOTTOM), 10**6)
    assert yes(sierp_or(BOTTOM, sierp_at(9)))


@pytest.mark.parametrize("i, at", [(0, 0), (3, 4), (17, 2), (40, 0)])
def test_join_fairness_bound(i, at):
    xs = sequence(lambda n: sierp_at(at).name if n == i else ZEROS, SIERP)
    s = sierp_countable_or(xs)
    f_i = at + 1  # the component alone confirms at this fuel
    assert s.name.confirms(join_bound(i, f_i))
    # the bound is tight for this schedule
    assert not sierp_countable_or(xs).name.confirms(join_bound(i, f_i) - 1)


def test_join_confirms_late_components_within_budget():
    xs = sequence(lambda n: sierp_at(2).name if n == 17 else ZEROS, SIERP)
    assert yes(sierp_countable_or(xs), 10**3)
    assert not yes(sierp_countable_or(sequence(lambda n: ZEROS, SIERP)), 10**6)


def test_intersection_example():
    w = set_intersection(U, V)
    assert not yes(member(Point(CANTOR, Periodic("", "10")), w), 10**5)
    assert yes(member(pt("11"), w))


def test_union_with_empty():
    u = set_union(U, empty_open(CANTOR))
    for w in ("0", "1", "01", "10"):
        assert yes(member(pt(w), u)) == (w[0] == "1")


def test_closed_union_is_de_morgan():
    a, b = complement(U), complement(V)
    for w in ("00", "01", "10", "11"):
        outside_both = w[0] == "1" and w[1] == "1"
        assert yes(member(pt(w), set_union(a, b))) == outside_both


def test_complement_keeps_the_name():
    assert complement(complement(U)).name is U.name
    assert complement(empty_open(CANTOR)).space == Closed(CANTOR)
    assert complement(empty_open(CANTOR)).name.prefix(32) == full_closed(CANTOR).name.prefix(32)
    assert yes(member(pt("1"), complement(U))) and not yes(member(pt("0"), complement(U)), 10**4)


def test_countable_union_example():
    us = sequence(lambda n: bit_open(n, 1).name, Open(CANTOR))
    assert yes(member(pt("000001"), countable_union(us)))
    assert not yes(member(pt(""), countable_union(us)), 10**5)
    empty = sequence(lambda n: empty_open(CANTOR).name, Open(CANTOR))
    assert not yes(member(pt("1"), countable_union(empty)), 10**5)


def test_countable_intersection_of_full_sets():
    full = sequence(lambda n: full_closed(CANTOR).name, Closed(CANTOR))
    assert not yes(member(pt("101"), countable_intersection(full)), 10**5)
    some = sequence(lambda n: complement(bit_open(n, 1)).name, Closed(CANTOR))
    # x is outside the intersection once some bit of x is 1
    assert yes(member(pt("0001"), countable_intersection(some)))


def test_preimage_examples():
    for w in ("0", "1"):
        assert yes(member(pt(w), preimage(identity(CANTOR), U))) == (w == "1")
    const_in = const_fn(pt("1"), CANTOR)
    const_out = const_fn(pt("0"), CANTOR)
    assert yes(member(pt("0"), preimage(const_in, U)))
    assert not yes(member(pt("1"), preimage(const_out, U)), 10**4)


def test_member_examples():
    assert yes(member(pt("0110"), full_open(CANTOR)), 1)
    assert not yes(member(pt(""), bit_open(2, 1)), 10**5)
    assert yes(member(pt("001"), bit_open(2, 1)))


def test_cylinders():
    u = cylinder_open(["01", "110"])
    assert yes(member(pt("0111"), u)) and yes(member(pt("110"), u))
    assert not yes(member(pt("111"), u), 10**4)
    assert not yes(member(pt("1"), cylinder_open([])), 10**4)


def test_closed_product():
    a, b = complement(U), complement(V)
    prod = closed_product(a, b)
    for x in ("0", "1"):
        for y in ("00", "01"):
            excluded = x == "1" or y[1] == "1"
            assert yes(member(make_product(pt(x), pt(y)), prod)) == excluded
    full = closed_product(full_closed(CANTOR), full_closed(CANTOR))
    assert not yes(member(make_product(pt("1"), pt("1")), full), 10**4)


def test_cut():
    r = open_product(U, V)
    assert yes(member(pt("1"), cut(pt("01"), r)))
    assert not yes(member(pt("1"), cut(pt("00"), r)), 10**4)
    assert yes(member(pt("0"), cut(pt("0"), full_open(Product(CANTOR, CANTOR)))))


def test_sequence_product():
    factors = sequence(lambda n: (empty_closed(CANTOR) if n == 3 else full_closed(CANTOR)).name, Closed(CANTOR))
    prod = seq_closed_product(factors)
    s = sequence(lambda n: ZEROS, CANTOR)
    assert yes(member(s, prod))
    allfull = seq_closed_product(sequence(lambda n: full_closed(CANTOR).name, Closed(CANTOR)))
    assert not yes(member(s, allfull), 10**4)


def test_mixed_kinds_are_rejected():
    with pytest.raises(DescriptorMismatch):
        set_union(U, complement(V))
    with pytest.raises(DescriptorMismatch):
        member(Point(NAT, NatName(1)), U)


def test_confirmation_is_monotone_in_fuel():
    s = member(pt("0000001"), countable_union(sequence(lambda n: bit_open(n, 1).name, Open(CANTOR))))
    seen = [s.name.confirms(f) for f in range(1, 200)]
    assert seen == sorted(seen)
