from itertools import product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from reprspace.compact import (
    EXAMPLE_COVERS,
    cantor_as_compact,
    confirmation_fuel,
    contained_in,
    empty_compact,
    example_cover,
    finite_compact,
    finite_subcover,
    forall_rel,
    is_cover,
    is_empty_closed,
    is_full,
    k_countable_intersection_of_opens,
    k_image,
    k_intersect_closed,
    k_product,
    k_project,
    k_union,
    sat_singleton,
    search_depth,
    whole,
)
from reprspace.names import FuelExhausted, ZEROS, word
from reprspace.sets import (
    bit_open,
    complement,
    countable_union,
    cylinder_open,
    empty_closed,
    empty_open,
    full_closed,
    full_open,
    member,
    open_product,
    set_union,
)
from reprspace.spaces import (
    CANTOR,
    SIERP,
    Closed,
    DescriptorMismatch,
    Open,
    Point,
    Product,
    const_fn,
    identity,
    make_product,
    program_function,
    sequence,
)
from reprspace.t2vm import assemble, fn

WORDS4 = ["".join(w) for w in cartesian("01", repeat=4)]
SHIFT = assemble("CONST r1 1\nCONST r2 1\nl: READINPUT r0 r1\nWRITE r0\nADD r1 r2\nJMP l")


def yes(s, fuel=10**4):
    return s.name.confirms(fuel)


def pt(w):
    return Point(CANTOR, word(w))


def agree(k1, k2, opens, fuel=10**4):
    return all(yes(contained_in(k1, u), fuel) == yes(contained_in(k2, u), fuel) for u in opens)


OPENS = [bit_open(0, 1), bit_open(1, 0), cylinder_open(["00", "1"]), cylinder_open(["0", "11"]),
         full_open(CANTOR), empty_open(CANTOR)]


def test_contained_in_examples():
    k = cantor_as_compact()
    assert yes(contained_in(k, full_open(CANTOR)))
    assert not yes(contained_in(k, bit_open(0, 1)), 10**5)
    for w in ("0", "1", "011"):
        for u in OPENS:
            assert yes(contained_in(sat_singleton(pt(w)), u)) == yes(member(pt(w), u))


def test_union_examples():
    k = finite_compact([pt("01"), pt("1")], CANTOR)
    assert agree(k_union(k, k), k, OPENS)
    assert agree(k_union(k, empty_compact(CANTOR)), k, OPENS)
    two = k_union(sat_singleton(pt("0")), sat_singleton(pt("1")))
    assert yes(contained_in(two, cylinder_open(["0", "1"])))
    assert not yes(contained_in(two, cylinder_open(["0"])), 10**5)


def test_intersect_closed_examples():
    k = finite_compact([pt("0"), pt("1")], CANTOR)
    assert agree(k_intersect_closed(k, full_closed(CANTOR)), k, OPENS)
    assert yes(contained_in(k_intersect_closed(k, empty_closed(CANTOR)), empty_open(CANTOR)))
    # {0..., 1...} meet {p(0) = 1} lies inside {p(0) = 1}, and not inside {p(0) = 0}
    kb = k_intersect_closed(k, complement(bit_open(0, 0)))
    assert yes(contained_in(kb, bit_open(0, 1)))
    assert not yes(contained_in(kb, bit_open(0, 0)), 10**5)


def test_image_examples():
    k = finite_compact([pt("01"), pt("11")], CANTOR)
    assert agree(k_image(identity(CANTOR), k), k, OPENS)
    shift = program_function(SHIFT, CANTOR, CANTOR)
    assert agree(k_image(shift, sat_singleton(pt("01"))), sat_singleton(pt("1")), OPENS)
    c = const_fn(pt("1"), CANTOR)
    assert agree(k_image(c, cantor_as_compact()), sat_singleton(pt("1")), OPENS)


def test_product_examples():
    x, y = pt("1"), pt("01")
    prod = k_product(sat_singleton(x), sat_singleton(y))
    c2 = Product(CANTOR, CANTOR)
    rels = [open_product(bit_open(0, 1), bit_open(1, 1)), open_product(bit_open(0, 0), full_open(CANTOR)),
            open_product(full_open(CANTOR), bit_open(0, 1))]
    for r in rels:
        assert yes(contained_in(prod, r)) == yes(member(make_product(x, y), r))
    k = finite_compact([pt("0"), pt("10")], CANTOR)
    assert agree(k_project(k_product(k, sat_singleton(y)), 1), k, OPENS)
    assert agree(k_project(k_product(sat_singleton(y), k), 2), k, OPENS)
    empty = k_product(k, empty_compact(CANTOR))
    assert yes(contained_in(empty, empty_open(c2)))


def test_is_empty_closed_examples():
    both = set_union(bit_open(1, 0), bit_open(1, 1))
    assert search_depth(both, 10**3) == 2
    assert yes(is_empty_closed(complement(both)))
    ones = countable_union(sequence(lambda n: bit_open(n, 1).name, Open(CANTOR)))
    assert not yes(is_empty_closed(complement(ones)), 10**5)
    assert search_depth(full_open(CANTOR), 10) <= 1


@settings(max_examples=40, deadline=None)
@given(st.lists(st.text("01", min_size=1, max_size=4), max_size=6))
def test_search_is_sound_and_complete_at_depth(words):
    u = cylinder_open(words)
    full = all(any(w.startswith(c) for c in words) for w in WORDS4)
    assert yes(is_full(u), 2**12) == full
    if full:
        assert search_depth(u, 2**12) <= max(map(len, words))


def test_whole_products_and_images_are_compact():
    c2 = Product(CANTOR, CANTOR)
    cover = set_union(
        open_product(bit_open(0, 0), full_open(CANTOR)),
        set_union(open_product(bit_open(0, 1), bit_open(0, 0)), open_product(bit_open(0, 1), bit_open(0, 1))),
    )
    assert yes(is_full(cover))
    assert not yes(is_full(open_product(bit_open(0, 1), full_open(CANTOR))), 10**5)
    assert whole(c2).space.args[0] == c2
    shift = program_function(SHIFT, CANTOR, CANTOR)
    img = k_image(shift, cantor_as_compact())
    assert yes(contained_in(img, cylinder_open(["0", "1"])))
    assert not yes(contained_in(img, bit_open(0, 1)), 10**5)


def test_sierpinski_is_compact():
    ws = whole(SIERP)
    assert yes(contained_in(ws, full_open(SIERP)))
    top_only = Point(Open(SIERP), fn("ID"))
    assert not yes(contained_in(ws, top_only), 10**6)


@pytest.mark.parametrize("name, expected", [("shifted-cylinders", 6), ("case-split", 1), ("constant-full", 0)])
def test_finite_subcover_examples(name, expected):
    sub = finite_subcover(example_cover(name))
    assert sub.n == expected
    assert name in EXAMPLE_COVERS


def test_subcover_of_a_non_cover_runs_out_of_fuel():
    us = sequence(lambda n: bit_open(n, 1).name, Open(CANTOR))
    with pytest.raises(FuelExhausted):
        finite_subcover(us, fuel=2**12)


def test_is_cover_matches_countable_union():
    us = example_cover("case-split")
    assert confirmation_fuel(is_cover(us).name, 10**3) == confirmation_fuel(is_full(countable_union(us)).name, 10**3)


def test_forall_rel():
    k = finite_compact([pt("0"), pt("1")], CANTOR)
    r = set_union(open_product(bit_open(0, 0), bit_open(0, 1)), open_product(bit_open(0, 1), full_open(CANTOR)))
    assert yes(member(pt("1"), forall_rel(r, k)))
    assert not yes(member(pt("0"), forall_rel(r, k)), 10**4)
    full = full_open(Product(CANTOR, CANTOR))
    assert yes(member(pt("0"), forall_rel(full, k)))
    assert not yes(member(pt("0"), forall_rel(empty_open(Product(CANTOR, CANTOR)), k)), 10**4)


def test_intersection_of_compact_family_of_opens():
    oc = Open(CANTOR)
    u, v = bit_open(0, 1), bit_open(1, 1)
    single = k_countable_intersection_of_opens(sat_singleton(Point(oc, u.name)))
    for w in ("0", "1"):
        assert yes(member(pt(w), single)) == (w == "1")
    both = k_countable_intersection_of_opens(finite_compact([Point(oc, u.name), Point(oc, v.name)], oc))
    assert yes(member(pt("11"), both))
    assert not yes(member(pt("10"), both), 10**4)
    with_empty = k_countable_intersection_of_opens(
        finite_compact([Point(oc, u.name), Point(oc, empty_open(CANTOR).name)], oc))
    assert not yes(member(pt("11"), with_empty), 10**4)


def test_descriptor_errors():
    with pytest.raises(DescriptorMismatch):
        contained_in(Point(Closed(CANTOR), ZEROS), full_open(CANTOR))
    with pytest.raises(DescriptorMismatch):
        is_empty_closed(full_open(CANTOR))
    with pytest.raises(DescriptorMismatch):
        k_project(cantor_as_compact())
