"""Overt sets as their existential realizers.

An overt A in X is named by a map O(X) -> S confirming that A meets U.  A space
is overt when it carries a dense sequence; the whole space then meets U as soon
as some element of the sequence lands in U.
"""

from __future__ import annotations

from typing import Callable

from .names import Name, NatName, ONES, PairName, ZEROS, cantor_unpair, word
from .spaces import (
    NAT,
    SIERP,
    DescriptorMismatch,
    Function,
    Open,
    Overt,
    Point,
    Space,
    check,
    dom,
    nat_value,
    register_capability,
    require,
    underlying,
)
from .t2vm import apply, compose_name, fn, register

# Dense-sequence suppliers by id, selected through the DENSE builtin's oracle.
DENSE_SUPPLIERS: dict[int, Callable[[int], Name]] = {}
CANTOR_DENSE, NAT_DENSE, SIERP_DENSE = 0, 1, 2


def register_dense(dense_id: int, supplier: Callable[[int], Name]) -> None:
    DENSE_SUPPLIERS[dense_id] = supplier


def _cantor_point(n: int) -> Name:
    # the binary digits of n + 1 after the leading 1, then zeros: every finite word once
    return word(bin(n + 1)[3:])


register_dense(CANTOR_DENSE, _cantor_point)
register_dense(NAT_DENSE, NatName)
register_dense(SIERP_DENSE, lambda n: ONES)


def _index(n: Name) -> int:
    k = nat_value(n)
    return n.nat() if k is None else k


@register("DENSE")
def _dense(oracle, n):
    return DENSE_SUPPLIERS[oracle.nat()](_index(n))


@register("DENSE_PRODUCT")
def _dense_product(oracle, n):
    a, b = oracle.unpair()
    i, j = cantor_unpair(_index(n))
    return PairName(apply(a, NatName(i)), apply(b, NatName(j)))


def dense_name(dense_id: int) -> Name:
    return fn("DENSE", NatName(dense_id))


def _overt_space(a: Point) -> Space:
    if a.space.kind != "Overt":
        raise DescriptorMismatch(f"expected an overt set, got {a.space}")
    return underlying(a.space)


def intersects(a: Point, u: Point) -> Point:
    x = _overt_space(a)
    check(Open(x), u.space, "intersects")
    return Point(SIERP, apply(a.name, u.name))


def witness_name(seq: Name) -> Name:
    return compose_name(fn("JOIN"), fn("PRECOMP", seq))


def nonempty_witness(seq: Point) -> Point:
    """The closure of the range of a sequence: U is met once some a_i lies in U."""
    if seq.space.kind != "Function" or seq.space.args[0] != NAT:
        raise DescriptorMismatch(f"expected a sequence, got {seq.space}")
    return Point(Overt(seq.space.args[1]), witness_name(seq.name))


def whole_overt(x: Space) -> Point:
    return Point(Overt(x), witness_name(require(x, "overt")))


def empty_overt(x: Space) -> Point:
    return Point(Overt(x), fn("CONSTFN", ZEROS))


def finite_overt(points: list[Point], x: Space) -> Point:
    """The overt set of finitely many points; the empty list gives the empty set."""
    if not points:
        return empty_overt(x)
    a = empty_overt(x)
    for p in points:
        check(x, p.space, "finite_overt")
        a = v_union(a, closure_singleton(p))
    return a


def closure_singleton(x: Point) -> Point:
    return Point(Overt(x.space), fn("AT", x.name))


def closure_of_open(v: Point) -> Point:
    """cl(V) meets U iff the whole space meets U and V together."""
    x = underlying(v.space)
    if v.space.kind != "Open":
        raise DescriptorMismatch("closure_of_open takes an open set")
    return Point(Overt(x), compose_name(witness_name(require(x, "overt")), fn("INTERSECT_WITH", v.name)))


def v_union(a: Point, b: Point) -> Point:
    check(a.space, b.space, "v_union")
    _overt_space(a)
    name = compose_name(fn("OR"), compose_name(fn("PRODUCT", PairName(a.name, b.name)), fn("DIAGONAL")))
    return Point(a.space, name)


def v_countable_union(as_: Point) -> Point:
    s = as_.space
    if s.kind != "Function" or s.args[0] != NAT or s.args[1].kind != "Overt":
        raise DescriptorMismatch(f"expected C(Nat, Overt(X)), got {s}")
    return Point(s.args[1], compose_name(fn("JOIN"), fn("FLIP", as_.name)))


def v_intersect_open(a: Point, v: Point) -> Point:
    """A meet V, named by U -> A meets (V meet U).  Only the closure is determined."""
    x = _overt_space(a)
    check(Open(x), v.space, "v_intersect_open")
    return Point(a.space, compose_name(a.name, fn("INTERSECT_WITH", v.name)))


def v_image(f: Point, a: Point) -> Point:
    x = _overt_space(a)
    check(x, dom(f.space), "v_image")
    return Point(Overt(f.space.args[1]), compose_name(a.name, fn("PRECOMP", f.name)))


def v_project(a: Point, side: int = 1) -> Point:
    s = _overt_space(a)
    if s.kind != "Product":
        raise DescriptorMismatch("v_project needs an overt set in a product")
    x, y = s.args
    name = compose_name(a.name, fn("PRECOMP", fn("PROJ1" if side == 1 else "PROJ2")))
    return Point(Overt(x if side == 1 else y), name)


def v_preimage_open(fimage: Point, a: Point) -> Point:
    """f^-1(A) for an open map f: X -> Y given by its action on opens O(X) -> O(Y)."""
    y = _overt_space(a)
    s = fimage.space
    if s.kind != "Function" or s.args[0].kind != "Open" or s.args[1] != Open(y):
        raise DescriptorMismatch(f"expected O(X) -> O({y}), got {s}")
    return Point(Overt(underlying(s.args[0])), compose_name(a.name, fimage.name))


def exists_rel(r: Point, a: Point) -> Point:
    """{y | some x in A has (x, y) in R}."""
    x = _overt_space(a)
    s = underlying(r.space)
    if r.space.kind != "Open" or s.kind != "Product":
        raise DescriptorMismatch("exists_rel needs an open relation")
    check(x, s.args[0], "exists_rel")
    return Point(Open(s.args[1]), compose_name(a.name, fn("CUT_OF", r.name)))


def v_countable_union_of_opens(a: Point) -> Point:
    s = _overt_space(a)
    if s.kind != "Open":
        raise DescriptorMismatch("expected an overt set of opens")
    return Point(Open(s.args[0]), compose_name(a.name, fn("CUT_OF", fn("EVAL"))))


def dense_sequence(x: Space) -> Point:
    return Point(Function(NAT, x), require(x, "overt"))


register_capability("Cantor", "overt", lambda s: dense_name(CANTOR_DENSE))
register_capability("Nat", "overt", lambda s: dense_name(NAT_DENSE))
register_capability("Sierp", "overt", lambda s: dense_name(SIERP_DENSE))


def _product_overt(s: Space) -> Name | None:
    x, y = s.args
    try:
        a, b = require(x, "overt"), require(y, "overt")
    except LookupError:
        return None
    return fn("DENSE_PRODUCT", PairName(a, b))


register_capability("Product", "overt", _product_overt)

