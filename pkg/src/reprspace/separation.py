"""Inequality and equality as Sierpinski-valued maps, and what they buy.

A space is T2 here when x != y is semidecidable, and discrete when x = y is.
Inequality turns points into closed singletons and compact sets into closed
ones; equality turns overt sets into open ones.
"""

from __future__ import annotations

from .compact import k_intersect_closed, whole
from .names import FuelExhausted, Name, PairName, SierpName
from .spaces import (
    SIERP,
    Closed,
    Compact,
    DescriptorMismatch,
    Open,
    Point,
    Product,
    Space,
    check,
    dom,
    nat_value,
    register_capability,
    require,
    underlying,
)
from .t2vm import apply, compose_name, fn, register


class NatCompare(SierpName):
    def __init__(self, a: Name, b: Name, equal: bool):
        super().__init__()
        self.a, self.b, self.equal = a, b, equal

    def _value(self, x: Name, fuel: int) -> int:
        v = nat_value(x)
        return x.nat(fuel) if v is None else v

    def _confirms(self, fuel):
        try:
            va, vb = self._value(self.a, fuel), self._value(self.b, fuel)
        except FuelExhausted:
            return False
        return (va == vb) == self.equal


class CantorNeq(SierpName):
    """Confirms once the two sequences differ at some position below the fuel."""

    def __init__(self, p: Name, q: Name):
        super().__init__()
        self.p, self.q = p, q
        self._agree = 0  # positions known to agree

    def _confirms(self, fuel):
        try:
            while self._agree < fuel:
                k = self._agree
                if self.p.bit(k, fuel) != self.q.bit(k, fuel):
                    return True
                self._agree += 1
        except FuelExhausted:
            pass
        return False


@register("NAT_EQ")
def _nat_eq(oracle, x):
    a, b = x.unpair()
    return NatCompare(a, b, True)


@register("NAT_NEQ")
def _nat_neq(oracle, x):
    a, b = x.unpair()
    return NatCompare(a, b, False)


@register("CANTOR_NEQ")
def _cantor_neq(oracle, x):
    p, q = x.unpair()
    return CantorNeq(p, q)


def _lift(op: str, cap: str):
    def provider(s: Space) -> Name | None:
        x, y = s.args
        try:
            a, b = require(x, cap), require(y, cap)
        except LookupError:
            return None
        return compose_name(fn(op), compose_name(fn("PRODUCT", PairName(a, b)), fn("REGROUP")))

    return provider


register_capability("Nat", "t2", lambda s: fn("NAT_NEQ"))
register_capability("Nat", "discrete", lambda s: fn("NAT_EQ"))
register_capability("Cantor", "t2", lambda s: fn("CANTOR_NEQ"))
register_capability("Product", "t2", _lift("OR", "t2"))
register_capability("Product", "discrete", _lift("AND", "discrete"))


# --- API -----------------------------------------------------------------------------

def neq(x: Point, y: Point) -> Point:
    check(x.space, y.space, "neq")
    return Point(SIERP, apply(require(x.space, "t2"), PairName(x.name, y.name)))


def eq(x: Point, y: Point) -> Point:
    check(x.space, y.space, "eq")
    return Point(SIERP, apply(require(x.space, "discrete"), PairName(x.name, y.name)))


def closed_singleton(x: Point) -> Point:
    """{x}, excluding y once x != y is confirmed."""
    return Point(Closed(x.space), fn("PARTIAL", PairName(require(x.space, "t2"), x.name)))


def diagonal_complement(x: Space) -> Point:
    return Point(Open(Product(x, x)), require(x, "t2"))


def k_to_closed(k: Point) -> Point:
    """y is excluded once K is confirmed inside {x | x != y}."""
    if k.space.kind != "Compact":
        raise DescriptorMismatch("k_to_closed takes a compact set")
    x = underlying(k.space)
    return Point(Closed(x), compose_name(k.name, fn("CURRYSTEP", require(x, "t2"))))


def v_to_open(a: Point) -> Point:
    """x is inside once A is confirmed to meet {y | y = x}."""
    if a.space.kind != "Overt":
        raise DescriptorMismatch("v_to_open takes an overt set")
    x = underlying(a.space)
    return Point(Open(x), compose_name(a.name, fn("CURRYSTEP", require(x, "discrete"))))


def graph(f: Point) -> Point:
    """{(y, x) | f(y) = x} as a closed subset of Y x X."""
    y, x = dom(f.space), f.space.args[1]
    name = compose_name(require(x, "t2"), fn("PRODUCT", PairName(f.name, fn("ID"))))
    return Point(Closed(Product(y, x)), name)


def graph_inv(g: Point, x: Point) -> Point:
    """f(x) recovered from the closed graph of f: X -> Y.

    The slice of the graph at x is the closed singleton {f(x)}; inside the compact
    Y it is compact, and as such it is exactly the neighbourhood filter that the
    left inverse of kappa on Y turns back into a point.
    """
    s = underlying(g.space)
    if g.space.kind != "Closed" or s.kind != "Product":
        raise DescriptorMismatch("graph_inv takes a closed subset of a product")
    check(s.args[0], x.space, "graph_inv")
    y = s.args[1]
    slice_ = Point(Closed(y), compose_name(g.name, fn("PAIR_LEFT", x.name)))
    k = k_intersect_closed(whole(y), slice_)
    return Point(y, apply(require(y, "admissible"), k.name))


def proper_preimage(f: Point, k: Point) -> Point:
    """f^-1(K) for X compact and Y T2."""
    if k.space.kind != "Compact":
        raise DescriptorMismatch("proper_preimage takes a compact set")
    x = dom(f.space)
    check(underlying(k.space), f.space.args[1], "proper_preimage")
    closed = Point(Closed(x), compose_name(k_to_closed(k).name, f.name))
    return Point(Compact(x), k_intersect_closed(whole(x), closed).name)
