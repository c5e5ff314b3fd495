"""Sierpinski logic and the spaces of open and closed sets.

Open and closed sets share one carrier, a map X -> S.  For an open set the map
confirms membership; for a closed set it confirms non-membership, so taking a
complement only changes the descriptor.

A partial name can raise OutOfPrefix while being observed.  The connectives
treat that as a third truth value: a disjunction that confirms through one
branch does not care that another branch wanted more input.
"""

from __future__ import annotations

from .names import (
    FnSierp,
    FuelExhausted,
    Name,
    NatName,
    ONES,
    OutOfPrefix,
    PairName,
    SierpName,
    UnaryBlockName,
    ZEROS,
)
from .spaces import (
    CANTOR,
    NAT,
    SIERP,
    Closed,
    DescriptorMismatch,
    Function,
    Open,
    Point,
    Product,
    Space,
    check,
    cod,
    dom,
    structural,
    underlying,
)
from .t2vm import apply, compose_name, fn, register

# Component i of a countable join gets fuel // (FAIRNESS * (i + 1)**2), a
# diagonal schedule that visits component i once the fuel reaches (i + 1)**2.
FAIRNESS = 1


def _try(s: Name, fuel: int) -> bool | OutOfPrefix:
    try:
        return s.confirms(fuel)
    except OutOfPrefix as e:
        return e


class AndName(SierpName):
    def __init__(self, a: Name, b: Name):
        super().__init__()
        self.a, self.b = a, b

    def _confirms(self, fuel):
        ra = _try(self.a, fuel)
        if ra is False:
            return False
        rb = _try(self.b, fuel)
        if rb is False:
            return False
        for r in (ra, rb):
            if isinstance(r, OutOfPrefix):
                raise r
        return True


class OrName(SierpName):
    def __init__(self, a: Name, b: Name):
        super().__init__()
        self.a, self.b = a, b

    def _confirms(self, fuel):
        ra = _try(self.a, fuel)
        if ra is True:
            return True
        rb = _try(self.b, fuel)
        if rb is True:
            return True
        for r in (ra, rb):
            if isinstance(r, OutOfPrefix):
                raise r
        return False


class JoinName(SierpName):
    """Countable disjunction of the S-valued sequence `xs`, dovetailed by budget share."""

    def __init__(self, xs: Name):
        super().__init__()
        self.xs = xs
        self._parts: list[Name] = []

    def component(self, i: int) -> Name:
        while len(self._parts) <= i:
            self._parts.append(apply(self.xs, NatName(len(self._parts))))
        return self._parts[i]

    def _confirms(self, fuel):
        pending = None
        i = 0
        while True:
            share = fuel // (FAIRNESS * (i + 1) ** 2)
            if share == 0:
                break
            r = _try(self.component(i), share)
            if r is True:
                return True
            if pending is None and isinstance(r, OutOfPrefix):
                pending = r
            i += 1
        if pending is not None:
            raise pending
        return False


def join_bound(i: int, f_i: int) -> int:
    """Fuel by which the join confirms when component i confirms at fuel f_i."""
    return FAIRNESS * (i + 1) ** 2 * f_i


class BitIsName(SierpName):
    def __init__(self, p: Name, pos: int, val: int):
        super().__init__()
        self.p, self.pos, self.val = p, pos, val

    def _confirms(self, fuel):
        if fuel <= self.pos:
            return False
        try:
            return self.p.bit(self.pos, fuel) == self.val
        except FuelExhausted:
            return False


class WordList(UnaryBlockName):
    """Oracle carrying finitely many words: count, then length and bits of each, then zeros."""

    def __init__(self, words):
        super().__init__()
        self.words = tuple(tuple(int(c) for c in w) for w in words)
        codes = [len(self.words)]
        for w in self.words:
            codes.append(len(w))
            codes.extend(w)
        self._list = codes

    def _code(self, n, fuel):
        return self._list[n] if n < len(self._list) else 0


def read_words(oracle: Name, fuel: int) -> tuple[tuple[int, ...], ...]:
    if isinstance(oracle, WordList):
        return oracle.words
    k = 0
    count = oracle.block(k, fuel)
    words = []
    for _ in range(count):
        k += 1
        n = oracle.block(k, fuel)
        w = []
        for _ in range(n):
            k += 1
            w.append(oracle.block(k, fuel) & 1)
        words.append(tuple(w))
    return tuple(words)


class CylinderName(SierpName):
    """Confirms once some listed word no longer than the fuel is a prefix of p."""

    def __init__(self, p: Name, oracle: Name):
        super().__init__()
        self.p, self.oracle = p, oracle

    def _confirms(self, fuel):
        try:
            words = read_words(self.oracle, fuel)
        except FuelExhausted:
            return False
        pending = None
        for w in words:
            if len(w) > fuel:
                continue
            try:
                if all(self.p.bit(i, fuel) == b for i, b in enumerate(w)):
                    return True
            except FuelExhausted:
                continue
            except OutOfPrefix as e:
                pending = pending or e
        if pending is not None:
            raise pending
        return False


@register("AND")
def _and(oracle, x):
    a, b = x.unpair()
    return AndName(a, b)


@register("OR")
def _or(oracle, x):
    a, b = x.unpair()
    return OrName(a, b)


@register("JOIN")
def _join(oracle, xs):
    return JoinName(xs)


@register("BIT_IS")
def _bit_is(oracle, p):
    pos, val = oracle.unpair()
    return BitIsName(p, pos.nat(), val.nat() & 1)


@register("CYLINDERS")
def _cylinders(oracle, p):
    return CylinderName(p, oracle)


@register("FLIP")
def _flip(oracle, x):
    # n -> oracle(n)(x)
    return compose_name(fn("AT", x), oracle)


@register("ZIPAPPLY")
def _zipapply(oracle, s):
    # n -> oracle(n)(s(n))
    return compose_name(fn("EVAL"), compose_name(fn("PRODUCT", PairName(oracle, s)), fn("DIAGONAL")))


def union_name(u: Name, v: Name) -> Name:
    return compose_name(fn("OR"), compose_name(fn("PRODUCT", PairName(u, v)), fn("DIAGONAL")))


def intersection_name(u: Name, v: Name) -> Name:
    return compose_name(fn("AND"), compose_name(fn("PRODUCT", PairName(u, v)), fn("DIAGONAL")))


@register("UNION_WITH")
def _union_with(oracle, u):
    return union_name(u, oracle)


@register("INTERSECT_WITH")
def _intersect_with(oracle, u):
    return intersection_name(u, oracle)


def cut_name(y: Name, r: Name) -> Name:
    """{x | (x, y) in R}."""
    return compose_name(r, fn("PAIR_RIGHT", y))


@register("CUT_OF")
def _cut_of(oracle, y):
    return cut_name(y, oracle)


# --- Sierpinski points ------------------------------------------------------------

def sierp_and(a: Point, b: Point) -> Point:
    return Point(SIERP, apply(fn("AND"), PairName(a.name, b.name)))


def sierp_or(a: Point, b: Point) -> Point:
    return Point(SIERP, apply(fn("OR"), PairName(a.name, b.name)))


def sierp_countable_or(xs: Point) -> Point:
    check(Function(NAT, SIERP), xs.space, "sierp_countable_or")
    return Point(SIERP, apply(fn("JOIN"), xs.name))


def sierp_fn(test) -> Point:
    """A Sierpinski point from a monotone `fuel -> bool` test."""
    return Point(SIERP, FnSierp(test))


# --- open and closed sets -------------------------------------------------------------

def _set_space(p: Point) -> Space:
    if p.space.kind not in ("Open", "Closed"):
        raise DescriptorMismatch(f"{p.space} is neither Open nor Closed")
    return underlying(p.space)


def open_set(f: Point) -> Point:
    check(SIERP, cod(f.space), "open_set")
    return Point(Open(dom(f.space)), f.name)


def closed_set(f: Point) -> Point:
    """The closed set on which f is bottom."""
    check(SIERP, cod(f.space), "closed_set")
    return Point(Closed(dom(f.space)), f.name)


def empty_open(x: Space) -> Point:
    return Point(Open(x), fn("CONSTFN", ZEROS))


def full_open(x: Space) -> Point:
    return Point(Open(x), fn("CONSTFN", ONES))


def empty_closed(x: Space) -> Point:
    return Point(Closed(x), fn("CONSTFN", ONES))


def full_closed(x: Space) -> Point:
    return Point(Closed(x), fn("CONSTFN", ZEROS))


def bit_open(pos: int, val: int) -> Point:
    """{p in Cantor | p(pos) = val}."""
    return Point(Open(CANTOR), fn("BIT_IS", PairName(NatName(pos), NatName(val))))


def cylinder_open(words) -> Point:
    """Union of the cylinders [w] for w in `words` (strings or bit tuples)."""
    return Point(Open(CANTOR), fn("CYLINDERS", WordList(words)))


def complement(s: Point) -> Point:
    x = _set_space(s)
    return Point(Closed(x) if s.space.kind == "Open" else Open(x), s.name)


def member(x: Point, u: Point) -> Point:
    """For an open set: confirms x in U.  For a closed set: confirms x outside A."""
    check(_set_space(u), x.space, "member")
    return Point(SIERP, apply(u.name, x.name))


def _same_kind(a: Point, b: Point) -> str:
    check(a.space, b.space, "set operation")
    if a.space.kind != b.space.kind:
        raise DescriptorMismatch("mixing open and closed sets")
    return a.space.kind


def set_union(a: Point, b: Point) -> Point:
    kind = _same_kind(a, b)
    name = union_name(a.name, b.name) if kind == "Open" else intersection_name(a.name, b.name)
    return Point(a.space, name)


def set_intersection(a: Point, b: Point) -> Point:
    kind = _same_kind(a, b)
    name = intersection_name(a.name, b.name) if kind == "Open" else union_name(a.name, b.name)
    return Point(a.space, name)


def _seq_of_sets(us: Point, kind: str) -> Space:
    s = structural(us.space)
    inner = us.space.args[1] if us.space.kind == "Function" else None
    if s.kind != "Function" or s.args[0] != NAT or inner is None or inner.kind != kind:
        raise DescriptorMismatch(f"expected C(Nat, {kind}(X)), got {us.space}")
    return inner.args[0]


def countable_union(us: Point) -> Point:
    """x -> join_n U_n(x)."""
    x = _seq_of_sets(us, "Open")
    return Point(Open(x), compose_name(fn("JOIN"), fn("FLIP", us.name)))


def countable_intersection(as_: Point) -> Point:
    """The same realizer as the union: x is excluded once some A_n excludes it."""
    x = _seq_of_sets(as_, "Closed")
    return Point(Closed(x), compose_name(fn("JOIN"), fn("FLIP", as_.name)))


def preimage(f: Point, u: Point) -> Point:
    y = _set_space(u)
    check(y, cod(f.space), "preimage")
    return Point(Space(u.space.kind, (dom(f.space),)), compose_name(u.name, f.name))


def closed_product(a: Point, b: Point) -> Point:
    """(x, y) is outside A x B once x is outside A or y is outside B."""
    if a.space.kind != "Closed" or b.space.kind != "Closed":
        raise DescriptorMismatch("closed_product takes closed sets")
    x, y = underlying(a.space), underlying(b.space)
    return Point(Closed(Product(x, y)), compose_name(fn("OR"), fn("PRODUCT", PairName(a.name, b.name))))


def open_product(u: Point, v: Point) -> Point:
    x, y = underlying(u.space), underlying(v.space)
    return Point(Open(Product(x, y)), compose_name(fn("AND"), fn("PRODUCT", PairName(u.name, v.name))))


def cut(y: Point, u: Point) -> Point:
    """{x | (x, y) in U} for U open (or closed) in X x Y."""
    s = underlying(u.space)
    if s.kind != "Product":
        raise DescriptorMismatch(f"cut needs a set in a product, got {u.space}")
    check(s.args[1], y.space, "cut")
    return Point(Space(u.space.kind, (s.args[0],)), cut_name(y.name, u.name))


def seq_closed_product(as_: Point) -> Point:
    """Pi_n A_n: a sequence is excluded once some coordinate is excluded by its factor."""
    x = _seq_of_sets(as_, "Closed")
    return Point(Closed(Function(NAT, x)), compose_name(fn("JOIN"), fn("ZIPAPPLY", as_.name)))
