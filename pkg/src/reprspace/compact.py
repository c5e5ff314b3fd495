"""Compact sets as their universal-quantifier realizers.

A compact K in X is named by a map O(X) -> S that confirms exactly when U
contains K.  The whole of Cantor space (and the unit interval, registered by
`reals`) is searched over a finitely branching tree of partial names: a node is
covered when U confirms on its probe, and a probe that is read past its known
prefix asks for the node to be refined.
"""

from __future__ import annotations

import contextvars
from dataclasses import dataclass
from typing import Callable, Protocol

from .names import (
    DEFAULT_FUEL,
    FuelExhausted,
    Name,
    NatName,
    ONES,
    OutOfPrefix,
    PairName,
    PrefixProbe,
    SierpName,
    ZEROS,
    word,
)
from .sets import empty_open
from .spaces import (
    CANTOR,
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

DEFAULT_DEPTH = 24

# Confirmed component indices, collected while extracting a finite subcover.
_TRACE: contextvars.ContextVar[set | None] = contextvars.ContextVar("trace", default=None)


class Tree(Protocol):
    def root(self): ...

    def children(self, node) -> list: ...

    def probe(self, node, owner: object) -> Name: ...

    def branch(self, node) -> Name:
        """A complete name along some infinite branch through `node`."""
        ...


class CantorTree:
    """Nodes are bit tuples; the probe of a node is that finite prefix."""

    def root(self):
        return ()

    def children(self, node):
        return [node + (0,), node + (1,)]

    def probe(self, node, owner):
        return PrefixProbe(node, owner)

    def branch(self, node):
        return word("".join(map(str, node)))


TREES: dict[int, Tree] = {0: CantorTree()}
CANTOR_TREE = 0


def register_tree(tree_id: int, tree: Tree) -> None:
    TREES[tree_id] = tree


def search(tree: Tree, pred: Callable[[Name], Name], depth: int, fuel: int) -> bool:
    """True when every branch is covered by a node of depth <= `depth` whose probe
    confirms `pred` within `fuel`.  The tree is searched level by level.

    Reads past a node's prefix that come from an enclosing search are not ours to
    refine, so they propagate.

    Before refining a node we test one complete branch through it.  Whatever a
    prefix confirms, every extension confirms with the same reads, so a branch
    that fails within the fuel means no node along it can be covered and the
    search would fail anyway.  This only ends failing searches early.
    """
    token = object()
    frontier, d = [tree.root()], 0
    while frontier:
        pending = []
        for node in frontier:
            try:
                r = pred(tree.probe(node, token)).confirms(fuel)
            except OutOfPrefix as e:
                if e.owner is not token:
                    raise
                r = None
            if r:
                continue
            if r is False or d >= depth:
                return False
            pending.append(node)
        reset = _TRACE.set(None)
        try:
            if not all(pred(tree.branch(node)).confirms(fuel) for node in pending):
                return False
        finally:
            _TRACE.reset(reset)
        frontier = [c for node in pending for c in tree.children(node)]
        d += 1
    return True


class WholeSpaceName(SierpName):
    """Confirms U contains the whole space by a search of depth min(fuel, cap)."""

    def __init__(self, tree: Tree, cap: int, u: Name):
        super().__init__()
        self.tree, self.cap, self.u = tree, cap, u

    def _confirms(self, fuel):
        return search(self.tree, lambda p: apply(self.u, p), min(fuel, self.cap), fuel)


@register("TREE_SEARCH")
def _tree_search(oracle, u):
    tree_id, cap = oracle.unpair()
    tree = TREES.get(tree_id.nat())
    if tree is None:
        raise FuelExhausted("unknown tree")
    return WholeSpaceName(tree, cap.nat(), u)


def whole_name(tree_id: int, depth: int = DEFAULT_DEPTH) -> Name:
    return fn("TREE_SEARCH", PairName(NatName(tree_id), NatName(depth)))


@register("FORALL_OF")
def _forall_of(oracle, r):
    # y -> K(cut(y, R)) for K = oracle
    return compose_name(oracle, fn("CUT_OF", r))


# --- tracing, for extracting finite subcovers ----------------------------------------

class TracedName(Name):
    """Forwards a Sierpinski name and records index i whenever it confirms."""

    def __init__(self, i: int, inner: Name):
        self.i, self.inner = i, inner

    def bit(self, n, fuel=DEFAULT_FUEL):
        return self.inner.bit(n, fuel)

    def confirms(self, fuel):
        r = self.inner.confirms(fuel)
        tracer = _TRACE.get()
        if r and tracer is not None:
            tracer.add(self.i)
        return r


@register("TRACED_OPEN")
def _traced_open(oracle, x):
    i, u = oracle.unpair()
    return TracedName(i.nat(), apply(u, x))


@register("TRACED_SEQ")
def _traced_seq(oracle, n):
    k = nat_value(n)
    if k is None:
        k = n.nat()
    return fn("TRACED_OPEN", PairName(NatName(k), apply(oracle, NatName(k))))


# --- API -----------------------------------------------------------------------------

def cantor_as_compact(depth: int = DEFAULT_DEPTH) -> Point:
    return Point(Compact(CANTOR), whole_name(CANTOR_TREE, depth))


def _compact_space(k: Point) -> Space:
    if k.space.kind != "Compact":
        raise DescriptorMismatch(f"expected a compact set, got {k.space}")
    return underlying(k.space)


def contained_in(k: Point, u: Point) -> Point:
    """Confirms K is a subset of the open U."""
    x = _compact_space(k)
    check(Open(x), u.space, "contained_in")
    return Point(SIERP, apply(k.name, u.name))


def whole(x: Space) -> Point:
    return Point(Compact(x), require(x, "compact"))


def is_full(u: Point, k: Point | None = None) -> Point:
    x = underlying(u.space)
    return contained_in(k if k is not None else whole(x), u)


def is_empty_closed(a: Point, k: Point | None = None) -> Point:
    """Confirms the closed set A misses K (by default the whole space)."""
    if a.space.kind != "Closed":
        raise DescriptorMismatch("is_empty_closed takes a closed set")
    x = underlying(a.space)
    return contained_in(k if k is not None else whole(x), Point(Open(x), a.name))


def is_cover(us: Point, k: Point | None = None) -> Point:
    from .sets import countable_union

    return is_full(countable_union(us), k)


def sat_singleton(x: Point) -> Point:
    """{x} as a compact set: U contains it iff x is in U."""
    return Point(Compact(x.space), fn("AT", x.name))


def empty_compact(x: Space) -> Point:
    return Point(Compact(x), fn("CONSTFN", ONES))


def finite_compact(points: list[Point], x: Space) -> Point:
    """The compact set of finitely many points; the empty list gives the empty set."""
    k = empty_compact(x)
    for p in points:
        check(x, p.space, "finite_compact")
        k = k_union(k, sat_singleton(p))
    return k


def k_union(k1: Point, k2: Point) -> Point:
    check(k1.space, k2.space, "k_union")
    _compact_space(k1)
    name = compose_name(fn("AND"), compose_name(fn("PRODUCT", PairName(k1.name, k2.name)), fn("DIAGONAL")))
    return Point(k1.space, name)


def k_intersect_closed(k: Point, b: Point) -> Point:
    """K meet B is inside U iff K is inside U union (X minus B)."""
    x = _compact_space(k)
    check(Closed(x), b.space, "k_intersect_closed")
    return Point(k.space, compose_name(k.name, fn("UNION_WITH", b.name)))


def k_image(f: Point, k: Point) -> Point:
    x = _compact_space(k)
    check(x, dom(f.space), "k_image")
    return Point(Compact(f.space.args[1]), compose_name(k.name, fn("PRECOMP", f.name)))


def k_product(k1: Point, k2: Point) -> Point:
    """U contains K1 x K2 iff K2 is inside {y | K1 inside the cut of U at y}."""
    x, y = _compact_space(k1), _compact_space(k2)
    return Point(Compact(Product(x, y)), compose_name(k2.name, fn("FORALL_OF", k1.name)))


def k_project(k: Point, side: int = 1) -> Point:
    s = _compact_space(k)
    if s.kind != "Product":
        raise DescriptorMismatch("k_project needs a compact set in a product")
    x, y = s.args
    name = compose_name(k.name, fn("PRECOMP", fn("PROJ1" if side == 1 else "PROJ2")))
    return Point(Compact(x if side == 1 else y), name)


def forall_rel(r: Point, k: Point) -> Point:
    """{y | every x in K has (x, y) in R}, an open set in Y."""
    x = _compact_space(k)
    s = underlying(r.space)
    if r.space.kind != "Open" or s.kind != "Product":
        raise DescriptorMismatch("forall_rel needs an open relation")
    check(x, s.args[0], "forall_rel")
    return Point(Open(s.args[1]), compose_name(k.name, fn("CUT_OF", r.name)))


def k_countable_intersection_of_opens(k: Point) -> Point:
    """For K compact in O(Y): the open set {y | y in every U of K}."""
    s = _compact_space(k)
    if s.kind != "Open":
        raise DescriptorMismatch("expected a compact set of opens")
    y = s.args[0]
    return Point(Open(y), compose_name(k.name, fn("CUT_OF", fn("EVAL"))))


def confirmation_fuel(s: Name, max_fuel: int) -> int | None:
    """Least fuel <= max_fuel at which s confirms, or None."""
    if not s.confirms(max_fuel):
        return None
    hi = 1
    while not s.confirms(hi):
        hi *= 2
    lo = hi // 2 + 1 if hi > 1 else 1
    while lo < hi:
        mid = (lo + hi) // 2
        if s.confirms(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def search_depth(u: Point, fuel: int, cap: int = DEFAULT_DEPTH) -> int | None:
    """Least tree depth at which the Cantor search shows U is full within `fuel`."""
    check(Open(CANTOR), u.space, "search_depth")
    tree = TREES[CANTOR_TREE]
    for d in range(min(fuel, cap) + 1):
        if search(tree, lambda p: apply(u.name, p), d, fuel):
            return d
    return None


@dataclass(frozen=True)
class Subcover:
    n: int
    fuel: int


def finite_subcover(us: Point, k: Point | None = None, fuel: int = DEFAULT_FUEL) -> Subcover:
    """An N such that U_0, ..., U_N already cover K.

    The cover is confirmed at doubling fuel with each U_n wrapped so that its
    confirmations are recorded; N is the largest index any leaf of the successful
    search relied on, and the truncated sequence is checked to still cover.
    """
    s = us.space.args[1]
    x = underlying(s)
    traced = Point(us.space, fn("TRACED_SEQ", us.name))
    cover = is_cover(traced, k).name
    f, ok, seen = 1, False, set()
    while f <= fuel:
        seen = set()
        reset = _TRACE.set(seen)
        try:
            ok = cover.confirms(f)
        finally:
            _TRACE.reset(reset)
        if ok:
            break
        f *= 2
    if not ok:
        raise FuelExhausted("no cover confirmed within fuel")
    n = max(seen, default=0)
    truncated = Point(us.space, fn("TRUNCATE", PairName(NatName(n), PairName(us.name, empty_open(x).name))))
    if not is_cover(truncated, k).name.confirms(f):
        raise RuntimeError(f"U_0..U_{n} failed to re-confirm the cover")
    return Subcover(n, f)


# --- capabilities --------------------------------------------------------------------

register_capability("Cantor", "compact", lambda s: whole_name(CANTOR_TREE))
register_capability("Sierp", "compact", lambda s: fn("AT", ZEROS))


def _product_compact(s: Space) -> Name | None:
    x, y = s.args
    try:
        kx, ky = require(x, "compact"), require(y, "compact")
    except LookupError:
        return None
    return compose_name(ky, fn("FORALL_OF", kx))


register_capability("Product", "compact", _product_compact)


# --- named covers of Cantor space ----------------------------------------------------

def _bit_open_name(pos: int, val: int) -> Name:
    return fn("BIT_IS", PairName(NatName(pos), NatName(val)))


def example_cover(name: str) -> Point:
    """Covers of Cantor space used by the CLI and the acceptance suite.

    shifted-cylinders: W_0 = {p(5) = 0} and W_{n+1} = {p(n) = 1}.
    case-split: {p(0) = 0}, {p(0) = 1}, then empty sets.
    constant-full: every U_n is the whole space.
    """
    from .sets import full_open

    if name == "shifted-cylinders":
        supplier = lambda n: _bit_open_name(5, 0) if n == 0 else _bit_open_name(n - 1, 1)
    elif name == "case-split":
        empty = empty_open(CANTOR).name
        supplier = lambda n: _bit_open_name(0, n) if n < 2 else empty
    elif name == "constant-full":
        full = full_open(CANTOR).name
        supplier = lambda n: full
    else:
        raise KeyError(f"unknown cover example {name!r}")
    from .spaces import sequence

    return sequence(supplier, Open(CANTOR))


EXAMPLE_COVERS = ("shifted-cylinders", "case-split", "constant-full")
