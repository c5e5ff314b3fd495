"""Space descriptors, points, and the combinators that build function names."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from . import t2vm
from .names import (
    DEFAULT_FUEL,
    ConsName,
    FuelExhausted,
    FunctionName,
    LazyName,
    Name,
    NatName,
    ONES,
    PairName,
    ShiftView,
    ZEROS,
    tuple_seq,
    word,
)
from .t2vm import apply, compose_name, fn, register


@dataclass(frozen=True)
class Space:
    kind: str
    args: tuple["Space", ...] = ()
    tag: str = ""

    def __str__(self):
        if not self.args:
            return self.kind
        inner = ", ".join(map(str, self.args))
        return f"{self.kind}({inner}{', ' + self.tag if self.tag else ''})"


NAT = Space("Nat")
SIERP = Space("Sierp")
CANTOR = Space("Cantor")
REAL = Space("Real")
REAL_LOWER = Space("RealLower")
REAL_UPPER = Space("RealUpper")


def Product(x: Space, y: Space) -> Space:
    return Space("Product", (x, y))


def Coproduct(x: Space, y: Space) -> Space:
    return Space("Coproduct", (x, y))


def Wedge(x: Space, y: Space) -> Space:
    return Space("Wedge", (x, y))


def Function(x: Space, y: Space) -> Space:
    return Space("Function", (x, y))


def Open(x: Space) -> Space:
    return Space("Open", (x,))


def Closed(x: Space) -> Space:
    return Space("Closed", (x,))


def Compact(x: Space) -> Space:
    return Space("Compact", (x,))


def Overt(x: Space) -> Space:
    return Space("Overt", (x,))


def Subspace(x: Space, tag: str) -> Space:
    return Space("Subspace", (x,), tag)


def structural(s: Space) -> Space:
    """Open/Closed are maps into S; Compact/Overt are maps from opens into S; subspaces carry their parent's names."""
    if s.kind in ("Open", "Closed"):
        return Function(structural(s.args[0]), SIERP)
    if s.kind in ("Compact", "Overt"):
        return Function(Function(structural(s.args[0]), SIERP), SIERP)
    if s.kind == "Subspace":
        return structural(s.args[0])
    if s.args:
        return Space(s.kind, tuple(structural(a) for a in s.args), s.tag)
    return s


class DescriptorMismatch(TypeError):
    pass


def check(expected: Space, actual: Space, what: str = "argument") -> None:
    if structural(expected) != structural(actual):
        raise DescriptorMismatch(f"{what}: expected {expected}, got {actual}")


def underlying(s: Space) -> Space:
    """X for Open(X), Closed(X), Compact(X), Overt(X)."""
    if s.kind not in ("Open", "Closed", "Compact", "Overt"):
        raise DescriptorMismatch(f"{s} is not a set space")
    return s.args[0]


def dom(f: Space) -> Space:
    f = structural(f)
    if f.kind != "Function":
        raise DescriptorMismatch(f"{f} is not a function space")
    return f.args[0]


def cod(f: Space) -> Space:
    f = structural(f)
    if f.kind != "Function":
        raise DescriptorMismatch(f"{f} is not a function space")
    return f.args[1]


# --- capabilities -----------------------------------------------------------------

@dataclass
class Capabilities:
    """Realizer-carrying witnesses; each is a function name, or None when absent.

    compact: the whole space as a compact set (its IsFull realizer).
    overt: a dense sequence Nat -> X.
    t2 / discrete: the inequality / equality map X x X -> S.
    admissible: a left inverse of kappa, O(O(X)) -> X.
    t0 is a bare flag and is never checked.
    """

    compact: Name | None = None
    overt: Name | None = None
    t2: Name | None = None
    discrete: Name | None = None
    admissible: Name | None = None
    t0: bool = False


CAPABILITY_KINDS = ("compact", "overt", "t2", "discrete", "admissible")
_PROVIDERS: dict[tuple[str, str], Callable[[Space], Name | None]] = {}


def register_capability(kind: str, cap: str, provider: Callable[[Space], Name | None]) -> None:
    if cap not in CAPABILITY_KINDS:
        raise KeyError(cap)
    _PROVIDERS[(kind, cap)] = provider


def capabilities(space: Space) -> Capabilities:
    caps = Capabilities(t0=space.kind in ("Nat", "Sierp", "Cantor", "Real"))
    for cap in CAPABILITY_KINDS:
        provider = _PROVIDERS.get((space.kind, cap))
        if provider is not None:
            setattr(caps, cap, provider(space))
    return caps


class MissingCapability(LookupError):
    pass


def require(space: Space, cap: str) -> Name:
    witness = getattr(capabilities(space), cap)
    if witness is None:
        raise MissingCapability(f"{space} has no {cap} witness")
    return witness


# --- points -----------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Point:
    space: Space
    name: Name

    def __repr__(self):
        return f"Point({self.space}, {self.name!r})"


class Observation(Enum):
    CONFIRMED = "Confirmed"
    UNKNOWN = "Unknown"

    @property
    def confirmed(self) -> bool:
        return self is Observation.CONFIRMED

    def __str__(self):
        return self.value


def nat_encode(n: int) -> Point:
    return Point(NAT, NatName(n))


def nat_decode(x: Point, fuel: int = DEFAULT_FUEL) -> int:
    return x.name.nat(fuel)


TOP = Point(SIERP, ONES)
BOTTOM = Point(SIERP, ZEROS)


def sierp_at(k: int) -> Point:
    """The top element, confirmed only once bit k is read."""
    return Point(SIERP, word("0" * k + "1"))


def sierp_observe(s: Point, fuel: int = DEFAULT_FUEL) -> Observation:
    return Observation.CONFIRMED if s.name.confirms(fuel) else Observation.UNKNOWN


def observe_equal(a: Point, b: Point, bits: int = 32, fuel: int = DEFAULT_FUEL) -> bool:
    """Prefix equality; a side that cannot produce the prefix makes the answer False."""
    try:
        return a.name.prefix(bits, fuel) == b.name.prefix(bits, fuel)
    except FuelExhausted:
        return False


# --- products and coproducts ---------------------------------------------------------

def make_product(x: Point, y: Point) -> Point:
    return Point(Product(x.space, y.space), PairName(x.name, y.name))


def _factors(space: Space) -> tuple[Space, Space]:
    s = space if space.kind in ("Product", "Wedge") else structural(space)
    if s.kind not in ("Product", "Wedge"):
        raise DescriptorMismatch(f"{space} is not a product")
    return s.args[0], s.args[1]


def proj1(p: Point) -> Point:
    return Point(_factors(p.space)[0], p.name.unpair()[0])


def proj2(p: Point) -> Point:
    return Point(_factors(p.space)[1], p.name.unpair()[1])


def make_wedge(x: Point, y: Point) -> Point:
    """Two names of the same point; the caller vouches for the shared denotation."""
    return Point(Wedge(x.space, y.space), PairName(x.name, y.name))


def inject1(x: Point, other: Space) -> Point:
    return Point(Coproduct(x.space, other), ConsName(0, x.name))


def inject2(y: Point, other: Space) -> Point:
    return Point(Coproduct(other, y.space), ConsName(1, y.name))


# --- function spaces ----------------------------------------------------------------

def make_function(n: int, oracle: Name, dom: Space, cod: Space) -> Point:
    return Point(Function(dom, cod), FunctionName(n, oracle))


def builtin_function(name: str, dom: Space, cod: Space, oracle: Name = ZEROS) -> Point:
    return Point(Function(dom, cod), fn(name, oracle))


def program_function(prog: t2vm.Program, dom: Space, cod: Space, oracle: Name = ZEROS) -> Point:
    return Point(Function(dom, cod), t2vm.program_fn(prog, oracle))


def evaluate(f: Point, x: Point) -> Point:
    """The universal map: parse 0^n 1 p and run machine n with oracle p on x."""
    check(dom(f.space), x.space, "evaluate")
    return Point(cod(f.space), apply(f.name, x.name))


def compose(f: Point, g: Point) -> Point:
    """f after g."""
    check(dom(f.space), cod(g.space), "compose")
    return Point(Function(dom(g.space), cod(f.space)), compose_name(f.name, g.name))


def curry(f: Point) -> Point:
    x, y = _factors(dom(f.space))
    return Point(Function(x, Function(y, cod(f.space))), fn("CURRYSTEP", f.name))


def uncurry(g: Point) -> Point:
    inner = cod(g.space)
    return Point(Function(Product(dom(g.space), dom(inner)), cod(inner)), fn("UNCURRY", g.name))


def product_map(f: Point, g: Point) -> Point:
    return Point(
        Function(Product(dom(f.space), dom(g.space)), Product(cod(f.space), cod(g.space))),
        fn("PRODUCT", PairName(f.name, g.name)),
    )


def const_fn(y: Point, dom: Space) -> Point:
    return Point(Function(dom, y.space), fn("CONSTFN", y.name))


def partial(x: Point, f: Point) -> Point:
    """y -> f(x, y)."""
    a, b = _factors(dom(f.space))
    check(a, x.space, "partial")
    return Point(Function(b, cod(f.space)), fn("PARTIAL", PairName(f.name, x.name)))


def diagonal(x: Space) -> Point:
    return builtin_function("DIAGONAL", x, Product(x, x))


def identity(x: Space) -> Point:
    return builtin_function("ID", x, x)


def projection(x: Space, y: Space, side: int) -> Point:
    return builtin_function("PROJ1" if side == 1 else "PROJ2", Product(x, y), x if side == 1 else y)


def swap(x: Space, y: Space) -> Point:
    return builtin_function("SWAP", Product(x, y), Product(y, x))


def case(f1: Point, f2: Point) -> Point:
    """(f1 + f2) on the coproduct of their domains."""
    check(cod(f1.space), cod(f2.space), "case")
    return Point(Function(Coproduct(dom(f1.space), dom(f2.space)), cod(f1.space)),
                 fn("CASE", PairName(f1.name, f2.name)))


def eval_map(x: Space, y: Space) -> Point:
    return builtin_function("EVAL", Product(Function(x, y), x), y)


# --- structural builtins ------------------------------------------------------------

def nat_value(x: Name) -> int | None:
    """The natural a name denotes, when known without reading bits."""
    while isinstance(x, LazyName) and x._target is not None:
        x = x._target
    return x.value if isinstance(x, NatName) else None


@register("ID")
def _id(oracle, x):
    return x


@register("PROJ1")
def _proj1(oracle, x):
    return x.unpair()[0]


@register("PROJ2")
def _proj2(oracle, x):
    return x.unpair()[1]


@register("SWAP")
def _swap(oracle, x):
    a, b = x.unpair()
    return PairName(b, a)


@register("INJ1")
def _inj1(oracle, x):
    return ConsName(0, x)


@register("INJ2")
def _inj2(oracle, x):
    return ConsName(1, x)


@register("CASE")
def _case(oracle, s):
    f1, f2 = oracle.unpair()
    if isinstance(s, ConsName):
        return apply(f2 if s.head else f1, s.tail)
    return LazyName(lambda fuel: apply(f2 if s.bit(0, fuel) else f1, ShiftView(s, 1)))


@register("PAIR_LEFT")
def _pair_left(oracle, y):
    return PairName(oracle, y)


@register("PAIR_RIGHT")
def _pair_right(oracle, x):
    return PairName(x, oracle)


@register("REGROUP")
def _regroup(oracle, x):
    left, right = x.unpair()
    a, b = left.unpair()
    c, d = right.unpair()
    return PairName(PairName(a, c), PairName(b, d))


@register("AT")
def _at(oracle, u):
    # evaluation at the fixed point held in the oracle: kappa(x)(U) = U(x)
    return apply(u, oracle)


@register("PRECOMP")
def _precomp(oracle, u):
    return compose_name(u, oracle)


@register("SEQ")
def _seq(oracle, n):
    k = nat_value(n)
    if k is not None:
        return oracle.project(k)
    return LazyName(lambda fuel: oracle.project(n.nat(fuel)))


@register("TRUNCATE")
def _truncate(oracle, n):
    # oracle = <nat N, <sequence, filler>>: n -> seq(n) for n <= N, filler beyond
    bound, rest = oracle.unpair()
    seq, filler = rest.unpair()

    def pick(fuel):
        return apply(seq, n) if n.nat(fuel) <= bound.nat(fuel) else filler

    k, b = nat_value(n), nat_value(bound)
    if k is not None and b is not None:
        return apply(seq, n) if k <= b else filler
    return LazyName(pick)


def sequence(supplier: Callable[[int], Name], cod: Space) -> Point:
    """A point of C(Nat, cod) whose n-th value is supplier(n), tupled into the oracle."""
    return Point(Function(NAT, cod), fn("SEQ", tuple_seq(supplier)))
