"""The reals as rational Cauchy names, with order, one-sided reals and suprema.

A real name carries rationals q_0, q_1, ... (each as a unary block holding its
rational code) with |q_n - x| < 2^-n.  Reading q_0..q_n off the carrier costs
at least 2^(n+1) - 1 bits, and that is what the order test charges against its
fuel: precision n is available once the fuel reaches 2^(n+1) - 1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .names import (
    DEFAULT_FUEL,
    FuelExhausted,
    Name,
    ONES,
    OutOfPrefix,
    PairName,
    SierpName,
    UnaryBlockName,
    cantor_unpair,
    encode_rational,
)
from .compact import k_image, register_tree
from .overt import register_dense, v_image
from .sets import intersection_name
from .spaces import (
    REAL,
    REAL_LOWER,
    REAL_UPPER,
    SIERP,
    Compact,
    DescriptorMismatch,
    Function,
    Open,
    Overt,
    Point,
    register_capability,
)
from .t2vm import apply, compose_name, fn, register

UNIT_TREE = 1
UNIT_DEPTH = 32
UNIT_DENSE, REAL_DENSE = 3, 4


def precision_cost(n: int) -> int:
    """Fuel needed to read q_0..q_n."""
    return 2 ** (n + 1) - 1


def _round(q: Fraction, n: int) -> Fraction:
    """q rounded to the grid 2^-n."""
    scale = 1 << n
    den = q.denominator
    return Fraction((2 * q.numerator * scale + den) // (2 * den), scale)


class RealName(UnaryBlockName):
    """Subclasses give `_rat(n, fuel)`, a rational within 2^-n of the real."""

    def __init__(self):
        super().__init__()
        self._rats: dict[int, Fraction] = {}

    def _rat(self, n: int, fuel: int) -> Fraction:
        raise NotImplementedError

    def rational(self, n, fuel=DEFAULT_FUEL):
        q = self._rats.get(n)
        if q is None:
            q = self._rats[n] = self._rat(n, fuel)
        return q

    def _code(self, n, fuel):
        return encode_rational(self.rational(n, fuel))


class RationalReal(RealName):
    def __init__(self, q: Fraction):
        super().__init__()
        self.q = Fraction(q)

    def _rat(self, n, fuel):
        return _round(self.q, n + 1)

    def __repr__(self):
        return f"real {self.q}"


class RealProbe(RealName):
    """The first few approximations of a real; later ones are out of reach."""

    def __init__(self, known: tuple[Fraction, ...], owner: object = None):
        super().__init__()
        self.known, self.owner = known, owner

    def _rat(self, n, fuel):
        if n < len(self.known):
            return self.known[n]
        raise OutOfPrefix(n, self.owner)


class ArithReal(RealName):
    def __init__(self, op: str, x: Name, y: Name):
        super().__init__()
        self.op, self.x, self.y = op, x, y
        self._k: int | None = None

    def _magnitude(self, fuel) -> int:
        """k with 2^k bounding |x|, |y| and their approximations."""
        if self._k is None:
            bound = max(abs(self.x.rational(0, fuel)), abs(self.y.rational(0, fuel))) + 1
            k = 0
            while 2**k < bound:
                k += 1
            self._k = k
        return self._k

    def _rat(self, n, fuel):
        x, y = self.x, self.y
        if self.op == "mul":
            # |xy - ab| < 2^(k+1-m) = 2^-(n+1), plus 2^-(n+3) from rounding
            m = n + self._magnitude(fuel) + 2
            return _round(x.rational(m, fuel) * y.rational(m, fuel), n + 2)
        # each input is off by less than 2^-(n+1); dyadic inputs keep the sum dyadic
        a, b = x.rational(n + 1, fuel), y.rational(n + 1, fuel)
        return a + b if self.op == "add" else a - b


class LessName(SierpName):
    """Confirms x < y once some affordable precision separates the approximations.

    Precisions are tried from the finest affordable one down, since the finest
    one that can be read usually decides.
    """

    def __init__(self, x: Name, y: Name):
        super().__init__()
        self.x, self.y = x, y

    def _confirms(self, fuel):
        top = (fuel + 1).bit_length() - 2  # largest n with precision_cost(n) <= fuel
        pending = None
        for n in range(top, -1, -1):
            try:
                eps = Fraction(1, 1 << n)
                if self.x.rational(n, fuel) + eps < self.y.rational(n, fuel) - eps:
                    return True
            except FuelExhausted:
                continue
            except OutOfPrefix as e:
                pending = pending or e
        if pending is not None:
            raise pending
        return False


@register("REAL_LT")
def _real_lt(oracle, x):
    a, b = x.unpair()
    return LessName(a, b)


def _arith(op):
    def realizer(oracle, x):
        a, b = x.unpair()
        return ArithReal(op, a, b)

    return realizer


for _op in ("add", "sub", "mul"):
    register("REAL_" + _op.upper())(_arith(_op))


# --- points, arithmetic, order -------------------------------------------------------

def real_from_rational(q) -> Point:
    return Point(REAL, RationalReal(Fraction(q)))


def real_approx(x: Point, n: int, fuel: int = DEFAULT_FUEL) -> Fraction:
    return x.name.rational(n, fuel)


def real_arith(op: str, x: Point, y: Point) -> Point:
    ops = {"+": "add", "-": "sub", "*": "mul"}
    return Point(REAL, apply(fn("REAL_" + ops.get(op, op).upper()), PairName(x.name, y.name)))


def real_less(x: Point, y: Point) -> Point:
    return Point(SIERP, apply(fn("REAL_LT"), PairName(x.name, y.name)))


def interval_name(lo, hi) -> Name:
    """The open interval (lo, hi); None stands for an infinite end."""
    above = None if lo is None else compose_name(fn("REAL_LT"), fn("PAIR_LEFT", RationalReal(Fraction(lo))))
    below = None if hi is None else compose_name(fn("REAL_LT"), fn("PAIR_RIGHT", RationalReal(Fraction(hi))))
    if above is None and below is None:
        return fn("CONSTFN", ONES)
    if above is None:
        return below
    if below is None:
        return above
    return intersection_name(above, below)


def open_interval(lo, hi) -> Point:
    return Point(Open(REAL), interval_name(lo, hi))


def real_neq_name() -> Name:
    lt = fn("REAL_LT")
    both = fn("PRODUCT", PairName(lt, compose_name(lt, fn("SWAP"))))
    return compose_name(fn("OR"), compose_name(both, fn("DIAGONAL")))


# --- one-sided reals -----------------------------------------------------------------

class RationalStream(UnaryBlockName):
    """A name enumerating rationals; block k holds the k-th."""

    def __init__(self, supplier: Callable[[int, int], Fraction]):
        super().__init__()
        self.supplier = supplier
        self._rats: list[Fraction] = []

    def rational(self, n, fuel=DEFAULT_FUEL):
        while len(self._rats) <= n:
            self._rats.append(Fraction(self.supplier(len(self._rats), fuel)))
        return self._rats[n]

    def _code(self, n, fuel):
        return encode_rational(self.rational(n, fuel))


def to_lower(x: Point) -> Point:
    return Point(REAL_LOWER, RationalStream(lambda k, f: x.name.rational(k, f) - Fraction(1, 2**k)))


def to_upper(x: Point) -> Point:
    return Point(REAL_UPPER, RationalStream(lambda k, f: x.name.rational(k, f) + Fraction(1, 2**k)))


class BoundsReal(RealName):
    """The real squeezed between a lower and an upper enumeration."""

    def __init__(self, lower: Name, upper: Name):
        super().__init__()
        self.lower, self.upper = lower, upper
        self._k = 0
        self._lo: Fraction | None = None
        self._hi: Fraction | None = None

    def _rat(self, n, fuel):
        width = Fraction(2, 2**n)
        while self._lo is None or self._hi - self._lo >= width:
            if self._k >= fuel:
                raise FuelExhausted("bounds did not close")
            lo, hi = self.lower.rational(self._k, fuel), self.upper.rational(self._k, fuel)
            self._lo = lo if self._lo is None else max(self._lo, lo)
            self._hi = hi if self._hi is None else min(self._hi, hi)
            self._k += 1
        return (self._lo + self._hi) / 2


def from_bounds(lower: Point, upper: Point) -> Point:
    if lower.space != REAL_LOWER or upper.space != REAL_UPPER:
        raise DescriptorMismatch("from_bounds takes a lower and an upper real")
    return Point(REAL, BoundsReal(lower.name, upper.name))


# --- suprema -------------------------------------------------------------------------

STAGE_FUEL_SHIFT = 10


class _SupStream(RationalStream):
    """Stage k moves the bound by steps of 2^-k while the move is confirmed at fuel 2^(k+10).

    `test(q, fuel)` confirms that q is a valid bound; `sign` is +1 when pushing a
    lower bound up and -1 when pulling an upper bound down.
    """

    def __init__(self, test: Callable[[Fraction, int], bool], sign: int):
        self.test, self.sign = test, sign
        self._bound: Fraction | None = None
        super().__init__(self._stage)

    def _stage(self, k, fuel):
        if self._bound is None:
            a = 0
            while True:
                f = 2 ** (STAGE_FUEL_SHIFT + a)
                q = Fraction(-self.sign * 2**a)
                if self.test(q, f):
                    self._bound = q
                    break
                if f > fuel:
                    raise FuelExhausted("no initial bound")
                a += 1
        f = 2 ** (STAGE_FUEL_SHIFT + k)
        step = Fraction(self.sign, 2**k)
        while self.test(self._bound + step, f):
            self._bound += step
        return self._bound


def sup_overt(a: Point) -> Point:
    """Lower enumeration of sup A: every q with A meeting (q, inf) confirmed."""
    if a.space != Overt(REAL):
        raise DescriptorMismatch("sup_overt takes an overt set of reals")

    def test(q, fuel):
        return apply(a.name, interval_name(q, None)).confirms(fuel)

    return Point(REAL_LOWER, _SupStream(test, +1))


def sup_compact(k: Point) -> Point:
    """Upper enumeration of sup K: every q with K inside (-inf, q) confirmed."""
    if k.space != Compact(REAL):
        raise DescriptorMismatch("sup_compact takes a compact set of reals")

    def test(q, fuel):
        return apply(k.name, interval_name(None, q)).confirms(fuel)

    return Point(REAL_UPPER, _SupStream(test, -1))


def real_max(k: Point, a: Point) -> Point:
    """max of a set given both as compact and as overt."""
    return from_bounds(sup_overt(a), sup_compact(k))


# --- the unit interval ---------------------------------------------------------------

class UnitTree:
    """Node (j, k) knows q_0..q_{j-1}, the centres of the nested dyadic intervals
    containing [k / 2^(j-1), (k+1) / 2^(j-1)]; each such interval has two halves."""

    def root(self):
        return (0, 0)

    def children(self, node):
        j, k = node
        if j == 0:
            return [(1, 0)]
        return [(j + 1, 2 * k), (j + 1, 2 * k + 1)]

    def probe(self, node, owner):
        j, k = node
        centres = tuple(Fraction(2 * (k >> (j - 1 - i)) + 1, 2 ** (i + 1)) for i in range(j))
        return RealProbe(centres, owner)

    def branch(self, node):
        # always the left half: the branch converging to the node's left end
        j, k = node
        left = Fraction(k, 2 ** (j - 1)) if j else Fraction(0)
        return _LeftBranch(self.probe(node, None).known, left)


class _LeftBranch(RealName):
    def __init__(self, known: tuple[Fraction, ...], left: Fraction):
        super().__init__()
        self.known, self.left = known, left

    def _rat(self, n, fuel):
        return self.known[n] if n < len(self.known) else self.left + Fraction(1, 2 ** (n + 1))


register_tree(UNIT_TREE, UnitTree())


def _unit_dyadic(n: int) -> Name:
    if n < 2:
        return RationalReal(Fraction(n))
    m = (n - 1).bit_length()  # n in [2^(m-1) + 1, 2^m]
    t = n - 2 ** (m - 1) - 1
    return RationalReal(Fraction(2 * t + 1, 2**m))


def _zigzag(i: int) -> int:
    return (i + 1) // 2 if i % 2 else -(i // 2)


def _real_dyadic(n: int) -> Name:
    i, j = cantor_unpair(n)
    return RationalReal(Fraction(_zigzag(i), 2**j))


register_dense(UNIT_DENSE, _unit_dyadic)
register_dense(REAL_DENSE, _real_dyadic)


def unit_interval(depth: int = UNIT_DEPTH) -> tuple[Point, Point]:
    """[0, 1] as a compact set (tree search) and as an overt set (dyadics)."""
    from .compact import whole_name
    from .overt import dense_name, witness_name

    return (
        Point(Compact(REAL), whole_name(UNIT_TREE, depth)),
        Point(Overt(REAL), witness_name(dense_name(UNIT_DENSE))),
    )


def finite_real_set(qs) -> tuple[Point, Point]:
    """A finite set of rationals as a compact and as an overt set."""
    from .compact import finite_compact
    from .overt import finite_overt

    pts = [real_from_rational(q) for q in qs]
    return finite_compact(pts, REAL), finite_overt(pts, REAL)


# --- recovering a real from its neighbourhoods ---------------------------------------

class KinvRealName(RealName):
    """q_n is a grid point c whose 2^-n ball is confirmed to contain the point."""

    def __init__(self, phi: Name):
        super().__init__()
        self.phi = phi

    def _candidates(self, n, f, fuel):
        h = Fraction(1, 2 ** (n + 1))
        if n == 0:
            return [k * h for k in sorted(range(-f, f + 1), key=abs)]
        prev = self.rational(n - 1, fuel)
        r = Fraction(2, 2**n) + h
        return [k * h for k in range(math.floor((prev - r) / h), math.ceil((prev + r) / h) + 1)]

    def _rat(self, n, fuel):
        eps = Fraction(1, 2**n)
        f = 1
        while True:
            f = min(f, fuel)
            for c in self._candidates(n, f, fuel):
                if apply(self.phi, interval_name(c - eps, c + eps)).confirms(f):
                    return c
            if f == fuel:
                raise FuelExhausted(f"precision {n} not reached")
            f *= 2


@register("KINV_REAL")
def _kinv_real(oracle, phi):
    return KinvRealName(phi)


def _dense_real(s):
    from .overt import dense_name

    return dense_name(REAL_DENSE)


register_capability("Real", "t2", lambda s: real_neq_name())
register_capability("Real", "overt", _dense_real)
register_capability("Real", "admissible", lambda s: fn("KINV_REAL"))


# --- expressions in one variable -----------------------------------------------------

@dataclass(frozen=True)
class Expr:
    op: str  # "x", "const", "+", "-", "*", "neg"
    args: tuple = ()
    value: Fraction | None = None

    def at(self, x: Fraction) -> Fraction:
        if self.op == "x":
            return x
        if self.op == "const":
            return self.value
        if self.op == "neg":
            return -self.args[0].at(x)
        a, b = (e.at(x) for e in self.args)
        return a + b if self.op == "+" else a - b if self.op == "-" else a * b


_TOKEN = re.compile(r"\s*(?:(\d*\.\d+|\d+(?:/\d+)?)|(.))")


def parse_expr(text: str) -> Expr:
    """+, -, *, parentheses, rational literals and the variable x."""
    tokens = []
    for num, sym in _TOKEN.findall(text):
        if num:
            tokens.append(Fraction(num))
        elif sym.strip():
            tokens.append(sym)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = peek()
        if tok is None:
            raise ValueError(f"unexpected end of {text!r}")
        pos += 1
        return tok

    def expr():
        e = term()
        while peek() in ("+", "-"):
            e = Expr(take(), (e, term()))
        return e

    def term():
        e = factor()
        while peek() == "*":
            take()
            e = Expr("*", (e, factor()))
        return e

    def factor():
        tok = take()
        if isinstance(tok, Fraction):
            return Expr("const", value=tok)
        if tok == "x":
            return Expr("x")
        if tok == "-":
            return Expr("neg", (factor(),))
        if tok == "(":
            e = expr()
            if take() != ")":
                raise ValueError("expected ')'")
            return e
        raise ValueError(f"unexpected {tok!r} in {text!r}")

    e = expr()
    if peek() is not None:
        raise ValueError(f"trailing {peek()!r} in {text!r}")
    return e


_OPS = {"+": "REAL_ADD", "-": "REAL_SUB", "*": "REAL_MUL"}


def expr_name(e: Expr) -> Name:
    """A function name R -> R built from the arithmetic builtins."""
    if e.op == "x":
        return fn("ID")
    if e.op == "const":
        return fn("CONSTFN", RationalReal(e.value))
    if e.op == "neg":
        e = Expr("-", (Expr("const", value=Fraction(0)), e.args[0]))
    f, g = (expr_name(a) for a in e.args)
    return compose_name(fn(_OPS[e.op]), compose_name(fn("PRODUCT", PairName(f, g)), fn("DIAGONAL")))


def expr_function(text: str) -> Point:
    return Point(Function(REAL, REAL), expr_name(parse_expr(text)))


def sup_on_unit(f: Point, depth: int = UNIT_DEPTH) -> Point:
    """max of f over [0, 1]."""
    k, a = unit_interval(depth)
    return real_max(k_image(f, k), v_image(f, a))
