"""Infinite bit streams observed under fuel, plus the codecs built on top of them.

A name is only ever looked at through finite queries.  Most classes here are
structured: they know enough about themselves (a natural number, a pair, a
function index) to answer queries arithmetically instead of scanning bits,
which matters once indices reach sizes like 2**200.
"""

from __future__ import annotations

import re
import threading
from fractions import Fraction
from math import isqrt
from typing import Callable

DEFAULT_FUEL = 10**6


class FuelExhausted(Exception):
    """The requested bit was not produced within the budget."""


class OutOfPrefix(Exception):
    """A read went past the known prefix of a partial name."""

    def __init__(self, position: int, owner: object = None):
        super().__init__(position)
        self.position, self.owner = position, owner


# --- index codecs -----------------------------------------------------------

def cantor_pair(i: int, j: int) -> int:
    return (i + j) * (i + j + 1) // 2 + j


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    j = z - w * (w + 1) // 2
    return w - j, j


def encode_rational(q: Fraction) -> int:
    """Code of q under (a, b, c) -> (a - b)/(c + 1), tripled as <<a, b>, c>."""
    q = Fraction(q)
    a, b = (q.numerator, 0) if q >= 0 else (0, -q.numerator)
    return cantor_pair(cantor_pair(a, b), q.denominator - 1)


def decode_rational(code: int) -> Fraction:
    ab, c = cantor_unpair(code)
    a, b = cantor_unpair(ab)
    return Fraction(a - b, c + 1)


# --- base class -------------------------------------------------------------

class Name:
    """An infinite binary sequence.  Subclasses override `bit` and any fast path they can."""

    def bit(self, n: int, fuel: int = DEFAULT_FUEL) -> int:
        raise NotImplementedError

    def prefix(self, k: int, fuel: int = DEFAULT_FUEL) -> list[int]:
        return [self.bit(i, fuel) for i in range(k)]

    def next_one(self, start: int, stop: int, fuel: int = DEFAULT_FUEL) -> int | None:
        """Position of the first 1 in [start, stop), or None."""
        for i in range(start, stop):
            if self.bit(i, fuel):
                return i
        return None

    def confirms(self, fuel: int) -> bool:
        """Sierpinski reading: a 1 among the first `fuel` bits, each read at `fuel`."""
        try:
            return self.next_one(0, fuel, fuel) is not None
        except FuelExhausted:
            return False

    def parse_function(self, fuel: int = DEFAULT_FUEL) -> tuple[int, Name]:
        """Split 0^n 1 p into (n, p)."""
        n = self.next_one(0, fuel, fuel)
        if n is None:
            raise FuelExhausted(f"no separating 1 within {fuel} bits")
        return n, ShiftView(self, n + 1)

    def nat(self, fuel: int = DEFAULT_FUEL) -> int:
        return self.parse_function(fuel)[0]

    def structured_function(self) -> tuple[int, Name] | None:
        """(index, oracle) when known without reading bits."""
        return None

    def unpair(self) -> tuple[Name, Name]:
        return EvenView(self), OddView(self)

    def project(self, i: int) -> Name:
        return ProjectView(self, i)

    def block_span(self, n: int, fuel: int = DEFAULT_FUEL) -> tuple[int, int]:
        """(code, end) of the n-th unary block 0^code 1; `end` is the index after the 1."""
        pos = 0
        for _ in range(n + 1):
            j = self.next_one(pos, pos + fuel, fuel)
            if j is None:
                raise FuelExhausted(f"block not closed within {fuel} bits")
            code, pos = j - pos, j + 1
        return code, pos

    def block(self, n: int, fuel: int = DEFAULT_FUEL) -> int:
        return self.block_span(n, fuel)[0]

    def rational(self, n: int, fuel: int = DEFAULT_FUEL) -> Fraction:
        return decode_rational(self.block(n, fuel))

    def bitstring(self, k: int, fuel: int = DEFAULT_FUEL) -> str:
        return "".join(map(str, self.prefix(k, fuel)))


# --- literals ---------------------------------------------------------------

class Periodic(Name):
    """head followed by cycle repeated forever."""

    def __init__(self, head: str, cycle: str):
        if not cycle or set(head + cycle) - {"0", "1"}:
            raise ValueError(f"bad literal {head!r}/{cycle!r}")
        self.head, self.cycle = head, cycle

    def bit(self, n, fuel=DEFAULT_FUEL):
        h = len(self.head)
        return int(self.head[n] if n < h else self.cycle[(n - h) % len(self.cycle)])

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        h = len(self.head)
        j = self.head.find("1", start) if start < h else -1
        if j >= 0:
            return j if j < stop else None
        if "1" not in self.cycle:
            return None
        s = max(start, h)
        L = len(self.cycle)
        off = (s - h) % L
        t = (self.cycle[off:] + self.cycle[:off]).index("1")
        return s + t if s + t < stop else None

    def __repr__(self):
        if self.cycle in ("0", "1") and self.head:
            return f'word "{self.head}" then {"zeros" if self.cycle == "0" else "ones"}'
        if not self.head:
            return f'periodic "{self.cycle}"'
        return f'word "{self.head}" then periodic "{self.cycle}"'

    def __eq__(self, other):
        return isinstance(other, Periodic) and (self.head, self.cycle) == (other.head, other.cycle)

    def __hash__(self):
        return hash((self.head, self.cycle))


ZEROS = Periodic("", "0")
ONES = Periodic("", "1")


def word(w: str, tail: str = "0") -> Periodic:
    return Periodic(w, tail)


class NatName(Name):
    """0^n 1 0^omega, held arithmetically."""

    def __init__(self, value: int):
        if value < 0:
            raise ValueError("naturals only")
        self.value = value

    def bit(self, n, fuel=DEFAULT_FUEL):
        return int(n == self.value)

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        return self.value if start <= self.value < stop else None

    def parse_function(self, fuel=DEFAULT_FUEL):
        if self.value >= fuel:
            raise FuelExhausted("separating 1 beyond fuel")
        return self.value, ZEROS

    def nat(self, fuel=DEFAULT_FUEL):
        return self.parse_function(fuel)[0]

    def __repr__(self):
        return f"nat {self.value}"


class Diverging(Name):
    """A machine that never writes."""

    def bit(self, n, fuel=DEFAULT_FUEL):
        raise FuelExhausted("diverging name")

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        raise FuelExhausted("diverging name")

    def __repr__(self):
        return "diverge"


# --- structural names -------------------------------------------------------

class PairName(Name):
    def __init__(self, left: Name, right: Name):
        self.left, self.right = left, right

    def bit(self, n, fuel=DEFAULT_FUEL):
        return (self.right if n & 1 else self.left).bit(n >> 1, fuel)

    def unpair(self):
        return self.left, self.right

    def __repr__(self):
        return f"<{self.left!r}, {self.right!r}>"


class EvenView(Name):
    def __init__(self, base: Name):
        self.base = base

    def bit(self, n, fuel=DEFAULT_FUEL):
        return self.base.bit(2 * n, fuel)


class OddView(Name):
    def __init__(self, base: Name):
        self.base = base

    def bit(self, n, fuel=DEFAULT_FUEL):
        return self.base.bit(2 * n + 1, fuel)


class ShiftView(Name):
    def __init__(self, base: Name, k: int):
        self.base, self.k = base, k

    def bit(self, n, fuel=DEFAULT_FUEL):
        return self.base.bit(n + self.k, fuel)

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        j = self.base.next_one(start + self.k, stop + self.k, fuel)
        return None if j is None else j - self.k


class ConsName(Name):
    """One leading bit followed by a name: the coproduct carrier."""

    def __init__(self, head: int, tail: Name):
        self.head, self.tail = head & 1, tail

    def bit(self, n, fuel=DEFAULT_FUEL):
        return self.head if n == 0 else self.tail.bit(n - 1, fuel)

    def __repr__(self):
        return f"{self.head}++{self.tail!r}"


class FunctionName(Name):
    """0^index 1 oracle: the name of the index-th machine with an oracle."""

    def __init__(self, index: int, oracle: Name):
        self.index, self.oracle = index, oracle

    def bit(self, n, fuel=DEFAULT_FUEL):
        if n < self.index:
            return 0
        if n == self.index:
            return 1
        return self.oracle.bit(n - self.index - 1, fuel)

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        if start <= self.index:
            return self.index if self.index < stop else None
        off = self.index + 1
        j = self.oracle.next_one(start - off, stop - off, fuel)
        return None if j is None else j + off

    def parse_function(self, fuel=DEFAULT_FUEL):
        return self.index, self.oracle

    def structured_function(self):
        return self.index, self.oracle

    def __repr__(self):
        return f"fn[{self.index}]({self.oracle!r})"


class TupleSeqName(Name):
    """Countable tupling: bit cantor_pair(i, j) is bit j of supplier(i)."""

    def __init__(self, supplier: Callable[[int], Name]):
        self.supplier = supplier
        self._parts: dict[int, Name] = {}
        self._lock = threading.Lock()

    def component(self, i: int) -> Name:
        with self._lock:
            if i not in self._parts:
                self._parts[i] = self.supplier(i)
            return self._parts[i]

    def bit(self, n, fuel=DEFAULT_FUEL):
        i, j = cantor_unpair(n)
        return self.component(i).bit(j, fuel)

    def project(self, i):
        return self.component(i)


class ProjectView(Name):
    def __init__(self, base: Name, i: int):
        self.base, self.i = base, i

    def bit(self, n, fuel=DEFAULT_FUEL):
        return self.base.bit(cantor_pair(self.i, n), fuel)


class StreamName(Name):
    """External bit supplier with an append-only cache.

    `supplier(n, fuel)` is asked for bits in increasing order; it may raise
    FuelExhausted, which is never cached.
    """

    def __init__(self, supplier: Callable[[int, int], int]):
        self.supplier = supplier
        self._cache: list[int] = []
        self._lock = threading.RLock()

    def bit(self, n, fuel=DEFAULT_FUEL):
        with self._lock:
            while len(self._cache) <= n:
                self._cache.append(self.supplier(len(self._cache), fuel) & 1)
            return self._cache[n]


class PrefixProbe(Name):
    """A finite prefix standing in for all of its extensions during tree search."""

    def __init__(self, bits: tuple[int, ...], owner: object = None):
        self.bits, self.owner = bits, owner

    def bit(self, n, fuel=DEFAULT_FUEL):
        if n < len(self.bits):
            return self.bits[n]
        raise OutOfPrefix(n, self.owner)

    def __repr__(self):
        return "probe " + "".join(map(str, self.bits))


class UnaryBlockName(Name):
    """A Baire sequence k0, k1, ... carried as 0^k0 1 0^k1 1 ...

    Subclasses provide `_code(n, fuel)`; blocks are produced in order and cached.
    """

    def __init__(self):
        self._codes: list[int] = []
        self._ends: list[int] = []
        self._lock = threading.RLock()

    def _code(self, n: int, fuel: int) -> int:
        raise NotImplementedError

    def _extend_to(self, n: int, fuel: int) -> None:
        with self._lock:
            while len(self._codes) <= n:
                code = self._code(len(self._codes), fuel)
                start = self._ends[-1] if self._ends else 0
                self._codes.append(code)
                self._ends.append(start + code + 1)

    def block_span(self, n, fuel=DEFAULT_FUEL):
        self._extend_to(n, fuel)
        return self._codes[n], self._ends[n]

    def _block_at(self, pos: int, fuel: int) -> int:
        k = 0
        while True:
            self._extend_to(k, fuel)
            if self._ends[k] > pos:
                return k
            k += 1

    def bit(self, n, fuel=DEFAULT_FUEL):
        k = self._block_at(n, fuel)
        return int(self._ends[k] - 1 == n)

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        if start >= stop:
            return None
        j = self._ends[self._block_at(start, fuel)] - 1
        return j if j < stop else None


class BlockSeqName(UnaryBlockName):
    """Unary blocks from a plain code function."""

    def __init__(self, code: Callable[[int, int], int]):
        super().__init__()
        self._fn = code

    def _code(self, n, fuel):
        return self._fn(n, fuel)


class LazyName(Name):
    """A name whose identity is settled by a fuel-bounded computation on first use."""

    def __init__(self, thunk: Callable[[int], Name]):
        self.thunk = thunk
        self._target: Name | None = None
        self._lock = threading.RLock()

    def resolve(self, fuel: int = DEFAULT_FUEL) -> Name:
        with self._lock:
            if self._target is None:
                target = self.thunk(fuel)
                while isinstance(target, LazyName) and target._target is not None:
                    target = target._target
                self._target = target
            return self._target

    def bit(self, n, fuel=DEFAULT_FUEL):
        return self.resolve(fuel).bit(n, fuel)

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        return self.resolve(fuel).next_one(start, stop, fuel)

    def confirms(self, fuel):
        try:
            target = self.resolve(fuel)
        except FuelExhausted:
            return False
        return target.confirms(fuel)

    def parse_function(self, fuel=DEFAULT_FUEL):
        return self.resolve(fuel).parse_function(fuel)

    def nat(self, fuel=DEFAULT_FUEL):
        return self.resolve(fuel).nat(fuel)

    def structured_function(self):
        return None if self._target is None else self._target.structured_function()

    def unpair(self):
        if self._target is not None:
            return self._target.unpair()
        return EvenView(self), OddView(self)

    def project(self, i):
        if self._target is not None:
            return self._target.project(i)
        return ProjectView(self, i)

    def block_span(self, n, fuel=DEFAULT_FUEL):
        return self.resolve(fuel).block_span(n, fuel)

    def rational(self, n, fuel=DEFAULT_FUEL):
        return self.resolve(fuel).rational(n, fuel)


class SierpName(Name):
    """A name read as a Sierpinski point, defined by when it confirms.

    Bit k is 1 exactly when the point confirms within fuel k + 1, so the generic
    bit-level reading and `confirms` agree.  Confirmation is monotone in fuel,
    which lets us cache the smallest confirming fuel and the largest refuting one.
    OutOfPrefix is never cached.
    """

    def __init__(self):
        self._yes: int | None = None
        self._no = 0

    def _confirms(self, fuel: int) -> bool:
        raise NotImplementedError

    def confirms(self, fuel):
        if fuel <= self._no:
            return False
        if self._yes is not None and fuel >= self._yes:
            return True
        if self._confirms(fuel):
            self._yes = fuel if self._yes is None else min(self._yes, fuel)
            return True
        self._no = max(self._no, fuel)
        return False

    def bit(self, n, fuel=DEFAULT_FUEL):
        return int(self.confirms(n + 1))

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        if start >= stop or not self.confirms(stop):
            return None
        lo, hi = start, stop - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self.confirms(mid + 1):
                hi = mid
            else:
                lo = mid + 1
        return lo


class FnSierp(SierpName):
    """Sierpinski point from a plain `fuel -> bool` test."""

    def __init__(self, test: Callable[[int], bool]):
        super().__init__()
        self.test = test

    def _confirms(self, fuel):
        return self.test(fuel)


# --- public codecs ------------------------------------------------------------

def bit(p: Name, n: int, fuel: int = DEFAULT_FUEL) -> int:
    return p.bit(n, fuel)


def pair(p: Name, q: Name) -> PairName:
    return PairName(p, q)


def unpair(r: Name) -> tuple[Name, Name]:
    return r.unpair()


def tuple_seq(supplier: Callable[[int], Name]) -> TupleSeqName:
    return TupleSeqName(supplier)


def project_seq(r: Name, i: int) -> Name:
    return r.project(i)


_LITERAL = re.compile(
    r'''^\s*(?:
        word\s+"(?P<word>[01]*)"\s+then\s+(?:(?P<tail>zeros|ones)|periodic\s+"(?P<wcycle>[01]+)")
      | periodic\s+"(?P<cycle>[01]+)"
      | nat\s+(?P<nat>\d+)
      | (?P<const>zeros|ones)
    )\s*$''',
    re.VERBOSE,
)


def parse_literal(text: str) -> Name:
    """Read `word "0110" then zeros`, `periodic "10"`, `nat 5`, `zeros` or `ones`."""
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f"not a name literal: {text!r}")
    if m["nat"] is not None:
        return NatName(int(m["nat"]))
    if m["cycle"] is not None:
        return Periodic("", m["cycle"])
    if m["const"] is not None:
        return ZEROS if m["const"] == "zeros" else ONES
    cycle = m["wcycle"] or ("0" if m["tail"] == "zeros" else "1")
    return Periodic(m["word"], cycle)
