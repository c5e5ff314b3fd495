"""A small register machine over two read-only streams and one write-only stream.

Machine indices follow the usual split: even indices name host-level builtins
(the fixed table below), odd indices carry an encoded `Program`.  Function
names are `0^n 1 p`, so `apply` is the universal machine.
"""

from __future__ import annotations

import re
import threading
from functools import lru_cache
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Callable, NamedTuple

from .names import (
    DEFAULT_FUEL,
    Diverging,
    FuelExhausted,
    FunctionName,
    LazyName,
    Name,
    PairName,
    ZEROS,
)

NREGS = 16


class Op(IntEnum):
    CONST = 0
    MOVE = 1
    ADD = 2
    SUBSAT = 3
    JZ = 4
    JMP = 5
    READORACLE = 6
    READINPUT = 7
    WRITE = 8


# operand kinds: "r" register (4 bits), "k" unary immediate
_SHAPE = {
    Op.CONST: "rk",
    Op.MOVE: "rr",
    Op.ADD: "rr",
    Op.SUBSAT: "rr",
    Op.JZ: "rk",
    Op.JMP: "k",
    Op.READORACLE: "rr",
    Op.READINPUT: "rr",
    Op.WRITE: "r",
}


class Instruction(NamedTuple):
    op: Op
    a: int = 0
    b: int = 0

    def operands(self) -> tuple[int, ...]:
        return (self.a, self.b)[: len(_SHAPE[self.op])]

    def __str__(self):
        parts = [self.op.name]
        for kind, v in zip(_SHAPE[self.op], self.operands()):
            parts.append(f"r{v}" if kind == "r" else str(v))
        return " ".join(parts)


@dataclass(frozen=True)
class Program:
    instructions: tuple[Instruction, ...] = ()

    def __len__(self):
        return len(self.instructions)

    def __str__(self):
        return "\n".join(map(str, self.instructions))


# --- bit encoding -------------------------------------------------------------

def encode(prog: Program) -> str:
    """Each instruction is `1`, a 4-bit opcode and its operands; a final `0` ends the list."""
    out = []
    for ins in prog.instructions:
        out.append("1" + format(ins.op, "04b"))
        for kind, v in zip(_SHAPE[ins.op], ins.operands()):
            out.append(format(v, "04b") if kind == "r" else "1" * v + "0")
    out.append("0")
    return "".join(out)


def decode(bits: str) -> Program:
    """Total inverse of `encode`.

    A truncated trailing instruction is dropped; an unknown opcode turns the
    whole program into the empty one, which never writes.
    """
    ins: list[Instruction] = []
    i, n = 0, len(bits)
    while i < n and bits[i] == "1":
        if i + 5 > n:
            break
        code = int(bits[i + 1 : i + 5], 2)
        i += 5
        if code > max(Op):
            return Program()
        op = Op(code)
        vals = []
        for kind in _SHAPE[op]:
            if kind == "r":
                if i + 4 > n:
                    return Program(tuple(ins))
                vals.append(int(bits[i : i + 4], 2))
                i += 4
            else:
                j = bits.find("0", i)
                if j < 0:
                    return Program(tuple(ins))
                vals.append(j - i)
                i = j + 1
        ins.append(Instruction(op, *vals))
    return Program(tuple(ins))


# --- assembly -----------------------------------------------------------------

_REG = re.compile(r"^r(\d+)$")


def assemble(text: str) -> Program:
    """One instruction per line; `;` starts a comment; `label:` names the next instruction."""
    lines = []
    labels: dict[str, int] = {}
    for raw in text.splitlines():
        line = raw.split(";", 1)[0].strip()
        while ":" in line:
            label, line = line.split(":", 1)
            labels[label.strip()] = len(lines)
            line = line.strip()
        if line:
            lines.append(line.split())
    out = []
    for toks in lines:
        try:
            op = Op[toks[0].upper()]
        except KeyError:
            raise ValueError(f"unknown opcode {toks[0]!r}") from None
        shape = _SHAPE[op]
        if len(toks) - 1 != len(shape):
            raise ValueError(f"{op.name} takes {len(shape)} operands: {' '.join(toks)}")
        vals = []
        for kind, tok in zip(shape, toks[1:]):
            if kind == "r":
                m = _REG.match(tok)
                if not m or int(m[1]) >= NREGS:
                    raise ValueError(f"bad register {tok!r}")
                vals.append(int(m[1]))
            elif tok in labels:
                vals.append(labels[tok])
            elif tok.isdigit():
                vals.append(int(tok))
            else:
                raise ValueError(f"bad immediate {tok!r}")
        out.append(Instruction(op, *vals))
    return Program(tuple(out))


# --- machine indices ------------------------------------------------------------

BUILTIN_TABLE: tuple[str, ...] = (
    # fixed combinator core
    "EVAL", "COMPOSE", "PRODUCT", "CURRYSTEP", "UNCURRY", "CONSTFN", "PARTIAL", "DIAGONAL",
    # structure
    "ID", "PROJ1", "PROJ2", "SWAP", "INJ1", "INJ2", "CASE", "PAIR_LEFT", "PAIR_RIGHT",
    "REGROUP", "AT", "PRECOMP", "SEQ", "TRUNCATE",
    # Sierpinski logic and sets
    "AND", "OR", "JOIN", "BIT_IS", "CYLINDERS", "FLIP", "ZIPAPPLY", "UNION_WITH",
    "INTERSECT_WITH", "CUT_OF",
    # compactness
    "TREE_SEARCH", "FORALL_OF", "TRACED_SEQ", "TRACED_OPEN",
    # overtness
    "DENSE", "DENSE_PRODUCT",
    # separation
    "NAT_EQ", "NAT_NEQ", "CANTOR_NEQ",
    # admissibility
    "KINV_NAT", "KINV_CANTOR", "KAPPA_INV_FN", "KINV_FN_AT",
    # reals
    "REAL_LT", "REAL_ADD", "REAL_SUB", "REAL_MUL", "KINV_REAL",
)
BUILTIN_VERSION = 1

Realizer = Callable[[Name, Name], Name]
_IMPLS: dict[str, Realizer] = {}


def register(name: str) -> Callable[[Realizer], Realizer]:
    if name not in BUILTIN_TABLE:
        raise KeyError(name)

    def deco(fn: Realizer) -> Realizer:
        _IMPLS[name] = fn
        return fn

    return deco


def builtin_index(name: str) -> int:
    return 2 * BUILTIN_TABLE.index(name)


def program_index(prog: Program) -> int:
    return 2 * (int("1" + encode(prog), 2) - 1) + 1


@lru_cache(maxsize=4096)
def index_target(n: int) -> str | Program:
    """Builtin name for even n, decoded Program for odd n."""
    if n % 2 == 0:
        k = n // 2
        return BUILTIN_TABLE[k] if k < len(BUILTIN_TABLE) else Program()
    return decode(bin((n - 1) // 2 + 1)[3:])


def fn(name: str, oracle: Name = ZEROS) -> FunctionName:
    """Name of a builtin with its oracle."""
    return FunctionName(builtin_index(name), oracle)


def program_fn(prog: Program, oracle: Name = ZEROS) -> FunctionName:
    return FunctionName(program_index(prog), oracle)


# --- interpreter ----------------------------------------------------------------

@dataclass
class Instrumentation:
    max_oracle: int | None
    max_input: int | None
    write_steps: list[int]
    # (max oracle, max input) read before each WRITE
    reads_at_write: list[tuple[int | None, int | None]] = field(default_factory=list)


_CONST, _MOVE, _ADD, _SUBSAT, _JZ, _JMP, _READORACLE, _READINPUT, _WRITE = map(int, Op)


class MachineName(Name):
    """Output of a Program run on (oracle, input); resumable, so fuel is cumulative steps.

    Bit k at fuel f is defined iff the (k+1)-th WRITE happened within f steps.
    """

    def __init__(self, prog: Program, oracle: Name, input: Name):
        self.prog, self.oracle, self.input = prog, oracle, input
        self.pc = 0
        self.regs = [0] * NREGS
        self.steps = 0
        self.out: list[int] = []
        self.write_steps: list[int] = []
        self.reads_at_write: list[tuple[int | None, int | None]] = []
        self.max_oracle: int | None = None
        self.max_input: int | None = None
        self._lock = threading.RLock()
        self._code = [(int(op), a, b) for op, a, b in prog.instructions]

    @property
    def halted(self) -> bool:
        return not 0 <= self.pc < len(self.prog.instructions)

    def run_until(self, k: int, fuel: int) -> None:
        """Execute until k bits are written, the program halts, or `fuel` steps are used.

        A read that fails leaves the machine before that instruction, so the
        run can resume later with more fuel.
        """
        with self._lock:
            code = self._code
            size = len(code)
            r, out = self.regs, self.out
            pc, steps = self.pc, self.steps
            try:
                while len(out) < k and steps < fuel and 0 <= pc < size:
                    op, a, b = code[pc]
                    nxt = pc + 1
                    if op == _ADD:
                        r[a] += r[b]
                    elif op == _CONST:
                        r[a] = b
                    elif op == _JMP:
                        nxt = a
                    elif op == _JZ:
                        if r[a] == 0:
                            nxt = b
                    elif op == _WRITE:
                        out.append(r[a] & 1)
                        self.write_steps.append(steps + 1)
                        self.reads_at_write.append((self.max_oracle, self.max_input))
                    elif op == _MOVE:
                        r[a] = r[b]
                    elif op == _SUBSAT:
                        r[a] = max(0, r[a] - r[b])
                    elif op == _READORACLE:
                        pos = r[b]
                        r[a] = self.oracle.bit(pos, fuel)
                        if self.max_oracle is None or pos > self.max_oracle:
                            self.max_oracle = pos
                    else:
                        pos = r[b]
                        r[a] = self.input.bit(pos, fuel)
                        if self.max_input is None or pos > self.max_input:
                            self.max_input = pos
                    pc = nxt
                    steps += 1
            finally:
                self.pc, self.steps = pc, steps

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        if stop <= start:
            return None
        self.run_until(stop, fuel)
        for i in range(start, min(stop, len(self.out))):
            if self.write_steps[i] > fuel:
                break
            if self.out[i]:
                return i
        if stop > len(self.out) or self.write_steps[stop - 1] > fuel:
            raise FuelExhausted(f"bits before {stop} not written within {fuel} steps")
        return None

    def bit(self, n, fuel=DEFAULT_FUEL):
        self.run_until(n + 1, fuel)
        if n < len(self.out) and self.write_steps[n] <= fuel:
            return self.out[n]
        raise FuelExhausted(f"bit {n} not written within {fuel} steps")

    def instrument(self) -> Instrumentation:
        return Instrumentation(self.max_oracle, self.max_input, list(self.write_steps),
                               list(self.reads_at_write))


class RecordingName(Name):
    """Forwards to `base` while recording the highest position read."""

    def __init__(self, base: Name, sink: Callable[[int], None], scale: int = 1, offset: int = 0):
        self.base, self.sink, self.scale, self.offset = base, sink, scale, offset

    def _note(self, n: int) -> None:
        self.sink(self.scale * n + self.offset)

    def bit(self, n, fuel=DEFAULT_FUEL):
        self._note(n)
        return self.base.bit(n, fuel)

    def next_one(self, start, stop, fuel=DEFAULT_FUEL):
        j = self.base.next_one(start, stop, fuel)
        self._note(stop - 1 if j is None else j)
        return j

    def parse_function(self, fuel=DEFAULT_FUEL):
        n, rest = self.base.parse_function(fuel)
        self._note(n)
        return n, RecordingName(rest, self.sink, self.scale, self.offset + self.scale * (n + 1))

    def structured_function(self):
        parsed = self.base.structured_function()
        if parsed is None:
            return None
        n, rest = parsed
        self._note(n)
        return n, RecordingName(rest, self.sink, self.scale, self.offset + self.scale * (n + 1))

    def unpair(self):
        left, right = self.base.unpair()
        s = self.scale
        return (RecordingName(left, self.sink, 2 * s, self.offset),
                RecordingName(right, self.sink, 2 * s, self.offset + s))


class BuiltinRun(Name):
    """A builtin's output together with the input and oracle positions it has read."""

    def __init__(self, realizer: Realizer, oracle: Name, input: Name):
        self.max_oracle: int | None = None
        self.max_input: int | None = None
        self.write_steps: list[int] = []

        def seen_oracle(p):
            self.max_oracle = p if self.max_oracle is None else max(self.max_oracle, p)

        def seen_input(p):
            self.max_input = p if self.max_input is None else max(self.max_input, p)

        self.result = realizer(RecordingName(oracle, seen_oracle), RecordingName(input, seen_input))

    def bit(self, n, fuel=DEFAULT_FUEL):
        return self.result.bit(n, fuel)

    def confirms(self, fuel):
        return self.result.confirms(fuel)

    def instrument(self) -> Instrumentation:
        return Instrumentation(self.max_oracle, self.max_input, [])


def _dispatch(n: int, oracle: Name, x: Name) -> Name:
    target = index_target(n)
    if isinstance(target, Program):
        return MachineName(target, oracle, x) if target.instructions else Diverging()
    impl = _IMPLS.get(target)
    return impl(oracle, x) if impl else Diverging()


def run(n: int, oracle: Name, input: Name) -> Name:
    """The n-th machine with `oracle`, on `input`.  Builtin runs record their reads."""
    target = index_target(n)
    if isinstance(target, str) and target in _IMPLS:
        return BuiltinRun(_IMPLS[target], oracle, input)
    return _dispatch(n, oracle, input)


def instrument(out: Name) -> Instrumentation:
    if isinstance(out, (MachineName, BuiltinRun)):
        return out.instrument()
    raise TypeError("only direct runs carry instrumentation")


def apply(f: Name, x: Name) -> Name:
    """Universal application: parse 0^n 1 p and run machine n with oracle p on x."""
    parsed = f.structured_function()
    if parsed is not None:
        return _dispatch(parsed[0], parsed[1], x)
    return LazyName(lambda fuel: _dispatch(*f.parse_function(fuel), x))


# --- the combinator core --------------------------------------------------------

@register("EVAL")
def _eval(oracle, x):
    f, arg = x.unpair()
    return apply(f, arg)


@register("COMPOSE")
def _compose(oracle, x):
    f, g = oracle.unpair()
    return apply(f, apply(g, x))


@register("PRODUCT")
def _product(oracle, x):
    f, g = oracle.unpair()
    a, b = x.unpair()
    return PairName(apply(f, a), apply(g, b))


@register("CURRYSTEP")
def _currystep(oracle, x):
    return FunctionName(builtin_index("PARTIAL"), PairName(oracle, x))


@register("UNCURRY")
def _uncurry(oracle, x):
    a, b = x.unpair()
    return apply(apply(oracle, a), b)


@register("CONSTFN")
def _constfn(oracle, x):
    return oracle


@register("PARTIAL")
def _partial(oracle, y):
    f, a = oracle.unpair()
    return apply(f, PairName(a, y))


@register("DIAGONAL")
def _diagonal(oracle, x):
    return PairName(x, x)


def compose_name(f: Name, g: Name) -> FunctionName:
    """Name of f after g."""
    return fn("COMPOSE", PairName(f, g))
