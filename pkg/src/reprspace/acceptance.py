"""The acceptance suite, shared by `reprspace selftest` and the test suite.

Each criterion compares the library against an oracle that does not go
through the code under test: hand truth tables, a direct Python model of the
random machines, brute-force enumeration over finite point sets, exact
rational arithmetic and an interval-arithmetic grid.
"""

from __future__ import annotations

import io
import json
import random
import time
from contextlib import redirect_stdout
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from typing import Callable

from . import admissibility as adm
from . import compact as K
from . import overt as V
from . import reals as R
from . import sets as S
from .names import DEFAULT_FUEL, Name, NatName, PairName, Periodic, ZEROS, word
from .separation import eq, neq
from .spaces import (
    BOTTOM,
    CANTOR,
    NAT,
    SIERP,
    TOP,
    Function,
    Open,
    Overt,
    Point,
    Product,
    builtin_function,
    compose,
    const_fn,
    curry,
    evaluate,
    make_product,
    partial,
    product_map,
    program_function,
    sequence,
    sierp_at,
    sierp_observe,
    uncurry,
)
from .t2vm import NREGS, Instruction, MachineName, Op, Program, assemble, decode, encode, fn

SEED = 20240601


@dataclass
class Result:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number} [{self.title}]: {verdict} ({self.detail}; {self.seconds:.2f} s)"


@dataclass
class Checker:
    """Counts checks and keeps the first few failures for the report."""

    checks: int = 0
    positives: int = 0
    failures: list[str] = field(default_factory=list)

    def expect(self, label: str, ok: bool) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(label)

    def observe(self, label: str, s: Point, truth: bool, fuel_yes: int, fuel_no: int) -> None:
        """A true statement confirms within fuel_yes; a false one stays unknown at fuel_no."""
        self.positives += truth
        got = sierp_observe(s, fuel_yes if truth else fuel_no).confirmed
        self.expect(f"{label}: expected {'Confirmed' if truth else 'Unknown'}", got == truth)

    def summary(self, extra: str = "") -> tuple[bool, str]:
        ok = not self.failures
        text = f"{self.checks} checks"
        if self.positives:
            text += f" ({self.positives} expected to confirm)"
        text += f", {extra}" if extra else ""
        if not ok:
            text += f", {len(self.failures)} failed, first: {self.failures[0]}"
        return ok, text


# --- random machines with a Python model ---------------------------------------------

@dataclass(frozen=True)
class RandomMachine:
    """Output bit k is in[s*k + a] (+ in[s*k + a2]) (+ oracle[k + b]) + d, mod 2."""

    a: int
    s: int
    d: int
    a2: int | None
    b: int | None

    def assembly(self) -> str:
        lines = [f"CONST r1 {self.a}", f"CONST r3 {self.s}", "CONST r4 1", f"CONST r7 {self.d}"]
        if self.a2 is not None:
            lines.append(f"CONST r8 {self.a2}")
        if self.b is not None:
            lines.append(f"CONST r2 {self.b}")
        lines.append("loop: READINPUT r0 r1")
        if self.a2 is not None:
            lines += ["READINPUT r5 r8", "ADD r0 r5", "ADD r8 r3"]
        if self.b is not None:
            lines += ["READORACLE r5 r2", "ADD r0 r5", "ADD r2 r4"]
        lines += ["ADD r0 r7", "WRITE r0", "ADD r1 r3", "JMP loop"]
        return "\n".join(lines)

    def program(self) -> Program:
        return assemble(self.assembly())

    def model(self, inbit: Callable[[int], int], orbit: Callable[[int], int], k: int) -> list[int]:
        out = []
        for j in range(k):
            v = inbit(self.s * j + self.a) + self.d
            if self.a2 is not None:
                v += inbit(self.s * j + self.a2)
            if self.b is not None:
                v += orbit(j + self.b)
            out.append(v & 1)
        return out


def random_machine(rng: random.Random, strides=(1, 2, 3), oracle=True) -> RandomMachine:
    return RandomMachine(
        a=rng.randrange(5),
        s=rng.choice(strides),
        d=rng.randrange(2),
        a2=rng.randrange(5) if rng.random() < 0.4 else None,
        b=rng.randrange(4) if oracle and rng.random() < 0.5 else None,
    )


def random_name(rng: random.Random) -> Periodic:
    head = "".join(rng.choice("01") for _ in range(rng.randrange(9)))
    cycle = "".join(rng.choice("01") for _ in range(rng.randrange(1, 5)))
    return Periodic(head, cycle)


def _bits(name: Name, k: int, fuel: int = DEFAULT_FUEL) -> list[int]:
    return name.prefix(k, fuel)


# --- criterion 1 ---------------------------------------------------------------------

def criterion_1() -> tuple[bool, str]:
    ck = Checker()
    seq = lambda f: sequence(f, SIERP)
    cases = [
        ("and(top@3, top@5)", S.sierp_and(sierp_at(3), sierp_at(5)), True),
        ("and(top@3, bottom)", S.sierp_and(sierp_at(3), BOTTOM), False),
        ("or(bottom, top@9)", S.sierp_or(BOTTOM, sierp_at(9)), True),
        ("join of bottoms", S.sierp_countable_or(seq(lambda n: ZEROS)), False),
        ("join, component 17 is top@2",
         S.sierp_countable_or(seq(lambda n: sierp_at(2).name if n == 17 else ZEROS)), True),
        ("join, component 0 is top@0",
         S.sierp_countable_or(seq(lambda n: sierp_at(0).name if n == 0 else ZEROS)), True),
    ]
    for label, s, truth in cases:
        ck.observe(label, s, truth, 10**3, 10**6)
    # the full truth tables, on points that confirm late
    for x, y in cartesian((False, True), repeat=2):
        a, b = (sierp_at(7) if x else BOTTOM), (sierp_at(11) if y else BOTTOM)
        ck.observe(f"and({x}, {y})", S.sierp_and(a, b), x and y, 10**3, 10**6)
        ck.observe(f"or({x}, {y})", S.sierp_or(a, b), x or y, 10**3, 10**6)
    return ck.summary()


# --- criterion 2 ---------------------------------------------------------------------

def criterion_2(instances: int = 20, bits: int = 32) -> tuple[bool, str]:
    rng = random.Random(SEED + 2)
    ck = Checker()
    C2 = Product(CANTOR, CANTOR)

    def machine(dom=CANTOR, strides=(1, 2, 3)):
        m = random_machine(rng, strides)
        orc = random_name(rng)
        return m, orc, program_function(m.program(), dom, CANTOR, orc)

    def pair_bits(x, y):
        p = PairName(x, y)
        return lambda i: p.bit(i)

    for i in range(instances):
        x, y = random_name(rng), random_name(rng)

        m, orc, f = machine()
        want = m.model(x.bit, orc.bit, bits)
        ck.expect(f"eval #{i}", _bits(evaluate(f, Point(CANTOR, x)).name, bits) == want)

        m, orc, f = machine(C2)
        want = m.model(pair_bits(x, y), orc.bit, bits)
        got = evaluate(evaluate(curry(f), Point(CANTOR, x)), Point(CANTOR, y))
        ck.expect(f"curry #{i}", _bits(got.name, bits) == want)

        got = evaluate(uncurry(curry(f)), Point(C2, PairName(x, y)))
        ck.expect(f"uncurry #{i}", _bits(got.name, bits) == want)

        ck.expect(f"partial #{i}", _bits(evaluate(partial(Point(CANTOR, x), f), Point(CANTOR, y)).name, bits) == want)

        (mf, of, f), (mg, og, g) = machine(), machine()
        inner = mg.model(x.bit, og.bit, 4 * bits + 16)
        want = mf.model(lambda j: inner[j], of.bit, bits)
        ck.expect(f"compose #{i}", _bits(evaluate(compose(f, g), Point(CANTOR, x)).name, bits) == want)

        out = evaluate(product_map(f, g), Point(C2, PairName(x, y))).name
        left, right = out.unpair()
        ck.expect(f"product #{i}", _bits(left, bits) == mf.model(x.bit, of.bit, bits)
                  and _bits(right, bits) == mg.model(y.bit, og.bit, bits))

        c = const_fn(Point(CANTOR, y), CANTOR)
        ck.expect(f"const #{i}", _bits(evaluate(c, Point(CANTOR, x)).name, bits) == _bits(y, bits))
    return ck.summary()


# --- criterion 3 ---------------------------------------------------------------------

WORDS4 = ["".join(w) for w in cartesian("01", repeat=4)]


def random_words(rng: random.Random, max_words: int = 3) -> list[str]:
    n = rng.randrange(max_words + 1)
    return ["".join(rng.choice("01") for _ in range(rng.randint(1, 4))) for _ in range(n)]


def in_words(p: str, words: list[str]) -> bool:
    return any(p.startswith(w) for w in words)


def _cyl(words: list[str]) -> Point:
    return S.cylinder_open(words)


def _pt(w: str) -> Point:
    return Point(CANTOR, word(w))


def criterion_3(rounds: int = 6) -> tuple[bool, str]:
    rng = random.Random(SEED + 3)
    ck = Checker()
    yes, no = 10**3, 10**4
    C2 = Product(CANTOR, CANTOR)
    for r in range(rounds):
        u, v = random_words(rng), random_words(rng)
        U, Vs = _cyl(u), _cyl(v)
        us = [random_words(rng) for _ in range(3)]
        seq = sequence(lambda n: _cyl(us[n]).name if n < 3 else S.empty_open(CANTOR).name, Open(CANTOR))
        closed_seq = sequence(lambda n: _cyl(us[n]).name if n < 3 else S.empty_open(CANTOR).name,
                              S.Closed(CANTOR))
        m = random_machine(rng, oracle=False)
        f = program_function(m.program(), CANTOR, CANTOR)
        for p in WORDS4:
            x = _pt(p)
            tag = f"round {r}, point {p}"
            # 1: the complement excludes exactly the members
            ck.observe(f"(1) complement {tag}", S.member(x, S.complement(U)), in_words(p, u), yes, no)
            ck.expect(f"(1) double complement {tag}", S.complement(S.complement(U)).name is U.name)
            # 2 and 3, open and closed
            ck.observe(f"(2) open union {tag}", S.member(x, S.set_union(U, Vs)),
                       in_words(p, u) or in_words(p, v), yes, no)
            ck.observe(f"(3) open intersection {tag}", S.member(x, S.set_intersection(U, Vs)),
                       in_words(p, u) and in_words(p, v), yes, no)
            A, B = S.complement(U), S.complement(Vs)
            ck.observe(f"(2) closed union {tag}", S.member(x, S.set_union(A, B)),
                       in_words(p, u) and in_words(p, v), yes, no)
            ck.observe(f"(3) closed intersection {tag}", S.member(x, S.set_intersection(A, B)),
                       in_words(p, u) or in_words(p, v), yes, no)
            # 4 and 5
            ck.observe(f"(4) countable union {tag}", S.member(x, S.countable_union(seq)),
                       any(in_words(p, w) for w in us), yes, no)
            ck.observe(f"(5) countable intersection {tag}", S.member(x, S.countable_intersection(closed_seq)),
                       any(in_words(p, w) for w in us), yes, no)
            # 6: f(x) is computed by the model on the eventually-zero point
            fx = "".join(map(str, m.model(word(p).bit, ZEROS.bit, 4)))
            ck.observe(f"(6) preimage {tag}", S.member(x, S.preimage(f, U)), in_words(fx, u), yes, no)
            # 7
            ck.observe(f"(7) member {tag}", S.member(x, U), in_words(p, u), yes, no)
            # 8 and 9 on pairs
            q = rng.choice(WORDS4)
            xy = Point(C2, PairName(word(p), word(q)))
            ck.observe(f"(8) closed product {tag}", S.member(xy, S.closed_product(A, B)),
                       in_words(p, u) or in_words(q, v), yes, no)
            W = S.set_union(S.open_product(U, Vs), S.open_product(Vs, U))
            ck.observe(f"(9) cut {tag}", S.member(x, S.cut(_pt(q), W)),
                       (in_words(p, u) and in_words(q, v)) or (in_words(p, v) and in_words(q, u)), yes, no)
        # 10: sequences whose first three terms vary; factors beyond 2 are full
        factors = sequence(lambda n: _cyl(us[n]).name if n < 3 else S.empty_open(CANTOR).name,
                           S.Closed(CANTOR))
        prod = S.seq_closed_product(factors)
        for _ in range(16):
            terms = [rng.choice(WORDS4) for _ in range(3)]
            pt = sequence(lambda n: word(terms[n]) if n < 3 else ZEROS, CANTOR)
            excluded = any(in_words(terms[n], us[n]) for n in range(3))
            ck.observe(f"(10) sequence product round {r} {terms}", S.member(pt, prod), excluded, yes, no)
    return ck.summary()


# --- criterion 4 ---------------------------------------------------------------------

def criterion_4() -> tuple[bool, str]:
    ck = Checker()
    split = S.countable_union(K.example_cover("case-split"))
    fuel = K.confirmation_fuel(K.is_full(split).name, 10**3)
    depth = None if fuel is None else K.search_depth(split, fuel)
    ck.expect(f"case split confirms at depth 1 (got {depth})", depth == 1)
    sub = K.finite_subcover(K.example_cover("shifted-cylinders"))
    ck.expect(f"shifted cylinders give N >= 6 (got {sub.n})", sub.n >= 6)
    # finite_subcover re-checks the truncation itself; repeat it here explicitly
    us = K.example_cover("shifted-cylinders")
    trunc = Point(us.space, fn("TRUNCATE", PairName(NatName(sub.n), PairName(us.name, S.empty_open(CANTOR).name))))
    ck.expect("truncated cover confirms", K.is_cover(trunc).name.confirms(sub.fuel))
    if sub.n > 0:
        short = Point(us.space, fn("TRUNCATE", PairName(NatName(sub.n - 1), PairName(us.name, S.empty_open(CANTOR).name))))
        ck.expect("one index fewer is not a cover", not K.is_cover(short).name.confirms(10**4))
    # the complement of the singleton {0^w}: every point with some 1
    ones = Point(Open(CANTOR), fn("PARTIAL", PairName(fn("CANTOR_NEQ"), ZEROS)))
    ck.expect("singleton complement stays unknown at 10^6", not K.is_full(ones).name.confirms(10**6))
    return ck.summary(f"N = {sub.n}, case split depth {depth}")


# --- criterion 5 ---------------------------------------------------------------------

def _random_set(rng: random.Random, lo: int = 0, hi: int = 4) -> list[str]:
    return rng.sample(WORDS4, rng.randint(lo, hi))


def criterion_5(rounds: int = 12) -> tuple[bool, str]:
    rng = random.Random(SEED + 5)
    ck = Checker()
    yes, no = 2**14, 2**16
    C2 = Product(CANTOR, CANTOR)
    OC = Open(CANTOR)

    def kset(ws):
        return K.finite_compact([_pt(w) for w in ws], CANTOR)

    def vset(ws):
        return V.finite_overt([_pt(w) for w in ws], CANTOR)

    def pairs_open(u1, v1, u2, v2):
        W = S.set_union(S.open_product(_cyl(u1), _cyl(v1)), S.open_product(_cyl(u2), _cyl(v2)))
        inside = lambda p, q: (in_words(p, u1) and in_words(q, v1)) or (in_words(p, u2) and in_words(q, v2))
        return W, inside

    swap_image = Point(Function(Open(C2), Open(C2)), fn("PRECOMP", fn("SWAP")))

    for r in range(rounds):
        s1, s2 = _random_set(rng), _random_set(rng)
        u, v = random_words(rng), random_words(rng)
        U, Vo = _cyl(u), _cyl(v)
        inU = lambda p: in_words(p, u)
        inV = lambda p: in_words(p, v)
        m = random_machine(rng, oracle=False)
        f = program_function(m.program(), CANTOR, CANTOR)
        img = lambda p: "".join(map(str, m.model(word(p).bit, ZEROS.bit, 4)))
        W, inW = pairs_open(*(random_words(rng) for _ in range(4)))
        y = rng.choice(WORDS4)
        tag = f"round {r}"

        # compact side
        ck.observe(f"contained_in {tag}", K.contained_in(kset(s1), U), all(map(inU, s1)), yes, no)
        x = rng.choice(WORDS4)
        ck.observe(f"sat_singleton {tag}", K.contained_in(K.sat_singleton(_pt(x)), U), inU(x), yes, no)
        ck.observe(f"k_union {tag}", K.contained_in(K.k_union(kset(s1), kset(s2)), U),
                   all(map(inU, s1 + s2)), yes, no)
        ck.observe(f"k_intersect_closed {tag}",
                   K.contained_in(K.k_intersect_closed(kset(s1), S.complement(Vo)), U),
                   all(inU(p) for p in s1 if not inV(p)), yes, no)
        ck.observe(f"k_image {tag}", K.contained_in(K.k_image(f, kset(s1)), U),
                   all(inU(img(p)) for p in s1), yes, no)
        prod = K.k_product(kset(s1), kset(s2))
        ck.observe(f"k_product {tag}", K.contained_in(prod, W),
                   all(inW(p, q) for p in s1 for q in s2), yes, no)
        ck.observe(f"k_project {tag}", K.contained_in(K.k_project(prod, 1), U),
                   all(inU(p) for p in s1 for _ in s2), yes, no)
        ck.observe(f"forall_rel {tag}", S.member(_pt(y), K.forall_rel(W, kset(s1))),
                   all(inW(p, y) for p in s1), yes, no)
        fam = [random_words(rng) for _ in range(rng.randint(0, 3))]
        kfam = K.finite_compact([Point(OC, _cyl(w).name) for w in fam], OC)
        ck.observe(f"k_countable_intersection_of_opens {tag}",
                   S.member(_pt(y), K.k_countable_intersection_of_opens(kfam)),
                   all(in_words(y, w) for w in fam), yes, no)
        ck.observe(f"is_full {tag}", K.is_full(U), all(map(inU, WORDS4)), yes, no)

        # overt side
        ck.observe(f"intersects {tag}", V.intersects(vset(s1), U), any(map(inU, s1)), yes, no)
        ck.observe(f"closure_singleton {tag}", V.intersects(V.closure_singleton(_pt(x)), U), inU(x), yes, no)
        ck.observe(f"v_union {tag}", V.intersects(V.v_union(vset(s1), vset(s2)), U),
                   any(map(inU, s1 + s2)), yes, no)
        both = s1 + s2
        vseq = sequence(lambda n: V.closure_singleton(_pt(both[n])).name if n < len(both)
                        else V.empty_overt(CANTOR).name, Overt(CANTOR))
        ck.observe(f"v_countable_union {tag}", V.intersects(V.v_countable_union(vseq), U),
                   any(map(inU, both)), yes, no)
        ck.observe(f"v_intersect_open {tag}", V.intersects(V.v_intersect_open(vset(s1), Vo), U),
                   any(inU(p) and inV(p) for p in s1), yes, no)
        ck.observe(f"v_image {tag}", V.intersects(V.v_image(f, vset(s1)), U),
                   any(inU(img(p)) for p in s1), yes, no)
        ps = [(p, q) for p in s1 for q in s2]
        vpairs = V.finite_overt([make_product(_pt(p), _pt(q)) for p, q in ps], C2)
        ck.observe(f"v_project {tag}", V.intersects(V.v_project(vpairs, 1), U),
                   any(inU(p) for p, _ in ps), yes, no)
        ck.observe(f"v_preimage_open {tag}", V.intersects(V.v_preimage_open(swap_image, vpairs), W),
                   any(inW(q, p) for p, q in ps), yes, no)
        ck.observe(f"exists_rel {tag}", S.member(_pt(y), V.exists_rel(W, vset(s1))),
                   any(inW(p, y) for p in s1), yes, no)
        vfam = V.finite_overt([Point(OC, _cyl(w).name) for w in fam], OC)
        ck.observe(f"v_countable_union_of_opens {tag}",
                   S.member(_pt(y), V.v_countable_union_of_opens(vfam)),
                   any(in_words(y, w) for w in fam), yes, no)
        ck.observe(f"closure_of_open {tag}", V.intersects(V.closure_of_open(Vo), U),
                   any(inU(p) and inV(p) for p in WORDS4), yes, no)
        if s1:
            ck.expect(f"duality {tag}", not K.contained_in(kset(s1), U).name.confirms(yes)
                      or V.intersects(vset(s1), U).name.confirms(yes))
    return ck.summary()


# --- criterion 6 ---------------------------------------------------------------------

def _random_rational(rng: random.Random, den: int = 1000, size: int = 10) -> Fraction:
    d = rng.randint(1, den)
    return Fraction(rng.randint(-size * d, size * d), d)


def criterion_6(trials: int = 10**4) -> tuple[bool, str]:
    rng = random.Random(SEED + 6)
    ck = Checker()
    third, half = R.real_from_rational(Fraction(1, 3)), R.real_from_rational(Fraction(1, 2))
    f = K.confirmation_fuel(neq(third, half).name, 10**4)
    ck.expect(f"1/3 != 1/2 within fuel 10^4 (got {f})", f is not None)
    for i in range(trials):
        q = _random_rational(rng)
        x = R.real_from_rational(q)
        kind = i % 4
        if kind == 0:
            y = x
        elif kind == 1:
            y = R.real_from_rational(q)
        elif kind == 2:
            r = R.real_from_rational(_random_rational(rng))
            y = R.real_arith("+", R.real_arith("-", x, r), r)
        else:
            y = R.from_bounds(R.to_lower(x), R.to_upper(x))
        ck.expect(f"x != x confirmed for {q} (variant {kind})", not neq(x, y).name.confirms(10**5))
    for a in range(101):
        for b in range(101):
            pa, pb = Point(NAT, NatName(a)), Point(NAT, NatName(b))
            ck.observe(f"eq({a}, {b})", eq(pa, pb), a == b, 10**3, 10**5)
            ck.observe(f"neq({a}, {b})", neq(pa, pb), a != b, 10**3, 10**5)
    return ck.summary(f"1/3 != 1/2 confirmed at fuel {f}")


# --- criterion 7 ---------------------------------------------------------------------

PARITY_ASM = """
; n -> top when n is even: scan the unary code, toggling r3, then write forever
CONST r1 0
CONST r2 1
CONST r3 0
scan: READINPUT r0 r1
JZ r0 zero
JZ r3 top
bot: CONST r0 0
WRITE r0
JMP bot
top: CONST r0 1
WRITE r0
JMP top
zero: ADD r1 r2
MOVE r4 r2
SUBSAT r4 r3
MOVE r3 r4
JMP scan
"""

SUCC_ASM = """
; n -> n + 1 on unary codes: one extra 0, then the input
CONST r0 0
WRITE r0
CONST r1 0
CONST r2 1
loop: READINPUT r0 r1
WRITE r0
ADD r1 r2
JMP loop
"""


def criterion_7() -> tuple[bool, str]:
    ck = Checker()
    yes, no = 10**4, 10**6
    NS = Function(NAT, SIERP)
    ck.observe("kappa_inv(kappa(top))", adm.kappa_inv(adm.kappa(TOP), SIERP), True, yes, no)
    ck.observe("kappa_inv(kappa(bottom))", adm.kappa_inv(adm.kappa(BOTTOM), SIERP), False, yes, no)
    ck.observe("kappa_inv_sierp(kappa(top))", adm.kappa_inv_sierp(adm.kappa(TOP)), True, yes, no)
    ck.observe("kappa_inv_sierp(kappa(bottom))", adm.kappa_inv_sierp(adm.kappa(BOTTOM)), False, yes, no)

    def nat_eq_to(k):
        return Point(NS, fn("PARTIAL", PairName(fn("NAT_EQ"), NatName(k))))

    samples = [
        ("always top", Point(NS, fn("CONSTFN", TOP.name)), lambda n: True),
        ("always bottom", Point(NS, fn("CONSTFN", BOTTOM.name)), lambda n: False),
        ("n = 3", nat_eq_to(3), lambda n: n == 3),
        ("n even", program_function(assemble(PARITY_ASM), NAT, SIERP), lambda n: n % 2 == 0),
    ]
    for label, f, truth in samples:
        g = adm.kappa_inv(adm.kappa(f), NS)
        for n in range(10):
            ck.observe(f"C(N,S) round trip {label} at {n}", evaluate(g, Point(NAT, NatName(n))), truth(n), yes, no)

    # reflect(f) after kappa agrees with f
    rng = random.Random(SEED + 7)
    cases = []
    for w in ("001", "1", "0110"):
        f = Point(Function(CANTOR, SIERP), S.bit_open(2, 1).name)
        cases.append(("bit 2 is 1", f, Point(CANTOR, word(w)), ("sierp", w[2:3] == "1")))
    for s in (TOP, BOTTOM):
        cases.append(("identity on S", builtin_function("ID", SIERP, SIERP), s, ("sierp", s is TOP)))
    succ = program_function(assemble(SUCC_ASM), NAT, NAT)
    for n in (0, 4):
        cases.append(("successor", succ, Point(NAT, NatName(n)), ("nat", n + 1)))
    for _ in range(3):
        m = random_machine(rng, oracle=False)
        x = random_name(rng)
        f = program_function(m.program(), CANTOR, CANTOR)
        cases.append(("random machine", f, Point(CANTOR, x), ("bits", m.model(x.bit, ZEROS.bit, 16))))
    for label, f, x, (kind, truth) in cases:
        got = evaluate(adm.reflect(f), adm.kappa(x))
        if kind == "sierp":
            ck.observe(f"reflect {label}", got, truth, yes, no)
        elif kind == "nat":
            ck.expect(f"reflect {label}", got.name.nat(yes) == truth)
        else:
            ck.expect(f"reflect {label}", _bits(got.name, 16, yes) == truth)
    return ck.summary(f"{len(cases)} reflect samples")


# --- criterion 8 ---------------------------------------------------------------------

def interval_eval(e: R.Expr, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Naive interval extension of an expression over [lo, hi]."""
    if e.op == "x":
        return lo, hi
    if e.op == "const":
        return e.value, e.value
    if e.op == "neg":
        a, b = interval_eval(e.args[0], lo, hi)
        return -b, -a
    (a, b), (c, d) = (interval_eval(t, lo, hi) for t in e.args)
    if e.op == "+":
        return a + c, b + d
    if e.op == "-":
        return a - d, b - c
    ps = (a * c, a * d, b * c, b * d)
    return min(ps), max(ps)


def grid_sup(e: R.Expr, step_bits: int = 16) -> tuple[Fraction, Fraction]:
    """[lower, upper] enclosing the max of e on [0, 1]."""
    h = Fraction(1, 2**step_bits)
    lower = max(e.at(k * h) for k in range(2**step_bits + 1))
    upper = max(interval_eval(e, k * h, (k + 1) * h)[1] for k in range(2**step_bits))
    return lower, upper


def criterion_8() -> tuple[bool, str]:
    from .cli import main

    rng = random.Random(SEED + 8)
    ck = Checker()
    eps = Fraction(1, 2**24)
    for _ in range(100):
        q = _random_rational(rng, den=10**6, size=100)
        x = R.real_from_rational(q)
        y = R.from_bounds(R.to_lower(x), R.to_upper(x))
        ck.expect(f"bounds round trip {q}", abs(R.real_approx(y, 24) - q) <= eps)

    t0 = time.perf_counter()
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(["real", "max", "--set", "0,1/3,1/2", "--prec", "20"])
    t_max = time.perf_counter() - t0
    approx = Fraction(json.loads(buf.getvalue())["approximation"])
    ck.expect(f"real max exit code {code}", code == 0)
    ck.expect(f"real max {approx}", abs(approx - Fraction(1, 2)) <= Fraction(1, 2**20))
    ck.expect(f"real max took {t_max:.2f} s", t_max < 2)

    expr = R.parse_expr("x*(1-x)")
    lower, upper = grid_sup(expr)
    t0 = time.perf_counter()
    sup = R.real_approx(R.sup_on_unit(R.expr_function("x*(1-x)")), 12)
    t_sup = time.perf_counter() - t0
    tol = Fraction(1, 2**12)
    ck.expect(f"sup {sup} within 2^-12 of [{float(lower)}, {float(upper)}]",
              lower - tol <= sup <= upper + tol)
    ck.expect(f"sup took {t_sup:.1f} s", t_sup < 60)
    return ck.summary(f"max {t_max:.2f} s, sup {float(sup)} in {t_sup:.1f} s")


# --- criterion 9 ---------------------------------------------------------------------

def random_program(rng: random.Random, length: int = 16, imm: int = 24) -> Program:
    ins = []
    for _ in range(rng.randint(0, length)):
        op = rng.choice(list(Op))
        if op in (Op.CONST, Op.JZ):
            ins.append(Instruction(op, rng.randrange(NREGS), rng.randrange(imm)))
        elif op == Op.JMP:
            ins.append(Instruction(op, rng.randrange(imm)))
        elif op == Op.WRITE:
            ins.append(Instruction(op, rng.randrange(NREGS)))
        else:
            ins.append(Instruction(op, rng.randrange(NREGS), rng.randrange(NREGS)))
    return Program(tuple(ins))


class _AlteredTail(Name):
    """Agrees with `base` up to position m, pseudo-random after it."""

    def __init__(self, base: Name, m: int, seed: int):
        self.base, self.m, self.seed = base, m, seed

    def bit(self, n, fuel=DEFAULT_FUEL):
        if n <= self.m:
            return self.base.bit(n, fuel)
        return random.Random(self.seed * 1_000_003 + n).randrange(2)


def criterion_9(trials: int = 10**3, steps: int = 400) -> tuple[bool, str]:
    rng = random.Random(SEED + 9)
    ck = Checker()
    for i in range(trials):
        p = random_program(rng)
        ck.expect(f"round trip #{i}", decode(encode(p)) == p)
    changed_reads = 0
    for i in range(trials):
        p = random_program(rng) if i % 2 else random_machine(rng).program()
        orc, inp = random_name(rng), random_name(rng)
        run = MachineName(p, orc, inp)
        run.run_until(10**9, steps)
        out, reads = list(run.out), run.instrument().max_input
        short = MachineName(p, orc, inp)
        short.run_until(10**9, steps // 2)
        ck.expect(f"monotone #{i}", out[: len(short.out)] == short.out)
        m = -1 if reads is None else reads
        alt = MachineName(p, orc, _AlteredTail(inp, m, i))
        alt.run_until(10**9, steps)
        ck.expect(f"continuity #{i}", alt.out == out)
        changed_reads += reads is not None
    return ck.summary(f"{changed_reads} fuzz runs read their input")


CRITERIA: dict[int, tuple[str, Callable[[], tuple[bool, str]], float | None]] = {
    1: ("Sierpinski logic", criterion_1, 1),
    2: ("combinator laws", criterion_2, 10),
    3: ("set algebra", criterion_3, 10),
    4: ("Cantor compactness", criterion_4, 5),
    5: ("K/V operation suites", criterion_5, 30),
    6: ("separation", criterion_6, None),
    7: ("admissibility", criterion_7, 5),
    8: ("reals", criterion_8, None),
    9: ("VM integrity", criterion_9, 10),
}


def run_criterion(number: int) -> Result:
    title, check, budget = CRITERIA[number]
    t0 = time.perf_counter()
    try:
        ok, detail = check()
    except Exception as e:  # a crash is a failed criterion, reported like one
        ok, detail = False, f"raised {type(e).__name__}: {e}"
    seconds = time.perf_counter() - t0
    if budget is not None and seconds >= budget:
        ok, detail = False, f"{detail}; over the {budget} s budget"
    return Result(number, title, ok, detail, seconds)


def run_all(only: set[int] | None = None, log: Callable[[Result], None] | None = None) -> list[Result]:
    results = []
    for n in sorted(CRITERIA):
        if only is None or n in only:
            r = run_criterion(n)
            if log:
                log(r)
            results.append(r)
    return results
