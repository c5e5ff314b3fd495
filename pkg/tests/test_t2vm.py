import pytest
from hypothesis import given, settings, strategies as st

from reprspace.names import FuelExhausted, NatName, ONES, PairName, Periodic, ZEROS, word
from reprspace.t2vm import (
    BUILTIN_TABLE,
    Instruction,
    MachineName,
    Op,
    Program,
    apply,
    assemble,
    builtin_index,
    compose_name,
    decode,
    encode,
    fn,
    index_target,
    instrument,
    program_fn,
    program_index,
    run,
)

IDENTITY = """
CONST r1 0
CONST r2 1
READINPUT r0 r1   ; instruction 2
WRITE r0
ADD r1 r2
JMP 2
"""

FIRST_TEN = """
; read input bits 0..9, then write their parity forever
CONST r1 0
CONST r2 1
CONST r3 10
CONST r5 0
loop: JZ r3 out
READINPUT r0 r1
ADD r5 r0
ADD r1 r2
SUBSAT r3 r2
JMP loop
out: WRITE r5
JMP out
"""


def bits(name, k, fuel=10**6):
    return "".join(map(str, name.prefix(k, fuel)))


def test_identity_machine_copies_input():
    m = MachineName(assemble(IDENTITY), ZEROS, Periodic("", "110"))
    assert bits(m, 9) == "110110110"


def test_identity_after_one_bit_read_position_zero():
    m = MachineName(assemble(IDENTITY), ZEROS, ONES)
    m.bit(0)
    assert m.instrument().max_input == 0


def test_constant_function_reads_no_input():
    out = run(builtin_index("CONSTFN"), word("1"), ONES)
    assert bits(out, 4) == "1000"
    assert instrument(out).max_input is None


def test_machine_reading_ten_bits():
    m = MachineName(assemble(FIRST_TEN), ZEROS, word("1101"))
    assert m.bit(0) == 1
    assert m.instrument().max_input == 9


def test_fuel_counts_steps():
    prog = assemble(IDENTITY)
    # two setup steps, then READINPUT, WRITE, ADD, JMP: bit k is written at step 4 + 4k
    assert MachineName(prog, ZEROS, ONES).bit(0, 4) == 1
    with pytest.raises(FuelExhausted):
        MachineName(prog, ZEROS, ONES).bit(0, 3)
    m = MachineName(prog, ZEROS, ONES)
    with pytest.raises(FuelExhausted):
        m.bit(1, 7)
    assert m.bit(1, 8) == 1
    assert m.instrument().write_steps == [4, 8]


def test_halting_machine_stops_writing():
    m = MachineName(assemble("CONST r0 1\nWRITE r0"), ZEROS, ZEROS)
    assert m.bit(0) == 1
    with pytest.raises(FuelExhausted):
        m.bit(1)


def test_assembly_errors():
    for bad in ("FOO r1", "CONST r1", "CONST r99 1", "CONST r1 x", "JMP nowhere"):
        with pytest.raises(ValueError):
            assemble(bad)


def test_encoding_is_bit_exact():
    prog = Program((Instruction(Op.CONST, 1, 2), Instruction(Op.WRITE, 3)))
    assert encode(prog) == "1" + "0000" + "0001" + "110" + "1" + "1000" + "0011" + "0"


def test_decode_of_unknown_opcode_is_empty():
    assert decode("1" + "1111") == Program()


def test_decode_drops_truncated_instruction():
    assert decode("1" + "0000" + "00") == Program()


instructions = st.one_of(
    st.builds(lambda op, a, b: Instruction(op, a, b), st.sampled_from([Op.CONST, Op.JZ]),
              st.integers(0, 15), st.integers(0, 40)),
    st.builds(lambda a: Instruction(Op.JMP, a), st.integers(0, 40)),
    st.builds(lambda a: Instruction(Op.WRITE, a), st.integers(0, 15)),
    st.builds(lambda op, a, b: Instruction(op, a, b),
              st.sampled_from([Op.MOVE, Op.ADD, Op.SUBSAT, Op.READORACLE, Op.READINPUT]),
              st.integers(0, 15), st.integers(0, 15)),
)


@given(st.lists(instructions, max_size=20))
def test_encode_decode_round_trip(ins):
    prog = Program(tuple(ins))
    assert decode(encode(prog)) == prog


@given(st.text("01", max_size=200))
def test_decode_is_total(text):
    prog = decode(text)
    assert decode(encode(prog)) == prog


def test_program_index_round_trip():
    prog = assemble(IDENTITY)
    assert index_target(program_index(prog)) == prog
    for name in BUILTIN_TABLE:
        assert index_target(builtin_index(name)) == name


@settings(max_examples=50)
@given(st.text("01", min_size=1, max_size=8), st.integers(1, 60))
def test_output_is_monotone_in_fuel(cycle, fuel):
    prog = assemble(IDENTITY)
    small = MachineName(prog, ZEROS, Periodic("", cycle))
    big = MachineName(prog, ZEROS, Periodic("", cycle))
    small.run_until(10**6, fuel)
    big.run_until(10**6, 2 * fuel)
    assert big.out[: len(small.out)] == small.out


def test_combinators():
    x, y = word("1011"), word("0110")
    ident = fn("ID")
    shift = program_fn(assemble("CONST r1 1\nCONST r2 1\nl: READINPUT r0 r1\nWRITE r0\nADD r1 r2\nJMP l"))
    assert bits(apply(shift, x), 4) == "0110"
    assert bits(apply(compose_name(shift, shift), x), 4) == "1100"
    assert bits(apply(fn("EVAL"), PairName(shift, x)), 4) == "0110"
    assert bits(apply(fn("CONSTFN", y), x), 4) == "0110"
    curried = apply(fn("CURRYSTEP", fn("PROJ2")), x)
    assert bits(apply(curried, y), 4) == "0110"
    assert bits(apply(fn("UNCURRY", fn("CURRYSTEP", fn("PROJ1"))), PairName(x, y)), 4) == "1011"
    assert bits(apply(fn("PARTIAL", PairName(fn("PROJ1"), x)), y), 4) == "1011"
    both = apply(fn("PRODUCT", PairName(shift, ident)), PairName(x, y))
    left, right = both.unpair()
    assert bits(left, 4) == "0110" and bits(right, 4) == "0110"
    d = apply(fn("DIAGONAL"), x).unpair()
    assert bits(d[0], 4) == bits(d[1], 4) == "1011"


def test_unknown_index_diverges():
    out = apply(fn("ID"), NatName(3))
    assert out.nat() == 3
    bad = run(len(BUILTIN_TABLE) + 10**9, ZEROS, ZEROS)
    with pytest.raises(FuelExhausted):
        bad.bit(0, 100)
