"""Command-line front end.

Every command prints one JSON object on stdout.  Exit status: 0 when the
result is confirmed (or the command otherwise succeeded), 2 when it stays
unknown within the fuel, 1 for usage and configuration errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import compact, overt, reals, sets
from .names import DEFAULT_FUEL, FuelExhausted, Name, NatName, parse_literal, word
from .spaces import CANTOR, NAT, REAL, DescriptorMismatch, Open, Point, sierp_observe
from .t2vm import MachineName, apply, assemble, fn, program_fn

EXIT_OK, EXIT_USAGE, EXIT_UNKNOWN = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _count(text: str) -> int:
    """Non-negative integers, also written as 1e6."""
    try:
        v = int(text) if re.fullmatch(r"\d+", text) else float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a count: {text!r}") from None
    if v < 0 or v != int(v):
        raise argparse.ArgumentTypeError(f"not a count: {text!r}")
    return int(v)


# --- function literals ---------------------------------------------------------------

_FN = re.compile(
    r'''^\s*(?:
        builtin\s+(?P<builtin>[A-Z_0-9]+)
      | program\s+"(?P<program>[^"]+)"
      | cylinders\s+"(?P<cylinders>[01,\s]*)"
      | bit\s+(?P<pos>\d+)\s+is\s+(?P<val>[01])
    )(?:\s+with\s+(?P<oracle>.+?))?\s*$''',
    re.VERBOSE,
)


def parse_function_literal(text: str) -> Name:
    """`builtin NAME`, `program "file"` (either optionally `with <literal>`),
    `cylinders "w1,w2"`, `bit N is V`, or a plain name literal read as a function name."""
    m = _FN.match(text)
    if m is None:
        try:
            return parse_literal(text)
        except ValueError:
            raise UsageError(f"not a function literal: {text!r}") from None
    oracle = parse_literal(m["oracle"]) if m["oracle"] else None
    if m["builtin"]:
        try:
            return fn(m["builtin"]) if oracle is None else fn(m["builtin"], oracle)
        except KeyError:
            raise UsageError(f"unknown builtin {m['builtin']!r}") from None
    if m["program"]:
        prog = assemble(Path(m["program"]).read_text())
        return program_fn(prog) if oracle is None else program_fn(prog, oracle)
    if oracle is not None:
        raise UsageError("only builtins and programs take an oracle")
    if m["pos"] is not None:
        return sets.bit_open(int(m["pos"]), int(m["val"])).name
    words = [w.strip() for w in m["cylinders"].split(",") if w.strip()]
    return sets.cylinder_open(words).name


def _literal(text: str) -> Name:
    try:
        return parse_literal(text)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational: {text!r}") from None


def _status(confirmed: bool) -> str:
    return "Confirmed" if confirmed else "Unknown"


def _decimal(q: Fraction, digits: int) -> str:
    """q rounded to `digits` decimal places, halves away from zero."""
    scale = 10**digits
    m = (abs(q) * scale * 2 + 1) // 2
    sign = "-" if q < 0 and m else ""
    whole, frac = divmod(int(m), scale)
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def _bits_for_digits(digits: int) -> int:
    # 2^-n <= 10^-d / 2, so the approximation error and the rounding share the bound
    return (2 * 10**digits - 1).bit_length()


# --- commands ------------------------------------------------------------------------

def cmd_t2vm_run(a) -> tuple[dict, int]:
    prog = assemble(Path(a.file).read_text())
    out = MachineName(prog, _literal(a.oracle), _literal(a.input))
    out.run_until(a.bits, a.fuel)
    ins = out.instrument()
    bits = "".join(map(str, out.out[: a.bits]))
    done = len(bits) == a.bits
    return {
        "status": _status(done),
        "bits": bits,
        "steps": out.steps,
        "max_input": ins.max_input,
        "max_oracle": ins.max_oracle,
    }, EXIT_OK if done else EXIT_UNKNOWN


def cmd_spaces_eval(a) -> tuple[dict, int]:
    out = apply(parse_function_literal(a.fn), _literal(a.arg))
    bits = []
    try:
        for i in range(a.bits):
            bits.append(out.bit(i, a.fuel))
    except FuelExhausted:
        pass
    done = len(bits) == a.bits
    return {"status": _status(done), "bits": "".join(map(str, bits))}, EXIT_OK if done else EXIT_UNKNOWN


def _require_cantor(a) -> None:
    if a.space != "cantor":
        raise UsageError(f"only --space cantor is supported here, not {a.space!r}")


def cmd_sets_member(a) -> tuple[dict, int]:
    _require_cantor(a)
    u = Point(Open(CANTOR), parse_function_literal(a.open))
    s = sets.member(Point(CANTOR, _literal(a.point)), u)
    ok = sierp_observe(s, a.fuel).confirmed
    return {"status": _status(ok)}, EXIT_OK if ok else EXIT_UNKNOWN


def _cover(a) -> Point:
    if a.example:
        if a.cover:
            raise UsageError("give either --example or --cover")
        try:
            return compact.example_cover(a.example)
        except KeyError as e:
            raise UsageError(str(e)) from None
    if not a.cover:
        raise UsageError("give --example or --cover")
    from .spaces import sequence

    opens = [parse_function_literal(t) for t in a.cover.split(";")]
    empty = sets.empty_open(CANTOR).name
    return sequence(lambda n: opens[n] if n < len(opens) else empty, Open(CANTOR))


def cmd_compact_isfull(a) -> tuple[dict, int]:
    _require_cantor(a)
    if a.open:
        if a.example or a.cover:
            raise UsageError("give one of --open, --example or --cover")
        u = Point(Open(CANTOR), parse_function_literal(a.open))
    else:
        u = sets.countable_union(_cover(a))
    k = compact.cantor_as_compact(a.depth)
    fuel = compact.confirmation_fuel(compact.is_full(u, k).name, a.fuel)
    if fuel is None:
        return {"status": "Unknown", "depth": None, "fuel": a.fuel}, EXIT_UNKNOWN
    depth = compact.search_depth(u, fuel, a.depth)
    return {"status": "Confirmed", "depth": depth, "fuel": fuel}, EXIT_OK


def cmd_compact_subcover(a) -> tuple[dict, int]:
    _require_cantor(a)
    try:
        sub = compact.finite_subcover(_cover(a), compact.cantor_as_compact(a.depth), a.fuel)
    except FuelExhausted:
        return {"status": "Unknown", "N": None, "fuel": a.fuel}, EXIT_UNKNOWN
    return {"status": "Confirmed", "N": sub.n, "fuel": sub.fuel}, EXIT_OK


def cmd_overt_intersects(a) -> tuple[dict, int]:
    _require_cantor(a)
    u = Point(Open(CANTOR), parse_function_literal(a.open))
    if a.points is None:
        v = overt.whole_overt(CANTOR)
    else:
        pts = [Point(CANTOR, word(w.strip())) for w in a.points.split(",") if w.strip()]
        v = overt.finite_overt(pts, CANTOR)
    fuel = compact.confirmation_fuel(overt.intersects(v, u).name, a.fuel)
    if fuel is None:
        return {"status": "Unknown", "fuel": a.fuel}, EXIT_UNKNOWN
    return {"status": "Confirmed", "fuel": fuel}, EXIT_OK


def _sep_point(space: str, text: str) -> Point:
    if space == "real":
        return reals.real_from_rational(_rational(text))
    if space == "nat":
        return Point(NAT, NatName(int(text)) if text.strip().isdigit() else _literal(text))
    if space == "cantor":
        return Point(CANTOR, _literal(text))
    raise UsageError(f"unsupported space {space!r}")


def cmd_sep(a) -> tuple[dict, int]:
    from .separation import eq, neq

    x, y = _sep_point(a.space, a.x), _sep_point(a.space, a.y)
    try:
        s = (neq if a.relation == "neq" else eq)(x, y)
    except LookupError as e:
        raise UsageError(str(e)) from None
    ok = sierp_observe(s, a.fuel).confirmed
    return {"status": _status(ok)}, EXIT_OK if ok else EXIT_UNKNOWN


def _precision(a) -> tuple[int, str, int]:
    """(bits n, error text, decimal digits) from --digits or --prec."""
    if a.digits is not None and a.prec is not None:
        raise UsageError("give either --digits or --prec")
    if a.digits is not None:
        return _bits_for_digits(a.digits), f"1e-{a.digits}", a.digits
    n = 20 if a.prec is None else a.prec
    # enough digits that the decimal rounding stays below the stated bound
    return n + 1, f"2^-{n}", len(str(2 ** (n + 1)))


def _approximate(x: Point, a) -> tuple[dict, int]:
    n, bound, digits = _precision(a)
    try:
        q = reals.real_approx(x, n, a.fuel)
    except FuelExhausted:
        return {"status": "Unknown", "bits": n}, EXIT_UNKNOWN
    return {
        "status": "Confirmed",
        "value": f"{_decimal(q, digits)} ± {bound}",
        "approximation": str(q),
        "bits": n,
    }, EXIT_OK


def cmd_real_max(a) -> tuple[dict, int]:
    qs = [_rational(t) for t in a.set.split(",") if t.strip()]
    if not qs:
        raise UsageError("--set needs at least one rational")
    k, v = reals.finite_real_set(qs)
    return _approximate(reals.real_max(k, v), a)


def cmd_real_eval(a) -> tuple[dict, int]:
    try:
        f = reals.expr_function(a.expr)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if (a.sup_on is None) == (a.at is None):
        raise UsageError("give exactly one of --sup-on unit or --at <rational>")
    if a.at is not None:
        x = Point(REAL, apply(f.name, reals.real_from_rational(_rational(a.at)).name))
    else:
        x = reals.sup_on_unit(f, a.depth or reals.UNIT_DEPTH)
    return _approximate(x, a)


def cmd_selftest(a) -> tuple[dict, int]:
    from .acceptance import run_all

    only = None
    if a.only:
        try:
            only = {int(t) for t in a.only.split(",")}
        except ValueError:
            raise UsageError(f"bad --only {a.only!r}") from None
    results = run_all(only, log=lambda r: print(r.line(), file=sys.stderr))
    ok = all(r.passed for r in results)
    body = {
        "status": "Confirmed" if ok else "Failed",
        "criteria": [{"id": r.number, "passed": r.passed, "detail": r.detail} for r in results],
    }
    return body, EXIT_OK if ok else EXIT_UNKNOWN


# --- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--fuel", type=_count, default=DEFAULT_FUEL)
    common.add_argument("--depth", type=_count, default=None)
    common.add_argument("--bits", type=_count, default=32)
    common.add_argument("--json", action="store_true", help="accepted for scripts; output is always JSON")

    p = _Parser(prog="reprspace", description="Computable topology over Baire-space names.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t2 = sub.add_parser("t2vm").add_subparsers(dest="action", required=True, parser_class=_Parser)
    r = t2.add_parser("run", parents=[common], help="run an assembly program")
    r.add_argument("file")
    r.add_argument("--oracle", default="zeros")
    r.add_argument("--input", default="zeros")
    r.set_defaults(handler=cmd_t2vm_run)

    sp = sub.add_parser("spaces").add_subparsers(dest="action", required=True, parser_class=_Parser)
    e = sp.add_parser("eval", parents=[common], help="apply a function name to a point")
    e.add_argument("--fn", required=True)
    e.add_argument("--arg", required=True)
    e.set_defaults(handler=cmd_spaces_eval)

    st = sub.add_parser("sets").add_subparsers(dest="action", required=True, parser_class=_Parser)
    m = st.add_parser("member", parents=[common], help="observe membership in an open set")
    m.add_argument("--space", default="cantor")
    m.add_argument("--open", required=True)
    m.add_argument("--point", required=True)
    m.set_defaults(handler=cmd_sets_member)

    cp = sub.add_parser("compact").add_subparsers(dest="action", required=True, parser_class=_Parser)
    for action, handler in (("isfull", cmd_compact_isfull), ("subcover", cmd_compact_subcover)):
        c = cp.add_parser(action, parents=[common])
        c.add_argument("--space", default="cantor")
        c.add_argument("--example", choices=compact.EXAMPLE_COVERS)
        c.add_argument("--cover", help="function literals separated by ';'")
        if action == "isfull":
            c.add_argument("--open")
        c.set_defaults(handler=handler)

    ov = sub.add_parser("overt").add_subparsers(dest="action", required=True, parser_class=_Parser)
    i = ov.add_parser("intersects", parents=[common])
    i.add_argument("--space", default="cantor")
    i.add_argument("--open", required=True)
    i.add_argument("--points", help="finite words, each followed by zeros; default is the whole space")
    i.set_defaults(handler=cmd_overt_intersects)

    sep = sub.add_parser("sep").add_subparsers(dest="relation", required=True, parser_class=_Parser)
    for rel in ("neq", "eq"):
        s = sep.add_parser(rel, parents=[common])
        s.add_argument("--space", choices=("real", "nat", "cantor"), required=True)
        s.add_argument("--x", required=True)
        s.add_argument("--y", required=True)
        s.set_defaults(handler=cmd_sep)

    rl = sub.add_parser("real").add_subparsers(dest="action", required=True, parser_class=_Parser)
    mx = rl.add_parser("max", parents=[common])
    mx.add_argument("--set", required=True)
    ev = rl.add_parser("eval", parents=[common])
    ev.add_argument("--expr", required=True)
    ev.add_argument("--sup-on", choices=("unit",))
    ev.add_argument("--at")
    for q, handler in ((mx, cmd_real_max), (ev, cmd_real_eval)):
        g = q.add_mutually_exclusive_group()
        g.add_argument("--digits", type=_count)
        g.add_argument("--prec", type=_count)
        q.set_defaults(handler=handler)

    t = sub.add_parser("selftest", parents=[common])
    t.add_argument("--only", help="comma-separated criterion numbers")
    t.set_defaults(handler=cmd_selftest)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.depth is None and args.command == "compact":
        args.depth = compact.DEFAULT_DEPTH
    try:
        body, code = args.handler(args)
    except (UsageError, DescriptorMismatch, OSError, ValueError) as e:
        print(f"reprspace: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(json.dumps(body, sort_keys=True, ensure_ascii=False))
    return code


if __name__ == "__main__":
    sys.exit(main())
