"""kappa(x) = {U | x in U} and its left inverses.

A space is admissible when a point can be recovered from the Sierpinski-valued
data of its open neighbourhoods.  Left inverses are registered per space and
lifted to products and function spaces.
"""

from __future__ import annotations

from .names import DEFAULT_FUEL, FuelExhausted, LazyName, Name, NatName, PairName
from .spaces import (
    SIERP,
    Function,
    Open,
    Point,
    Space,
    register_capability,
    require,
)
from .t2vm import apply, compose_name, fn, register


class KinvCantorName(Name):
    """Bit n of the point is v once the neighbourhood data confirms {p | p(n) = v}."""

    def __init__(self, phi: Name):
        self.phi = phi
        self._bits: dict[int, int] = {}
        self._tests: dict[int, tuple[Name, Name]] = {}

    def _test(self, n):
        if n not in self._tests:
            ones = apply(self.phi, fn("BIT_IS", PairName(NatName(n), NatName(1))))
            zeros = apply(self.phi, fn("BIT_IS", PairName(NatName(n), NatName(0))))
            self._tests[n] = (ones, zeros)
        return self._tests[n]

    def bit(self, n, fuel=DEFAULT_FUEL):
        if n in self._bits:
            return self._bits[n]
        ones, zeros = self._test(n)
        f = 1
        while True:
            f = min(f, fuel)
            if ones.confirms(f):
                self._bits[n] = 1
                return 1
            if zeros.confirms(f):
                self._bits[n] = 0
                return 0
            if f == fuel:
                raise FuelExhausted(f"bit {n} undecided")
            f *= 2


def _kinv_nat(phi: Name) -> Name:
    tests: list[Name] = []

    def find(fuel):
        f = 1
        while True:
            f = min(f, fuel)
            while len(tests) < f:
                k = NatName(len(tests))
                tests.append(apply(phi, fn("PARTIAL", PairName(fn("NAT_EQ"), k))))
            for n in range(f):
                if tests[n].confirms(f):
                    return NatName(n)
            if f == fuel:
                raise FuelExhausted("no natural confirmed")
            f *= 2

    return LazyName(find)


@register("KINV_CANTOR")
def _kinv_cantor_builtin(oracle, phi):
    return KinvCantorName(phi)


@register("KINV_NAT")
def _kinv_nat_builtin(oracle, phi):
    return _kinv_nat(phi)


@register("KAPPA_INV_FN")
def _kappa_inv_fn(oracle, phi):
    return fn("KINV_FN_AT", PairName(oracle, phi))


@register("KINV_FN_AT")
def _kinv_fn_at(oracle, x):
    # f(x) from the neighbourhoods U -> Phi({f | f(x) in U})
    kinv, phi = oracle.unpair()
    return apply(kinv, compose_name(phi, fn("PRECOMP", fn("AT", x))))


def kinv_product_name(kx: Name, ky: Name) -> Name:
    split = compose_name(
        fn("PRODUCT", PairName(fn("PRECOMP", fn("PRECOMP", fn("PROJ1"))), fn("PRECOMP", fn("PRECOMP", fn("PROJ2"))))),
        fn("DIAGONAL"),
    )
    return compose_name(fn("PRODUCT", PairName(kx, ky)), split)


def _product_admissible(s: Space) -> Name | None:
    x, y = s.args
    try:
        return kinv_product_name(require(x, "admissible"), require(y, "admissible"))
    except LookupError:
        return None


def _function_admissible(s: Space) -> Name | None:
    try:
        return fn("KAPPA_INV_FN", require(s.args[1], "admissible"))
    except LookupError:
        return None


register_capability("Sierp", "admissible", lambda s: fn("AT", fn("ID")))
register_capability("Cantor", "admissible", lambda s: fn("KINV_CANTOR"))
register_capability("Nat", "admissible", lambda s: fn("KINV_NAT"))
register_capability("Product", "admissible", _product_admissible)
register_capability("Function", "admissible", _function_admissible)


# --- API -----------------------------------------------------------------------------

def kappa_space(x: Space) -> Space:
    return Function(Open(x), SIERP)


def kappa(x: Point) -> Point:
    return Point(kappa_space(x.space), fn("AT", x.name))


def kappa_inv(phi: Point, y: Space) -> Point:
    """The point whose neighbourhood data is phi, through y's registered left inverse."""
    return Point(y, apply(require(y, "admissible"), phi.name))


def kappa_inv_sierp(phi: Point) -> Point:
    """Evaluate the neighbourhood data at the open set {top}."""
    return Point(SIERP, apply(phi.name, fn("ID")))


def kappa_inv_function(kinv_y: Name) -> Name:
    """Left inverse for C(X, Y) built from one for Y."""
    return fn("KAPPA_INV_FN", kinv_y)


def reflect(f: Point) -> Point:
    """f pushed through kappa: Phi -> kinv_Y(U -> Phi(f^-1 U))."""
    x, y = f.space.args
    name = compose_name(require(y, "admissible"), fn("PRECOMP", fn("PRECOMP", f.name)))
    return Point(Function(kappa_space(x), y), name)


