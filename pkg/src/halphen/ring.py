"""The differential ring Q[g2, g3][z, w][P, Pp] / (Pp^2 - 4 P^3 + g2 P + g3).

Elements are kept in canonical form: every term has ``Pp``-degree 0 or 1.
The x-derivation acts by ``P -> Pp`` and ``Pp -> 6 P^2 - g2/2``; the other
variables are x-constants.  In equianharmonic mode ``g2`` is identically
zero and never appears.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from functools import lru_cache

from .poly import ONE_KEY, SparsePoly, exponent, pack

GENERIC = "generic"
EQUIANHARMONIC = "equianharmonic"


class Mode(str, enum.Enum):
    GENERIC = GENERIC
    EQUIANHARMONIC = EQUIANHARMONIC


_P = SparsePoly.var("P")
_G2 = SparsePoly.var("g2")
_G3 = SparsePoly.var("g3")
_PP_UNIT = pack({"Pp": 1}) - ONE_KEY


@lru_cache(maxsize=None)
def pp_square(mode: Mode) -> SparsePoly:
    """The canonical value of Pp^2."""
    if Mode(mode) is Mode.EQUIANHARMONIC:
        return 4 * _P**3 - _G3
    return 4 * _P**3 - _G2 * _P - _G3


@lru_cache(maxsize=None)
def d_pp(mode: Mode) -> SparsePoly:
    """x-derivative of Pp."""
    if Mode(mode) is Mode.EQUIANHARMONIC:
        return 6 * _P**2
    return 6 * _P**2 - _G2 / 2


@lru_cache(maxsize=256)
def _pp_square_power(mode: Mode, k: int) -> SparsePoly:
    return pp_square(mode) ** k


def reduce(p: SparsePoly, mode: Mode = Mode.GENERIC) -> SparsePoly:
    """Rewrite Pp^2 -> 4P^3 - g2 P - g3 until every term has Pp-degree <= 1.

    In equianharmonic mode any ``g2`` present in ``p`` is set to zero as well.
    """
    mode = Mode(mode)
    if mode is Mode.EQUIANHARMONIC and any(exponent(k, "g2") for k in p.keys()):
        p = p.substitute("g2", 0)
    done: dict[int, Fraction] = {}
    pending: dict[int, dict[int, Fraction]] = {}
    for k, c in p._terms.items():
        e = exponent(k, "Pp")
        if e <= 1:
            done[k] = c
        else:
            half, odd = divmod(e, 2)
            pending.setdefault(half, {})[k - (e - odd) * _PP_UNIT] = c
    out = SparsePoly._raw(done)
    for half, rest in pending.items():
        out = out + SparsePoly._raw(rest) * _pp_square_power(mode, half)
    return out


def d_dx(p: SparsePoly, mode: Mode = Mode.GENERIC) -> SparsePoly:
    """x-derivative of a canonical element, returned canonical."""
    mode = Mode(mode)
    dP = p.diff("P")
    dPp = p.diff("Pp")
    out = dP.mul_var("Pp")
    if dPp:
        out = out + dPp * d_pp(mode)
    return reduce(out, mode)


def d_dx_n(p: SparsePoly, n: int, mode: Mode = Mode.GENERIC) -> SparsePoly:
    if n < 0:
        raise ValueError("derivative order must be nonnegative")
    for _ in range(n):
        p = d_dx(p, mode)
    return p


def derivatives(p: SparsePoly, n: int, mode: Mode = Mode.GENERIC) -> list[SparsePoly]:
    """[p, p', ..., p^(n)]."""
    out = [p]
    for _ in range(n):
        out.append(d_dx(out[-1], mode))
    return out


def is_x_constant(p: SparsePoly) -> bool:
    """True iff the canonical form is free of P and Pp.

    For canonical input this is the same as being annihilated by d/dx: the
    functions 1, P, P^2, ..., Pp, P Pp, ... are linearly independent over the
    constants and d/dx has no nonconstant kernel on them.
    """
    return not any(exponent(k, "P") or exponent(k, "Pp") for k in p.keys())


def as_constant(p: SparsePoly) -> SparsePoly:
    """Return ``p`` as a polynomial in z, w, g2, g3; raise if it depends on x."""
    if not is_x_constant(p):
        raise ValueError("element is not x-constant")
    return p


class WeierstrassElement:
    """A canonical element of the ring together with its mode.

    Arithmetic keeps the result canonical.  Mixing modes is an error.
    """

    __slots__ = ("value", "mode")

    def __init__(self, value: SparsePoly | int | Fraction, mode: Mode = Mode.GENERIC):
        if not isinstance(value, SparsePoly):
            value = SparsePoly.const(value)
        self.mode = Mode(mode)
        self.value = reduce(value, self.mode)

    @classmethod
    def _wrap(cls, value: SparsePoly, mode: Mode) -> "WeierstrassElement":
        e = cls.__new__(cls)
        e.value = value
        e.mode = mode
        return e

    def _other(self, other) -> SparsePoly:
        if isinstance(other, WeierstrassElement):
            if other.mode is not self.mode:
                raise ValueError("cannot combine elements of different modes")
            return other.value
        if isinstance(other, SparsePoly):
            return reduce(other, self.mode)
        return SparsePoly.const(other)

    def __add__(self, other):
        return self._wrap(self.value + self._other(other), self.mode)

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._other(other), self.mode)

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.value, self.mode)

    def __neg__(self):
        return self._wrap(-self.value, self.mode)

    def __mul__(self, other):
        return self._wrap(reduce(self.value * self._other(other), self.mode), self.mode)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return self._wrap(self.value / c, self.mode)

    def __pow__(self, n: int):
        out = WeierstrassElement._wrap(SparsePoly.const(1), self.mode)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, WeierstrassElement):
            return self.mode is other.mode and self.value == other.value
        try:
            return self.value == self._other(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.mode, self.value))

    def __bool__(self):
        return bool(self.value)

    def d(self, n: int = 1) -> "WeierstrassElement":
        return self._wrap(d_dx_n(self.value, n, self.mode), self.mode)

    def is_x_constant(self) -> bool:
        return is_x_constant(self.value)

    def pp_degree(self) -> int:
        return max((exponent(k, "Pp") for k in self.value.keys()), default=0)

    def to_json_dict(self) -> dict:
        return {"mode": self.mode.value, "terms": self.value.to_json_terms()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "WeierstrassElement":
        return cls(SparsePoly.from_json_terms(data["terms"]), Mode(data["mode"]))

    def __repr__(self):
        return f"WeierstrassElement({self.value.format()!r}, {self.mode.value})"
