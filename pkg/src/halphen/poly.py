"""Sparse multivariate polynomials with exact rational coefficients.

The variable alphabet is fixed to ``z, w, g2, g3, P, Pp`` (``P`` stands for
the Weierstrass function, ``Pp`` for its derivative).  Only ``z`` may carry
negative exponents.  A monomial is packed into a single integer, 16 bits per
variable, so that multiplying monomials is one integer addition.
"""

from __future__ import annotations

import json
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping

VARIABLES = ("z", "w", "g2", "g3", "P", "Pp")

_BITS = 16
_MASK = (1 << _BITS) - 1
_ZBIAS = 1 << (_BITS - 1)
_SHIFT = {v: _BITS * i for i, v in enumerate(VARIABLES)}
_UNIT = {v: 1 << _SHIFT[v] for v in VARIABLES}
ONE_KEY = _ZBIAS  # packed key of the empty monomial


def pack(exponents: Mapping[str, int]) -> int:
    key = ONE_KEY
    for v, e in exponents.items():
        if v not in _SHIFT:
            raise KeyError(f"unknown variable {v!r}")
        if e < 0 and v != "z":
            raise ValueError(f"negative exponent for {v}")
        if not -_ZBIAS <= e < _ZBIAS:
            raise OverflowError(f"exponent {e} out of range")
        key += e << _SHIFT[v]
    return key


def unpack(key: int) -> tuple[int, ...]:
    """Exponent tuple in alphabet order."""
    out = []
    for i, v in enumerate(VARIABLES):
        e = (key >> (_BITS * i)) & _MASK
        out.append(e - _ZBIAS if v == "z" else e)
    return tuple(out)


def exponent(key: int, v: str) -> int:
    e = (key >> _SHIFT[v]) & _MASK
    return e - _ZBIAS if v == "z" else e


def _mul_keys(a: int, b: int) -> int:
    return a + b - _ZBIAS


def _order_key(key: int):
    exps = unpack(key)
    return (sum(exps), exps)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class SparsePoly:
    """Immutable sparse polynomial; equality is equality of term maps."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        # callers inside the module pass cleaned dicts; public callers go through
        # from_terms / const / var
        self._terms: dict[int, Fraction] = dict(terms) if terms else {}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, Fraction]) -> "SparsePoly":
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c) -> "SparsePoly":
        c = _as_fraction(c)
        return cls._raw({ONE_KEY: c} if c else {})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "SparsePoly":
        return cls._raw({pack({name: power}): Fraction(1)})

    @classmethod
    def monomial(cls, coeff, **exponents: int) -> "SparsePoly":
        c = _as_fraction(coeff)
        return cls._raw({pack(exponents): c} if c else {})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[Mapping[str, int], object]]) -> "SparsePoly":
        acc: dict[int, Fraction] = {}
        for exps, c in terms:
            k = pack({v: e for v, e in exps.items() if e})
            acc[k] = acc.get(k, 0) + _as_fraction(c)
        return cls._raw({k: c for k, c in acc.items() if c})

    # -- basic protocol ---------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == SparsePoly.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """(packed key, coefficient) pairs in descending graded-lex order."""
        for k in sorted(self._terms, key=_order_key, reverse=True):
            yield k, self._terms[k]

    def terms(self) -> Iterator[tuple[dict[str, int], Fraction]]:
        for k, c in self.items():
            yield {v: e for v, e in zip(VARIABLES, unpack(k)) if e}, c

    def keys(self):
        return self._terms.keys()

    def coeff_of(self, **exponents: int) -> Fraction:
        return self._terms.get(pack(exponents), Fraction(0))

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and ONE_KEY in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get(ONE_KEY, Fraction(0))

    def variables(self) -> set[str]:
        out = set()
        for k in self._terms:
            for v, e in zip(VARIABLES, unpack(k)):
                if e:
                    out.add(v)
        return out

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            return other
        return SparsePoly.const(other)

    def __add__(self, other) -> "SparsePoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            big, small = other._terms, self._terms
        else:
            big, small = self._terms, other._terms
        out = dict(big)
        for k, c in small.items():
            s = out.get(k)
            if s is None:
                out[k] = c
            else:
                s += c
                if s:
                    out[k] = s
                else:
                    del out[k]
        return SparsePoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other) -> "SparsePoly":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SparsePoly":
        return (-self) + other

    def scale(self, c) -> "SparsePoly":
        c = _as_fraction(c)
        if not c:
            return SparsePoly()
        return SparsePoly._raw({k: v * c for k, v in self._terms.items()})

    def __mul__(self, other) -> "SparsePoly":
        if not isinstance(other, SparsePoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._terms, other._terms
        if not a or not b:
            return SparsePoly()
        if len(a) < len(b):
            a, b = b, a
        out: dict[int, Fraction] = {}
        get = out.get
        bias = _ZBIAS
        for kb, cb in b.items():
            for ka, ca in a.items():
                k = ka + kb - bias
                out[k] = get(k, 0) + ca * cb
        return SparsePoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SparsePoly":
        if not isinstance(n, int) or n < 0:
            if isinstance(n, int) and len(self._terms) == 1:
                (k, c), = self._terms.items()
                if all(e == 0 for v, e in zip(VARIABLES, unpack(k)) if v != "z"):
                    return SparsePoly.monomial((1 / c) ** -n, z=exponent(k, "z") * n)
            raise ValueError("only nonnegative integer powers (or negative powers of a z-monomial)")
        result = SparsePoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, c) -> "SparsePoly":
        if isinstance(c, SparsePoly):
            if len(c._terms) != 1:
                raise ZeroDivisionError("division only by a single term") if not c._terms else \
                    ValueError("division only by a single term")
            (k, cc), = c._terms.items()
            return self.divide_by_term(k, cc)
        c = _as_fraction(c)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def divide_by_term(self, key: int, coeff: Fraction) -> "SparsePoly":
        """Exact division by a single term; raises ValueError if inexact."""
        div = unpack(key)
        inv = 1 / coeff
        out = {}
        for k, c in self._terms.items():
            e = unpack(k)
            q = tuple(a - b for a, b in zip(e, div))
            if any(x < 0 for x in q[1:]):
                raise ValueError("inexact division")
            out[pack(dict(zip(VARIABLES, q)))] = c * inv
        return SparsePoly._raw(out)

    # -- calculus and structure ------------------------------------------

    def diff(self, v: str) -> "SparsePoly":
        """Formal partial derivative (power rule, Laurent-aware in z)."""
        unit = _UNIT[v]
        out = {}
        for k, c in self._terms.items():
            e = exponent(k, v)
            if e:
                out[k - unit] = c * e
        return SparsePoly._raw(out)

    def substitute_z(self, value) -> "SparsePoly":
        value = _as_fraction(value)
        out: dict[int, Fraction] = {}
        unit = _UNIT["z"]
        for k, c in self._terms.items():
            e = exponent(k, "z")
            if e < 0 and value == 0:
                raise ZeroDivisionError("z = 0 substituted into a negative power of z")
            nk = k - e * unit
            out[nk] = out.get(nk, 0) + c * value**e
        return SparsePoly._raw({k: c for k, c in out.items() if c})

    def substitute(self, v: str, value: "SparsePoly | int | Fraction") -> "SparsePoly":
        """Replace variable ``v`` by a polynomial (nonnegative powers only unless v is z)."""
        value = self._coerce(value)
        unit = _UNIT[v]
        groups: dict[int, dict[int, Fraction]] = {}
        for k, c in self._terms.items():
            e = exponent(k, v)
            groups.setdefault(e, {})[k - e * unit] = c
        out = SparsePoly()
        powers: dict[int, SparsePoly] = {}
        for e, rest in groups.items():
            if e not in powers:
                powers[e] = value ** e if e >= 0 else (value ** -1) ** (-e)
            out = out + SparsePoly._raw(rest) * powers[e]
        return out

    def degree(self, v: str) -> int:
        if not self._terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(exponent(k, v) for k in self._terms)

    def low_degree(self, v: str) -> int:
        if not self._terms:
            raise ValueError("low degree of the zero polynomial is undefined")
        return min(exponent(k, v) for k in self._terms)

    def coefficient(self, v: str, power: int) -> "SparsePoly":
        """Coefficient polynomial of ``v**power``."""
        unit = _UNIT[v]
        return SparsePoly._raw({k - power * unit: c for k, c in self._terms.items()
                                if exponent(k, v) == power})

    def leading_coefficient(self, v: str) -> "SparsePoly":
        return self.coefficient(v, self.degree(v))

    def collect(self, *vs: str) -> dict[tuple[int, ...], "SparsePoly"]:
        """Group by the exponents of ``vs``; values are free of ``vs``."""
        groups: dict[tuple[int, ...], dict[int, Fraction]] = {}
        for k, c in self._terms.items():
            es = tuple(exponent(k, v) for v in vs)
            rest = k - sum(e * _UNIT[v] for e, v in zip(es, vs))
            groups.setdefault(es, {})[rest] = c
        return {es: SparsePoly._raw(t) for es, t in groups.items()}

    def mul_var(self, v: str, power: int = 1) -> "SparsePoly":
        """Multiply by ``v**power`` (shifts keys; no coefficient arithmetic)."""
        if power < 0 and v != "z":
            raise ValueError("negative power")
        shift = power * _UNIT[v]
        return SparsePoly._raw({k + shift: c for k, c in self._terms.items()})

    def max_denominator_lcm(self) -> int:
        from math import lcm
        d = 1
        for c in self._terms.values():
            d = lcm(d, c.denominator)
        return d

    # -- serialization ----------------------------------------------------

    def to_json_terms(self) -> list[dict]:
        out = []
        for exps, c in self.terms():
            out.append({"exponents": exps, "numerator": str(c.numerator),
                        "denominator": str(c.denominator)})
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_terms(), sort_keys=True)

    @classmethod
    def from_json_terms(cls, data: list[dict]) -> "SparsePoly":
        return cls.from_terms(
            (t["exponents"], Fraction(int(t["numerator"]), int(t["denominator"])))
            for t in data)

    @classmethod
    def from_json(cls, text: str) -> "SparsePoly":
        return cls.from_json_terms(json.loads(text))

    # -- printing ---------------------------------------------------------

    def format(self, style: str = "text") -> str:
        """Render as ``text`` (``3*g3*z^2``) or ``latex`` (``3 g_3 z^{2}``)."""
        if not self._terms:
            return "0"
        pieces = []
        for exps, c in self.terms():
            pieces.append((c < 0, _format_term(exps, abs(c), style)))
        s = ("-" if pieces[0][0] else "") + pieces[0][1]
        for neg, body in pieces[1:]:
            s += (" - " if neg else " + ") + body
        return s

    def __str__(self) -> str:
        return self.format("text")

    def __repr__(self) -> str:
        return f"SparsePoly({self.format('text')!r})"


_LATEX_NAMES = {"z": "z", "w": "w", "g2": "g_2", "g3": "g_3", "P": r"\wp", "Pp": r"\wp'"}
# printing order puts the invariants first, matching how the curves are usually written
_PRINT_ORDER = ("g2", "g3", "P", "Pp", "w", "z")


def _format_term(exps: dict[str, int], c: Fraction, style: str) -> str:
    factors = []
    for v in _PRINT_ORDER:
        e = exps.get(v, 0)
        if not e:
            continue
        if style == "latex":
            name = _LATEX_NAMES[v]
            factors.append(name if e == 1 else f"{name}^{{{e}}}" if (e < 0 or e > 9) else f"{name}^{e}")
        else:
            factors.append(v if e == 1 else f"{v}^{e}")
    if style == "latex":
        if c.denominator != 1:
            head = rf"\frac{{{c.numerator}}}{{{c.denominator}}}"
        else:
            head = "" if (c == 1 and factors) else str(c.numerator)
        return " ".join(([head] if head else []) + factors)
    head = "" if (c == 1 and factors) else str(c)
    return "*".join(([head] if head else []) + factors)


ZERO = SparsePoly()
ONE = SparsePoly.const(1)
z = SparsePoly.var("z")
w = SparsePoly.var("w")
g2 = SparsePoly.var("g2")
g3 = SparsePoly.var("g3")
P = SparsePoly.var("P")
Pp = SparsePoly.var("Pp")
