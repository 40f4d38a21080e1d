"""Spectral curves as values, with JSON, text and LaTeX emitters."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Any

from .poly import ZERO, SparsePoly

_JSON_VARS = {"halphen": ("z", "g3"), "lame": ("z", "g2", "g3")}


@dataclass
class SpectralCurve:
    """``w^power = H w + F`` for a given operator and genus."""

    g: int
    F: SparsePoly
    H: SparsePoly = field(default_factory=SparsePoly)
    case: str | None = None
    operator: str = "halphen"
    normalized: bool = True
    pair: Any = field(default=None, compare=False, repr=False)

    @property
    def power(self) -> int:
        return 3 if self.operator == "halphen" else 2

    # -- JSON ------------------------------------------------------------

    def to_dict(self) -> dict:
        names = _JSON_VARS[self.operator]
        out: dict[str, Any] = {"operator": self.operator, "g": self.g}
        if self.operator == "halphen":
            out["case"] = self.case
            out["H"] = "0" if not self.H else _json_terms(self.H, names)
        out["F"] = _json_terms(self.F, names)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "SpectralCurve":
        op = data["operator"]
        names = _JSON_VARS[op]
        H = data.get("H", "0")
        return cls(
            g=data["g"],
            F=_parse_terms(data["F"], names),
            H=ZERO if H == "0" else _parse_terms(H, names),
            case=data.get("case"),
            operator=op,
        )

    @classmethod
    def from_json(cls, text: str) -> "SpectralCurve":
        return cls.from_dict(json.loads(text))

    # -- human-readable ----------------------------------------------------

    def to_text(self) -> str:
        """``w^3 = ...`` with a common denominator pulled out when needed."""
        return f"w^{self.power} = {_rhs(self, 'text')}"

    def to_latex(self) -> str:
        return f"w^{self.power} = {_rhs(self, 'latex')}"


def _sorted_terms(p: SparsePoly):
    # descending powers of z; ties broken by the deterministic term order
    terms = list(p.terms())
    return sorted(terms, key=lambda t: -t[0].get("z", 0))


def _json_terms(p: SparsePoly, names) -> list[dict]:
    rows = []
    for exps, c in _sorted_terms(p):
        extra = set(exps) - set(names)
        if extra:
            raise ValueError(f"curve term carries unexpected variables {sorted(extra)}")
        row = {v: exps.get(v, 0) for v in names}
        row["coeff"] = str(c)
        rows.append(row)
    return rows


def _parse_terms(rows, names) -> SparsePoly:
    return SparsePoly.from_terms(({v: row[v] for v in names}, Fraction(row["coeff"])) for row in rows)


def _format_sorted(p: SparsePoly, style: str) -> str:
    pieces = []
    for exps, c in _sorted_terms(p):
        body = SparsePoly.monomial(abs(c), **exps).format(style)
        pieces.append((c < 0, body))
    if not pieces:
        return "0"
    s = ("-" if pieces[0][0] else "") + pieces[0][1]
    for neg, body in pieces[1:]:
        s += (" - " if neg else " + ") + body
    return s


def _rhs(curve: SpectralCurve, style: str) -> str:
    rhs = curve.F
    if curve.H:
        rhs = curve.H * SparsePoly.var("w") + curve.F
    if style == "text":
        d = 1
        for _, c in rhs.items():
            d = lcm(d, c.denominator)
        if d > 1:
            return f"({_format_sorted(rhs * d, style)})/{d}"
    return _format_sorted(rhs, style)
