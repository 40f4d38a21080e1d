"""Independent checks on computed pairs and curves.

Each check returns a :class:`Check`; :func:`verify_halphen` and
:func:`verify_lame` gather them into a :class:`VerificationReport` in a fixed
order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import halphen as hc
from . import lame as lc
from .corpus import reference_F
from .curve import SpectralCurve
from .errors import HalphenError, ZeroDenominatorError
from .poly import ZERO, SparsePoly
from .ring import Mode, derivatives, is_x_constant, reduce

MODE = Mode.EQUIANHARMONIC
z = SparsePoly.var("z")
w = SparsePoly.var("w")


# --------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: str = ""

    @classmethod
    def from_residual(cls, name: str, residual: SparsePoly, limit: int = 3) -> "Check":
        if not residual:
            return cls(name, True)
        return cls(name, False, _summary(residual, limit))


def _summary(p: SparsePoly, limit: int = 3) -> str:
    terms = list(p.items())
    head = SparsePoly.from_terms(t for t in list(p.terms())[:limit])
    more = f" + ... ({len(terms)} terms)" if len(terms) > limit else ""
    return head.format("text") + more


@dataclass
class VerificationReport:
    g: int
    operator: str = "halphen"
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> None:
        self.checks.append(check)

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "operator": self.operator,
            "g": self.g,
            "passed": self.passed,
            "checks": [{"name": c.name, "status": "pass" if c.passed else "fail", "residual": c.residual}
                       for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    def to_table(self) -> str:
        width = max([len(c.name) for c in self.checks] + [5])
        lines = [f"{self.operator} g = {self.g}", f"{'check'.ljust(width)}  status  residual"]
        for c in self.checks:
            lines.append(f"{c.name.ljust(width)}  {'pass' if c.passed else 'FAIL'}    {c.residual}".rstrip())
        return "\n".join(lines)


# --------------------------------------------------------------------------
# fractions in w modulo the curve


def reduce_w(p: SparsePoly, H: SparsePoly, F: SparsePoly) -> SparsePoly:
    """Rewrite w^3 -> H w + F until every term has w-degree <= 2."""
    rows = {k: c for (k,), c in p.collect("w").items()}
    while rows and max(rows) >= 3:
        k = max(rows)
        c = rows.pop(k)
        for power, part in ((k - 2, c * H), (k - 3, c * F)):
            if part:
                acc = rows.get(power, ZERO) + part
                if acc:
                    rows[power] = acc
                else:
                    rows.pop(power, None)
    out = ZERO
    for k, c in rows.items():
        out = out + c.mul_var("w", k)
    return out


@dataclass
class CurveFraction:
    numerator: SparsePoly
    denominator: SparsePoly
    curve: SpectralCurve

    def _red(self, p: SparsePoly) -> SparsePoly:
        return reduce_w(reduce(p, MODE), self.curve.H, self.curve.F)


@dataclass
class ChiData:
    Q1: SparsePoly
    Q2: SparsePoly
    chi: CurveFraction


def q1_q2(S: SparsePoly, Q: SparsePoly, g: int) -> tuple[SparsePoly, SparsePoly]:
    S0, S1, S2 = derivatives(S, 2, MODE)
    Q0, Q1, Q2, Q3 = derivatives(Q, 3, MODE)
    f0, f1 = derivatives(-(g * (g + 2)) * SparsePoly.var("P"), 1, MODE)
    q1 = S0 * S0 + Q0 * Q0 * f0 / 3 + Q0 * Q2 / 3 - Q1 * Q1 / 4
    q2 = ((S0 + Q1 / 2) * (S1 - Q2 / 6)
          + (f0 * Q1 / 3 - S2 - 2 * f0 * S0 / 3 + Q3 / 6) * Q0
          + (z + f1 / 6) * Q0 * Q0)
    return reduce(q1, MODE), reduce(q2, MODE)


def build_chi(pair: hc.SQPair, curve: SpectralCurve) -> ChiData:
    """chi = ((S + Q_x/2) w + Q2) / (Q w + Q1)."""
    S, Q, g = pair.S.value, pair.Q.value, pair.profile.g
    Q1, Q2 = q1_q2(S, Q, g)
    num = reduce((S + derivatives(Q, 1, MODE)[1] / 2) * w + Q2, MODE)
    den = reduce(Q * w + Q1, MODE)
    return ChiData(Q1, Q2, CurveFraction(num, den, curve))


def chi_residual(chi: ChiData, g: int) -> SparsePoly:
    """Numerator of chi'' + 3 chi chi' + f chi + chi^3 + f'/2 - z after multiplying by D^3."""
    frac = chi.chi
    red = frac._red
    N0, N1, N2 = derivatives(frac.numerator, 2, MODE)
    D0, D1, D2 = derivatives(frac.denominator, 2, MODE)
    if not red(D0):
        raise ZeroDenominatorError("denominator of chi vanishes modulo the curve")
    f0, f1 = derivatives(-(g * (g + 2)) * SparsePoly.var("P"), 1, MODE)
    A = red(N1 * D0 - N0 * D1)
    D0sq = red(D0 * D0)
    total = (red(red(N2 * D0 - N0 * D2) * D0) - 2 * red(D1 * A) + 3 * red(N0 * A)
             + red(f0 * red(N0 * D0sq)) + red(N0 * red(N0 * N0))
             + red((f1 / 2 - z) * red(D0sq * D0)))
    return red(total)


def check_chi_equation(chi: ChiData, g: int) -> Check:
    try:
        return Check.from_residual("chi-equation", chi_residual(chi, g))
    except ZeroDenominatorError as exc:
        return Check("chi-equation", False, str(exc))


# --------------------------------------------------------------------------
# halphen checks


def check_identities(pair: hc.SQPair) -> list[Check]:
    S, Q, g = pair.S.value, pair.Q.value, pair.profile.g
    return [
        Check.from_residual("first-ode", hc.first_ode_residual(S, Q, g)),
        Check.from_residual("second-ode", hc.second_ode_residual(S, Q, g)),
        Check.from_residual("s-equation", hc.apply_m(S, g).value),
    ]


def _xdep(p: SparsePoly) -> SparsePoly:
    """The part of p that depends on x."""
    return SparsePoly.from_terms((e, c) for e, c in p.terms() if e.get("P") or e.get("Pp"))


def check_constancy(pair: hc.SQPair) -> list[Check]:
    H = hc.raw_H(pair)
    F = hc.raw_F(pair)
    out = [Check.from_residual("H-constant", _xdep(H)), Check.from_residual("F-constant", _xdep(F))]
    out.append(Check.from_residual("H-zero", H))
    return out


def check_shape(curve: SpectralCurve) -> list[Check]:
    g, F = curve.g, curve.F
    deg = F.degree("z") if F else -1
    checks = [Check("degree", deg == g + 1, "" if deg == g + 1 else f"deg_z F = {deg}")]
    lead = F.leading_coefficient("z") if F else ZERO
    checks.append(Check("monic", lead == SparsePoly.const(1), "" if lead == 1 else f"leading {lead}"))
    if curve.pair is not None:
        bad = [f"{got} != {want}" for got, want in hc.degree_law(curve.pair) if got != want]
        checks.append(Check("degree-law", not bad, "; ".join(bad)))
    return checks


def check_closed_form(pair: hc.SQPair, F: SparsePoly, errata: bool = False) -> Check:
    """The closed form in the lowest ansatz coefficients against the F-expression."""
    try:
        closed = hc.closed_form_F(pair.sequence, pair.profile.g, errata=errata)
    except HalphenError as exc:
        return Check("closed-form", False, str(exc))
    return Check.from_residual("closed-form", closed - F)


def check_against_corpus(curve: SpectralCurve, errata: bool = False) -> Check:
    """Exact comparison with the reference table; raises NotInCorpusError off the table."""
    ref = reference_F(curve.g, errata=errata)
    return Check.from_residual("corpus", curve.F - ref)


def check_recursion(pair: hc.SQPair, errata: bool = False) -> Check:
    """The tabulated case I recursion annihilates the computed A-sequence."""
    g = pair.profile.g
    coeffs = lambda g_, r: hc.printed_recursion_coeffs(g_, r, errata=errata)  # noqa: E731
    res = hc.recursion_relation_residuals(pair.sequence, g, coeffs)
    bad = {r: v for r, v in res.items() if v}
    if not bad:
        return Check("printed-recursion", True)
    r = min(bad)
    return Check("printed-recursion", False, f"index {r}: {_summary(bad[r])}")


def verify_halphen(g: int, deep: bool = False, errata: bool = False) -> VerificationReport:
    """Identities, constancy, shape, closed form, corpus (if tabulated), chi (if deep).

    ``errata`` switches the printed reference data (table of curves, closed
    form) to their corrected versions.
    """
    profile = hc.classify(g)
    report = VerificationReport(g)
    pair = hc.solve_pair(g)
    report.extend(check_identities(pair))
    report.extend(check_constancy(pair))
    F_raw = hc.raw_F(pair)
    if profile.case == "I" or profile.M > 0:
        report.add(check_closed_form(pair, F_raw, errata))
    curve = hc.spectral_curve(g)
    report.extend(check_shape(curve))
    try:
        report.add(check_against_corpus(curve, errata))
    except KeyError:
        pass
    if deep:
        report.add(check_chi_equation(build_chi(curve.pair, curve), g))
    return report


# --------------------------------------------------------------------------
# lame checks


def check_lame_square(data: lc.LameData, sign: int = 1) -> Check:
    """The square expression is x-constant and equals sign * curve."""
    E = lc.square_expression(data.Q.value, data.g)
    name = "square-expression" if sign == 1 else "square-expression-negated"
    if not is_x_constant(E):
        return Check(name, False, "not x-constant: " + _summary(_xdep(E)))
    return Check.from_residual(name, E - sign * data.curve_rhs)


def check_lame_third_order(data: lc.LameData) -> Check:
    return Check.from_residual("third-order", lc.third_order_residual(data.Q.value, data.g))


def verify_lame(g: int, data: lc.LameData | None = None) -> VerificationReport:
    data = data or lc.lame_data(g)
    report = VerificationReport(g, "lame")
    report.add(check_lame_square(data))
    report.add(check_lame_square(data, sign=-1))
    report.add(check_lame_third_order(data))
    deg = data.curve_rhs.degree("z")
    report.add(Check("degree", deg == 2 * g + 1, "" if deg == 2 * g + 1 else f"deg_z = {deg}"))
    return report
