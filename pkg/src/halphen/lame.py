"""The Lamé operator -d^2 + g(g+1) P and its hyperelliptic spectral curve.

The product of eigenfunctions is ``Q = sum_s A_s(z) P^s`` with ``A_g = 1``;
the curve is ``w^2 = (4 A_0^2 z - A_0 (4 A_2 g3 + A_1 g2) + A_1^2 g3) / 4``.
Everything here runs in the generic ring (symbolic g2).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import SpectralCurve
from .errors import InvalidGenusError
from .poly import ZERO, SparsePoly
from .ring import Mode, WeierstrassElement, derivatives, is_x_constant, reduce

MODE = Mode.GENERIC

z = SparsePoly.var("z")
g2 = SparsePoly.var("g2")
g3 = SparsePoly.var("g3")
P = SparsePoly.var("P")


def _check(g: int) -> None:
    if not isinstance(g, int) or isinstance(g, bool) or g < 1:
        raise InvalidGenusError(f"genus must be a positive integer, got {g!r}")


def lame_coefficients(g: int) -> list[SparsePoly]:
    """[A_0, ..., A_g] from the downward recursion with A_g = 1."""
    _check(g)
    A = {g: SparsePoly.const(1)}
    get = lambda k: A.get(k, ZERO)  # noqa: E731
    for s in range(g - 1, -1, -1):
        num = (s + 1) * (8 * get(s + 1) * z
                         - get(s + 2) * g2 * ((s + 2) * (2 * s + 3))
                         - 2 * get(s + 3) * g3 * ((s + 2) * (s + 3)))
        A[s] = num / (4 * (2 * s + 1) * (g * g + g - s * (s + 1)))
    return [A[s] for s in range(g + 1)]


def scale_factor(A: list[SparsePoly]) -> Fraction:
    """lambda making the curve monic: the curve scales as lambda^2, lead is lc(A_0)^2."""
    lead = A[0].leading_coefficient("z")
    return 1 / lead.constant_term()


def curve_from_coefficients(A: list[SparsePoly]) -> SparsePoly:
    get = lambda k: A[k] if k < len(A) else ZERO  # noqa: E731
    A0, A1, A2 = get(0), get(1), get(2)
    return (4 * A0 * A0 * z - A0 * (4 * A2 * g3 + A1 * g2) + A1 * A1 * g3) / 4


def lame_Q(A: list[SparsePoly]) -> WeierstrassElement:
    Q = ZERO
    for s, a in enumerate(A):
        Q = Q + a.mul_var("P", s)
    return WeierstrassElement._wrap(Q, MODE)


@dataclass
class LameData:
    g: int
    A: list[SparsePoly]
    Q: WeierstrassElement
    curve_rhs: SparsePoly
    scale: Fraction


def lame_data(g: int, normalized: bool = True) -> LameData:
    """Coefficients, Q and curve; with ``normalized`` everything is rescaled so the curve is monic."""
    A = lame_coefficients(g)
    lam = scale_factor(A) if normalized else Fraction(1)
    A = [a * lam for a in A]
    return LameData(g, A, lame_Q(A), curve_from_coefficients(A), lam)


def lame_curve(g: int, normalized: bool = True) -> SparsePoly:
    return lame_data(g, normalized).curve_rhs


def square_expression(Q: SparsePoly, g: int) -> SparsePoly:
    """Q_x^2/4 - Q Q_xx/2 + (u - z) Q^2 with u = g(g+1) P."""
    Q0, Q1, Q2 = derivatives(Q, 2, MODE)
    u = g * (g + 1) * P
    return reduce(Q1 * Q1 / 4 - Q0 * Q2 / 2 + (u - z) * Q0 * Q0, MODE)


def third_order_residual(Q: SparsePoly, g: int) -> SparsePoly:
    """Q_xxx - 4 Q_x (u - z) - 2 u_x Q."""
    Q0, Q1, _, Q3 = derivatives(Q, 3, MODE)
    u0, u1 = derivatives(g * (g + 1) * P, 1, MODE)
    return reduce(Q3 - 4 * Q1 * (u0 - z) - 2 * u1 * Q0, MODE)


def lame_spectral_curve(g: int) -> SpectralCurve:
    data = lame_data(g)
    return SpectralCurve(g=g, F=data.curve_rhs, H=ZERO, case=None, operator="lame")


def is_constant_square(Q: SparsePoly, g: int) -> bool:
    return is_x_constant(square_expression(Q, g))
