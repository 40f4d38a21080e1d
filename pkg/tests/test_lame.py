from fractions import Fraction

import pytest

from halphen import lame as lc
from halphen.errors import InvalidGenusError
from halphen.poly import ONE, ZERO, SparsePoly
from halphen.ring import Mode, WeierstrassElement

z, g2, g3, P = (SparsePoly.var(v) for v in ("z", "g2", "g3", "P"))


def test_coefficients_g1():
    A = lc.lame_coefficients(1)
    assert A == [z, ONE]
    assert len(A) == 2  # A_2 = A_3 = 0 are implicit


@pytest.mark.parametrize("g", range(1, 11))
def test_coefficient_degrees(g):
    A = lc.lame_coefficients(g)
    assert A[g] == ONE
    for s, a in enumerate(A):
        assert a.degree("z") == g - s


def test_curve_g1():
    assert lc.lame_curve(1) == (4 * z**3 - g2 * z + g3) / 4
    assert lc.lame_curve(1).substitute("g2", 0) == (4 * z**3 + g3) / 4


@pytest.mark.parametrize("g", range(1, 11))
def test_curve_degree_and_lead(g):
    F = lc.lame_curve(g)
    assert F.degree("z") == 2 * g + 1
    assert F.leading_coefficient("z") == ONE


def test_raw_curve_is_not_monic():
    # with A_g = 1 the leading coefficient is lc(A_0)^2, not 1, from g = 2 on
    assert lc.lame_curve(2, normalized=False).leading_coefficient("z") == SparsePoly.const(Fraction(1, 81))
    assert lc.lame_curve(3, normalized=False).leading_coefficient("z") == SparsePoly.const(Fraction(1, 50625))


@pytest.mark.parametrize("g", range(1, 11))
def test_identities(g):
    d = lc.lame_data(g)
    assert not lc.third_order_residual(d.Q.value, g)
    E = lc.square_expression(d.Q.value, g)
    assert lc.is_constant_square(d.Q.value, g)
    assert E == -d.curve_rhs


def test_perturbed_Q_breaks_third_order():
    d = lc.lame_data(3)
    assert lc.third_order_residual(d.Q.value + P, 3)


def test_invalid_genus():
    with pytest.raises(InvalidGenusError):
        lc.lame_coefficients(0)


def test_spectral_curve_wrapper():
    c = lc.lame_spectral_curve(2)
    assert c.operator == "lame" and c.power == 2 and c.H == ZERO
    assert isinstance(lc.lame_data(2).Q, WeierstrassElement) and lc.lame_data(2).Q.mode is Mode.GENERIC
