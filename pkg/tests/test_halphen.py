from fractions import Fraction
from math import comb

import pytest

from halphen import halphen as hc
from halphen.corpus import printed_pairs
from halphen.errors import (
    DegenerateProfileError,
    InvalidGenusError,
    NotACubeError,
    ZeroDenominatorError,
)
from halphen.poly import ONE, ZERO, SparsePoly
from halphen.ring import Mode, d_dx, reduce

z, g3, P, Pp = (SparsePoly.var(v) for v in ("z", "g3", "P", "Pp"))
EQ = Mode.EQUIANHARMONIC
VALID = [g for g in range(1, 25) if g % 3 != 2]


# -- classify -----------------------------------------------------------------


def test_classify_examples():
    p = hc.classify(6)
    assert (p.case, p.M, p.r, p.epsilon, p.N) == ("I", 1, 2, 0, 7)
    p = hc.classify(7)
    assert (p.case, p.M, p.r, p.epsilon, p.N) == ("II", 1, 2, 1, 8)
    with pytest.raises(InvalidGenusError, match="mod"):
        hc.classify(5)


@pytest.mark.parametrize("bad", [0, -3, 2, 8, 3.0, True])
def test_classify_rejects(bad):
    with pytest.raises(InvalidGenusError):
        hc.classify(bad)


@pytest.mark.parametrize("g", VALID)
def test_classify_consistency(g):
    p = hc.classify(g)
    assert g == 3 * p.r + p.epsilon and p.N == 3 * p.r + 1 + p.epsilon
    family = {"6M": 6 * p.M, "6M+3": 6 * p.M + 3, "6M-2": 6 * p.M - 2, "6M+1": 6 * p.M + 1}
    assert family[p.family] == g
    assert p.case == ("I" if p.family in ("6M", "6M+3") else "II")


# -- the equation on S -------------------------------------------------------------


def test_m_coefficient_examples():
    for g in (1, 3, 6, 10):
        m = hc.m_coefficients(g)
        assert len(m) == 9
        assert m[8].value == -4 * P * Pp
        assert m[7].value == 4 * (10 * P**3 - g3)
    assert not hc.m_coefficients(3)[0]


def test_printed_m_literal_entries():
    m = hc.printed_m_coefficients(4, calibrated=False)
    assert m[7].value == 4 * (g3 + 10 * P**3)
    assert m[8].value == -4 * P * Pp
    assert not hc.printed_m_coefficients(3)[0]


@pytest.mark.parametrize("g", [4, 6, 7, 9, 10])
def test_printed_m_table_does_not_annihilate(g):
    # the tabulated m_1 carries 108 z^2 P^3 where 1080 is needed
    S = hc.solve_pair(g).S
    for calibrated in (True, False):
        coeffs = [m.value for m in hc.printed_m_coefficients(g, calibrated)]
        assert hc._apply_operator(coeffs, S.value)


@pytest.mark.parametrize("g", [3, 4, 6, 7, 10, 13])
def test_m_coefficients_match_elimination(g):
    E = [e.value for e in hc.s_equation_operator(g)]
    m = [x.value for x in hc.m_coefficients(g)]
    kappa = g * (g + 2)
    scale = Fraction(-8 * kappa * (kappa - 3))
    assert all(E[j] == m[j] * scale for j in range(9))


def test_apply_m_examples():
    S6 = hc.solve_pair(6).S
    assert not hc.apply_m(SparsePoly(), 6)
    assert not hc.apply_m(S6, 6)
    assert hc.apply_m(S6 + P, 6)


# -- solve_S ------------------------------------------------------------------------


def _proportional(a: SparsePoly, b: SparsePoly) -> bool:
    (k, c), = list(b.items())[:1]
    ratio = a._terms.get(k)
    return ratio is not None and a == b * (ratio / c)


def test_solve_S_examples():
    S6, _ = hc.solve_S(hc.classify(6))
    assert _proportional(S6.value, (z**2 - 880 * g3) + 3520 * P**3)
    S1, seq1 = hc.solve_S(hc.classify(1))
    assert not S1 and seq1.entries == {}
    S4, _ = hc.solve_S(hc.classify(4))
    assert _proportional(S4.value, -56 * P**2)


@pytest.mark.parametrize("g", VALID)
def test_solve_S_top_convention_and_floor(g):
    p = hc.classify(g)
    S, seq = hc.solve_S(p)
    assert not hc.apply_m(S, g)
    if p.case == "II" and p.M == 0:
        return
    top = seq[p.M]
    assert top == (SparsePoly.monomial(1, z=-1) if p.top_over_z else ONE)
    for x in seq.entries.values():
        assert x.low_degree("z") >= -1


def test_closed_form_rejects_degenerate_profile():
    seq = hc.solve_S(hc.classify(1))[1]
    with pytest.raises(DegenerateProfileError):
        hc.closed_form_F(seq, 1)
    with pytest.raises(ZeroDenominatorError):
        hc.closed_form_F(seq, 1, errata=False)


# -- recursion coefficients -------------------------------------------------------------


def test_printed_recursion_trivia():
    for g in (3, 6, 12):
        for r in (0, 1, 2):
            assert not hc.printed_recursion_coeffs(g, r)[0]
        assert not hc.printed_recursion_coeffs(g, 0)[2]
    for M in (1, 2, 3, 4):
        assert not hc.printed_recursion_coeffs(6 * M, M)[3]
        assert not hc.printed_recursion_coeffs(6 * M + 3, M)[3]


@pytest.mark.parametrize("g", [3, 6, 9, 12, 15, 18])
def test_corrected_table_equals_derived(g):
    for r in range(0, 8):
        assert hc.printed_recursion_coeffs(g, r, errata=True) == hc.derived_recursion_coeffs(g, r)


@pytest.mark.parametrize("g", [1, 3, 4, 6, 7, 10, 12, 13])
def test_recursion_coeffs_general_formula(g):
    for n in range(0, 22):
        assert hc.recursion_coeffs(g, n) == hc.recursion_coeffs_general(g, n)


def test_recursion_A_examples():
    seq = hc.recursion_A(6)
    assert seq[1] == SparsePoly.monomial(1, z=-1)
    assert (z * seq[0]) * 3520 == (z**2 - 880 * g3) * (z * seq[1])
    assert hc.recursion_A(3).entries == {0: ONE}
    seq = hc.recursion_A(12)
    lam = Fraction(26975872000) / (z * seq[2]).constant_term()
    assert z * seq[0] * lam == 550528000 * g3**2 - 90960 * g3 * z**2 + z**4
    assert z * seq[1] * lam == 209440 * (z**2 - 36800 * g3)
    with pytest.raises(InvalidGenusError):
        hc.recursion_A(4)


@pytest.mark.parametrize("g", VALID)
def test_recursion_matches_solver(g):
    p = hc.classify(g)
    _, seq = hc.solve_S(p)
    assert hc.recursion_sequence(p).entries == seq.entries
    assert not any(hc.recursion_relation_residuals(seq, g).values())


@pytest.mark.parametrize("g", [3, 6, 9, 12, 18])
def test_recursion_from_corrected_table(g):
    assert hc.recursion_A(g, "errata").entries == hc.solve_S(hc.classify(g))[1].entries


def test_printed_recursion_source_rejects_case_II():
    with pytest.raises(ValueError):
        hc.recursion_sequence(4, "printed")
    with pytest.raises(ValueError):
        hc.recursion_sequence(6, "bogus")


# -- Q ---------------------------------------------------------------------------


def test_build_Q_examples():
    assert hc.spectral_curve(6).pair.Q.value == -16 * z * P
    assert hc.spectral_curve(4).pair.Q.value == z
    assert hc.spectral_curve(7).pair.Q.value == z**2 - Fraction(8775, 4) * g3 + 9100 * P**3


@pytest.mark.parametrize("g", [3, 6, 9, 12, 15])
def test_case_I_Q_closed_form_agrees_with_ode_solve(g):
    p = hc.classify(g)
    S, seq = hc.solve_S(p)
    assert hc.q_closed_form(seq, g) == hc.solve_Q(S.value, p)


@pytest.mark.parametrize("g", [1, 3, 4, 6, 7, 9, 10, 12, 18])
def test_pairs_match_printed_examples(g):
    pair = hc.spectral_curve(g).pair
    S, Q = printed_pairs(errata=True)[g]
    assert pair.S.value == S and pair.Q.value == Q


def test_printed_Q12_fails_odes():
    S, Q = printed_pairs()[12]
    assert hc.first_ode_residual(S, Q, 12)
    assert hc.second_ode_residual(S, Q, 12)


def test_g1_pair_takes_the_free_constant():
    pair = hc.solve_pair(1, top=3)
    assert pair.Q.value == SparsePoly.const(3)


# -- H and F ---------------------------------------------------------------------------


@pytest.mark.parametrize("g", [1, 6, 10])
def test_H_vanishes(g):
    assert hc.compute_H(hc.solve_pair(g)) == ZERO


def test_F_examples():
    F6 = hc.spectral_curve(6).F
    assert F6 == z**7 - 2992 * g3 * z**5 + 2972416 * g3**2 * z**3 - 1003622400 * g3**3 * z
    assert hc.spectral_curve(1).F == z**2 + g3 / 4
    F3 = hc.spectral_curve(3).F
    assert F3 == z**4 - Fraction(55, 2) * g3 * z**2 - Fraction(3375, 16) * g3**2


def _op_compose(a, b):
    """Composition of differential operators given as coefficient lists."""
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        derivs = [b]
        for _ in range(i):
            derivs.append([d_dx(c, EQ) for c in derivs[-1]])
        for k in range(i + 1):
            for j, bj in enumerate(derivs[k]):
                if bj:
                    out[i - k + j] = out[i - k + j] + reduce(comb(i, k) * ai * bj, EQ)
    while out and not out[-1]:
        out.pop()
    return out


def test_g1_curve_from_commuting_pair():
    # L3 = d^3 - 3P d - 3/2 Pp commutes with L2 = d^2 - 2P and L2^3 - L3^2 = g3/4
    L3 = [ZERO, -3 * P, ZERO, ONE]
    L3 = [-(Fraction(3, 2)) * Pp] + L3[1:]
    L2 = [-2 * P, ZERO, ONE]
    comm = [x - y for x, y in zip(_op_compose(L3, L2), _op_compose(L2, L3))]
    assert not any(comm)
    lhs = _op_compose(L2, _op_compose(L2, L2))
    rhs = _op_compose(L3, L3)
    diff = [x - y for x, y in zip(lhs, rhs + [ZERO] * (len(lhs) - len(rhs)))]
    assert diff[0] == g3 / 4 and not any(diff[1:])


@pytest.mark.parametrize("g", [3, 6, 9, 12, 15, 18, 21, 24])
def test_case_I_closed_form(g):
    pair = hc.solve_pair(g)
    assert hc.closed_form_F(pair.sequence, g) == hc.compute_F(pair)


@pytest.mark.parametrize("g", [4, 7, 10, 13, 16, 19, 22])
def test_case_II_closed_form_corrected_and_literal(g):
    pair = hc.solve_pair(g)
    F = hc.compute_F(pair)
    assert hc.closed_form_F(pair.sequence, g, errata=True) == F
    assert hc.closed_form_F(pair.sequence, g, errata=False) != F


# -- normalisation ------------------------------------------------------------------


def test_cube_root_examples():
    assert hc.rational_cube_root(Fraction(1)) == 1
    assert hc.rational_cube_root(Fraction(1, 8)) == Fraction(1, 2)
    assert hc.rational_cube_root(Fraction(-64, 27)) == Fraction(-4, 3)
    assert hc.normalization_factor(8 * z**2) == Fraction(1, 2)
    assert hc.normalization_factor(Fraction(-27, 64) * z) == Fraction(-4, 3)
    assert hc.normalization_factor(z**3 + g3) == 1
    with pytest.raises(NotACubeError):
        hc.normalization_factor(2 * z)


@pytest.mark.parametrize("g", [3, 4, 7, 12])
def test_scale_equivariance(g):
    p1, p2 = hc.solve_pair(g, top=1), hc.solve_pair(g, top=2)
    assert hc.compute_F(p2) == 8 * hc.compute_F(p1)
    c1, c2 = hc.normalize(p1, hc.compute_F(p1)), hc.normalize(p2, hc.compute_F(p2))
    assert c1 == c2
    assert c1.pair.S == c2.pair.S and c1.pair.Q == c2.pair.Q


def test_spectral_curve_examples():
    F10 = (z**11 - 83600 * g3 * z**9 + 2409504000 * g3**2 * z**7 - 26083604480000 * g3**3 * z**5
           + 63684041113600000 * g3**4 * z**3 - 50781428593459200000 * g3**5 * z)
    assert hc.spectral_curve(10).F == F10
    assert hc.spectral_curve(18).F.degree("z") == 19
    with pytest.raises(InvalidGenusError):
        hc.spectral_curve(2)


@pytest.mark.parametrize("g", VALID)
def test_pipeline_invariants(g):
    c = hc.spectral_curve(g)
    assert c.H == ZERO and c.F.degree("z") == g + 1 and c.F.leading_coefficient("z") == ONE
    for got, want in hc.degree_law(c.pair):
        assert got == want
    S, Q = c.pair.S.value, c.pair.Q.value
    assert not hc.first_ode_residual(S, Q, g)
    assert not hc.second_ode_residual(S, Q, g)
