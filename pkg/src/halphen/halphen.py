"""Spectral curves of the Halphen operator in the equianharmonic case.

The operator is ``d^3 + f d + f'/2`` with ``f = -g(g+2) P``.  For every
genus ``g`` not congruent to 2 mod 3 the pipeline

    classify -> solve_S -> build_Q -> compute_H / compute_F -> normalize

produces the curve ``w^3 = F_g(z)`` (``H_g`` vanishes identically).

Sign convention: the ring uses ``Pp^2 = 4 P^3 - g3``.  The coefficient
tables ``m_0..m_8``, ``a_r..d_r`` and the case I formula for ``Q`` are
written for ``Pp^2 = 4 P^3 + g3``; they are entered here verbatim in terms of
``G`` and evaluated at ``G = -g3`` (``G_TAB``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import gmpy2

from .errors import (
    DegenerateProfileError,
    InconsistentSystemError,
    InvalidGenusError,
    InvariantViolation,
    NonConstantError,
    NotACubeError,
    ZeroDenominatorError,
)
from .curve import SpectralCurve
from .poly import ONE, ZERO, SparsePoly, exponent
from .ring import Mode, WeierstrassElement, d_dx, derivatives, is_x_constant, reduce

MODE = Mode.EQUIANHARMONIC

z = SparsePoly.var("z")
g3 = SparsePoly.var("g3")
P = SparsePoly.var("P")
Pp = SparsePoly.var("Pp")
G_TAB = -g3  # the invariant as it appears in the tabulated coefficient formulas


def _red(p: SparsePoly) -> SparsePoly:
    return reduce(p, MODE)


def _dx(p: SparsePoly) -> SparsePoly:
    return d_dx(p, MODE)


def _by(p: SparsePoly, v: str) -> dict[int, SparsePoly]:
    return {k: c for (k,), c in p.collect(v).items()}


# --------------------------------------------------------------------------
# genus bookkeeping


@dataclass(frozen=True)
class GenusProfile:
    g: int
    case: str  # "I" or "II"
    M: int
    r: int
    epsilon: int
    N: int

    @property
    def family(self) -> str:
        return {0: "6M", 3: "6M+3", 4: "6M-2", 1: "6M+1"}[self.g % 6]

    @property
    def top_over_z(self) -> bool:
        """Whether the top coefficient of the S-ansatz is const/z (else const)."""
        return self.g % 6 in (0, 4)

    @property
    def indices(self) -> range:
        return range(0, self.M + 1) if self.case == "I" else range(1, self.M + 1)

    def p_exponent(self, index: int) -> int:
        """Power of P carried by the ansatz coefficient with this index."""
        return 3 * index if self.case == "I" else 3 * index - 1


def classify(g: int) -> GenusProfile:
    if not isinstance(g, int) or isinstance(g, bool) or g < 1:
        raise InvalidGenusError(f"genus must be a positive integer, got {g!r}")
    if g % 3 == 2:
        raise InvalidGenusError(f"g = {g} is excluded: need g ≠ 2 mod(3)")
    r, eps = divmod(g, 3)
    rem = g % 6
    if rem in (0, 3):
        case, M = "I", g // 6
    elif rem == 4:
        case, M = "II", (g + 2) // 6
    else:
        case, M = "II", (g - 1) // 6
    return GenusProfile(g=g, case=case, M=M, r=r, epsilon=eps, N=3 * r + 1 + eps)


def _profile(g_or_profile) -> GenusProfile:
    if isinstance(g_or_profile, GenusProfile):
        return g_or_profile
    return classify(g_or_profile)


# --------------------------------------------------------------------------
# the eighth-order equation on S


def _tabulated_m(g: int, m1_z2: int, G: SparsePoly) -> list[SparsePoly]:
    # entered verbatim in terms of G; m1_z2 is the coefficient of z^2 P^3 in m_1
    m0 = 16 * (g - 3) * (g - 1) * g * (2 + g) * (3 + g) * (5 + g) * P**2 * (G + 4 * P**3) * Pp
    m1 = (9 * G * (g * (2 + g) * (5 * g**2 - 16 + 10 * g) * G + 12 * z**2)
          + (2 * g * (2 + g) * (1080 - 918 * g - 347 * g**2 + 112 * g**3 + 28 * g**4) * G
             + m1_z2 * z**2) * P**3
          + 128 * g * (g - 3) * (g - 1) * (2 + g) * (3 + g) * (5 + g) * P**6)
    m2 = ((9 * g * (2 + g) * (16 - 10 * g - 5 * g**2) * G - 108 * z**2)
          + 16 * (g - 1) * g * (2 + g) * (3 + g) * (2 * g + g**2 - 30) * P**3) * P * Pp
    m3 = (12 * g * (2 + g) * (57 - 22 * g - 11 * g**2) * G * P**2
          - 312 * g * (g - 1) * (2 + g) * (3 + g) * P**5)
    m4 = 12 * g * (-4 * (2 + g) * G - 3 * (g - 1) * (2 + g) * (3 + g) * P**3) * Pp
    m5 = 48 * g * (2 + g) * P * (G + P**3)
    m6 = 24 * g * (2 + g) * P**2 * Pp
    m7 = 4 * (G + 10 * P**3)
    m8 = -4 * P * Pp
    return [_red(m) for m in (m0, m1, m2, m3, m4, m5, m6, m7, m8)]


@lru_cache(maxsize=None)
def _m_polys(g: int) -> tuple[SparsePoly, ...]:
    # the z^2 P^3 coefficient of m_1 is 1080; the tabulated value 108 does not
    # annihilate known solutions (see printed_m_coefficients)
    return tuple(_tabulated_m(g, 1080, -g3))


def m_coefficients(g: int) -> list[WeierstrassElement]:
    classify(g)
    return [WeierstrassElement._wrap(m, MODE) for m in _m_polys(g)]


def printed_m_coefficients(g: int, calibrated: bool = True) -> list[WeierstrassElement]:
    """The coefficient table as tabulated, with 108 z^2 in m_1.

    ``calibrated`` evaluates the tabulated invariant at -g3 (see module
    docstring); otherwise g3 is read literally.  Neither version annihilates
    the known solutions; :func:`m_coefficients` does.
    """
    classify(g)
    return [WeierstrassElement._wrap(m, MODE) for m in _tabulated_m(g, 108, G_TAB if calibrated else g3)]


def _apply_operator(coeffs, S: SparsePoly) -> SparsePoly:
    out = ZERO
    for m, dS in zip(coeffs, derivatives(S, len(coeffs) - 1, MODE)):
        if m and dS:
            out = out + m * dS
    return _red(out)


def apply_m(S, g: int) -> WeierstrassElement:
    """Left-hand side ``sum_j m_j S^(j)`` of the equation on S."""
    S = S.value if isinstance(S, WeierstrassElement) else _red(S)
    return WeierstrassElement._wrap(_apply_operator(_m_polys(g), S), MODE)


# Linear differential operators acting on S are lists [c_0, c_1, ...] meaning
# sum_j c_j d^j.  This gives an independent route to the equation on S by
# eliminating Q from the two ODEs.

def _op_add(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else ZERO) + (b[i] if i < len(b) else ZERO) for i in range(n)]


def _op_lmul(c: SparsePoly, a):
    return [_red(c * x) for x in a]


def _op_dx(a):
    # d o (sum c_j d^j) = sum (c_j' d^j + c_j d^(j+1))
    out = [_dx(c) for c in a] + [ZERO]
    for j, c in enumerate(a):
        out[j + 1] = out[j + 1] + c
    return out


def s_equation_operator(g: int) -> list[WeierstrassElement]:
    """Coefficients of the order-8 equation on S obtained by eliminating Q.

    With ``R[S] = 2 S''' + 2 f S' + S f'`` the first ODE reads ``3 z Q' = R``.
    Multiplying the second by ``3z`` gives ``K (3zQ) + U[S] = 0`` with
    ``K = 2(f''' + 4 f f')``; differentiating ``3zQ = -U/K`` and comparing
    gives ``R K^2 + U' K - U K' = 0``.  The result is proportional to
    :func:`m_coefficients` (not normalised).
    """
    classify(g)
    kappa = g * (g + 2)
    f = -kappa * P
    f1, f2, f3 = derivatives(f, 3, MODE)[1:]
    R = [f1, 2 * f, ZERO, SparsePoly.const(2)]
    Rs = [R]
    for _ in range(4):
        Rs.append(_op_dx(Rs[-1]))
    U = _op_add(_op_lmul(_red(8 * f * f + 9 * f2), Rs[0]), _op_lmul(15 * f1, Rs[1]))
    U = _op_add(U, _op_lmul(10 * f, Rs[2]))
    U = _op_add(U, _op_lmul(SparsePoly.const(2), Rs[4]))
    U = _op_add(U, [ZERO, 108 * z**2])
    K = _red(2 * (f3 + 4 * f * f1))
    K1 = _dx(K)
    E = _op_add(_op_lmul(_red(K * K), R), _op_lmul(K, _op_dx(U)))
    E = _op_add(E, _op_lmul(-K1, U))
    return [WeierstrassElement._wrap(c, MODE) for c in E]


# --------------------------------------------------------------------------
# solving for S


@dataclass
class CoefficientSequence:
    kind: str  # "A" (case I) or "B" (case II)
    entries: dict[int, SparsePoly]
    free_scale: Fraction = Fraction(1)

    def __getitem__(self, r: int) -> SparsePoly:
        return self.entries.get(r, ZERO)

    def scaled(self, lam) -> "CoefficientSequence":
        return CoefficientSequence(self.kind, {r: e * lam for r, e in self.entries.items()},
                                   self.free_scale * lam)


@dataclass
class SQPair:
    S: WeierstrassElement
    Q: WeierstrassElement
    profile: GenusProfile
    sequence: CoefficientSequence | None = None

    def scaled(self, lam) -> "SQPair":
        seq = self.sequence.scaled(lam) if self.sequence is not None else None
        return SQPair(self.S * lam, self.Q * lam, self.profile, seq)


def _pivot(E: SparsePoly) -> tuple[int, int]:
    """Leading (P, Pp) exponent pair of a canonical element."""
    return max((exponent(k, "P"), exponent(k, "Pp")) for k in E.keys())


def _solve_triangular(profile: GenusProfile, top: Fraction, basis: dict[int, SparsePoly]):
    """Solve sum_r X_r(z) basis[r] = 0 from the top index down.

    ``basis[r]`` is the image of the ansatz monomial with index r.  Each lower
    index is fixed by the leading (P, Pp)-monomial of its image, whose
    coefficient must be a single term so that the division is exact.
    """
    idx = list(profile.indices)
    M = idx[-1]
    X: dict[int, SparsePoly] = {M: SparsePoly.monomial(top, z=-1 if profile.top_over_z else 0)}
    collected = {r: basis[r].collect("P", "Pp") for r in idx}
    for r in reversed(idx[:-1]):
        if not basis[r]:
            raise ZeroDenominatorError(f"ansatz image vanishes at index {r}")
        piv = _pivot(basis[r])
        for lower in idx:
            if lower < r and piv in collected[lower]:
                raise InconsistentSystemError(f"system is not triangular at index {r}")
        lead = collected[r][piv]
        if len(lead) != 1:
            raise InconsistentSystemError(f"pivot coefficient {lead} is not a single term")
        rhs = ZERO
        for upper in idx:
            if upper > r and piv in collected[upper]:
                rhs = rhs + X[upper] * collected[upper][piv]
        (key, c), = lead.items()
        try:
            X[r] = -rhs.divide_by_term(key, c)
        except ValueError as exc:
            raise InconsistentSystemError(f"inexact division at index {r}") from exc
    return X


@lru_cache(maxsize=None)
def _ansatz_images(g: int) -> dict[int, SparsePoly]:
    profile = classify(g)
    return {r: _apply_operator(_m_polys(g), P ** profile.p_exponent(r)) for r in profile.indices}


def solve_S(profile, top=1) -> tuple[WeierstrassElement, CoefficientSequence]:
    """Solve the eighth-order equation for S within the case's ansatz.

    Case I: ``S = sum_{r=0}^{M} z A_r(z) P^(3r)``; case II:
    ``S = sum_{r=1}^{M} z B_r(z) P^(3r-1)``.  The top coefficient is
    ``top/z`` for g = 6M, 6M-2 and ``top`` otherwise.  For g = 1 the ansatz
    is empty and S = 0.
    """
    profile = _profile(profile)
    top = Fraction(top)
    kind = "A" if profile.case == "I" else "B"
    if profile.case == "II" and profile.M == 0:
        return WeierstrassElement._wrap(ZERO, MODE), CoefficientSequence(kind, {}, top)
    X = _solve_triangular(profile, top, _ansatz_images(profile.g))
    S = ZERO
    for r, x in X.items():
        S = S + (z * x).mul_var("P", profile.p_exponent(r))
    if _apply_operator(_m_polys(profile.g), S):
        raise InconsistentSystemError(f"S does not solve the equation for g = {profile.g}")
    for r, x in X.items():
        if x and x.low_degree("z") < -1:
            raise InvariantViolation(f"coefficient {kind}_{r} has a pole of order > 1 at z = 0")
    return WeierstrassElement._wrap(S, MODE), CoefficientSequence(kind, X, top)


# --------------------------------------------------------------------------
# recursion coefficients


def printed_recursion_coeffs(g: int, r: int, errata: bool = False, calibrated: bool = True):
    """The tabulated a_r, b_r, c_r, d_r as polynomials in z, g3.

    ``calibrated`` evaluates the tabulated invariant at -g3; otherwise g3 is
    read literally.

    With ``errata=True`` two corrections are applied: the overall sign of a_r
    and the factor ``(6r+1-g)`` of d_r replaced by ``(3r+1-g)``.  The
    corrected table coincides with :func:`derived_recursion_coeffs`.
    """
    G = G_TAB if calibrated else g3
    a = (108 * G**3 * ((r - 2) * (r - 1) * r * (8 - 3 * r) * (5 - 3 * r) * (4 - 3 * r)
                       * (3 * r - 2) * (3 * r - 1)))
    b = 216 * G**2 * ((r - 1) * r * (3 * r - 5) * (3 * r - 2) * (3 * r - 1)) * (
        4 * g - 30 + 2 * g**2 + 87 * r - 6 * g * r - 3 * g**2 * r - 81 * r**2 + 54 * r**3)
    c = 9 * r * (3 * r - 2) * G * (
        4 * g**2 - 48 * g + 28 * g**3 + 7 * g**4 + 264 * g * r + 84 * g**2 * r
        - 48 * g**3 * r - 12 * g**4 * r + 3024 * r**2 - 4104 * g * r**2 - 1620 * g**2 * r**2
        + 432 * g**3 * r**2 + 108 * g**4 * r**2 + 1728 * g * r**3 + 864 * g**2 * r**3
        + 45360 * r**4 - 10368 * g * r**4 - 5184 * g**2 * r**4 + 46656 * r**6
    ) + 324 * r * (3 * r - 2) * z**2
    last = (3 * r + 1 - g) if errata else (6 * r + 1 - g)
    d = SparsePoly.const(8 * (2 + 3 * r) * (3 + g + 3 * r) * (1 + 6 * r) * (2 + g + 6 * r)
                         * (5 + g + 6 * r) * (6 * r - g) * (g - 3 - 6 * r) * last)
    if errata:
        a = -a
    return a, b, c, d


def _divide_by_g3_minus_4p3(T: SparsePoly) -> SparsePoly:
    """Exact quotient of T (free of Pp) by (g3 - 4 P^3)."""
    rows = _by(T, "P")
    quotient: dict[int, SparsePoly] = {}
    rem = dict(rows)
    while rem:
        top = max(rem)
        c = rem.pop(top)
        if not c:
            continue
        if top < 3:
            raise InconsistentSystemError("not divisible by g3 - 4 P^3")
        q = c / -4
        quotient[top - 3] = q
        rem[top - 3] = rem.get(top - 3, ZERO) - q * g3
        if not rem[top - 3]:
            del rem[top - 3]
    out = ZERO
    for k, q in quotient.items():
        out = out + q.mul_var("P", k)
    return out


@lru_cache(maxsize=None)
def recursion_coeffs(g: int, n: int) -> tuple[SparsePoly, SparsePoly, SparsePoly, SparsePoly]:
    """(alpha, beta, gamma, delta) with apply_m(P^n) = Pp (g3 - 4P^3) P^(n-7) (alpha + beta P^3 + gamma P^6 + delta P^9)."""
    E = _apply_operator(_m_polys(g), P**n)
    rows = _by(E, "Pp")
    if set(rows) - {1}:
        raise InconsistentSystemError("image of a P-power must be odd in Pp")
    if not E:
        return ZERO, ZERO, ZERO, ZERO
    U = _by(_divide_by_g3_minus_4p3(rows[1]), "P")
    out = []
    for shift in (-7, -4, -1, 2):
        out.append(U.pop(n + shift, ZERO))
    if U:
        raise InconsistentSystemError("unexpected P-powers in the image of P^n")
    return tuple(out)


def recursion_coeffs_general(g: int, n: int):
    """Closed expressions for :func:`recursion_coeffs` valid for every power n.

    They cover both ansatz families: n = 3r (case I) and n = 3r - 1 (case II).
    """
    G3 = g3
    alpha = -4 * G3**3 * (n * (n - 1) * (n - 2) * (n - 3) * (n - 4) * (n - 5) * (n - 6) * (n - 8))
    beta = -24 * G3**2 * (n * (n - 5) * (n - 3) * (n - 2) * (n - 1)
                          * (g * g * n - 2 * g * g + 2 * g * n - 4 * g - 2 * n**3 + 9 * n * n - 29 * n + 30))
    inner = (-12 * g**4 * n**2 + 4 * g**4 * n - 7 * g**4 - 48 * g**3 * n**2 + 16 * g**3 * n - 28 * g**3
             + 64 * g**2 * n**4 - 32 * g**2 * n**3 + 180 * g**2 * n**2 - 28 * g**2 * n - 4 * g**2
             + 128 * g * n**4 - 64 * g * n**3 + 456 * g * n**2 - 88 * g * n + 48 * g
             - 64 * n**6 - 560 * n**4 - 336 * n**2)
    gamma = 3 * n * (n - 2) * (36 * z**2 + inner * G3)
    delta = SparsePoly.const(-8 * (g - 2 * n) * (n + 2) * (2 * n + 1) * (g - 2 * n - 3) * (g - n - 1)
                             * (g + n + 3) * (g + 2 * n + 2) * (g + 2 * n + 5))
    return alpha, beta, gamma, delta


def derived_recursion_coeffs(g: int, r: int, kind: str = "A"):
    """a_r..d_r recomputed from the equation on S, in the tabulated normalisation.

    The relation is ``d_r X_r = c_{r+1} X_{r+1} + b_{r+2} X_{r+2} + a_{r+3} X_{r+3}``.
    For kind "B" the ansatz power is 3r - 1 instead of 3r.
    """
    n = 3 * r if kind == "A" else 3 * r - 1
    alpha, beta, gamma, delta = recursion_coeffs(g, n)
    return alpha, beta, gamma, -delta


def recursion_relation_residuals(seq: CoefficientSequence, g: int, coeffs=None) -> dict[int, SparsePoly]:
    """d_r X_r - c_{r+1} X_{r+1} - b_{r+2} X_{r+2} - a_{r+3} X_{r+3} for each index."""
    if coeffs is None:
        coeffs = lambda g_, r: derived_recursion_coeffs(g_, r, seq.kind)  # noqa: E731
    lo = 0 if seq.kind == "A" else 1
    hi = max(seq.entries, default=lo)
    out = {}
    for r in range(lo, hi + 1):
        d = coeffs(g, r)[3]
        c = coeffs(g, r + 1)[2]
        b = coeffs(g, r + 2)[1]
        a = coeffs(g, r + 3)[0]
        out[r] = d * seq[r] - c * seq[r + 1] - b * seq[r + 2] - a * seq[r + 3]
    return out


def recursion_sequence(profile, source: str = "derived", top=1) -> CoefficientSequence:
    """Run the three-term-lookback recursion downward from the top coefficient.

    ``source`` is "derived" (coefficients recomputed from the equation),
    "printed" (tabulated) or "errata" (tabulated with the two corrections).
    The printed tables belong to case I; for case II only "derived" applies.
    """
    profile = _profile(profile)
    kind = "A" if profile.case == "I" else "B"
    if source == "derived":
        coeffs = lambda g_, r: derived_recursion_coeffs(g_, r, kind)  # noqa: E731
    elif source in ("printed", "errata"):
        if profile.case != "I":
            raise ValueError("tabulated recursion coefficients are stated for case I only")
        coeffs = lambda g_, r: printed_recursion_coeffs(g_, r, errata=(source == "errata"))  # noqa: E731
    else:
        raise ValueError(f"unknown coefficient source {source!r}")
    top = Fraction(top)
    idx = list(profile.indices)
    if not idx:
        return CoefficientSequence(kind, {}, top)
    M = idx[-1]
    X = {M: SparsePoly.monomial(top, z=-1 if profile.top_over_z else 0)}
    for r in reversed(idx[:-1]):
        d = coeffs(profile.g, r)[3]
        if not d:
            raise ZeroDenominatorError(f"d_{r} vanishes for g = {profile.g}")
        acc = ZERO
        for step, which in ((1, 2), (2, 1), (3, 0)):
            if r + step <= M:
                acc = acc + coeffs(profile.g, r + step)[which] * X[r + step]
        (key, c), = d.items()
        X[r] = acc.divide_by_term(key, c)
    return CoefficientSequence(kind, X, top)


def recursion_A(g: int, source: str = "derived", top=1) -> CoefficientSequence:
    profile = classify(g)
    if profile.case != "I":
        raise InvalidGenusError(f"g = {g} is not of the form 6M or 6M+3")
    return recursion_sequence(profile, source, top)


def sequence_to_S(seq: CoefficientSequence, profile) -> WeierstrassElement:
    profile = _profile(profile)
    S = ZERO
    for r, x in seq.entries.items():
        S = S + (z * x).mul_var("P", profile.p_exponent(r))
    return WeierstrassElement._wrap(S, MODE)


# --------------------------------------------------------------------------
# Q


def _f_derivs(g: int) -> list[SparsePoly]:
    return derivatives(-(g * (g + 2)) * P, 5, MODE)


def first_ode_residual(S: SparsePoly, Q: SparsePoly, g: int) -> SparsePoly:
    """3 z Q' - (2 S''' + 2 f S' + S f')."""
    f, f1 = _f_derivs(g)[:2]
    Sd = derivatives(S, 3, MODE)
    return _red(3 * z * _dx(Q) - 2 * Sd[3] - 2 * f * Sd[1] - Sd[0] * f1)


def second_ode_residual(S: SparsePoly, Q: SparsePoly, g: int) -> SparsePoly:
    f, f1, f2, f3 = _f_derivs(g)[:4]
    Qd = derivatives(Q, 5, MODE)
    out = (8 * f * f * Qd[1] + 36 * z * _dx(S) + 9 * Qd[1] * f2 + 15 * f1 * Qd[2]
           + 2 * Q * f3 + 2 * f * (4 * Q * f1 + 5 * Qd[3]) + 2 * Qd[5])
    return _red(out)


def q_closed_form(seq: CoefficientSequence, g: int) -> SparsePoly:
    """Case I: Q written directly in terms of the A_r (no integration constant)."""
    out = ZERO
    for r, A in seq.entries.items():
        c1 = Fraction(6 * r * (2 - 2 * g - g * g + 18 * r + 36 * r * r) - g * (2 + g), 3 * (3 * r + 1))
        out = out + (A * c1).mul_var("P", 1 + 3 * r)
        if r:
            c2 = Fraction(2 * r * (9 * r * r - 1), 3 * r + 1)
            out = out + (A * G_TAB * c2).mul_var("P", 3 * r - 2)
    return out


def solve_Q(S: SparsePoly, profile, free=1) -> SparsePoly:
    """Q = sum_{k=0}^{bound} q_k(z) P^k from the two ODEs.

    The first ODE fixes q_k for k >= 1; the integration constant q_0 is then
    fixed by the second.  When the second ODE does not see q_0 (g = 1) it is
    the free normalisation ``free``.
    """
    profile = _profile(profile)
    g = profile.g
    bound = 3 * profile.M + (1 if profile.case == "I" else 0)
    f, f1 = _f_derivs(g)[:2]
    Sd = derivatives(S, 3, MODE)
    R = _red(2 * Sd[3] + 2 * f * Sd[1] + Sd[0] * f1)
    rows = _by(R, "Pp")
    if set(rows) - {1}:
        raise InconsistentSystemError("first ODE right-hand side is not a multiple of Pp")
    Q = ZERO
    for k, c in _by(rows.get(1, ZERO), "P").items():
        if k + 1 > bound:
            raise InconsistentSystemError(f"Q would need P^{k + 1}, beyond the bound {bound}")
        Q = Q + (c * z**-1 / (3 * (k + 1))).mul_var("P", k + 1)
    res = second_ode_residual(S, Q, g)
    kappa = g * (g + 2)
    weight = 8 * kappa * (kappa - 3)  # second ODE applied to a constant q0 gives weight*q0*P*Pp
    if weight == 0:
        if res:
            raise InconsistentSystemError("second ODE fails and has no constant to absorb it")
        return Q + free if not S else Q
    groups = res.collect("P", "Pp")
    if set(groups) - {(1, 1)}:
        raise InconsistentSystemError("second ODE residual is not proportional to P*Pp")
    q0 = -groups.get((1, 1), ZERO) / weight
    return Q + q0


def build_Q(S, profile, seq: CoefficientSequence | None = None) -> WeierstrassElement:
    """Q for a solved S: closed form in case I, ansatz-and-solve in case II.

    Either way both ODE residuals are checked to vanish.
    """
    profile = _profile(profile)
    S = S.value if isinstance(S, WeierstrassElement) else S
    if profile.case == "I":
        if seq is None:
            raise ValueError("case I needs the A-sequence")
        Q = q_closed_form(seq, profile.g)
    else:
        Q = solve_Q(S, profile, free=seq.free_scale if seq is not None else 1)
    if first_ode_residual(S, Q, profile.g) or second_ode_residual(S, Q, profile.g):
        raise InconsistentSystemError(f"Q does not satisfy both ODEs for g = {profile.g}")
    return WeierstrassElement._wrap(Q, MODE)


def solve_pair(g: int, top=1) -> SQPair:
    profile = classify(g)
    S, seq = solve_S(profile, top)
    Q = build_Q(S, profile, seq)
    return SQPair(S, Q, profile, seq)


# --------------------------------------------------------------------------
# H and F


def _jets(pair_or_S, Q=None, g=None):
    if isinstance(pair_or_S, SQPair):
        S, Q, g = pair_or_S.S.value, pair_or_S.Q.value, pair_or_S.profile.g
    else:
        S = pair_or_S.value if isinstance(pair_or_S, WeierstrassElement) else pair_or_S
        Q = Q.value if isinstance(Q, WeierstrassElement) else Q
    return derivatives(S, 2, MODE), derivatives(Q, 4, MODE), _f_derivs(g)[:3]


def raw_H(pair_or_S, Q=None, g=None) -> SparsePoly:
    """The H-expression as a ring element (before the constancy check)."""
    (S, S1, S2), (Q0, Q1, Q2, Q3, Q4), (f, f1, f2) = _jets(pair_or_S, Q, g)
    h = (4 * f * f * Q0 * Q0 + 12 * S1 * S1 + 2 * Q0 * Q0 * f2 + Q2 * Q2
         + (10 * Q0 * Q2 - 12 * S * S - 5 * Q1 * Q1) * f
         - 24 * S * S2 - 2 * Q1 * Q3 + (36 * z * S + 5 * f1 * Q1 + 2 * Q4) * Q0)
    return _red(h) / 12


def raw_F(pair_or_S, Q=None, g=None) -> SparsePoly:
    """The F-expression as a ring element (before the constancy check)."""
    (S, S1, S2), (Q0, Q1, Q2, Q3, Q4), (f, f1, f2) = _jets(pair_or_S, Q, g)
    r = _red
    Q1sq = r(Q1 * Q1)
    SS = r(S * S)
    QQ = r(Q0 * Q0)
    parts = [
        432 * z * r(SS * S),
        -63 * r(f1 * r(Q1sq * Q1)),
        4 * r(r(QQ * Q0) * r(108 * z**2 + 8 * f**3 - 3 * f1 * f1 + 6 * f * f2)),
        -42 * r(f * r(Q1sq * Q2)),
        144 * r(r(S1 * S1) * Q2),
        -4 * r(r(Q2 * Q2) * Q2),
        -432 * r(r(Q1 * S1) * S2),
        12 * r(r(Q1 * Q2) * Q3),
        -36 * r(S * r(3 * z * Q1sq + 16 * f * r(Q1 * S1) - 4 * Q2 * S2 + 4 * S1 * Q3)),
        -18 * r(Q1sq * Q4),
        36 * r(SS * r(7 * f1 * Q1 + 10 * f * Q2 + 2 * Q4)),
        6 * r(Q0 * r(
            12 * r(f * f) * r(4 * SS - Q1sq) - 24 * r(S * f1 * S1) + 72 * z * r(Q1 * S1)
            + 12 * SS * f2 - 3 * Q1sq * f2 + 16 * r(f1 * Q1 * Q2) + 72 * r(S2 * S2)
            - 2 * r(Q3 * Q3) + 2 * f * r(12 * S1 * S1 + 7 * Q2 * Q2 + 48 * S * S2 - 4 * Q1 * Q3)
            + 4 * r(Q2 * Q4))),
        12 * r(QQ * r(
            10 * r(f * f) * Q2 + 2 * f2 * Q2 - 72 * z * S2 - 2 * f1 * Q3
            + f * r(-36 * z * S + 3 * f1 * Q1 + 2 * Q4))),
    ]
    total = ZERO
    for p in parts:
        total = total + p
    return _red(total) / 432


def compute_H(pair: SQPair) -> SparsePoly:
    h = raw_H(pair)
    if not is_x_constant(h):
        raise NonConstantError(f"H is not x-constant for g = {pair.profile.g}")
    return h


def compute_F(pair: SQPair) -> SparsePoly:
    F = raw_F(pair)
    if not is_x_constant(F):
        raise NonConstantError(f"F is not x-constant for g = {pair.profile.g}")
    return F


# --------------------------------------------------------------------------
# closed forms


def _closed_form_case_I(A: CoefficientSequence, g: int) -> SparsePoly:
    A0, A1, A2 = A[0], A[1], A[2]
    first = 36 * z**2 * A0 * A0 + g3 * (2 * g * A0 + g * g * A0 + 12 * g3 * A1) ** 2
    second = (36 * z**2 * A0 - g3 * g * (2 + g) * (14 * g + 7 * g * g - 24) * A0
              - 24 * g3**2 * A1 * (14 * g + 7 * g * g - 180) - 2880 * g3**3 * A2)
    return first * second / 1296


def _linear_T(B: CoefficientSequence, g: int, b1_sign: int = 1, b1_slot: int = 1) -> SparsePoly:
    return (b1_sign * 25 * (384 * g - 1728 + 172 * g**2 - 20 * g**3 - 5 * g**4) * g3 * B[b1_slot]
            + 108 * z**2 * B[1] - 1440 * (6 * g + 3 * g**2 - 140) * g3**2 * B[2]
            - 80640 * g3**3 * B[3])


def _closed_form_case_II(B: CoefficientSequence, g: int, errata: bool) -> SparsePoly:
    K = g**3 + 4 * g**2 + g - 6  # (g-1)(g+2)(g+3)
    T1 = _linear_T(B, g)
    if errata:
        T2 = T3 = T1
        y_slot, tail_sign = 1, 1
    else:
        T2 = _linear_T(B, g, b1_slot=2)
        T3 = _linear_T(B, g, b1_sign=-1)
        y_slot, tail_sign = 2, -1
    X = (g**2 + 2 * g - 24) * B[1] + 24 * g3 * B[2]
    Y = -108 * z**2 * B[1] + 5 * g * (2 + g) * g3 * ((g**2 + 2 * g - 24) * B[y_slot] + 24 * g3 * B[2])
    bracket = (-64 * g**2 * K**2 * g3**2 * (324 * z**2 * B[1] * B[1] + 25 * g3 * X * X)
               + 16 * g * (-K) * g3 * Y * T2
               - (36 * z**2 + tail_sign * (4 * g**2 + 4 * g**3 + g**4) * g3) * T3 * T3)
    denom = 62208 * g**3 * K**3
    if denom == 0:
        raise ZeroDenominatorError(f"closed form denominator vanishes at g = {g}")
    return T1 * bracket / denom


def closed_form_F(seq: CoefficientSequence, g: int, errata: bool = True) -> SparsePoly:
    """F from the lowest three ansatz coefficients alone.

    Case I uses A_0, A_1, A_2.  Case II uses B_1, B_2, B_3; with
    ``errata=False`` the case II display is taken exactly as tabulated, which
    differs from the corrected form in four places: B_2 for B_1 inside Y and
    inside the second linear factor, the sign of the g3*B_1 term in the third
    linear factor, and the sign of g3 in ``36 z^2 + (4g^2 + 4g^3 + g^4) g3``.
    """
    profile = classify(g)
    if profile.case == "I":
        return _closed_form_case_I(seq, g)
    if profile.M == 0 and errata:
        raise DegenerateProfileError("the case II closed form needs M >= 1 (g = 1 excluded)")
    return _closed_form_case_II(seq, g, errata)


# --------------------------------------------------------------------------
# normalisation and the full pipeline


def rational_cube_root(x: Fraction) -> Fraction:
    x = Fraction(x)
    sign = -1 if x < 0 else 1
    num, exact_n = gmpy2.iroot(abs(x.numerator), 3)
    den, exact_d = gmpy2.iroot(x.denominator, 3)
    if not (exact_n and exact_d):
        raise NotACubeError(x)
    return sign * Fraction(int(num), int(den))


def normalization_factor(F: SparsePoly) -> Fraction:
    """lambda with lambda^3 * lead_z(F) = 1 (F scales as lambda^3 under (S,Q) -> lambda (S,Q))."""
    lead = F.leading_coefficient("z")
    if not lead.is_constant() or not lead:
        raise InvariantViolation(f"leading z-coefficient {lead} is not a nonzero number")
    return rational_cube_root(1 / lead.constant_term())


def degree_law(pair: SQPair) -> tuple[tuple[int, int], tuple[int, int]]:
    """((deg_z Q, expected), (deg_z S, expected)); the zero element has degree -1."""
    p = pair.profile
    dq = pair.Q.value.degree("z") if pair.Q else -1
    ds = pair.S.value.degree("z") if pair.S else -1
    if p.epsilon == 0:
        return (dq, p.r - 1), (ds, p.r)
    return (dq, p.r), (ds, p.r - 1)


def normalize(pair: SQPair, F: SparsePoly, H: SparsePoly = ZERO) -> SpectralCurve:
    """Rescale (S, Q) -> lambda (S, Q) so that F is monic; F and H scale as lambda^3, lambda^2."""
    lam = normalization_factor(F)
    return SpectralCurve(g=pair.profile.g, F=F * lam**3, H=H * lam**2, case=pair.profile.case,
                         pair=pair.scaled(lam))


def spectral_curve(g: int, cross_check: bool = True) -> SpectralCurve:
    """classify -> solve_S -> build_Q -> H, F -> closed-form cross-check -> normalize."""
    profile = classify(g)
    pair = solve_pair(g)
    H = compute_H(pair)
    F = compute_F(pair)
    if H:
        raise InvariantViolation(f"H = {H} does not vanish for g = {g}")
    if cross_check and not (profile.case == "II" and profile.M == 0):
        if closed_form_F(pair.sequence, g) != F:
            raise InvariantViolation(f"closed form disagrees with the F-expression for g = {g}")
    curve = normalize(pair, F, H)
    F = curve.F
    if F.degree("z") != g + 1 or F.leading_coefficient("z") != ONE:
        raise InvariantViolation(f"F is not monic of degree {g + 1}")
    for got, want in degree_law(curve.pair):
        if got != want:
            raise InvariantViolation(f"degree law fails for g = {g}: {got} != {want}")
    return curve
