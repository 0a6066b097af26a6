from fractions import Fraction

import pytest

from framedvertex.curve import build_curve_series
from framedvertex.curvefun import (build_eta_family,
                                   build_phi_tower, euler_field,
                                   phi_prime_decompose,
                                   phi_prime_decompose_pair, plus_part)
from framedvertex.errors import NotInSpan
from framedvertex.ratfunc import FR_ONE, FRational
from framedvertex.tpoly import TPolynomial
from framedvertex.vseries import VSeries, compose_polynomial

F = FRational.variable()
T = TPolynomial.variable(1, 0)


@pytest.fixture(scope="module")
def tower():
    return build_phi_tower(8)


@pytest.fixture(scope="module")
def curve():
    return build_curve_series(16)


@pytest.fixture(scope="module")
def eta(curve, tower):
    return build_eta_family(curve, 3, tower)


def test_phi_zero_and_one(tower):
    inv = FR_ONE / (F + 1)
    assert tower.phi(0) == (T - 1) * inv
    want = (F * T ** 3 + (1 - F) * T ** 2 - T) * inv * inv
    assert tower.phi(1) == want


def test_phi_degrees(tower):
    for b in range(9):
        assert tower.phi(b).degree_in(0) == 2 * b + 1
        assert tower.phi_prime(b).degree_in(0) == 2 * b


def test_phi_leading_coefficients(tower):
    # lc(phi_b) = (2b-1)!! f^b / (f+1)^{b+1}
    dfact = 1
    for b in range(9):
        if b >= 1:
            dfact *= 2 * b - 1
        want = dfact * F ** b / (F + 1) ** (b + 1)
        assert tower.phi(b).coefficient((2 * b + 1,)) == want


def test_euler_field_raises_tower(tower):
    for b in range(7):
        assert euler_field(tower.phi(b), 0) == tower.phi(b + 1)


def test_eta_minus_one_leading(curve, eta):
    e = eta.eta(-1)
    assert e.lead == 1
    assert e.coeff(1) == -1 / F


def test_eta_leading_terms(curve, eta):
    dfact = 1
    for n in range(4):
        if n >= 1:
            dfact *= 2 * n - 1
        e = eta.eta(n)
        assert e.lead == -(2 * n + 1)
        want = dfact * F ** n / (F + 1) ** (n + 1)
        assert e.coeff(-(2 * n + 1)) == want


def test_eta_oddness(eta):
    for n in range(-1, 4):
        assert eta.eta(n).is_odd()


def test_eta_equals_half_odd_part_of_phi(curve, tower, eta):
    for n in range(4):
        phi_t = compose_polynomial(tower.phi_coeffs(n), curve.t_of_v)
        phi_st = compose_polynomial(tower.phi_coeffs(n), curve.s_t_of_v)
        half = FRational.from_fraction(Fraction(1, 2))
        assert eta.eta(n).agrees_with((phi_t - phi_st) * half)


def test_eta_remainder_even_and_regular(curve, eta):
    for n in range(4):
        rem = eta.even_remainder(n)
        assert rem.is_even()
        assert rem.is_zero or rem.lead >= 0


def test_plus_part_tautological(curve):
    poly, tail = plus_part(curve.t_of_v, curve)
    assert poly == T
    assert tail is None or tail > 0


def test_plus_part_discards_positive_powers(curve):
    poly, tail = plus_part(VSeries.monomial(2, FR_ONE, curve.trunc), curve)
    assert poly.is_zero
    assert tail == 2


def test_plus_part_of_inverse_v(curve):
    # 1/v = t - h_1 + (positive exponents); h_1 = (f-1)/(3f)
    poly, _ = plus_part(VSeries.monomial(-1, FR_ONE, curve.trunc), curve)
    h1 = (F - 1) / (3 * F)
    assert poly == T - TPolynomial.constant(1, h1)


def test_plus_part_is_projection(curve, rng):
    # plus_part(Q(t(v))) = Q for polynomial Q
    from conftest import random_frational
    coeffs = [random_frational(rng, max_deg=2) for _ in range(6)]
    series = compose_polynomial(coeffs, curve.t_of_v)
    poly, tail = plus_part(series, curve)
    want = TPolynomial(1, [((k,), c) for k, c in enumerate(coeffs)])
    assert poly == want
    assert tail is None


def test_plus_part_zero(curve):
    poly, tail = plus_part(VSeries.zero(10), curve)
    assert poly.is_zero and tail is None


def test_decompose_phi_prime_itself(tower):
    d = phi_prime_decompose(tower.phi_prime(1), tower)
    assert d.coefficients == {1: FR_ONE}
    assert d.residual.is_zero


def test_decompose_constant(tower):
    one = TPolynomial.constant(1, FR_ONE)
    d = phi_prime_decompose(one, tower)
    assert d.coefficients == {0: F + 1}


def test_decompose_outside_span(tower):
    with pytest.raises(NotInSpan):
        phi_prime_decompose(T ** 2, tower)
    d = phi_prime_decompose(T ** 2, tower, allow_residual=True)
    # residual is what is left of t^2 after removing the phi'_1 and phi'_0 pieces
    want = T ** 2 - tower.phi_prime(1) * ((F + 1) ** 2 / (3 * F))
    want = want - tower.phi_prime(0) * (want.coefficient((0,)) * (F + 1))
    assert d.residual == want
    assert d.residual == 2 * (F - 1) / (3 * F) * T
    assert d.reassemble(tower) == T ** 2


def test_decompose_reassembles(tower, rng):
    from conftest import random_frational
    target = TPolynomial.zero(1)
    picks = {0: random_frational(rng), 2: random_frational(rng),
             3: random_frational(rng)}
    for b, c in picks.items():
        target = target + tower.phi_prime(b) * c
    d = phi_prime_decompose(target, tower)
    assert d.residual.is_zero
    got = {b: c for b, c in d.coefficients.items() if not c.is_zero}
    want = {b: c for b, c in picks.items() if not c.is_zero}
    assert got == want


def test_decompose_pair(tower):
    p = (tower.phi_prime(1).embed(2, [0]) * tower.phi_prime(2).embed(2, [1])
         + tower.phi_prime(0).embed(2, [0]) * tower.phi_prime(0).embed(2, [1]) * F)
    out = phi_prime_decompose_pair(p, tower)
    assert out == {(1, 2): FR_ONE, (0, 0): F}
