from framedvertex.curve import build_curve_series, square_ratio_coefficient
from framedvertex.ratfunc import FR_ONE, FRational
from framedvertex.vseries import VSeries, log_unit

F = FRational.variable()


def test_square_ratio_first_coefficient():
    # c_1 = 2 (f-1) / (3 f); the bare quotient-of-double-factorial form
    # (1/3)(1 - (-1/f)^2)/(1 + 1/f) counts the Jacobian of w = v^2/2 once,
    # not twice, and fails the deck-transformation identities downstream.
    assert square_ratio_coefficient(1) == 2 * (F - 1) / (3 * F)


def test_square_ratio_against_log_expansion():
    # independent oracle: expand -2 (f/(f+1)) [f log(1+z/f) + log(1-z)]
    N = 12
    z = VSeries.v(N)
    log1 = log_unit(VSeries.one(N) + z * (FR_ONE / F))
    log2 = log_unit(VSeries.one(N) - z)
    vsq = (F * log1 + log2) * (-2 * F / (F + 1))
    want = VSeries(2, [square_ratio_coefficient(k) for k in range(N - 1)], N)
    assert vsq.agrees_with(want)


def test_sqrt_coefficient_recursion():
    # sum_{i=0}^k a_i a_{k-i} must reproduce c_k
    curve = build_curve_series(10)
    a = [curve.F_of_z.coeff(k) for k in range(11)]
    for k in range(1, 9):
        s = sum((a[i] * a[k - i] for i in range(k + 1)),
                start=FRational.from_int(0))
        assert s == square_ratio_coefficient(k), k


def test_t_of_v_leading():
    curve = build_curve_series(10)
    assert curve.t_of_v.lead == -1
    assert curve.t_of_v.coeff(-1) == FR_ONE
    # first subleading coefficient h_1 = (f-1)/(3f)
    assert curve.t_of_v.coeff(0) == (F - 1) / (3 * F)


def test_reversion_round_trip():
    curve = build_curve_series(12)
    v_of_z = curve.F_of_z.shift(1)
    assert v_of_z.compose(curve.z_of_v).agrees_with(VSeries.v(12))


def test_involution_fixes_x():
    # f log(1 + z(v)/f) + log(1 - z(v)) must be even in v: the deck
    # transformation v -> -v preserves the base coordinate x
    curve = build_curve_series(12)
    z = curve.z_of_v
    one = VSeries.one(z.trunc)
    w = F * log_unit(one + z * (FR_ONE / F)) + log_unit(one - z)
    assert w.is_even()


def test_t_plus_st_is_even():
    curve = build_curve_series(10)
    assert (curve.t_of_v + curve.s_t_of_v).is_even()


def test_truncation_monotonicity():
    small = build_curve_series(8)
    big = build_curve_series(14)
    for name in ("F_of_z", "z_of_v", "t_of_v", "s_t_of_v"):
        assert getattr(big, name).agrees_with(getattr(small, name))


def test_cache_returns_same_object():
    assert build_curve_series(9) is build_curve_series(9)


def test_sprime_leading():
    curve = build_curve_series(10)
    assert curve.sprime.lead == 0
    assert curve.sprime.coeff(0) == FRational.from_int(-1)
