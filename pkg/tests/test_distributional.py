import json
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fracspline import distributional as dist
from fracspline.exact_core import expm1_over_t, series_exp_linear, series_mul, series_pow


def _exact_symbol_series(alpha: int, x, order: int):
    """Coefficients of ((e^s-1)/s)^alpha e^{xs} via the exact series module."""
    return list(series_mul(series_pow(expm1_over_t(order), alpha), series_exp_linear(Fraction(x), order)).coeffs)


def test_leading_coefficient_is_one():
    for a in (1.5, 2, 3.7):
        assert dist.delta_coeffs(a, 0.0, 3).coeffs[0] == pytest.approx(1)


@pytest.mark.parametrize("x", [0, 1, Fraction(1, 2)])
def test_integer_order_coefficients_against_series(x):
    got = dist.delta_coeffs_exact(2, x, 10)
    assert got == _exact_symbol_series(2, x, 10)


def test_fractional_coefficients_against_real_power_series():
    from fracspline.exact_core import series_pow_real

    a = Fraction(5, 2)
    ref = series_pow_real(expm1_over_t(8), a).coeffs
    got = dist.delta_coeffs(2.5, 0.0, 8).coeffs
    for u, v in zip(got, ref):
        assert abs(u - float(v)) < 1e-13


def test_expansion_json_round_trip():
    c = dist.delta_coeffs(2.5, 0.5, 6)
    back = dist.DeltaExpansion.from_dict(json.loads(json.dumps(c.to_dict())))
    assert back == c
    assert set(c.to_dict()) == {"alpha", "x", "coeffs", "center", "reflected"}


def test_expansion_rejects_non_finite():
    with pytest.raises(ValueError):
        dist.DeltaExpansion(2.0, 0.0, (1, float("nan")))


def test_shift_examples():
    c = dist.delta_coeffs(3, 0.0, 6)
    d = dist.shifted_coeffs(c, 1.3)
    assert d.coeffs[0] == c.coeffs[0] and d.center == 1.3
    d0 = dist.shifted_coeffs(c, 0.0)
    assert list(d0.coeffs) == [(-1) ** m * cm for m, cm in enumerate(c.coeffs)]


def _reverse_loop_oracle(c, x, order):
    out = []
    for m in range(order + 1):
        s = 0j
        for n in reversed(range(min(m, len(c) - 1) + 1)):
            s += c[n] * (-1) ** n * x ** (m - n) / math.factorial(m - n)
        out.append(s)
    return out


def test_shift_against_reverse_double_loop():
    rng = random.Random(5)
    c = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(9)]
    d = dist.shifted_coeffs(dist.DeltaExpansion(2.0, 0.0, tuple(c)), 0.7, 8).coeffs
    for u, v in zip(d, _reverse_loop_oracle(c, 0.7, 8)):
        assert abs(u - v) <= 1e-13


@settings(max_examples=40)
@given(st.lists(st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), min_size=1, max_size=10),
       st.floats(-2, 2), st.floats(-2, 2))
def test_shifts_compose(c, x, y):
    # moving the centre by x then by y equals moving it by x + y
    e = dist.DeltaExpansion(2.0, 0.0, tuple(c))
    one = dist.shifted_coeffs(e, x + y).coeffs
    # d(x+y) = sum_n c_n (-1)^n (x+y)^(m-n)/(m-n)!; binomial expansion of the shift factor
    two = []
    for m in range(len(c)):
        s = 0j
        for n in range(m + 1):
            for j in range(m - n + 1):
                s += c[n] * (-1) ** n * x**j * y ** (m - n - j) / (math.factorial(j) * math.factorial(m - n - j))
        two.append(s)
    for u, v in zip(one, two):
        assert abs(u - v) <= 1e-10 * max(1, abs(v))


def test_shift_rejects_non_zero_centre():
    e = dist.DeltaExpansion(2.0, 0.0, (1,), center=1.0)
    with pytest.raises(ValueError):
        dist.shifted_coeffs(e, 0.5)


# test functions and pairing


def test_gaussian_derivatives():
    g = dist.gaussian(6)
    assert g.derivatives_at_zero[:5] == (1.0, 0.0, -2.0, 0.0, 12.0)
    assert dist.pair_with_test([1, 0, 0], g, 2) == 1
    assert dist.pair_with_test([0, 0, 1], g, 2) == -2


def test_shifted_gaussian_derivatives_by_finite_differences():
    g = dist.shifted_gaussian(3, 0.3)
    h = 1e-4
    d1 = (g(h) - g(-h)) / (2 * h)
    d2 = (g(h) - 2 * g(0) + g(-h)) / h**2
    assert d1 == pytest.approx(g.derivatives_at_zero[1], rel=1e-7)
    assert d2 == pytest.approx(g.derivatives_at_zero[2], rel=1e-6)


def test_pairing_with_flat_test_function_is_zero():
    flat = dist.TestFunction(lambda x: 0.0, (0.0,) * 6, "flat")
    assert dist.pair_with_test([1, 2, 3, 4, 5, 6], flat, 5) == 0


def test_pairing_needs_enough_derivatives():
    with pytest.raises(ValueError):
        dist.pair_with_test([1, 2, 3], dist.gaussian(1), 2)


def test_hat_integral_two_ways():
    # int_0^2 B_2(u) e^{-u^2} du, exactly: int_0^1 u e^{-u^2} + int_1^2 (2-u) e^{-u^2}
    erf = math.erf
    sq = math.sqrt(math.pi) / 2
    exact = (1 - math.exp(-1)) / 2 + 2 * sq * (erf(2) - erf(1)) - (math.exp(-1) - math.exp(-4)) / 2
    assert dist.spline_test_integral(2.0, dist.gaussian(2)) == pytest.approx(exact, abs=1e-10)


def test_pairing_partial_sums():
    phi = dist.shifted_gaussian(30, 0.3)
    r = dist.pairing_residual(2.0, phi, 30, "moment (-1)^n")
    assert r.partial_sums[0] == pytest.approx(r.coefficients[0] * phi.derivatives_at_zero[0])
    assert abs(r.partial_sums[-1] - r.lhs) < 1e-6
    bad = dist.pairing_residual(2.0, phi, 30, "e^{+i pi alpha}")
    assert abs(bad.partial_sums[-1] - bad.lhs) > 0.1


# fractional integration


def test_kernel_examples():
    assert dist.kernel_Kalpha(1, 0.3) == 1 and dist.kernel_Kalpha(1, 0) == 0
    assert dist.kernel_Kalpha(2, 3) == 3
    assert dist.kernel_Kalpha(0.5, 4) == pytest.approx(1 / (2 * math.sqrt(math.pi)), rel=1e-15)


def test_fractional_integral_examples():
    assert dist.fractional_integral(1, lambda t: 1.0, 2.5) == pytest.approx(2.5, rel=1e-13)
    assert dist.fractional_integral(2, lambda t: 1.0, 3.0) == pytest.approx(4.5, rel=1e-13)
    assert dist.fractional_integral(0.5, lambda t: 1.0, 0.0) == 0


@pytest.mark.parametrize("a,b", [(0.5, 0.5), (1.0, 1.3), (0.7, 2.0), (0.3, 0.4)])
def test_kernel_semigroup(a, b):
    for x in (0.5, 1.0, 3.0):
        got = dist.fractional_integral(a, lambda t: dist.kernel_Kalpha(b, t), x)
        assert got == pytest.approx(dist.kernel_Kalpha(a + b, x), abs=1e-8)


def test_weak_form_random_points():
    rng = random.Random(1)
    for a in (1.5, 2.5, 3.7):
        for _ in range(100):
            lhs, rhs = dist.weak_de_residual(a, rng.uniform(0, 20))
            assert abs(lhs - rhs) <= 1e-10
    assert dist.weak_de_residual(2.5, -1.0) == (0.0, 0.0)
