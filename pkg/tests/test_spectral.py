import cmath
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracspline import spectral as spec

omegas = st.floats(min_value=-30, max_value=30).filter(lambda w: abs(w) > 1e-3)


def test_integer_symbol_examples():
    assert spec.fourier_symbol_int(3, 0) == 1
    assert abs(spec.fourier_symbol_int(1, math.pi) - (-2j / math.pi)) < 1e-15


@given(st.integers(1, 6), omegas)
def test_integer_symbol_modulus(n, w):
    assert abs(abs(spec.fourier_symbol_int(n, w)) - abs(2 * math.sin(w / 2) / w) ** n) < 1e-12


def test_small_omega_branch_is_continuous():
    for w in (1e-7, 9.9e-7, 1.01e-6, 1e-3):
        # half-angle form avoids the cancellation in 1 - e^{-iw}
        exact = cmath.exp(-0.5j * w) * math.sin(w / 2) / (w / 2)
        assert abs(spec.symbol_base(w) - exact) < 1e-12


def test_fractional_symbol_examples():
    assert spec.fourier_symbol_frac(2.5, 0) == 1
    for w in (0.3, 1.0, 4.0, 9.0, -7.5):
        assert abs(spec.fourier_symbol_frac(2.0, w) - spec.fourier_symbol_int(2, w)) < 1e-12
    for k in (1, 2, -3):
        assert abs(spec.fourier_symbol_frac(2.5, 2 * math.pi * k)) < 1e-12


@given(st.floats(1.01, 6), omegas)
def test_fractional_symbol_conjugate_symmetry(a, w):
    assert abs(spec.fourier_symbol_frac(a, -w) - spec.fourier_symbol_frac(a, w).conjugate()) < 1e-12


@given(st.floats(1.01, 3), st.floats(1.01, 3), st.floats(-6, 6))
def test_fractional_symbol_multiplicative_inside_first_band(a, b, w):
    # convolution B_a * B_b = B_{a+b}; principal branch is multiplicative for |w| < 2 pi
    lhs = spec.fourier_symbol_frac(a, w) * spec.fourier_symbol_frac(b, w)
    assert abs(lhs - spec.fourier_symbol_frac(a + b, w)) < 1e-12


def test_symbol_callable_wrapper():
    s = spec.FourierSymbol(2.5)
    assert s(0.4) == spec.fourier_symbol_frac(2.5, 0.4)


def test_nabla_symbol_examples():
    p, c = spec.nabla_symbol(1, 0.7, 2)
    assert abs(p - (1 - cmath.exp(-0.7j))) < 1e-15 and p == pytest.approx(c)
    p, c = spec.nabla_symbol(2.5, 1.0, 10**4)
    assert abs(p - c) <= 5e-9
    for a in (0.5, 1.5, 2.5):
        assert spec.nabla_symbol(a, 0.0, 10)[1] == 0


def test_nabla_convergence_rates():
    assert abs(-spec.convergence_rate(1.5, 0.0) - 1.5) <= 0.15
    # away from w = 0 the oscillating tail gains one order
    assert abs(-spec.convergence_rate(1.5, 1.0) - 2.5) <= 0.15


def test_exponential_generating_function():
    p, c = spec.gf_bn_hat(1e-9, 1.3, 40)
    assert abs(c - math.exp(1.3)) < 1e-8
    p, c = spec.gf_bn_hat(0.7, 0, 5)
    assert p == c == 1
    p, c = spec.gf_bn_hat(1.0, 2.0, 50)
    assert abs(p - c) <= 1e-12


@pytest.mark.parametrize("w,N", [(0.0, 3), (0.5, 60), (0.9, 200)])
def test_series_representation(w, N):
    p, c = spec.series_rep_check(w, N)
    assert abs(p - c) <= 1e-10
    assert spec.series_rep_bound(w, N) <= 1e-10


def test_series_representation_outside_region():
    with pytest.raises(spec.ConvergenceRegionError):
        spec.series_rep_check(2.0, 10)


def test_dft_hat_function():
    chk = spec.dft_crosscheck(2.0, 32, 4096)
    assert chk.max_deviation <= 1e-4
    assert abs(chk.mass - 1) <= 1e-6


def test_dft_needs_power_of_two_and_enough_support():
    with pytest.raises(ValueError):
        spec.dft_crosscheck(2.0, 32, 3000)
    with pytest.raises(spec.InsufficientSupportError):
        spec.dft_crosscheck(1.5, 8, 1024)


def test_fourier_power_examples():
    c = [1, 2j, -0.5, 0.25 + 1j]
    four = spec.nfold_fourier_coeffs(c, 4)
    assert four.scale == (2 * math.pi) ** 2 and not four.reflected and list(four.coeffs) == c
    two = spec.nfold_fourier_coeffs(c, 2)
    assert two.reflected and two.scale == 2 * math.pi
    assert list(two.coeffs) == [(-1) ** m * cm for m, cm in enumerate(c)]
    once_twice = spec.apply_fourier(spec.nfold_fourier_coeffs(c, 1), 1)
    assert once_twice == two


@given(st.integers(0, 7), st.integers(0, 7))
def test_fourier_powers_compose(a, b):
    c = [complex(k, -k) for k in range(9)]
    assert spec.apply_fourier(spec.nfold_fourier_coeffs(c, a), b) == spec.nfold_fourier_coeffs(c, a + b)


def test_negative_counts_rejected():
    with pytest.raises(ValueError):
        spec.nfold_fourier_coeffs([1], -1)
    with pytest.raises(ValueError):
        spec.apply_fourier(spec.nfold_fourier_coeffs([1], 1), -2)
