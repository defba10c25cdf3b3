"""Fourier symbols of B-splines and frequency-domain checks."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .combinatorics import binomial_row
from .splines import bspline_frac

SMALL_OMEGA = 1e-6


class ConvergenceRegionError(ValueError):
    """A series identity was requested outside the region where it converges."""


class InsufficientSupportError(ValueError):
    """The sampling window does not cover enough of the spline's tail."""


@dataclass(frozen=True)
class FourierSymbol:
    """Principal-branch symbol ``((1 - e^{-iw}) / (iw))**alpha`` as a callable."""

    alpha: float
    branch: str = "principal"

    def __call__(self, omega: float) -> complex:
        return fourier_symbol_frac(self.alpha, omega)


def symbol_base(omega: float) -> complex:
    """``(1 - e^{-iw}) / (iw)``, evaluated as ``e^{-iw/2} * 2 sin(w/2) / w``.

    The half-angle form has no cancellation, so it stays accurate to a few
    ulps as ``w -> 0``, where ``1 - e^{-iw}`` loses about ``eps / |w|``.
    """
    return cmath.exp(-0.5j * omega) * _sinc_half(omega)


def _sinc_half(omega: float) -> float:
    """``2 sin(w/2) / w``, continuous at 0."""
    if abs(omega) < SMALL_OMEGA:
        return 1.0 - omega * omega / 24.0
    return 2.0 * math.sin(omega / 2.0) / omega


def fourier_symbol_int(n: int, omega: float) -> complex:
    """``((1 - e^{-iw}) / (iw))**n``; equals 1 at ``w = 0``."""
    if omega == 0:
        return 1 + 0j
    return symbol_base(omega) ** int(n)


def fourier_symbol_frac(alpha: float, omega: float) -> complex:
    """Principal-branch ``((1 - e^{-iw}) / (iw))**alpha``.

    On ``|w| < 2 pi`` the base factors as ``e^{-iw/2} * 2 sin(w/2)/w`` with a
    positive real factor, giving ``(2 sin(w/2)/w)**alpha * e^{-i alpha w/2}``;
    elsewhere the principal complex logarithm is used.
    """
    if omega == 0:
        return 1 + 0j
    if abs(omega) < 2 * math.pi:
        return _sinc_half(omega) ** alpha * cmath.exp(-0.5j * alpha * omega)
    base = symbol_base(omega)
    if base == 0:
        return 0j
    return cmath.exp(alpha * cmath.log(base))


def nabla_symbol(alpha: float, omega: float, terms: int) -> tuple[complex, complex]:
    """Partial sum ``sum_{k<terms} (-1)^k binom(alpha,k) e^{-ikw}`` and ``(1 - e^{-iw})**alpha``."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    coeffs = binomial_row(alpha, terms)
    re, im = [], []
    for k, c in enumerate(coeffs):
        v = (-1) ** k * c * cmath.exp(-1j * k * omega)
        re.append(v.real)
        im.append(v.imag)
    partial = complex(math.fsum(re), math.fsum(im))
    if omega == 0:
        closed = 0j if alpha > 0 else 1 + 0j
    else:
        closed = (1 - cmath.exp(-1j * omega)) ** alpha
    return partial, closed


def convergence_rate(alpha: float, omega: float, terms: Sequence[int] = tuple(2**j for j in range(4, 11))) -> float:
    """Log-log slope of ``|partial - closed|`` against the number of terms (a negative number)."""
    errs = []
    for K in terms:
        p, c = nabla_symbol(alpha, omega, K)
        errs.append(abs(p - c))
    slope, _ = np.polyfit(np.log(terms), np.log(errs), 1)
    return float(slope)


def gf_bn_hat(omega: float, t: complex, terms: int) -> tuple[complex, complex]:
    """Truncated exponential generating function of the integer-order symbols.

    Returns ``(sum_{n<terms} Bhat_n(w) t^n / n!, exp(t (1 - e^{-iw}) / (iw)))``.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    base = symbol_base(omega) if omega != 0 else 1 + 0j
    term = 1 + 0j
    re, im = [], []
    for n in range(terms):
        re.append(term.real)
        im.append(term.imag)
        term = term * base * t / (n + 1)
    return complex(math.fsum(re), math.fsum(im)), cmath.exp(t * base)


def series_rep_check(omega: float, terms: int) -> tuple[complex, complex]:
    """``sum_{n<terms} (iw)^n Bhat_n(w)`` against ``cos w + i sin w``.

    Each summand is ``(1 - e^{-iw})^n``, so the sum is geometric and only
    converges for ``|1 - e^{-iw}| = |2 sin(w/2)| < 1``; outside that region a
    :class:`ConvergenceRegionError` is raised.
    """
    ratio = abs(2 * math.sin(omega / 2))
    if ratio >= 1:
        raise ConvergenceRegionError(
            f"|1 - e^(-i w)| = {ratio:.6g} >= 1 at w = {omega}: the series diverges"
        )
    q = 1 - cmath.exp(-1j * omega)
    term = 1 + 0j
    re, im = [], []
    for n in range(terms):
        re.append(term.real)
        im.append(term.imag)
        term *= q
    return complex(math.fsum(re), math.fsum(im)), complex(math.cos(omega), math.sin(omega))


def series_rep_bound(omega: float, terms: int) -> float:
    """Geometric tail bound ``r^N / (1 - r)`` with ``r = |1 - e^{-iw}|``."""
    r = abs(2 * math.sin(omega / 2))
    return r**terms / (1 - r)


@dataclass(frozen=True)
class DFTCheck:
    max_deviation: float
    mass: complex
    bins_compared: int
    step: float
    tail_estimate: float


def _tail_estimate(alpha: float, length: float) -> float:
    # |B_alpha(x)| <= C x^{-alpha-1}: integrate the envelope fitted on the last unit cell
    xs = np.linspace(length - 1, length, 17)
    peak = max(abs(bspline_frac(alpha, float(x))) for x in xs)
    return peak * length / alpha


def dft_crosscheck(
    alpha: float,
    length: float,
    samples: int,
    band: float = 0.25,
    tail_tol: float = 1e-6,
) -> DFTCheck:
    """Compare a rectangle-rule DFT of sampled ``B_alpha`` with the closed-form symbol.

    ``B_alpha`` is sampled at ``x_m = m h`` on ``[0, length)`` with
    ``h = length / samples``; ``F_j = h sum_m B(x_m) e^{-i w_j x_m}`` at
    ``w_j = 2 pi j / length`` is compared with :func:`fourier_symbol_frac` on
    ``|w_j| <= band * pi / h``.
    """
    if samples & (samples - 1) or samples < 2:
        raise ValueError("samples must be a power of two")
    tail = _tail_estimate(alpha, length)
    if tail > tail_tol:
        raise InsufficientSupportError(
            f"window [0, {length}) leaves an estimated tail mass {tail:.3g} > {tail_tol:.3g}"
        )
    h = length / samples
    xs = np.arange(samples) * h
    vals = np.array([bspline_frac(alpha, float(x)) for x in xs])
    spectrum = h * np.fft.fft(vals)
    freqs = 2 * np.pi * np.fft.fftfreq(samples, d=h)
    keep = np.abs(freqs) <= band * np.pi / h
    expected = np.array([fourier_symbol_frac(alpha, float(w)) for w in freqs[keep]])
    dev = float(np.max(np.abs(spectrum[keep] - expected)))
    return DFTCheck(dev, complex(spectrum[0]), int(keep.sum()), h, tail)


# ---------------------------------------------------------------------------
# n-fold Fourier action on delta expansions


@dataclass(frozen=True)
class FourierImage:
    """Result of ``n`` Fourier transforms applied to ``sum c_m delta^(m)``.

    ``coeffs`` are the coefficients in the basis ``delta^(m)(x)`` after the
    phase ``sigma_{n,m} = i^{nm}`` has been applied; ``scale`` is
    ``(2 pi)^floor(n/2)`` and ``reflected`` marks the cases ``n = 2, 3 (mod 4)``
    where the image is the reflected original.
    """

    n: int
    scale: float
    reflected: bool
    coeffs: tuple


def _sigma(n: int, m: int) -> complex:
    return (1, 1j, -1, -1j)[(n * m) % 4]


def nfold_fourier_coeffs(c: Sequence[complex], n: int) -> FourierImage:
    """Apply ``n`` Fourier transforms to the delta-derivative coefficients ``c``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    coeffs = tuple(complex(cm) * _sigma(n, m) for m, cm in enumerate(c))
    return FourierImage(n, (2 * math.pi) ** (n // 2), n % 4 in (2, 3), coeffs)


def apply_fourier(image: FourierImage, k: int) -> FourierImage:
    """Apply ``k`` further transforms to an existing image.

    Phases compose multiplicatively; the scale and reflection are fixed by the
    total count, since ``floor(a/2) + floor(b/2)`` differs from
    ``floor((a+b)/2)`` when both counts are odd.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    coeffs = tuple(cm * _sigma(k, m) for m, cm in enumerate(image.coeffs))
    total = image.n + k
    return FourierImage(total, (2 * math.pi) ** (total // 2), total % 4 in (2, 3), coeffs)
