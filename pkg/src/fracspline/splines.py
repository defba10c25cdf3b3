"""Time-domain evaluation of cardinal, fractional and polynomial-type splines."""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from scipy import integrate

from .combinatorics import binomial_row, gen_binomial


@dataclass(frozen=True)
class SplineOrder:
    """Order of a spline: integer ``n >= 1`` (classical) or real ``alpha``."""

    value: float
    kind: str = "fractional"

    def __post_init__(self):
        if self.kind == "classical":
            if int(self.value) != self.value or self.value < 1:
                raise ValueError("classical order must be an integer >= 1")
        elif self.kind == "fractional":
            if not self.value > 1:
                raise ValueError("fractional B-splines need alpha > 1")
        elif self.kind == "polynomial":
            if not self.value > 0:
                raise ValueError("fractional spline polynomials need alpha > 0")
        else:
            raise ValueError(f"unknown order kind {self.kind!r}")


@dataclass(frozen=True)
class GridFunction:
    """Samples ``values[i] = f(start + i*step)``."""

    start: float
    step: float
    values: tuple

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if len(self.values) == 0:
            raise ValueError("a grid function needs at least one sample")
        object.__setattr__(self, "values", tuple(self.values))

    @property
    def xs(self) -> list[float]:
        return [self.start + i * self.step for i in range(len(self.values))]

    @property
    def is_complex(self) -> bool:
        return any(isinstance(v, complex) for v in self.values)

    def __len__(self) -> int:
        return len(self.values)


def gamma(x: float) -> float:
    """Gamma function; exact at positive integers."""
    if float(x).is_integer() and x > 0:
        return float(math.factorial(int(x) - 1))
    return math.gamma(x)


def truncated_power(x: float, p: float) -> float:
    """``x**p`` for ``x > 0``, else 0."""
    return x**p if x > 0 else 0.0


# ---------------------------------------------------------------------------
# integer order


def _b1(x: float) -> float:
    # right-open [0, 1) so shifts of B_1 partition unity pointwise
    return 1.0 if 0.0 <= x < 1.0 else 0.0


def _bspline_explicit(n: int, x: float) -> float:
    if n == 1:
        return _b1(x)
    if x <= 0 or x >= n:
        return 0.0
    terms = [(-1) ** k * math.comb(n, k) * (x - k) ** (n - 1) for k in range(n + 1) if x - k > 0]
    return math.fsum(terms) / math.factorial(n - 1)


def _bspline_recursion(n: int, x: float) -> float:
    if n == 1:
        return _b1(x)
    if x <= 0 or x >= n:
        return 0.0
    return (x * _bspline_recursion(n - 1, x) + (n - x) * _bspline_recursion(n - 1, x - 1)) / (n - 1)


def _bspline_convolution(n: int, x: float) -> float:
    if n == 1:
        return _b1(x)
    if x <= 0 or x >= n:
        return 0.0
    # B_n(x) = int_0^1 B_{n-1}(x - t) dt, split where x - t crosses an integer;
    # the inner B_{n-1} comes from the recursion so the quadrature stays one level deep
    lo, hi = max(0.0, x - (n - 1)), min(1.0, x)
    if hi <= lo:
        return 0.0
    frac = x - math.floor(x)
    cuts = sorted({lo, hi, *(c for c in (frac,) if lo < c < hi)})
    total = 0.0
    for a, b in zip(cuts, cuts[1:]):
        val, _ = integrate.quad(lambda t: _bspline_recursion(n - 1, x - t), a, b, epsabs=1e-14, epsrel=1e-13)
        total += val
    return total


_BSPLINE_METHODS = {
    "explicit": _bspline_explicit,
    "recursion": _bspline_recursion,
    "convolution": _bspline_convolution,
}


def bspline_int(n: int, x: float, method: str = "explicit") -> float:
    """Cardinal B-spline ``B_n(x)`` supported on ``[0, n]``.

    ``method`` selects the explicit truncated-power sum, the two-term
    recursion, or adaptive quadrature of ``(B_{n-1} * B_1)(x)``.
    """
    if n < 1:
        raise ValueError("order must be >= 1")
    try:
        fn = _BSPLINE_METHODS[method]
    except KeyError:
        raise ValueError(f"unknown method {method!r}") from None
    return fn(int(n), float(x))


# ---------------------------------------------------------------------------
# fractional order


def _alternating_coeffs(alpha: float, count: int) -> list[float]:
    return [(-1) ** k * c for k, c in enumerate(binomial_row(alpha, count))]


def bspline_frac(alpha: float, x: float) -> float:
    """Fractional B-spline ``B_alpha(x)`` from its truncated-power expansion.

    Terms with ``x - k <= 0`` vanish; the remaining ``ceil(x)`` terms are
    accumulated with :func:`math.fsum` because they alternate and cancel
    heavily for large ``x``.
    """
    if not alpha > 1:
        raise ValueError("fractional B-splines need alpha > 1")
    if x <= 0:
        return 0.0
    count = math.ceil(x)
    coeffs = _alternating_coeffs(alpha, count)
    terms = [c * (x - k) ** (alpha - 1) for k, c in enumerate(coeffs) if x - k > 0]
    return math.fsum(terms) / gamma(alpha)


def bspline_frac_mp(alpha, x, dps: int = 40):
    """:func:`bspline_frac` in mpmath arithmetic at ``dps`` digits.

    Used where the float cancellation error (about ``eps * x**(alpha-1)``)
    would swamp the quantity being measured, e.g. far tails.
    """
    import mpmath

    with mpmath.workdps(dps):
        alpha = mpmath.mpf(alpha)
        x = mpmath.mpf(x)
        if x <= 0:
            return mpmath.mpf(0)
        total = mpmath.mpf(0)
        c = mpmath.mpf(1)
        k = 0
        while x - k > 0:
            total += c * (x - k) ** (alpha - 1)
            c = -c * (alpha - k) / (k + 1)
            k += 1
        return total / mpmath.gamma(alpha)


def _shifted_samples_mp(alpha, x, kmax: int, dps: int) -> list:
    """``[B_alpha(x + j) for j in 0..kmax]`` in mpmath, sharing powers and weights.

    For ``0 <= x < 1``, ``B_alpha(x+j) = sum_{k<=j} c_k (x+j-k)^(alpha-1) / Gamma(alpha)``
    only ever needs the ``kmax + 1`` powers ``(x+m)^(alpha-1)``.
    """
    import mpmath

    with mpmath.workdps(dps):
        a = mpmath.mpf(alpha)
        xm = mpmath.mpf(x)
        coeffs = [mpmath.mpf(1)]
        for k in range(kmax):
            coeffs.append(-coeffs[-1] * (a - k) / (k + 1))
        powers = [(xm + m) ** (a - 1) if xm + m > 0 else mpmath.mpf(0) for m in range(kmax + 1)]
        g = mpmath.gamma(a)
        return [mpmath.fdot(coeffs[: j + 1], reversed(powers[: j + 1])) / g for j in range(kmax + 1)]


def partition_of_unity(alpha: float, x: float, kmax: int, dps: int | None = None) -> list:
    """Partial sums ``P_K(x) = sum_{k=-K}^{K} B_alpha(x - k)`` for ``K = 0..kmax``.

    ``x`` is expected in ``[0, 1)``, where ``B_alpha(x - k) = 0`` for
    ``k >= 1``.  With ``dps`` the samples are taken in mpmath at that
    precision (the values are returned as mpf).
    """
    if dps is None:
        samples = [bspline_frac(alpha, x + j) for j in range(kmax + 1)]
    else:
        samples = _shifted_samples_mp(alpha, x, kmax, dps)
    out = []
    acc = 0
    # B_alpha(x - k) for k = 1..K vanish on [0, 1); only k <= 0 contributes
    for s in samples:
        acc = acc + s
        out.append(acc)
    return out


def frac_forward_diff(alpha: float, f: Callable[[float], complex], x: float, terms: int) -> complex:
    """``sum_{k<terms} (-1)^k binom(alpha, k) f(x - k)``."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    coeffs = _alternating_coeffs(alpha, terms)
    vals = [c * f(x - k) for k, c in enumerate(coeffs) if c != 0]
    if any(isinstance(v, complex) for v in vals):
        return complex(math.fsum(v.real for v in vals), math.fsum(v.imag for v in vals))
    return math.fsum(vals)


def frac_spline_poly(n: int, alpha: float, x: float) -> float:
    """Fractional spline polynomial ``S_n^{(alpha)}(x)``.

    ``sum_k (-1)^k binom(alpha+1, k) (x-k)_+^(alpha+n) / Gamma(alpha+n+1)``;
    at ``n = 0`` this is ``B_{alpha+1}``.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if x <= 0:
        return 0.0
    count = math.ceil(x)
    coeffs = _alternating_coeffs(alpha + 1, count)
    p = alpha + n
    terms = [c * (x - k) ** p for k, c in enumerate(coeffs) if x - k > 0]
    return math.fsum(terms) / gamma(alpha + n + 1)


def de_source_coeffs(alpha: float, terms: int) -> list[float]:
    """Weights ``a_k = (-1)^k binom(alpha, k)`` of the Dirac sources at ``k = 0..terms-1``."""
    if terms < 1:
        raise ValueError("terms must be >= 1")
    return _alternating_coeffs(alpha, terms)


# ---------------------------------------------------------------------------
# sampling


def grid_count(x0: float, x1: float, step: float) -> int:
    """Number of samples of ``x0, x0+step, ...`` up to ``x1`` inclusive."""
    if not step > 0:
        raise ValueError("step must be positive")
    if x1 < x0:
        raise ValueError("x1 must not be below x0")
    return int(math.floor((x1 - x0) / step + 1e-9)) + 1


def default_workers() -> int:
    env = os.environ.get("FRACSPLINE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def sample_grid(
    fn: Callable[[float], float],
    start: float,
    step: float,
    count: int,
    workers: int | None = None,
) -> GridFunction:
    """Sample ``fn`` at ``start + i*step`` for ``i < count``.

    Indices are independent, so with ``workers > 1`` they are evaluated on a
    thread pool; the output order never depends on scheduling.
    """
    if not step > 0:
        raise ValueError("step must be positive")
    if count < 1:
        raise ValueError("count must be >= 1")
    xs = [start + i * step for i in range(count)]
    workers = default_workers() if workers is None else workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(fn, xs))
    else:
        values = [fn(x) for x in xs]
    return GridFunction(start, step, tuple(values))


def evaluator(kind: str, order: float, n: int = 0) -> Callable[[float], float]:
    """Named one-argument evaluators used by the CLI and figure tables."""
    if kind == "spline":
        return lambda x: bspline_int(int(order), x)
    if kind == "fracspline":
        return lambda x: bspline_frac(order, x)
    if kind == "polyspline":
        return lambda x: frac_spline_poly(n, order, x)
    if kind == "kernel":
        from .distributional import kernel_Kalpha

        return lambda x: kernel_Kalpha(order, x)
    raise ValueError(f"unknown function kind {kind!r}")


__all__ = [
    "GridFunction",
    "SplineOrder",
    "bspline_frac",
    "bspline_frac_mp",
    "bspline_int",
    "de_source_coeffs",
    "evaluator",
    "frac_forward_diff",
    "frac_spline_poly",
    "gamma",
    "gen_binomial",
    "grid_count",
    "partition_of_unity",
    "sample_grid",
    "truncated_power",
]
