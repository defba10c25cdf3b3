"""Stirling, Bernoulli, Catalan and Array-type polynomial families.

Every family is computed exactly when its inputs are rational.  Where a
closed recurrence exists it is cross-checked against generating-function
coefficient extraction from :mod:`fracspline.exact_core`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC

from .exact_core import (
    SeriesPreconditionError,
    TruncatedSeries,
    as_rational,
    series_coeff,
    series_div_t,
    series_exp_linear,
    series_mul,
    series_pow,
    series_pow_real,
)


class ExtrapolationError(ArithmeticError):
    """A regularized sum failed to settle under extrapolation."""

    def __init__(self, message: str, diagnostics: dict):
        super().__init__(message)
        self.diagnostics = diagnostics


# ---------------------------------------------------------------------------
# Stirling numbers of the second kind


@lru_cache(maxsize=None)
def _stirling2_row(m: int) -> tuple[int, ...]:
    if m == 0:
        return (1,)
    prev = _stirling2_row(m - 1)
    row = [0] * (m + 1)
    for n in range(1, m + 1):
        left = prev[n] if n < len(prev) else 0
        row[n] = n * left + prev[n - 1]
    return tuple(row)


def stirling2(m: int, n: int) -> int:
    """S2(m, n) via the triangular recurrence ``S2(m,n) = n S2(m-1,n) + S2(m-1,n-1)``."""
    if m < 0 or n < 0:
        raise ValueError("stirling2 needs nonnegative arguments")
    if n > m:
        return 0
    return _stirling2_row(m)[n]


def stirling2_gf(m: int, n: int) -> int:
    """S2(m, n) as ``m!`` times the ``z^m`` coefficient of ``(e^z - 1)^n / n!``."""
    if n > m:
        return 0
    base = series_exp_linear(1, m) - 1
    c = series_coeff(series_pow(base, n), m) * math.factorial(m) / math.factorial(n)
    assert c.denominator == 1
    return int(c)


# ---------------------------------------------------------------------------
# binomials, Catalan, Bernoulli numbers


def gen_binomial(alpha, k: int):
    """Generalized binomial ``binom(alpha, k)`` by the product recurrence.

    Exact (a Fraction) for rational ``alpha``; a float otherwise.  An integer
    ``alpha < k`` hits the factor ``alpha - alpha`` and gives exactly zero.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if isinstance(alpha, _RationalABC):
        alpha = as_rational(alpha)
        r = Fraction(1)
    else:
        alpha = float(alpha)
        r = 1.0
    for j in range(1, k + 1):
        r = r * (alpha - j + 1) / j
    return r


def gen_binomial_gamma(alpha: float, k: int) -> float:
    """``Gamma(alpha+1) / (Gamma(k+1) Gamma(alpha-k+1))``.

    A pole of ``Gamma(alpha-k+1)`` (integer ``0 <= alpha < k``) is read as
    ``1/Gamma = 0``.  A pole of ``Gamma(alpha+1)`` raises ValueError.
    """
    lower = alpha - k + 1
    if alpha + 1 <= 0 and float(alpha).is_integer():
        raise ValueError("Gamma(alpha+1) has a pole; use gen_binomial")
    if lower <= 0 and float(lower).is_integer():
        return 0.0
    return math.gamma(alpha + 1) / (math.gamma(k + 1) * math.gamma(lower))


def binomial_row(alpha, count: int) -> list:
    """``[binom(alpha, 0), ..., binom(alpha, count-1)]`` in one pass."""
    if isinstance(alpha, _RationalABC):
        alpha = as_rational(alpha)
        r = Fraction(1)
    else:
        alpha = float(alpha)
        r = 1.0
    out = []
    for j in range(count):
        out.append(r)
        r = r * (alpha - j) / (j + 1)
    return out


def catalan(n: int) -> int:
    if n < 0:
        raise ValueError("catalan needs n >= 0")
    return math.comb(2 * n, n) // (n + 1)


@lru_cache(maxsize=None)
def _bernoulli_numbers(upto: int) -> tuple[Fraction, ...]:
    bs = [Fraction(1)]
    for m in range(1, upto + 1):
        s = sum(math.comb(m + 1, k) * bs[k] for k in range(m))
        bs.append(-s / (m + 1))
    return tuple(bs)


def bernoulli_number(m: int) -> Fraction:
    """Classical Bernoulli number with ``B_1 = -1/2``."""
    return _bernoulli_numbers(m)[m]


# ---------------------------------------------------------------------------
# Norlund-Bernoulli polynomials of negative order


def bernoulli_neg_order(m: int, n: int, x=0) -> Fraction:
    """``B_m^{(-n)}(x)``: ``m!`` times the ``z^m`` coefficient of ``((e^z-1)/z)^n e^{zx}``."""
    x = as_rational(x)
    base = series_div_t(series_exp_linear(1, m + 1) - 1)
    series = series_mul(series_pow(base, n), series_exp_linear(x, m))
    return series_coeff(series, m) * math.factorial(m)


def bernoulli_neg_order_poly(m: int, n: int) -> "PolynomialInX":
    """``B_m^{(-n)}(x)`` as a polynomial in ``x``."""
    base = series_pow(series_div_t(series_exp_linear(1, m + 1) - 1), n)
    # [z^m] base(z) e^{zx} = sum_j base_{m-j} x^j / j!
    fm = math.factorial(m)
    return PolynomialInX([base.coeffs[m - j] * fm / math.factorial(j) for j in range(m + 1)])


# ---------------------------------------------------------------------------
# generalized Array-type polynomials


@dataclass(frozen=True)
class PolynomialInX:
    """Polynomial with Fraction coefficients in ascending degree."""

    coefficients: tuple = field(default_factory=tuple)

    def __init__(self, coefficients=()):
        cs = [as_rational(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coefficients", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        """Horner evaluation; exact for rational ``x``."""
        if isinstance(x, _RationalABC):
            acc = Fraction(0)
        else:
            acc = 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + (c if isinstance(acc, Fraction) else float(c))
        return acc

    def scale(self, c) -> "PolynomialInX":
        return PolynomialInX([c * a for a in self.coefficients])


@dataclass(frozen=True)
class ArrayPolyParams:
    """Parameters ``(a, b, lam)`` of the Array-type generating function.

    ``log_a``/``log_b`` hold ``ln a``/``ln b`` as Fractions when they are
    rational, which is what makes exact coefficient extraction possible.
    They are inferred for ``a, b`` equal to ``1`` or ``e``.
    """

    a: float = 1.0
    b: float = math.e
    lam: float = 1.0
    log_a: Fraction | None = None
    log_b: Fraction | None = None

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("a and b must be positive")
        for name, value in (("log_a", self.a), ("log_b", self.b)):
            if getattr(self, name) is None:
                if value == 1:
                    object.__setattr__(self, name, Fraction(0))
                elif value == math.e:
                    object.__setattr__(self, name, Fraction(1))
            else:
                object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def from_exponents(cls, p, q, lam=1) -> "ArrayPolyParams":
        """``a = e**p``, ``b = e**q`` with rational ``p``, ``q``."""
        p, q = as_rational(p), as_rational(q)
        return cls(math.exp(p), math.exp(q), lam, log_a=p, log_b=q)

    @property
    def exact_mode(self) -> bool:
        return self.lam == 1 and self.log_a is not None and self.log_b is not None

    @property
    def ln_a(self) -> float:
        return float(self.log_a) if self.log_a is not None else math.log(self.a)

    @property
    def ln_b(self) -> float:
        return float(self.log_b) if self.log_b is not None else math.log(self.b)


STIRLING_TYPE = ArrayPolyParams(1.0, math.e, 1.0)
REFLECTED_STIRLING_TYPE = ArrayPolyParams(math.e, 1.0, 1.0)


def _array_base_exact(order: int, params: ArrayPolyParams) -> TruncatedSeries:
    numer = series_exp_linear(params.log_b, order + 1) - series_exp_linear(params.log_a, order + 1)
    return series_div_t(numer)


def array_gf_base(k, order: int, params: ArrayPolyParams = STIRLING_TYPE) -> TruncatedSeries:
    """``((lam b^t - a^t)/t)^k`` truncated at ``order`` (requires ``lam = 1``).

    Integer ``k`` uses repeated squaring; real ``k`` the Miller recurrence,
    which needs the base's constant term ``ln b - ln a`` to equal 1.
    """
    if params.lam != 1:
        raise SeriesPreconditionError(
            "lam != 1 puts a pole in the base; use array_poly's Laurent route"
        )
    integer_k = isinstance(k, int) or (isinstance(k, _RationalABC) and as_rational(k).denominator == 1)
    if params.exact_mode and (integer_k or isinstance(k, _RationalABC)):
        base = _array_base_exact(order, params)
    else:
        numer = series_exp_linear(params.ln_b, order + 1, exact=False) - series_exp_linear(
            params.ln_a, order + 1, exact=False
        )
        base = series_div_t(numer)
    if integer_k:
        return series_pow(base, int(k))
    c0 = base.coeffs[0]
    if c0 != 1:
        # rescale to constant term 1; principal power of the constant
        if base.exact:
            base = base.to_float()
        c0 = base.coeffs[0]
        unit = TruncatedSeries([c / c0 for c in base.coeffs], exact=False)
        return series_pow_real(unit, k) * (c0 ** k)
    return series_pow_real(base, k)


def _shift_series(x, order: int, params: ArrayPolyParams, exact: bool) -> TruncatedSeries:
    if exact:
        return series_exp_linear(params.log_b * as_rational(x), order)
    return series_exp_linear(params.ln_b * complex(x), order, exact=False)


def _array_scale(n: int, k):
    """``binom(n+k, k) n!``: rising product ``(k+1)(k+2)...(k+n)``."""
    r = Fraction(1) if isinstance(k, _RationalABC) else 1.0
    for j in range(1, n + 1):
        r *= k + j
    return r


def array_poly(n: int, k, x=None, params: ArrayPolyParams = STIRLING_TYPE):
    """Generalized Array-type polynomial ``S^{n+k}_k(x; a, b; lam)``.

    Defined by ``binom(n+k, k) n!`` times the ``t^n`` coefficient of
    ``((lam b^t - a^t)/t)^k b^{xt}``.  Exact (a Fraction, or a
    :class:`PolynomialInX` when ``x`` is None) in exact mode with rational
    ``x`` and ``k``; a complex number otherwise.  ``k`` may be a positive real
    in float mode (this is how ``S^{n+alpha}_alpha`` is reached).

    For ``lam != 1`` the base has a simple pole ``(lam-1)/t``; the coefficient
    is then read off as ``[t^(n+k)] (lam b^t - a^t)^k b^{xt}`` (integer ``k``
    only).
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    k_rational = isinstance(k, _RationalABC)
    x_rational = x is None or isinstance(x, (_RationalABC, float))
    exact = params.exact_mode and k_rational and x_rational
    if params.lam != 1:
        return _array_poly_laurent(n, k, x, params)
    if x is None:
        if not exact:
            raise ValueError("symbolic x needs exact mode (lam = 1, a, b rational powers of e, rational k)")
        base = array_gf_base(k, n, params)
        scale = _array_scale(n, as_rational(k))
        q = params.log_b
        coeffs = [base.coeffs[n - j] * q**j / math.factorial(j) for j in range(n + 1)]
        return PolynomialInX(coeffs).scale(scale)
    base = array_gf_base(as_rational(k) if exact else k, n, params)
    if exact and not base.exact:
        exact = False
    if not exact:
        base = base.to_float()
    shift = _shift_series(x, n, params, exact)
    coeff = series_coeff(series_mul(base, shift), n)
    return _array_scale(n, as_rational(k) if exact else float(k)) * coeff


def _array_poly_laurent(n: int, k, x, params: ArrayPolyParams) -> complex:
    if not (isinstance(k, int) and k >= 1):
        raise SeriesPreconditionError("lam != 1 is only supported for integer k")
    order = n + k
    numer = series_exp_linear(params.ln_b, order, exact=False) * params.lam - series_exp_linear(
        params.ln_a, order, exact=False
    )
    xs = 0.0 if x is None else complex(x)
    prod = series_mul(series_pow(numer, k), series_exp_linear(params.ln_b * xs, order, exact=False))
    return _array_scale(n, float(k)) * series_coeff(prod, order)


# ---------------------------------------------------------------------------
# explicit (finite-difference) representation


def _richardson(values: list[float], hs: list[float]) -> tuple[float, float, list[list[float]]]:
    """Neville-Richardson table for h -> 0 with halving steps; returns (best, residual, table)."""
    table = [list(values)]
    for level in range(1, len(values)):
        prev = table[-1]
        ratio = 2.0**level
        table.append([(ratio * prev[i + 1] - prev[i]) / (ratio - 1) for i in range(len(prev) - 1)])
    diag = [row[-1] for row in table]
    best = diag[-1]
    residual = abs(diag[-1] - diag[-2]) if len(diag) > 1 else math.inf
    return best, residual, table


def abel_regularized_sum(
    n: int,
    alpha: float,
    x: float = 0.0,
    terms: int | None = None,
    levels: int = 12,
    tol: float = 1e-6,
) -> tuple[float, dict]:
    """Abel sum of ``sum_k (-1)^k binom(alpha,k) (x+k)^(n+alpha) / Gamma(alpha+1)``.

    The power series in ``z`` is evaluated at ``z = 1 - 2^-j`` for
    ``j = 3..levels`` and Richardson-extrapolated to ``z -> 1``.  Returns the
    extrapolant and a diagnostics dict; raises :class:`ExtrapolationError`
    (carrying the same diagnostics) when successive extrapolants differ by
    more than ``tol`` relative to ``max(1, |value|)``.
    """
    if x < 0:
        raise ValueError("abel mode needs x >= 0 (real powers of negative bases)")
    if terms is None:
        terms = 40 * 2**levels
    if terms < 8:
        raise ValueError("abel mode needs at least 8 terms")
    alpha = float(alpha)
    p = n + float(alpha)
    coeffs = binomial_row(alpha, terms)
    a_k = [(-1) ** k * c * (x + k) ** p for k, c in enumerate(coeffs)]
    g = math.gamma(alpha + 1)
    hs, values = [], []
    for j in range(3, levels + 1):
        h = 2.0**-j
        z = 1.0 - h
        zk = 1.0
        parts = []
        for a in a_k:
            parts.append(a * zk)
            zk *= z
            if zk < 1e-300:
                break
        values.append(math.fsum(parts) / g)
        hs.append(h)
    best, residual, _ = _richardson(values, hs)
    diagnostics = {
        "values": values,
        "h": hs,
        "extrapolant": best,
        "residual": residual,
        "tolerance": tol,
        "terms": terms,
        "truncation_weight": (1.0 - 2.0**-levels) ** terms,
    }
    if not math.isfinite(best) or residual > tol * max(1.0, abs(best)):
        raise ExtrapolationError(
            f"Abel/Richardson extrapolation did not settle (residual {residual:.3g})", diagnostics
        )
    return best, diagnostics


def stirling_explicit_rep(
    n: int,
    alpha,
    x=0,
    mode: str = "exact_integer_alpha",
    terms: int | None = None,
    sign_corrected: bool = True,
    tol: float = 1e-6,
):
    """Finite-difference form of ``S^{n+alpha}_alpha(x; 1, e; 1)``.

    Evaluates ``sign/Gamma(alpha+1) * sum_k (-1)^k binom(alpha,k) (x+k)^(n+alpha)``.
    With ``sign_corrected`` the sign is ``(-1)^alpha``, which is what makes the
    sum agree with :func:`array_poly` (for integer alpha it is the usual
    ``alpha``-th forward difference of ``x^(n+alpha)``); otherwise the sign is 1.

    ``mode="exact_integer_alpha"``: alpha a nonnegative integer, the sum stops
    at ``k = alpha`` and the result is exact for rational ``x``.

    ``mode="abel_regularized"``: see :func:`abel_regularized_sum`.  Only the
    unsigned sum is returned, since ``(-1)^alpha`` has no preferred branch for
    fractional alpha.
    """
    if mode == "exact_integer_alpha":
        if not (isinstance(alpha, int) or (isinstance(alpha, _RationalABC) and as_rational(alpha).denominator == 1)):
            raise ValueError("exact_integer_alpha mode needs an integer alpha")
        a = int(alpha)
        if a < 0:
            raise ValueError("alpha must be nonnegative")
        xr = as_rational(x)
        s = sum((-1) ** k * math.comb(a, k) * (xr + k) ** (n + a) for k in range(a + 1))
        sign = (-1) ** a if sign_corrected else 1
        return Fraction(sign * s, math.factorial(a))
    if mode != "abel_regularized":
        raise ValueError(f"unknown mode {mode!r}")
    value, _ = abel_regularized_sum(n, float(alpha), float(x), terms=terms, tol=tol)
    return value
