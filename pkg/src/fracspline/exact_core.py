"""Truncated formal power series over exact rationals or complex doubles.

Rationals are :class:`fractions.Fraction` (arbitrary-precision, always
normalized).  A :class:`TruncatedSeries` is either *exact* (every coefficient
is an ``int`` or ``Fraction``) or *float* (coefficients are ``complex``);
mixing the two kinds in one operation raises :class:`ScalarKindError`.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[Fraction, complex]

DEFAULT_ORDER = 32
DIV_T_TOLERANCE = 1e-12


class ScalarKindError(TypeError):
    """Exact and floating-point series were combined."""


class SeriesPreconditionError(ValueError):
    """An operation's precondition on the series coefficients failed."""


def _is_exact_scalar(c) -> bool:
    return isinstance(c, _RationalABC)


def as_rational(value) -> Fraction:
    """Convert an int, Fraction, float or ``"p/q"`` string to a Fraction.

    Floats convert exactly (a binary double *is* a rational number).
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float, str)):
        return Fraction(value)
    if isinstance(value, _RationalABC):
        return Fraction(value.numerator, value.denominator)
    raise TypeError(f"cannot convert {type(value).__name__} to a rational")


class TruncatedSeries:
    """Power series ``sum_{n<=order} coeffs[n] t^n``, truncated at ``order``.

    Instances are immutable.  Arithmetic never looks at coefficients beyond the
    truncation order of its inputs.
    """

    __slots__ = ("_coeffs", "_exact")

    def __init__(self, coeffs: Iterable, order: int | None = None, exact: bool | None = None):
        cs = list(coeffs)
        if order is not None:
            if order < 0:
                raise ValueError("order must be nonnegative")
            cs = cs[: order + 1]
        if not cs:
            raise ValueError("a truncated series needs at least one coefficient")
        if exact is None:
            exact = all(_is_exact_scalar(c) for c in cs)
        if exact:
            if not all(_is_exact_scalar(c) for c in cs):
                raise ScalarKindError("exact series given a non-rational coefficient")
            cs = [as_rational(c) for c in cs]
            pad = Fraction(0)
        else:
            cs = [complex(c) for c in cs]
            pad = 0j
        if order is not None and len(cs) < order + 1:
            cs.extend([pad] * (order + 1 - len(cs)))
        self._coeffs = tuple(cs)
        self._exact = bool(exact)

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, c, order: int, exact: bool = True) -> "TruncatedSeries":
        return cls([c], order=order, exact=exact)

    @classmethod
    def monomial(cls, n: int, order: int, c=1, exact: bool = True) -> "TruncatedSeries":
        cs = [0] * (order + 1)
        if n <= order:
            cs[n] = c
        return cls(cs, order=order, exact=exact)

    # -- accessors --------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def exact(self) -> bool:
        return self._exact

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError(f"cannot extend a series of order {self.order} to {order}")
        return TruncatedSeries(self._coeffs[: order + 1], exact=self._exact)

    def to_float(self) -> "TruncatedSeries":
        if not self._exact:
            return self
        return TruncatedSeries([complex(c) for c in self._coeffs], exact=False)

    def __getitem__(self, n: int):
        return series_coeff(self, n)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self._exact == other._exact and self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash((self._exact, self._coeffs))

    def __repr__(self) -> str:
        kind = "exact" if self._exact else "float"
        head = ", ".join(str(c) for c in self._coeffs[:6])
        more = ", ..." if len(self._coeffs) > 6 else ""
        return f"TruncatedSeries[{kind}, order={self.order}]({head}{more})"

    # -- operators --------------------------------------------------------

    def __add__(self, other):
        return series_add(self, _coerce(other, self))

    __radd__ = __add__

    def __neg__(self):
        return series_scale(self, -1)

    def __sub__(self, other):
        return series_add(self, -_coerce(other, self))

    def __rsub__(self, other):
        return series_add(_coerce(other, self), -self)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return series_pow(self, k)


def _coerce(other, like: TruncatedSeries) -> TruncatedSeries:
    if isinstance(other, TruncatedSeries):
        return other
    return TruncatedSeries.constant(other, like.order, exact=like.exact)


def _check_kind(a: TruncatedSeries, b: TruncatedSeries) -> None:
    if a.exact != b.exact:
        raise ScalarKindError("cannot combine an exact series with a floating-point series")


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    _check_kind(a, b)
    n = min(a.order, b.order)
    return TruncatedSeries([a.coeffs[i] + b.coeffs[i] for i in range(n + 1)], exact=a.exact)


def series_scale(a: TruncatedSeries, c) -> TruncatedSeries:
    if a.exact and not _is_exact_scalar(c):
        raise ScalarKindError("exact series scaled by a non-rational")
    return TruncatedSeries([c * x for x in a.coeffs], exact=a.exact)


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at ``min(a.order, b.order)``."""
    _check_kind(a, b)
    n = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    zero = Fraction(0) if a.exact else 0j
    out = []
    for k in range(n + 1):
        s = zero
        for i in range(k + 1):
            if ac[i]:
                s += ac[i] * bc[k - i]
        out.append(s)
    return TruncatedSeries(out, exact=a.exact)


def series_one(order: int, exact: bool = True) -> TruncatedSeries:
    return TruncatedSeries.constant(1, order, exact=exact)


def series_pow(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """``a**k`` for a nonnegative integer ``k``, by repeated squaring."""
    if k < 0 or int(k) != k:
        raise ValueError("series_pow needs a nonnegative integer exponent")
    k = int(k)
    result = series_one(a.order, exact=a.exact)
    base = a
    while k:
        if k & 1:
            result = series_mul(result, base)
        k >>= 1
        if k:
            base = series_mul(base, base)
    return result


def series_pow_real(a: TruncatedSeries, alpha) -> TruncatedSeries:
    """``a**alpha`` for real ``alpha`` when the constant term of ``a`` is 1.

    Uses the J. C. P. Miller recurrence, so a rational ``alpha`` applied to an
    exact series stays exact.  The branch is the one with constant term 1.
    """
    c = a.coeffs
    if c[0] != 1:
        raise SeriesPreconditionError("series_pow_real needs constant term exactly 1")
    if a.exact and not _is_exact_scalar(alpha):
        a = a.to_float()
        c = a.coeffs
    exact = a.exact
    g = [Fraction(1) if exact else 1 + 0j]
    for n in range(1, a.order + 1):
        s = Fraction(0) if exact else 0j
        for k in range(1, n + 1):
            if c[k]:
                s += (alpha * k - n + k) * c[k] * g[n - k]
        g.append(s / n)
    return TruncatedSeries(g, exact=exact)


def series_exp_linear(c, order: int = DEFAULT_ORDER, exact: bool | None = None) -> TruncatedSeries:
    """Series of ``exp(c t)``: coefficients ``c**n / n!`` for ``n = 0..order``."""
    if exact is None:
        exact = _is_exact_scalar(c)
    if exact:
        c = as_rational(c)
        term = Fraction(1)
    else:
        c = complex(c)
        term = 1 + 0j
    out = [term]
    for n in range(1, order + 1):
        term = term * c / n
        out.append(term)
    return TruncatedSeries(out, exact=exact)


def series_div_t(a: TruncatedSeries, tol: float = DIV_T_TOLERANCE) -> TruncatedSeries:
    """Divide by ``t``: shift coefficients down by one, order drops by one."""
    c0 = a.coeffs[0]
    if a.exact:
        if c0 != 0:
            raise SeriesPreconditionError(f"cannot divide by t: constant term is {c0}")
    elif abs(c0) > tol:
        raise SeriesPreconditionError(f"cannot divide by t: |constant term| = {abs(c0):.3g}")
    if a.order == 0:
        raise SeriesPreconditionError("cannot divide an order-0 series by t")
    return TruncatedSeries(a.coeffs[1:], exact=a.exact)


def series_mul_t(a: TruncatedSeries) -> TruncatedSeries:
    """Multiply by ``t``; the order grows by one so nothing is lost."""
    zero = Fraction(0) if a.exact else 0j
    return TruncatedSeries((zero,) + a.coeffs, exact=a.exact)


def series_coeff(a: TruncatedSeries, n: int):
    if n < 0 or n > a.order:
        raise IndexError(f"coefficient index {n} outside 0..{a.order}")
    return a.coeffs[n]


def expm1_over_t(order: int, scale=1, exact: bool | None = None) -> TruncatedSeries:
    """``(exp(scale t) - 1)/t`` built via :func:`series_div_t`."""
    e = series_exp_linear(scale, order + 1, exact=exact)
    return series_div_t(e - 1)


def from_sequence(values: Sequence, exact: bool | None = None) -> TruncatedSeries:
    return TruncatedSeries(values, exact=exact)
