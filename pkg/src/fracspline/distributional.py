"""Delta-derivative expansions of B-splines, test-function pairings and
Riemann-Liouville fractional integration."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Callable, Sequence

from scipy import integrate

from .combinatorics import STIRLING_TYPE, array_poly, gen_binomial
from .splines import bspline_frac, bspline_int, gamma


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class DeltaExpansion:
    """``sum_n coeffs[n] * delta^(n)(t - center)`` describing ``B_alpha(t - x)``."""

    alpha: float
    x: float
    coeffs: tuple
    center: float = 0.0
    reflected: bool = False

    def __post_init__(self):
        cs = tuple(complex(c) for c in self.coeffs)
        if not all(cmath.isfinite(c) for c in cs):
            raise ValueError("delta expansion coefficients must be finite")
        object.__setattr__(self, "coeffs", cs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def to_dict(self) -> dict:
        return {
            "alpha": float(self.alpha),
            "x": float(self.x),
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
            "center": float(self.center),
            "reflected": bool(self.reflected),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "DeltaExpansion":
        return cls(
            alpha=d["alpha"],
            x=d["x"],
            coeffs=tuple(complex(re, im) for re, im in d["coeffs"]),
            center=d["center"],
            reflected=d["reflected"],
        )


@dataclass(frozen=True)
class TestFunction:
    """A rapidly decaying test function with its derivatives at the origin."""

    __test__ = False  # keep pytest from collecting this class

    evaluator: Callable[[float], float]
    derivatives_at_zero: tuple = field(default_factory=tuple)
    name: str = ""

    def __call__(self, x: float) -> float:
        return self.evaluator(x)


def gaussian(order: int, width: float = 1.0) -> TestFunction:
    """``exp(-(x/width)^2)`` with derivatives ``(-1)^(n/2) n!/(n/2)! / width^n`` at 0 (even n)."""
    derivs = []
    for n in range(order + 1):
        if n % 2:
            derivs.append(0.0)
        else:
            h = n // 2
            derivs.append((-1) ** h * math.factorial(n) / math.factorial(h) / width**n)
    return TestFunction(lambda x: math.exp(-((x / width) ** 2)), tuple(derivs), f"gaussian(w={width})")


def shifted_gaussian(order: int, shift: float) -> TestFunction:
    """``exp(-(x - shift)^2)``; derivatives at 0 via Hermite polynomials at ``-shift``."""
    # d^n/dx^n e^{-(x-s)^2} = (-1)^n H_n(x-s) e^{-(x-s)^2}
    y = -shift
    hs = [1.0, 2 * y]
    for n in range(1, order):
        hs.append(2 * y * hs[n] - 2 * n * hs[n - 1])
    g = math.exp(-(y * y))
    derivs = tuple((-1) ** n * hs[n] * g for n in range(order + 1))
    return TestFunction(lambda x: math.exp(-((x - shift) ** 2)), derivs, f"gaussian(shift={shift})")


# ---------------------------------------------------------------------------
# coefficient algebra


def _is_integer(alpha) -> bool:
    return float(alpha).is_integer()


def delta_coeffs(alpha, x=0.0, order: int = 16) -> DeltaExpansion:
    """Coefficients ``c_n = S^{n+alpha}_alpha(x;1,e;1) / (binom(n+alpha, n) n!)``.

    Equivalently ``c_n`` is the ``s^n`` coefficient of
    ``((e^s - 1)/s)^alpha e^{xs}``, i.e. the ``(-iw)^n`` coefficient of
    ``Bhat_alpha(w) e^{-iwx}``.  Integer alpha (and any float ``x``, which is a
    binary rational) goes through exact arithmetic.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    coeffs = [complex(c) for c in delta_coeffs_exact(alpha, x, order)] if _is_integer(alpha) else None
    if coeffs is None:
        a = float(alpha)
        coeffs = []
        for n in range(order + 1):
            s = array_poly(n, a, float(x), STIRLING_TYPE)
            coeffs.append(complex(s) / (gen_binomial(n + a, n) * math.factorial(n)))
    return DeltaExpansion(float(alpha), float(x), tuple(coeffs))


def delta_coeffs_exact(alpha, x, order: int) -> list[Fraction]:
    """Exact ``c_n`` for integer (or rational) alpha and rational ``x``."""
    a = Fraction(alpha) if not isinstance(alpha, _RationalABC) else Fraction(alpha)
    if a.denominator == 1:
        a = int(a)
    xr = Fraction(x)
    out = []
    for n in range(order + 1):
        s = array_poly(n, a, xr, STIRLING_TYPE)
        out.append(s / (gen_binomial(Fraction(n) + a, n) * math.factorial(n)))
    return out


def shifted_coeffs(c: DeltaExpansion, x: float, order: int | None = None) -> DeltaExpansion:
    """Re-expand around ``t = x``: ``d_m(x) = sum_{n<=m} c_n (-1)^n x^(m-n)/(m-n)!``."""
    if c.center != 0:
        raise ValueError("shifted_coeffs expects an expansion centred at 0")
    if order is None:
        order = len(c.coeffs) - 1
    cs = c.coeffs
    d = []
    for m in range(order + 1):
        s = 0j
        for n in range(min(m, len(cs) - 1) + 1):
            s += cs[n] * (-1) ** n * x ** (m - n) / math.factorial(m - n)
        d.append(s)
    return DeltaExpansion(c.alpha, c.x, tuple(d), center=float(x), reflected=c.reflected)


def pair_with_test(a0: Sequence[float], phi: TestFunction, order: int) -> float:
    """``sum_{n<=order} a0[n] * phi^(n)(0)``."""
    if len(phi.derivatives_at_zero) < order + 1:
        raise ValueError(
            f"test function supplies {len(phi.derivatives_at_zero)} derivatives, need {order + 1}"
        )
    if len(a0) < order + 1:
        raise ValueError(f"need {order + 1} coefficients, got {len(a0)}")
    return sum(a0[n] * phi.derivatives_at_zero[n] for n in range(order + 1))


def _spline(alpha: float) -> Callable[[float], float]:
    if _is_integer(alpha):
        n = int(alpha)
        return lambda u: bspline_int(n, u)
    return lambda u: bspline_frac(alpha, u)


def spline_test_integral(alpha: float, phi: Callable[[float], float], upper: float | None = None) -> float:
    """``int B_alpha(u) phi(-u) du = int B_alpha(-x) phi(x) dx`` by unit-cell quadrature."""
    if upper is None:
        upper = float(int(alpha)) if _is_integer(alpha) else 60.0
    f = _spline(alpha)
    total = 0.0
    for k in range(int(math.ceil(upper))):
        val, err = integrate.quad(lambda u: f(u) * phi(-u), k, min(k + 1, upper), epsabs=1e-14, epsrel=1e-12, limit=200)
        if not math.isfinite(val):
            raise QuadratureError(f"quadrature failed on [{k}, {k + 1}]")
        total += val
    return total


BRANCHES = {
    "e^{+i pi alpha}": lambda a: cmath.exp(1j * math.pi * a),
    "e^{-i pi alpha}": lambda a: cmath.exp(-1j * math.pi * a),
    "moment (-1)^n": None,
}


@dataclass(frozen=True)
class PairingResult:
    lhs: float
    partial_sums: tuple
    coefficients: tuple
    convention: str


def pairing_residual(
    alpha: float,
    phi: TestFunction,
    order: int,
    convention: str = "e^{+i pi alpha}",
    upper: float | None = None,
) -> PairingResult:
    """Integral of ``B_alpha(-x) phi(x)`` against partial sums of ``sum a_n(0) phi^(n)(0)``.

    ``a_n(0)`` is ``prefactor * c_n(0)`` with the prefactor one of the two
    branches of ``(-1)^alpha``, or ``(-1)^n c_n(0)`` for the ``"moment (-1)^n"``
    convention (the Taylor-moment form).  Partial sums are returned as they
    are; whether they approach ``lhs`` is for the caller to judge.
    """
    lhs = spline_test_integral(alpha, phi.evaluator, upper)
    c = delta_coeffs(alpha, 0.0, order).coeffs
    pref = BRANCHES[convention]
    if pref is None:
        a = [(-1) ** n * c[n] for n in range(order + 1)]
    else:
        p = pref(alpha)
        a = [p * cn for cn in c]
    sums = []
    acc = 0j
    for n in range(order + 1):
        acc += a[n] * phi.derivatives_at_zero[n]
        sums.append(acc)
    return PairingResult(lhs, tuple(sums), tuple(a), convention)


# ---------------------------------------------------------------------------
# fractional integration


def kernel_Kalpha(alpha: float, x: float) -> float:
    """``x_+^(alpha-1) / Gamma(alpha)``."""
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if x <= 0:
        return 0.0
    return x ** (alpha - 1) / gamma(alpha)


def fractional_integral(
    alpha: float,
    f: Callable[[float], float],
    x: float,
    epsabs: float = 1e-13,
    epsrel: float = 1e-12,
    limit: int = 200,
) -> float:
    """``(f * K_alpha)(x) = int_0^x f(t) (x-t)^(alpha-1) dt / Gamma(alpha)``.

    The interval is split at ``x/2``: the left half (where ``f`` may carry an
    integrable endpoint singularity) uses plain adaptive quadrature, the right
    half puts ``(x-t)^(alpha-1)`` into an algebraic quadrature weight so
    ``alpha < 1`` is handled exactly.
    """
    if not alpha > 0:
        raise ValueError("alpha must be positive")
    if x < 0:
        raise ValueError("x must be >= 0")
    if x == 0:
        return 0.0
    mid = 0.5 * x
    left, _ = integrate.quad(lambda t: f(t) * (x - t) ** (alpha - 1), 0.0, mid, epsabs=epsabs, epsrel=epsrel, limit=limit)
    right, _ = integrate.quad(f, mid, x, weight="alg", wvar=(0.0, alpha - 1), epsabs=epsabs, epsrel=epsrel, limit=limit)
    total = left + right
    if not math.isfinite(total):
        raise QuadratureError(f"fractional integral did not converge at x={x}")
    return total / gamma(alpha)


def weak_de_residual(alpha: float, x: float) -> tuple[float, float]:
    """``(sum_{k<=floor x} a_k K_alpha(x-k), B_alpha(x))`` with ``a_k = (-1)^k binom(alpha, k)``."""
    from .splines import de_source_coeffs

    if x <= 0:
        return 0.0, bspline_frac(alpha, x)
    count = math.floor(x) + 1
    a = de_source_coeffs(alpha, count)
    lhs = math.fsum(a[k] * kernel_Kalpha(alpha, x - k) for k in range(count))
    return lhs, bspline_frac(alpha, x)
