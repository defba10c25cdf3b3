"""Two-parameter Mittag-Leffler function and the fractional spline polynomial OGF."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .combinatorics import binomial_row
from .splines import frac_spline_poly, truncated_power

GENERAL_ARGUMENT_CAP = 50.0


class MLConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class MLParams:
    """``E_{a,b}``: ``a > 0``, series summed to relative tolerance ``tol`` within ``max_terms``."""

    a: float = 1.0
    b: float = 1.0
    tol: float = 1e-15
    max_terms: int = 2000

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("Mittag-Leffler needs a > 0")


def _term(n: int, z: complex, a: float, b: float) -> complex:
    # z^n / Gamma(a n + b) via logs; 1/Gamma has zeros at nonpositive integers
    arg = a * n + b
    if arg <= 0 and float(arg).is_integer():
        return 0j
    sign = math.copysign(1.0, math.gamma(arg)) if arg < 0 else 1.0
    mag = math.exp(n * math.log(abs(z)) - math.lgamma(arg))
    if z.imag == 0:
        # keep real arguments real: the phase is exactly +-1
        phase = -1.0 if (z.real < 0 and n % 2) else 1.0
        return complex(sign * phase * mag, 0.0)
    return sign * mag * cmath.exp(1j * n * cmath.phase(z))


def ml_with_bound(params: MLParams, z: complex) -> tuple[complex, float]:
    """``E_{a,b}(z)`` together with a bound on its absolute error.

    The bound adds the geometric tail estimate to the rounding budget
    ``(n_terms + 1) * eps * sum |t_n|``, which dominates under cancellation
    (negative real ``z``).
    """
    a, b = params.a, params.b
    z = complex(z)
    eps = 2.0**-52
    if a != 1 and abs(z) > GENERAL_ARGUMENT_CAP:
        raise MLConvergenceError(f"|z| = {abs(z):.3g} exceeds the series cap {GENERAL_ARGUMENT_CAP} for a != 1")
    if z == 0:
        if b <= 0 and float(b).is_integer():
            return 0j, 0.0
        return complex(1.0 / math.gamma(b)), eps / abs(math.gamma(b))
    re, im = [], []
    abs_sum = 0.0
    total = 0j
    term = None
    for n in range(params.max_terms):
        if a == 1 and term is not None and (n - 1 + b) > 0:
            # exact ratio z / (n - 1 + b)
            term = term * z / (n - 1 + b)
        else:
            try:
                term = _term(n, z, a, b)
            except OverflowError:
                raise MLConvergenceError(f"E_{{{a},{b}}}({z}): terms overflow double precision") from None
        if not cmath.isfinite(term):
            raise MLConvergenceError(f"E_{{{a},{b}}}({z}): terms overflow double precision")
        re.append(term.real)
        im.append(term.imag)
        abs_sum += abs(term)
        total += term
        # ratio |t_{n+1}/t_n| = |z| Gamma(an+b)/Gamma(a(n+1)+b) decreases in n
        # (log-convexity of Gamma), so once r < 1 the tail is below |t_n| r/(1-r)
        if a * n + b > 0:
            r = math.exp(math.log(abs(z)) + math.lgamma(a * n + b) - math.lgamma(a * (n + 1) + b))
            if r < 1:
                tail = abs(term) * r / (1 - r)
                if tail <= params.tol * max(abs(total), 1e-300):
                    value = complex(math.fsum(re), math.fsum(im))
                    return value, tail + (n + 2) * eps * abs_sum
    raise MLConvergenceError(f"E_{{{a},{b}}}({z}) did not converge within {params.max_terms} terms")


def ml(params: MLParams, z: complex) -> complex:
    """``E_{a,b}(z) = sum_{n>=0} z^n / Gamma(a n + b)``.

    Summation stops once the term ratio ``r`` is below 1 and the geometric
    tail bound ``|t_n| r / (1 - r)`` is under ``tol * |sum|``.  For ``a != 1``
    the argument is capped at ``|z| <= 50``.
    """
    return ml_with_bound(params, z)[0]


def frac_spline_ogf(alpha: float, x: float, t: float, terms: int = 40, kmax: int | None = None) -> tuple[float, float]:
    """Both sides of the ordinary generating function of ``S_n^{(alpha)}(x)``.

    ``lhs = sum_{n<terms} S_n^{(alpha)}(x) t^n`` and
    ``rhs = sum_{k<kmax} (-1)^k binom(alpha+1, k) (x-k)_+^alpha E_{1,alpha+1}((x-k)_+ t)``.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    need = max(0, math.ceil(x))
    if kmax is None:
        kmax = need
    elif kmax < need:
        raise ValueError(f"kmax must be >= ceil(x) = {need}")
    lhs = math.fsum(frac_spline_poly(n, alpha, x) * t**n for n in range(terms))
    params = MLParams(1.0, alpha + 1.0)
    coeffs = binomial_row(alpha + 1, max(kmax, 1))
    parts = []
    for k in range(kmax):
        u = x - k
        if u <= 0:
            continue
        parts.append((-1) ** k * coeffs[k] * truncated_power(u, alpha) * ml(params, u * t).real)
    return lhs, math.fsum(parts)
