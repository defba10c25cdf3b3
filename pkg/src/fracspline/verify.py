"""Identity verification suite.

Every identity is evaluated along two independent routes and the outcome is
recorded as an :class:`IdentityReport`.  Identities that only hold in a
corrected form (different argument, sign, or branch) are reported once per
variant; ``established`` marks the variants that are expected to hold, and
only those decide the overall verdict.
"""

from __future__ import annotations

import cmath
import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

import numpy as np

from . import combinatorics as comb
from . import distributional as dist
from . import mittag_leffler as mlmod
from . import spectral as spec
from . import splines as spl
from .exact_core import as_rational

EXACT_EQUAL = "exact_equal"
NUMERIC_MATCH = "numeric_match"
MISMATCH = "mismatch"
NON_CONVERGENT = "non_convergent"
STATUSES = (EXACT_EQUAL, NUMERIC_MATCH, MISMATCH, NON_CONVERGENT)

DEFAULT_TOLERANCES = {
    "entire": 1e-12,
    "geometric": 1e-10,
    "regularized": 1e-6,
    "semigroup": 1e-8,
    "dft_hat": 1e-4,
    "dft_frac": 1e-3,
    "rate": 0.15,
    "shift": 1e-13,
}


@dataclass
class IdentityReport:
    identity_id: str
    params: dict
    lhs: Any
    rhs: Any
    status: str
    residual: float
    variant: str = ""
    tolerance: float | None = None
    established: bool = True
    note: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def failed(self) -> bool:
        return self.established and self.status in (MISMATCH, NON_CONVERGENT)

    def sort_key(self) -> tuple:
        return (self.identity_id, json.dumps(_plain(self.params), sort_keys=True), self.variant)

    def to_dict(self) -> dict:
        return {
            "identity_id": self.identity_id,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "status": self.status,
            "residual": self.residual,
            "variant": self.variant,
            "tolerance": self.tolerance,
            "established": self.established,
            "note": self.note,
        }


def _plain(value):
    from .serialize import to_jsonable

    return to_jsonable(value)


def _exact_residual(lhs, rhs) -> float:
    if isinstance(lhs, (list, tuple)):
        return max((_exact_residual(a, b) for a, b in zip(lhs, rhs)), default=0.0)
    return float(abs(lhs - rhs))


def exact_report(identity_id, params, lhs, rhs, variant="", established=True, note="") -> IdentityReport:
    """Exact comparison; both sides must be rationals (or tuples/lists of them)."""
    _assert_exact(lhs)
    _assert_exact(rhs)
    equal = _exact_equal(lhs, rhs)
    return IdentityReport(
        identity_id,
        params,
        lhs,
        rhs,
        EXACT_EQUAL if equal else MISMATCH,
        0.0 if equal else _exact_residual(lhs, rhs),
        variant,
        None,
        established,
        note,
    )


def _exact_equal(a, b) -> bool:
    if isinstance(a, (list, tuple)):
        return len(a) == len(b) and all(_exact_equal(x, y) for x, y in zip(a, b))
    return a == b


def _assert_exact(v) -> None:
    if isinstance(v, (list, tuple)):
        for x in v:
            _assert_exact(x)
        return
    if isinstance(v, bool) or not isinstance(v, (int, Fraction)):
        raise TypeError(f"exact comparison given a non-rational {v!r}")


def _numeric_residual(lhs, rhs) -> float:
    if isinstance(lhs, (list, tuple)):
        return max((abs(complex(a) - complex(b)) for a, b in zip(lhs, rhs)), default=0.0)
    return abs(complex(lhs) - complex(rhs))


def numeric_report(identity_id, params, lhs, rhs, tol, variant="", established=True, note="") -> IdentityReport:
    r = _numeric_residual(lhs, rhs)
    status = NUMERIC_MATCH if r <= tol else MISMATCH
    return IdentityReport(identity_id, params, lhs, rhs, status, r, variant, tol, established, note)


# ---------------------------------------------------------------------------
# Gaussian rationals r * i^k, compared exactly as (re, im) pairs


def _ipow(k: int) -> tuple[int, int]:
    return ((1, 0), (0, 1), (-1, 0), (0, -1))[k % 4]


def _gauss(r: Fraction, k: int) -> tuple[Fraction, Fraction]:
    re, im = _ipow(k)
    return (r * re, r * im)


# ---------------------------------------------------------------------------
# independent exact oracles


def _naive_symbol_series(alpha: int, x: Fraction, order: int) -> list[Fraction]:
    """Coefficients of ``s^n`` in ``((e^s-1)/s)^alpha e^{xs}`` by plain nested loops."""
    base = [Fraction(1, math.factorial(k + 1)) for k in range(order + 1)]
    acc = [Fraction(1)] + [Fraction(0)] * order
    for _ in range(alpha):
        acc = [sum(acc[i] * base[n - i] for i in range(n + 1)) for n in range(order + 1)]
    shift = [x**j / math.factorial(j) for j in range(order + 1)]
    return [sum(acc[i] * shift[n - i] for i in range(n + 1)) for n in range(order + 1)]


def _log_sinc_symbol_series(alpha: float, x: float, order: int) -> list[complex]:
    """Coefficients of ``w^n`` in ``Bhat_alpha(w) e^{-iwx}`` from the log-series of ``2 sin(w/2)/w``.

    ``log(sin u / u) = sum_k (-1)^k 2^(2k-1) B_2k u^(2k) / (k (2k)!)`` with
    ``u = w/2``; the principal branch contributes ``-i alpha w / 2``.
    """
    log_coeffs = [0j] * (order + 1)
    for k in range(1, order // 2 + 1):
        b2k = comb.bernoulli_number(2 * k)
        c = (-1) ** k * 2 ** (2 * k - 1) * b2k / (k * math.factorial(2 * k))
        log_coeffs[2 * k] += alpha * float(c) / 2 ** (2 * k)
    if order >= 1:
        log_coeffs[1] += -0.5j * alpha - 1j * x
    out = [1 + 0j]
    for j in range(1, order + 1):
        s = sum(i * log_coeffs[i] * out[j - i] for i in range(1, j + 1))
        out.append(s / j)
    return out


# ---------------------------------------------------------------------------
# combinatorial identities

AY3_SIGNS = {
    "+": lambda m, n: 1,
    "(-1)^(m+n)": lambda m, n: (-1) ** (m + n),
    "-(-1)^(m+n)": lambda m, n: -((-1) ** (m + n)),
}


def _stirling_ratio(m: int, n: int) -> Fraction:
    return Fraction(comb.stirling2(m + n, n)) / comb.gen_binomial(Fraction(m + n), n)


def verify_bernoulli_stirling(m: int, n: int) -> list[IdentityReport]:
    """``B_m^{(-n)}(x)`` at ``x in {0, n, -n}`` against signed ``S2(m+n,n)/binom(m+n,n)``.

    The printed form uses ``x = n`` with sign ``(-1)^(m+n)``.  The forms that
    hold are ``x = 0`` with sign ``+`` and ``x = -n`` with sign ``(-1)^m``.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1, m >= 0")
    ratio = _stirling_ratio(m, n)
    out = []
    for label, x in (("0", 0), ("n", n), ("-n", -n)):
        value = comb.bernoulli_neg_order(m, n, x)
        for sign_label, sign in AY3_SIGNS.items():
            variant = f"x={label} sign{sign_label}"
            note = ""
            if (label, sign_label) == ("n", "(-1)^(m+n)"):
                note = "printed form; convention-dependent"
            out.append(
                exact_report(
                    "bernoulli_stirling",
                    {"m": m, "n": n},
                    value,
                    sign(m, n) * ratio,
                    variant,
                    established=(label, sign_label) == ("0", "+"),
                    note=note,
                )
            )
        if label == "-n":
            out.append(
                exact_report(
                    "bernoulli_stirling",
                    {"m": m, "n": n},
                    value,
                    (-1) ** m * ratio,
                    "x=-n sign(-1)^m",
                    established=True,
                    note="reflection B_m^(-n)(-n) = (-1)^m B_m^(-n)(0)",
                )
            )
    return out


def verify_catalan_diagonal(n: int) -> list[IdentityReport]:
    """Diagonal ``m = n`` and its Catalan rewrite, at ``x = 0`` and the printed ``x = n``."""
    if n < 1:
        raise ValueError("need n >= 1")
    s = Fraction(comb.stirling2(2 * n, n))
    by_binom = s / comb.gen_binomial(Fraction(2 * n), n)
    by_catalan = s / ((n + 1) * comb.catalan(n))
    params = {"n": n}
    return [
        exact_report("bernoulli_stirling_diagonal", params, comb.bernoulli_neg_order(n, n, 0), by_binom, "x=0"),
        exact_report(
            "bernoulli_stirling_diagonal",
            params,
            comb.bernoulli_neg_order(n, n, n),
            by_binom,
            "x=n",
            established=False,
            note="printed form; convention-dependent",
        ),
        exact_report("catalan_rewrite", params, by_binom, by_catalan, "binom(2n,n) = (n+1) C_n"),
        exact_report("catalan_rewrite", params, comb.bernoulli_neg_order(n, n, 0), by_catalan, "x=0"),
    ]


def verify_stirling_routes(max_m: int) -> list[IdentityReport]:
    out = []
    for m in range(max_m + 1):
        rec = [comb.stirling2(m, n) for n in range(m + 1)]
        gf = [comb.stirling2_gf(m, n) for n in range(m + 1)]
        out.append(exact_report("stirling2_two_routes", {"m": m}, rec, gf, "recurrence vs (e^z-1)^n/n!"))
    return out


def verify_array_bernoulli(max_n: int, max_k: int) -> list[IdentityReport]:
    """``S^{n+k}_k(x;1,e;1) = binom(n+k,k) B_n^{(-k)}(x)`` coefficient-wise in ``x``."""
    out = []
    for k in range(1, max_k + 1):
        for n in range(max_n + 1):
            lhs = comb.array_poly(n, k, None)
            rhs = comb.bernoulli_neg_order_poly(n, k).scale(math.comb(n + k, k))
            out.append(
                exact_report("array_poly_bernoulli", {"n": n, "k": k}, list(lhs.coefficients), list(rhs.coefficients))
            )
    return out


def verify_reflected_params(max_n: int, max_k: int, x=Fraction(1, 2)) -> list[IdentityReport]:
    """``S^{n+k}_k(x; e,1;1) = (-1)^k S^{n+k}_k(0; 1,e;1)``: the swapped-parameter generating function."""
    out = []
    for k in range(1, max_k + 1):
        for n in range(max_n + 1):
            lhs = comb.array_poly(n, k, x, comb.REFLECTED_STIRLING_TYPE)
            rhs = (-1) ** k * comb.array_poly(n, k, 0, comb.STIRLING_TYPE)
            out.append(exact_report("array_poly_swapped_params", {"n": n, "k": k, "x": x}, lhs, rhs))
    return out


def _symbol_coefficients_exact(n: int, max_m: int) -> list[tuple[Fraction, Fraction]]:
    """``m!`` times the ``w^m`` coefficient of ``Bhat_n(w)``, as exact Gaussian rationals."""
    series = _naive_symbol_series(n, Fraction(0), max_m)
    # Bhat_n(w) = ((e^s-1)/s)^n at s = -iw, so w^m carries (-i)^m
    return [_gauss(series[m] * math.factorial(m), 3 * m) for m in range(max_m + 1)]


def verify_symbol_expansions(n: int, max_m: int) -> list[IdentityReport]:
    """Maclaurin coefficients of ``Bhat_n`` against the Stirling and Bernoulli forms."""
    lhs = _symbol_coefficients_exact(n, max_m)
    params = {"n": n, "max_m": max_m}
    stirling_printed = [_gauss(_stirling_ratio(m, n), 3 * m + 2 * n) for m in range(max_m + 1)]
    stirling_fixed = [_gauss(_stirling_ratio(m, n), 3 * m) for m in range(max_m + 1)]
    bern_printed = [_gauss(comb.bernoulli_neg_order(m, n, n), m) for m in range(max_m + 1)]
    bern_fixed = [_gauss(comb.bernoulli_neg_order(m, n, -n), m) for m in range(max_m + 1)]
    flat = lambda seq: [c for pair in seq for c in pair]  # noqa: E731
    return [
        exact_report("symbol_stirling_expansion", params, flat(lhs), flat(stirling_printed), "phase i^(3m+2n)",
                     established=False, note="printed form"),
        exact_report("symbol_stirling_expansion", params, flat(lhs), flat(stirling_fixed), "phase i^(3m)"),
        exact_report("symbol_bernoulli_expansion", params, flat(lhs), flat(bern_printed), "i^m B_m^(-n)(n)",
                     established=False, note="printed form"),
        exact_report("symbol_bernoulli_expansion", params, flat(lhs), flat(bern_fixed), "i^m B_m^(-n)(-n)"),
    ]


def verify_symbol_stirling_gf(alpha, x=0, n_max: int = 12, tol: float = DEFAULT_TOLERANCES["geometric"]) -> IdentityReport:
    """Stirling-type coefficients against Maclaurin coefficients of ``Bhat_alpha(w) e^{-iwx}``.

    Left: ``Gamma(alpha+1) S^{n+alpha}_alpha(x;1,e;1) / Gamma(n+alpha+1)`` from
    :func:`array_poly`.  Right, integer alpha: ``(-iw)^n`` coefficients of the
    symbol by plain nested convolution (exact).  Right, fractional alpha:
    exponential of the log-sinc series (floating point).
    """
    params = {"alpha": alpha, "x": x, "n_max": n_max}
    if float(alpha).is_integer():
        a = int(alpha)
        xr = as_rational(x)
        lhs = [
            comb.array_poly(n, a, xr) * Fraction(math.factorial(a), math.factorial(n + a)) for n in range(n_max + 1)
        ]
        rhs = _naive_symbol_series(a, xr, n_max)
        return exact_report("fractional_symbol_stirling_gf", params, lhs, rhs, "integer alpha")
    a = float(alpha)
    lhs = [
        complex(comb.array_poly(n, a, float(x))) * math.exp(math.lgamma(a + 1) - math.lgamma(n + a + 1))
        for n in range(n_max + 1)
    ]
    w_coeffs = _log_sinc_symbol_series(a, float(x), n_max)
    rhs = [w_coeffs[n] / (-1j) ** n for n in range(n_max + 1)]
    return numeric_report("fractional_symbol_stirling_gf", params, lhs, rhs, tol, "fractional alpha, principal branch")


def verify_explicit_rep(alpha, n: int, x=0, tol: float = DEFAULT_TOLERANCES["regularized"]) -> list[IdentityReport]:
    """Finite-difference sum for ``S^{n+alpha}_alpha`` against :func:`array_poly`."""
    params = {"alpha": alpha, "n": n, "x": x}
    if float(alpha).is_integer():
        a = int(alpha)
        xr = as_rational(x)
        target = comb.array_poly(n, a, xr)
        return [
            exact_report(
                "stirling_explicit_rep", params,
                comb.stirling_explicit_rep(n, a, xr, sign_corrected=False), target, "printed (no sign)",
                established=False, note="printed form; holds for even alpha only",
            ),
            exact_report(
                "stirling_explicit_rep", params,
                comb.stirling_explicit_rep(n, a, xr, sign_corrected=True), target, "sign (-1)^alpha",
            ),
        ]
    target = complex(comb.array_poly(n, float(alpha), float(x))).real
    try:
        value, diag = comb.abel_regularized_sum(n, float(alpha), float(x), tol=tol)
    except comb.ExtrapolationError as exc:
        d = exc.diagnostics
        return [
            IdentityReport(
                "stirling_explicit_rep", params, d["extrapolant"], target, NON_CONVERGENT, float(d["residual"]),
                "abel regularized (unsigned)", tol, established=False,
                note=f"Abel values {', '.join('%.6g' % v for v in d['values'][-4:])} keep drifting",
            )
        ]
    return [numeric_report("stirling_explicit_rep", params, value, target, tol, "abel regularized (unsigned)",
                           established=False, note=f"Richardson residual {diag['residual']:.3g}")]


# ---------------------------------------------------------------------------
# spectral identities


def verify_symbol_suite(
    alphas: Sequence[float] = (1.5, 2.5, math.pi),
    omegas: Sequence[float] = (0.3, 1.0, 2.5),
    tolerances: dict | None = None,
) -> list[IdentityReport]:
    tols = {**DEFAULT_TOLERANCES, **(tolerances or {})}
    out: list[IdentityReport] = []
    for w in omegas:
        for t in (1, 2, 5j):
            p, c = spec.gf_bn_hat(w, t, 50)
            out.append(numeric_report("bspline_symbol_egf", {"omega": w, "t": complex(t), "N": 50}, p, c, tols["entire"]))
    for w, N in ((0.5, 60), (0.9, 200)):
        p, c = spec.series_rep_check(w, N)
        out.append(numeric_report("symbol_geometric_series", {"omega": w, "N": N}, p, c, tols["geometric"],
                                  note=f"tail bound {spec.series_rep_bound(w, N):.3g}"))
    try:
        spec.series_rep_check(2.0, 60)
    except spec.ConvergenceRegionError as exc:
        out.append(IdentityReport("symbol_geometric_series", {"omega": 2.0, "N": 60}, None, None, NON_CONVERGENT,
                                  math.inf, "outside |1-e^(-iw)| < 1", tols["geometric"], established=False,
                                  note=str(exc)))
    for a in alphas:
        slope = spec.convergence_rate(a, 0.0)
        out.append(IdentityReport(
            "nabla_symbol", {"alpha": a, "omega": 0.0}, -slope, a,
            NUMERIC_MATCH if abs(-slope - a) <= tols["rate"] else MISMATCH,
            abs(-slope - a), "rate exponent alpha at w=0", tols["rate"]))
        slope1 = spec.convergence_rate(a, 1.0)
        out.append(IdentityReport(
            "nabla_symbol", {"alpha": a, "omega": 1.0}, -slope1, a + 1,
            NUMERIC_MATCH if abs(-slope1 - a - 1) <= tols["rate"] else MISMATCH,
            abs(-slope1 - a - 1), "rate exponent alpha+1 at w!=0", tols["rate"]))
    p, c = spec.nabla_symbol(2.5, 1.0, 10**4)
    out.append(numeric_report("nabla_symbol", {"alpha": 2.5, "omega": 1.0, "K": 10**4}, p, c, 5e-9, "partial sum"))
    for a in alphas:
        for w in omegas:
            out.append(numeric_report(
                "symbol_conjugate_symmetry", {"alpha": a, "omega": w},
                spec.fourier_symbol_frac(a, -w), spec.fourier_symbol_frac(a, w).conjugate(), tols["entire"]))
    for w in omegas:
        out.append(numeric_report("integer_symbol_consistency", {"n": 2, "omega": w},
                                  spec.fourier_symbol_frac(2.0, w), spec.fourier_symbol_int(2, w), tols["entire"]))
    for a, L, M, tol in ((2.0, 32, 4096, tols["dft_hat"]), (2.5, 64, 8192, tols["dft_frac"])):
        chk = spec.dft_crosscheck(a, L, M)
        out.append(IdentityReport(
            "dft_consistency", {"alpha": a, "L": L, "M": M}, chk.max_deviation, 0.0,
            NUMERIC_MATCH if chk.max_deviation <= tol else MISMATCH, chk.max_deviation,
            "rectangle rule", tol, note=f"mass {chk.mass.real:.12f}, {chk.bins_compared} bins"))
    return out


def verify_partition_of_unity(alphas: Sequence[float] = (1.5, 2.5, math.pi), x: float = 0.25,
                              tol_rate: float = DEFAULT_TOLERANCES["rate"]) -> list[IdentityReport]:
    out = []
    pts = [i / 100 for i in range(100)]
    for n in range(1, 6):
        worst = max(abs(sum(spl.bspline_int(n, p + k) for k in range(-n, n + 1)) - 1) for p in pts)
        out.append(IdentityReport("partition_of_unity", {"n": n}, worst, 0.0,
                                  NUMERIC_MATCH if worst <= 1e-12 else MISMATCH, worst, "integer order", 1e-12))
    Ks = [2**j for j in range(4, 11)]
    for a in alphas:
        sums = spl.partition_of_unity(a, x, Ks[-1], dps=30)
        defects = [abs(float(1 - sums[K])) for K in Ks]
        slope, icpt = np.polyfit(np.log(Ks), np.log(defects), 1)
        out.append(IdentityReport(
            "partition_of_unity", {"alpha": a, "x": x}, float(-slope), a,
            NUMERIC_MATCH if abs(-slope - a) <= tol_rate else MISMATCH, abs(-slope - a),
            "defect C K^-alpha", tol_rate, note=f"fitted C = {math.exp(icpt):.4g}, defect(K=1024) = {defects[-1]:.3g}"))
    return out


# ---------------------------------------------------------------------------
# distributional identities


def verify_delta_expansion(alphas=(2, 3, 4), xs=(0.0, 0.5, 1.0), order: int = 12, tol=1e-12) -> list[IdentityReport]:
    out = []
    for a in alphas:
        for x in xs:
            got = dist.delta_coeffs(a, x, order).coeffs
            ref = [complex(v) for v in _naive_symbol_series(a, Fraction(x), order)]
            out.append(numeric_report("delta_expansion_coefficients", {"alpha": a, "x": x}, list(got), ref, tol))
    return out


def _brute_shift(c: Sequence[complex], x: float, order: int) -> list[complex]:
    out = []
    for m in range(order + 1):
        terms = [c[n] * (-1) ** n * x ** (m - n) / math.factorial(m - n) for n in range(min(m, len(c) - 1), -1, -1)]
        out.append(sum(terms, 0j))
    return out


def verify_shifted_representation(samples: int = 100, seed: int = 20240601, tol: float = 1e-13) -> list[IdentityReport]:
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(samples):
        length = rng.randint(1, 16)
        c = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(length)]
        x = rng.uniform(-2, 2)
        d = dist.shifted_coeffs(dist.DeltaExpansion(2.0, 0.0, tuple(c)), x).coeffs
        ref = _brute_shift(c, x, length - 1)
        worst = max(worst, max(abs(u - v) / max(1.0, abs(v)) for u, v in zip(d, ref)))
    out = [IdentityReport("shifted_delta_representation", {"samples": samples, "seed": seed}, worst, 0.0,
                          NUMERIC_MATCH if worst <= tol else MISMATCH, worst, "brute-force convolution", tol)]
    c = dist.delta_coeffs(2.5, 0.0, 12)
    d0 = dist.shifted_coeffs(c, 0.0).coeffs
    signed = [(-1) ** m * cm for m, cm in enumerate(c.coeffs)]
    out.append(IdentityReport("shifted_delta_representation", {"alpha": 2.5, "x": 0.0}, list(d0), signed,
                              EXACT_EQUAL if list(d0) == signed else MISMATCH, _numeric_residual(d0, signed),
                              "d_m(0) = (-1)^m c_m"))
    return out


def verify_nfold(seed: int = 7) -> list[IdentityReport]:
    rng = random.Random(seed)
    c = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(12)]
    out = []
    for a, b in ((1, 1), (2, 2), (1, 2), (3, 1), (1, 3)):
        composed = spec.apply_fourier(spec.nfold_fourier_coeffs(c, a), b)
        direct = spec.nfold_fourier_coeffs(c, a + b)
        ok = (composed.coeffs == direct.coeffs and composed.scale == direct.scale
              and composed.reflected == direct.reflected)
        out.append(IdentityReport("nfold_fourier", {"a": a, "b": b}, list(composed.coeffs), list(direct.coeffs),
                                  NUMERIC_MATCH if ok else MISMATCH, _numeric_residual(composed.coeffs, direct.coeffs),
                                  f"T{a} o T{b} = T{a + b}", 0.0))
    two = spec.nfold_fourier_coeffs(c, 2)
    ok2 = two.scale == 2 * math.pi and two.reflected and all(
        v == (-1) ** m * cm for m, (v, cm) in enumerate(zip(two.coeffs, c)))
    out.append(IdentityReport("double_fourier", {}, list(two.coeffs), [(-1) ** m * cm for m, cm in enumerate(c)],
                              NUMERIC_MATCH if ok2 else MISMATCH, 0.0 if ok2 else math.inf,
                              "2 pi, (-1)^m, reflected", 0.0))
    four = spec.nfold_fourier_coeffs(c, 4)
    ok4 = four.scale == (2 * math.pi) ** 2 and not four.reflected and list(four.coeffs) == c
    out.append(IdentityReport("nfold_fourier", {"n": 4}, four.scale, (2 * math.pi) ** 2,
                              NUMERIC_MATCH if ok4 else MISMATCH, abs(four.scale - (2 * math.pi) ** 2),
                              "n = 0 mod 4: (2 pi)^2, sigma = 1", 0.0))
    return out


def verify_weak_de(alphas=(1.5, 2.5, 3.7), points: int = 500, seed: int = 11, tol: float = 1e-10) -> list[IdentityReport]:
    rng = random.Random(seed)
    out = []
    for a in alphas:
        worst = 0.0
        for _ in range(points):
            x = rng.uniform(0, 20)
            lhs, rhs = dist.weak_de_residual(a, x)
            worst = max(worst, abs(lhs - rhs))
        out.append(IdentityReport("fractional_de_weak_form", {"alpha": a, "points": points}, worst, 0.0,
                                  NUMERIC_MATCH if worst <= tol else MISMATCH, worst,
                                  "sum a_k K_alpha(x-k) = B_alpha(x)", tol))
    return out


def verify_semigroup(tol: float = DEFAULT_TOLERANCES["semigroup"]) -> list[IdentityReport]:
    out = []
    for a, b in ((0.5, 0.5), (1.0, 1.3), (0.7, 2.0)):
        for x in (0.5, 1.0, 3.0):
            lhs = dist.fractional_integral(a, lambda t, b=b: dist.kernel_Kalpha(b, t), x)
            rhs = dist.kernel_Kalpha(a + b, x)
            out.append(numeric_report("fractional_integral_semigroup", {"alpha": a, "beta": b, "x": x}, lhs, rhs, tol,
                                      "K_alpha * K_beta = K_alpha+beta"))
    f = lambda t: math.exp(-t) * math.cos(2 * t) + t  # noqa: E731
    for a, b in ((0.5, 1.0), (1.3, 0.5)):
        x = 2.0
        lhs = dist.fractional_integral(a, lambda s: dist.fractional_integral(b, f, s), x)
        rhs = dist.fractional_integral(a + b, f, x)
        out.append(numeric_report("fractional_integral_semigroup", {"alpha": a, "beta": b, "x": x, "f": "smooth"},
                                  lhs, rhs, 1e-6, "nested integrals"))
    return out


def verify_reflected_stirling_gf(alphas=(2.0, 3.0, 2.5), xs=(0.0, 0.5), omega: float = 0.7, order: int = 40,
                                 tol: float = DEFAULT_TOLERANCES["geometric"]) -> list[IdentityReport]:
    """Symbol against ``sum prefactor * c_n(x) (-iw)^n`` for both branches of ``(-1)^alpha``."""
    out = []
    for a in alphas:
        target = spec.fourier_symbol_frac(a, omega)
        for x in xs:
            c = dist.delta_coeffs(a, x, order).coeffs
            base = sum(cn * (-1j * omega) ** n for n, cn in enumerate(c))
            params = {"alpha": a, "x": x, "omega": omega}
            for label, pref in (("branch e^{+i pi alpha}", cmath.exp(1j * math.pi * a)),
                                ("branch e^{-i pi alpha}", cmath.exp(-1j * math.pi * a))):
                out.append(numeric_report("reflected_stirling_gf", params, pref * base, target, tol, label,
                                          established=False, note="branch of (-1)^alpha unspecified"))
            out.append(numeric_report("reflected_stirling_gf", params, base * cmath.exp(1j * omega * x), target, tol,
                                      "no prefactor, shift factor restored", established=True))
    return out


def verify_pairing(alphas=(2.0, 2.5), order: int = 40, shift: float = 0.3,
                   tol: float = DEFAULT_TOLERANCES["regularized"]) -> list[IdentityReport]:
    phi = dist.shifted_gaussian(order, shift)
    out = []
    for a in alphas:
        for conv in dist.BRANCHES:
            res = dist.pairing_residual(a, phi, order, conv)
            final = res.partial_sums[-1]
            tail = [abs(s - res.lhs) for s in res.partial_sums[-5:]]
            integer = float(a).is_integer()
            established = integer and conv == "moment (-1)^n"
            r = abs(final - res.lhs)
            if r <= tol:
                status = NUMERIC_MATCH
            elif not integer and max(tail) > 10 * min(tail):
                status = NON_CONVERGENT
            else:
                status = MISMATCH
            out.append(IdentityReport(
                "test_function_pairing", {"alpha": a, "order": order, "phi": phi.name}, res.lhs, final, status, r,
                conv, tol, established=established,
                note="partial sums |S_N - lhs| (last 5): " + ", ".join("%.3g" % v for v in tail)))
    return out


def verify_ogf(alphas=(0.25, 1.5, math.sqrt(5)), xs=(0.5, 2.3, 4.9), ts=(-1.0, 0.0, 0.8),
               tol: float = DEFAULT_TOLERANCES["geometric"]) -> list[IdentityReport]:
    out = []
    for a in alphas:
        for x in xs:
            for t in ts:
                lhs, rhs = mlmod.frac_spline_ogf(a, x, t, 40)
                out.append(numeric_report("spline_poly_ogf", {"alpha": a, "x": x, "t": t, "N": 40}, lhs, rhs, tol))
    p1, p2 = mlmod.MLParams(1, 1), mlmod.MLParams(1, 2)
    out.append(numeric_report("mittag_leffler_special", {"a": 1, "b": 1, "z": 1}, mlmod.ml(p1, 1), math.e,
                              DEFAULT_TOLERANCES["entire"], "E_{1,1}(1) = e"))
    out.append(numeric_report("mittag_leffler_special", {"a": 1, "b": 2, "z": 1}, mlmod.ml(p2, 1), math.e - 1,
                              DEFAULT_TOLERANCES["entire"], "E_{1,2}(1) = e - 1"))
    return out


# ---------------------------------------------------------------------------
# registry and suite runner


@dataclass
class SuiteConfig:
    max_m: int = 15
    max_n: int = 15
    alphas: tuple = (1.5, 2.5, math.pi)
    tolerances: dict = field(default_factory=dict)
    output: str | None = None
    suites: tuple = ("all",)

    def __post_init__(self):
        if self.max_m < 1 or self.max_n < 1:
            raise ValueError("sweep bounds must be >= 1")
        bad = set(self.suites) - {"all", "combinatorics", "spectral", "distributional"}
        if bad:
            raise ValueError(f"unknown suite(s): {sorted(bad)}")

    def wants(self, suite: str) -> bool:
        return "all" in self.suites or suite in self.suites


def _combinatorics_suite(cfg: SuiteConfig) -> list[IdentityReport]:
    out: list[IdentityReport] = []
    for n in range(1, cfg.max_n + 1):
        for m in range(cfg.max_m + 1):
            out.extend(verify_bernoulli_stirling(m, n))
        out.extend(verify_catalan_diagonal(n))
    out.extend(verify_stirling_routes(2 * max(cfg.max_m, cfg.max_n)))
    small = min(cfg.max_n, 12)
    out.extend(verify_array_bernoulli(small, small))
    out.extend(verify_reflected_params(min(small, 8), min(small, 6)))
    for n in range(1, min(cfg.max_n, 8) + 1):
        out.extend(verify_symbol_expansions(n, min(cfg.max_m, 12)))
    for a in (2, 3, 4):
        for x in (Fraction(0), Fraction(1), Fraction(1, 2)):
            out.append(verify_symbol_stirling_gf(a, x, 12))
    for a in cfg.alphas:
        for x in (0.0, 0.5):
            out.append(verify_symbol_stirling_gf(a, x, 12, cfg.tolerances.get("geometric", DEFAULT_TOLERANCES["geometric"])))
    for a in (1, 2, 3, 4):
        for n in range(0, 5):
            for x in (Fraction(0), Fraction(1, 2), Fraction(1)):
                out.extend(verify_explicit_rep(a, n, x))
    for a in (1.5,):
        out.extend(verify_explicit_rep(a, 0, 0.3))
    return out


def _spectral_suite(cfg: SuiteConfig) -> list[IdentityReport]:
    out = verify_symbol_suite(cfg.alphas, tolerances=cfg.tolerances)
    out.extend(verify_partition_of_unity(cfg.alphas))
    return out


def _distributional_suite(cfg: SuiteConfig) -> list[IdentityReport]:
    out = verify_delta_expansion()
    out.extend(verify_shifted_representation())
    out.extend(verify_nfold())
    out.extend(verify_weak_de())
    out.extend(verify_semigroup())
    out.extend(verify_reflected_stirling_gf())
    out.extend(verify_pairing())
    out.extend(verify_ogf())
    return out


SUITES: dict[str, Callable[[SuiteConfig], list[IdentityReport]]] = {
    "combinatorics": _combinatorics_suite,
    "spectral": _spectral_suite,
    "distributional": _distributional_suite,
}

# every result of the source document -> identity ids that check it
COVERAGE = {
    "symbol generating function": ["bspline_symbol_egf"],
    "series representation of the symbols": ["symbol_geometric_series"],
    "symbol expansion via Stirling numbers": ["symbol_stirling_expansion"],
    "symbol expansion via negative-order Bernoulli polynomials": ["symbol_bernoulli_expansion"],
    "Bernoulli-Stirling identity": ["bernoulli_stirling"],
    "diagonal Bernoulli-Stirling identity": ["bernoulli_stirling_diagonal"],
    "Catalan rewrite": ["catalan_rewrite"],
    "Array-type polynomial generating function": ["array_poly_bernoulli", "array_poly_swapped_params"],
    "fractional Fourier-type generating function": ["fractional_symbol_stirling_gf"],
    "Fourier shift of the generating function": ["fractional_symbol_stirling_gf", "reflected_stirling_gf"],
    "delta coefficients c_n": ["delta_expansion_coefficients"],
    "double Fourier transform": ["double_fourier"],
    "n-fold Fourier transform": ["nfold_fourier"],
    "shifted delta representation": ["shifted_delta_representation"],
    "fractional differential equation": ["fractional_de_weak_form", "fractional_integral_semigroup"],
    "fractional difference symbol": ["nabla_symbol"],
    "explicit representation of Stirling-type polynomials": ["stirling_explicit_rep"],
    "reflected-parameter Fourier-type generating function": ["reflected_stirling_gf", "array_poly_swapped_params"],
    "inverse Fourier delta representation": ["test_function_pairing"],
    "test-function pairing": ["test_function_pairing"],
    "fractional spline polynomial generating function": ["spline_poly_ogf", "mittag_leffler_special"],
    "partition of unity": ["partition_of_unity"],
    "time/frequency consistency": ["dft_consistency", "integer_symbol_consistency", "symbol_conjugate_symmetry"],
}


@dataclass
class SuiteResult:
    reports: list[IdentityReport]
    summary: dict

    @property
    def ok(self) -> bool:
        return self.summary["failed_established"] == 0

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_dict(self) -> dict:
        return {"summary": self.summary, "reports": [r.to_dict() for r in self.reports]}


def summarize(reports: Sequence[IdentityReport], elapsed: float | None = None) -> dict:
    counts = {s: 0 for s in STATUSES}
    per_identity: dict[str, dict] = {}
    failures = []
    for r in reports:
        counts[r.status] += 1
        entry = per_identity.setdefault(
            r.identity_id, {"reports": 0, "worst_residual": 0.0, "statuses": {s: 0 for s in STATUSES}}
        )
        entry["reports"] += 1
        entry["statuses"][r.status] += 1
        if r.established and math.isfinite(r.residual):
            entry["worst_residual"] = max(entry["worst_residual"], r.residual)
        if r.failed:
            failures.append({"identity_id": r.identity_id, "params": r.params, "variant": r.variant})
    summary = {
        "total": len(reports),
        "counts": counts,
        "per_identity": per_identity,
        "failed_established": len(failures),
        "failures": failures,
        "documented_discrepancies": sum(1 for r in reports if not r.established and r.status in (MISMATCH, NON_CONVERGENT)),
    }
    if elapsed is not None:
        summary["elapsed_seconds"] = round(elapsed, 3)
    return summary


def run_suite(config: SuiteConfig | None = None, write: bool = True, timed: bool = False) -> SuiteResult:
    """Run the selected suites; reports come back sorted by identity, params, variant.

    ``timed`` adds wall-clock time to the summary (off by default so that
    repeated runs serialize byte-identically).
    """
    cfg = config or SuiteConfig()
    start = time.perf_counter()
    reports: list[IdentityReport] = []
    for name, fn in SUITES.items():
        if cfg.wants(name):
            reports.extend(fn(cfg))
    reports.sort(key=IdentityReport.sort_key)
    summary = summarize(reports, time.perf_counter() - start if timed else None)
    result = SuiteResult(reports, summary)
    if write and cfg.output:
        from .serialize import write_json

        write_json(cfg.output, result.to_dict())
    return result


def residual_table(reports: Iterable[IdentityReport]) -> str:
    """Human-readable one-line-per-identity table (worst residual, status counts)."""
    summary = summarize(list(reports))
    lines = [f"{'identity':38s} {'n':>5s} {'worst residual':>15s}  statuses"]
    for ident, e in sorted(summary["per_identity"].items()):
        st = ", ".join(f"{k}={v}" for k, v in e["statuses"].items() if v)
        lines.append(f"{ident:38s} {e['reports']:5d} {e['worst_residual']:15.3e}  {st}")
    return "\n".join(lines)
