"""Cardinal and fractional B-splines, their Fourier symbols, delta expansions,
and exact checks of the combinatorial identities that connect them."""

from .combinatorics import (
    ArrayPolyParams,
    ExtrapolationError,
    abel_regularized_sum,
    array_poly,
    bernoulli_neg_order,
    catalan,
    gen_binomial,
    stirling2,
    stirling_explicit_rep,
)
from .distributional import (
    DeltaExpansion,
    TestFunction,
    delta_coeffs,
    fractional_integral,
    kernel_Kalpha,
    pairing_residual,
    shifted_coeffs,
)
from .exact_core import Rational, TruncatedSeries
from .mittag_leffler import MLParams, frac_spline_ogf, ml
from .spectral import (
    dft_crosscheck,
    fourier_symbol_frac,
    fourier_symbol_int,
    nabla_symbol,
    nfold_fourier_coeffs,
)
from .splines import (
    GridFunction,
    SplineOrder,
    bspline_frac,
    bspline_int,
    frac_spline_poly,
    partition_of_unity,
    sample_grid,
    truncated_power,
)
from .verify import IdentityReport, SuiteConfig, run_suite

__version__ = "0.1.0"
