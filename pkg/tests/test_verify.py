import json
from fractions import Fraction

import pytest

from fracspline import combinatorics as comb
from fracspline import verify as ver


def _by_variant(reports):
    return {r.variant: r for r in reports}


def test_bernoulli_stirling_at_one_one():
    reps = _by_variant(ver.verify_bernoulli_stirling(1, 1))
    zero = reps["x=0 sign+"]
    assert zero.status == ver.EXACT_EQUAL and zero.lhs == zero.rhs == Fraction(1, 2)
    printed = reps["x=n sign(-1)^(m+n)"]
    assert printed.status == ver.MISMATCH
    assert (printed.lhs, printed.rhs) == (Fraction(3, 2), Fraction(1, 2))
    assert not printed.established and "convention" in printed.note
    assert reps["x=-n sign(-1)^m"].status == ver.EXACT_EQUAL


def test_diagonal_case_reproduced_by_general_sweep():
    n = 4
    diag = [r for r in ver.verify_bernoulli_stirling(n, n) if r.variant == "x=0 sign+"][0]
    catalan = ver.verify_catalan_diagonal(n)
    assert all(r.status == ver.EXACT_EQUAL for r in catalan if r.established)
    assert diag.rhs == catalan[0].rhs


@pytest.mark.parametrize("n", [1, 5, 15])
def test_catalan_examples(n):
    reps = ver.verify_catalan_diagonal(n)
    est = [r for r in reps if r.established]
    assert all(r.status == ver.EXACT_EQUAL for r in est)
    if n == 1:
        assert est[0].rhs == Fraction(1, 2)


def test_symbol_stirling_gf_examples():
    assert ver.verify_symbol_stirling_gf(2, 0, 12).status == ver.EXACT_EQUAL
    assert ver.verify_symbol_stirling_gf(2, 1, 12).status == ver.EXACT_EQUAL
    r = ver.verify_symbol_stirling_gf(3, Fraction(1, 2), 0)
    assert r.lhs == r.rhs == [1]


def test_symbol_stirling_gf_fractional_orders():
    for a in (1.5, 2.5):
        for x in (0.0, 0.5):
            r = ver.verify_symbol_stirling_gf(a, x, 10)
            assert r.status == ver.NUMERIC_MATCH, r.residual


def test_log_sinc_oracle_on_integer_order():
    # the floating log-series oracle and the exact convolution oracle agree at alpha = 3
    exact = ver._naive_symbol_series(3, Fraction(1, 2), 8)
    w = ver._log_sinc_symbol_series(3.0, 0.5, 8)
    for n in range(9):
        assert abs(w[n] / (-1j) ** n - float(exact[n])) < 1e-13


def test_explicit_rep_examples():
    reps = _by_variant(ver.verify_explicit_rep(3, 2, Fraction(1, 2)))
    assert reps["sign (-1)^alpha"].status == ver.EXACT_EQUAL
    assert reps["printed (no sign)"].status == ver.MISMATCH
    reps = _by_variant(ver.verify_explicit_rep(2, 0, 0))
    assert reps["printed (no sign)"].lhs == reps["sign (-1)^alpha"].lhs == 1
    (frac,) = ver.verify_explicit_rep(1.5, 0, 0.3)
    assert frac.status == ver.NON_CONVERGENT and not frac.established
    assert "Abel values" in frac.note


def test_symbol_expansion_phases():
    reps = {(r.identity_id, r.variant): r for r in ver.verify_symbol_expansions(3, 8)}
    assert reps[("symbol_stirling_expansion", "phase i^(3m)")].status == ver.EXACT_EQUAL
    assert reps[("symbol_stirling_expansion", "phase i^(3m+2n)")].status == ver.MISMATCH
    assert reps[("symbol_bernoulli_expansion", "i^m B_m^(-n)(-n)")].status == ver.EXACT_EQUAL
    # for even n the printed phase coincides with the corrected one
    even = {(r.identity_id, r.variant): r for r in ver.verify_symbol_expansions(2, 8)}
    assert even[("symbol_stirling_expansion", "phase i^(3m+2n)")].status == ver.EXACT_EQUAL


def test_symbol_suite_examples():
    reps = ver.verify_symbol_suite(alphas=(2.5,), omegas=(1.0,))
    geo = [r for r in reps if r.identity_id == "symbol_geometric_series"]
    assert {r.status for r in geo if r.established} == {ver.NUMERIC_MATCH}
    assert any(r.status == ver.NON_CONVERGENT for r in geo)
    egf = [r for r in reps if r.identity_id == "bspline_symbol_egf" and r.params["t"] == 2]
    assert egf and egf[0].residual <= 1e-12
    dft = [r for r in reps if r.identity_id == "dft_consistency" and r.params["alpha"] == 2.0]
    assert dft[0].residual <= 1e-4


def test_report_validation_and_failure_flag():
    with pytest.raises(ValueError):
        ver.IdentityReport("x", {}, 1, 1, "maybe", 0.0)
    r = ver.IdentityReport("x", {}, 1, 2, ver.MISMATCH, 1.0, established=False)
    assert not r.failed
    assert ver.IdentityReport("x", {}, 1, 2, ver.NON_CONVERGENT, 1.0).failed


def test_exact_report_refuses_floats():
    with pytest.raises(TypeError):
        ver.exact_report("x", {}, 0.5, Fraction(1, 2))


def test_suite_config_validation():
    with pytest.raises(ValueError):
        ver.SuiteConfig(max_n=0)
    with pytest.raises(ValueError):
        ver.SuiteConfig(suites=("everything",))


def test_run_suite_small_and_deterministic(tmp_path):
    cfg = ver.SuiteConfig(max_m=6, max_n=6, suites=("combinatorics",), output=str(tmp_path / "a.json"))
    res = ver.run_suite(cfg)
    assert res.ok and res.exit_code == 0
    keys = [r.sort_key() for r in res.reports]
    assert keys == sorted(keys)
    doc = json.loads((tmp_path / "a.json").read_text())
    assert set(doc) == {"summary", "reports"}
    assert "worst_residual" in doc["summary"]["per_identity"]["bernoulli_stirling"]
    cfg2 = ver.SuiteConfig(max_m=6, max_n=6, suites=("combinatorics",), output=str(tmp_path / "b.json"))
    ver.run_suite(cfg2)
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_every_zero_argument_identity_exact():
    res = ver.run_suite(ver.SuiteConfig(max_m=15, max_n=15, suites=("combinatorics",)), write=False)
    zero = [r for r in res.reports if r.identity_id == "bernoulli_stirling" and r.variant == "x=0 sign+"]
    assert len(zero) == 15 * 16
    assert all(r.status == ver.EXACT_EQUAL for r in zero)


def test_fault_injection_is_detected(monkeypatch):
    real = comb.stirling2

    def corrupted(m, n):
        v = real(m, n)
        return v + 1 if (m, n) == (7, 3) else v

    monkeypatch.setattr(comb, "stirling2", corrupted)
    res = ver.run_suite(ver.SuiteConfig(max_m=5, max_n=5, suites=("combinatorics",)), write=False)
    assert not res.ok and res.exit_code == 1
    hit = [f for f in res.summary["failures"] if f["identity_id"] == "bernoulli_stirling"]
    assert {"m": 4, "n": 3} in [f["params"] for f in hit]


def test_residual_table_lists_identities():
    reps = ver.verify_catalan_diagonal(3)
    table = ver.residual_table(reps)
    assert "catalan_rewrite" in table and "bernoulli_stirling_diagonal" in table


def test_coverage_map_points_at_real_identities():
    res = ver.run_suite(ver.SuiteConfig(max_m=3, max_n=3), write=False)
    seen = {r.identity_id for r in res.reports}
    for ids in ver.COVERAGE.values():
        assert set(ids) <= seen
