from __future__ import annotations

import math

import numpy as np
import pytest

from slicereg.hypercomplex import OCTONION, QUATERNION, DomainError, ImaginaryUnit, Quaternion, clifford
from slicereg.inequalities import (
    PolynomialGenerator,
    VerificationReport,
    ankeny_converse_scenario,
    ankeny_growth_check,
    bernstein_check,
    bernstein_l2_check,
    bernstein_min_check,
    config_hash,
    default_r_samples,
    erdos_lax_subclass_check,
    erdos_lax_zero_structure_check,
    fuzz_campaign,
    lax_ratio_check,
    normalize_at_one,
)
from slicereg.slicepoly import ComplexSlicePolynomial, SlicePolynomial, common_coefficient_slice, polynomial_from_json, restrict_to_slice

SQRT2 = math.sqrt(2.0)


def half_one_plus(n: int) -> SlicePolynomial:
    c = np.zeros(n + 1)
    c[0] = c[n] = 0.5
    return SlicePolynomial.real(c)


# -- report ---------------------------------------------------------------------


def test_report_ratio_and_violation():
    r = VerificationReport("x", 0.0, 0.0, True)
    assert r.ratio == 1.0
    assert VerificationReport("x", 1.0, 0.0, False).ratio == math.inf
    assert not VerificationReport("x", 2.0, 1.0, False, preconditions_met=False).violation
    assert VerificationReport("x", 2.0, 1.0, False).violation
    d = VerificationReport("x", 1.0, 0.0, False).to_dict("x", 3, "abc")
    assert d["schema"] == "report_v1" and d["ratio"] is None and d["trial"] == 3


# -- Bernstein ------------------------------------------------------------------


def test_bernstein_monomial_equality():
    P = SlicePolynomial.monomial(3, Quaternion(0, 0, 0, 2))
    r = bernstein_check(P)
    assert r.lhs == pytest.approx(6.0) and r.rhs == pytest.approx(6.0)
    assert r.holds and r.equality_case and r.details["equality_consistent"]


def test_bernstein_counterexample(cex):
    r = bernstein_check(cex)
    assert r.holds and not r.equality_case
    assert r.lhs == pytest.approx(2 + SQRT2, abs=1e-8)
    assert r.rhs == pytest.approx(4 * SQRT2, abs=1e-8)


def test_bernstein_constant_rejected():
    with pytest.raises(DomainError, match="constant polynomial"):
        bernstein_check(SlicePolynomial.real([2.0]))


def test_bernstein_equality_implies_holds(rng):
    for _ in range(20):
        P = SlicePolynomial(QUATERNION, rng.uniform(-1, 1, (int(rng.integers(2, 7)), 4)))
        r = bernstein_check(P)
        assert r.holds
        assert r.holds or not r.equality_case
        assert r.holds == (r.lhs <= r.rhs * (1 + r.tolerances["rel_tol"]) + r.tolerances["abs_tol"])


def test_bernstein_clifford_and_octonion(rng):
    for alg in (clifford(2), clifford(3), OCTONION):
        P = SlicePolynomial(alg, rng.uniform(-1, 1, (5, alg.dim)))
        assert bernstein_check(P).holds


def test_bernstein_min_examples():
    r = bernstein_min_check(SlicePolynomial.monomial(4, Quaternion(1, 1, 0, 0)))
    assert r.equality_case and r.lhs == pytest.approx(4 * SQRT2)
    r = bernstein_min_check(SlicePolynomial.real([1.0, 0.0, 1.0]))
    assert r.lhs == pytest.approx(0.0, abs=1e-12) and r.rhs == pytest.approx(2.0)
    assert r.holds and not r.equality_case


def test_bernstein_min_false_without_zero_hypothesis():
    # q + 3: n min|P| = 2 while min|P'| = 1; reported as computed
    r = bernstein_min_check(SlicePolynomial.real([3.0, 1.0]))
    assert r.lhs == pytest.approx(2.0) and r.rhs == pytest.approx(1.0)
    assert not r.holds and r.violation
    # q + 2 reaches ratio 1 without being a monomial
    r = bernstein_min_check(SlicePolynomial.real([2.0, 1.0]))
    assert r.ratio == pytest.approx(1.0) and not r.equality_case
    assert not r.details["equality_consistent"]


def test_bernstein_l2():
    r = bernstein_l2_check(SlicePolynomial.real([1.0, 1.0]))
    assert r.lhs == pytest.approx(1.0) and r.rhs == pytest.approx(SQRT2) and r.holds and not r.equality_case
    r = bernstein_l2_check(SlicePolynomial.monomial(5, Quaternion(0, 1, 2, 3)))
    assert r.holds and r.equality_case and r.lhs == pytest.approx(r.rhs, rel=1e-15)


# -- Erdos-Lax ------------------------------------------------------------------


def test_erdos_lax_counterexample(cex):
    r = erdos_lax_subclass_check(cex)
    assert not r.preconditions_met and not r.violation
    assert r.ratio == pytest.approx((2 + SQRT2) / (2 * SQRT2), abs=1e-6)
    assert r.ratio > 1


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_erdos_lax_equality_family(n):
    r = erdos_lax_subclass_check(half_one_plus(n))
    assert r.preconditions_met
    assert r.lhs == pytest.approx(n / 2, abs=1e-9) and r.rhs == pytest.approx(n / 2, abs=1e-9)
    assert r.holds


def test_erdos_lax_zero_inside_is_precondition_failure():
    r = erdos_lax_subclass_check(SlicePolynomial.real([0.5, 1.0]))
    assert not r.preconditions_met and "open unit disk" in r.reasons[0]


def test_erdos_lax_zero_structure():
    P = SlicePolynomial.real(np.polynomial.polynomial.polymul([4.0, 0.0, 1.0], [-2.0, 1.0]) / 10)
    r = erdos_lax_zero_structure_check(P)
    assert r.preconditions_met and r.holds
    zs = r.details["zero_set"]
    assert zs["spherical_zeros"][0]["y"] == pytest.approx(2.0)
    assert zs["real_zeros"][0]["location"] == pytest.approx(2.0)


def test_erdos_lax_zero_structure_counterexample(cex):
    r = erdos_lax_zero_structure_check(cex)
    assert not r.preconditions_met
    assert "isolated zero of multiplicity > 1" in r.reasons


def test_erdos_lax_zero_structure_inside():
    r = erdos_lax_zero_structure_check(SlicePolynomial.real([0.25, 0.0, 1.0]))
    assert not r.preconditions_met and "zero inside the open unit ball" in r.reasons


# -- Lax ratio and Ankeny-Rivlin ------------------------------------------------


def test_lax_ratio_examples():
    r = lax_ratio_check([0, 0, 0], 1.0)
    assert r.rhs == pytest.approx(3.0) and r.holds
    r = lax_ratio_check([0.9], 0.0)
    assert r.rhs == pytest.approx(10.0) and r.holds
    assert min(r.details["term_real_parts"]) > 0.5


def test_lax_ratio_precondition():
    r = lax_ratio_check([1.5], 0.0)
    assert not r.preconditions_met
    with pytest.raises(DomainError):
        lax_ratio_check([1.0], 0.0)


@pytest.mark.parametrize("R", [1.5, 2.0, 4.0])
def test_ankeny_equality(R):
    r = ankeny_growth_check(half_one_plus(4), R)
    assert r.holds and r.equality_case and r.preconditions_met
    assert r.lhs == pytest.approx((1 + R**4) / 2, rel=1e-12)


def test_ankeny_bound_can_fail_with_zero_inside():
    # (z + 1/2)(z + 3), normalized: a zero in the disk, so a failure is no violation
    P = SlicePolynomial.real(np.polynomial.polynomial.polyfromroots([-0.5, -3.0]))
    r = ankeny_growth_check(P, 2.0)
    assert not r.preconditions_met
    assert not r.violation


def test_ankeny_requires_R_above_one():
    with pytest.raises(DomainError):
        ankeny_growth_check(half_one_plus(2), 1.0)


def test_ankeny_converse_equality_family():
    r = ankeny_converse_scenario(half_one_plus(5))
    assert r.preconditions_met and r.holds
    assert r.details["conclusion"]
    assert r.details["Ps_at_1"] == pytest.approx(1.0, abs=1e-10)


def test_ankeny_converse_internal_value():
    r = ankeny_converse_scenario(half_one_plus(2))
    assert r.details["Ps_at_1"] == pytest.approx(1.0, abs=1e-10)


def test_ankeny_converse_contrapositive():
    I = ImaginaryUnit.from_vector(QUATERNION, [0.0, 0.6, 0.8])
    roots = 0.5 * np.exp(1j * np.array([0.3, 2.0, 4.1]))
    P = normalize_at_one(ComplexSlicePolynomial(I, tuple(np.polynomial.polynomial.polyfromroots(roots))).to_slice_polynomial())
    assert P.eval_real(1.0).allclose(QUATERNION.one(), atol=1e-9)
    r = ankeny_converse_scenario(P)
    assert not r.preconditions_met and r.holds
    assert r.details["hypothesis_failures"]
    assert r.details["all_zeros_inside"]
    assert r.details["dPs_exceeds_n"]
    assert r.details["lax_ratio_on_Ps"]["holds"]


def test_r_samples_inside_interval():
    s = default_r_samples(2.0)
    assert np.all((s > 1) & (s < 2)) and np.all(np.diff(s) > 0)


# -- generators and campaigns ---------------------------------------------------


def test_generator_is_deterministic():
    g = PolynomialGenerator(seed=5)
    assert g.polynomial(g.rng(3)) == PolynomialGenerator(seed=5).polynomial(PolynomialGenerator(seed=5).rng(3))
    assert g.polynomial(g.rng(3)) != g.polynomial(g.rng(4))


@pytest.mark.parametrize("constraint", ["common-slice", "zeros-outside", "zeros-inside"])
def test_generator_constraints(constraint):
    g = PolynomialGenerator(seed=11, constraint=constraint)
    for t in range(10):
        P = g.polynomial(g.rng(t))
        unit = common_coefficient_slice(P)
        assert unit is not None
        roots = np.roots(restrict_to_slice(P, unit).array[::-1])
        if constraint == "zeros-outside":
            assert np.all(np.abs(roots) >= 1 - 1e-9)
        if constraint == "zeros-inside":
            assert np.all(np.abs(roots) <= 0.9 + 1e-9)


def test_generator_rejects_bad_config():
    with pytest.raises(DomainError):
        PolynomialGenerator(constraint="nope")
    with pytest.raises(DomainError):
        PolynomialGenerator(law="cauchy")
    with pytest.raises(DomainError):
        PolynomialGenerator(degree_range=(3, 1))


def test_campaign_monomials_all_equal():
    res = fuzz_campaign(PolynomialGenerator(seed=1, degree_range=(3, 3), constraint="monomial"), "bernstein", 100)
    assert res.summary["equality_cases"] == 100 and res.summary["violations"] == 0


def test_campaign_summary_and_witness():
    res = fuzz_campaign(PolynomialGenerator(seed=42), "bernstein", 30)
    s = res.summary
    assert s["holds"] == 30 and s["violations"] == 0
    assert s["ratio_min"] <= s["ratio_mean"] <= s["ratio_max"] < 1
    ex = s["extremal"]
    P = polynomial_from_json(ex["subject"])
    assert bernstein_check(P).ratio == pytest.approx(ex["ratio"], rel=1e-12)
    assert len(res.csv_rows()) == 31


def test_campaign_threads_do_not_change_results():
    g = PolynomialGenerator(seed=9)
    a = fuzz_campaign(g, "bernstein", 12)
    b = fuzz_campaign(g, "bernstein", 12, threads=4)
    assert a.csv_rows() == b.csv_rows() and a.config_hash == b.config_hash


def test_campaign_errors_do_not_abort():
    res = fuzz_campaign(PolynomialGenerator(seed=0, degree_range=(0, 1)), "bernstein", 20)
    assert res.summary["errors"] > 0
    assert res.summary["errors"] + res.summary["holds"] == 20
    assert res.summary["violations"] == 0


def test_config_hash_stable():
    assert config_hash({"a": 1, "b": [1, 2]}) == config_hash({"b": [1, 2], "a": 1})
    assert len(config_hash({})) == 16
