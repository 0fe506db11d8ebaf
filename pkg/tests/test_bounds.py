from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oddplanar.bounds import (
    NOT_APPLICABLE,
    InvalidProbability,
    audit_drawing,
    crossing_lemma_lower,
    mk_is_exact,
    mk_upper,
    modd_upper,
    ocr_linear_lower,
    sampling_experiment,
)
from fixtures import k5_one_crossing, triangle


# ---------------------------------------------------------------------------
# Point values pinned from the formulas
# ---------------------------------------------------------------------------


def test_mk_upper_values():
    assert mk_upper(0, 10) == 24
    assert mk_upper(1, 12) == 40
    assert mk_upper(2, 10) == 40
    assert mk_upper(3, 10) == 44  # floor(5.5*10 - 11)
    assert mk_upper(4, 10) == 48
    assert mk_upper(5, 10) == 85  # floor(3.81*sqrt(5)*10)


def test_mk_upper_small_n_clamped():
    assert mk_upper(0, 1) == 0
    assert mk_upper(0, 2) == 1
    assert mk_upper(3, 2) == 1


def test_mk_exactness_flag():
    assert mk_is_exact(0, 3) and mk_is_exact(0, 50)
    assert not mk_is_exact(1, 11)
    assert mk_is_exact(1, 12)
    assert not mk_is_exact(2, 40)


def test_modd_upper_values():
    assert modd_upper(1, 10) == 41  # 5n - 9
    assert modd_upper(2, 10) == 58  # 7n - 12
    assert modd_upper(100, 100) == 5656  # floor(sqrt(3200) * 100)
    assert modd_upper(0, 10) == 24
    assert modd_upper(1, 5) == 16


def test_ocr_linear_lower_values():
    assert ocr_linear_lower(10, 30) == 0
    assert ocr_linear_lower(10, 35) == 5
    assert ocr_linear_lower(10, 55) == 30


def test_crossing_lemma_values():
    assert crossing_lemma_lower(10, 60, "ocr_star") == 40
    assert crossing_lemma_lower(10, 40, "ocr_pt") == 10
    assert crossing_lemma_lower(10, 50, "ocr_star") is NOT_APPLICABLE
    assert crossing_lemma_lower(10, 45, "cr_classic") == Fraction(45**3 * 4, 243 * 100)
    assert crossing_lemma_lower(10, 69, "cr_ackerman") is NOT_APPLICABLE
    assert crossing_lemma_lower(10, 70, "cr_ackerman") == Fraction(70**3, 29 * 100)


def test_threshold_boundary_consistency():
    # At m = 6n the cubic ocr_star bound meets the linear one: both 4n.
    n = 17
    m = 6 * n
    assert crossing_lemma_lower(n, m, "ocr_star") == 4 * n == ocr_linear_lower(n, m)


# ---------------------------------------------------------------------------
# Monotonicity and ordering properties
# ---------------------------------------------------------------------------


@given(st.integers(min_value=0, max_value=40), st.integers(min_value=1, max_value=200))
def test_mk_monotone_in_k_and_n(k, n):
    assert mk_upper(k, n) <= mk_upper(k + 1, n)
    assert mk_upper(k, n) <= mk_upper(k, n + 1)


@given(st.integers(min_value=0, max_value=40), st.integers(min_value=1, max_value=200))
def test_modd_monotone_and_dominates_mk(k, n):
    assert modd_upper(k, n) <= modd_upper(k + 1, n)
    assert modd_upper(k, n) <= modd_upper(k, n + 1)
    assert modd_upper(k, n) >= mk_upper(k, n)


# ---------------------------------------------------------------------------
# Audits
# ---------------------------------------------------------------------------


def test_audit_planar_triangle():
    rep = audit_drawing(triangle(), 0)
    assert rep.all_passed
    assert rep.ocr_linear == 0
    assert rep.odd_pair_count == 0


def test_audit_k5_one_crossing():
    rep = audit_drawing(k5_one_crossing(), 1)
    assert rep.is_k_odd_plane and rep.is_k_plane
    assert rep.m == 10 <= rep.modd_upper_value == 16
    assert rep.all_passed


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------


def test_sampling_p1_reproduces_drawing():
    d = k5_one_crossing()
    s = sampling_experiment(d, 1, trials=5, seed=42)
    assert s.mean_n == 5 and s.mean_m == 10 and s.mean_x == 1
    assert s.se_n == s.se_m == s.se_x == 0.0
    assert s.law_violations == 0


def test_sampling_half_k5():
    d = k5_one_crossing()
    s = sampling_experiment(d, Fraction(1, 2), trials=4000, seed=7)
    assert s.expected_m == Fraction(5, 2)
    assert abs(float(s.mean_m - s.expected_m)) <= 3 * s.se_m
    assert abs(float(s.mean_n - s.expected_n)) <= 3 * s.se_n
    assert s.law_violations == 0


def test_sampling_rejects_bad_p():
    with pytest.raises(InvalidProbability):
        sampling_experiment(triangle(), 0, trials=1, seed=0)
    with pytest.raises(InvalidProbability):
        sampling_experiment(triangle(), Fraction(3, 2), trials=1, seed=0)
