import mpmath as mp
import pytest

import psirh
from psirh.criteria import (CONSTANTS, CriterionKind, check_sigma_upper_bound,
                            mp_e_gamma, mp_zeta2, scan_exceptions)
from psirh.errors import DomainError, ResourceLimitError

SET_A = (2, 3, 4, 5, 6, 8, 9, 10, 12, 16, 18, 20, 24, 30, 36, 48, 60, 72, 84,
         120, 180, 240, 360, 720, 840, 2520, 5040)
SET_B = (2, 3, 4, 5, 6, 8, 10, 12, 18, 30)


class TestConstants:
    def test_against_high_precision(self):
        with mp.workdps(30):
            assert CONSTANTS.gamma == float(mp.euler)
            assert CONSTANTS.e_gamma == float(mp_e_gamma())
            assert CONSTANTS.zeta2 == float(mp_zeta2())
            assert CONSTANTS.e_gamma_over_zeta2 == float(mp_e_gamma() / mp_zeta2())


class TestRobinG:
    def test_at_5040(self):
        cv = psirh.robin_g(5040)
        assert cv.value == pytest.approx(0.0213, abs=2e-4)
        assert cv.value > 0

    def test_past_5040(self):
        assert psirh.robin_g(10080).value == pytest.approx(-0.0561, abs=2e-4)

    def test_n2_sign_forced(self):
        cv = psirh.robin_g(2)
        assert cv.threshold < 0
        assert cv.value > 0

    def test_domain(self):
        with pytest.raises(DomainError):
            psirh.robin_g(1)

    def test_value_is_ratio_minus_threshold(self):
        cv = psirh.robin_g(360)
        assert cv.value == pytest.approx(cv.ratio - cv.threshold, abs=1e-12)


class TestDedekindF:
    def test_at_30(self):
        assert psirh.dedekind_f(30).value == pytest.approx(0.2197, abs=2e-4)

    def test_at_31(self):
        assert psirh.dedekind_f(31).value == pytest.approx(-1.1651, abs=2e-4)

    def test_equals_g_on_squarefree(self):
        for n in (2, 6, 30, 210, 2310, 4199):
            f = psirh.dedekind_f(n)
            g = psirh.robin_g(n)
            assert f.value == g.value

    def test_f_below_g_generally(self):
        for n in range(2, 2000):
            assert psirh.dedekind_f(n).value <= psirh.robin_g(n).value + 1e-12

    def test_domain(self):
        with pytest.raises(DomainError):
            psirh.dedekind_f(0)


class TestScanExceptions:
    def test_set_b_prefix(self):
        rep = scan_exceptions(CriterionKind.DEDEKIND_F, 2, 10**4)
        assert rep.exceptions == SET_B
        assert rep.largest == 30

    def test_set_a_prefix(self):
        rep = scan_exceptions(CriterionKind.ROBIN_G, 2, 10**4)
        assert rep.exceptions == SET_A
        assert rep.largest == 5040

    def test_empty_above_30(self):
        rep = scan_exceptions(CriterionKind.DEDEKIND_F, 31, 10**4)
        assert rep.exceptions == ()
        assert rep.largest is None

    def test_b_subset_of_a(self):
        b = scan_exceptions(CriterionKind.DEDEKIND_F, 2, 10**4)
        a = scan_exceptions(CriterionKind.ROBIN_G, 2, 10**4)
        assert set(b.exceptions) <= set(a.exceptions)

    def test_chunk_size_invariance(self):
        reps = [scan_exceptions(CriterionKind.ROBIN_G, 2, 10**4, chunk_size=cs)
                for cs in (64, 999, 10**4, 1 << 20)]
        assert all(r == reps[0] for r in reps[1:])

    def test_range_validation(self):
        with pytest.raises(DomainError):
            scan_exceptions(CriterionKind.ROBIN_G, 1, 100)
        with pytest.raises(DomainError):
            scan_exceptions(CriterionKind.ROBIN_G, 10, 10)
        with pytest.raises(ResourceLimitError):
            scan_exceptions(CriterionKind.ROBIN_G, 2, 10**9)


class TestSigmaUpperBound:
    def test_paper_constant_fails_at_12(self):
        res = check_sigma_upper_bound(3, 100, c=0.6482)
        assert not res.passed
        assert res.witness == 12
        assert res.worst_margin == pytest.approx(-1.4995e-5, rel=1e-3)

    def test_bumped_constant_passes(self):
        res = check_sigma_upper_bound(3, 10**4, c=0.6483)
        assert res.passed
        assert res.witness == 12
        assert res.worst_margin == pytest.approx(9.4866e-5, rel=1e-3)

    def test_paper_constant_holds_excluding_12(self):
        res = check_sigma_upper_bound(13, 10**4, c=0.6482)
        assert res.passed

    def test_lo_validation(self):
        with pytest.raises(DomainError):
            check_sigma_upper_bound(2, 100)
