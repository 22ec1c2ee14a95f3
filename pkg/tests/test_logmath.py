import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quarantine_release.errors import DomainError
from quarantine_release.logmath import LOG_ZERO, log_beta, log_binomial, log_pow


class TestLogBeta:
    def test_unit_arguments(self):
        assert log_beta(1.0, 1.0) == pytest.approx(0.0, abs=1e-14)

    def test_hand_computed_2_3(self):
        # B(2,3) = 1!*2!/4! = 1/12
        assert log_beta(2.0, 3.0) == pytest.approx(math.log(1 / 12), rel=1e-12)

    def test_half_half_is_pi(self):
        assert log_beta(0.5, 0.5) == pytest.approx(math.log(math.pi), rel=1e-12)

    @pytest.mark.parametrize("a,b", [(0.0, 1.0), (-1.0, 2.0), (1.0, 0.0), (2.0, -3.0)])
    def test_non_positive_rejected(self, a, b):
        with pytest.raises(DomainError):
            log_beta(a, b)

    @given(
        st.floats(min_value=1e-6, max_value=1e6),
        st.floats(min_value=1e-6, max_value=1e6),
    )
    def test_symmetric_bitwise(self, a, b):
        assert log_beta(a, b) == log_beta(b, a)

    # references computed once with mpmath at 40 decimal digits
    @pytest.mark.parametrize(
        "a,b,expected,rel",
        [
            (1e-6, 1e-6, 14.50865773852257448, 1e-12),
            (1e6, 1e6, -1386300.003362921116, 1e-12),
            (3.5, 700.25, -21.73529621213590384, 1e-12),
            # b/a ~ 1e12: cancellation-limited corner, half an ulp of digit 12
            (1e-6, 1e6, 13.81549616523937370, 5e-12),
        ],
    )
    def test_extreme_arguments_match_reference(self, a, b, expected, rel):
        assert log_beta(a, b) == pytest.approx(expected, rel=rel)


class TestLogBinomial:
    def test_choose_zero(self):
        assert log_binomial(5, 0) == pytest.approx(0.0, abs=1e-13)

    def test_hand_computed(self):
        assert log_binomial(4, 2) == pytest.approx(math.log(6), rel=1e-12)

    def test_against_exact_integer_oracle(self):
        assert math.comb(25, 12) == 5200300
        assert log_binomial(25, 12) == pytest.approx(math.log(5200300), rel=1e-12)

    @given(st.integers(min_value=0, max_value=1000))
    def test_relative_error_vs_exact(self, n):
        k = n // 2
        if n == 0:
            return
        assert log_binomial(n, k) == pytest.approx(math.log(math.comb(n, k)), rel=1e-12)

    @given(st.integers(min_value=0, max_value=200))
    def test_symmetry(self, n):
        for k in range(0, n + 1):
            assert log_binomial(n, k) == pytest.approx(log_binomial(n, n - k), abs=1e-12)

    @settings(max_examples=30)
    @given(st.integers(min_value=2, max_value=60), st.data())
    def test_pascal_rule(self, n, data):
        k = data.draw(st.integers(min_value=1, max_value=n - 1))
        lhs = math.exp(log_binomial(n, k))
        rhs = math.exp(log_binomial(n - 1, k - 1)) + math.exp(log_binomial(n - 1, k))
        assert lhs == pytest.approx(rhs, rel=1e-10)

    @pytest.mark.parametrize("n,k", [(3, 4), (-1, 0), (2, -1)])
    def test_out_of_domain_rejected(self, n, k):
        with pytest.raises(DomainError):
            log_binomial(n, k)


class TestLogPow:
    def test_zero_base_zero_exponent(self):
        assert log_pow(0.0, 0) == 0.0

    def test_zero_base_positive_exponent(self):
        assert log_pow(0.0, 3) == LOG_ZERO

    def test_ordinary(self):
        assert log_pow(0.25, 2) == pytest.approx(2 * math.log(0.25))

    def test_log_zero_absorbs_addition(self):
        assert LOG_ZERO + 5.0 == LOG_ZERO
        assert math.exp(LOG_ZERO) == 0.0

    def test_negative_base_rejected(self):
        with pytest.raises(DomainError):
            log_pow(-0.5, 2)
