import math
from fractions import Fraction

import pytest

from qsync.census import (
    census_report,
    enumerate_balanced,
    f_qdfa,
    f_stirling,
    n_dfa,
    n_qdfa,
    sample_fraction,
)
from qsync.errors import FormatError
from qsync.jsonio import dumps


class TestFormulas:
    def test_n_dfa(self):
        assert n_dfa(3) == 729
        assert n_dfa(1) == 1
        assert n_dfa(2) == 16

    def test_n_qdfa_against_enumeration(self):
        for n in (1, 2, 3, 4):
            total, balanced = enumerate_balanced(n)
            assert total == n_dfa(n)
            assert balanced == n_qdfa(n)
        assert n_qdfa(4) == 40320 // 16 == 2520

    def test_f_qdfa(self):
        exact, value = f_qdfa(3)
        assert exact == Fraction(90, 729)
        assert math.isclose(value, 90 / 729)
        assert f_qdfa(1)[0] == 1
        assert f_qdfa(2) == (Fraction(6, 16), 0.375)

    def test_exact_arithmetic_large_n(self):
        exact, value = f_qdfa(40)
        assert exact.numerator * n_dfa(40) == n_qdfa(40) * exact.denominator
        assert 0 < value < 1

    def test_preconditions(self):
        for bad in (0, -1, 1.5):
            with pytest.raises(FormatError):
                n_dfa(bad)


class TestStirling:
    def test_n1_direct(self):
        assert math.isclose(f_stirling(1), math.sqrt(4 * math.pi) * (2 / math.e**2))

    def test_relative_error_small_at_10(self):
        assert abs(f_stirling(10) / float(f_qdfa(10)[0]) - 1) < 0.05

    def test_error_decreases(self):
        errors = [abs(f_stirling(n) / float(f_qdfa(n)[0]) - 1) for n in range(5, 21)]
        assert all(later < earlier for earlier, later in zip(errors, errors[1:]))

    def test_ratio_limit(self):
        # f(n+1)/f(n) -> 2/e^2
        ratio = float(f_qdfa(31)[0] / f_qdfa(30)[0])
        assert abs(ratio / (2 / math.e**2) - 1) < 0.05


class TestSampling:
    def test_within_binomial_band(self):
        estimate = sample_fraction(3, 100_000, seed=11)
        p = 90 / 729
        sigma = math.sqrt(p * (1 - p) / estimate["samples"])
        assert abs(estimate["fraction"] - p) < 4 * sigma

    def test_deterministic_for_seed(self):
        assert sample_fraction(4, 5000, seed=3) == sample_fraction(4, 5000, seed=3)

    def test_chunking_invariant(self):
        # totals must not depend on how many chunks the count spans
        small = sample_fraction(2, 4096, seed=9)
        merged = sample_fraction(2, 8192, seed=9)
        assert small["hits"] <= merged["hits"]

    def test_zero_samples_rejected(self):
        with pytest.raises(FormatError):
            sample_fraction(3, 0, seed=1)


class TestReport:
    def test_doc_uses_decimal_strings(self):
        report = census_report(25)
        doc = report.to_doc()
        assert doc["n_dfa"] == str(25 ** 50)
        assert isinstance(doc["n_qdfa"], str)
        assert doc["f_exact"]["value"] == float(report.f_exact)
        dumps(doc)  # serializable

    def test_invariants(self):
        report = census_report(6, samples=500, seed=2)
        assert report.n_qdfa <= report.n_dfa
        assert 0 < report.f_exact <= 1
        assert report.f_exact == Fraction(report.n_qdfa, report.n_dfa)
        assert report.sample_estimate["samples"] == 500
