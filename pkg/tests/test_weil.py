#!/usr/bin/env python3
"""
Unit tests for (ψ, β)-derivatives, the kernel 𝒟_{ψ,β} and the ψ-class
checks.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.fourier.trig import FourierCoefficients, TrigPolynomial
from src.weil.derivative import compose_property_check, weil_derivative, weil_nagy_norm, weil_reconstruct
from src.weil.kernel import abel_tail, convolution_representation, dpsi_kernel, psi_kernel_polynomial
from src.weil.psi import PsiWeight, ratio, validate_psi_class
from src.utils.error_handler import (
    DegenerateInputError,
    DivisionError,
    DomainError,
    PreconditionError,
    TruncationError
)

pytestmark = pytest.mark.unit

CLASSICAL = PsiWeight.power(1.0, beta=1.0, scale=1.0 / (2.0 * math.pi))


class TestPsiWeight:
    """Rules, serialization and ratios."""

    def test_rules(self):
        assert PsiWeight.power(2.0)(2) == pytest.approx(0.25)
        assert PsiWeight.log()(1) == pytest.approx(1.0 / math.log(2.0))
        table = PsiWeight.table((1.0, 0.5))
        assert table.K == 2
        assert math.isnan(table(3))
        assert PsiWeight.table((1.0, 0.5), tail="zero")(3) == 0.0

    def test_phase(self):
        assert PsiWeight.power(1.0, beta=1.0).phase == pytest.approx(math.pi / 2)

    def test_invalid_weights(self):
        with pytest.raises(DomainError):
            PsiWeight("gaussian")
        with pytest.raises(DegenerateInputError):
            PsiWeight.table(())
        with pytest.raises(DomainError):
            PsiWeight.power(1.0, scale=0.0)

    def test_dict_round_trip(self):
        for psi in (PsiWeight.power(2.0, 0.5, 64, 3.0), PsiWeight.log(1.0, 32),
                    PsiWeight.table((1.0, 0.5, 0.25), 0.0, "zero")):
            assert PsiWeight.from_dict(psi.to_dict()) == psi

    def test_ratio_of_power_rules(self):
        r = ratio(PsiWeight.power(3.0, 1.0), PsiWeight.power(1.0, 0.5))

        assert r.rule == "power"
        assert r.r == pytest.approx(2.0)
        assert r.beta == pytest.approx(0.5)

    def test_ratio_falls_back_to_table(self):
        r = ratio(PsiWeight.log(0.0, 8), PsiWeight.power(1.0, 0.0, 8))

        assert r.rule == "table"
        assert r(3) == pytest.approx(3.0 / math.log(4.0))


class TestPsiClass:
    """Membership in F₁."""

    def test_power_rule_is_in_class(self):
        report = validate_psi_class(PsiWeight.power(2.0))

        assert report.in_F1
        assert report.verdict == "in-F1"
        assert report.series_tail == pytest.approx(1024.0 ** -2 / 2.0)

    def test_log_rule_series_diverges(self):
        report = validate_psi_class(PsiWeight.log())

        assert not report.in_F1
        assert not report.sum_ok
        assert "series" in report.reason

    def test_finite_support_table_is_excluded(self):
        report = validate_psi_class(PsiWeight.table((1.0, 0.5, 0.25), tail="zero"))

        assert not report.in_F1
        assert "finite support" in report.reason

    def test_table_without_tail_is_undecidable(self):
        report = validate_psi_class(PsiWeight.table((1.0, 0.5, 0.25)))

        assert report.verdict == "undecidable-tail"

    def test_non_convex_table(self):
        report = validate_psi_class(PsiWeight.table((1.0, 0.9, 0.1, 0.05), tail="zero"))

        assert not report.convexity_ok

    def test_short_table(self):
        with pytest.raises(DegenerateInputError):
            validate_psi_class(PsiWeight.table((1.0, 0.5)))


class TestWeilDerivative:
    """Multiplier action on coefficients."""

    def test_classical_derivative_of_cosine(self):
        c = FourierCoefficients.from_trig(TrigPolynomial.cosine(1))
        d = weil_derivative(c, CLASSICAL)

        assert d.a0 == 0.0
        assert d.a[0] == pytest.approx(0.0, abs=1e-12)
        assert d.b[0] == pytest.approx(-2.0 * math.pi)

    def test_classical_derivative_matches_finite_differences(self, random_trig):
        h = 1e-5
        x = np.linspace(0.0, 1.0, 33)
        for _ in range(5):
            p = random_trig(6)
            d = weil_derivative(FourierCoefficients.from_trig(p), CLASSICAL).to_trig()
            fd = (p(x + h) - p(x - h)) / (2.0 * h)
            scale = np.max(np.abs(fd))
            assert np.max(np.abs(d(x) - fd)) <= 1e-4 * scale

    def test_round_trip_is_identity(self, random_trig):
        psi = PsiWeight.power(2.0, beta=0.7)
        for _ in range(10):
            c = FourierCoefficients.from_trig(random_trig(8))
            back = weil_reconstruct(weil_derivative(c, psi), psi, c.a0)

            assert back.a0 == c.a0
            np.testing.assert_allclose(back.a, c.a, atol=1e-12)
            np.testing.assert_allclose(back.b, c.b, atol=1e-12)

    def test_reconstruct_needs_zero_constant(self):
        d = FourierCoefficients(1.0, ((1.0, 0.0),))
        with pytest.raises(PreconditionError):
            weil_reconstruct(d, PsiWeight.power(1.0), 0.0)

    def test_zero_multiplier_at_active_harmonic(self):
        psi = PsiWeight.table((1.0, 0.0, 0.5), tail="zero")
        c = FourierCoefficients.from_trig(TrigPolynomial.cosine(2))

        with pytest.raises(DivisionError) as info:
            weil_derivative(c, psi)
        assert info.value.k == 2

    def test_inactive_harmonic_with_zero_multiplier_is_skipped(self):
        psi = PsiWeight.table((1.0, 0.0, 0.5), tail="zero")
        c = FourierCoefficients.from_trig(TrigPolynomial.cosine(3))

        assert weil_derivative(c, psi).a[2] == pytest.approx(2.0)

    def test_unknown_multiplier_beyond_table(self):
        psi = PsiWeight.table((1.0, 0.5))
        c = FourierCoefficients.from_trig(TrigPolynomial.cosine(3))

        with pytest.raises(TruncationError):
            weil_derivative(c, psi)

    def test_composition_identity(self, rng):
        c = FourierCoefficients.from_trig(TrigPolynomial.from_vector(rng.standard_normal(17)))
        for _ in range(20):
            r1, r2 = rng.uniform(0.5, 2.5, size=2)
            b1, b2 = rng.uniform(-2.0, 2.0, size=2)
            discrepancy = compose_property_check(c, PsiWeight.power(r1, b1), PsiWeight.power(r2, b2))
            assert discrepancy <= 1e-10

    def test_nagy_norm_of_classical_derivative(self):
        c = FourierCoefficients.from_trig(TrigPolynomial.cosine(1))

        assert weil_nagy_norm(c, CLASSICAL) == pytest.approx(2.0 * math.pi, rel=1e-9)


class TestKernel:
    """Series values, tails and the convolution representation."""

    def test_value_at_zero_for_summable_weight(self):
        value = dpsi_kernel(PsiWeight.power(2.0), 0.0)

        assert value.certified
        assert value.value == pytest.approx(math.pi ** 2 / 6.0, abs=1e-7)

    def test_sine_kernel_vanishes_at_zero(self):
        assert dpsi_kernel(PsiWeight.power(2.0, beta=1.0), 0.0).value == 0.0

    def test_non_summable_weight_diverges_at_zero(self):
        value = dpsi_kernel(PsiWeight.log(), 0.0)

        assert value.diverging
        assert math.isinf(value.value)

    def test_value_at_quarter(self):
        value = dpsi_kernel(PsiWeight.power(2.0), 0.25)

        assert value.certified
        assert value.value == pytest.approx(-math.pi ** 2 / 48.0, abs=1e-7)

    def test_uncertified_tail_is_reported(self):
        value = dpsi_kernel(PsiWeight.power(0.5, K=64), 0.3, tol=1e-16, max_terms=128)

        assert not value.certified
        assert value.tail_bound > 1e-16

    def test_abel_tail_matches_direct_sum(self):
        psi = PsiWeight.power(2.0)
        M = 4096
        estimate, bound = abel_tail(psi, 0.3, M)
        k = np.arange(M, 400 * M, dtype=float)
        direct = np.sum(k ** -2.0 * np.exp(2j * np.pi * np.mod(k * 0.3, 1.0)))

        assert abs(estimate - direct) <= bound + 1e-9

    def test_table_kernel_is_finite_sum(self):
        psi = PsiWeight.table((1.0, 0.5), tail="zero")
        value = dpsi_kernel(psi, 0.25)

        assert value.certified
        assert value.value == pytest.approx(math.cos(math.pi / 2) + 0.5 * math.cos(math.pi))

    def test_kernel_polynomial(self):
        poly = psi_kernel_polynomial(PsiWeight.power(1.0, beta=1.0), 3)

        np.testing.assert_allclose(poly.a, 0.0, atol=1e-15)
        np.testing.assert_allclose(poly.b, [-1.0, -0.5, -1.0 / 3.0])

    @pytest.mark.parametrize("beta", [0.0, 1.0])
    def test_convolution_representation(self, random_trig, beta):
        psi = PsiWeight.power(2.0, beta=beta)
        x = np.linspace(0.0, 1.0, 16, endpoint=False)
        for _ in range(3):
            p = random_trig(5)
            c = FourierCoefficients.from_trig(p)
            d = weil_derivative(c, psi)
            np.testing.assert_allclose(convolution_representation(d, psi, c.a0, x), p(x), atol=1e-5)
