#!/usr/bin/env python3
"""
Unit tests for Remez-type ratios, exponent shifts, weak-L_s norms,
derivative diagnostics and periodization.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.core.exponents import ExponentSequence
from src.core.muntz import MuntzPolynomial
from src.core.norms import sup_norm
from src.muntz_ops.periodize import periodize
from src.muntz_ops.derivative_check import derivative_weak_l1_check, disc_maximum
from src.muntz_ops.remez import remez_eta_estimate, remez_ratio
from src.muntz_ops.shift import ExponentShiftPlan, compose_shift_chain, exponent_shift_operator
from src.muntz_ops.weak import level_set_measure, weak_norm
from src.utils.error_handler import DegenerateInputError, DomainError, PreconditionError, ShapeError

pytestmark = pytest.mark.unit

SCAN = 2 ** 14


class TestRemez:
    """‖h‖ on [0, δ] against ‖h‖ on [δ, 1]."""

    def test_monomial_ratio_is_coefficient_free(self):
        for a in (1.0, -3.0, 0.01):
            assert remez_ratio(MuntzPolynomial.monomial(2.0, a), 0.5) == pytest.approx(0.25, abs=1e-12)

    def test_two_term_ratio(self):
        h = MuntzPolynomial.from_terms([(2.0, 1.0), (4.0, -1.0)])

        assert remez_ratio(h, 0.5) == pytest.approx(0.75, abs=1e-8)

    def test_degenerate_denominator(self):
        with pytest.raises(DegenerateInputError):
            remez_ratio(MuntzPolynomial.monomial(2.0, 0.0), 0.5)
        with pytest.raises(DomainError):
            remez_ratio(MuntzPolynomial.monomial(2.0), 1.0)

    def test_running_maximum_extends_with_samples(self):
        seq = ExponentSequence.power(2, 6)
        short = remez_eta_estimate(seq, 0.5, 6, seed=11, terms=4)
        long = remez_eta_estimate(seq, 0.5, 12, seed=11, terms=4)

        assert long.running_max[:6] == short.running_max
        assert list(long.running_max) == sorted(long.running_max)
        assert long.eta_lower == long.running_max[-1] >= short.eta_lower
        assert long.best is not None

    def test_preconditions(self):
        with pytest.raises(PreconditionError):
            remez_eta_estimate(ExponentSequence.power(1, 20), 0.5, 4)
        with pytest.raises(DomainError):
            remez_eta_estimate(ExponentSequence.power(2, 6), 0.0, 4)
        with pytest.raises(DomainError):
            remez_eta_estimate(ExponentSequence.power(2, 6), 0.5, 0)


class TestExponentShift:
    """Shift plans, the 4‖p‖Δ/λ bound and chains."""

    def test_single_monomial_shift(self):
        plan = ExponentShiftPlan((2.0,), (2.5,))
        result = exponent_shift_operator(MuntzPolynomial.monomial(2.0), plan)

        assert result.m == 1
        assert result.bound == pytest.approx(1.0)
        assert result.actual == pytest.approx(0.08192, abs=1e-9)
        assert result.bound_ok
        assert result.mode == "assert"
        assert result.p1.exponents.tolist() == [2.5]

    def test_nonnegative_coefficients_are_admissible(self):
        p = MuntzPolynomial.from_terms([(2.0, 1.0), (4.0, 1.0)])
        plan = ExponentShiftPlan.from_shifts((2.0, 4.0), (0.1, 0.05))
        result = exponent_shift_operator(p, plan)

        assert result.admissible
        assert result.bound == pytest.approx(4.0 * 2.0 * 0.1 / 2.0)
        assert result.actual <= result.bound

    def test_identity_plan(self):
        p = MuntzPolynomial.monomial(3.0)
        result = exponent_shift_operator(p, ExponentShiftPlan((3.0,), (3.0,)))

        assert result.m is None
        assert result.bound == 0.0 and result.actual == 0.0

    def test_lambda_from_reference(self):
        plan = ExponentShiftPlan((4.0,), (4.5,))
        result = exponent_shift_operator(MuntzPolynomial.monomial(4.0), plan,
                                         reference=ExponentSequence.explicit([2.0]))

        assert result.lambda_m == 2.0
        assert result.bound == pytest.approx(1.0)

    def test_invalid_plans(self):
        with pytest.raises(DomainError):
            ExponentShiftPlan((2.0, 3.0), (1.5, 3.0))
        with pytest.raises(DomainError):
            ExponentShiftPlan.from_shifts((2.0, 3.0), (0.1, 0.2))
        with pytest.raises(ShapeError):
            ExponentShiftPlan((2.0,), (2.0, 3.0))
        with pytest.raises(ShapeError):
            exponent_shift_operator(MuntzPolynomial.monomial(3.0), ExponentShiftPlan((2.0,), (2.5,)))

    def test_chain_is_additive(self):
        plans = [ExponentShiftPlan((2.0,), (2.25,)), ExponentShiftPlan((2.25,), (2.5,))]
        chain = compose_shift_chain(MuntzPolynomial.monomial(2.0), plans)

        assert chain.cumulative_bound == pytest.approx(0.5 + 1.0 / 2.25)
        assert chain.cumulative_actual == pytest.approx(0.08192, abs=1e-9)
        assert chain.additive_ok
        assert chain.single_jump_bound == pytest.approx(1.0)
        assert chain.delta_cap == pytest.approx(0.25)
        assert not chain.hypothesis_ok

    def test_single_plan_chain_matches_operator(self):
        p = MuntzPolynomial.from_terms([(1.0, 2.0), (3.0, -1.0)])
        plan = ExponentShiftPlan.from_shifts((1.0, 3.0), (0.2, 0.1))
        chain = compose_shift_chain(p, [plan])
        step = exponent_shift_operator(p, plan)

        assert chain.cumulative_bound == pytest.approx(step.bound)
        assert chain.cumulative_actual == pytest.approx(step.actual, abs=1e-9)

    @pytest.mark.slow
    def test_seeded_admissible_sweep(self, rng):
        admissible = 0
        for case in range(200):
            k = int(rng.integers(1, 6))
            exponents = 0.5 + np.cumsum(rng.uniform(1.0, 4.0, size=k))
            if case % 2 == 0:
                coefficients = rng.uniform(0.1, 2.0, size=k)
            else:
                coefficients = rng.uniform(-1.0, 1.0, size=k)
            p = MuntzPolynomial.from_coefficients(exponents, coefficients)
            m = int(rng.integers(0, k))
            shifts = np.zeros(k)
            shifts[m:] = np.sort(rng.uniform(0.01, 0.45, size=k - m))[::-1]
            plan = ExponentShiftPlan.from_shifts(exponents, shifts)
            result = exponent_shift_operator(p, plan)

            assert result.m == m + 1
            if result.admissible:
                admissible += 1
                assert result.bound_ok, f"case {case}: {result.actual} > {result.bound}"
            if case % 2 == 0:
                second = ExponentShiftPlan.from_shifts(plan.target, shifts)
                chain = compose_shift_chain(p, [plan, second])
                assert chain.additive_ok
                assert all(step.bound_ok for step in chain.steps)

        assert admissible >= 100

    def test_chain_errors(self):
        with pytest.raises(DegenerateInputError):
            compose_shift_chain(MuntzPolynomial.monomial(2.0), [])
        with pytest.raises(ShapeError):
            compose_shift_chain(MuntzPolynomial.monomial(2.0),
                                [ExponentShiftPlan((2.0,), (2.25,)), ExponentShiftPlan((2.5,), (3.0,))])


class TestWeakNorm:
    """Weak-L_s quasi-norms from level-set measures."""

    def test_level_set_of_linear_function(self):
        assert level_set_measure(lambda t: 2.0 * t, 1.0, scan_points=SCAN) == pytest.approx(0.5, abs=1e-9)

    def test_linear_function(self):
        result = weak_norm(lambda t: 2.0 * t, 1.0, scan_points=SCAN)

        assert result.value == pytest.approx(0.5, abs=1e-3)
        assert result.level == pytest.approx(1.0, abs=0.05)
        assert result.stable

    def test_constant_function(self):
        result = weak_norm(lambda t: np.full_like(t, -3.0), 1.0, 0.0, 2.0, scan_points=SCAN)

        assert result.value == pytest.approx(6.0, rel=1e-6)

    def test_singular_function_near_endpoint(self):
        result = weak_norm(lambda t: 1.0 / (2.0 * np.pi * (1.0 - t)), 1.0, 0.75, 1.0, scan_points=SCAN)

        assert result.excluded_points == 1
        assert result.stable
        assert result.value == pytest.approx(1.0 / (2.0 * math.pi), rel=1e-4)

    @pytest.mark.slow
    def test_homogeneity_and_domination(self, rng):
        for _ in range(50):
            c = rng.uniform(-3.0, 3.0, size=3)
            f = lambda t, c=c: c[0] + c[1] * np.sin(2 * np.pi * t) + c[2] * np.abs(t - 0.4)  # noqa: E731
            base = weak_norm(f, 1.0, scan_points=SCAN).value
            scaled = weak_norm(lambda t, f=f: -2.5 * f(t), 1.0, scan_points=SCAN).value
            strong = float(np.mean(np.abs(f(np.linspace(0.0, 1.0, 200001)))))

            assert scaled == pytest.approx(2.5 * base, rel=1e-4)
            assert base <= strong + 1e-3

    def test_zero_function(self):
        assert weak_norm(lambda t: np.zeros_like(t), 2.0, scan_points=SCAN).value == 0.0

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            weak_norm(lambda t: t, 0.0)
        with pytest.raises(DomainError):
            weak_norm(lambda t: t, 1.0, 1.0, 0.5)


class TestDerivativeCheck:
    """Weak-L₁ norm of p′ and the Cauchy-type estimate."""

    def test_square(self):
        report = derivative_weak_l1_check(MuntzPolynomial.monomial(2.0), scan_points=SCAN)

        assert report.weak_norm_value == pytest.approx(0.5, abs=1e-3)
        assert report.disc_checked
        assert report.cauchy_G == pytest.approx(1.0, abs=1e-9)
        assert report.pointwise_bound_ok is False
        assert report.worst_ratio == pytest.approx(3.0 * math.pi / 4.0, abs=1e-2)
        assert report.notes

    def test_linear_polynomial(self):
        report = derivative_weak_l1_check(MuntzPolynomial.monomial(1.0), scan_points=SCAN)

        assert report.weak_norm_value == pytest.approx(1.0, rel=1e-6)

    def test_non_integer_exponents_skip_disc(self):
        report = derivative_weak_l1_check(MuntzPolynomial.monomial(2.5), scan_points=SCAN)

        assert not report.disc_checked
        assert report.cauchy_G is None
        assert report.weak_norm_value > 0.0
        assert "non-integer" in report.notes[0]

    def test_disc_maximum_of_binomial(self):
        # u(1 − u) = (1 − e^{2iθ}) / 4 on the boundary circle
        G, theta = disc_maximum(MuntzPolynomial.from_terms([(1.0, 1.0), (2.0, -1.0)]))

        assert G == pytest.approx(0.5, abs=1e-9)
        assert math.cos(2.0 * theta) == pytest.approx(-1.0, abs=1e-6)

    def test_zero_polynomial(self):
        p = MuntzPolynomial.monomial(2.0)
        with pytest.raises(DegenerateInputError):
            derivative_weak_l1_check(p - p)


class TestPeriodize:
    """Continuity and periodicity of v."""

    def test_endpoint_values_match(self):
        v = periodize(MuntzPolynomial.from_terms([(1.0, 2.0), (2.5, -1.0)]))

        assert v.slope == pytest.approx(-1.0)
        assert v(0.0) == 0.0
        assert v(1.0 - 1e-13) == pytest.approx(v(0.0), abs=1e-11)

    def test_periodicity(self):
        v = periodize(MuntzPolynomial.from_terms([(2.0, 1.0), (4.0, 3.0)]))
        t = np.linspace(0.0, 1.0, 17, endpoint=False)

        np.testing.assert_allclose(v(t + 1.0), v(t), atol=1e-12)
        np.testing.assert_allclose(v(t - 2.0), v(t), atol=1e-12)

    def test_norm_is_finite(self):
        v = periodize(MuntzPolynomial.monomial(3.0))

        # v(t) = t³ − t peaks at t = 1/√3
        assert sup_norm(v)[0] == pytest.approx(2.0 / (3.0 * math.sqrt(3.0)), abs=1e-9)
