#!/usr/bin/env python3
"""
Unit tests for the difference system, trigonometric candidates, Gaussian
exclusion, inclinations and finite-section diagnostics.
"""

import math
import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.approx.minimax import solve_discrete_minimax
from src.basis.candidates import build_candidates, candidates_from_sequence
from src.basis.difference import (
    difference_coefficients,
    difference_system,
    expand_difference,
    relation_residual
)
from src.basis.elimination import StepSystem, frequency_of_column, gaussian_exclusion, span_residual
from src.basis.inclination import anchored_lower_bound, inclination
from src.basis.validation import ladder_errors, validate_basis_section
from src.core.exponents import ExponentSequence
from src.fourier.summation import SummationMatrix
from src.fourier.trig import TrigPolynomial
from src.utils.error_handler import DegenerateInputError, DomainError, MatrixError, RankError, ShapeError

pytestmark = pytest.mark.unit


class TestDifferenceSystem:
    """u₁ = t^{λ₁}, u_{n+1} = t^{λ_{n+1}} − t^{λ_n}."""

    def test_partial_sums_telescope(self):
        seq = ExponentSequence.power(2, 5)
        system = difference_system(seq, 5)
        total = expand_difference(np.ones(5), system)
        t = np.linspace(0.0, 1.0, 9)

        np.testing.assert_allclose(total(t), t ** 25, atol=1e-15)

    def test_suffix_coefficients(self):
        seq = ExponentSequence.explicit([1.0, 2.0])
        c = [1.0, -2.0]

        assert difference_coefficients(c).tolist() == [-1.0, -2.0]
        assert relation_residual(c, seq) == 0.0

    def test_prefix_reading_does_not_reproduce(self):
        seq = ExponentSequence.explicit([1.0, 2.0])

        assert difference_coefficients([1.0, -2.0], "prefix").tolist() == [1.0, -1.0]
        assert relation_residual([1.0, -2.0], seq, "prefix") == pytest.approx(1.0)

    def test_errors(self):
        seq = ExponentSequence.power(2, 3)
        with pytest.raises(DomainError):
            difference_system(seq, 0)
        with pytest.raises(DomainError):
            difference_system(seq, 4)
        with pytest.raises(DomainError):
            difference_coefficients([1.0], "middle")
        with pytest.raises(ShapeError):
            expand_difference([1.0], difference_system(seq, 2))


class TestCandidates:
    """Summation means U_m(f, ·, Q) with dependent and zero candidates dropped."""

    def test_drops_zero_and_dependent_candidates(self):
        fs = [TrigPolynomial.cosine(1), TrigPolynomial.sine(2)]
        result = build_candidates(fs, SummationMatrix.fejer(), [1, 2])

        assert result.sources == ((0, 1), (1, 2))
        assert result.dropped == ((0, 2), (1, 1))
        assert result.candidates[0].a.tolist() == pytest.approx([0.5])
        assert result.candidates[1].b.tolist() == pytest.approx([0.0, 1.0 / 3.0])

    def test_degree_list_must_be_valid(self):
        with pytest.raises(DomainError):
            build_candidates([TrigPolynomial.cosine(1)], SummationMatrix.fejer(), [])
        with pytest.raises(DomainError):
            build_candidates([TrigPolynomial.cosine(1)], SummationMatrix.fejer(), [-1])


class TestGaussianExclusion:
    """Step systems from candidate coefficient matrices."""

    def test_elimination_separates_harmonics(self):
        candidates = [TrigPolynomial.cosine(1), TrigPolynomial.cosine(1) + TrigPolynomial.sine(2)]
        system = gaussian_exclusion(candidates)

        assert len(system) == 2
        assert system.lead_columns == (2, 5)
        assert system.lead == (1, 2)
        assert system.high == (1, 2)
        assert system.rejected == ()
        np.testing.assert_allclose(system.rows[1].coefficient_vector(2), [0, 0, 0, 0, 1], atol=1e-12)
        assert all(system.check_invariants().values())
        assert span_residual(system, candidates) < 1e-12

    def test_dependent_candidates_are_rejected(self):
        system = gaussian_exclusion([TrigPolynomial.cosine(1), TrigPolynomial.cosine(1, 2.0)])

        assert len(system) == 1
        assert system.rejected == (1,)

    def test_invalid_candidates(self):
        with pytest.raises(DegenerateInputError):
            gaussian_exclusion([])
        with pytest.raises(DegenerateInputError):
            gaussian_exclusion([TrigPolynomial.cosine(1), TrigPolynomial(0.0, ((0.0, 0.0),))])

    def test_ladder_frequencies(self):
        assert [frequency_of_column(c) for c in (1, 2, 3, 4, 5)] == [0, 1, 1, 2, 2]

    def test_dict_round_trip_checks_stored_steps(self):
        system = gaussian_exclusion([TrigPolynomial.constant(1.0), TrigPolynomial.sine(1)])
        data = system.to_dict()

        assert StepSystem.from_dict(data).lead_columns == (1, 3)
        data["lead"] = [5, 6]
        with pytest.raises(MatrixError):
            StepSystem.from_dict(data)

    @pytest.mark.slow
    def test_seeded_families_satisfy_invariants(self, rng, random_trig):
        for family in range(30):
            candidates = [random_trig(int(rng.integers(1, 5))) for _ in range(int(rng.integers(2, 7)))]
            if family % 3 == 0:
                degree = max(candidates[0].degree, candidates[1].degree)
                w = rng.standard_normal(2)
                candidates.append(TrigPolynomial.from_vector(w[0] * candidates[0].coefficient_vector(degree)
                                                             + w[1] * candidates[1].coefficient_vector(degree)))
            degree = max(c.degree for c in candidates)
            rank = np.linalg.matrix_rank(np.array([c.coefficient_vector(degree) for c in candidates]))
            system = gaussian_exclusion(candidates)

            assert len(system) == rank
            assert len(system) + len(system.rejected) == len(candidates)
            assert all(system.check_invariants().values())
            assert span_residual(system, candidates) <= 1e-9

    @pytest.mark.slow
    def test_periodized_difference_system(self):
        seq = ExponentSequence.power(2, 3)
        candidates = candidates_from_sequence(seq, 3, SummationMatrix.fejer(), [1, 2, 3])
        system = gaussian_exclusion(candidates.candidates)

        assert len(system) >= 1
        assert all(system.check_invariants().values())
        assert span_residual(system, candidates.candidates) < 1e-6


class TestInclination:
    """Distance of unit vectors of span A to span B."""

    def test_orthogonal_harmonics(self):
        result = inclination([TrigPolynomial.cosine(1)], [TrigPolynomial.cosine(2)])

        assert result.value == pytest.approx(1.0, abs=1e-6)
        assert result.lower_grid_m == 16
        assert result.norm_factor == pytest.approx(math.cos(math.pi / 16))
        # the grid distance of cos 2πx to span cos 4πx is 1 at every anchor
        assert result.lower == pytest.approx(math.cos(math.pi / 16), abs=1e-7)
        assert result.certified_gap == pytest.approx(result.value - result.lower)

    def test_intersecting_spans_have_zero_bounds(self):
        result = inclination([TrigPolynomial.cosine(1), TrigPolynomial.sine(1)], [TrigPolynomial.sine(1)])

        assert result.value == pytest.approx(0.0, abs=1e-6)
        assert result.lower == pytest.approx(0.0, abs=1e-7)

    def test_anchored_bound_is_exact_on_the_grid(self):
        x = np.arange(16) / 16
        VA = np.column_stack([np.cos(2 * np.pi * x)])
        VB = np.column_stack([np.cos(4 * np.pi * x)])

        assert anchored_lower_bound(VA, VB) == pytest.approx(1.0, abs=1e-7)
        assert anchored_lower_bound(VA, VA) == pytest.approx(0.0, abs=1e-7)

    @pytest.mark.slow
    def test_lower_bound_holds_over_the_sphere(self, rng, random_trig):
        A = [random_trig(2), random_trig(2)]
        B = [random_trig(3), random_trig(1)]
        result = inclination(A, B, directions=16)
        fine = 4 * result.lower_grid_m
        x = np.arange(fine) / fine
        VA = np.column_stack([p(x) for p in A])
        VB = np.column_stack([p(x) for p in B])

        assert 0.0 <= result.lower <= result.value
        for a in rng.standard_normal((50, 2)):
            f = VA @ a
            norm = float(np.max(np.abs(f)))
            distance = solve_discrete_minimax(f / norm, VB).epsilon
            assert distance >= result.lower - 1e-7

    def test_lower_grid_must_resolve_span(self):
        with pytest.raises(DomainError):
            inclination([TrigPolynomial.cosine(2)], [TrigPolynomial.cosine(1)], lower_grid_m=4)

    def test_empty_tail_span(self):
        assert inclination([TrigPolynomial.cosine(1)], []).value == 1.0

    def test_rank_errors(self):
        with pytest.raises(RankError):
            inclination([], [TrigPolynomial.cosine(1)])
        with pytest.raises(RankError):
            inclination([TrigPolynomial.cosine(1), TrigPolynomial.cosine(1, 2.0)], [TrigPolynomial.sine(1)])

    def test_ladder_errors_reach_zero(self):
        errors = ladder_errors(TrigPolynomial.cosine(1), 3, 64)

        assert errors[0] == pytest.approx(1.0, abs=1e-7)
        assert errors[1] == pytest.approx(0.0, abs=1e-7)


class TestBasisSection:
    """Finite-section diagnostics of a step system."""

    @pytest.fixture
    def ladder(self):
        return StepSystem.from_rows([TrigPolynomial.constant(1.0), TrigPolynomial.cosine(1),
                                     TrigPolynomial.sine(1)])

    @pytest.mark.slow
    def test_ladder_section(self, ladder):
        report = validate_basis_section(ladder, 3, probes=5, directions=8)

        assert report.m_strictly_increasing
        assert report.lead_columns == (1, 2, 3)
        assert report.n_values == (1, 2, 3)
        assert report.s_curve[-1] == pytest.approx(0.0, abs=1e-7)
        assert report.s_nonincreasing
        assert len(report.inclinations) == 2
        assert all(v == pytest.approx(1.0, abs=1e-6) for v in report.inclinations)
        assert report.meets_threshold
        for projection in report.projection_norms:
            assert projection.lower <= projection.upper + 1e-6

    @pytest.mark.slow
    def test_lacunary_section_is_stable_under_grid_doubling(self):
        seq = ExponentSequence.geometric(2, 6)
        candidates = candidates_from_sequence(seq, 6, SummationMatrix.fejer(), [1, 2, 3])
        system = gaussian_exclusion(candidates.candidates)
        assert len(system) >= 6

        coarse = validate_basis_section(system, 6, probes=20, grid_m=256)
        fine = validate_basis_section(system, 6, probes=20, grid_m=512)

        assert coarse.m_strictly_increasing
        assert coarse.s_nonincreasing
        assert coarse.inclination_floor > 0.0
        assert fine.inclination_floor == pytest.approx(coarse.inclination_floor, abs=1e-2)
        for value, lower in zip(coarse.inclinations, coarse.inclination_lower):
            assert 0.0 <= lower <= value

    def test_section_arguments(self, ladder):
        with pytest.raises(DomainError):
            validate_basis_section(ladder, 0)
        with pytest.raises(DomainError):
            validate_basis_section(ladder, 4)
        with pytest.raises(DomainError):
            validate_basis_section(ladder, 2, probes=0)
