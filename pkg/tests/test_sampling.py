"""Tests for sampling, perturbation, and the floating backend."""

from fractions import Fraction

import numpy as np
import pytest

from skewstruct.blocks import BlockList, SkewBlock, assemble_skew
from skewstruct.eigenstructure import analyze, same_orbit
from skewstruct.errors import ParamDomain
from skewstruct.exact import (
    RationalPolynomial,
    SkewMatrixPolynomial,
    normal_rank,
)
from skewstruct.generic import generic_poly_structure
from skewstruct.sampling import (
    SampleSpec,
    analyze_float,
    monte_carlo_genericity,
    perturb_rank_increase,
    rank_fp,
    sample_bounded_rank,
    skew_block_diagonalization,
)

P = RationalPolynomial
x = P.variable()


class TestSampling:
    def test_draw_properties(self):
        spec = SampleSpec(m=5, d=2, r=2, coeff_range=5, seed=1)
        s = sample_bounded_rank(spec)
        assert s.rows == 5 and s.grade == 2
        assert s.is_skew_symmetric()
        assert normal_rank(s) == 4

    def test_pencil_draw(self):
        s = sample_bounded_rank(SampleSpec(m=3, d=1, r=1, seed=9))
        assert normal_rank(s) == 2

    def test_determinism(self):
        spec = SampleSpec(m=4, d=2, r=1, seed=123)
        assert sample_bounded_rank(spec) == sample_bounded_rank(spec)

    def test_congruence_preserves_structure(self):
        # constant nonsingular congruence is unimodular, so the complete
        # eigenstructure is invariant under it
        import random

        from skewstruct.exact import MatrixPolynomial, as_skew, rank_exact
        from skewstruct.eigenstructure import same_orbit

        rng = random.Random(31)
        spec = SampleSpec(m=4, d=2, r=1, seed=5)
        s = sample_bounded_rank(spec)
        base = analyze(s, spec.d)
        for _ in range(3):
            while True:
                q = [[rng.randint(-3, 3) for _ in range(4)] for _ in range(4)]
                if rank_exact(q) == 4:
                    break
            qm = MatrixPolynomial(q, grade=0)
            congruent = as_skew((qm.transpose() @ s @ qm).with_grade(spec.d))
            assert same_orbit(analyze(congruent, spec.d), base)

    def test_invalid_spec(self):
        with pytest.raises(ParamDomain):
            SampleSpec(m=4, d=2, r=2, seed=0)  # 2r > m-1
        with pytest.raises(ParamDomain):
            SampleSpec(m=4, d=2, r=1, coeff_range=0, seed=0)


class TestRankFp:
    def test_examples(self):
        assert rank_fp(np.diag([1.0, 1e-15]), 1e-8) == 1
        q = np.linalg.qr(np.random.default_rng(0).normal(size=(4, 4)))[0]
        assert rank_fp(q, 1e-8) == 4
        assert rank_fp(np.zeros((3, 2)), 1e-8) == 0

    def test_tol_guard(self):
        with pytest.raises(ParamDomain):
            rank_fp(np.eye(2), 0.0)


class TestSkewDiagonalization:
    def test_zero_matrix(self):
        u, values = skew_block_diagonalization(np.zeros((3, 3)))
        assert values == []
        assert np.allclose(u, np.eye(3))

    def test_reconstruction(self):
        rng = np.random.default_rng(7)
        a = rng.normal(size=(6, 6))
        a = a - a.T
        u, values = skew_block_diagonalization(a)
        assert np.allclose(u @ u.T, np.eye(6), atol=1e-10)
        d = np.zeros((6, 6))
        for i, s in enumerate(values):
            d[2 * i, 2 * i + 1] = s
            d[2 * i + 1, 2 * i] = -s
        assert np.allclose(u @ d @ u.T, a, atol=1e-9)
        assert all(s > 0 for s in values)
        assert values == sorted(values, reverse=True)

    def test_odd_size_has_zero_column(self):
        rng = np.random.default_rng(8)
        a = rng.normal(size=(5, 5))
        a = a - a.T
        u, values = skew_block_diagonalization(a)
        assert len(values) == 2  # rank 4, one zero direction


class TestPerturbation:
    def test_zero_base(self):
        q = SkewMatrixPolynomial.zeros(3, 3, grade=1)
        result = perturb_rank_increase(q, r=1, k=2)
        assert result.base_rank == 0 and result.target_rank == 2
        assert normal_rank(result.polynomial) == 2
        # E has two unit entries: distance is exactly (1/2) * sqrt(2)
        assert result.distance.squared == Fraction(1, 2)

    def test_distance_scaling(self):
        q = SkewMatrixPolynomial.zeros(5, 5, grade=2)
        for k in (1, 10, 100):
            result = perturb_rank_increase(q, r=2, k=k)
            assert result.distance.squared == Fraction(4, k * k)
            assert result.distance.value == pytest.approx(2.0 / k)

    def test_rank_increase_from_nonzero(self):
        base = assemble_skew(BlockList.skew([SkewBlock.m(1), SkewBlock.m(0), SkewBlock.m(0)]))
        result = perturb_rank_increase(base, r=2, k=10)
        assert normal_rank(result.polynomial) == 4
        assert result.base_rank == 2

    def test_target_must_exceed_current(self):
        base = assemble_skew(BlockList.skew([SkewBlock.m(1), SkewBlock.m(0), SkewBlock.m(0)]))
        with pytest.raises(ParamDomain):
            perturb_rank_increase(base, r=1, k=2)

    def test_room_required(self):
        q = SkewMatrixPolynomial.zeros(4, 4, grade=1)
        with pytest.raises(ParamDomain):
            perturb_rank_increase(q, r=2, k=2)  # 2r = 4 > m-1


class TestMonteCarlo:
    def test_small_run_matches(self):
        spec = SampleSpec(m=4, d=2, r=1, seed=7)
        report = monte_carlo_genericity(spec, trials=12)
        assert report.trials == 12
        assert report.matches >= 11
        assert same_orbit(report.expected, generic_poly_structure(4, 2, 1))

    def test_determinism(self):
        spec = SampleSpec(m=3, d=2, r=1, seed=42)
        a = monte_carlo_genericity(spec, trials=6)
        b = monte_carlo_genericity(spec, trials=6)
        assert a == b  # elapsed is excluded from comparison

    def test_mismatch_seeds_replayable(self):
        spec = SampleSpec(m=3, d=2, r=1, seed=0)
        report = monte_carlo_genericity(spec, trials=10)
        for seed in report.mismatch_seeds:
            draw = sample_bounded_rank(spec.with_seed(seed))
            assert not same_orbit(analyze(draw, spec.d), report.expected)

    def test_json_fields(self):
        report = monte_carlo_genericity(SampleSpec(m=3, d=2, r=1, seed=1), trials=3)
        data = report.to_json_dict()
        assert set(data) == {"trials", "matches", "mismatch_seeds", "expected", "elapsed"}


class TestAnalyzeFloat:
    def test_well_separated_pencil(self):
        structure = BlockList.skew([SkewBlock.h(1, 2), SkewBlock.h(1, -3), SkewBlock.m(0)])
        pencil = assemble_skew(structure)
        exact = analyze(pencil, 1)
        numeric = analyze_float(pencil, 1)
        assert numeric.rank == exact.rank
        assert numeric.infinite == exact.infinite
        assert numeric.left_minimal == exact.left_minimal
        roots = sorted(root.real for root, _ in numeric.finite)
        assert roots == pytest.approx([-3.0, 2.0])
        assert all(mults == (1, 1) for _, mults in numeric.finite)

    def test_infinite_detection(self):
        pencil = assemble_skew(BlockList.skew([SkewBlock.k(1), SkewBlock.m(1)]))
        numeric = analyze_float(pencil, 1)
        assert numeric.infinite == (0, 0, 1, 1)
        assert numeric.left_minimal == (1,)

    def test_grade_shift(self):
        sample = sample_bounded_rank(SampleSpec(m=3, d=2, r=1, seed=3))
        numeric = analyze_float(sample, 3)
        assert min(numeric.infinite) >= 1

    def test_zero(self):
        numeric = analyze_float(SkewMatrixPolynomial.zeros(2, 2, 1), 1)
        assert numeric.rank == 0 and numeric.left_minimal == (0, 0)

    def test_agrees_with_exact_on_random_draws(self):
        for seed in range(4):
            draw = sample_bounded_rank(SampleSpec(m=5, d=2, r=2, seed=seed))
            exact = analyze(draw, 2)
            numeric = analyze_float(draw, 2)
            assert numeric.rank == exact.rank
            assert numeric.infinite == exact.infinite
            assert numeric.left_minimal == exact.left_minimal
            assert len(numeric.finite) == len(exact.finite)
