"""
Tests for the Monte Carlo estimators and experiment drivers.
"""

import math

import numpy as np
import pytest

from orbital_rmt.ensembles import BandModelSpec, RngStream, ShapeFunction
from orbital_rmt.exceptions import InvalidArgumentError
from orbital_rmt.estimators import (
    FractionalMomentConfig,
    MCEstimate,
    check_band_divisibility,
    check_band_width,
    check_lower_bound,
    default_pairs,
    estimate_g_eff,
    fit_exponential_decay,
    fit_power_law,
    polynomial_entry,
    predicted_shift,
    run_band_localisation_experiment,
    run_band_wegner_experiment,
    run_dos_histogram,
    run_gauge_check,
    run_localisation_experiment,
    run_localisation_scan,
    run_minami_experiment,
    run_minami_scaling,
    run_perturbation_shift_check,
    run_representation_experiment,
    run_single_block_tail,
    run_small_ball_check,
    run_walk_check,
    run_wegner_experiment,
    sample_spectra,
    semicircle_bin_average,
    semicircle_density,
)
from orbital_rmt.operators import DeformedBlockSpec, ModelKind, OrbitalModelSpec, build_orbital_hamiltonian
from orbital_rmt.repformula import QuadratureSpec
from orbital_rmt.spectra import count_in_interval, fractional_moment_sample, resolvent_apply
from orbital_rmt.types import Interval, LatticeBox, SymmetryClass


class TestMCEstimate:
    """Test accumulation and merging of Monte Carlo sums."""

    def test_mean_and_stderr(self):
        """Test the sample mean and standard error."""
        estimate = MCEstimate.from_values([1.0, 2.0, 3.0, 4.0])
        assert estimate.mean == pytest.approx(2.5)
        assert estimate.stderr == pytest.approx(math.sqrt((5.0 / 3.0) / 4.0))

    def test_merge_matches_pooled(self):
        """Test merging two halves equals accumulating all values."""
        values = np.linspace(-1.0, 3.0, 11)
        merged = MCEstimate.from_values(values[:4]).merge(MCEstimate.from_values(values[4:]))
        pooled = MCEstimate.from_values(values)
        assert merged.n == pooled.n
        assert merged.mean == pytest.approx(pooled.mean)
        assert merged.stderr == pytest.approx(pooled.stderr)

    def test_single_sample(self):
        """Test one sample has zero standard error."""
        assert MCEstimate.single(3.0).stderr == 0.0

    def test_empty(self):
        """Test an empty estimate has no mean."""
        empty = MCEstimate.from_values([])
        assert empty.n == 0
        assert empty.to_dict()["mean"] is None
        with pytest.raises(InvalidArgumentError):
            empty.mean

    def test_scaled(self):
        """Test scaling multiplies mean and standard error."""
        estimate = MCEstimate.from_values([1.0, 3.0]).scaled(2.0)
        assert estimate.mean == pytest.approx(4.0)
        assert estimate.stderr == pytest.approx(2.0)


class TestFits:
    """Test the exponential and power-law fits."""

    def test_exact_exponential(self):
        """Test an exact exponential is recovered with r² = 1."""
        distances = [0, 1, 2, 3, 4]
        estimates = [MCEstimate.single(2.0 * math.exp(-0.7 * r)) for r in distances]
        fit = fit_exponential_decay(distances, estimates)
        assert fit.slope == pytest.approx(-0.7)
        assert fit.rate == pytest.approx(0.7)
        assert fit.intercept == pytest.approx(math.log(2.0))
        assert fit.r_squared == pytest.approx(1.0)
        assert not fit.degenerate

    def test_weighted_fit(self):
        """Test estimates with spread use the weighted fit."""
        distances = [0, 1, 2, 3]
        estimates = [MCEstimate.from_values([math.exp(-r) * 0.9, math.exp(-r) * 1.1]) for r in distances]
        fit = fit_exponential_decay(distances, estimates)
        assert fit.slope == pytest.approx(-1.0, abs=1e-9)
        assert fit.slope_stderr > 0

    def test_window(self):
        """Test the fit window excludes distances."""
        distances = [0, 1, 2, 3, 4, 5]
        values = [1.0, 0.5, 0.25, 0.125, 1.0, 1.0]
        fit = fit_exponential_decay(distances, [MCEstimate.single(v) for v in values], window=(0, 3))
        assert fit.slope == pytest.approx(-math.log(2.0))
        assert fit.window == (0, 3)

    def test_degenerate(self):
        """Test fewer than three positive means."""
        estimates = [MCEstimate.single(v) for v in (1.0, 0.5, 0.0, 0.0)]
        fit = fit_exponential_decay([0, 1, 2, 3], estimates)
        assert fit.degenerate
        assert fit.to_dict()["slope"] is None

    def test_power_law(self):
        """Test a quadratic law gives slope 2."""
        lengths = [0.1, 0.2, 0.4, 0.8]
        fit = fit_power_law(lengths, [MCEstimate.single(3.0 * x * x) for x in lengths])
        assert fit.slope == pytest.approx(2.0)


class TestCounting:
    """Test the Wegner, Minami and density of states drivers."""

    def test_reproducible(self, rng):
        """Test the same stream gives identical estimates."""
        spec = DeformedBlockSpec.zero([3, 3])
        a = run_wegner_experiment(spec, [-0.5, 0.5], 20, rng, workers=1)
        b = run_wegner_experiment(spec, [-0.5, 0.5], 20, rng, workers=1)
        assert a.estimate == b.estimate

    def test_whole_line_count(self, rng, symmetry):
        """Test the whole line counts every eigenvalue with zero error."""
        spec = DeformedBlockSpec.zero([2, 3], symmetry)
        result = run_wegner_experiment(spec, [-1e6, 1e6], 10, rng, workers=1)
        assert result.estimate.mean == 5.0
        assert result.estimate.stderr == 0.0

    def test_minami_m1_is_wegner(self, rng, box_1d):
        """Test the first factorial moment is the Wegner mean."""
        spec = OrbitalModelSpec(box_1d, N=2, g=0.3)
        wegner = run_wegner_experiment(spec, [-0.3, 0.3], 25, rng, workers=1)
        minami = run_minami_experiment(spec, [-0.3, 0.3], 1, 25, rng, workers=1)
        assert minami.factorial_moment.mean == wegner.estimate.mean

    def test_minami_tail_bound(self, rng):
        """Test the tail probability and factorial moment are consistent."""
        spec = DeformedBlockSpec.zero([4, 4])
        result = run_minami_experiment(spec, [-0.4, 0.4], 2, 200, rng, workers=1)
        assert 0.0 <= result.tail_prob.mean <= 1.0
        # N(N-1) >= 2 exactly when N >= 2, so P{N >= 2} <= E N(N-1)/2
        assert result.tail_prob.mean <= result.factorial_moment.mean / 2.0 + 1e-12

    def test_minami_jensen(self, rng, box_1d):
        """Test (E N)² <= E N² on the realizations behind a Minami estimate."""
        spec = OrbitalModelSpec(box_1d, N=2, g=0.3)
        result = run_minami_experiment(spec, [-0.5, 0.5], 2, 40, rng, workers=1)
        assert result.count.n == 40
        assert result.count_square.mean == pytest.approx(result.factorial_moment.mean + result.count.mean)
        assert result.jensen_gap >= 0.0
        assert result.count.mean ** 2 <= result.count_square.mean
        assert result.to_dict()["jensen_gap"] == result.jensen_gap

    def test_count_additive_over_adjacent_intervals(self, rng, box_1d):
        """Test N(a, c) = N(a, b) + N(b, c) when b is not an eigenvalue."""
        spec = OrbitalModelSpec(box_1d, N=2, g=0.3)
        a, b, c = -0.7, 0.123456789, 0.9
        for values in sample_spectra(spec, 20, rng, workers=1):
            assert not np.any(values == b)
            whole = count_in_interval(values, Interval(a, c))
            assert whole == count_in_interval(values, Interval(a, b)) + count_in_interval(values, Interval(b, c))
        left = run_wegner_experiment(spec, [a, b], 20, rng, workers=1).estimate
        right = run_wegner_experiment(spec, [b, c], 20, rng, workers=1).estimate
        whole = run_wegner_experiment(spec, [a, c], 20, rng, workers=1).estimate
        assert whole.total == left.total + right.total

    def test_minami_scaling(self, rng):
        """Test the log-log fit over nested intervals."""
        spec = DeformedBlockSpec.zero([4, 4, 4])
        scaling = run_minami_scaling(spec, [[-0.2, 0.2], [-0.4, 0.4], [-0.8, 0.8]], 1, 100, rng, workers=1)
        assert len(scaling.results) == 3
        assert scaling.exponent == pytest.approx(1.0, abs=0.3)

    def test_invalid_arguments(self, rng):
        """Test sample counts and Minami orders."""
        spec = DeformedBlockSpec.zero([2])
        with pytest.raises(InvalidArgumentError):
            run_wegner_experiment(spec, [-1, 1], 1, rng, workers=1)
        with pytest.raises(InvalidArgumentError):
            run_minami_experiment(spec, [-1, 1], 0, 10, rng, workers=1)
        with pytest.raises(InvalidArgumentError):
            run_minami_scaling(spec, [[-1, 1]], 1, 10, rng, workers=1)

    def test_dos_semicircle(self, rng):
        """Test a single large GOE block follows the semicircle in the bulk."""
        spec = DeformedBlockSpec.zero([60])
        edges = np.linspace(-3.0, 3.0, 13)
        histogram = run_dos_histogram(spec, edges, 40, rng, workers=1)
        assert histogram.sum_check == pytest.approx(1.0)
        expected = semicircle_bin_average(edges)
        for center, estimate, reference in zip(histogram.centers, histogram.density, expected):
            if abs(center) < 1.5:
                assert estimate.mean == pytest.approx(reference, abs=0.04)

    def test_dos_bad_edges(self, rng):
        """Test non-increasing bin edges."""
        with pytest.raises(InvalidArgumentError):
            run_dos_histogram(DeformedBlockSpec.zero([2]), [0.0, 0.0, 1.0], 5, rng, workers=1)

    def test_semicircle(self):
        """Test the semicircle density and its bin averages."""
        assert semicircle_density(0.0) == pytest.approx(1.0 / math.pi)
        assert semicircle_density(2.5) == 0.0
        assert np.sum(semicircle_bin_average([-3.0, 0.0, 3.0]) * 3.0) == pytest.approx(1.0)

    def test_sample_spectra_workers_agree(self):
        """Test results do not depend on the worker count."""
        spec = DeformedBlockSpec.zero([3, 2])
        serial = sample_spectra(spec, 6, RngStream(4), workers=1)
        parallel = sample_spectra(spec, 6, RngStream(4), workers=2)
        for a, b in zip(serial, parallel):
            np.testing.assert_array_equal(a, b)


class TestBandWegner:
    """Test the band matrix bandwidth scan."""

    def test_divisibility(self):
        """Test W must divide 2L + 1."""
        check_band_divisibility(3, 7)
        with pytest.raises(InvalidArgumentError):
            check_band_divisibility(3, 2)

    def test_width_range(self):
        """Test band-Wegner widths only need 1 <= W <= 2L."""
        check_band_width(3, 2)
        check_band_width(3, 6)
        for W in (0, 7, 2.5):
            with pytest.raises(InvalidArgumentError):
                check_band_width(3, W)

    def test_scan(self, rng):
        """Test one point per bandwidth with its own stream."""
        spec = BandModelSpec(LatticeBox(1, 3), ShapeFunction.sharp_cutoff(1))
        points = run_band_wegner_experiment(spec, [1, 6], [-1e6, 1e6], 5, rng, workers=1)
        assert [p.W for p in points] == [1, 6]
        assert all(p.estimate.mean == 7.0 for p in points)

    def test_width_not_dividing_side(self):
        """Test a W that does not divide 2L+1 runs the scan."""
        spec = BandModelSpec(LatticeBox(d=1, L=3), ShapeFunction.sharp_cutoff(1, 1))
        points = run_band_wegner_experiment(spec, [2], Interval(-0.5, 0.5), 4, RngStream(1), workers=1)
        assert [p.W for p in points] == [2]
        assert points[0].estimate.n == 4
        assert points[0].estimate.mean >= 0.0
        with pytest.raises(InvalidArgumentError):
            run_band_wegner_experiment(spec, [7], Interval(-0.5, 0.5), 4, RngStream(1), workers=1)


class TestLowerBound:
    """Test the complementary Wegner lower bound."""

    def test_bound_satisfied(self, rng):
        """Test a GOE-block model reaches Σ N_j t/(10 s₂)."""
        spec = DeformedBlockSpec.zero([6, 6])
        result = check_lower_bound(spec, None, 50, rng, workers=1)
        assert result.s2 == pytest.approx(math.sqrt(14.0 / 12.0))
        assert result.s2_empirical == pytest.approx(result.s2, rel=0.1)
        assert result.bound_value == pytest.approx(12 * 0.25 / 10.0)
        assert result.satisfied
        assert result.windows[0][0].lower == pytest.approx(-2.0 * result.s2)

    def test_invalid_window(self, rng):
        """Test t must be below s₂."""
        with pytest.raises(InvalidArgumentError):
            check_lower_bound(DeformedBlockSpec.zero([3]), 5.0, 5, rng, workers=1)


class TestLocalisation:
    """Test the fractional-moment drivers."""

    def test_default_pairs(self):
        """Test pairs run along the first axis from the source."""
        pairs = default_pairs(LatticeBox(2, 2), max_distance=2)
        assert pairs[0] == ((-2, 0), (-2, 0))
        assert pairs[-1] == ((0, 0), (-2, 0))
        assert len(default_pairs(LatticeBox(1, 2))) == 5

    def test_config_validation(self):
        """Test the exponent and probe checks."""
        with pytest.raises(InvalidArgumentError):
            FractionalMomentConfig(s=1.2)
        with pytest.raises(InvalidArgumentError):
            FractionalMomentConfig(probe="gaussian")
        with pytest.raises(InvalidArgumentError):
            FractionalMomentConfig(pairs=(((5,), (0,)),)).resolve_pairs(LatticeBox(1, 2))

    def test_zero_coupling(self, rng):
        """Test blocks decouple at g = 0."""
        spec = OrbitalModelSpec(LatticeBox(1, 2), N=2, g=0.0)
        result = run_localisation_experiment(spec, FractionalMomentConfig(), 10, rng, workers=1)
        assert result.distances == (0, 1, 2, 3, 4)
        assert result.estimates[0].mean > 0
        assert all(e.mean < 1e-12 for e in result.estimates[1:])

    def test_decay_at_weak_coupling(self, rng):
        """Test moments decay with distance and the fit slope is negative."""
        spec = OrbitalModelSpec(LatticeBox(1, 3), N=2, g=0.1)
        cfg = FractionalMomentConfig(s=0.5, energy=0.0, probe="sphere")
        result = run_localisation_experiment(spec, cfg, 60, rng, workers=1, g_eff_samples=50)
        assert result.estimates[-1].mean < result.estimates[1].mean
        assert result.fit.slope < 0
        assert result.g_eff is not None and result.g_eff > 0
        assert result.redraw_fraction == 0.0

    def test_fractional_moment_jensen(self, rng, box_1d):
        """Test E||G v||^s <= (E||G v||)^s over the same realizations."""
        spec = OrbitalModelSpec(box_1d, N=2, g=0.3)
        v = np.array([1.0, 0.0])
        norms, moments = [], []
        for k in range(30):
            H = build_orbital_hamiltonian(spec, rng.substream(k))
            column = resolvent_apply(H, 0.1, (-2,), v)
            norms.append(float(np.linalg.norm(column[H.block_slice(H.block_index((2,)))])))
            moments.append(fractional_moment_sample(H, 0.1, (2,), (-2,), v, 0.5))
        assert moments == pytest.approx([x ** 0.5 for x in norms])
        assert np.mean(moments) <= np.mean(norms) ** 0.5

    def test_eigenvalue_at_energy_is_redrawn(self, rng, monkeypatch):
        """Test a realization with an eigenvalue 1e-12 from λ is redrawn and counted."""
        import orbital_rmt.estimators.localisation as localisation

        real_sample = localisation.sample_model
        calls = []

        def sample_with_eigenvalue_at_energy(spec, gen):
            H = real_sample(spec, gen)
            calls.append(1)
            if len(calls) > 1:
                return H
            shift = 0.25 + 1e-12 - float(np.linalg.eigvalsh(H.matrix)[0])
            return H.with_matrix(H.matrix + shift * np.eye(H.dim))

        monkeypatch.setattr(localisation, "sample_model", sample_with_eigenvalue_at_energy)
        spec = OrbitalModelSpec(LatticeBox(1, 1), N=2, g=0.2)
        cfg = FractionalMomentConfig(s=0.5, energy=0.25)
        result = run_localisation_experiment(spec, cfg, 3, rng, workers=1)
        assert result.redraws == 1
        assert len(calls) == 4
        assert all(np.isfinite(e.mean) for e in result.estimates)

    def test_scan(self, rng):
        """Test one result per coupling."""
        spec = OrbitalModelSpec(LatticeBox(1, 1), N=1, g=0.1)
        results = run_localisation_scan(spec, FractionalMomentConfig(), [0.1, 0.3], 5, rng, workers=1)
        assert [r.g for r in results] == [0.1, 0.3]

    def test_g_eff(self, rng):
        """Test g_eff is g for block Anderson and near 2g for Wegner hopping."""
        anderson = OrbitalModelSpec(LatticeBox(1, 1), N=3, g=0.4, kind=ModelKind.BLOCK_ANDERSON)
        g_eff, _ = estimate_g_eff(anderson, 0.5, 5, rng)
        assert g_eff == pytest.approx(0.4)
        wegner = OrbitalModelSpec(LatticeBox(1, 1), N=8, g=0.4)
        g_eff, _ = estimate_g_eff(wegner, 0.5, 200, rng)
        assert 0.4 < g_eff < 1.2

    def test_band_validation(self, rng):
        """Test shape, dimension and divisibility requirements."""
        box = LatticeBox(1, 4)
        with pytest.raises(InvalidArgumentError):
            run_band_localisation_experiment(BandModelSpec(box, ShapeFunction.susy_kernel(2)), 0.0, 0.5, 5, rng)
        with pytest.raises(InvalidArgumentError):
            run_band_localisation_experiment(
                BandModelSpec(LatticeBox(2, 1), ShapeFunction.sharp_cutoff(3, d=2)), 0.0, 0.5, 5, rng
            )
        with pytest.raises(InvalidArgumentError):
            run_band_localisation_experiment(BandModelSpec(box, ShapeFunction.sharp_cutoff(3)), 0.0, 0.5, 5, rng, W_scan=[2])

    @pytest.mark.slow
    def test_band_decay(self, rng):
        """Test entrywise moments decay for a narrow band."""
        spec = BandModelSpec(LatticeBox(1, 10), ShapeFunction.sharp_cutoff(3))
        (result,) = run_band_localisation_experiment(spec, 0.0, 0.5, 100, rng, workers=1)
        assert result.g == 3.0
        assert result.distances == tuple(range(21))
        assert result.estimates[-1].mean < result.estimates[3].mean
        assert result.fit.slope < 0


class TestSingleBlock:
    """Test the single-block tail and small-ball experiments."""

    def test_tail_monotone(self, rng):
        """Test tail probabilities do not increase with t."""
        result = run_single_block_tail(np.zeros((8, 8)), [1.0, 2.0, 4.0, 8.0], 300, rng, workers=1)
        probs = [p.prob for p in result.points]
        assert all(0.0 <= p <= 1.0 for p in probs)
        assert probs == sorted(probs, reverse=True)
        assert result.moment_scale == pytest.approx(8 ** 0.25 / 0.5)
        assert result.moment.mean > 0

    def test_tail_unitary_with_shift(self, rng):
        """Test a shifted identity in the unitary class."""
        result = run_single_block_tail(
            3.0 * np.eye(4), [1.0, 2.0], 100, rng, symmetry=SymmetryClass.UNITARY, workers=1
        )
        # ||(3 + V)⁻¹|| < 2 unless V has an eigenvalue below -2.5
        assert result.points[0].prob < 0.05

    def test_tail_invalid(self, rng):
        """Test thresholds below one and non-Hermitian A."""
        with pytest.raises(InvalidArgumentError):
            run_single_block_tail(np.zeros((3, 3)), [0.5], 10, rng, workers=1)
        with pytest.raises(InvalidArgumentError):
            run_single_block_tail(np.triu(np.ones((3, 3))), [1.0], 10, rng, workers=1)

    def test_small_ball_identity(self, rng):
        """Test ||v|| = 1 never falls in a small ball."""
        points = run_small_ball_check(np.eye(6), [0.1, 0.5], 50, rng)
        assert all(p.prob == 0.0 and p.satisfied for p in points)

    def test_small_ball_rank_one(self, rng, symmetry):
        """Test a rank-one A stays within the 5ε bound."""
        A = np.zeros((10, 10))
        A[0, 0] = 1.0
        points = run_small_ball_check(A, [0.05, 0.2], 2000, rng, symmetry=symmetry)
        assert all(p.satisfied for p in points)
        assert points[1].prob > points[0].prob

    def test_small_ball_zero_matrix(self, rng):
        """Test A = 0 is rejected."""
        with pytest.raises(InvalidArgumentError):
            run_small_ball_check(np.zeros((3, 3)), [0.1], 10, rng)


class TestPerturbationShift:
    """Test the weak-coupling eigenvalue shift check."""

    def test_predicted_shift(self):
        """Test the second-order prediction."""
        assert predicted_shift(1.0, 10, 0.5, 2) == pytest.approx(2 * 0.25 / 20)

    def test_result_structure(self, rng):
        """Test bins, tracking counts and the prediction."""
        result = run_perturbation_shift_check(8, 0.5, 10, rng, probe_bins=4, workers=1)
        assert len(result.bins) == 4
        assert result.tracked > 0
        assert 0.0 <= result.discard_rate < 1.0
        assert result.predicted_coefficient == pytest.approx(0.25 / 16)

    def test_invalid(self, rng):
        """Test parameter validation."""
        with pytest.raises(InvalidArgumentError):
            run_perturbation_shift_check(1, 0.5, 10, rng)
        with pytest.raises(InvalidArgumentError):
            run_perturbation_shift_check(8, 0.5, 10, rng, probe_window=2.5)
        with pytest.raises(InvalidArgumentError):
            run_perturbation_shift_check(8, 0.5, 10, rng, coordination=0)

    @pytest.mark.slow
    def test_coefficient(self, rng):
        """Test the fitted coefficient against coordination * a²/(2N)."""
        result = run_perturbation_shift_check(24, 0.6, 200, rng, coordination=2, workers=1)
        predicted = result.predicted_coefficient
        assert result.coefficient == pytest.approx(predicted, abs=5 * result.coefficient_stderr + 0.3 * predicted)


class TestExactChecks:
    """Test the walk-expansion and representation checks."""

    def test_walk_check(self, rng):
        """Test random instances agree to round-off."""
        results = run_walk_check(6, rng, max_sites=5, max_orbitals=2, workers=1)
        assert len(results) == 6
        assert all(r.relative_error < 1e-8 for r in results)
        assert all(r.sites in (3, 5) for r in results)

    def test_walk_check_invalid(self, rng):
        """Test the instance size limits."""
        with pytest.raises(InvalidArgumentError):
            run_walk_check(2, rng, max_sites=2)

    @pytest.mark.slow
    def test_representation_experiment(self, rng):
        """Test one realization per stream and values near the smoothed counts."""
        spec = DeformedBlockSpec.from_dict({"block_sizes": [1, 2], "H0": {"kind": "random", "scale": 0.5, "seed": 2}})
        quad = QuadratureSpec(eta_schedule=(0.2, 0.1))
        results = run_representation_experiment(spec, Interval(-0.7, 0.6), quad, 2, rng, workers=1)
        assert len(results) == 2
        for result in results:
            assert len(result.values) == 2
            for value, reference in zip(result.values, result.smoothed):
                assert value == pytest.approx(reference, abs=0.05)


class TestGaugeInvariance:
    """Test the law of the Wegner orbital model under block rotations."""

    def test_polynomial_entry(self):
        """Test Re p(H)[i, i] by Horner's rule."""
        H = np.array([[1.0, 2.0], [2.0, 3.0]])
        assert polynomial_entry(H, (1.0, 1.0, 1.0)) == pytest.approx(7.0)
        assert polynomial_entry(H, (0.0, 1.0, 1.0), index=1) == pytest.approx(16.0)
        assert polynomial_entry(H, (2.5,)) == pytest.approx(2.5)

    @pytest.mark.slow
    def test_two_sample_ks(self, symmetry):
        """Test H and U H U* are indistinguishable over 2000 draws at the 1% level."""
        spec = OrbitalModelSpec(LatticeBox(1, 1), N=3, g=0.5, symmetry=symmetry)
        result = run_gauge_check(spec, 2000, RngStream(2024), workers=1)
        assert result.plain.n == result.transformed.n == 2000
        assert result.passed
        assert result.p_value > 0.01
        assert result.plain.mean == pytest.approx(result.transformed.mean, abs=0.2)
        assert result.to_dict()["passed"] is True

    def test_fixed_gauge_and_validation(self, rng):
        """Test an explicit gauge is used and non-Wegner models are rejected."""
        spec = OrbitalModelSpec(LatticeBox(1, 1), N=2, g=0.3)
        identity = tuple(np.eye(2) for _ in range(3))
        result = run_gauge_check(spec, 20, rng, coefficients=(0.0, 1.0), gauge=identity, workers=1)
        assert result.coefficients == (0.0, 1.0)
        assert 0.0 <= result.ks_statistic <= 1.0
        with pytest.raises(InvalidArgumentError):
            run_gauge_check(OrbitalModelSpec(LatticeBox(1, 1), N=2, g=0.3, kind=ModelKind.BLOCK_ANDERSON), 20, rng)
        with pytest.raises(InvalidArgumentError):
            run_gauge_check(spec, 20, rng, coefficients=())
