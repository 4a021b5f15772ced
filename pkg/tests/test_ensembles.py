"""
Tests for random streams, Gaussian ensembles, shape functions and band
matrices.
"""

import math

import numpy as np
import pytest

from orbital_rmt.ensembles import (
    BandModelSpec,
    RngStream,
    ShapeFunction,
    ShapeKind,
    eval_shape,
    sample_band_matrix,
    sample_complex_gaussian_matrix,
    sample_gaussian_ensemble,
    sample_goe,
    sample_gue,
    sample_haar,
    sample_sphere,
    susy_kernel_closed_form_1d,
    susy_kernel_heat_integral,
    susy_kernel_table,
    susy_kernel_value,
)
from orbital_rmt.exceptions import InvalidArgumentError
from orbital_rmt.types import LatticeBox, SymmetryClass


class TestRngStream:
    """Test stream identity and independence."""

    def test_same_identity_same_draws(self):
        """Test equal identities reproduce bit-identical sequences."""
        a = RngStream(7, 1, (2, 3)).generator().standard_normal(5)
        b = RngStream(7, 1, (2, 3)).generator().standard_normal(5)
        np.testing.assert_array_equal(a, b)

    def test_substreams_differ(self):
        """Test sibling substreams give different sequences."""
        parent = RngStream(7)
        a = parent.substream(0).generator().standard_normal(5)
        b = parent.substream(1).generator().standard_normal(5)
        assert not np.array_equal(a, b)

    def test_dict_roundtrip(self):
        """Test serialization keeps the identity."""
        stream = RngStream(99, 2).substream(4)
        assert RngStream.from_dict(stream.to_dict()) == stream

    def test_negative_keys_rejected(self):
        """Test invalid stream indices."""
        with pytest.raises(InvalidArgumentError):
            RngStream(1, -1)
        with pytest.raises(InvalidArgumentError):
            RngStream(1).substream(-2)


class TestGaussianEnsembles:
    """Test GOE/GUE normalization and exact symmetry."""

    def test_goe_symmetric(self, rng):
        """Test GOE samples equal their transpose exactly."""
        M = sample_goe(6, rng)
        assert M.dtype == np.float64
        np.testing.assert_array_equal(M, M.T)

    def test_gue_hermitian(self, rng):
        """Test GUE samples equal their adjoint exactly."""
        M = sample_gue(6, rng)
        np.testing.assert_array_equal(M, M.conj().T)
        assert np.all(M.diagonal().imag == 0)

    def test_trace_square_mean(self, symmetry):
        """Test E tr V^2 = N + 1 (GOE) and N (GUE)."""
        N, samples = 8, 400
        stream = RngStream(2024)
        values = [
            float(np.sum(np.abs(sample_gaussian_ensemble(N, symmetry, stream.substream(i))) ** 2))
            for i in range(samples)
        ]
        expected = N + 1 if symmetry.is_real else N
        # Var(tr V^2) is O(1); 400 samples pin the mean to about 0.1
        assert abs(np.mean(values) - expected) < 0.5

    def test_complex_variance(self, rng):
        """Test complex entries have E|X|^2 equal to the declared variance."""
        X = sample_complex_gaussian_matrix(200, 200, 3.0, rng)
        assert abs(np.mean(np.abs(X) ** 2) - 3.0) < 0.1

    def test_invalid_sizes(self, rng):
        """Test nonpositive sizes and variances are rejected."""
        with pytest.raises(InvalidArgumentError):
            sample_goe(0, rng)
        with pytest.raises(InvalidArgumentError):
            sample_complex_gaussian_matrix(2, 2, -1.0, rng)

    def test_sphere(self, rng, symmetry):
        """Test sphere samples have unit norm."""
        v = sample_sphere(5, symmetry, rng)
        assert abs(np.linalg.norm(v) - 1.0) < 1e-12

    def test_haar(self, rng, symmetry):
        """Test Haar samples are orthogonal or unitary, real in the orthogonal class."""
        for N in (1, 4):
            U = sample_haar(N, symmetry, rng)
            assert U.shape == (N, N)
            np.testing.assert_allclose(U.conj().T @ U, np.eye(N), atol=1e-12)
            assert np.isrealobj(U) == (symmetry is SymmetryClass.ORTHOGONAL)


class TestShapeFunction:
    """Test the three variance profile families."""

    def test_sharp_cutoff(self):
        """Test ψ(r) = 1/W inside the band and zero outside."""
        shape = ShapeFunction.sharp_cutoff(3)
        assert eval_shape(shape, 0) == pytest.approx(1 / 3)
        assert eval_shape(shape, 2) == pytest.approx(1 / 3)
        assert eval_shape(shape, -2) == pytest.approx(1 / 3)
        assert eval_shape(shape, 3) == 0.0

    def test_sharp_cutoff_2d(self):
        """Test the sup-norm cutoff and 1/W^d scale in two dimensions."""
        shape = ShapeFunction.sharp_cutoff(2, d=2)
        assert shape((1, -1)) == pytest.approx(0.25)
        assert shape((2, 0)) == 0.0

    def test_scaled_profile(self):
        """Test a named profile scaled by the bandwidth."""
        shape = ShapeFunction.scaled_profile("gaussian", 4)
        assert shape(0) == pytest.approx(0.25)
        assert shape(4) == pytest.approx(math.exp(-0.5) / 4)

    def test_susy_matches_closed_form(self):
        """Test the FFT table against the 1D closed form."""
        table = susy_kernel_table(2, 1)
        for r in range(0, 6):
            assert table[r] == pytest.approx(susy_kernel_closed_form_1d(2, r), abs=1e-7)
            assert susy_kernel_value(2, 1, r) == susy_kernel_closed_form_1d(2, r)

    def test_susy_positive_at_window_edge(self):
        """Test the kernel stays positive at and beyond the FFT window."""
        M = susy_kernel_table(1, 1).shape[0]
        for r in (M // 2, M // 2 + 1, 3 * M):
            assert susy_kernel_value(1, 1, r) > 0
        M2 = susy_kernel_table(1, 2).shape[0]
        edge = susy_kernel_value(1, 2, (M2 // 2, 0))
        assert edge > 0
        assert susy_kernel_value(1, 2, (M2 // 2, 1)) > 0
        assert susy_kernel_value(1, 2, (M2 // 2 - 1, 0)) > edge
        shape = ShapeFunction.susy_kernel(1, d=2)
        assert np.all(shape.evaluate_many(np.array([[M2 // 2, 0], [M2, M2], [0, 1]])) > 0)

    def test_susy_heat_integral_matches_table(self):
        """Test the heat-kernel integral agrees with the FFT table in two dimensions."""
        table = susy_kernel_table(1, 2)
        for r in [(0, 0), (1, 0), (1, 2), (3, -1)]:
            M = table.shape[0]
            expected = table[r[0] % M, r[1] % M]
            assert susy_kernel_heat_integral(1, r) == pytest.approx(expected, abs=1e-7)

    def test_susy_solves_screened_laplacian(self):
        """Test (-W²Δ + 1)ψ = δ₀ on an interior patch and geometric decay."""
        W = 2
        shape = ShapeFunction.susy_kernel(W, d=2)
        steps = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        for x in [(0, 0), (1, 0), (2, 3), (-4, 1)]:
            laplacian = sum(shape((x[0] + a, x[1] + b)) - shape(x) for a, b in steps)
            residual = shape(x) - W * W * laplacian
            assert residual == pytest.approx(1.0 if x == (0, 0) else 0.0, abs=1e-6)
        line = [shape((k, 0)) for k in range(8)]
        assert all(b < a for a, b in zip(line, line[1:]))
        one_d = ShapeFunction.susy_kernel(W)
        ratios = [one_d(k + 1) / one_d(k) for k in range(12)]
        assert ratios == pytest.approx([ratios[0]] * 12, rel=1e-12)
        assert ratios[0] < 1.0

    def test_susy_w_zero_is_delta(self):
        """Test W = 0 gives the identity kernel."""
        shape = ShapeFunction.susy_kernel(0)
        assert shape(0) == 1.0
        assert shape(1) == 0.0

    def test_variance_matrix(self):
        """Test ψ(x - y) over all site pairs of a box."""
        box = LatticeBox(1, 2)
        variances = ShapeFunction.sharp_cutoff(2).variance_matrix(box)
        assert variances.shape == (5, 5)
        np.testing.assert_allclose(variances, variances.T)
        assert variances[0, 1] == pytest.approx(0.5)
        assert variances[0, 2] == 0.0
        with pytest.raises(InvalidArgumentError):
            ShapeFunction.sharp_cutoff(2, d=2).variance_matrix(box)

    def test_symmetry(self):
        """Test ψ(-r) = ψ(r) for each family."""
        for shape in (
            ShapeFunction.sharp_cutoff(2, d=2),
            ShapeFunction.scaled_profile("box", 3),
            ShapeFunction.susy_kernel(1, d=2),
        ):
            assert shape.is_symmetric(3)

    def test_invalid(self):
        """Test invalid bandwidths and profiles."""
        with pytest.raises(InvalidArgumentError):
            ShapeFunction.sharp_cutoff(0)
        with pytest.raises(InvalidArgumentError):
            ShapeFunction.scaled_profile("lorentzian", 2)
        with pytest.raises(InvalidArgumentError):
            ShapeFunction(ShapeKind.SHARP_CUTOFF, 2, profile="box")

    def test_dict_roundtrip(self):
        """Test serialization of named shapes."""
        shape = ShapeFunction.scaled_profile("box", 3, d=2)
        assert ShapeFunction.from_dict(shape.to_dict()) == shape


class TestBandMatrix:
    """Test Gaussian band matrix sampling."""

    def test_band_structure(self, rng, symmetry):
        """Test entries vanish outside the band and the matrix is Hermitian."""
        spec = BandModelSpec(LatticeBox(1, 4), ShapeFunction.sharp_cutoff(2), symmetry)
        H = sample_band_matrix(spec, rng)
        assert H.dim == 9
        assert H.num_blocks == 9
        M = H.matrix
        np.testing.assert_array_equal(M, M.conj().T)
        for i in range(9):
            for j in range(9):
                if abs(i - j) >= 2:
                    assert M[i, j] == 0

    def test_entry_variance(self):
        """Test E|H(x, y)|^2 = ψ(x - y) off the diagonal."""
        spec = BandModelSpec(LatticeBox(1, 3), ShapeFunction.sharp_cutoff(3))
        stream = RngStream(5)
        samples = np.array([sample_band_matrix(spec, stream.substream(i)).matrix[3, 4] for i in range(2000)])
        assert abs(np.mean(samples ** 2) - 1 / 3) < 0.04

    def test_dimension_mismatch(self):
        """Test a 2D shape on a 1D box is rejected."""
        with pytest.raises(InvalidArgumentError):
            BandModelSpec(LatticeBox(1, 3), ShapeFunction.sharp_cutoff(2, d=2))

    def test_from_dict(self):
        """Test the config form of a band model."""
        spec = BandModelSpec.from_dict(
            {"type": "band", "d": 1, "L": 3, "shape": {"kind": "sharpCutoff", "W": 7}, "symmetry": "unitary"}
        )
        assert spec.shape.W == 7
        assert spec.symmetry is SymmetryClass.UNITARY
        assert spec.to_dict()["shape"]["kind"] == "sharpCutoff"
