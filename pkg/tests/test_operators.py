"""
Tests for the model constructors: deformed blocks, lattice orbital models,
restriction, rank-one perturbations, band partitions and second moments.
"""

import numpy as np
import pytest

from orbital_rmt.ensembles import BandModelSpec, RngStream, ShapeFunction
from orbital_rmt.exceptions import InvalidArgumentError
from orbital_rmt.operators import (
    DeformedBlockSpec,
    ModelKind,
    OrbitalModelSpec,
    block_partition_band,
    build_deformed_block,
    build_orbital_hamiltonian,
    compress_to_complement,
    gauge_transform,
    limit_coupling,
    rank_one_perturb,
    restrict,
    sample_band_as_deformed_block,
    sample_block_gauge,
    second_moment_exact,
)
from orbital_rmt.constants import TAU_LIMIT_FACTOR
from orbital_rmt.spectra import check_interlacing, eig_hermitian, operator_norm
from orbital_rmt.types import LatticeBox, SymmetryClass


class TestDeformedBlock:
    """Test deformed block-Gaussian matrices."""

    def test_block_diagonal_without_deformation(self, rng, symmetry):
        """Test H0 = 0 gives a block-diagonal Hermitian matrix."""
        spec = DeformedBlockSpec.zero([2, 3, 1], symmetry)
        H = build_deformed_block(spec, rng)
        assert H.block_sizes == [2, 3, 1]
        assert H.matrix.dtype == symmetry.dtype
        assert np.all(H.block(0, 1) == 0)
        assert np.all(H.block(1, 2) == 0)
        np.testing.assert_array_equal(H.matrix, H.matrix.conj().T)

    def test_deformation_added(self, rng):
        """Test the fixed part sits off the blocks unchanged."""
        H0 = np.zeros((3, 3))
        H0[0, 2] = H0[2, 0] = 5.0
        spec = DeformedBlockSpec((1, 2), H0)
        H = build_deformed_block(spec, rng)
        assert H.matrix[0, 2] == 5.0
        assert H.matrix[0, 1] == 0.0

    def test_from_dict_random(self):
        """Test a seeded random deformation is reproducible."""
        data = {"type": "deformed", "block_sizes": [2, 2], "H0": {"kind": "random", "scale": 0.5, "seed": 3}}
        a = DeformedBlockSpec.from_dict(data)
        b = DeformedBlockSpec.from_dict(data)
        np.testing.assert_array_equal(a.deformation, b.deformation)
        assert a.to_dict()["H0"]["kind"] == "random"

    def test_random_deformation_drawn_on_first_use(self, monkeypatch):
        """Test building a random spec samples nothing until H0 is needed."""
        import orbital_rmt.operators.specs as specs

        calls = []
        draw = specs.random_deformation
        monkeypatch.setattr(specs, "random_deformation", lambda *args: calls.append(args) or draw(*args))
        spec = DeformedBlockSpec.from_dict({"block_sizes": [2, 2], "H0": {"kind": "random", "scale": 0.5, "seed": 3}})
        assert calls == [] and spec.H0 is None
        first = spec.deformation
        assert spec.deformation is first
        assert calls == [(4, SymmetryClass.ORTHOGONAL, 0.5, 3)]
        H = build_deformed_block(spec, RngStream(1))
        assert len(calls) == 1
        np.testing.assert_allclose(H.matrix[:2, 2:], first[:2, 2:])

    def test_random_deformation_parameters(self):
        """Test bad scale or seed is caught before anything is drawn."""
        with pytest.raises(InvalidArgumentError):
            DeformedBlockSpec.from_dict({"block_sizes": [2], "H0": {"kind": "random", "seed": -1}})
        with pytest.raises(InvalidArgumentError):
            DeformedBlockSpec.from_dict({"block_sizes": [2], "H0": {"kind": "random", "scale": "big"}})
        with pytest.raises(InvalidArgumentError):
            DeformedBlockSpec((2,), None, source={"kind": "zero"})

    def test_invalid_specs(self):
        """Test dimension mismatches and complex H0 in the real case."""
        with pytest.raises(InvalidArgumentError):
            DeformedBlockSpec((2, 2), np.zeros((3, 3)))
        with pytest.raises(InvalidArgumentError):
            DeformedBlockSpec((), np.zeros((0, 0)))
        with pytest.raises(InvalidArgumentError):
            DeformedBlockSpec((2,), np.array([[0, 1j], [-1j, 0]]), SymmetryClass.ORTHOGONAL)
        with pytest.raises(InvalidArgumentError):
            DeformedBlockSpec.from_dict({"block_sizes": [2], "H0": {"kind": "banded"}})


class TestOrbitalModel:
    """Test the lattice orbital Hamiltonians."""

    def test_zero_coupling_decouples(self, rng, box_2d):
        """Test g = 0 leaves only the site potentials."""
        spec = OrbitalModelSpec(box_2d, N=2, g=0.0)
        H = build_orbital_hamiltonian(spec, rng)
        assert H.dim == 18
        assert np.all(H.block((0, 0), (0, 1)) == 0)

    def test_wegner_hopping_only_on_edges(self, rng, box_1d, symmetry):
        """Test blocks vanish between sites that are not neighbors."""
        spec = OrbitalModelSpec(box_1d, N=3, g=0.7, symmetry=symmetry)
        H = build_orbital_hamiltonian(spec, rng)
        assert np.any(H.block((0,), (1,)) != 0)
        assert np.all(H.block((0,), (2,)) == 0)
        np.testing.assert_array_equal(H.block((1,), (0,)), H.block((0,), (1,)).conj().T)

    def test_block_anderson(self, rng, box_1d):
        """Test block Anderson hopping is -g I with the 2dg diagonal shift."""
        spec = OrbitalModelSpec(box_1d, N=2, g=0.5, kind=ModelKind.BLOCK_ANDERSON)
        H = build_orbital_hamiltonian(spec, rng)
        np.testing.assert_array_equal(H.block((0,), (1,)), -0.5 * np.eye(2))
        zero_coupling = build_orbital_hamiltonian(spec.with_coupling(0.0), rng)
        np.testing.assert_allclose(H.block((0,), (0,)) - zero_coupling.block((0,), (0,)), np.eye(2), atol=1e-14)

    def test_general_hopping(self, rng, box_1d):
        """Test a user sampler scaled by g."""
        spec = OrbitalModelSpec(
            box_1d, N=2, g=2.0, kind=ModelKind.GENERAL,
            hopping=lambda gen, n, sym: np.ones((n, n)),
        )
        H = build_orbital_hamiltonian(spec, rng)
        np.testing.assert_array_equal(H.block((1,), (2,)), 2.0 * np.ones((2, 2)))

    def test_invalid_specs(self, box_1d):
        """Test negative coupling and sampler mismatches."""
        with pytest.raises(InvalidArgumentError):
            OrbitalModelSpec(box_1d, N=2, g=-0.1)
        with pytest.raises(InvalidArgumentError):
            OrbitalModelSpec(box_1d, N=0, g=0.1)
        with pytest.raises(InvalidArgumentError):
            OrbitalModelSpec(box_1d, N=2, g=0.1, kind=ModelKind.GENERAL)
        with pytest.raises(InvalidArgumentError):
            OrbitalModelSpec.from_dict({"d": 1, "L": 1, "N": 2, "g": 0.1, "kind": "general"})

    def test_from_dict(self):
        """Test the config form of an orbital model."""
        spec = OrbitalModelSpec.from_dict({"type": "orbital", "d": 2, "L": 1, "N": 4, "g": 0.3, "kind": "blockAnderson"})
        assert spec.dim == 36
        assert spec.kind is ModelKind.BLOCK_ANDERSON
        assert spec.to_dict()["kind"] == "blockAnderson"


class TestRestrict:
    """Test principal submatrices over blocks."""

    def test_restrict_keeps_order(self, rng, box_1d):
        """Test blocks keep H's order whatever order they are listed in."""
        H = build_orbital_hamiltonian(OrbitalModelSpec(box_1d, N=2, g=0.4), rng)
        sub = restrict(H, [(1,), (-1,)])
        assert sub.sites == ((-1,), (1,))
        np.testing.assert_array_equal(sub.block(0, 0), H.block((-1,), (-1,)))
        np.testing.assert_array_equal(sub.block(0, 1), H.block((-1,), (1,)))

    def test_restrict_all_is_identity(self, rng):
        """Test restricting to every block returns the same matrix."""
        H = build_deformed_block(DeformedBlockSpec.zero([2, 2]), rng)
        np.testing.assert_array_equal(restrict(H, [1, 0]).matrix, H.matrix)

    def test_restrict_of_restrict(self, rng, box_2d):
        """Test restricting twice equals restricting to the intersection."""
        H = build_orbital_hamiltonian(OrbitalModelSpec(box_2d, N=2, g=0.4), rng)
        outer = [(-1, -1), (0, -1), (0, 0), (1, 0), (1, 1)]
        inner = [(1, 1), (0, 0), (-1, 1), (0, -1)]
        twice = restrict(restrict(H, outer), [s for s in inner if s in outer])
        once = restrict(H, [s for s in outer if s in inner])
        assert twice.sites == once.sites == ((0, -1), (0, 0), (1, 1))
        np.testing.assert_array_equal(twice.matrix, once.matrix)
        assert twice.offsets == once.offsets

    def test_restrict_invalid(self, rng, box_1d):
        """Test empty subdomains and unknown sites."""
        H = build_orbital_hamiltonian(OrbitalModelSpec(box_1d, N=1, g=0.4), rng)
        with pytest.raises(InvalidArgumentError):
            restrict(H, [])
        with pytest.raises(InvalidArgumentError):
            restrict(H, [(5,)])


class TestGauge:
    """Test block-diagonal conjugations U H U*."""

    def test_conjugates_each_block(self, rng, box_1d, symmetry):
        """Test block (x, y) becomes U(x) H(x, y) U(y)* and the spectrum is kept."""
        H = build_orbital_hamiltonian(OrbitalModelSpec(box_1d, N=2, g=0.4, symmetry=symmetry), rng)
        gauge = sample_block_gauge(H.block_sizes, symmetry, rng.substream(1))
        G = gauge_transform(H, gauge)
        assert G.sites == H.sites
        assert G.symmetry is H.symmetry
        expected = gauge[1] @ H.block(1, 2) @ gauge[2].conj().T
        np.testing.assert_allclose(G.block(1, 2), expected, atol=1e-12)
        np.testing.assert_allclose(np.linalg.eigvalsh(G.matrix), np.linalg.eigvalsh(H.matrix), atol=1e-10)

    def test_invalid_gauge(self, rng, box_1d):
        """Test block count, unitarity and realness are checked."""
        H = build_orbital_hamiltonian(OrbitalModelSpec(box_1d, N=2, g=0.4), rng)
        identity = [np.eye(2)] * 5
        with pytest.raises(InvalidArgumentError):
            gauge_transform(H, identity[:4])
        with pytest.raises(InvalidArgumentError):
            gauge_transform(H, identity[:4] + [2.0 * np.eye(2)])
        with pytest.raises(InvalidArgumentError):
            gauge_transform(H, identity[:4] + [1j * np.eye(2)])
        np.testing.assert_array_equal(gauge_transform(H, identity).matrix, H.matrix)


class TestRankOnePerturbation:
    """Test rank-one updates and their interlacing."""

    def test_interlacing(self, rng, symmetry):
        """Test eigenvalues of H + τ u u* interlace with those of H."""
        H = build_deformed_block(DeformedBlockSpec.zero([3, 3], symmetry), rng)
        v = np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0)
        before = eig_hermitian(H)
        after = eig_hermitian(rank_one_perturb(H, 1, v, 2.5))
        assert check_interlacing(before, after)
        assert after.eigenvalues.sum() == pytest.approx(before.eigenvalues.sum() + 2.5)

    def test_large_tau_limit(self, rng):
        """Test all but the top eigenvalue approach the compression to u⊥."""
        H = build_deformed_block(DeformedBlockSpec.zero([2, 3]), rng)
        v = np.array([0.6, 0.8])
        tau = limit_coupling(H)
        assert tau == TAU_LIMIT_FACTOR * operator_norm(H)
        perturbed = eig_hermitian(rank_one_perturb(H, 0, v, tau)).eigenvalues
        u = np.zeros(5)
        u[:2] = v
        compressed = eig_hermitian(compress_to_complement(H, u)).eigenvalues
        np.testing.assert_allclose(perturbed[:-1], compressed, atol=1e-6)

    def test_rejects_non_unit_vector(self, rng):
        """Test v must be a unit vector of the block's length."""
        H = build_deformed_block(DeformedBlockSpec.zero([2, 2]), rng)
        with pytest.raises(InvalidArgumentError):
            rank_one_perturb(H, 0, np.array([1.0, 1.0]), 1.0)
        with pytest.raises(InvalidArgumentError):
            rank_one_perturb(H, 0, np.array([1.0, 0.0, 0.0]), 1.0)


class TestBandPartition:
    """Test box partitions and the block decomposition of band matrices."""

    def test_interval_lengths(self):
        """Test every side length lies in [W + 1, 2W + 1]."""
        for L, W in [(10, 3), (7, 2), (5, 0), (4, 8)]:
            partition = block_partition_band(L, W)
            lengths = partition.interval_lengths
            assert sum(lengths) == 2 * L + 1
            assert all(W + 1 <= n <= 2 * W + 1 for n in lengths)

    def test_partition_2d(self):
        """Test boxes are Cartesian products of the 1D intervals."""
        partition = block_partition_band(2, 1, d=2)
        assert partition.interval_lengths == [2, 3]
        assert partition.num_boxes == 4
        assert sorted(partition.block_sizes) == [4, 6, 6, 9]
        assert sorted(partition.permutation().tolist()) == list(range(25))

    def test_invalid_width(self):
        """Test W outside [0, 2L]."""
        with pytest.raises(InvalidArgumentError):
            block_partition_band(2, 5)

    def test_decomposition_structure(self, rng, symmetry):
        """Test the decomposed sample is a band matrix and the views agree."""
        spec = BandModelSpec(LatticeBox(1, 5), ShapeFunction.sharp_cutoff(3), symmetry)
        partition = block_partition_band(5, 1)
        sample = sample_band_as_deformed_block(spec, partition, rng)
        M = sample.hamiltonian.matrix
        i, j = np.indices(M.shape)
        assert np.all(M[np.abs(i - j) >= 3] == 0)
        perm = partition.permutation()
        np.testing.assert_array_equal(sample.block_view.matrix, M[np.ix_(perm, perm)])
        assert all(v == pytest.approx(1 / 3) for v in sample.block_variances)

    def test_decomposition_variance(self):
        """Test entries have variance ψ across and within boxes."""
        spec = BandModelSpec(LatticeBox(1, 4), ShapeFunction.sharp_cutoff(3))
        partition = block_partition_band(4, 2)
        stream = RngStream(77)
        samples = np.array([
            sample_band_as_deformed_block(spec, partition, stream.substream(i)).hamiltonian.matrix
            for i in range(3000)
        ])
        second = np.mean(samples ** 2, axis=0)
        # (0,1) lies inside the first box; (2,3) straddles two boxes
        assert second[0, 1] == pytest.approx(1 / 3, abs=0.04)
        assert second[2, 3] == pytest.approx(1 / 3, abs=0.04)
        assert second[0, 0] == pytest.approx(2 / 3, abs=0.08)

    def test_vanishing_shape_rejected(self, rng):
        """Test boxes wider than the band are rejected."""
        spec = BandModelSpec(LatticeBox(1, 5), ShapeFunction.sharp_cutoff(2))
        with pytest.raises(InvalidArgumentError):
            sample_band_as_deformed_block(spec, block_partition_band(5, 3), rng)


class TestSecondMoment:
    """Test closed-form E tr H² against sampling."""

    def _empirical(self, build, spec, samples=600):
        stream = RngStream(31)
        values = [float(np.sum(np.abs(build(spec, stream.substream(i)).matrix) ** 2)) for i in range(samples)]
        return np.mean(values), np.std(values) / np.sqrt(samples)

    def test_deformed(self, symmetry):
        """Test deformed blocks."""
        spec = DeformedBlockSpec((2, 3), np.diag([1.0, 0, 0, 0, -1.0]), symmetry)
        mean, err = self._empirical(build_deformed_block, spec)
        assert abs(mean - second_moment_exact(spec)) < 5 * err + 1e-12

    @pytest.mark.parametrize("kind", [ModelKind.WEGNER_ORBITAL, ModelKind.BLOCK_ANDERSON])
    def test_orbital(self, kind):
        """Test both built-in orbital kinds."""
        spec = OrbitalModelSpec(LatticeBox(1, 1), N=2, g=0.8, kind=kind)
        mean, err = self._empirical(build_orbital_hamiltonian, spec)
        assert abs(mean - second_moment_exact(spec)) < 5 * err + 1e-12

    def test_band_closed_form(self):
        """Test the band formula on a small sharp cutoff."""
        spec = BandModelSpec(LatticeBox(1, 1), ShapeFunction.sharp_cutoff(2))
        # 3 diagonal entries of variance 2ψ(0), 4 off-diagonal ones of ψ(±1)
        assert second_moment_exact(spec) == pytest.approx(3 * 1.0 + 4 * 0.5)

    def test_general_rejected(self, box_1d):
        """Test the general model has no closed form."""
        spec = OrbitalModelSpec(box_1d, N=1, g=1.0, kind=ModelKind.GENERAL, hopping=lambda g, n, s: np.ones((n, n)))
        with pytest.raises(InvalidArgumentError):
            second_moment_exact(spec)
