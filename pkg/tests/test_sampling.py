"""Tests for seeded streams, Haar unitaries, and simplex sampling."""

import numpy as np
import pytest
from scipy import stats

from sepvol.estimator import frame_fraction
from sepvol.frames import frame_from_unitary
from sepvol.linalg import BipartiteDims
from sepvol.sampling import (
    derive_stream,
    haar_unitary,
    haar_unitary_batch,
    sample_simplex,
    sample_simplex_batch,
)
from sepvol.separability import simplex_to_xyz


class TestDeriveStream:
    def test_reproducible(self):
        a = derive_stream(123, 5).generator.random(1000)
        b = derive_stream(123, 5).generator.random(1000)
        assert np.array_equal(a, b)

    def test_distinct_ids_differ(self):
        a = derive_stream(123, 0).generator.random(100)
        b = derive_stream(123, 1).generator.random(100)
        assert not np.array_equal(a, b)

    def test_no_first_draw_collisions(self):
        draws = [
            int(derive_stream(99, i).generator.integers(0, 2**64, dtype=np.uint64))
            for i in range(1000)
        ]
        assert len(set(draws)) == 1000

    def test_negative_and_large_seeds_accepted(self):
        derive_stream(-1, 0).generator.random()
        derive_stream(2**64 - 1, 2**63).generator.random()


class TestHaarUnitary:
    def test_d1_unit_modulus(self):
        u = haar_unitary(1, derive_stream(0))
        assert u.shape == (1, 1)
        assert abs(abs(u[0, 0]) - 1.0) < 1e-12

    def test_unitarity_residual(self):
        for d in (2, 4, 9):
            u = haar_unitary(d, derive_stream(1, d))
            assert np.abs(u.conj().T @ u - np.eye(d)).max() <= 1e-12

    def test_batch_matches_sequential(self):
        batch = haar_unitary_batch(3, 4, derive_stream(2, 0))
        rng = derive_stream(2, 0)
        singles = np.stack([haar_unitary(3, rng) for _ in range(4)])
        assert np.array_equal(batch, singles)

    def test_first_entry_moment(self):
        # Haar: E|U_00|^2 = 1/d.  10^5 samples at d = 4.
        n = 100_000
        u = haar_unitary_batch(4, n, derive_stream(3, 0))
        x = np.abs(u[:, 0, 0]) ** 2
        se = x.std(ddof=1) / np.sqrt(n)
        assert abs(x.mean() - 0.25) <= 3 * se

    def test_left_invariance_of_fraction_distribution(self):
        # Fractions from frames of U and of V U (fixed independent V) are
        # indistinguishable; a necessary condition for Haar.
        dims = BipartiteDims(2, 2)
        v_fixed = haar_unitary(4, derive_stream(1000, 0))
        n_frames, n_points = 60, 2000

        def fractions(rotate: bool, seed: int) -> np.ndarray:
            out = []
            for i in range(n_frames):
                rng = derive_stream(seed, i)
                u = haar_unitary(4, rng)
                if rotate:
                    u = v_fixed @ u
                out.append(frame_fraction(frame_from_unitary(u, dims), n_points, rng).mean)
            return np.asarray(out)

        plain = fractions(False, 21)
        rotated = fractions(True, 22)
        assert stats.ks_2samp(plain, rotated).pvalue > 0.001

    def test_rejects_bad_dimension(self):
        with pytest.raises(ValueError):
            haar_unitary(0, derive_stream(0))


class TestSampleSimplex:
    def test_d1(self):
        assert np.array_equal(sample_simplex(1, derive_stream(0)), [1.0])

    def test_valid_point(self):
        p = sample_simplex(6, derive_stream(4, 2))
        assert p.min() >= 0
        assert abs(p.sum() - 1.0) <= 1e-12

    def test_component_means(self):
        n = 100_000
        p = sample_simplex_batch(4, n, derive_stream(5, 0))
        se = p.std(axis=0, ddof=1) / np.sqrt(n)
        assert (np.abs(p.mean(axis=0) - 0.25) <= 3 * se).all()

    def test_first_component_beta_marginal(self):
        # Flat Dirichlet on d = 3: each component is Beta(1, 2).
        p = sample_simplex_batch(3, 50_000, derive_stream(6, 0))
        result = stats.kstest(p[:, 0], stats.beta(1, 2).cdf)
        assert result.pvalue > 0.001

    def test_batch_matches_sequential(self):
        batch = sample_simplex_batch(4, 5, derive_stream(7, 0))
        rng = derive_stream(7, 0)
        singles = np.stack([sample_simplex(4, rng) for _ in range(5)])
        assert np.array_equal(batch, singles)

    def test_tetrahedron_coordinates_centered(self):
        # Mapped through the simplex -> Cartesian change of variables the
        # flat measure is uniform on the tetrahedron, so means are 0.
        n = 100_000
        p = sample_simplex_batch(4, n, derive_stream(8, 0))
        m = np.array([[1, 1, -1, -1], [1, -1, 1, -1], [1, -1, -1, 1]], dtype=float)
        xyz = p @ m.T
        assert np.allclose(xyz[0], simplex_to_xyz(p[0]), atol=1e-15)
        se = xyz.std(axis=0, ddof=1) / np.sqrt(n)
        assert (np.abs(xyz.mean(axis=0)) <= 3 * se).all()
