"""Tests for frame constructors, state assembly, and entanglement measures."""

import numpy as np
import pytest

from sepvol.frames import (
    CanonicalTwoQubitParams,
    FeasibilityError,
    Frame,
    UnsupportedDimsError,
    assemble_state,
    bell_frame,
    canonical_two_qubit_frame,
    frame_concurrence,
    frame_entanglement,
    frame_from_unitary,
    load_frame,
    qubit_qutrit_frame,
    random_canonical_params,
    save_frame,
    two_param_frame,
    vector_concurrence,
    vector_entanglement,
)
from sepvol.linalg import BipartiteDims, reduced_density, trace_inner_product
from sepvol.sampling import derive_stream, haar_unitary, haar_unitary_batch, sample_simplex
from sepvol.separability import ppt_separable

D22 = BipartiteDims(2, 2)


def projectors(frame: Frame) -> np.ndarray:
    v = frame.vectors
    return np.einsum("ki,kj->kij", v, v.conj())


class TestFrameFromUnitary:
    def test_identity_gives_computational_frame(self):
        frame = frame_from_unitary(np.eye(4, dtype=complex), D22)
        assert np.array_equal(frame.vectors, np.eye(4))

    def test_permutation_reorders(self):
        perm = np.eye(4)[:, [2, 0, 3, 1]]
        frame = frame_from_unitary(perm.astype(complex), D22)
        assert np.array_equal(frame.vectors, np.eye(4)[[2, 0, 3, 1]])

    def test_haar_sample_orthonormal(self):
        u = haar_unitary(6, derive_stream(1))
        frame = frame_from_unitary(u, BipartiteDims(2, 3))
        gram = frame.vectors @ frame.vectors.conj().T
        assert np.abs(gram - np.eye(6)).max() <= 1e-10

    def test_rejects_non_unitary(self):
        with pytest.raises(ValueError, match="unitary"):
            frame_from_unitary(np.ones((4, 4), dtype=complex), D22)


class TestTwoParamFrame:
    def test_zero_angles(self):
        frame = two_param_frame(0.0, 0.0)
        expected = np.array(
            [
                [1, 0, 0, 0],
                [0, 0, 0, -1],
                [0, 1, 0, 0],
                [0, 0, -1, 0],
            ],
            dtype=complex,
        )
        assert np.array_equal(frame.vectors, expected)

    def test_bell_frame_at_quarter_pi(self):
        frame = two_param_frame(np.pi / 4, np.pi / 4)
        r = 1 / np.sqrt(2)
        expected = np.array(
            [
                [r, 0, 0, r],
                [r, 0, 0, -r],
                [0, r, r, 0],
                [0, r, -r, 0],
            ]
        )
        assert np.abs(frame.vectors - expected).max() < 1e-15

    def test_pairwise_equal_entanglement(self):
        rng = np.random.default_rng(0)
        for _ in range(10):
            theta, alpha = rng.uniform(0, 2 * np.pi, 2)
            frame = two_param_frame(theta, alpha)
            ents = [vector_entanglement(v, D22) for v in frame.vectors]
            assert ents[0] == pytest.approx(ents[1], abs=1e-12)
            assert ents[2] == pytest.approx(ents[3], abs=1e-12)


class TestCanonicalFrame:
    def test_random_feasible_params_give_orthonormal_frames(self):
        rng = derive_stream(42)
        for _ in range(50):
            params = random_canonical_params(rng)
            frame = canonical_two_qubit_frame(params)
            gram = frame.vectors @ frame.vectors.conj().T
            assert np.abs(gram - np.eye(4)).max() <= 1e-10

    def test_first_two_coefficient_matrices_orthogonal(self):
        rng = derive_stream(43)
        for _ in range(20):
            frame = canonical_two_qubit_frame(random_canonical_params(rng))
            c = frame.coefficient_matrices
            assert abs(trace_inner_product(c[0], c[1])) <= 1e-12

    def test_alpha_one_forces_beta_zero(self):
        params = CanonicalTwoQubitParams(
            theta1=0.3, alpha=1.0, theta2=0.0, theta3=0.8, phi=0.0, phi3=0.0
        )
        frame = canonical_two_qubit_frame(params)
        c3 = frame.coefficient_matrices[2]
        # beta multiplies the diagonal of the third coefficient matrix
        assert abs(c3[0, 0]) == 0.0
        assert abs(c3[1, 1]) == 0.0

    def test_alpha_one_reduces_to_two_param_family(self):
        # With theta2 = 0 and phi = phi3 = 0 the canonical frame at
        # alpha = 1 is the two-parameter frame at (theta1, -theta3), up
        # to per-vector phases.
        for theta1, theta3 in ((0.2, 0.5), (0.7, 1.1), (np.pi / 4, np.pi / 4)):
            params = CanonicalTwoQubitParams(
                theta1=theta1, alpha=1.0, theta2=0.0, theta3=theta3, phi=0.0, phi3=0.0
            )
            got = projectors(canonical_two_qubit_frame(params))
            want = projectors(two_param_frame(theta1, -theta3))
            assert np.abs(got - want).max() < 1e-10

    def test_arcsin_infeasibility(self):
        params = CanonicalTwoQubitParams(
            theta1=0.5, alpha=0.7, theta2=1.4, theta3=0.1, phi=np.pi / 2, phi3=0.0
        )
        with pytest.raises(FeasibilityError, match="arcsin-argument"):
            canonical_two_qubit_frame(params)

    def test_cross_term_infeasibility(self):
        params = CanonicalTwoQubitParams(
            theta1=0.5, alpha=0.7, theta2=0.9, theta3=0.2, phi=0.0, phi3=0.0
        )
        with pytest.raises(FeasibilityError, match="cross-term-sign"):
            canonical_two_qubit_frame(params)


class TestQubitQutritFrame:
    def test_zero_angles_product_frame(self):
        frame = qubit_qutrit_frame(0.0, 0.0, 0.0)
        for v in frame.vectors:
            assert vector_entanglement(v, frame.dims) < 1e-12
        # every frame state is a product projector, so any mixture is separable
        p = sample_simplex(6, derive_stream(3))
        assert ppt_separable(assemble_state(frame, p), frame.dims)

    def test_quarter_pi_maximally_entangled(self):
        frame = qubit_qutrit_frame(np.pi / 4, np.pi / 4, np.pi / 4)
        for v in frame.vectors:
            assert vector_entanglement(v, frame.dims) == pytest.approx(1.0, abs=1e-12)

    def test_orthonormal_at_any_angles(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            theta, alpha, beta = rng.uniform(0, 2 * np.pi, 3)
            frame = qubit_qutrit_frame(theta, alpha, beta)
            gram = frame.vectors @ frame.vectors.conj().T
            assert np.abs(gram - np.eye(6)).max() <= 1e-12


class TestBellFrame:
    def test_two_qubit_magic_frame(self):
        frame = bell_frame(D22)
        assert frame_entanglement(frame) == pytest.approx(1.0, abs=1e-12)
        assert np.array_equal(frame.vectors, two_param_frame(np.pi / 4, np.pi / 4).vectors)

    def test_qutrit_pair_clock_shift(self):
        dims = BipartiteDims(3, 3)
        frame = bell_frame(dims)
        for v in frame.vectors:
            rho_a = reduced_density(v, dims, "A")
            assert np.abs(rho_a - np.eye(3) / 3).max() <= 1e-12

    def test_qubit_qutrit_uses_quarter_pi_family(self):
        frame = bell_frame(BipartiteDims(2, 3))
        want = qubit_qutrit_frame(np.pi / 4, np.pi / 4, np.pi / 4)
        assert np.array_equal(frame.vectors, want.vectors)

    def test_unsupported_dims(self):
        with pytest.raises(UnsupportedDimsError):
            bell_frame(BipartiteDims(2, 4))


class TestAssembleState:
    def test_pure_projector(self):
        frame = two_param_frame(0.4, 0.9)
        rho = assemble_state(frame, np.array([1.0, 0.0, 0.0, 0.0]))
        v = frame.vectors[0]
        assert np.abs(rho - np.outer(v, v.conj())).max() < 1e-15

    def test_uniform_is_maximally_mixed(self):
        frame = two_param_frame(1.1, 0.3)
        rho = assemble_state(frame, np.full(4, 0.25))
        assert np.abs(rho - np.eye(4) / 4).max() < 1e-15
        assert ppt_separable(rho, D22)

    def test_matches_explicit_two_param_matrix(self):
        # Closed-form density matrix of the two-parameter family in the
        # computational basis |00>, |01>, |10>, |11>.
        theta, alpha = 0.37, 1.02
        p1, p2, p3, p4 = p = np.array([0.4, 0.3, 0.2, 0.1])
        st, ct = np.sin(theta), np.cos(theta)
        sa, ca = np.sin(alpha), np.cos(alpha)
        expected = np.array(
            [
                [p1 * ct**2 + p2 * st**2, 0, 0, (p1 - p2) * st * ct],
                [0, p3 * ca**2 + p4 * sa**2, (p3 - p4) * sa * ca, 0],
                [0, (p3 - p4) * sa * ca, p3 * sa**2 + p4 * ca**2, 0],
                [(p1 - p2) * st * ct, 0, 0, p1 * st**2 + p2 * ct**2],
            ]
        )
        rho = assemble_state(two_param_frame(theta, alpha), p)
        assert np.abs(rho - expected).max() <= 1e-12

    def test_spectrum_equals_probabilities(self):
        rng = derive_stream(9)
        for maker in (
            lambda: two_param_frame(0.3, 0.8),
            lambda: bell_frame(BipartiteDims(3, 3)),
            lambda: frame_from_unitary(haar_unitary(6, rng), BipartiteDims(2, 3)),
        ):
            frame = maker()
            p = sample_simplex(frame.dims.d, rng)
            w = np.linalg.eigvalsh(assemble_state(frame, p))
            assert np.abs(w - np.sort(p)).max() <= 1e-10

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="probabilities"):
            assemble_state(two_param_frame(0, 0), np.array([0.5, 0.5]))


class TestEntanglementMeasures:
    def test_product_state_zero(self):
        psi = np.zeros(4, dtype=complex)
        psi[0] = 1.0
        assert vector_entanglement(psi, D22) == 0.0

    def test_bell_state_one(self):
        psi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        assert vector_entanglement(psi, D22) == pytest.approx(1.0, abs=1e-12)

    def test_binary_entropy_closed_form(self):
        theta = np.pi / 8
        psi = np.zeros(4, dtype=complex)
        psi[0], psi[3] = np.cos(theta), np.sin(theta)
        c2, s2 = np.cos(theta) ** 2, np.sin(theta) ** 2
        expected = -(c2 * np.log2(c2) + s2 * np.log2(s2))
        assert vector_entanglement(psi, D22) == pytest.approx(expected, abs=1e-12)
        # cross-check against the reduced-state spectrum route
        lam = np.linalg.eigvalsh(reduced_density(psi, D22, "A"))
        direct = -(lam * np.log2(lam)).sum()
        assert vector_entanglement(psi, D22) == pytest.approx(direct, abs=1e-12)

    def test_frame_entanglement_examples(self):
        assert frame_entanglement(frame_from_unitary(np.eye(4, dtype=complex), D22)) == 0.0
        assert frame_entanglement(bell_frame(D22)) == pytest.approx(1.0, abs=1e-12)
        assert frame_entanglement(two_param_frame(np.pi / 4, 0.0)) == pytest.approx(
            0.5, abs=1e-12
        )

    def test_haar_frames_approach_but_never_exceed_one(self):
        u = haar_unitary_batch(4, 10_000, derive_stream(77))
        ents = np.array(
            [frame_entanglement(frame_from_unitary(m, D22)) for m in u]
        )
        assert ents.max() <= 1.0
        assert ents.max() > 0.95

    def test_concurrence_matches_known_values(self):
        psi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
        assert vector_concurrence(psi) == pytest.approx(1.0, abs=1e-12)
        assert frame_concurrence(bell_frame(D22)) == pytest.approx(1.0, abs=1e-12)
        assert frame_concurrence(frame_from_unitary(np.eye(4, dtype=complex), D22)) == 0.0


class TestFrameSerialization:
    def test_round_trip(self, tmp_path):
        rng = derive_stream(5)
        frame = frame_from_unitary(haar_unitary(6, rng), BipartiteDims(2, 3))
        path = tmp_path / "frame.json"
        save_frame(frame, path)
        loaded = load_frame(path)
        assert loaded.dims == frame.dims
        assert np.array_equal(loaded.vectors, frame.vectors)

    def test_rejects_non_orthonormal_file(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(
            '{"d_a": 2, "d_b": 2, "vectors": ['
            "[1,0,0,0,0,0,0,0],[1,0,0,0,0,0,0,0],"
            "[0,0,1,0,0,0,0,0],[0,0,0,0,1,0,0,0]]}"
        )
        with pytest.raises(ValueError, match="orthonormal"):
            load_frame(path)
