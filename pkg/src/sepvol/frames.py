"""Orthonormal-frame constructors, state assembly, and frame entanglement.

A frame is an ordered orthonormal basis {|psi_k>} of the composite space;
each frame carries the simplex of density matrices diagonal in it.  Frame
vectors of a (d_a, d_b) system are handled interchangeably as length-d
vectors or as d_a x d_b coefficient matrices (row index = subsystem A).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import BipartiteDims
from .sampling import RandomStream

ORTHONORMALITY_TOL = 1e-10
UNITARY_TOL = 1e-12

__all__ = [
    "CanonicalTwoQubitParams",
    "FeasibilityError",
    "Frame",
    "UnsupportedDimsError",
    "assemble_state",
    "assemble_states",
    "bell_frame",
    "canonical_two_qubit_frame",
    "frame_entanglement",
    "frame_from_unitary",
    "load_frame",
    "qubit_qutrit_frame",
    "random_canonical_params",
    "save_frame",
    "two_param_frame",
    "vector_concurrence",
    "vector_entanglement",
]


class FeasibilityError(ValueError):
    """Canonical-frame parameters violate a feasibility constraint."""

    def __init__(self, constraint: str, detail: str) -> None:
        self.constraint = constraint
        super().__init__(f"infeasible canonical parameters ({constraint}): {detail}")


class UnsupportedDimsError(ValueError):
    """No frame construction is implemented for the requested dimensions."""


@dataclass(frozen=True)
class Frame:
    """Ordered orthonormal basis of the composite space.

    vectors has shape (d, d); vectors[k] is the k-th basis vector.
    Reshaped to (d_a, d_b) it is that vector's coefficient matrix in the
    product basis.
    """

    dims: BipartiteDims
    vectors: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.vectors, dtype=complex, order="C")  # own the storage
        d = self.dims.d
        if v.shape != (d, d):
            raise ValueError(f"expected {d} vectors of length {d}, got shape {v.shape}")
        gram = v @ v.conj().T
        dev = float(np.abs(gram - np.eye(d)).max())
        if dev > ORTHONORMALITY_TOL:
            raise ValueError(f"frame vectors are not orthonormal: residual {dev:.3e}")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)

    @property
    def coefficient_matrices(self) -> np.ndarray:
        """All coefficient matrices, shape (d, d_a, d_b)."""
        return self.vectors.reshape(self.dims.d, self.dims.d_a, self.dims.d_b)


def frame_from_unitary(u: np.ndarray, dims: BipartiteDims) -> Frame:
    """Frame whose k-th vector is the k-th column of the unitary u."""
    u = np.asarray(u, dtype=complex)
    d = dims.d
    if u.shape != (d, d):
        raise ValueError(f"unitary has shape {u.shape}, expected ({d}, {d})")
    dev = float(np.abs(u.conj().T @ u - np.eye(d)).max())
    if dev > UNITARY_TOL:
        raise ValueError(f"matrix is not unitary: residual {dev:.3e}")
    return Frame(dims, u.T.copy())


def two_param_frame(theta: float, alpha: float) -> Frame:
    """Two-qubit frame mixing |00>,|11> by theta and |01>,|10> by alpha.

    No superposition across the two pairs; theta = alpha = pi/4 is the
    Bell (magic) frame.
    """
    ct, st = np.cos(theta), np.sin(theta)
    ca, sa = np.cos(alpha), np.sin(alpha)
    v = np.zeros((4, 4), dtype=complex)
    v[0] = (ct, 0.0, 0.0, st)
    v[1] = (st, 0.0, 0.0, -ct)
    v[2] = (0.0, ca, sa, 0.0)
    v[3] = (0.0, sa, -ca, 0.0)
    return Frame(BipartiteDims(2, 2), v)


@dataclass(frozen=True)
class CanonicalTwoQubitParams:
    """Free parameters of the canonical two-qubit frame (modulo local unitaries).

    Boxes: theta1 in [0, pi/4], alpha in [0, 1], theta2 and theta3 in
    [0, pi/2], phi and phi3 in [0, 2*pi).  Not every point of the box is
    feasible; see canonical_two_qubit_frame.
    """

    theta1: float
    alpha: float
    theta2: float
    theta3: float
    phi: float
    phi3: float


def _phi3_prime(p: CanonicalTwoQubitParams) -> float:
    """Dependent phase of the third coefficient matrix.

    Fixed by the imaginary part of the orthogonality condition between
    the second and third matrices.
    """
    num = np.tan(p.theta2) * np.sin(p.phi - p.phi3)
    den = np.tan(p.theta3)
    if den == 0.0:
        if num == 0.0:
            return p.phi
        raise FeasibilityError(
            "arcsin-argument", "tan(theta3) = 0 with nonzero tan(theta2)*sin(phi-phi3)"
        )
    arg = num / den
    if abs(arg) > 1.0 + 1e-12:
        raise FeasibilityError(
            "arcsin-argument", f"|tan(theta2)/tan(theta3) * sin(phi-phi3)| = {abs(arg):.6g} > 1"
        )
    return p.phi - np.arcsin(np.clip(arg, -1.0, 1.0))


def _cross_term(p: CanonicalTwoQubitParams, phi3p: float) -> float:
    return float(
        np.sin(p.theta2) * np.cos(p.theta3) * np.cos(p.phi - p.phi3)
        - np.cos(p.theta2) * np.sin(p.theta3) * np.cos(p.phi - phi3p)
    )


def canonical_two_qubit_frame(params: CanonicalTwoQubitParams) -> Frame:
    """Canonical representative of a two-qubit frame orbit point.

    The first two coefficient matrices follow directly from the
    parameters; the third's dependent phase and weight are fixed by
    orthogonality to the second (the cross term must be non-positive for
    the weight to be real with non-negative sign conventions); the fourth
    is the unit matrix spanning the orthogonal complement in matrix
    space, computed numerically.
    """
    p = params
    c1, s1 = np.cos(p.theta1), np.sin(p.theta1)
    phi3p = _phi3_prime(p)
    g = _cross_term(p, phi3p)
    if g > 1e-12:
        raise FeasibilityError("cross-term-sign", f"cross term {g:.6g} must be <= 0")
    denom = p.alpha**2 + (1.0 - p.alpha**2) * g**2
    if denom == 0.0:
        raise FeasibilityError(
            "beta-denominator", "alpha = 0 with vanishing cross term leaves beta undetermined"
        )
    beta = np.sqrt((1.0 - p.alpha**2) * g**2 / denom)

    root_a = np.sqrt(max(0.0, 1.0 - p.alpha**2))
    root_b = np.sqrt(max(0.0, 1.0 - beta**2))
    c_1 = np.array([[c1, 0.0], [0.0, s1]], dtype=complex)
    c_2 = np.array(
        [
            [p.alpha * s1, root_a * np.exp(1j * p.phi) * np.sin(p.theta2)],
            [root_a * np.exp(1j * p.phi) * np.cos(p.theta2), -p.alpha * c1],
        ]
    )
    c_3 = np.array(
        [
            [beta * s1, root_b * np.exp(1j * p.phi3) * np.cos(p.theta3)],
            [-root_b * np.exp(1j * phi3p) * np.sin(p.theta3), -beta * c1],
        ]
    )
    c_4 = _matrix_complement(c_1, c_2, c_3)
    v = np.stack([c.reshape(4) for c in (c_1, c_2, c_3, c_4)])
    return Frame(BipartiteDims(2, 2), v)


def _matrix_complement(*mats: np.ndarray) -> np.ndarray:
    """Unit matrix trace-orthogonal to the given d-1 matrices (unique up to phase)."""
    shape = mats[0].shape
    rows = np.stack([m.reshape(-1).conj() for m in mats])
    _, _, vh = np.linalg.svd(rows)
    return vh[-1].conj().reshape(shape)


def qubit_qutrit_frame(theta: float, alpha: float, beta: float) -> Frame:
    """Three-parameter qubit-qutrit frame of pairwise-coupled basis states.

    Three orthogonal 2-dim blocks mix {|00>,|11>}, {|01>,|12>} and
    {|02>,|10>} by theta, alpha, beta; all angles pi/4 gives the
    Bell-diagonal frame.
    """
    ct, st = np.cos(theta), np.sin(theta)
    ca, sa = np.cos(alpha), np.sin(alpha)
    cb, sb = np.cos(beta), np.sin(beta)
    mats = np.array(
        [
            [[ct, 0, 0], [0, st, 0]],
            [[st, 0, 0], [0, -ct, 0]],
            [[0, ca, 0], [0, 0, sa]],
            [[0, sa, 0], [0, 0, -ca]],
            [[0, 0, cb], [sb, 0, 0]],
            [[0, 0, sb], [-cb, 0, 0]],
        ],
        dtype=complex,
    )
    return Frame(BipartiteDims(2, 3), mats.reshape(6, 6))


def bell_frame(dims: BipartiteDims) -> Frame:
    """A frame of maximally entangled states for the supported dimensions.

    (2,2) and (2,3) use the pi/4 members of the special families; equal
    dimensions n x n use the clock-and-shift generalized Bell basis.
    """
    if (dims.d_a, dims.d_b) == (2, 2):
        return two_param_frame(np.pi / 4, np.pi / 4)
    if (dims.d_a, dims.d_b) == (2, 3):
        return qubit_qutrit_frame(np.pi / 4, np.pi / 4, np.pi / 4)
    if dims.d_a == dims.d_b:
        n = dims.d_a
        omega = np.exp(2j * np.pi / n)
        v = np.zeros((n * n, n * n), dtype=complex)
        for m in range(n):
            for k in range(n):
                for j in range(n):
                    v[m * n + k, j * n + (j + k) % n] = omega ** (j * m) / np.sqrt(n)
        return Frame(dims, v)
    raise UnsupportedDimsError(f"no Bell frame construction for dims {dims}")


def assemble_state(frame: Frame, p: np.ndarray) -> np.ndarray:
    """Density matrix sum_j p_j |psi_j><psi_j| for a simplex point p."""
    p = np.asarray(p, dtype=float)
    if p.shape != (frame.dims.d,):
        raise ValueError(f"expected {frame.dims.d} probabilities, got shape {p.shape}")
    v = frame.vectors
    return (v.T * p) @ v.conj()


def assemble_states(frame: Frame, probs: np.ndarray) -> np.ndarray:
    """assemble_state for a batch of simplex points, shape (n, d) -> (n, d, d)."""
    v = frame.vectors
    return np.einsum("bj,ji,jk->bik", probs, v, v.conj(), optimize=True)


def _schmidt_weights(coeff_mats: np.ndarray) -> np.ndarray:
    """Squared singular values of each coefficient matrix, normalized to sum 1."""
    s = np.linalg.svd(coeff_mats, compute_uv=False)
    lam = s**2
    return lam / lam.sum(axis=-1, keepdims=True)


def _normalized_entropy(lam: np.ndarray, min_dim: int) -> np.ndarray:
    if min_dim < 2:
        return np.zeros(lam.shape[:-1])
    safe = np.where(lam > 0.0, lam, 1.0)  # 0 log 0 -> 0 exactly
    ent = -(lam * np.log(safe)).sum(axis=-1)
    return ent / np.log(min_dim)


def vector_entanglement(psi: np.ndarray, dims: BipartiteDims) -> float:
    """Normalized entanglement entropy of a bipartite pure state.

    Von Neumann entropy of the reduced state divided by log(min(d_a, d_b));
    0 for product states, 1 for maximally entangled ones.
    """
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape[0] != dims.d:
        raise ValueError(f"psi has length {psi.shape[0]}, expected {dims.d}")
    lam = _schmidt_weights(psi.reshape(dims.d_a, dims.d_b))
    return float(_normalized_entropy(lam, min(dims.d_a, dims.d_b)))


def frame_entanglement(frame: Frame) -> float:
    """Arithmetic mean of vector_entanglement over the frame vectors."""
    lam = _schmidt_weights(frame.coefficient_matrices)
    return float(_normalized_entropy(lam, min(frame.dims.d_a, frame.dims.d_b)).mean())


def vector_concurrence(psi: np.ndarray) -> float:
    """Concurrence 2|det C| of a two-qubit pure state (alternative measure)."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape[0] != 4:
        raise ValueError("concurrence is defined here for two-qubit states only")
    return float(2.0 * abs(np.linalg.det(psi.reshape(2, 2))))


def frame_concurrence(frame: Frame) -> float:
    """Mean vector concurrence over a (2,2) frame."""
    if (frame.dims.d_a, frame.dims.d_b) != (2, 2):
        raise ValueError("frame concurrence is defined for (2,2) frames only")
    dets = np.linalg.det(frame.coefficient_matrices)
    return float(np.mean(2.0 * np.abs(dets)))


def random_canonical_params(
    rng: RandomStream, max_tries: int = 1000
) -> CanonicalTwoQubitParams:
    """Rejection-sample feasible canonical parameters uniformly over their boxes.

    This is a coverage measure for property tests, not the Haar-induced
    orbit measure; volume estimates always use Haar frames.
    """
    gen = rng.generator
    for _ in range(max_tries):
        p = CanonicalTwoQubitParams(
            theta1=gen.uniform(0, np.pi / 4),
            alpha=gen.uniform(0, 1),
            theta2=gen.uniform(0, np.pi / 2),
            theta3=gen.uniform(0, np.pi / 2),
            phi=gen.uniform(0, 2 * np.pi),
            phi3=gen.uniform(0, 2 * np.pi),
        )
        try:
            phi3p = _phi3_prime(p)
        except FeasibilityError:
            continue
        if _cross_term(p, phi3p) <= 0.0:
            return p
    raise RuntimeError(f"no feasible canonical parameters found in {max_tries} tries")


def save_frame(frame: Frame, path: str | Path) -> None:
    """Write a frame as JSON with interleaved real/imag components."""
    payload = {
        "d_a": frame.dims.d_a,
        "d_b": frame.dims.d_b,
        "vectors": [
            [x for c in vec for x in (float(c.real), float(c.imag))]
            for vec in frame.vectors
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=1) + "\n", encoding="utf-8")


def load_frame(path: str | Path) -> Frame:
    """Read a frame written by save_frame."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    dims = BipartiteDims(int(payload["d_a"]), int(payload["d_b"]))
    rows = []
    for flat in payload["vectors"]:
        arr = np.asarray(flat, dtype=float).reshape(-1, 2)
        rows.append(arr[:, 0] + 1j * arr[:, 1])
    return Frame(dims, np.stack(rows))
