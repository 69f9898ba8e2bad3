"""Monte Carlo estimation of the separable (PPT) volume of bipartite state spaces.

The state space is sampled as a product of Haar-random orthonormal frames
and uniform points of the eigenvalue simplex attached to each frame;
separability is decided by the positive-partial-transpose criterion.
"""

from .estimator import (
    FrameRecord,
    ScanRow,
    VolumeEstimate,
    dimension_scan,
    fit_exponential,
    frame_fraction,
    global_volume,
    radius_ratio,
    sweep_two_param,
)
from .frames import (
    CanonicalTwoQubitParams,
    FeasibilityError,
    Frame,
    UnsupportedDimsError,
    assemble_state,
    assemble_states,
    bell_frame,
    canonical_two_qubit_frame,
    frame_entanglement,
    frame_from_unitary,
    load_frame,
    qubit_qutrit_frame,
    save_frame,
    two_param_frame,
    vector_concurrence,
    vector_entanglement,
)
from .linalg import (
    BipartiteDims,
    hermitian_eigenvalues,
    is_psd,
    partial_transpose,
    reduced_density,
    trace_inner_product,
)
from .sampling import RandomStream, derive_stream, haar_unitary, sample_simplex
from .separability import (
    CartesianPoint,
    RegionMesh,
    octahedron_member,
    ppt_separable,
    region_mesh,
    simplex_to_xyz,
    two_param_separable,
    xyz_to_simplex,
)

__version__ = "0.1.0"

__all__ = [
    "BipartiteDims",
    "CanonicalTwoQubitParams",
    "CartesianPoint",
    "FeasibilityError",
    "Frame",
    "FrameRecord",
    "RandomStream",
    "RegionMesh",
    "ScanRow",
    "UnsupportedDimsError",
    "VolumeEstimate",
    "assemble_state",
    "assemble_states",
    "bell_frame",
    "canonical_two_qubit_frame",
    "derive_stream",
    "dimension_scan",
    "fit_exponential",
    "frame_entanglement",
    "frame_fraction",
    "frame_from_unitary",
    "global_volume",
    "haar_unitary",
    "hermitian_eigenvalues",
    "is_psd",
    "load_frame",
    "octahedron_member",
    "partial_transpose",
    "ppt_separable",
    "qubit_qutrit_frame",
    "radius_ratio",
    "reduced_density",
    "region_mesh",
    "sample_simplex",
    "save_frame",
    "simplex_to_xyz",
    "sweep_two_param",
    "trace_inner_product",
    "two_param_frame",
    "two_param_separable",
    "vector_concurrence",
    "vector_entanglement",
    "xyz_to_simplex",
]
