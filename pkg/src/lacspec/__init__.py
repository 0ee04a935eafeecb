"""Level anti-crossing spectra of coupled paramagnetic defect centers.

The package computes the magnetic-field dependence of the time-averaged
bright-state population of optically polarized spin-1 centers (NV- centers in
diamond and partners such as P1 centers), from the full multi-spin
Hamiltonian in Hilbert space.
"""

__version__ = "0.1.0"

from .constants import HZ_PER_MHZ, MU_B_MHZ_PER_G, THETA_TETRA, tetrahedral_axes, tilted_axis
from .evolution import (
    BrightProjector,
    DensityMatrix,
    EigenSystem,
    averaged_population,
    bright_projector,
    eigen_decompose,
    eigenbasis_filter,
    initial_density,
    time_domain_oracle,
)
from .hamiltonian import (
    SystemOperators,
    assemble_hamiltonian,
    dipolar_term,
    hfc_term,
    quadrupole_term,
    zeeman_term,
    zfs_term,
)
from .spinops import (
    AxialTensor,
    EmbeddingMap,
    SpinOperators,
    embed_operator,
    euler_rotation_matrix,
    make_spin_operators,
    rotate_axial_tensor,
    rotation_matrix,
)
from .spectrum import (
    Crossing,
    FieldGrid,
    Spectrum,
    SweepError,
    compose,
    derivative,
    find_crossings,
    orientation_average,
    sweep,
)
from .system import Nucleus, SpinCenter, SpinSystem

__all__ = [
    "AxialTensor",
    "BrightProjector",
    "Crossing",
    "DensityMatrix",
    "EigenSystem",
    "EmbeddingMap",
    "FieldGrid",
    "HZ_PER_MHZ",
    "MU_B_MHZ_PER_G",
    "Nucleus",
    "SpinCenter",
    "SpinOperators",
    "SpinSystem",
    "Spectrum",
    "SweepError",
    "SystemOperators",
    "THETA_TETRA",
    "assemble_hamiltonian",
    "averaged_population",
    "bright_projector",
    "compose",
    "derivative",
    "dipolar_term",
    "eigen_decompose",
    "eigenbasis_filter",
    "embed_operator",
    "euler_rotation_matrix",
    "find_crossings",
    "hfc_term",
    "initial_density",
    "make_spin_operators",
    "orientation_average",
    "quadrupole_term",
    "rotate_axial_tensor",
    "rotation_matrix",
    "sweep",
    "tetrahedral_axes",
    "tilted_axis",
    "time_domain_oracle",
    "zeeman_term",
    "zfs_term",
]
