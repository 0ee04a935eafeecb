"""Lab-frame spin Hamiltonian assembly, in MHz.

The full Hamiltonian is the sum of electron Zeeman, zero-field splitting,
hyperfine, nuclear quadrupole and electron dipole-dipole terms.  Nuclear
Zeeman interaction is neglected (documented limitation at the fields of
interest).  All terms are Hermitian; ZFS, quadrupole and dipolar terms are
traceless.
"""

import numpy as np

from .constants import MU_B_MHZ_PER_G
from .spinops import AxialTensor, embed_operator, make_spin_operators, rotate_axial_tensor
from .system import SpinSystem


def _field_vector(b_gauss) -> np.ndarray:
    b = np.asarray(b_gauss, dtype=float)
    if b.shape != (3,):
        raise ValueError(f"magnetic field must be a 3-vector in Gauss, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValueError(f"magnetic field must be finite, got {b}")
    return b


def _embedded_spin(system: SpinSystem, slot: int, s: float) -> np.ndarray:
    """Stacked (3, dim, dim) embedded spin-vector operator at one slot."""
    ops = make_spin_operators(s)
    emap = system.embedding(slot)
    return np.stack([embed_operator(m, emap) for m in (ops.sx, ops.sy, ops.sz)])


def _bilinear(left: np.ndarray, tensor3: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Contraction left^T . tensor . right of two embedded spin vectors."""
    dim = left.shape[-1]
    out = np.zeros((dim, dim), dtype=complex)
    for a in range(3):
        for b in range(3):
            if tensor3[a, b] != 0.0:
                out += tensor3[a, b] * (left[a] @ right[b])
    return out


def zeeman_term(system: SpinSystem, center_index: int, b_gauss) -> np.ndarray:
    """Electron Zeeman term beta * B^T . G . S for one center, embedded.

    Args:
        system: Spin system providing the embedding.
        center_index: 0 or 1.
        b_gauss: Magnetic field 3-vector in Gauss.

    Returns:
        Hermitian matrix in MHz over the full product space.
    """
    b = _field_vector(b_gauss)
    center = system.centers[center_index]
    g_lab = rotate_axial_tensor(center.g)
    svec = _embedded_spin(system, system.electron_slot(center_index), center.spin)
    coeff = MU_B_MHZ_PER_G * (b @ g_lab)
    return coeff[0] * svec[0] + coeff[1] * svec[1] + coeff[2] * svec[2]


def zfs_term(system: SpinSystem, center_index: int) -> np.ndarray:
    """Zero-field splitting D [Sz'^2 - S(S+1)/3] along the center axis, embedded.

    Built as S^T . D_lab . S with the traceless axial tensor of eigenvalues
    {2D/3, -D/3, -D/3}, which reduces to the usual D [Sz^2 - 2/3] for a
    spin-1 center with axis z.

    Raises:
        ValueError: For a spin-1/2 center with nonzero D.
    """
    center = system.centers[center_index]
    if center.zfs_d_mhz == 0.0:
        return np.zeros((system.dim, system.dim), dtype=complex)
    if round(2 * center.spin) < 2:
        raise ValueError("zero-field splitting requires electron spin >= 1")
    d = center.zfs_d_mhz
    tensor = rotate_axial_tensor(
        AxialTensor(parallel=2.0 * d / 3.0, perpendicular=-d / 3.0, axis=center.zfs_axis)
    )
    svec = _embedded_spin(system, system.electron_slot(center_index), center.spin)
    return _bilinear(svec, tensor, svec)


def hfc_term(system: SpinSystem, center_index: int, nucleus_index: int) -> np.ndarray:
    """Hyperfine term S^T . A_lab . I for one electron-nucleus pair, embedded."""
    center = system.centers[center_index]
    nucleus = center.nuclei[nucleus_index]
    a_lab = rotate_axial_tensor(nucleus.hfc)
    svec = _embedded_spin(system, system.electron_slot(center_index), center.spin)
    ivec = _embedded_spin(
        system, system.nucleus_slot(center_index, nucleus_index), nucleus.spin
    )
    return _bilinear(svec, a_lab, ivec)


def quadrupole_term(system: SpinSystem, center_index: int, nucleus_index: int) -> np.ndarray:
    """Nuclear quadrupole term Q [Iz'^2 - I(I+1)/3], embedded.

    Identically zero for spin-1/2 nuclei and for Q = 0.
    """
    center = system.centers[center_index]
    nucleus = center.nuclei[nucleus_index]
    if nucleus.quadrupole_q == 0.0 or round(2 * nucleus.spin) < 2:
        return np.zeros((system.dim, system.dim), dtype=complex)
    q = nucleus.quadrupole_q
    tensor = rotate_axial_tensor(
        AxialTensor(parallel=2.0 * q / 3.0, perpendicular=-q / 3.0, axis=nucleus.quadrupole_axis)
    )
    ivec = _embedded_spin(
        system, system.nucleus_slot(center_index, nucleus_index), nucleus.spin
    )
    return _bilinear(ivec, tensor, ivec)


def dipolar_term(system: SpinSystem) -> np.ndarray:
    """Electron dipole-dipole coupling D_dd [3 (S1.n)(S2.n) - S1.S2], embedded.

    Raises:
        ValueError: If the system has a single center.
    """
    if system.center2 is None:
        raise ValueError("dipolar term requires two centers")
    if system.d_dd_mhz == 0.0:
        return np.zeros((system.dim, system.dim), dtype=complex)
    s1 = _embedded_spin(system, system.electron_slot(0), system.center1.spin)
    s2 = _embedded_spin(system, system.electron_slot(1), system.center2.spin)
    n = system.n12
    s1n = n[0] * s1[0] + n[1] * s1[1] + n[2] * s1[2]
    s2n = n[0] * s2[0] + n[1] * s2[1] + n[2] * s2[2]
    dot = s1[0] @ s2[0] + s1[1] @ s2[1] + s1[2] @ s2[2]
    return system.d_dd_mhz * (3.0 * (s1n @ s2n) - dot)


def assemble_hamiltonian(system: SpinSystem, b_gauss) -> np.ndarray:
    """Full Hamiltonian of the system at one field point, in MHz.

    Sum of all Zeeman, ZFS, hyperfine, quadrupole and dipolar terms.  The
    result is Hermitian and affine-linear in the field vector.
    """
    ops = SystemOperators(system)
    return ops.hamiltonian(b_gauss)


class SystemOperators:
    """Precomputed embedded operators for fast repeated Hamiltonian assembly.

    Splits the Hamiltonian into a field-independent part and three matrices
    multiplying the Cartesian field components, so a field sweep costs one
    scaled sum per point instead of a full rebuild.
    """

    def __init__(self, system: SpinSystem):
        self.system = system
        self.dim = system.dim
        static = np.zeros((self.dim, self.dim), dtype=complex)
        coupling = np.zeros((3, self.dim, self.dim), dtype=complex)
        for ci, center in enumerate(system.centers):
            svec = _embedded_spin(system, system.electron_slot(ci), center.spin)
            g_lab = rotate_axial_tensor(center.g)
            # beta * B^T G S  ->  sum_a B_a * (beta * sum_b G_ab S_b)
            for a in range(3):
                coupling[a] += MU_B_MHZ_PER_G * (
                    g_lab[a, 0] * svec[0] + g_lab[a, 1] * svec[1] + g_lab[a, 2] * svec[2]
                )
            if center.zfs_d_mhz != 0.0:
                static += zfs_term(system, ci)
            for ni in range(len(center.nuclei)):
                static += hfc_term(system, ci, ni)
                static += quadrupole_term(system, ci, ni)
        if system.center2 is not None and system.d_dd_mhz != 0.0:
            static += dipolar_term(system)
        self.static = static
        self.field_coupling = coupling

    def hamiltonian(self, b_gauss) -> np.ndarray:
        b = _field_vector(b_gauss)
        h = self.static.copy()
        for a in range(3):
            if b[a] != 0.0:
                h += b[a] * self.field_coupling[a]
        return h

    def hamiltonians(self, b_stack: np.ndarray) -> np.ndarray:
        """Stacked Hamiltonians for an (m, 3) array of field vectors."""
        b = np.asarray(b_stack, dtype=float)
        return self.static + np.einsum("ma,aij->mij", b, self.field_coupling)
