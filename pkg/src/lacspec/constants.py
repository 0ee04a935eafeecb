"""Physical constants and crystal geometry used throughout the package.

All Hamiltonian matrix elements are expressed in MHz and magnetic fields in
Gauss; evolution times are in seconds.  The two unit-bridging constants below
are the only places where those conventions meet.
"""

import numpy as np

# Bohr magneton over Planck constant in MHz/G (CODATA).  Multiplies
# g * B[G] to give electron Zeeman energies in MHz.
MU_B_MHZ_PER_G = 1.39962449

# Energies are stored in MHz while evolution times are in seconds, so every
# phase 2*pi*E*t carries this factor exactly once.
HZ_PER_MHZ = 1.0e6

# Tetrahedral angle between <111> bond directions in diamond, kept exact
# rather than the rounded 109.47 degrees.
THETA_TETRA = float(np.arccos(-1.0 / 3.0))


def unit_z() -> np.ndarray:
    """Lab-frame quantization axis (symmetry axis of the first center)."""
    return np.array([0.0, 0.0, 1.0])


def tilted_axis(theta: float, azimuth: float = 0.0) -> np.ndarray:
    """Unit vector at polar angle ``theta`` from z with the given azimuth."""
    st = np.sin(theta)
    return np.array([st * np.cos(azimuth), st * np.sin(azimuth), np.cos(theta)])


def tetrahedral_axes() -> list[np.ndarray]:
    """The four <111>-type directions with the first one along z.

    Returns the reference axis followed by the three axes tilted by the
    tetrahedral angle at azimuths 0, 120 and 240 degrees.
    """
    thirds = 2.0 * np.pi / 3.0
    return [unit_z()] + [tilted_axis(THETA_TETRA, k * thirds) for k in range(3)]
