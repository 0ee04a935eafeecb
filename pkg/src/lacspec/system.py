"""Domain model for one or two coupled paramagnetic centers.

A system is a list of spins in a fixed Kronecker order: electron of center 1,
its nuclei, electron of center 2, its nuclei.  The 54-dimensional
NV/P1 case then factors as 3 x 3 x 2 x 3.
"""

from dataclasses import dataclass, field
from math import prod

import numpy as np

from .spinops import AxialTensor, EmbeddingMap, _as_unit_vector


def _spin_dim(s: float) -> int:
    two_s = round(2 * float(s))
    if two_s < 1 or abs(2 * float(s) - two_s) > 1e-12:
        raise ValueError(f"spin must be a positive half-integer, got {s!r}")
    return two_s + 1


@dataclass(frozen=True)
class Nucleus:
    """A nuclear spin with hyperfine and quadrupole couplings.

    The quadrupole term is identically zero for spin-1/2 nuclei, so
    ``quadrupole_q`` is ignored in that case rather than rejected.

    Attributes:
        spin: Nuclear spin quantum number.
        hfc: Hyperfine tensor (parallel/perpendicular in MHz, axis in lab frame).
        quadrupole_q: Quadrupole coupling Q in MHz.
        quadrupole_axis: Unit axis of the quadrupole tensor.
    """

    spin: float
    hfc: AxialTensor
    quadrupole_q: float = 0.0
    quadrupole_axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self):
        _spin_dim(self.spin)
        object.__setattr__(self, "quadrupole_axis", _as_unit_vector(self.quadrupole_axis))
        self.quadrupole_axis.setflags(write=False)

    @property
    def dim(self) -> int:
        return _spin_dim(self.spin)


@dataclass(frozen=True)
class SpinCenter:
    """An electron spin with g-tensor, zero-field splitting and attached nuclei.

    Attributes:
        spin: Electron spin quantum number (1 for NV-, 1/2 for P1).
        g: Dimensionless g-tensor.
        zfs_d_mhz: Axial zero-field splitting D in MHz (0 for spin-1/2).
        zfs_axis: Center symmetry axis (unit vector, lab frame).
        nuclei: Nuclei hyperfine-coupled to this electron.
        alpha: Light-induced polarization degree of the m=0 state, in [0, 1].
            Nonzero alpha requires a spin-1 center.
    """

    spin: float
    g: AxialTensor
    zfs_d_mhz: float = 0.0
    zfs_axis: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))
    nuclei: tuple[Nucleus, ...] = ()
    alpha: float = 0.0

    def __post_init__(self):
        _spin_dim(self.spin)
        object.__setattr__(self, "nuclei", tuple(self.nuclei))
        object.__setattr__(self, "zfs_axis", _as_unit_vector(self.zfs_axis))
        self.zfs_axis.setflags(write=False)
        if not 0.0 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.alpha > 0.0 and round(2 * self.spin) != 2:
            raise ValueError("polarized initial state is defined for spin-1 centers only")

    @property
    def dim(self) -> int:
        return _spin_dim(self.spin)


@dataclass(frozen=True)
class SpinSystem:
    """One or two coupled centers plus the lab-frame geometry.

    Attributes:
        center1: The polarized (NV-like) center; defines the readout.
        center2: Optional partner center.
        d_dd_mhz: Electron dipole-dipole coupling constant in MHz.
        n12: Unit vector along the line connecting the two centers.
    """

    center1: SpinCenter
    center2: SpinCenter | None = None
    d_dd_mhz: float = 0.0
    n12: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self):
        object.__setattr__(self, "n12", _as_unit_vector(self.n12))
        self.n12.setflags(write=False)

    @property
    def centers(self) -> tuple[SpinCenter, ...]:
        return (self.center1,) if self.center2 is None else (self.center1, self.center2)

    @property
    def dims(self) -> tuple[int, ...]:
        """Subsystem dimensions in Kronecker order."""
        out: list[int] = []
        for center in self.centers:
            out.append(center.dim)
            out.extend(n.dim for n in center.nuclei)
        return tuple(out)

    @property
    def dim(self) -> int:
        return prod(self.dims)

    def electron_slot(self, center_index: int) -> int:
        """Kronecker slot of the electron spin of the given center."""
        self._check_center(center_index)
        if center_index == 0:
            return 0
        return 1 + len(self.center1.nuclei)

    def nucleus_slot(self, center_index: int, nucleus_index: int) -> int:
        """Kronecker slot of one nucleus of the given center."""
        center = self._check_center(center_index)
        if not 0 <= nucleus_index < len(center.nuclei):
            raise IndexError(
                f"center {center_index} has {len(center.nuclei)} nuclei, "
                f"index {nucleus_index} out of range"
            )
        return self.electron_slot(center_index) + 1 + nucleus_index

    def embedding(self, slot: int) -> EmbeddingMap:
        return EmbeddingMap(dims=self.dims, target=slot)

    def _check_center(self, center_index: int) -> SpinCenter:
        if center_index not in (0, 1) or center_index >= len(self.centers):
            raise IndexError(f"no center with index {center_index}")
        return self.centers[center_index]
