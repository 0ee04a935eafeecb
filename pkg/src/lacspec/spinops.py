"""Spin operator matrices, Kronecker-product embedding and tensor rotations.

Everything here is a pure function on immutable inputs.  Spin matrices are
always complex (sy is imaginary) and use the basis m = s, s-1, ..., -s.
"""

from dataclasses import dataclass
from math import prod

import numpy as np

_UNIT_TOL = 1e-12


def _as_unit_vector(axis, tol: float = _UNIT_TOL) -> np.ndarray:
    v = np.asarray(axis, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"axis must be a 3-vector, got shape {v.shape}")
    norm = float(np.linalg.norm(v))
    if abs(norm - 1.0) > tol:
        raise ValueError(f"axis must have unit norm, got |axis| = {norm!r}")
    return v


@dataclass(frozen=True)
class SpinOperators:
    """Angular momentum matrices for a single spin.

    Attributes:
        s: Spin quantum number (half-integer >= 1/2).
        dim: Hilbert-space dimension, 2s + 1.
        sx, sy, sz: Complex Hermitian matrices of shape (dim, dim).
    """

    s: float
    dim: int
    sx: np.ndarray
    sy: np.ndarray
    sz: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        """Stacked (3, dim, dim) array in x, y, z order."""
        return np.stack([self.sx, self.sy, self.sz])


def make_spin_operators(s: float) -> SpinOperators:
    """Build sx, sy, sz for spin quantum number ``s``.

    Args:
        s: Half-integer spin, 2s must be a positive integer.

    Returns:
        SpinOperators with sz = diag(s, s-1, ..., -s) and the ladder-derived
        transverse components.

    Raises:
        ValueError: If 2s is not a positive integer.
    """
    two_s = round(2 * float(s))
    if two_s < 1 or abs(2 * float(s) - two_s) > 1e-12:
        raise ValueError(f"spin must be a positive half-integer, got {s!r}")
    s = two_s / 2.0
    dim = two_s + 1
    m = s - np.arange(dim)
    sz = np.diag(m).astype(complex)
    # Raising operator in the descending-m basis: couples |m> to |m+1>.
    sp = np.zeros((dim, dim), dtype=complex)
    for i in range(1, dim):
        sp[i - 1, i] = np.sqrt(s * (s + 1) - m[i] * (m[i] + 1))
    sm = sp.conj().T
    sx = (sp + sm) / 2.0
    sy = (sp - sm) / 2.0j
    for mat in (sx, sy, sz):
        mat.setflags(write=False)
    return SpinOperators(s=s, dim=dim, sx=sx, sy=sy, sz=sz)


@dataclass(frozen=True)
class EmbeddingMap:
    """Placement of one subsystem inside an ordered Kronecker product.

    Attributes:
        dims: Dimensions of all subsystems, in tensor-product order.
        target: Index of the subsystem an operator acts on.
    """

    dims: tuple[int, ...]
    target: int

    def __post_init__(self):
        if not self.dims or any(d < 1 for d in self.dims):
            raise ValueError(f"dims must be positive integers, got {self.dims}")
        if not 0 <= self.target < len(self.dims):
            raise ValueError(f"target {self.target} out of range for {self.dims}")

    @property
    def total_dim(self) -> int:
        return prod(self.dims)


def embed_operator(op: np.ndarray, emap: EmbeddingMap) -> np.ndarray:
    """Embed ``op`` as Identity (x) ... (x) op (x) ... (x) Identity.

    Args:
        op: Square matrix matching the target subsystem dimension.
        emap: Where the operator lives in the product space.

    Returns:
        Complex matrix of dimension ``emap.total_dim``.
    """
    op = np.asarray(op, dtype=complex)
    d = emap.dims[emap.target]
    if op.shape != (d, d):
        raise ValueError(
            f"operator shape {op.shape} does not match subsystem dim {d} "
            f"at slot {emap.target}"
        )
    before = prod(emap.dims[: emap.target])
    after = prod(emap.dims[emap.target + 1 :])
    return np.kron(np.kron(np.eye(before), op), np.eye(after))


@dataclass(frozen=True)
class AxialTensor:
    """Axially symmetric rank-2 interaction tensor.

    Attributes:
        parallel: Principal value along the symmetry axis (MHz, or
            dimensionless for g-tensors).
        perpendicular: Doubly degenerate transverse principal value.
        axis: Unit symmetry axis in the lab frame.
    """

    parallel: float
    perpendicular: float
    axis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "axis", _as_unit_vector(self.axis))
        self.axis.setflags(write=False)

    @property
    def isotropic(self) -> bool:
        return self.parallel == self.perpendicular


def rotate_axial_tensor(t: AxialTensor) -> np.ndarray:
    """Full lab-frame 3x3 matrix of an axial tensor.

    Returns ``perpendicular * I + (parallel - perpendicular) * n n^T`` where
    n is the symmetry axis; symmetric with eigenvalues
    {parallel, perpendicular, perpendicular}.
    """
    n = t.axis
    return t.perpendicular * np.eye(3) + (t.parallel - t.perpendicular) * np.outer(n, n)


def rotation_matrix(axis, angle: float) -> np.ndarray:
    """Rodrigues rotation by ``angle`` (radians) about a unit ``axis``."""
    n = _as_unit_vector(axis)
    k = np.array(
        [
            [0.0, -n[2], n[1]],
            [n[2], 0.0, -n[0]],
            [-n[1], n[0], 0.0],
        ]
    )
    return np.eye(3) + np.sin(angle) * k + (1.0 - np.cos(angle)) * (k @ k)


def euler_rotation_matrix(alpha: float, beta: float, gamma: float) -> np.ndarray:
    """General rotation from z-y-z Euler angles (radians).

    Provided as the generic entry point; the geometries used in practice only
    require single tilts about an axis perpendicular to z.
    """
    ez = np.array([0.0, 0.0, 1.0])
    ey = np.array([0.0, 1.0, 0.0])
    return rotation_matrix(ez, alpha) @ rotation_matrix(ey, beta) @ rotation_matrix(ez, gamma)
