"""Initial states, eigenbasis evolution and the time-averaged bright population.

The observable is the population of the m=0 ("bright") state of a spin-1
center, averaged over exponentially distributed coherent evolution times of
mean tau.  In the Hamiltonian eigenbasis the average has a closed form: each
density-matrix element is damped by 1 / (1 + 2*pi*i*Delta*tau) where Delta is
the transition frequency.  ``time_domain_oracle`` checks that closed form by
brute-force numerical quadrature of the same average.
"""

from dataclasses import dataclass

import numpy as np

from .constants import HZ_PER_MHZ
from .spinops import _as_unit_vector, embed_operator, make_spin_operators
from .system import SpinSystem

_HERM_TOL = 1e-12
_TRACE_TOL = 1e-10
_PSD_TOL = 1e-10


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix: Hermitian, unit trace, positive semidefinite."""

    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=complex)
        object.__setattr__(self, "mat", mat)
        scale = max(1.0, float(np.abs(mat).max()))
        if np.abs(mat - mat.conj().T).max() > _HERM_TOL * scale:
            raise ValueError("density matrix must be Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > _TRACE_TOL:
            raise ValueError(f"density matrix must have unit trace, got {tr}")
        if np.linalg.eigvalsh(mat).min() < -_PSD_TOL:
            raise ValueError("density matrix must be positive semidefinite")
        mat.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class EigenSystem:
    """Eigen-decomposition of a Hermitian matrix with a fixed gauge.

    Attributes:
        energies: Eigenvalues in MHz, ascending.
        vectors: Unitary matrix whose columns are the eigenvectors, each
            phased so its largest-magnitude component is real positive.
    """

    energies: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return self.energies.shape[0]


@dataclass(frozen=True)
class BrightProjector:
    """Projector onto the m=0 subspace of one spin-1 center, embedded."""

    mat: np.ndarray
    center_index: int


def polarized_density(alpha: float, axis) -> np.ndarray:
    """Spin-1 density matrix polarized into m=0 along ``axis``.

    alpha * |0><0| + (1 - alpha)/3 * Identity, with |0> the zero-projection
    eigenstate of the spin component along the axis.
    """
    n = _as_unit_vector(axis)
    ops = make_spin_operators(1.0)
    sn = n[0] * ops.sx + n[1] * ops.sy + n[2] * ops.sz
    # For spin 1, Identity - (n.S)^2 is exactly |0_n><0_n|.
    ket0 = np.eye(3) - sn @ sn
    return alpha * ket0 + (1.0 - alpha) / 3.0 * np.eye(3)


def initial_density(system: SpinSystem) -> DensityMatrix:
    """Initial product state of the system.

    Each spin-1 electron enters via its polarized density matrix (its own
    alpha and symmetry axis); spin-1/2 electrons and all nuclei are maximally
    mixed.  The Kronecker factor order matches ``SpinSystem.dims``.
    """
    rho = np.eye(1, dtype=complex)
    for center in system.centers:
        if round(2 * center.spin) == 2:
            factor = polarized_density(center.alpha, center.zfs_axis)
        else:
            factor = np.eye(center.dim) / center.dim
        rho = np.kron(rho, factor)
        for nucleus in center.nuclei:
            rho = np.kron(rho, np.eye(nucleus.dim) / nucleus.dim)
    return DensityMatrix(mat=rho)


def bright_projector(system: SpinSystem, center_index: int = 0) -> BrightProjector:
    """Projector onto the m=0 state of one center, embedded in the full space.

    Raises:
        ValueError: If the selected center is not spin-1.
    """
    center = system.centers[center_index]
    if round(2 * center.spin) != 2:
        raise ValueError("bright-state projector is defined for spin-1 centers only")
    ops = make_spin_operators(1.0)
    n = center.zfs_axis
    sn = n[0] * ops.sx + n[1] * ops.sy + n[2] * ops.sz
    ket0 = np.eye(3) - sn @ sn
    emap = system.embedding(system.electron_slot(center_index))
    mat = embed_operator(ket0, emap)
    mat.setflags(write=False)
    return BrightProjector(mat=mat, center_index=center_index)


def eigen_decompose(h: np.ndarray, herm_tol: float = 1e-10) -> EigenSystem:
    """Diagonalize a Hermitian matrix with deterministic eigenvector phases.

    Eigenvalues come out ascending; each eigenvector is multiplied by a phase
    making its largest-magnitude component (first such index on ties) real and
    positive, so repeated runs and different backends agree.

    Raises:
        ValueError: If ``h`` is not Hermitian within ``herm_tol`` relative to
            its largest element.
    """
    h = np.asarray(h)
    scale = max(1.0, float(np.abs(h).max()))
    if np.abs(h - h.conj().T).max() > herm_tol * scale:
        raise ValueError("matrix is not Hermitian")
    energies, vectors = np.linalg.eigh(h)
    vectors = _fix_phases(vectors)
    return EigenSystem(energies=energies, vectors=vectors)


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    idx = np.argmax(np.abs(vectors), axis=0)
    lead = vectors[idx, np.arange(vectors.shape[1])]
    phases = lead / np.abs(lead)
    return vectors * phases.conj()


def eigenbasis_filter(rho_eb: np.ndarray, energies: np.ndarray, tau: float) -> np.ndarray:
    """Apply the exponential-time-average kernel in the eigenbasis.

    Element (i, j) is divided by 1 + 2*pi*i*(E_i - E_j)*tau, with energies in
    MHz and tau in seconds.  Preserves Hermiticity and the trace.
    """
    if tau <= 0.0:
        raise ValueError(f"tau must be positive, got {tau}")
    delta = energies[:, None] - energies[None, :]
    return rho_eb / (1.0 + 2.0j * np.pi * delta * HZ_PER_MHZ * tau)


def averaged_population(
    rho0: DensityMatrix, es: EigenSystem, proj: BrightProjector, tau: float
) -> float:
    """Exponentially time-averaged population of the bright state.

    Transforms the initial state to the eigenbasis, damps every coherence by
    the 1 / (1 + 2*pi*i*Delta*tau) kernel, transforms back and takes the
    trace against the projector.

    Args:
        rho0: Initial density matrix.
        es: Eigen-decomposition of the Hamiltonian (MHz).
        proj: Bright-state projector.
        tau: Mean evolution time in seconds, > 0.

    Returns:
        Real population in [0, 1] (clamped when within 1e-10 of the bounds).
    """
    if tau <= 0.0:
        raise ValueError(f"tau must be positive, got {tau}")
    v = es.vectors
    rho_eb = v.conj().T @ rho0.mat @ v
    rho_st = eigenbasis_filter(rho_eb, es.energies, tau)
    back = v @ rho_st @ v.conj().T
    value = complex(np.sum(proj.mat * back.T))
    if abs(value.imag) > 1e-10:
        raise ValueError(f"population has non-negligible imaginary part {value.imag}")
    return _clamp_unit(value.real)


def _clamp_unit(x: float, slack: float = 1e-10) -> float:
    if -slack <= x < 0.0:
        return 0.0
    if 1.0 < x <= 1.0 + slack:
        return 1.0
    return x


def time_domain_oracle(
    rho0: DensityMatrix,
    h: np.ndarray,
    proj: BrightProjector,
    tau: float,
    n_samples: int = 4096,
    drop_tol: float = 1e-9,
) -> float:
    """Brute-force check of ``averaged_population`` by numerical quadrature.

    Propagates rho(t) = e^{-iHt} rho0 e^{+iHt} in the eigenbasis, expands the
    bright population into its oscillating components and averages each over
    the exponential distribution of evolution times by quadrature: composite
    Simpson over the decay support for slow components, and a one-period
    Gauss-Legendre rule summed over periods for fast ones.  No use is made of
    the closed-form averaging kernel.

    Args:
        rho0: Initial density matrix.
        h: Hermitian Hamiltonian in MHz.
        proj: Bright-state projector.
        tau: Mean evolution time in seconds.
        n_samples: Minimum quadrature sample count (>= 1000).
        drop_tol: Total weight of discarded small components; bounds the
            truncation error directly.

    Returns:
        The averaged bright population.
    """
    if tau <= 0.0:
        raise ValueError(f"tau must be positive, got {tau}")
    if n_samples < 1000:
        raise ValueError(f"n_samples must be at least 1000, got {n_samples}")
    es = eigen_decompose(h)
    v = es.vectors
    rho_eb = v.conj().T @ rho0.mat @ v
    p_eb = v.conj().T @ proj.mat @ v
    # rho00(t) = sum_ij c_ij exp(-i w_ij t) with w in rad/s.
    coeff = (p_eb * rho_eb.T).ravel()
    delta = (es.energies[None, :] - es.energies[:, None]).ravel()
    omega = 2.0 * np.pi * delta * HZ_PER_MHZ

    order = np.argsort(np.abs(coeff))
    cum = np.cumsum(np.abs(coeff)[order])
    keep = np.zeros(coeff.size, dtype=bool)
    keep[order[cum > drop_tol]] = True

    cache: dict[float, complex] = {}
    total = 0.0 + 0.0j
    for c, w in zip(coeff[keep], omega[keep]):
        aw = abs(w)
        if aw not in cache:
            cache[aw] = _exp_average(aw, tau, n_samples)
        phi = cache[aw]
        total += c * (phi if w >= 0.0 else phi.conjugate())
    if abs(total.imag) > 1e-8:
        raise ValueError(f"oracle population has imaginary part {total.imag}")
    return float(total.real)


def _exp_average(omega: float, tau: float, n_samples: int) -> complex:
    """Quadrature of (1/tau) * integral_0^inf exp(-t/tau - i w t) dt, w >= 0.

    Slow components (few cycles over the decay) use composite Simpson on
    [0, 28 tau]; fast ones use Gauss-Legendre over a single oscillation
    period times the exact geometric sum of the per-period decay factors.
    """
    span = 28.0 * tau  # exp(-28) ~ 7e-13 truncation
    n_cycles = omega * span / (2.0 * np.pi)
    if n_cycles <= 16.0:
        n = max(n_samples, int(np.ceil(28 * 256)), int(np.ceil(n_cycles * 512)))
        n += n % 2  # Simpson needs an even interval count
        t = np.linspace(0.0, span, n + 1)
        f = np.exp(-t / tau - 1j * omega * t)
        return _simpson(f, span / n) / tau
    period = 2.0 * np.pi / omega
    x, wts = np.polynomial.legendre.leggauss(64)
    t = 0.5 * period * (x + 1.0)
    one_period = 0.5 * period * np.sum(wts * np.exp(-t / tau - 1j * omega * t))
    # Sum over periods: each adds a factor exp(-period/tau); the phase factor
    # per period is exactly 1.  1 - q via expm1 keeps precision for tiny ratios.
    geom = -np.expm1(-period / tau)
    return one_period / (tau * geom)


def _simpson(f: np.ndarray, h: float) -> complex:
    acc = f[0] + f[-1] + 4.0 * np.sum(f[1:-1:2]) + 2.0 * np.sum(f[2:-1:2])
    return acc * h / 3.0
