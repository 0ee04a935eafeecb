"""Field sweeps, orientation averaging, derivatives and crossing detection.

Field points are independent work items: the sweep batches them into
fixed-size chunks, diagonalizes each chunk with stacked LAPACK calls and
optionally spreads chunks over a thread pool.  Results are assembled in grid
order, so the output is independent of the scheduling; BLAS pools are pinned
to one thread during sweeps to keep chunk numerics identical for any worker
count (and to avoid oversubscription).
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod

import numpy as np
from threadpoolctl import threadpool_limits

from .constants import HZ_PER_MHZ
from .evolution import initial_density, make_spin_operators
from .hamiltonian import SystemOperators
from .spinops import _as_unit_vector
from .system import SpinSystem

_CHUNK = 64  # fixed so chunk boundaries never depend on the thread count
_SLACK = 1e-10
_IMAG_TOL = 1e-9


class SweepError(RuntimeError):
    """Numerical failure during a sweep, tagged with the offending field."""


@dataclass(frozen=True)
class FieldGrid:
    """Uniform magnetic-field grid along a fixed lab direction.

    Attributes:
        b_min_gauss, b_max_gauss: Sweep range in Gauss, b_min < b_max.
        n_points: Number of samples, >= 2.
        direction: Unit vector of the field in the lab frame.
    """

    b_min_gauss: float
    b_max_gauss: float
    n_points: int
    direction: np.ndarray = field(default_factory=lambda: np.array([0.0, 0.0, 1.0]))

    def __post_init__(self):
        if not self.b_min_gauss < self.b_max_gauss:
            raise ValueError(
                f"b_min must be below b_max, got [{self.b_min_gauss}, {self.b_max_gauss}]"
            )
        if self.n_points < 2:
            raise ValueError(f"n_points must be at least 2, got {self.n_points}")
        object.__setattr__(self, "direction", _as_unit_vector(self.direction, tol=1e-9))
        self.direction.setflags(write=False)

    @property
    def fields(self) -> np.ndarray:
        return np.linspace(self.b_min_gauss, self.b_max_gauss, self.n_points)

    @property
    def spacing(self) -> float:
        return (self.b_max_gauss - self.b_min_gauss) / (self.n_points - 1)

    def vectors(self) -> np.ndarray:
        return self.fields[:, None] * self.direction[None, :]


@dataclass
class Spectrum:
    """A sampled bright-population curve with optional extra traces.

    Attributes:
        fields: Field values in Gauss.
        values: Primary trace (first requested observable).
        columns: Further named traces on the same grid.
        meta: JSON-compatible description of how the data was produced.
    """

    fields: np.ndarray
    values: np.ndarray
    columns: dict[str, np.ndarray] = field(default_factory=dict)
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.fields = np.asarray(self.fields, dtype=float)
        self.values = np.asarray(self.values, dtype=float)
        if self.fields.shape != self.values.shape or self.fields.ndim != 1:
            raise ValueError("fields and values must be 1-d arrays of equal length")
        for name, col in self.columns.items():
            col = np.asarray(col, dtype=float)
            if col.shape != self.fields.shape:
                raise ValueError(f"column {name!r} length does not match the grid")
            self.columns[name] = col

    @property
    def n_points(self) -> int:
        return self.fields.size

    def column(self, name: str) -> "Spectrum":
        """Extract one named trace as a spectrum of its own."""
        if name == "values":
            return Spectrum(self.fields.copy(), self.values.copy(), meta=dict(self.meta))
        return Spectrum(
            self.fields.copy(),
            self.columns[name].copy(),
            meta={**self.meta, "column": name},
        )


@dataclass(frozen=True)
class Crossing:
    """A local minimum of one adjacent-level gap along the sweep."""

    field_gauss: float
    level_lo: int
    level_hi: int
    min_gap_mhz: float
    kind: str  # "crossing" if the refined gap is below the floor, else "anti-crossing"


class _Projector:
    """Bright projector of one center in a cheap evaluator-friendly form."""

    def __init__(self, system: SpinSystem, center_index: int):
        center = system.centers[center_index]
        if round(2 * center.spin) != 2:
            raise ValueError("bright observables require a spin-1 center")
        ops = make_spin_operators(1.0)
        n = center.zfs_axis
        sn = n[0] * ops.sx + n[1] * ops.sy + n[2] * ops.sz
        ket0 = np.eye(3) - sn @ sn
        slot = system.electron_slot(center_index)
        dims = system.dims
        before = prod(dims[:slot])
        after = prod(dims[slot + 1 :])
        diag = np.diag(ket0)
        if np.abs(ket0 - np.diag(diag)).max() == 0.0:
            pattern = np.kron(np.kron(np.ones(before), diag.real), np.ones(after))
            self.rows = np.flatnonzero(pattern > 0.5)
            self.basis = None
        else:
            # Orthonormal basis of the bright subspace: P = K K^dagger.
            evals, evecs = np.linalg.eigh(ket0)
            ket = evecs[:, np.argmax(evals)].reshape(3, 1)
            self.rows = None
            self.basis = np.kron(np.kron(np.eye(before), ket), np.eye(after))

    def trace_against(self, v: np.ndarray, vh: np.ndarray, rho_st: np.ndarray) -> np.ndarray:
        """Tr(P V rho_st V^dagger) for stacked eigenvector matrices."""
        if self.rows is not None:
            c = v[:, self.rows, :]
            t = c @ rho_st
            return np.sum((t * c.conj()).real, axis=(-2, -1))
        q = vh @ self.basis
        t = rho_st @ q
        return np.sum((q.conj() * t).real, axis=(-2, -1))


class _SweepPlan:
    """Everything field-independent about one sweep."""

    def __init__(self, system: SpinSystem, observables: tuple[str, ...]):
        self.system = system
        self.ops = SystemOperators(system)
        rho = initial_density(system).mat
        off = rho - np.diag(np.diag(rho))
        if np.abs(off).max() == 0.0:
            self.rho_diag = np.diag(rho).real.copy()
            self.rho_dense = None
        else:
            self.rho_diag = None
            self.rho_dense = rho
        self.observables = observables
        centers_needed = set()
        for name in observables:
            if name == "center1":
                centers_needed.add(0)
            elif name == "center2":
                centers_needed.add(1)
            elif name == "sum":
                centers_needed.update(range(len(system.centers)))
            else:
                raise ValueError(f"unknown observable {name!r}")
        self.projectors = {ci: _Projector(system, ci) for ci in sorted(centers_needed)}

    def evaluate(self, b_stack: np.ndarray, tau: float) -> dict[str, np.ndarray]:
        h = self.ops.hamiltonians(b_stack)
        energies, v = np.linalg.eigh(h)
        vh = v.conj().swapaxes(-1, -2)
        if self.rho_diag is not None:
            rho_eb = (vh * self.rho_diag) @ v
        else:
            rho_eb = vh @ self.rho_dense @ v
        delta = energies[..., :, None] - energies[..., None, :]
        rho_st = rho_eb / (1.0 + 2.0j * np.pi * delta * HZ_PER_MHZ * tau)
        traces = {
            ci: proj.trace_against(v, vh, rho_st) for ci, proj in self.projectors.items()
        }
        out = {}
        for name in self.observables:
            if name == "center1":
                out[name] = traces[0]
            elif name == "center2":
                out[name] = traces[1]
            else:
                out[name] = sum(traces.values())
        return out


def _check_population(vals: np.ndarray, fields: np.ndarray, upper: float) -> np.ndarray:
    bad = (vals < -_SLACK) | (vals > upper + _SLACK)
    if np.any(bad):
        where = fields[np.argmax(bad)]
        raise SweepError(f"population out of range at B0 = {where} G")
    return np.clip(vals, 0.0, upper)


def sweep(
    system: SpinSystem,
    grid: FieldGrid,
    tau: float,
    observables: tuple[str, ...] = ("center1",),
    threads: int = 1,
) -> Spectrum:
    """Magnetic-field sweep of the time-averaged bright population.

    Assembles the Hamiltonian, diagonalizes it and evaluates the averaged
    population at every grid point.

    Args:
        system: The spin system.
        grid: Field grid (magnitudes along ``grid.direction``).
        tau: Mean evolution time in seconds.
        observables: Any of "center1", "center2", "sum"; the first one becomes
            the primary trace, the rest extra columns.
        threads: Worker threads for chunks of field points.

    Returns:
        Spectrum on the grid, deterministic for any thread count.
    """
    if tau <= 0.0:
        raise ValueError(f"tau must be positive, got {tau}")
    plan = _SweepPlan(system, tuple(observables))
    vectors = grid.vectors()
    chunks = [vectors[i : i + _CHUNK] for i in range(0, len(vectors), _CHUNK)]

    def run_chunk(chunk):
        try:
            return plan.evaluate(chunk, tau)
        except np.linalg.LinAlgError as exc:
            raise SweepError(f"diagonalization failed near B0 = {chunk[0]} G: {exc}") from exc

    with threadpool_limits(limits=1):
        if threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(run_chunk, chunks))
        else:
            results = [run_chunk(c) for c in chunks]

    merged = {
        name: np.concatenate([r[name] for r in results]) for name in plan.observables
    }
    meta = {
        "dim": system.dim,
        "tau_s": tau,
        "alphas": [c.alpha for c in system.centers],
        "d_dd_mhz": system.d_dd_mhz,
        "direction": [float(x) for x in grid.direction],
        "observables": list(plan.observables),
    }
    primary = plan.observables[0]
    columns = {}
    for name in plan.observables[1:]:
        bound = float(len(plan.projectors)) if name == "sum" else 1.0
        columns[name] = _check_population(merged[name], grid.fields, bound)
    bound = float(len(plan.projectors)) if primary == "sum" else 1.0
    values = _check_population(merged[primary], grid.fields, bound)
    return Spectrum(fields=grid.fields, values=values, columns=columns, meta=meta)


def orientation_average(
    members: list[tuple[SpinSystem, float]],
    grid: FieldGrid,
    tau: float,
    observables: tuple[str, ...] = ("center1",),
    threads: int = 1,
) -> Spectrum:
    """Weighted pointwise sum of the sweeps of several systems.

    Used for averaging over crystallographically equivalent orientations;
    weights are applied exactly as given.
    """
    if not members:
        raise ValueError("orientation ensemble must have at least one member")
    spectra = [
        (sweep(system, grid, tau, observables=observables, threads=threads), w)
        for system, w in members
    ]
    return compose(spectra)


def compose(spectra: list[tuple[Spectrum, float]]) -> Spectrum:
    """Weighted superposition of spectra sharing one grid.

    Raises:
        ValueError: On an empty list or mismatched grids.
    """
    if not spectra:
        raise ValueError("nothing to compose")
    base = spectra[0][0]
    for spec, _ in spectra[1:]:
        if not np.array_equal(spec.fields, base.fields):
            raise ValueError("spectra must share an identical field grid")
    values = sum(w * spec.values for spec, w in spectra)
    shared = set(base.columns)
    for spec, _ in spectra[1:]:
        shared &= set(spec.columns)
    columns = {
        name: sum(w * spec.columns[name] for spec, w in spectra) for name in sorted(shared)
    }
    meta = {
        "components": [
            {"weight": w, **{k: v for k, v in spec.meta.items() if k != "components"}}
            for spec, w in spectra
        ]
    }
    return Spectrum(fields=base.fields.copy(), values=values, columns=columns, meta=meta)


def derivative(spec: Spectrum) -> Spectrum:
    """Numerical field derivative of a spectrum, in 1/G.

    Central differences on interior points, one-sided at the ends.

    Raises:
        ValueError: For fewer than 3 points.
    """
    if spec.n_points < 3:
        raise ValueError("derivative needs at least 3 points")
    dv = np.gradient(spec.values, spec.fields)
    return Spectrum(
        fields=spec.fields.copy(),
        values=dv,
        meta={**spec.meta, "derivative": True},
    )


def find_crossings(
    system: SpinSystem,
    grid: FieldGrid,
    gap_threshold_mhz: float = 20.0,
    gap_floor_mhz: float = 1e-3,
    level_pairs: list[tuple[int, int]] | None = None,
    threads: int = 1,
) -> list[Crossing]:
    """Locate level crossings and anti-crossings along the field sweep.

    Scans the gaps between adjacent (energy-ordered) levels, reports local
    minima below ``gap_threshold_mhz`` with a parabolic refinement of the
    minimizing field, and classifies each as a true crossing when the refined
    gap falls below ``gap_floor_mhz``.

    Args:
        system: The spin system.
        grid: Field grid to scan.
        gap_threshold_mhz: Only gap minima below this value are reported.
        gap_floor_mhz: Crossing / anti-crossing classification boundary.
        level_pairs: Optional whitelist of (lower, upper) adjacent level
            indices to report.
        threads: Worker threads for the eigenvalue scan.

    Returns:
        Crossings sorted by field.
    """
    ops = SystemOperators(system)
    vectors = grid.vectors()
    chunks = [vectors[i : i + _CHUNK] for i in range(0, len(vectors), _CHUNK)]

    def run_chunk(chunk):
        return np.linalg.eigvalsh(ops.hamiltonians(chunk))

    with threadpool_limits(limits=1):
        if threads > 1 and len(chunks) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                energy_blocks = list(pool.map(run_chunk, chunks))
        else:
            energy_blocks = [run_chunk(c) for c in chunks]
    energies = np.concatenate(energy_blocks)  # (n_points, dim)
    gaps = np.diff(energies, axis=1)  # (n_points, dim - 1)
    fields = grid.fields
    out: list[Crossing] = []
    wanted = None if level_pairs is None else {tuple(p) for p in level_pairs}
    for lvl in range(gaps.shape[1]):
        if wanted is not None and (lvl, lvl + 1) not in wanted:
            continue
        g = gaps[:, lvl]
        # Strict minimum on the right, non-strict on the left so plateaus
        # report once (their leftmost sample).
        interior = np.flatnonzero((g[1:-1] <= g[:-2]) & (g[1:-1] < g[2:])) + 1
        for k in interior:
            if g[k] >= gap_threshold_mhz:
                continue
            b_ref, g_ref = _parabolic_min(fields[k - 1 : k + 2], g[k - 1 : k + 2])
            kind = "crossing" if g_ref < gap_floor_mhz else "anti-crossing"
            out.append(
                Crossing(
                    field_gauss=float(b_ref),
                    level_lo=lvl,
                    level_hi=lvl + 1,
                    min_gap_mhz=float(g_ref),
                    kind=kind,
                )
            )
    out.sort(key=lambda c: (c.field_gauss, c.level_lo))
    return out


def _parabolic_min(x3: np.ndarray, y3: np.ndarray) -> tuple[float, float]:
    """Vertex of the parabola through three points; clamped to the bracket."""
    h = x3[1] - x3[0]
    denom = y3[2] - 2.0 * y3[1] + y3[0]
    if denom <= 0.0:
        return float(x3[1]), float(y3[1])
    shift = 0.5 * h * (y3[0] - y3[2]) / denom
    shift = float(np.clip(shift, -h, h))
    y_min = y3[1] - 0.125 * (y3[0] - y3[2]) ** 2 / denom
    return float(x3[1] + shift), float(max(y_min, 0.0))
