"""Built-in run configurations for the standard defect-center systems.

Magnetic parameters (MHz, dimensionless g): NV-: g_par 2.0029, g_perp 2.0031,
D 2872, 14N hyperfine (-2.2, -2.7), quadrupole -4.8.  P1: isotropic g 2.0023,
14N hyperfine (114, 81), quadrupole -4.8, dipolar coupling to the NV- 1 MHz.
13C options: 100 isotropic at the NV-, (340, 140) at the C1 position of the
P1.  Polarization degree 1 for centers parallel to the field, 0.7 for tilted
ones.
"""

from .config import CenterConfig, GridConfig, MemberConfig, NucleusConfig, RunConfig, SystemConfig

_TETRA = ("z", "tetrahedral_0", "tetrahedral_120", "tetrahedral_240")


def _nv_center(alpha: float, axis="z", with_c13: bool = False) -> CenterConfig:
    nuclei = [
        NucleusConfig(spin=1, a_parallel_mhz=-2.2, a_perp_mhz=-2.7, axis=axis, q_mhz=-4.8)
    ]
    if with_c13:
        nuclei.append(NucleusConfig(spin=0.5, a_parallel_mhz=100.0, a_perp_mhz=100.0, axis=axis))
    return CenterConfig(
        spin=1,
        g_parallel=2.0029,
        g_perp=2.0031,
        d_mhz=2872.0,
        axis=axis,
        alpha=alpha,
        nuclei=nuclei,
    )


def _p1_center(axis, with_c13: bool = False) -> CenterConfig:
    nuclei = [
        NucleusConfig(spin=1, a_parallel_mhz=114.0, a_perp_mhz=81.0, axis=axis, q_mhz=-4.8)
    ]
    if with_c13:
        nuclei.append(NucleusConfig(spin=0.5, a_parallel_mhz=340.0, a_perp_mhz=140.0, axis=axis))
    return CenterConfig(
        spin=0.5, g_parallel=2.0023, g_perp=2.0023, axis=axis, nuclei=nuclei
    )


def _nv_isolated_parallel() -> RunConfig:
    return RunConfig(
        label="nv_isolated_parallel",
        ensemble=[MemberConfig(system=SystemConfig(centers=[_nv_center(alpha=1.0)]))],
        grid=GridConfig(direction="z"),
    )


def _nv_isolated_tilted() -> RunConfig:
    # The frame is tied to the center axis, so the tilt goes into the field
    # direction; the tilted orientation absorbs less pump light, hence 0.7.
    return RunConfig(
        label="nv_isolated_tilted",
        ensemble=[MemberConfig(system=SystemConfig(centers=[_nv_center(alpha=0.7)]))],
        grid=GridConfig(direction="tetrahedral_0"),
    )


def _nv_p1(with_c13: bool) -> RunConfig:
    members = [
        MemberConfig(
            system=SystemConfig(
                centers=[_nv_center(alpha=1.0), _p1_center(axis, with_c13=with_c13)],
                d_dd_mhz=1.0,
                n12="z",
            ),
            weight=0.25,
        )
        for axis in _TETRA
    ]
    return RunConfig(
        label="nv_p1_c13" if with_c13 else "nv_p1",
        ensemble=members,
        grid=GridConfig(direction="z"),
    )


def _nv_nv(with_c13: bool) -> RunConfig:
    members = [
        MemberConfig(
            system=SystemConfig(
                centers=[
                    _nv_center(alpha=1.0, with_c13=with_c13),
                    _nv_center(alpha=0.7, axis=axis),
                ],
                d_dd_mhz=1.0,
                n12="z",
            ),
            weight=1.0 / 3.0,
        )
        for axis in _TETRA[1:]
    ]
    return RunConfig(
        label="nv_nv_c13" if with_c13 else "nv_nv",
        ensemble=members,
        grid=GridConfig(direction="z"),
        outputs=["spectrum", "per_center"],
    )


_BUILDERS = {
    "nv_isolated_parallel": _nv_isolated_parallel,
    "nv_isolated_tilted": _nv_isolated_tilted,
    "nv_p1": lambda: _nv_p1(with_c13=False),
    "nv_p1_c13": lambda: _nv_p1(with_c13=True),
    "nv_nv": lambda: _nv_nv(with_c13=False),
    "nv_nv_c13": lambda: _nv_nv(with_c13=True),
}


def preset_names() -> list[str]:
    return sorted(_BUILDERS)


def load_preset(name: str) -> RunConfig:
    """Fully populated run configuration for a named standard system.

    Raises:
        KeyError: For an unknown preset name.
    """
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise KeyError(
            f"unknown preset {name!r}; available: {', '.join(preset_names())}"
        ) from None
    return builder()
