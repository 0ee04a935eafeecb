"""Column-oriented text output of spectra and crossing tables.

Files are tab-separated with '#'-prefixed header lines carrying the full run
metadata, including the configuration as a single JSON line so a written file
can be traced back to an equivalent RunConfig.  No timestamps: identical runs
produce byte-identical files.
"""

import json

import numpy as np

from .config import RunConfig
from .spectrum import Crossing, Spectrum

_FMT = "{:.12g}"


def write_spectrum(spec: Spectrum, path: str, config: RunConfig | None = None) -> None:
    """Write a spectrum as TSV with metadata headers.

    Args:
        spec: Spectrum (primary trace plus any extra columns).
        path: Output file path.
        config: Originating run configuration, embedded for round-tripping.

    Raises:
        OSError: On I/O failure (message carries the path).
    """
    lines = _render_spectrum(spec, config)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write spectrum to {path!r}: {exc}") from exc


def render_spectrum(spec: Spectrum, config: RunConfig | None = None) -> str:
    """The exact file content ``write_spectrum`` would produce."""
    return "\n".join(_render_spectrum(spec, config)) + "\n"


def _render_spectrum(spec: Spectrum, config: RunConfig | None) -> list[str]:
    names = ["b0_gauss", "rho00"] + list(spec.columns)
    lines = ["# lacspec spectrum"]
    if config is not None:
        lines.append(f"# config_sha256: {config.sha256()}")
        lines.append(f"# config_json: {config.canonical_json()}")
    for key in sorted(spec.meta):
        lines.append(f"# {key}: {json.dumps(spec.meta[key])}")
    lines.append("# columns: " + "\t".join(names))
    cols = [spec.fields, spec.values] + [spec.columns[n] for n in spec.columns]
    for row in zip(*cols):
        lines.append("\t".join(_FMT.format(x) for x in row))
    return lines


def read_spectrum(path: str) -> tuple[Spectrum, RunConfig | None]:
    """Read back a spectrum file written by ``write_spectrum``.

    Returns:
        The spectrum (header metadata in ``meta``) and the embedded run
        configuration, if one was written.
    """
    meta: dict = {}
    names: list[str] = []
    rows: list[list[float]] = []
    config = None
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if ":" not in body:
                    continue
                key, _, value = body.partition(":")
                key, value = key.strip(), value.strip()
                if key == "config_json":
                    config = RunConfig.model_validate_json(value)
                elif key == "columns":
                    names = value.split("\t")
                elif key != "lacspec spectrum":
                    try:
                        meta[key] = json.loads(value)
                    except json.JSONDecodeError:
                        meta[key] = value
            else:
                rows.append([float(x) for x in line.split("\t")])
    if not names or not rows:
        raise ValueError(f"{path!r} is not a lacspec spectrum file")
    data = np.array(rows)
    columns = {name: data[:, i] for i, name in enumerate(names) if i >= 2}
    spec = Spectrum(fields=data[:, 0], values=data[:, 1], columns=columns, meta=meta)
    return spec, config


def write_crossings(records: list[tuple[int, Crossing]], path: str) -> None:
    """Write a crossing table: one row per (ensemble member, crossing)."""
    lines = [
        "# lacspec crossings",
        "# columns: member\tfield_gauss\tlevel_lo\tlevel_hi\tmin_gap_mhz\tkind",
    ]
    for member, c in records:
        lines.append(
            f"{member}\t{_FMT.format(c.field_gauss)}\t{c.level_lo}\t{c.level_hi}"
            f"\t{_FMT.format(c.min_gap_mhz)}\t{c.kind}"
        )
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise OSError(f"cannot write crossings to {path!r}: {exc}") from exc
