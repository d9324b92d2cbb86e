"""Parameter sweeps over temperature, field, and pressure.

Every sweep row carries the closed-form coherence next to a brute-force
oracle value computed by diagonalizing the Hamiltonian; the two must agree
to 1e-10 or the sweep aborts. Tables serialize to CSV or JSON with a
metadata block, deterministically enough to be golden-file tested.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

import numpy as np

from .constants import TOOL_VERSION
from .core import Basis, DimerParams, build_hamiltonian, gibbs_state, rotate_to_sx
from .errors import DataError, NumericError
from .models import coherence_longitudinal, coherence_transverse, partition_function
from .quantifiers import l1_coherence

# Closed form and oracle are independent routes to the same number; beyond
# this gap one of them is wrong.
ORACLE_ATOL = 1e-10

_LEVEL_ORDER = ("singlet", "triplet_plus", "triplet_zero", "triplet_minus")


class SweepVariable(Enum):
    """Which axis a sweep walks along."""

    TEMPERATURE = "temperature"
    FIELD_LONGITUDINAL = "field_longitudinal"
    FIELD_TRANSVERSE = "field_transverse"
    PRESSURE = "pressure"


@dataclass(frozen=True)
class SweepSpec:
    """A linear grid over one variable with everything else held fixed.

    `fixed` supplies the held parameters; the swept field of it is ignored.
    Field sweeps tie the variable to the measurement basis: longitudinal
    reports S_z coherence, transverse S_x.
    """

    variable: SweepVariable
    minimum: float
    maximum: float
    steps: int
    fixed: DimerParams
    basis: Basis = Basis.SZ

    def __post_init__(self) -> None:
        if not (math.isfinite(self.minimum) and math.isfinite(self.maximum)):
            raise ValueError("sweep range must be finite")
        if not self.minimum < self.maximum:
            raise ValueError("sweep range must have min < max")
        if self.steps < 2:
            raise ValueError("sweep needs at least 2 steps")
        if self.variable is SweepVariable.TEMPERATURE and self.minimum <= 0.0:
            raise ValueError("temperatures must be > 0 K")
        if self.variable is SweepVariable.FIELD_LONGITUDINAL and self.basis is not Basis.SZ:
            raise ValueError("longitudinal field sweep reports the S_z basis")
        if self.variable is SweepVariable.FIELD_TRANSVERSE and self.basis is not Basis.SX:
            raise ValueError("transverse field sweep reports the S_x basis")
        if self.variable in (
            SweepVariable.FIELD_LONGITUDINAL,
            SweepVariable.FIELD_TRANSVERSE,
        ) and self.minimum < 0.0:
            raise ValueError("field sweep range must start at B >= 0")


@dataclass(frozen=True)
class PressureTable:
    """Tabulated exchange coupling versus hydrostatic pressure."""

    pressures_gpa: tuple[float, ...]
    j_values_kelvin: tuple[float, ...]
    source: str = ""

    def __post_init__(self) -> None:
        if len(self.pressures_gpa) != len(self.j_values_kelvin):
            raise ValueError("pressure and J columns differ in length")
        if len(self.pressures_gpa) < 2:
            raise ValueError("need at least 2 rows to interpolate")
        values = self.pressures_gpa + self.j_values_kelvin
        if not all(math.isfinite(v) for v in values):
            raise ValueError("pressure table entries must be finite")
        if not all(
            a < b for a, b in zip(self.pressures_gpa, self.pressures_gpa[1:])
        ):
            raise DataError("pressures not increasing")

    @classmethod
    def from_csv(cls, path: str | Path) -> "PressureTable":
        """Load `P_GPa,J_kelvin` rows; same dialect as the ingest contract."""
        header, rows = _read_two_column_csv(path, "P_GPa,J_kelvin")
        del header
        return cls(
            pressures_gpa=tuple(r[0] for r in rows),
            j_values_kelvin=tuple(r[1] for r in rows),
            source=str(path),
        )


def _read_two_column_csv(
    path: str | Path, expected_header: str
) -> tuple[str, list[tuple[float, float]]]:
    """Shared strict reader: `#` comments, exact header, two floats per row."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    header: str | None = None
    rows: list[tuple[float, float]] = []
    row_index = 0
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if header is None:
            if line != expected_header:
                raise DataError(
                    f"malformed header: expected {expected_header!r}, got {line!r}"
                )
            header = line
            continue
        row_index += 1
        fields = line.split(",")
        if len(fields) != 2:
            raise DataError(f"row {row_index}: expected 2 fields, got {line!r}")
        try:
            a, b = float(fields[0]), float(fields[1])
        except ValueError as exc:
            raise DataError(f"row {row_index}: could not parse {line!r}") from exc
        if not (math.isfinite(a) and math.isfinite(b)):
            raise DataError(f"row {row_index}: non-finite value in {line!r}")
        rows.append((a, b))
    if header is None:
        raise DataError(f"malformed header: {path} has no header line")
    return header, rows


def pressure_to_j(table: PressureTable, pressure_gpa: float) -> float:
    """Piecewise-linear J/k_B at the given pressure; exact at the nodes."""
    lo, hi = table.pressures_gpa[0], table.pressures_gpa[-1]
    if not lo <= pressure_gpa <= hi:
        raise DataError(
            f"extrapolation refused: pressure {pressure_gpa} GPa outside "
            f"[{lo}, {hi}] GPa"
        )
    return float(
        np.interp(pressure_gpa, table.pressures_gpa, table.j_values_kelvin)
    )


@dataclass(frozen=True)
class SweepTable:
    """Rectangular numeric grid plus string annotation columns.

    Non-finite numeric entries are only allowed on rows whose `flag`
    annotation is nonempty; everything else must be finite.
    """

    column_names: tuple[str, ...]
    values: np.ndarray
    annotations: dict[str, tuple[str, ...]]
    metadata: dict[str, str]

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2 or values.shape[1] != len(self.column_names):
            raise ValueError("values must be rows x named columns")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        n = values.shape[0]
        for name, column in self.annotations.items():
            if len(column) != n:
                raise ValueError(f"annotation {name!r} length != row count")
        if any(not isinstance(v, str) for v in self.metadata.values()):
            raise ValueError("metadata values must be strings")
        flags = self.annotations.get("flag", ("",) * n)
        bad = ~np.isfinite(values).all(axis=1)
        if any(bad[i] and not flags[i] for i in range(n)):
            raise ValueError("non-finite values in unflagged rows")

    @property
    def n_rows(self) -> int:
        return int(self.values.shape[0])

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.column_names.index(name)]


def _ground_state_label(params: DimerParams) -> str:
    """Name the lowest level(s); exact ties join with '+'."""
    j, h = params.j_over_kb, params.zeeman_kelvin
    levels = {
        "singlet": 0.75 * j,
        "triplet_plus": -0.25 * j - h,
        "triplet_zero": -0.25 * j,
        "triplet_minus": -0.25 * j + h,
    }
    e_min = min(levels.values())
    tol = 1e-12 * max(1.0, abs(e_min))
    return "+".join(n for n in _LEVEL_ORDER if levels[n] <= e_min + tol)


def _coherence_pair(params: DimerParams, basis: Basis) -> tuple[float, float]:
    """Closed-form coherence and the brute-force oracle value, same basis."""
    if basis is Basis.SZ:
        closed = coherence_longitudinal(params).value
    else:
        closed = coherence_transverse(params).value
    rho = gibbs_state(build_hamiltonian(params), params.temperature)
    if basis is Basis.SX:
        rho = rotate_to_sx(rho)
    return closed, l1_coherence(rho).value


def run_sweep(
    spec: SweepSpec, pressure_table: PressureTable | None = None
) -> SweepTable:
    """Evaluate the grid; every row self-verifies closed form vs oracle."""
    if spec.variable is SweepVariable.PRESSURE and pressure_table is None:
        raise ValueError("pressure sweep requires a pressure table")
    grid = np.linspace(spec.minimum, spec.maximum, spec.steps)

    c_name = "C_z" if spec.basis is Basis.SZ else "C_x"
    swept_name = {
        SweepVariable.TEMPERATURE: "T_kelvin",
        SweepVariable.FIELD_LONGITUDINAL: "B_tesla",
        SweepVariable.FIELD_TRANSVERSE: "B_tesla",
        SweepVariable.PRESSURE: "P_GPa",
    }[spec.variable]
    is_pressure = spec.variable is SweepVariable.PRESSURE

    columns: list[list[float]] = [[], [], [], []]
    j_column: list[float] = []
    ground: list[str] = []
    regime: list[str] = []
    for value in grid:
        value = float(value)
        if spec.variable is SweepVariable.TEMPERATURE:
            params = replace(spec.fixed, temperature=value)
        elif is_pressure:
            j = pressure_to_j(pressure_table, value)
            params = replace(spec.fixed, j_over_kb=j)
            j_column.append(j)
            if j < 0.0:
                regime.append("antiferromagnetic")
            elif j > 0.0:
                regime.append("ferromagnetic")
            else:
                regime.append("uncoupled")
        else:
            params = replace(spec.fixed, b_field=value)
        closed, oracle = _coherence_pair(params, spec.basis)
        if abs(closed - oracle) > ORACLE_ATOL:
            raise NumericError(
                f"closed form and oracle disagree at {swept_name}={value!r}: "
                f"{closed!r} vs {oracle!r}"
            )
        columns[0].append(value)
        # Saturated values can land a few ulp past the exact bound of 3;
        # clamp after the agreement check so emitted tables stay physical.
        columns[1].append(min(max(closed, 0.0), 3.0))
        columns[2].append(min(max(oracle, 0.0), 3.0))
        columns[3].append(partition_function(params))
        ground.append(_ground_state_label(params))

    names = [swept_name, c_name, "C_oracle", "Z"]
    data = [columns[0], columns[1], columns[2], columns[3]]
    annotations: dict[str, tuple[str, ...]] = {"ground_state": tuple(ground)}
    if is_pressure:
        names.insert(1, "J_kelvin")
        data.insert(1, j_column)
        annotations["regime"] = tuple(regime)

    metadata = {
        "variable": spec.variable.value,
        "basis": spec.basis.value,
        "g": repr(spec.fixed.g),
        "tool_version": TOOL_VERSION,
    }
    if not is_pressure:
        metadata["j_over_kb"] = repr(spec.fixed.j_over_kb)
    else:
        metadata["pressure_table"] = pressure_table.source
    if spec.variable is not SweepVariable.TEMPERATURE:
        metadata["t_kelvin"] = repr(spec.fixed.temperature)
    if spec.variable in (SweepVariable.TEMPERATURE, SweepVariable.PRESSURE):
        metadata["b_tesla"] = repr(spec.fixed.b_field)

    return SweepTable(
        column_names=tuple(names),
        values=np.array(data, dtype=float).T,
        annotations=annotations,
        metadata=metadata,
    )


def _fmt(x: float) -> str:
    # repr of a Python float is the shortest string that round-trips, which
    # is what makes the emitted files bit-stable.
    return repr(float(x))


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def render_table(table: SweepTable, format: str, timestamp: str | None = None) -> str:
    """Serialize a table to CSV or JSON text."""
    meta = dict(table.metadata)
    meta["timestamp"] = timestamp if timestamp is not None else _utc_now()
    if format == "csv":
        lines = [f"# {k} = {meta[k]}" for k in sorted(meta)]
        ann_names = list(table.annotations)
        lines.append(",".join(list(table.column_names) + ann_names))
        for i in range(table.n_rows):
            cells = [_fmt(v) for v in table.values[i]]
            cells += [table.annotations[a][i] for a in ann_names]
            lines.append(",".join(cells))
        return "\n".join(lines) + "\n"
    if format == "json":
        payload = {
            "metadata": meta,
            "column_order": list(table.column_names),
            "columns": {
                name: [
                    float(v) if math.isfinite(v) else None
                    for v in table.column(name)
                ]
                for name in table.column_names
            },
            "annotation_order": list(table.annotations),
            "annotations": {k: list(v) for k, v in table.annotations.items()},
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    raise ValueError(f"unknown format {format!r}")


def emit(
    table: SweepTable,
    format: str,
    path: str | Path,
    timestamp: str | None = None,
) -> None:
    """Write the rendered table; I/O failures carry the path."""
    text = render_table(table, format, timestamp)
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def read_table_csv(path: str | Path) -> SweepTable:
    """Parse a table emitted as CSV back into a SweepTable."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    metadata: dict[str, str] = {}
    header: list[str] | None = None
    raw_rows: list[list[str]] = []
    for line in text.splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition(" = ")
            metadata[key] = value
            continue
        if header is None:
            header = line.split(",")
            continue
        raw_rows.append(line.split(","))
    if header is None:
        raise DataError(f"malformed header: {path} has no header line")

    def as_float_column(k: int) -> list[float] | None:
        out = []
        for row in raw_rows:
            try:
                out.append(float(row[k]))
            except ValueError:
                return None
        return out

    numeric: dict[str, list[float]] = {}
    annotations: dict[str, tuple[str, ...]] = {}
    column_names: list[str] = []
    for k, name in enumerate(header):
        parsed = as_float_column(k)
        if parsed is not None:
            column_names.append(name)
            numeric[name] = parsed
        else:
            annotations[name] = tuple(row[k] for row in raw_rows)
    values = np.array([numeric[n] for n in column_names], dtype=float).T
    return SweepTable(tuple(column_names), values, annotations, metadata)


def read_table_json(path: str | Path) -> SweepTable:
    """Parse a table emitted as JSON back into a SweepTable."""
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    names = tuple(payload["column_order"])
    values = np.array(
        [
            [math.nan if v is None else float(v) for v in payload["columns"][n]]
            for n in names
        ],
        dtype=float,
    ).T
    annotations = {
        k: tuple(payload["annotations"][k]) for k in payload["annotation_order"]
    }
    return SweepTable(names, values, annotations, dict(payload["metadata"]))
