"""Discrete sample paths, driver simulation, and bundle serialization.

Paths live on a shared strictly increasing grid starting at time 0 with
value 0 (integrals never see an initial offset).  Simulation is
counter-based: the generator for (master seed, path index, driver index)
is derived by key spawning, so any subset of paths can be produced in any
order, on any number of threads, with identical results.
"""

from __future__ import annotations

import csv
import io
import struct
import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

BINARY_MAGIC = b"ITOPATH1"


class GridResolutionWarning(UserWarning):
    """Two jumps landed in one grid cell; refine the grid."""


class SamplePath:
    """Values on a shared time grid; grid[0] = 0 and values[0] = 0."""

    __slots__ = ("grid", "values")

    def __init__(self, grid, values, validate: bool = True):
        grid = np.asarray(grid, dtype=np.float64)
        values = np.asarray(values, dtype=np.float64)
        if validate:
            if grid.ndim != 1 or values.shape != grid.shape:
                raise ValueError("grid and values must be equal-length 1-D arrays")
            if len(grid) < 2:
                raise ValueError("need at least two grid points")
            if grid[0] != 0.0:
                raise ValueError("grid must start at time 0")
            if not np.all(np.diff(grid) > 0):
                raise ValueError("grid must be strictly increasing")
            if values[0] != 0.0:
                raise ValueError("paths are normalized to start at 0")
        self.grid = grid
        self.values = values

    @property
    def n_steps(self) -> int:
        return len(self.grid) - 1

    @property
    def terminal(self) -> float:
        return float(self.values[-1])

    def increments(self) -> np.ndarray:
        return np.diff(self.values)

    def same_grid(self, other: "SamplePath") -> bool:
        return self.grid.shape == other.grid.shape and np.array_equal(
            self.grid, other.grid
        )

    def __len__(self) -> int:
        return len(self.grid)

    def __repr__(self) -> str:
        return (
            f"SamplePath(T={self.grid[-1]:g}, steps={self.n_steps}, "
            f"terminal={self.terminal:g})"
        )


def make_grid(horizon: float, steps: int) -> np.ndarray:
    """Uniform grid 0 = t_0 < ... < t_steps = horizon."""
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    if steps < 1:
        raise ValueError("need at least one step")
    return np.linspace(0.0, float(horizon), steps + 1)


@dataclass(frozen=True)
class DriverSpec:
    """What to simulate for one driver letter."""

    kind: str
    sigma: float = 1.0
    rate: float = 1.0
    slope: float = 1.0
    table: tuple[float, ...] | None = None

    KINDS = ("brownian", "poisson", "linear_drift", "table")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise ValueError(f"unknown driver kind {self.kind!r}")
        if self.kind == "brownian" and self.sigma < 0:
            raise ValueError("sigma must be >= 0")
        if self.kind == "poisson" and self.rate <= 0:
            raise ValueError("rate must be > 0")
        if self.kind == "table" and self.table is None:
            raise ValueError("table driver needs values")

    @classmethod
    def brownian(cls, sigma: float = 1.0) -> "DriverSpec":
        return cls(kind="brownian", sigma=sigma)

    @classmethod
    def poisson(cls, rate: float = 1.0) -> "DriverSpec":
        return cls(kind="poisson", rate=rate)

    @classmethod
    def linear_drift(cls, slope: float = 1.0) -> "DriverSpec":
        return cls(kind="linear_drift", slope=slope)

    @classmethod
    def from_table(cls, values: Sequence[float]) -> "DriverSpec":
        return cls(kind="table", table=tuple(float(v) for v in values))


def rng_for(seed: int, path_index: int = 0, driver_index: int = 0) -> np.random.Generator:
    """Generator keyed by (seed, path, driver), independent of call order."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(path_index, driver_index))
    return np.random.default_rng(ss)


def simulate(
    spec: DriverSpec,
    grid: np.ndarray,
    seed: int = 0,
    path_index: int = 0,
    driver_index: int = 0,
) -> SamplePath:
    """One path of the given driver on the grid."""
    grid = np.asarray(grid, dtype=np.float64)
    dt = np.diff(grid)
    if spec.kind == "linear_drift":
        return SamplePath(grid, spec.slope * grid)
    if spec.kind == "table":
        return SamplePath(grid, np.asarray(spec.table, dtype=np.float64))
    rng = rng_for(seed, path_index, driver_index)
    if spec.kind == "brownian":
        inc = rng.normal(0.0, 1.0, size=len(dt)) * spec.sigma * np.sqrt(dt)
    else:  # poisson
        counts = rng.poisson(spec.rate * dt)
        if np.any(counts > 1):
            warnings.warn(
                "multiple jumps in one grid cell; the unit-jump identity "
                "needs a finer grid",
                GridResolutionWarning,
                stacklevel=2,
            )
        inc = counts.astype(np.float64)
    values = np.concatenate(([0.0], np.cumsum(inc)))
    return SamplePath(grid, values)


def discrete_bracket(x: SamplePath, y: SamplePath) -> SamplePath:
    """Running sum of increment products: the grid quadratic covariation.

    Satisfies the discrete product rule x*y = int x dy + int y dx + [x, y]
    identically (telescoping), which is what makes every symbolic identity
    here exact pathwise.
    """
    if not x.same_grid(y):
        raise ValueError("paths must share a grid")
    inc = x.increments() * y.increments()
    return SamplePath(x.grid, np.concatenate(([0.0], np.cumsum(inc))), validate=False)


class PathBundle:
    """Several drivers on one shared grid, keyed by positive letter."""

    __slots__ = ("grid", "paths")

    def __init__(self, paths: Mapping[int, SamplePath], grid=None):
        self.paths = dict(paths)
        if not self.paths:
            raise ValueError("a bundle needs at least one path")
        if grid is None:
            grid = next(iter(self.paths.values())).grid
        self.grid = np.asarray(grid, dtype=np.float64)
        for letter, p in self.paths.items():
            if not isinstance(letter, int) or letter < 1:
                raise ValueError(f"letters are positive integers, got {letter!r}")
            if not np.array_equal(p.grid, self.grid):
                raise ValueError(f"path for letter {letter} is on another grid")

    def letters(self) -> list[int]:
        return sorted(self.paths)

    def __getitem__(self, letter: int) -> SamplePath:
        return self.paths[letter]

    def __contains__(self, letter: int) -> bool:
        return letter in self.paths


def simulate_bundle(
    specs: Mapping[int, DriverSpec],
    grid: np.ndarray,
    seed: int = 0,
    path_index: int = 0,
) -> PathBundle:
    """Simulate one path per letter; the letter doubles as driver index."""
    paths = {
        letter: simulate(spec, grid, seed, path_index, driver_index=letter)
        for letter, spec in specs.items()
    }
    return PathBundle(paths, grid)


# -- serialization ------------------------------------------------------------


def bundle_to_csv(bundle: PathBundle) -> str:
    """Time column then one column per letter, headers 't' and 'x<letter>'."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    letters = bundle.letters()
    writer.writerow(["t"] + [f"x{letter}" for letter in letters])
    cols = [bundle.grid] + [bundle.paths[l].values for l in letters]
    for row in zip(*cols):
        writer.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def bundle_from_csv(text: str) -> PathBundle:
    rows = list(csv.reader(io.StringIO(text)))
    header = rows[0]
    if not header or header[0] != "t":
        raise ValueError("first CSV column must be 't'")
    letters = []
    for name in header[1:]:
        if not name.startswith("x") or not name[1:].isdigit():
            raise ValueError(f"bad driver column {name!r}")
        letters.append(int(name[1:]))
    data = np.array([[float(v) for v in row] for row in rows[1:]])
    grid = data[:, 0]
    paths = {
        letter: SamplePath(grid, data[:, i + 1])
        for i, letter in enumerate(letters)
    }
    return PathBundle(paths, grid)


def bundle_to_binary(bundle: PathBundle) -> bytes:
    """Magic, row/driver counts and letters (little-endian uint64), then the
    float64 matrix (time column first) row-major, little-endian."""
    letters = bundle.letters()
    rows = len(bundle.grid)
    out = [BINARY_MAGIC]
    out.append(struct.pack("<QQ", rows, len(letters)))
    out.append(struct.pack(f"<{len(letters)}Q", *letters) if letters else b"")
    matrix = np.column_stack(
        [bundle.grid] + [bundle.paths[l].values for l in letters]
    ).astype("<f8")
    out.append(matrix.tobytes(order="C"))
    return b"".join(out)


def bundle_from_binary(blob: bytes) -> PathBundle:
    if blob[:8] != BINARY_MAGIC:
        raise ValueError("not a path-bundle binary (bad magic)")
    rows, n_drivers = struct.unpack_from("<QQ", blob, 8)
    offset = 24
    letters = list(struct.unpack_from(f"<{n_drivers}Q", blob, offset))
    offset += 8 * n_drivers
    count = rows * (1 + n_drivers)
    matrix = np.frombuffer(blob, dtype="<f8", count=count, offset=offset)
    matrix = matrix.reshape(rows, 1 + n_drivers)
    grid = matrix[:, 0].copy()
    paths = {
        letter: SamplePath(grid, matrix[:, i + 1].copy())
        for i, letter in enumerate(letters)
    }
    return PathBundle(paths, grid)


def write_bundle(path, bundle: PathBundle, binary: bool | None = None) -> None:
    """Write CSV or binary, inferred from a .bin/.itopath suffix by default."""
    if binary is None:
        binary = str(path).endswith((".bin", ".itopath"))
    if binary:
        with open(path, "wb") as fh:
            fh.write(bundle_to_binary(bundle))
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(bundle_to_csv(bundle))


def read_bundle(path) -> PathBundle:
    with open(path, "rb") as fh:
        head = fh.read(8)
        rest = fh.read()
    if head == BINARY_MAGIC:
        return bundle_from_binary(head + rest)
    return bundle_from_csv((head + rest).decode("utf-8"))
