"""Surface synthesis: integrate component data into a coordinate mesh.

The coordinate tangents are f_u = 2 Re(A(f) psi), f_v = 2 Im(A(f) psi),
where A is the frame matrix evaluated along the (unknown) surface itself,
so each grid line is an ODE in the four coordinates.  The mesh is built
by classic RK4 marching: first along the u-row through the base point,
then along every v-column.  Re-marching in the transposed order gives an
independent integrability check: for genuine solutions the two meshes
agree to integrator accuracy, for corrupted data they visibly diverge.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .algebra import Kind
from .expr import EvalError, WeierstrassData, evaluate
from .spaces import Point, SpaceModel, frame_matrix
from .weierstrass import (
    DomainGrid,
    ValidationReport,
    ValidationTolerances,
    validate,
)


class SynthesisError(Exception):
    pass


class ValidationRefusedError(SynthesisError):
    """Input data failed validation and force was not requested."""

    def __init__(self, report: ValidationReport):
        super().__init__("; ".join(report.failures()))
        self.report = report


class StepFailureError(SynthesisError):
    """Marching produced a non-finite or unevaluable state."""


MESH_CSV_COLUMNS = ("u", "v", "x", "y", "z", "t")


@dataclass
class SurfaceMesh:
    grid: DomainGrid
    nodes: np.ndarray  # (nu, nv, 4) coordinates (x, y, z, t)
    kind: Kind
    space: str
    c: float
    provenance: dict = field(default_factory=dict)

    @property
    def causal_character(self) -> str:
        """Expected character from the algebra driving the data."""
        return "spacelike" if self.kind is Kind.COMPLEX else "timelike"

    def to_csv(self, path) -> None:
        g = self.grid
        with open(path, "w", newline="") as fh:
            fh.write(f"# space: {self.space}\n")
            fh.write(f"# c: {self.c!r}\n")
            fh.write(f"# algebra: {self.kind.value}\n")
            fh.write(f"# grid: {g.u_min!r} {g.u_max!r} {g.v_min!r} {g.v_max!r} {g.nu} {g.nv} {g.u0!r} {g.v0!r}\n")
            for key, val in sorted(self.provenance.items()):
                fh.write(f"# {key}: {val}\n")
            writer = csv.writer(fh)
            writer.writerow(MESH_CSV_COLUMNS)
            u_nodes, v_nodes = g.u_nodes, g.v_nodes
            for i in range(g.nu):
                for j in range(g.nv):
                    writer.writerow(
                        [repr(float(u_nodes[i])), repr(float(v_nodes[j]))]
                        + [repr(float(x)) for x in self.nodes[i, j]]
                    )

    @classmethod
    def from_csv(cls, path) -> "SurfaceMesh":
        meta = {}
        rows = []
        with open(path, newline="") as fh:
            for line in fh:
                if line.startswith("#"):
                    key, _, val = line[1:].partition(":")
                    meta[key.strip()] = val.strip()
                    continue
                rows.append(line)
        if not rows:
            raise ValueError("mesh file has no data rows")
        reader = csv.reader(rows)
        header = next(reader)
        if tuple(header) != MESH_CSV_COLUMNS:
            raise ValueError(f"unexpected mesh columns {header}")
        for req in ("space", "c", "algebra", "grid"):
            if req not in meta:
                raise ValueError(f"mesh file missing '{req}' metadata")
        gparts = meta["grid"].split()
        grid = DomainGrid(
            float(gparts[0]), float(gparts[1]), float(gparts[2]), float(gparts[3]),
            int(gparts[4]), int(gparts[5]), float(gparts[6]), float(gparts[7]),
        )
        nodes = np.zeros((grid.nu, grid.nv, 4))
        count = 0
        for row in reader:
            if not row:
                continue
            i, j = divmod(count, grid.nv)
            if i >= grid.nu:
                raise ValueError("mesh file has more rows than the grid admits")
            nodes[i, j] = [float(x) for x in row[2:6]]
            count += 1
        if count != grid.nu * grid.nv:
            raise ValueError(
                f"mesh file truncated: expected {grid.nu * grid.nv} rows, got {count}"
            )
        kind = Kind(meta["algebra"])
        provenance = {
            k: v for k, v in meta.items() if k not in ("space", "c", "algebra", "grid")
        }
        return cls(
            grid=grid, nodes=nodes, kind=kind, space=meta["space"],
            c=float(meta["c"]), provenance=provenance,
        )


def tangent_field(
    s: SpaceModel, w: WeierstrassData, p: Point, u: float, v: float
) -> tuple[np.ndarray, np.ndarray]:
    """Coordinate tangents (f_u, f_v) at parameter (u, v) and position p."""
    psi = w.eval_components(u, v)
    A = frame_matrix(s, p)
    fu = np.zeros(4)
    fv = np.zeros(4)
    for i in range(4):
        re = im = 0.0
        for j in range(4):
            a = A[i, j]
            if a != 0.0:
                re += a * psi[j].re
                im += a * psi[j].im
        fu[i] = 2.0 * re
        fv[i] = 2.0 * im
    return fu, fv


def _rk4_path(s, w, f0, fixed, coords, direction):
    """March RK4 along one grid line.

    direction 'u': states evolve in u with v = fixed; 'v' the transpose.
    coords is the increasing-or-decreasing sequence of parameter values,
    starting at the value where f0 sits.  Yields states at every coord.
    """

    def rhs(state, s_par):
        p = Point.from_array(state)
        if direction == "u":
            fu, _ = tangent_field(s, w, p, s_par, fixed)
            return fu
        _, fv = tangent_field(s, w, p, fixed, s_par)
        return fv

    states = [np.asarray(f0, dtype=float)]
    for a, b in zip(coords[:-1], coords[1:]):
        h = b - a
        y = states[-1]
        try:
            k1 = rhs(y, a)
            k2 = rhs(y + 0.5 * h * k1, a + 0.5 * h)
            k3 = rhs(y + 0.5 * h * k2, a + 0.5 * h)
            k4 = rhs(y + h * k3, b)
        except EvalError as exc:
            raise StepFailureError(f"evaluation failed during marching: {exc}") from exc
        y_next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y_next)):
            raise StepFailureError(
                f"non-finite state at {direction} = {b!r} (fixed = {fixed!r})"
            )
        states.append(y_next)
    return states


def _march(s, w, grid: DomainGrid, f0: Point, transposed: bool) -> np.ndarray:
    u_nodes = grid.u_nodes
    v_nodes = grid.v_nodes
    i0, j0 = grid.base_index
    nodes = np.zeros((grid.nu, grid.nv, 4))
    start = f0.as_array()

    def line(direction, fixed, coords, state0):
        return _rk4_path(s, w, state0, fixed, coords, direction)

    if not transposed:
        # base row in u through (i0, j0), then each v-column
        right = line("u", float(v_nodes[j0]), u_nodes[i0:], start)
        left = line("u", float(v_nodes[j0]), u_nodes[i0::-1], start)
        for k, st in enumerate(right):
            nodes[i0 + k, j0] = st
        for k, st in enumerate(left):
            nodes[i0 - k, j0] = st
        for i in range(grid.nu):
            up = line("v", float(u_nodes[i]), v_nodes[j0:], nodes[i, j0])
            down = line("v", float(u_nodes[i]), v_nodes[j0::-1], nodes[i, j0])
            for k, st in enumerate(up):
                nodes[i, j0 + k] = st
            for k, st in enumerate(down):
                nodes[i, j0 - k] = st
    else:
        up = line("v", float(u_nodes[i0]), v_nodes[j0:], start)
        down = line("v", float(u_nodes[i0]), v_nodes[j0::-1], start)
        for k, st in enumerate(up):
            nodes[i0, j0 + k] = st
        for k, st in enumerate(down):
            nodes[i0, j0 - k] = st
        for j in range(grid.nv):
            right = line("u", float(v_nodes[j]), u_nodes[i0:], nodes[i0, j])
            left = line("u", float(v_nodes[j]), u_nodes[i0::-1], nodes[i0, j])
            for k, st in enumerate(right):
                nodes[i0 + k, j] = st
            for k, st in enumerate(left):
                nodes[i0 - k, j] = st
    return nodes


def synthesize(
    s: SpaceModel,
    w: WeierstrassData,
    grid: DomainGrid,
    f0: Point | None = None,
    report: ValidationReport | None = None,
    force: bool = False,
    tolerances: ValidationTolerances | None = None,
) -> SurfaceMesh:
    """Build the surface mesh from validated component data.

    Unless force is set, the data is validated first (or a precomputed
    report is honored) and refused on failure.
    """
    f0 = f0 or Point(0.0, 0.0, 0.0, 0.0)
    if not force:
        if report is None:
            report = validate(s, w, grid, tolerances)
        if not report.passed:
            raise ValidationRefusedError(report)
    nodes = _march(s, w, grid, f0, transposed=False)
    return SurfaceMesh(
        grid=grid,
        nodes=nodes,
        kind=w.kind,
        space=s.name,
        c=s.c,
        provenance={"f0": tuple(f0.as_array())},
    )


def path_independence(
    s: SpaceModel,
    w: WeierstrassData,
    grid: DomainGrid,
    f0: Point | None = None,
    force: bool = True,
) -> float:
    """Max node-wise coordinate gap between the two marching orders.

    Small values certify that the first-order system is integrable, i.e.
    that the mesh does not depend on the integration path.  Defaults to
    force=True since it is itself a diagnostic.
    """
    f0 = f0 or Point(0.0, 0.0, 0.0, 0.0)
    a = _march(s, w, grid, f0, transposed=False)
    b = _march(s, w, grid, f0, transposed=True)
    return float(np.abs(a - b).max())


def mesh_tangent_consistency(s: SpaceModel, w: WeierstrassData, mesh: SurfaceMesh) -> float:
    """Sup gap between central-difference mesh tangents and tangent_field."""
    g = mesh.grid
    u_nodes, v_nodes = g.u_nodes, g.v_nodes
    du = u_nodes[1] - u_nodes[0]
    dv = v_nodes[1] - v_nodes[0]
    worst = 0.0
    for i in range(1, g.nu - 1):
        for j in range(1, g.nv - 1):
            fu_fd = (mesh.nodes[i + 1, j] - mesh.nodes[i - 1, j]) / (2.0 * du)
            fv_fd = (mesh.nodes[i, j + 1] - mesh.nodes[i, j - 1]) / (2.0 * dv)
            fu, fv = tangent_field(
                s, w, Point.from_array(mesh.nodes[i, j]), float(u_nodes[i]), float(v_nodes[j])
            )
            worst = max(worst, float(np.abs(fu_fd - fu).max()), float(np.abs(fv_fd - fv).max()))
    return worst
