"""A-posteriori verification of synthesized meshes.

Everything here works from mesh coordinates, the coordinate metric, and
the finite-difference Christoffel oracle only; the symbolic derivatives
used during validation and synthesis never enter.  This makes the module
an end-to-end independent check of the whole pipeline: sign-convention
bugs that are self-consistent upstream show up here as conformality
defects or non-vanishing tension.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .algebra import Kind
from .expr import WeierstrassData
from .spaces import Point, SpaceModel, christoffel_at, metric_at
from .synthesis import SurfaceMesh
from .weierstrass import condition_i

DEGENERACY_BAND_SCALE = 1e-10


@dataclass(frozen=True)
class PullbackSample:
    """First fundamental form entries at one node."""

    E: float
    F: float
    G: float


def causal_character(p: PullbackSample, band_scale: float = DEGENERACY_BAND_SCALE) -> str:
    det = p.E * p.G - p.F * p.F
    band = band_scale * (1.0 + p.E * p.E + p.G * p.G)
    if abs(det) <= band:
        return "degenerate"
    return "timelike" if det < 0.0 else "spacelike"


def _fd_tangents(mesh: SurfaceMesh, i: int, j: int) -> tuple[np.ndarray, np.ndarray]:
    g = mesh.grid
    du = (g.u_max - g.u_min) / (g.nu - 1)
    dv = (g.v_max - g.v_min) / (g.nv - 1)
    n = mesh.nodes
    if i == 0:
        fu = (n[1, j] - n[0, j]) / du
    elif i == g.nu - 1:
        fu = (n[i, j] - n[i - 1, j]) / du
    else:
        fu = (n[i + 1, j] - n[i - 1, j]) / (2.0 * du)
    if j == 0:
        fv = (n[i, 1] - n[i, 0]) / dv
    elif j == g.nv - 1:
        fv = (n[i, j] - n[i, j - 1]) / dv
    else:
        fv = (n[i, j + 1] - n[i, j - 1]) / (2.0 * dv)
    return fu, fv


def pullback(s: SpaceModel, mesh: SurfaceMesh) -> np.ndarray:
    """Per-node (E, F, G) array of shape (nu, nv, 3).

    Central differences in the interior, one-sided on the boundary.
    """
    g = mesh.grid
    out = np.zeros((g.nu, g.nv, 3))
    for i in range(g.nu):
        for j in range(g.nv):
            fu, fv = _fd_tangents(mesh, i, j)
            gm = metric_at(s, Point.from_array(mesh.nodes[i, j]))
            out[i, j, 0] = fu @ gm @ fu
            out[i, j, 1] = fu @ gm @ fv
            out[i, j, 2] = fv @ gm @ fv
    return out


def tension_residual(s: SpaceModel, mesh: SurfaceMesh) -> np.ndarray:
    """Per-node coordinate tension field, NaN on the boundary ring.

    Spacelike (complex) surfaces use the elliptic combination
    f_uu + f_vv + Gamma(f_u, f_u) + Gamma(f_v, f_v); timelike (para)
    surfaces the hyperbolic one with minus signs on the v-terms.
    Vanishing tension is minimality for a conformal map.
    """
    g = mesh.grid
    du = (g.u_max - g.u_min) / (g.nu - 1)
    dv = (g.v_max - g.v_min) / (g.nv - 1)
    n = mesh.nodes
    sign = 1.0 if mesh.kind is Kind.COMPLEX else -1.0
    out = np.full((g.nu, g.nv, 4), np.nan)
    for i in range(1, g.nu - 1):
        for j in range(1, g.nv - 1):
            fuu = (n[i + 1, j] - 2.0 * n[i, j] + n[i - 1, j]) / (du * du)
            fvv = (n[i, j + 1] - 2.0 * n[i, j] + n[i, j - 1]) / (dv * dv)
            fu = (n[i + 1, j] - n[i - 1, j]) / (2.0 * du)
            fv = (n[i, j + 1] - n[i, j - 1]) / (2.0 * dv)
            gamma = christoffel_at(s, Point.from_array(n[i, j]))
            quad = np.einsum("ijl,j,l->i", gamma, fu, fu) + sign * np.einsum(
                "ijl,j,l->i", gamma, fv, fv
            )
            out[i, j] = fuu + sign * fvv + quad
    return out


@dataclass
class VerificationReport:
    mesh: SurfaceMesh
    space: str
    pullbacks: np.ndarray  # (nu, nv, 3)
    characters: np.ndarray  # (nu, nv) of strings
    tension: np.ndarray  # (nu, nv, 4), NaN on boundary
    density_gap: float | None  # sup |2*cond_i - E| over the interior, if psi given
    conformality_tol: float
    tension_tol: float

    @property
    def interior(self) -> tuple[slice, slice]:
        return slice(1, self.mesh.grid.nu - 1), slice(1, self.mesh.grid.nv - 1)

    @property
    def conformality_defect(self) -> float:
        """Interior sup of |F| and |E - G| (spacelike) or |E + G| (timelike)."""
        si, sj = self.interior
        E = self.pullbacks[si, sj, 0]
        F = self.pullbacks[si, sj, 1]
        G = self.pullbacks[si, sj, 2]
        if self.mesh.kind is Kind.COMPLEX:
            diag = np.abs(E - G)
        else:
            diag = np.abs(E + G)
        return float(max(np.abs(F).max(), diag.max()))

    @property
    def tension_sup(self) -> float:
        si, sj = self.interior
        return float(np.abs(self.tension[si, sj]).max())

    @property
    def interior_character(self) -> str:
        si, sj = self.interior
        chars = set(self.characters[si, sj].ravel())
        if len(chars) == 1:
            return chars.pop()
        return "mixed"

    def failures(self) -> list[str]:
        out = []
        char = self.interior_character
        if char != self.mesh.causal_character:
            out.append(
                f"causal character {char!r} does not match the "
                f"{self.mesh.kind.value}-algebra expectation {self.mesh.causal_character!r}"
            )
        if self.conformality_defect > self.conformality_tol:
            out.append(
                f"conformality defect {self.conformality_defect:.3e} exceeds "
                f"{self.conformality_tol:.1e}"
            )
        if self.tension_sup > self.tension_tol:
            out.append(
                f"tension sup-norm {self.tension_sup:.3e} exceeds {self.tension_tol:.1e}"
            )
        if self.density_gap is not None and self.density_gap > self.conformality_tol:
            out.append(
                f"conformal density mismatch {self.density_gap:.3e} exceeds "
                f"{self.conformality_tol:.1e}"
            )
        return out

    @property
    def passed(self) -> bool:
        return not self.failures()

    def summary(self) -> str:
        lines = [
            f"verification report ({self.space}, {self.mesh.grid.nu}x{self.mesh.grid.nv} mesh)",
            f"  causal character     : {self.interior_character}",
            f"  conformality defect  : {self.conformality_defect:.6e}",
            f"  tension sup-norm     : {self.tension_sup:.6e}",
        ]
        if self.density_gap is not None:
            lines.append(f"  density identity gap : {self.density_gap:.6e}")
        if self.passed:
            lines.append("  verdict: PASS")
        else:
            lines.append("  verdict: FAIL")
            for reason in self.failures():
                lines.append(f"    - {reason}")
        return "\n".join(lines)

    def to_csv(self, path) -> None:
        g = self.mesh.grid
        u_nodes, v_nodes = g.u_nodes, g.v_nodes
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["u", "v", "E", "F", "G", "char", "tension_norm"])
            for i in range(g.nu):
                for j in range(g.nv):
                    tn = self.tension[i, j]
                    tnorm = float(np.linalg.norm(tn)) if np.all(np.isfinite(tn)) else float("nan")
                    writer.writerow(
                        [
                            repr(float(u_nodes[i])),
                            repr(float(v_nodes[j])),
                            repr(float(self.pullbacks[i, j, 0])),
                            repr(float(self.pullbacks[i, j, 1])),
                            repr(float(self.pullbacks[i, j, 2])),
                            self.characters[i, j],
                            repr(tnorm),
                        ]
                    )


def verify_mesh(
    s: SpaceModel,
    mesh: SurfaceMesh,
    w: WeierstrassData | None = None,
    conformality_tol: float = 1e-2,
    tension_tol: float = 1e-2,
) -> VerificationReport:
    """Bundle pullback, causal character and tension checks on a mesh.

    When the component data is supplied, the report additionally checks
    the conformal-density identity 2 * density = E, which ties the
    pointwise validation route to the synthesized geometry.
    """
    if mesh.space != s.name:
        raise ValueError(f"mesh was synthesized in {mesh.space}, not {s.name}")
    pb = pullback(s, mesh)
    g = mesh.grid
    chars = np.empty((g.nu, g.nv), dtype=object)
    for i in range(g.nu):
        for j in range(g.nv):
            chars[i, j] = causal_character(PullbackSample(*pb[i, j]))
    tension = tension_residual(s, mesh)
    density_gap = None
    if w is not None:
        worst = 0.0
        for i in range(1, g.nu - 1):
            for j in range(1, g.nv - 1):
                dens = condition_i(s, w, float(g.u_nodes[i]), float(g.v_nodes[j]))
                worst = max(worst, abs(2.0 * dens - pb[i, j, 0]))
        density_gap = worst
    return VerificationReport(
        mesh=mesh,
        space=s.name,
        pullbacks=pb,
        characters=chars,
        tension=tension,
        density_gap=density_gap,
        conformality_tol=conformality_tol,
        tension_tol=tension_tol,
    )
