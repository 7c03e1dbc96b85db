"""The two 4-dimensional Lorentzian solvable Lie-group models.

Both models live on the global chart (x, y, z, t).  The first-kind model
S41 puts the negative metric direction on the t-axis frame vector; the
second-kind model S43 puts it on the central z-direction.  Each model
ships three mutually checking descriptions of its geometry:

* the coordinate metric tensor,
* the orthonormal left-invariant frame (matrix A) with its exact
  connection structure constants (the L-table),
* a finite-difference Christoffel oracle built only from the metric,
  independent of the tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import exp

import numpy as np

from .algebra import Kind


class SpaceKind(Enum):
    FIRST = "S41"
    SECOND = "S43"


@dataclass(frozen=True)
class Point:
    x: float
    y: float
    z: float
    t: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z, self.t], dtype=float)

    @classmethod
    def from_array(cls, a) -> "Point":
        return cls(float(a[0]), float(a[1]), float(a[2]), float(a[3]))


@dataclass(frozen=True)
class SpaceModel:
    kind: SpaceKind
    c: float = 1.0

    @property
    def name(self) -> str:
        return self.kind.value

    @property
    def signature(self) -> tuple[int, int, int, int]:
        """Frame-vector signs eps_i: e4 is timelike in S41, e3 in S43."""
        if self.kind is SpaceKind.FIRST:
            return (1, 1, 1, -1)
        return (1, 1, -1, 1)

    @staticmethod
    def algebra_for(character: str) -> Kind:
        """Complex data builds spacelike surfaces, para builds timelike."""
        if character == "spacelike":
            return Kind.COMPLEX
        if character == "timelike":
            return Kind.PARA
        raise ValueError(character)


def metric_at(s: SpaceModel, p: Point) -> np.ndarray:
    """Coordinate metric tensor as a symmetric 4x4 matrix in (x,y,z,t)."""
    c = s.c
    et = exp(-p.t)
    e2t = exp(-2.0 * p.t)
    # the squared 1-form dz + a*dx + b*dy
    a = 0.5 * c * p.y
    b = -0.5 * c * p.x
    s3 = 1.0 if s.kind is SpaceKind.FIRST else -1.0
    s4 = -1.0 if s.kind is SpaceKind.FIRST else 1.0
    g = np.zeros((4, 4))
    g[0, 0] = et + s3 * e2t * a * a
    g[1, 1] = et + s3 * e2t * b * b
    g[2, 2] = s3 * e2t
    g[3, 3] = s4
    g[0, 1] = g[1, 0] = s3 * e2t * a * b
    g[0, 2] = g[2, 0] = s3 * e2t * a
    g[1, 2] = g[2, 1] = s3 * e2t * b
    return g


def frame_matrix(s: SpaceModel, p: Point) -> np.ndarray:
    """Columns are the coordinate components of the frame e1..e4 at p."""
    c = s.c
    eh = exp(0.5 * p.t)
    A = np.zeros((4, 4))
    A[0, 0] = eh
    A[1, 1] = eh
    A[2, 0] = -0.5 * c * eh * p.y
    A[2, 1] = 0.5 * c * eh * p.x
    A[2, 2] = exp(p.t)
    A[3, 3] = 1.0
    return A


def l_table(s: SpaceModel) -> dict[tuple[int, int, int], float]:
    """Nonzero connection structure constants (i, j, k) -> L^k_ij.

    Defined by nabla_{e_i} e_j = (1/2) sum_k L^k_ij e_k; indices 1-based.
    """
    c = s.c
    if s.kind is SpaceKind.FIRST:
        return {
            (1, 1, 4): -1.0, (1, 2, 3): c, (1, 3, 2): -c, (1, 4, 1): -1.0,
            (2, 1, 3): -c, (2, 2, 4): -1.0, (2, 3, 1): c, (2, 4, 2): -1.0,
            (3, 1, 2): -c, (3, 2, 1): c, (3, 3, 4): -2.0, (3, 4, 3): -2.0,
        }
    return {
        (1, 1, 4): 1.0, (1, 2, 3): c, (1, 3, 2): c, (1, 4, 1): -1.0,
        (2, 1, 3): -c, (2, 2, 4): 1.0, (2, 3, 1): -c, (2, 4, 2): -1.0,
        (3, 1, 2): c, (3, 2, 1): -c, (3, 3, 4): -2.0, (3, 4, 3): -2.0,
    }


def l_entry(s: SpaceModel, i: int, j: int, k: int) -> float:
    return l_table(s).get((i, j, k), 0.0)


def frame_connection(s: SpaceModel, i: int, j: int) -> np.ndarray:
    """Frame coefficients of nabla_{e_i} e_j, i.e. (1/2) L^k_ij over k."""
    if not (1 <= i <= 4 and 1 <= j <= 4):
        raise ValueError("frame indices are 1..4")
    tab = l_table(s)
    return np.array([0.5 * tab.get((i, j, k), 0.0) for k in (1, 2, 3, 4)])


def lie_bracket_frame(s: SpaceModel, i: int, j: int) -> np.ndarray:
    """[e_i, e_j] in frame coefficients, from torsion-freeness."""
    return frame_connection(s, i, j) - frame_connection(s, j, i)


def _fd_step(p: Point) -> float:
    return 1e-5 * (1.0 + abs(p.t))


def metric_gradient_at(s: SpaceModel, p: Point, h: float | None = None) -> np.ndarray:
    """Central-difference coordinate gradient dg[a, i, j] = d_a g_ij."""
    if h is None:
        h = _fd_step(p)
    base = p.as_array()
    dg = np.zeros((4, 4, 4))
    for a in range(4):
        plus = base.copy()
        plus[a] += h
        minus = base.copy()
        minus[a] -= h
        dg[a] = (metric_at(s, Point.from_array(plus)) - metric_at(s, Point.from_array(minus))) / (2.0 * h)
    return dg


def christoffel_at(s: SpaceModel, p: Point, h: float | None = None) -> np.ndarray:
    """Christoffel symbols Gamma[i, j, l] from the metric alone.

    Koszul formula with central-difference metric derivatives; this is
    the oracle route, independent of the frame tables.
    """
    g = metric_at(s, p)
    ginv = np.linalg.inv(g)
    dg = metric_gradient_at(s, p, h)
    # Gamma^i_{jl} = (1/2) g^{im} (d_j g_ml + d_l g_mj - d_m g_jl)
    term = dg.transpose(1, 0, 2) + dg.transpose(1, 2, 0) - dg
    return 0.5 * np.einsum("im,mjl->ijl", ginv, term)


def frame_connection_via_christoffel(
    s: SpaceModel, p: Point, i: int, j: int, h: float | None = None
) -> np.ndarray:
    """Frame coefficients of nabla_{e_i} e_j computed in coordinates.

    Uses only the finite-difference Christoffel oracle and numerical
    derivatives of the frame matrix, then changes back to the frame.
    Serves as the independent cross-check of frame_connection.
    """
    if h is None:
        h = _fd_step(p)
    A = frame_matrix(s, p)
    ei = A[:, i - 1]
    base = p.as_array()
    # directional derivative of the column e_j along e_i
    dcol = np.zeros(4)
    for a in range(4):
        if ei[a] == 0.0:
            continue
        plus = base.copy()
        plus[a] += h
        minus = base.copy()
        minus[a] -= h
        dA = (frame_matrix(s, Point.from_array(plus)) - frame_matrix(s, Point.from_array(minus))) / (2.0 * h)
        dcol = dcol + ei[a] * dA[:, j - 1]
    gamma = christoffel_at(s, p, h)
    ej = A[:, j - 1]
    cov = dcol + np.einsum("ijl,j,l->i", gamma, ei, ej)
    return np.linalg.solve(A, cov)
