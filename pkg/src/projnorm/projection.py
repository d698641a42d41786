"""L2 projection onto continuous piecewise-linear splines.

The projection of cellwise-constant data f solves M x = F with the hat-basis
mass matrix M and load F.  On one simplex of volume V in dimension d the mass
contribution is V * (1 + delta_ij) / ((d+1)(d+2)) and the load contribution is
f * V / (d+1), so everything is assembled in closed form; no quadrature is
involved anywhere in this module.

The normalized system A = D^{-1} M (unit diagonal) drives the operator-norm
bounds: the sup norm of the projector equals the largest L1 norm of a dual
function, and is bounded by (d+2)/2 times the inf-norm of A^{-1}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg
import scipy.sparse as sparse

from .errors import (
    InvalidParameter,
    LengthMismatch,
    SolveFailure,
    UnsupportedDimension,
)

# Relative residual accepted by solve_with_load before declaring failure.
RESIDUAL_RTOL = 1e-10

# Sign classification threshold for the exact |linear| integrator: values
# within 1e-14 of the local scale count as zero.
_SIGN_RTOL = 1e-14
# Recursion branches whose volume has shrunk below this fraction of the
# original simplex volume contribute nothing at double precision.
_VOLUME_DROP = 1e-16


@dataclass(frozen=True)
class CellwiseConstant:
    """One value per simplex.  Values must be finite."""

    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1:
            raise InvalidParameter("cellwise data must be a one-dimensional vector")
        if not np.isfinite(values).all():
            raise InvalidParameter("cellwise data must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def sup_norm(self):
        return float(np.abs(self.values).max())


@dataclass(frozen=True)
class SplineFunction:
    """Continuous piecewise-linear function given by its vertex values."""

    nodal_values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.nodal_values, dtype=float)
        if values.ndim != 1:
            raise InvalidParameter("nodal values must be a one-dimensional vector")
        if not np.isfinite(values).all():
            raise InvalidParameter("nodal values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "nodal_values", values)

    @property
    def sup_norm(self):
        """Sup norm of the spline; attained at a vertex since it is linear."""
        return float(np.abs(self.nodal_values).max())


@dataclass(frozen=True)
class NormalizedSystem:
    """Galerkin system rescaled to unit diagonal, A = D^{-1} M, b = D^{-1} F."""

    A: np.ndarray
    b: np.ndarray
    dim: int


def _cellwise_values(mesh, f):
    values = np.asarray(getattr(f, "values", f), dtype=float)
    if values.shape != (mesh.n_simplices,):
        raise LengthMismatch(
            f"expected one value per simplex ({mesh.n_simplices}), got {values.shape}"
        )
    return values


def assemble_mass(mesh):
    """Sparse hat-function mass matrix, assembled in closed form.

    Entry (P, Q) is sum over shared simplices of V * (1 + delta_PQ)
    / ((d+1)(d+2)); in 2D that is |star(P)| / 6 on the diagonal and the shared
    area / 12 off it.
    """
    d = mesh.dim
    simp = mesh.simplices
    scale = mesh.simplex_volumes / ((d + 1) * (d + 2))
    local = np.ones((d + 1, d + 1)) + np.eye(d + 1)
    vals = scale[:, None, None] * local
    rows = np.broadcast_to(simp[:, :, None], vals.shape)
    cols = np.broadcast_to(simp[:, None, :], vals.shape)
    n = mesh.n_vertices
    M = sparse.coo_matrix(
        (vals.ravel(), (rows.ravel(), cols.ravel())), shape=(n, n)
    ).tocsr()
    M.sum_duplicates()
    return M


def assemble_load(mesh, f):
    """Load vector (f, phi_P): each simplex donates f * V / (d+1) per vertex."""
    values = _cellwise_values(mesh, f)
    contrib = values * mesh.simplex_volumes / (mesh.dim + 1)
    F = np.zeros(mesh.n_vertices)
    np.add.at(F, mesh.simplices, contrib[:, None])
    return F


def normalized_matrix(mesh):
    """Dense A = D^{-1} M with unit diagonal and nonnegative entries."""
    M = assemble_mass(mesh).toarray()
    return M / M.diagonal()[:, None]


def normalized_system(mesh, f):
    M = assemble_mass(mesh)
    diag = M.diagonal()
    b = assemble_load(mesh, f) / diag
    A = M.toarray() / diag[:, None]
    return NormalizedSystem(A=A, b=b, dim=mesh.dim)


def _scaled_cholesky(M):
    # Solve through S = D^{-1/2} M D^{-1/2}: the mass matrices of the shrinking
    # square meshes have entries spanning dozens of orders of magnitude, and the
    # symmetric rescaling keeps the factorization well conditioned.
    dd = M.diagonal()
    s = 1.0 / np.sqrt(dd)
    S = M.toarray() * s[:, None] * s[None, :]
    try:
        factor = scipy.linalg.cho_factor(S, lower=True)
    except scipy.linalg.LinAlgError as exc:
        raise SolveFailure(f"mass matrix factorization failed: {exc}") from exc
    return factor, s


def solve_with_load(mesh, load):
    """Solve M x = load for the nodal values, with a residual check."""
    M = assemble_mass(mesh)
    load = np.asarray(load, dtype=float)
    if load.shape != (mesh.n_vertices,):
        raise LengthMismatch(
            f"expected one load entry per vertex ({mesh.n_vertices}), got {load.shape}"
        )
    factor, s = _scaled_cholesky(M)
    x = s * scipy.linalg.cho_solve(factor, s * load)
    residual = float(np.abs(M @ x - load).max())
    fnorm = float(np.abs(load).max())
    if residual > RESIDUAL_RTOL * fnorm:
        raise SolveFailure(
            f"projection solve left residual {residual:.3e} "
            f"(allowed {RESIDUAL_RTOL * fnorm:.3e})",
            residual=residual,
        )
    return x


def project(mesh, f):
    """L2 projection of cellwise-constant data onto the linear splines."""
    return SplineFunction(solve_with_load(mesh, assemble_load(mesh, f)))


def dual_basis(mesh):
    """Nodal values of the dual functions, i.e. the rows of M^{-1}.

    Row P is the spline biorthogonal to the hat at vertex P; the exact
    operator norm of the projection is the largest L1 norm among these rows.
    """
    factor, s = _scaled_cholesky(assemble_mass(mesh))
    Sinv = scipy.linalg.cho_solve(factor, np.eye(mesh.n_vertices))
    Minv = Sinv * s[:, None] * s[None, :]
    return (Minv + Minv.T) / 2


def _abs_simplex(values, volume, vol_floor):
    """Exact integral of |linear| over a simplex from its vertex values.

    If the values do not change sign the integrand is linear and the integral
    is volume times |mean|.  Otherwise the simplex is split along the zero of
    the function on one sign-changing edge: the zero sits at barycentric
    position theta = v_i / (v_i - v_j) and the two children keep all values
    except that one endpoint is replaced by 0; their volumes are theta and
    (1 - theta) times the parent volume.  Each split removes one sign-changing
    edge, so the recursion terminates.
    """
    if volume <= vol_floor:
        return 0.0
    vmax = np.abs(values).max()
    if vmax == 0.0:
        return 0.0
    thr = _SIGN_RTOL * vmax
    pos = values > thr
    neg = values < -thr
    if not pos.any() or not neg.any():
        return volume * abs(values.mean())
    i = int(np.argmax(pos))
    j = int(np.argmax(neg))
    theta = values[i] / (values[i] - values[j])
    child_a = values.copy()
    child_a[j] = 0.0
    child_b = values.copy()
    child_b[i] = 0.0
    return _abs_simplex(child_a, theta * volume, vol_floor) + _abs_simplex(
        child_b, (1.0 - theta) * volume, vol_floor
    )


def spline_abs_integral(mesh, nodal_values):
    """Exact integral of |g| for the spline with the given vertex values."""
    nodal = np.asarray(nodal_values, dtype=float)
    if nodal.shape != (mesh.n_vertices,):
        raise LengthMismatch(
            f"expected one nodal value per vertex ({mesh.n_vertices}), got {nodal.shape}"
        )
    vals = nodal[mesh.simplices]
    vols = mesh.simplex_volumes
    vmax = np.abs(vals).max(axis=1)
    thr = _SIGN_RTOL * vmax
    has_pos = (vals > thr[:, None]).any(axis=1)
    has_neg = (vals < -thr[:, None]).any(axis=1)
    mixed = has_pos & has_neg
    total = float(np.sum(np.where(mixed, 0.0, vols * np.abs(vals.mean(axis=1)))))
    for s in np.flatnonzero(mixed):
        total += _abs_simplex(vals[s].copy(), float(vols[s]), _VOLUME_DROP * float(vols[s]))
    return total


def exact_operator_norm(mesh):
    """Exact sup-norm operator norm of the projection and its witness vertex.

    The norm equals max_P integral of |psi_P| where psi_P are the dual
    functions; ties are broken toward the smallest vertex id.
    """
    psi = dual_basis(mesh)
    best = -math.inf
    best_vertex = 0
    for P in range(mesh.n_vertices):
        total = spline_abs_integral(mesh, psi[P])
        if total > best:
            best, best_vertex = total, P
    return best, best_vertex


def inverse_infinity_norm_bound(system):
    """Upper bound (d+2)/2 * ||A^{-1}||_inf for the exact operator norm."""
    try:
        inv = np.linalg.inv(system.A)
    except np.linalg.LinAlgError as exc:
        raise SolveFailure(f"normalized matrix is singular: {exc}") from exc
    return 0.5 * (system.dim + 2) * float(np.abs(inv).sum(axis=1).max())


class Proposition1Result(NamedTuple):
    c0: float
    bound: float
    exact_norm: float
    satisfied: bool


def proposition1_check(mesh):
    """Compare the exact norm against (1 + 2 c0) / c0^2, c0 = min coupling.

    c0 is the smallest off-diagonal entry of A over neighboring vertex pairs.
    Defined for 2D meshes; the bound deteriorates as c0 -> 0, which is exactly
    what the shrinking-square family exhibits.
    """
    if mesh.dim != 2:
        raise UnsupportedDimension("the coupling-based bound is stated for 2D meshes")
    M = assemble_mass(mesh)
    diag = M.diagonal()
    M = M.tocoo()
    off = M.row != M.col
    c0 = float((M.data[off] / diag[M.row[off]]).min())
    bound = (1.0 + 2.0 * c0) / c0**2
    norm, _ = exact_operator_norm(mesh)
    return Proposition1Result(c0=c0, bound=bound, exact_norm=norm,
                              satisfied=norm <= bound + 1e-8)


@dataclass
class ProjectionReport:
    """Everything a projection run reports; serializes to a JSON-ready dict."""

    mesh_data: dict
    nodal_values: np.ndarray | None = None
    sup_norm: float | None = None
    residual: float | None = None
    exact_operator_norm: float | None = None
    ainv_bound: float | None = None
    c0: float | None = None
    prop1_bound: float | None = None

    def to_dict(self):
        return {
            "mesh": self.mesh_data,
            "nodal_values": None
            if self.nodal_values is None
            else [float(v) for v in self.nodal_values],
            "sup_norm": self.sup_norm,
            "residual": self.residual,
            "exact_operator_norm": self.exact_operator_norm,
            "ainv_bound": self.ainv_bound,
            "c0": self.c0,
            "prop1_bound": self.prop1_bound,
        }
