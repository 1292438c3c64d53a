#!/usr/bin/env python
# Created by "Thieu" at 13:40, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Directional derivatives and tangential subdifferentials of constraint functions.

A function is tangentially convex at xbar when nu -> f'(xbar, nu) is finite and convex; its tangential
subdifferential is then the compact convex set whose support function is f'(xbar, .). Every set here is
a polytope, stored by its vertices.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np
from scipy.spatial import ConvexHull

from tancert import expr as ex
from tancert import geometry as geo
from tancert.utils import constant as co
from tancert.utils import data_util as du
from tancert.utils.exception import InputError, PreconditionError, NumericalFailure
from tancert.utils.report_util import Verdict

logger = logging.getLogger(__name__)

REFINE_DEPTH = 6


def _prune_vertices(V, tol=co.TOL_GEOM):
    V = du.unique_rows(V, tol * 1e-2)
    if V.shape[0] == 1:
        return V
    center = V.mean(axis=0)
    _, s, vt = np.linalg.svd(V - center, full_matrices=False)
    scale = max(1.0, float(np.max(np.abs(V))))
    rank = int(np.sum(s > tol * scale))
    if rank == 0:
        return center.reshape(1, -1)
    coords = (V - center) @ vt[:rank].T
    if rank == 1:
        return V[np.sort([int(np.argmin(coords[:, 0])), int(np.argmax(coords[:, 0]))])]
    hull = ConvexHull(coords)
    return V[np.sort(hull.vertices)]


@dataclass(frozen=True, eq=False)
class PolytopeV:
    """
    Compact convex polytope given by its vertices.

    The vertex list is pruned on construction: duplicates merged, points inside the hull of the
    others removed (affine hull dimension found by SVD at tol_geom).
    """
    vertices: np.ndarray

    def __post_init__(self):
        V = du.format_matrix(self.vertices, name="vertices", allow_empty=False)
        object.__setattr__(self, "vertices", _prune_vertices(V))

    @property
    def dim(self):
        return self.vertices.shape[1]

    def support(self, nu):
        return support_value(self, nu)

    def contains(self, v, tol=co.TOL_GEOM):
        return geo.distance_to_hull(du.format_vector(v, self.dim), self.vertices) <= tol

    def to_dict(self):
        return {"vertices": self.vertices}


@dataclass(frozen=True, eq=False)
class ConstraintFn:
    """
    A constraint g(x) <= 0.

    Attributes:
        name (str): Label used in reports
        body (expr.Node): Parsed expression
        exact_subdiff (dict): Maps anchor keys ("0,0") to known tangential subdifferentials
        text (str): Source text of the expression
    """
    name: str
    body: ex.Node
    exact_subdiff: Dict[str, PolytopeV] = field(default_factory=dict)
    text: str = ""

    @classmethod
    def from_text(cls, name, text, exact_subdiff=None):
        subdiffs = {}
        for key, vertices in (exact_subdiff or {}).items():
            subdiffs[du.point_key(du.parse_point_text(key, name=f"subdiff key of {name}"))] = \
                vertices if isinstance(vertices, PolytopeV) else PolytopeV(vertices)
        return cls(name, ex.parse(text), subdiffs, text)

    def __call__(self, x):
        return ex.evaluate(self.body, x)

    def subdiff_at(self, xbar) -> Optional[PolytopeV]:
        """Exact subdifferential declared for xbar, None when not declared."""
        return self.exact_subdiff.get(du.point_key(xbar))


def _extrapolate(q, tol=co.TOL_DD):
    ## Aitken form of Richardson extrapolation: the order is estimated from three consecutive quotients
    d = np.diff(q)
    ## Aitken maps a divergent geometric sequence to a finite antilimit, so growth is rejected first
    tail = np.abs(d[-3:])
    if np.all(tail > tol * max(1.0, abs(q[-1]))) and np.all(tail[1:] >= tail[:-1]):
        raise NumericalFailure("Difference quotients diverge: f'(xbar, nu) is not finite.", sequence=q.tolist())
    den = d[1:] - d[:-1]
    with np.errstate(divide="ignore", invalid="ignore"):
        acc = q[2:] - d[1:] ** 2 / den
    bad = ~np.isfinite(acc) | (np.abs(den) <= 1e-14 * (1.0 + np.abs(q[2:])))
    acc[bad] = q[2:][bad]
    w = co.DD_WINDOW
    windows = np.lib.stride_tricks.sliding_window_view(acc, w)
    spread = windows.max(axis=1) - windows.min(axis=1)
    best = int(np.argmin(spread))
    value = float(np.median(windows[best]))
    if not spread[best] <= tol * max(1.0, abs(value)):
        raise NumericalFailure(f"Directional derivative did not settle: best spread {spread[best]:.3e}",
                               sequence=q.tolist())
    return value


def dir_derivs(f, xbar, dirs, tol=co.TOL_DD):
    """
    One-sided directional derivatives f'(xbar, nu) for every row nu of dirs.

    Difference quotients use the steps 0.1 * 2^-k, k = 0..24, then Richardson extrapolation; the value is
    the median of the most consistent window of four extrapolants. A zero direction gives 0.

    Returns:
        np.ndarray: One value per direction
    """
    xbar = du.format_vector(xbar)
    D = du.format_matrix(dirs, xbar.size, name="dirs")
    alphas = co.DD_STEP0 * 2.0 ** -np.arange(co.DD_STEPS)
    f0 = f(xbar)
    pts = xbar + alphas[:, None, None] * D[None, :, :]
    vals = np.asarray(f(pts.reshape(-1, xbar.size)), dtype=float).reshape(alphas.size, D.shape[0])
    Q = (vals - f0) / alphas[:, None]
    result = np.zeros(D.shape[0])
    for idx in range(D.shape[0]):
        if np.linalg.norm(D[idx]) <= co.EPSILON:
            continue
        result[idx] = _extrapolate(Q[:, idx], tol)
    return result


def dir_deriv(f, xbar, nu, tol=co.TOL_DD):
    """f'(xbar, nu) as a float; raises NumericalFailure (with the quotients) when it does not settle."""
    nu = du.format_vector(nu, name="nu")
    return float(dir_derivs(f, xbar, nu.reshape(1, -1), tol)[0])


def support_value(P: PolytopeV, nu):
    """max <v, nu> over the vertices of P."""
    nu = du.format_vector(nu, P.dim, name="nu")
    return float(np.max(P.vertices @ nu))


def _unit(theta):
    return np.array([np.cos(theta), np.sin(theta)])


def _meet(t1, h1, t2, h2):
    return np.linalg.solve(np.vstack([_unit(t1), _unit(t2)]), np.array([h1, h2]))


def _reconstruct_2d(f, xbar, n_dirs, tol):
    D = du.unit_directions(2, n_dirs)
    theta = 2 * np.pi * np.arange(D.shape[0]) / D.shape[0]
    h = dir_derivs(f, xbar, D, tol)
    scale = 1.0 + float(np.max(np.abs(h)))
    k = D.shape[0]
    if k % 2 == 0 and np.any(h + np.roll(h, k // 2) < -co.TOL_GEOM * scale):
        raise NumericalFailure("Support samples are not sublinear: f'(x, d) + f'(x, -d) < 0.", sequence=h.tolist())

    ## Intersect consecutive support lines. A pair whose meeting point overshoots the support at the
    ## bisecting direction straddles an edge normal: it is split, and dropped once the split limit is
    ## reached (the edge endpoints come from the neighbouring pairs).
    points, stack = [], []
    for i in range(k):
        t2 = theta[(i + 1) % k] + (2 * np.pi if i == k - 1 else 0.0)
        stack.append((theta[i], h[i], t2, h[(i + 1) % k], 0))
    while stack:
        t1, h1, t2, h2, depth = stack.pop()
        p = _meet(t1, h1, t2, h2)
        tm = 0.5 * (t1 + t2)
        hm = dir_deriv(f, xbar, _unit(tm), tol)
        if _unit(tm) @ p <= hm + 0.1 * co.TOL_GEOM * scale:
            points.append(p)
        elif depth < REFINE_DEPTH:
            stack.append((t1, h1, tm, hm, depth + 1))
            stack.append((tm, hm, t2, h2, depth + 1))
    P = np.vstack(points)
    if np.any(P @ D.T > h + 1e-4 * scale):
        raise NumericalFailure("Sampled support halfplanes do not bound a polygon.", sequence=h.tolist())
    return P


def _reconstruct_3d(f, xbar, n_dirs, tol):
    ## Vertices of {x : <d_i, x> <= h_i} maximising each d: the dual LP min h^T y, D^T y = d, y >= 0
    ## has three rows, and its optimal basis gives the vertex.
    D = du.unit_directions(3, n_dirs)
    h = dir_derivs(f, xbar, D, tol)
    points = []
    for d in D:
        out = geo.simplex_standard(D.T, d, h, return_basis=True)
        if out[0] != geo.FEASIBLE:
            raise NumericalFailure("Sampled support halfspaces do not bound a polytope.", sequence=h.tolist())
        basis = out[3]
        points.append(np.linalg.solve(D[basis], h[basis]))
    return np.vstack(points)


def reconstruct_subdiff(f, xbar, n_dirs=None, tol=co.TOL_DD):
    """
    Tangential subdifferential rebuilt from sampled directional derivatives.

    R^1: the interval [-f'(x, -1), f'(x, 1)]. R^2: intersection of the support halfplanes of n_dirs equally
    spaced directions (default 360), with adaptive splitting around edge normals. R^3: vertices of the
    sampled halfspace intersection over a Fibonacci sphere (default 500 directions); an outer approximation.

    Args:
        f (ConstraintFn): The constraint
        xbar (tuple, list, np.ndarray): The anchor
        n_dirs (int, optional): Number of sampled directions, at least 64
        tol (float): Directional derivative tolerance

    Returns:
        PolytopeV: The reconstructed subdifferential
    """
    xbar = du.format_vector(xbar)
    n = xbar.size
    if n > 3:
        raise InputError(f"Subdifferential reconstruction supports dimensions 1..3, got {n}.")
    if n_dirs is not None and n > 1 and int(n_dirs) < 64:
        raise InputError(f"n_dirs must be at least 64, got {n_dirs}.")
    if n == 1:
        hi = dir_deriv(f, xbar, [1.0], tol)
        lo = -dir_deriv(f, xbar, [-1.0], tol)
        if lo > hi + co.TOL_GEOM * max(1.0, abs(lo), abs(hi)):
            raise NumericalFailure(f"Empty interval [{lo}, {hi}]: f'(x, .) is not sublinear.", sequence=[lo, hi])
        return PolytopeV([[lo], [hi]])
    P = _reconstruct_2d(f, xbar, n_dirs, tol) if n == 2 else _reconstruct_3d(f, xbar, n_dirs, tol)
    logger.debug("reconstructed %s from %d candidate points", getattr(f, "name", "f"), P.shape[0])
    return PolytopeV(P)


def resolve_subdiff(f, xbar, n_dirs=None):
    """
    Subdifferential of f at xbar: the declared one when present, otherwise reconstructed.

    Returns:
        tuple: (PolytopeV, provenance)
    """
    P = f.subdiff_at(xbar) if isinstance(f, ConstraintFn) else None
    if P is not None:
        return P, co.PROVENANCE_EXACT
    return reconstruct_subdiff(f, xbar, n_dirs), co.PROVENANCE_SAMPLED


def tangential_convexity_probe(f, xbar, n_pairs=co.N_PROBE_PAIRS, seed=0, tol=co.TOL_DD):
    """
    Falsification test for tangential convexity of f at xbar.

    Checks midpoint convexity and positive homogeneity of f'(xbar, .) on the coordinate pairs (e_i, -e_i)
    and random pairs of unit directions. A pass means "not falsified".

    Returns:
        Verdict: witness {"nu", "nu_prime", "kind"} on failure
    """
    if n_pairs < 100:
        raise InputError(f"n_pairs must be at least 100, got {n_pairs}.")
    xbar = du.format_vector(xbar)
    n = xbar.size
    rng = np.random.default_rng(seed)
    eye = np.eye(n)
    U = np.vstack([eye, du.random_unit_vectors(rng, n_pairs - n, n)])
    W = np.vstack([-eye, du.random_unit_vectors(rng, n_pairs - n, n)])
    mid = 0.5 * (U + W)
    values = dir_derivs(f, xbar, np.vstack([U, W, mid, 2 * U]), tol)
    a, b, m, a2 = np.split(values, 4)
    scale = np.maximum(1.0, np.abs(a) + np.abs(b))
    midpoint_gap = m - 0.5 * (a + b) - tol * scale
    homog_gap = np.abs(a2 - 2 * a) - tol * np.maximum(1.0, 2 * np.abs(a))
    for kind, gap in (("midpoint", midpoint_gap), ("homogeneity", homog_gap)):
        if np.any(gap > 0):
            idx = int(np.argmax(gap))
            witness = {"nu": U[idx], "nu_prime": W[idx], "kind": kind}
            return Verdict(False, witness, f"{kind} check fails for pair {idx}", co.PROVENANCE_SAMPLED)
    return Verdict(True, None, f"not falsified on {n_pairs} direction pairs", co.PROVENANCE_SAMPLED)


def active_set(constraints, xbar, tol=co.TOL_ACTIVE):
    """
    Zero-based indices j with |g_j(xbar)| <= tol.

    Raises:
        PreconditionError: when some g_j(xbar) > tol (the message lists the violated constraints)
    """
    xbar = du.format_vector(xbar)
    values = np.array([g(xbar) for g in constraints], dtype=float)
    violated = [f"{g.name}={v:.6g}" for g, v in zip(constraints, values) if v > tol]
    if violated:
        raise PreconditionError(f"Point {xbar.tolist()} is infeasible: {', '.join(violated)}.")
    return tuple(int(j) for j in np.flatnonzero(np.abs(values) <= tol))


def validate_exact_subdiff(f, xbar, P: PolytopeV, n_dirs=None, tol=co.TOL_SUBDIFF_CHECK):
    """
    Compare support_value(P, nu) against f'(xbar, nu) on sampled directions.

    Uses +-1 in R^1, 72 directions in R^2 and 100 in R^3 unless n_dirs is given.
    """
    xbar = du.format_vector(xbar)
    n = xbar.size
    if P.dim != n:
        raise InputError(f"Subdifferential of {f.name} has dimension {P.dim}, expected {n}.")
    default = {1: None, 2: 72, 3: 100}
    if n not in default:
        raise InputError(f"Subdifferential checks support dimensions 1..3, got {n}.")
    D = du.unit_directions(n, n_dirs if n_dirs is not None else default[n])
    dd = dir_derivs(f, xbar, D)
    sv = D @ P.vertices.T
    gap = np.abs(sv.max(axis=1) - dd) - tol * np.maximum(1.0, np.abs(dd))
    worst = int(np.argmax(gap))
    if gap[worst] > 0:
        return Verdict(False, D[worst], f"support {sv[worst].max():.6g} vs f' {dd[worst]:.6g}")
    return Verdict(True, None, f"consistent on {D.shape[0]} directions")


def hausdorff(P: PolytopeV, Q: PolytopeV):
    """Hausdorff distance between two polytopes."""
    return geo.hausdorff_distance(P.vertices, Q.vertices)
