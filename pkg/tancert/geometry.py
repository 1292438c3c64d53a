#!/usr/bin/env python
# Created by "Thieu" at 10:32, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Exact low-dimensional polyhedral primitives.

Dense two-phase simplex with Bland's lowest-index rule, the dual pair of cone
representations (finitely generated / halfspace), polar cones, normal cones of
polyhedra, cone membership and equality, and Euclidean projection onto a
polyhedron by active-set enumeration.

Conventions:
    + A ConeFG with no rays is {0}; a ConeH with no normals is R^n.
    + Rays and normals are stored with unit Euclidean length, duplicates closer
      than 1e-9 are pruned, so equal cones get equal ray lists.
    + Halfspace normals are normalized as well (the set is unchanged).
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import nnls

from tancert.utils import constant as co
from tancert.utils import data_util as du
from tancert.utils.exception import InputError, PreconditionError, InfeasibleError, NumericalFailure

logger = logging.getLogger(__name__)

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
PIVOT_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Halfspace:
    """The set {x : <normal, x> <= offset}."""
    normal: np.ndarray
    offset: float

    def __post_init__(self):
        a = du.format_vector(self.normal, name="normal")
        scale = np.linalg.norm(a)
        if scale <= co.EPSILON:
            raise InputError("Halfspace normal must be non-zero.")
        object.__setattr__(self, "normal", a / scale)
        object.__setattr__(self, "offset", float(self.offset) / scale)

    @property
    def dim(self):
        return self.normal.size


@dataclass(frozen=True, eq=False)
class Polyhedron:
    """
    Intersection of halfspaces in R^dim (H-representation); no halfspaces means R^dim.
    """
    halfspaces: Tuple[Halfspace, ...]
    dim: int

    def __post_init__(self):
        hs = tuple(self.halfspaces)
        for h in hs:
            if h.dim != self.dim:
                raise InputError(f"Halfspace of dimension {h.dim} in a polyhedron of dimension {self.dim}.")
        object.__setattr__(self, "halfspaces", hs)
        object.__setattr__(self, "dim", int(self.dim))

    @classmethod
    def from_arrays(cls, A, b, dim=None):
        b = np.asarray(b, dtype=float).reshape(-1)
        A = du.format_matrix(A, dim, name="A")
        if A.shape[0] != b.size:
            raise InputError(f"A has {A.shape[0]} rows but b has {b.size} entries.")
        return cls(tuple(Halfspace(a, bi) for a, bi in zip(A, b)), A.shape[1] if dim is None else dim)

    @property
    def A(self):
        if not self.halfspaces:
            return np.zeros((0, self.dim))
        return np.vstack([h.normal for h in self.halfspaces])

    @property
    def b(self):
        return np.array([h.offset for h in self.halfspaces], dtype=float)

    def contains(self, x, tol=co.TOL_PROJ):
        x = du.format_vector(x, self.dim)
        return bool(np.all(self.A @ x <= self.b + tol))

    def contains_batch(self, X, tol=co.TOL_PROJ):
        X = np.asarray(X, dtype=float).reshape(-1, self.dim)
        if not self.halfspaces:
            return np.ones(X.shape[0], dtype=bool)
        return np.all(X @ self.A.T <= self.b + tol, axis=1)

    def is_empty(self):
        return lp_solve(self.halfspaces, dim=self.dim).status != FEASIBLE


@dataclass(frozen=True, eq=False)
class ConeFG:
    """Finitely generated cone: all non-negative combinations of rays."""
    rays: np.ndarray
    dim: int

    def __post_init__(self):
        R = du.format_matrix(self.rays, self.dim, name="rays")
        R = du.unique_rows(du.normalize_rows(R, co.TOL_DEDUP), co.TOL_DEDUP) if R.shape[0] else R
        object.__setattr__(self, "rays", R.reshape(-1, self.dim))
        object.__setattr__(self, "dim", int(self.dim))

    def is_zero(self):
        return self.rays.shape[0] == 0


@dataclass(frozen=True, eq=False)
class ConeH:
    """Homogeneous halfspace intersection {x : <a, x> <= 0 for every normal a}."""
    normals: np.ndarray
    dim: int

    def __post_init__(self):
        N = du.format_matrix(self.normals, self.dim, name="normals")
        N = du.unique_rows(du.normalize_rows(N, co.TOL_DEDUP), co.TOL_DEDUP) if N.shape[0] else N
        object.__setattr__(self, "normals", N.reshape(-1, self.dim))
        object.__setattr__(self, "dim", int(self.dim))

    def is_whole_space(self):
        return self.normals.shape[0] == 0


@dataclass(frozen=True, eq=False)
class LPResult:
    """
    Outcome of lp_solve.

    Attributes:
        status (str): "feasible", "infeasible" or "unbounded"
        witness (np.ndarray, optional): Optimal (or feasible) point, present iff status is feasible
        objective (float, optional): Objective value at the witness
        farkas (np.ndarray, optional): y >= 0 with A^T y = 0 and b^T y < 0 for infeasible feasibility problems
    """
    status: str
    witness: Optional[np.ndarray] = None
    objective: Optional[float] = None
    farkas: Optional[np.ndarray] = None


def _pivot(T, r, j):
    T[r] /= T[r, j]
    others = np.arange(T.shape[0]) != r
    T[others] -= np.outer(T[others, j], T[r])


def _iterate(T, basis, n_cols, tol, max_iter):
    ## Bland's rule: lowest-index entering column, lowest-index leaving basic variable on ties
    for _ in range(max_iter):
        entering = np.flatnonzero(T[-1, :n_cols] < -tol)
        if entering.size == 0:
            return "optimal"
        j = int(entering[0])
        col = T[:-1, j]
        rows = np.flatnonzero(col > PIVOT_TOL)
        if rows.size == 0:
            return UNBOUNDED
        ratios = T[rows, -1] / col[rows]
        ties = rows[ratios <= ratios.min() + tol]
        r = int(min(ties, key=lambda i: basis[i]))
        _pivot(T, r, j)
        basis[r] = j
    raise NumericalFailure(f"Simplex did not terminate within {max_iter} pivots.")


def simplex_standard(E, f, c, tol=co.TOL_LP, max_iter=co.MAX_SIMPLEX_ITERATIONS, return_basis=False):
    """
    Solve min c^T z subject to E z = f, z >= 0 with a dense two-phase tableau.

    Args:
        E (np.ndarray): Equality matrix with shape (m, k)
        f (np.ndarray): Right-hand side with shape (m,)
        c (np.ndarray): Costs with shape (k,)
        tol (float): Reduced-cost tolerance
        max_iter (int): Pivot cap per phase
        return_basis (bool): Also return the optimal basis (column indices, one per non-redundant row)

    Returns:
        tuple: (status, z, objective[, basis]), z and objective are None unless status is feasible
    """
    E = np.array(E, dtype=float, ndmin=2)
    f = np.array(f, dtype=float).reshape(-1)
    c = np.array(c, dtype=float).reshape(-1)
    m, k = E.shape
    if m == 0:
        if np.any(c < -tol):
            return UNBOUNDED, None, None
        return FEASIBLE, np.zeros(k), 0.0
    flip = f < 0
    E[flip] *= -1
    f[flip] *= -1

    ## Phase 1: one artificial per row
    T = np.zeros((m + 1, k + m + 1))
    T[:m, :k] = E
    T[:m, k:k + m] = np.eye(m)
    T[:m, -1] = f
    T[m, :k] = -E.sum(axis=0)
    T[m, -1] = -f.sum()
    basis = list(range(k, k + m))
    _iterate(T, basis, k + m, tol, max_iter)
    if -T[m, -1] > 1e-9 * (1.0 + np.max(np.abs(f))):
        logger.debug("phase 1 optimum %.3e: infeasible", -T[m, -1])
        return INFEASIBLE, None, None

    ## Drive artificials out of the basis, drop redundant rows
    keep = []
    for r in range(m):
        if basis[r] >= k:
            cols = np.flatnonzero(np.abs(T[r, :k]) > PIVOT_TOL)
            if cols.size == 0:
                continue
            _pivot(T, r, int(cols[0]))
            basis[r] = int(cols[0])
        keep.append(r)

    ## Phase 2
    T2 = np.zeros((len(keep) + 1, k + 1))
    T2[:-1, :k] = T[keep, :k]
    T2[:-1, -1] = T[keep, -1]
    basis2 = [basis[r] for r in keep]
    T2[-1, :k] = c
    for i, j in enumerate(basis2):
        T2[-1] -= c[j] * T2[i]
    if _iterate(T2, basis2, k, tol, max_iter) == UNBOUNDED:
        return UNBOUNDED, None, None
    z = np.zeros(k)
    z[basis2] = np.clip(T2[:-1, -1], 0, None)
    if return_basis:
        return FEASIBLE, z, float(c @ z), basis2
    return FEASIBLE, z, float(c @ z)


def _as_arrays(constraints, dim):
    if isinstance(constraints, Polyhedron):
        if dim is not None and dim != constraints.dim:
            raise InputError(f"Polyhedron has dimension {constraints.dim}, expected {dim}.")
        return constraints.A, constraints.b, constraints.dim
    constraints = list(constraints)
    dims = {h.dim for h in constraints}
    if dim is not None:
        dims.add(int(dim))
    if len(dims) != 1:
        raise InputError(f"Inconsistent constraint dimensions: {sorted(dims)}.")
    n = dims.pop()
    if not constraints:
        return np.zeros((0, n)), np.zeros(0), n
    return np.vstack([h.normal for h in constraints]), np.array([h.offset for h in constraints]), n


def farkas_certificate(A, b, tol=co.TOL_LP):
    """
    Look for y >= 0 with A^T y = 0 and b^T y = -1, which proves {x : Ax <= b} empty.

    Returns:
        np.ndarray or None: The dual witness, None when the system is feasible
    """
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).reshape(-1)
    if A.shape[0] == 0:
        return None
    E = np.vstack([A.T, b.reshape(1, -1)])
    f = np.zeros(A.shape[1] + 1)
    f[-1] = -1.0
    status, y, _ = simplex_standard(E, f, np.zeros(A.shape[0]), tol)
    return y if status == FEASIBLE else None


def lp_solve(constraints, objective=None, sense="min", dim=None, tol=co.TOL_LP):
    """
    Optimize (or test feasibility of) a linear objective over {x : <a_i, x> <= b_i}.

    Args:
        constraints (list of Halfspace, Polyhedron): The constraints
        objective (tuple, list, np.ndarray, optional): Linear objective, omitted for pure feasibility
        sense (str): "min" or "max"
        dim (int, optional): Dimension, required when there are no constraints
        tol (float): Simplex tolerance

    Returns:
        LPResult: status, witness and objective; infeasible feasibility problems carry a Farkas certificate
    """
    if sense not in ("min", "max"):
        raise InputError(f"sense must be 'min' or 'max', got {sense!r}.")
    A, b, n = _as_arrays(constraints, dim)
    if objective is None:
        obj = np.zeros(n)
    else:
        obj = du.format_vector(objective, n, name="objective")
    sign = 1.0 if sense == "min" else -1.0
    k = A.shape[0]
    E = np.hstack([A, -A, np.eye(k)]) if k else np.zeros((0, 2 * n))
    cost = np.concatenate([sign * obj, -sign * obj, np.zeros(k)])
    status, z, value = simplex_standard(E, b, cost, tol)
    if status == INFEASIBLE:
        farkas = None
        if objective is None:
            farkas = farkas_certificate(A, b, tol)
            if farkas is None:
                raise NumericalFailure("Phase 1 reported infeasibility but no Farkas certificate exists.")
        return LPResult(INFEASIBLE, farkas=farkas)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED)
    x = z[:n] - z[n:2 * n]
    if k:
        violation = float(np.max(A @ x - b))
        if violation > 1e-9 * (1.0 + np.max(np.abs(b)) + np.max(np.abs(x))):
            raise NumericalFailure(f"LP witness violates a constraint by {violation:.3e}.")
    return LPResult(FEASIBLE, witness=x, objective=sign * value if objective is not None else 0.0)


def conic_fit(G, v, tol=co.TOL_LP):
    """
    Best l1 fit of v by a non-negative combination of the rows of G.

    Solves min ||G^T mu - v||_1 over mu >= 0 with the same simplex.

    Returns:
        tuple: (mu, residual)
    """
    v = np.asarray(v, dtype=float).reshape(-1)
    n = v.size
    G = np.asarray(G, dtype=float).reshape(-1, n)
    k = G.shape[0]
    if k == 0:
        return np.zeros(0), float(np.sum(np.abs(v)))
    E = np.hstack([G.T, np.eye(n), -np.eye(n)])
    cost = np.concatenate([np.zeros(k), np.ones(2 * n)])
    status, z, value = simplex_standard(E, v, cost, tol)
    if status != FEASIBLE:
        raise NumericalFailure(f"Conic fit returned status {status}.")
    return z[:k], float(value)


def generators(c):
    """Rays generating c as a finitely generated cone."""
    if isinstance(c, ConeFG):
        return c.rays
    return ray_representation(c).rays


def _null(M, n):
    if M.shape[0] == 0:
        return np.eye(n)
    return null_space(M)


def ray_representation(c: ConeH, tol=co.TOL_GEOM):
    """
    Generators of {x : Ax <= 0}: +-lineality basis plus the extreme rays of the pointed part.

    Extreme rays of the pointed part lie in the row space of A and are the one-dimensional
    solution sets of rank(A) - 1 linearly independent active rows, kept with whichever sign is feasible.
    """
    n = c.dim
    A = c.normals
    if A.shape[0] == 0:
        return ConeFG(np.vstack([np.eye(n), -np.eye(n)]), n)
    L = _null(A, n).T
    r = n - L.shape[0]
    rays = [L, -L]
    for subset in itertools.combinations(range(A.shape[0]), r - 1):
        M = np.vstack([A[list(subset)], L]) if L.shape[0] else A[list(subset)]
        N = _null(M.reshape(-1, n), n)
        if N.shape[1] != 1:
            continue
        d = N[:, 0]
        if np.all(A @ d <= tol):
            rays.append(d.reshape(1, -1))
        elif np.all(-A @ d <= tol):
            rays.append(-d.reshape(1, -1))
    return ConeFG(np.vstack(rays), n)


def polar_fg(c: ConeFG) -> ConeH:
    """Polar of a finitely generated cone: one normal per ray; polar({0}) = R^n."""
    return ConeH(c.rays, c.dim)


def polar_h(c: ConeH) -> ConeFG:
    """Polar of {x : Ax <= 0} is the cone on the rows of A (Farkas); polar(R^n) = {0}."""
    return ConeFG(c.normals, c.dim)


def cone_contains(c, v, tol=co.TOL_CERT_EXACT):
    """
    Membership of v in a cone, within tol * max(1, ||v||).

    H-representation: every <a, v> <= tol. Finitely generated: the l1 conic fit residual is <= tol.
    """
    v = du.format_vector(v, c.dim, name="v")
    scale = max(1.0, float(np.linalg.norm(v)))
    if np.linalg.norm(v) <= co.EPSILON:
        return True
    if isinstance(c, ConeH):
        return bool(np.all(c.normals @ v <= tol * scale))
    if c.is_zero():
        return bool(np.linalg.norm(v) <= tol * scale)
    _, residual = conic_fit(c.rays, v)
    return residual <= tol * scale


def cone_distance(c: ConeFG, v):
    """Euclidean distance from v to a finitely generated cone (non-negative least squares)."""
    v = du.format_vector(v, c.dim, name="v")
    if c.is_zero():
        return float(np.linalg.norm(v))
    _, residual = nnls(c.rays.T, v)
    return float(residual)


def cones_equal(c1, c2, tol=co.TOL_CERT_EXACT):
    """Mutual inclusion: every generator of each cone lies in the other."""
    if c1.dim != c2.dim:
        raise InputError(f"Cannot compare cones of dimensions {c1.dim} and {c2.dim}.")
    return cone_included(c1, c2, tol) and cone_included(c2, c1, tol)


def cone_included(c1, c2, tol=co.TOL_CERT_EXACT):
    """c1 is a subset of c2."""
    return all(cone_contains(c2, g, tol) for g in generators(c1))


def normal_cone(P: Polyhedron, x, tol=co.TOL_PROJ) -> ConeFG:
    """Cone on the normals of the constraints active at x (|<a, x> - b| <= tol)."""
    x = du.format_vector(x, P.dim)
    if not P.contains(x, tol):
        raise PreconditionError(f"Point {x.tolist()} is not in the polyhedron.")
    if not P.halfspaces:
        return ConeFG(np.zeros((0, P.dim)), P.dim)
    active = np.abs(P.A @ x - P.b) <= tol
    return ConeFG(P.A[active], P.dim)


def project_polyhedron(P: Polyhedron, x, tol=co.TOL_PROJ):
    """
    Euclidean projection onto a polyhedron by active-set enumeration.

    For every linearly independent subset S of at most n constraints, solve the equality-constrained
    least squares y = x - A_S^T lam with A_S y = b_S; keep candidates with lam >= 0 that are feasible.
    Those satisfy x - y in the normal cone at y, so they are the (unique) projection.

    Args:
        P (Polyhedron): Non-empty, at most 12 halfspaces
        x (tuple, list, np.ndarray): The point
        tol (float): Feasibility and multiplier tolerance

    Returns:
        np.ndarray: The projection of x onto P
    """
    x = du.format_vector(x, P.dim)
    if P.contains(x, tol):
        return x.copy()
    k, n = len(P.halfspaces), P.dim
    if k > co.MAX_PROJECTION_HALFSPACES:
        raise InputError(f"Projection supports at most {co.MAX_PROJECTION_HALFSPACES} halfspaces, got {k}.")
    if P.is_empty():
        raise InfeasibleError("Cannot project onto an empty polyhedron.")
    A, b = P.A, P.b
    scale = 1.0 + float(np.max(np.abs(x)))
    best, best_dist = None, np.inf
    for size in range(1, min(k, n) + 1):
        for subset in itertools.combinations(range(k), size):
            AS, bS = A[list(subset)], b[list(subset)]
            gram = AS @ AS.T
            if np.linalg.matrix_rank(gram, tol=1e-10) < size:
                continue
            lam = np.linalg.solve(gram, AS @ x - bS)
            if np.any(lam < -tol * scale):
                continue
            y = x - AS.T @ lam
            if not P.contains(y, tol * scale):
                continue
            dist = np.linalg.norm(x - y)
            if dist < best_dist:
                best, best_dist = y, dist
    if best is None:
        raise NumericalFailure(f"No active set satisfied the projection conditions for {x.tolist()}.")
    return best


def minkowski_sum_fg(c1: ConeFG, c2: ConeFG) -> ConeFG:
    """Sum of finitely generated cones: union of the ray lists."""
    if c1.dim != c2.dim:
        raise InputError(f"Cannot add cones of dimensions {c1.dim} and {c2.dim}.")
    return ConeFG(np.vstack([c1.rays, c2.rays]), c1.dim)


def convex_combination(V, v, tol=co.TOL_GEOM):
    """Whether v lies in the convex hull of the rows of V, within tol."""
    V = np.asarray(V, dtype=float)
    v = np.asarray(v, dtype=float).reshape(-1)
    G = np.hstack([V, np.ones((V.shape[0], 1))])
    _, residual = conic_fit(G, np.append(v, 1.0))
    return residual <= tol * max(1.0, float(np.linalg.norm(v)))


def distance_to_hull(v, V):
    """
    Euclidean distance from v to conv(rows of V).

    The nearest point lies on a face spanned by at most n + 1 vertices; every such affine
    hull is tried and candidates with non-negative barycentric weights are kept.
    """
    v = np.asarray(v, dtype=float).reshape(-1)
    V = np.asarray(V, dtype=float).reshape(-1, v.size)
    best = np.inf
    for size in range(1, min(V.shape[0], v.size + 1) + 1):
        for subset in itertools.combinations(range(V.shape[0]), size):
            W = V[list(subset)]
            if size == 1:
                best = min(best, float(np.linalg.norm(v - W[0])))
                continue
            D = (W[1:] - W[0]).T
            if np.linalg.matrix_rank(D, tol=1e-12) < size - 1:
                continue
            gamma = np.linalg.lstsq(D, v - W[0], rcond=None)[0]
            weights = np.append(1 - gamma.sum(), gamma)
            if np.all(weights >= -1e-12):
                best = min(best, float(np.linalg.norm(v - W[0] - D @ gamma)))
    return best


def hausdorff_distance(V, W):
    """Hausdorff distance between conv(V) and conv(W); the maximum is attained at vertices."""
    d1 = max(distance_to_hull(v, W) for v in np.asarray(V, dtype=float))
    d2 = max(distance_to_hull(w, V) for w in np.asarray(W, dtype=float))
    return max(d1, d2)
