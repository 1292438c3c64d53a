#!/usr/bin/env python
# Created by "Thieu" at 16:20, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Brute-force references: membership oracles, grid projection, sampled polar cones and a seeded
generator of instances whose feasible set is a known polyhedron.

Grid projection starts from `points` samples per axis over the box and refines `rounds` times around
the best feasible point, shrinking the half-width by `shrink` each round. With the defaults (41, 6, 4)
the final spacing is range / (40 * 4^6) / 2 ≈ 3e-6 * range, below 1e-4 for boxes up to width 30.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np

from tancert import geometry as geo
from tancert.instance import Instance, instance_from_dict
from tancert.utils import constant as co
from tancert.utils import data_util as du
from tancert.utils.exception import InputError, InconclusiveError

logger = logging.getLogger(__name__)

ORACLE_KINDS = ("K", "C", "K_tilde")


@dataclass(frozen=True, eq=False)
class FeasibilityOracle:
    """
    Deterministic membership test for one of K, C or K̃ = C ∩ K.

    Attributes:
        predicate (callable): Maps a (k, n) array to k booleans
        n (int): Dimension
        kind (str): "K", "C", "K_tilde" or a custom label
        tol_feas (float): Tolerance used by the predicate
    """
    predicate: Callable
    n: int
    kind: str = "custom"
    tol_feas: float = co.TOL_FEAS

    @classmethod
    def from_instance(cls, inst: Instance, kind="K_tilde", tol_feas=co.TOL_FEAS):
        if kind not in ORACLE_KINDS:
            raise InputError(f"Oracle kind must be one of {ORACLE_KINDS}, got {kind!r}.")
        test = {"K": inst.in_K, "C": inst.in_C, "K_tilde": inst.in_K_tilde}[kind]
        return cls(lambda X: test(X, tol_feas), inst.n, kind, tol_feas)

    @classmethod
    def from_predicate(cls, fn, n, kind="custom"):
        """Wrap a point predicate fn(x) -> bool."""
        return cls(lambda X: np.array([bool(fn(x)) for x in X], dtype=bool), int(n), kind)

    def __call__(self, x):
        return bool(self.contains(du.format_vector(x, self.n).reshape(1, -1))[0])

    def contains(self, X):
        X = np.asarray(X, dtype=float).reshape(-1, self.n)
        if X.shape[0] == 0:
            return np.zeros(0, dtype=bool)
        return np.asarray(self.predicate(X), dtype=bool).reshape(-1)


@dataclass(frozen=True, eq=False)
class GridSpec:
    """Bounding box (shape (n, 2)) and refinement schedule of grid_project."""
    box: np.ndarray
    points: int = co.GRID_POINTS
    rounds: int = co.GRID_ROUNDS
    shrink: float = co.GRID_SHRINK
    seeds: Tuple[np.ndarray, ...] = field(default_factory=tuple)

    def __post_init__(self):
        box = du.format_matrix(self.box, 2, name="box")
        if np.any(box[:, 0] >= box[:, 1]):
            raise InputError("Grid box intervals must satisfy lo < hi.")
        if self.points < 11:
            raise InputError(f"Grid resolution must be at least 11 points per axis, got {self.points}.")
        object.__setattr__(self, "box", box)

    @classmethod
    def from_instance(cls, inst: Instance, **kwargs):
        seeds = tuple(p for a in inst.anchors for p in (a.xbar, *a.xs))
        return cls(inst.bounding_box(), seeds=seeds, **kwargs)

    @property
    def diameter(self):
        return float(np.linalg.norm(self.box[:, 1] - self.box[:, 0]))


def _grid(lo, hi, points):
    axes = [np.linspace(l, h, points) for l, h in zip(lo, hi)]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes))


def grid_project(oracle: FeasibilityOracle, x, spec: GridSpec):
    """
    Nearest feasible point to x found by grid search with local refinement.

    Returns:
        np.ndarray: A feasible point; x itself when x is feasible

    Raises:
        InconclusiveError: no feasible grid point (or seed) at the initial resolution
    """
    x = du.format_vector(x, oracle.n)
    if oracle(x):
        return x.copy()
    lo, hi = spec.box[:, 0], spec.box[:, 1]
    cand = _grid(lo, hi, spec.points)
    if spec.seeds:
        cand = np.vstack([cand, np.vstack(spec.seeds)])
    feasible = cand[oracle.contains(cand)]
    if feasible.shape[0] == 0:
        raise InconclusiveError(f"No feasible grid point among {cand.shape[0]}; enlarge the box or the resolution.")
    best = feasible[int(np.argmin(np.linalg.norm(feasible - x, axis=1)))]
    half = 0.5 * (hi - lo)
    for _ in range(spec.rounds):
        half = half / spec.shrink
        cand = np.vstack([_grid(np.maximum(best - half, lo), np.minimum(best + half, hi), spec.points), best])
        feasible = cand[oracle.contains(cand)]
        best = feasible[int(np.argmin(np.linalg.norm(feasible - x, axis=1)))]
    logger.debug("grid projection of %s -> %s", x.tolist(), best.tolist())
    return best


def sample_feasible(oracle: FeasibilityOracle, box, rng, n_samples=co.N_POLAR_SAMPLES, xbar=None, extra=()):
    """
    Feasible points found by rejection sampling: uniform box samples, shells of radius 1e-1..1e-5 around
    xbar, and the extra points.
    """
    box = du.format_matrix(box, 2, name="box")
    lo, hi = box[:, 0], box[:, 1]
    parts = [lo + (hi - lo) * rng.random((int(n_samples), oracle.n))]
    if xbar is not None:
        xbar = du.format_vector(xbar, oracle.n)
        for scale in co.LOCAL_SHELL_SCALES:
            parts.append(xbar + scale * du.random_unit_vectors(rng, 200, oracle.n))
            parts.append(xbar + scale * du.unit_directions(oracle.n, 72 if oracle.n == 2 else 100))
    if len(extra):
        parts.append(np.asarray(extra, dtype=float).reshape(-1, oracle.n))
    Y = np.vstack(parts)
    Y = Y[oracle.contains(Y)]
    if xbar is not None:
        Y = Y[np.linalg.norm(Y - xbar, axis=1) > co.EPSILON]
    return Y


def _polar_tol(box):
    return co.TOL_POLAR_REL * float(np.linalg.norm(box[:, 1] - box[:, 0]))


def polar_sample_set(oracle: FeasibilityOracle, xbar, box, n_samples=co.N_POLAR_SAMPLES, seed=0, extra=()):
    """
    Shared feasible sample set for sampled polar tests; empty when the anchor looks isolated.

    Raises:
        InconclusiveError: between 1 and 49 feasible samples
    """
    xbar = du.format_vector(xbar, oracle.n)
    box = du.format_matrix(box, 2, name="box")
    rng = np.random.default_rng(seed)
    if n_samples < co.MIN_POLAR_SAMPLES:
        raise InputError(f"n_samples must be at least {co.MIN_POLAR_SAMPLES}, got {n_samples}.")
    Y = sample_feasible(oracle, box, rng, n_samples, xbar, extra)
    if Y.shape[0] == 0:
        logger.warning("no feasible point other than the anchor was sampled: treating it as isolated, "
                       "polar = R^%d", oracle.n)
        return Y
    if Y.shape[0] < co.MIN_FEASIBLE_SAMPLES:
        raise InconclusiveError(f"Only {Y.shape[0]} feasible samples (need {co.MIN_FEASIBLE_SAMPLES}) "
                                f"for the sampled polar.")
    return Y


def sampled_polar(oracle: FeasibilityOracle, xbar, u, box, n_samples=co.N_POLAR_SAMPLES, seed=0, extra=()):
    """
    Sampled test of u ∈ (W - xbar)°: max <u, y - xbar> over feasible samples y <= 1e-6 * box diameter.

    An anchor with no sampled feasible neighbour is treated as isolated, so every u passes.
    """
    xbar = du.format_vector(xbar, oracle.n)
    u = du.format_vector(u, oracle.n, name="u")
    if np.linalg.norm(u) <= co.EPSILON:
        return True
    box = du.format_matrix(box, 2, name="box")
    Y = polar_sample_set(oracle, xbar, box, n_samples, seed, extra)
    return bool(polar_accepts(Y, xbar, u.reshape(1, -1), box)[0])


def polar_accepts(Y, xbar, U, box):
    """Row-wise sampled polar test of the directions U against the sample set Y (empty Y accepts all)."""
    U = np.asarray(U, dtype=float).reshape(-1, np.size(xbar))
    if Y.shape[0] == 0:
        return np.ones(U.shape[0], dtype=bool)
    box = np.asarray(box, dtype=float)
    return np.max((Y - xbar) @ U.T, axis=0) <= _polar_tol(box)


def _hull_rays(dirs, accepted):
    n = dirs.shape[1]
    if np.all(accepted):
        return np.vstack([np.eye(n), -np.eye(n)])
    if n != 2:
        return dirs[accepted]
    ## Maximal arcs of consecutive accepted directions, walked from a rejected one
    k = dirs.shape[0]
    start = int(np.flatnonzero(~accepted)[0])
    rays, arc = [], []
    for step in range(1, k + 1):
        idx = (start + step) % k
        if accepted[idx]:
            arc.append(idx)
            continue
        if arc:
            rays.extend([dirs[arc[0]], dirs[arc[-1]]])
            if (len(arc) - 1) * 2 * np.pi / k >= np.pi / 2:
                rays.append(dirs[arc[len(arc) // 2]])
            arc = []
    return np.vstack(rays) if rays else np.zeros((0, n))


def sampled_polar_hull(oracle: FeasibilityOracle, xbar, box, n_dirs=None, seed=0,
                       n_samples=co.N_POLAR_SAMPLES, extra=()):
    """
    Sampled polar cone (W - xbar)° as a finitely generated cone.

    Every direction of unit_directions(n, n_dirs) is tested against one shared sample set; accepted
    directions generate the hull (arc endpoints in R^2, all accepted directions in R^3).

    Returns:
        tuple: (ConeFG, directions, accepted mask)
    """
    xbar = du.format_vector(xbar, oracle.n)
    box = du.format_matrix(box, 2, name="box")
    dirs = du.unit_directions(oracle.n, n_dirs)
    Y = polar_sample_set(oracle, xbar, box, n_samples, seed, extra)
    accepted = polar_accepts(Y, xbar, dirs, box)
    return geo.ConeFG(_hull_rays(dirs, accepted), oracle.n), dirs, accepted


def angular_resolution(n, n_dirs=None):
    """Tolerance for comparing a sampled hull against an exact cone: twice the direction spacing."""
    if n == 1:
        return co.TOL_CERT_SAMPLED
    k = du.unit_directions(n, n_dirs).shape[0]
    spacing = 2 * np.pi / k if n == 2 else np.sqrt(4 * np.pi / k)
    return 2 * spacing + co.TOL_CERT_SAMPLED


def _affine_text(a, b):
    terms = " + ".join(f"{float(ai)!r}*x{i + 1}" for i, ai in enumerate(a))
    return f"({terms} - {float(b)!r})"


def random_instance(seed, n, m):
    """
    Seeded instance whose feasible set C ∩ K is a known polyhedron.

    Each g_j is built on an affine piece l_j(x) = <a_j, x> - b_j with unit a_j: l_j itself, l_j + c |l_j|,
    or l_j + c l_j^3 (c in [0.1, 0.9]); all three satisfy g_j <= 0 iff l_j <= 0. About three quarters of
    the constraints are active at xbar (at least one). C has 0 to 2 random halfspaces. Test points are
    xbar plus normal-cone combinations (projecting back to xbar) and two random box points.
    Seed 0 with n = m = 1 gives the |l| - l pattern, the constraint whose tangential subdifferential is [-2, 0].

    Returns:
        Instance: A validated instance with exact subdifferentials at xbar and feasible_hrep
    """
    if not (1 <= n <= 3 and 1 <= m <= 4):
        raise InputError(f"random_instance needs 1 <= n <= 3 and 1 <= m <= 4, got n={n}, m={m}.")
    rng = np.random.default_rng(seed)
    xbar = np.round(rng.uniform(-1, 1, n), 3)
    key = du.point_key(xbar)
    active = rng.random(m) < 0.75
    if not active.any():
        active[0] = True
    pattern = seed == 0 and n == 1 and m == 1
    constraints, hrep = [], []
    for j in range(m):
        a = np.round(du.random_unit_vectors(rng, 1, n)[0], 6)
        a = a / np.linalg.norm(a)
        slack = 0.0 if active[j] else float(rng.uniform(0.2, 0.5))
        kind = ["affine", "abs", "cubic"][int(rng.integers(0, 3))]
        c = round(float(rng.uniform(0.1, 0.9)), 3)
        if pattern:
            a, kind, c = np.array([-1.0]), "abs", 1.0
        b = float(a @ xbar) + slack
        ell = _affine_text(a, b)
        if kind == "affine":
            text, subdiff = ell, [a]
        elif kind == "abs":
            text = f"{ell} + {c!r}*abs{ell}"
            subdiff = [(1 - c) * a, (1 + c) * a] if active[j] else [(1 - c) * a]
        else:
            text, subdiff = f"{ell} + {c!r}*{ell}^3", [a * (1 + 3 * c * slack ** 2)]
        constraints.append({"name": f"g{j + 1}", "expr": text,
                            "subdiff": {key: [v.tolist() for v in subdiff]}})
        hrep.append({"a": a.tolist(), "b": b})
    C = []
    for _ in range(int(rng.integers(0, 3))):
        h = du.random_unit_vectors(rng, 1, n)[0]
        offset = float(h @ xbar) + (0.0 if rng.random() < 0.5 else float(rng.uniform(0.2, 0.5)))
        C.append({"a": h.tolist(), "b": offset})

    P = geo.Polyhedron.from_arrays([h["a"] for h in hrep + C], [h["b"] for h in hrep + C], n)
    normals = geo.normal_cone(P, xbar, 1e-9).rays
    xs = []
    for _ in range(2):
        weights = rng.uniform(0.2, 1.0, normals.shape[0])
        direction = weights @ normals
        xs.append((xbar + rng.uniform(0.3, 0.8) * direction / max(np.linalg.norm(direction), co.EPSILON)).tolist())
    xs += (xbar + rng.uniform(-1, 1, (2, n))).tolist()
    data = {
        "id": f"random-{seed}-{n}-{m}", "n": n, "constraints": constraints,
        "C": {"halfspaces": C}, "feasible_hrep": {"halfspaces": hrep + C},
        "anchors": [{"xbar": xbar.tolist(), "xs": xs}],
        "box": np.column_stack([xbar - 1, xbar + 1]).tolist(),
    }
    return instance_from_dict(data, source=data["id"], seed=seed)
