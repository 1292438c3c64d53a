#!/usr/bin/env python
# Created by "Thieu" at 18:05, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Cones attached to an anchor xbar of K̃ = C ∩ K.

    + D(xbar): directions with <v, d> <= 0 for every vertex v of every active tangential subdifferential.
      Vertices suffice because <., d> is linear on each polytope.
    + M(xbar): the multiplier cone, generated by the same vertices.
    + The contingent cone of K̃, sampled on an alpha-ladder with local perturbations of each direction.

Near convexity and the contingent cone can only be falsified by sampling; reports say "not falsified"
rather than claiming a proof.
"""

import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from tancert import geometry as geo
from tancert import tanconvex as tc
from tancert.instance import Instance
from tancert.oracles import FeasibilityOracle, polar_sample_set, polar_accepts, angular_resolution
from tancert.utils import constant as co
from tancert.utils import data_util as du
from tancert.utils.exception import InputError, PreconditionError
from tancert.utils.report_util import Verdict

logger = logging.getLogger(__name__)

__all__ = ["FeasibilityOracle", "ConeSampleReport", "build_D", "build_M", "contingent_cone_sample",
           "nearly_convex_probe", "default_samples", "check_nrcq", "check_nacq", "audit_multiplier_cone",
           "active_subdiffs"]

PERTURBATION_NOTE = ("contingent directions are accepted with perturbations up to 10*alpha; whether this "
                     "radius under-covers non-polyhedral sets is untested")


def _stack_vertices(subdiffs, n):
    subdiffs = list(subdiffs)
    if n is None:
        if not subdiffs:
            raise InputError("Dimension is required when no subdifferential is given.")
        n = subdiffs[0].dim
    if not subdiffs:
        return np.zeros((0, n)), n
    return np.vstack([P.vertices for P in subdiffs]), n


def build_D(subdiffs, n=None) -> geo.ConeH:
    """Linearized tangential cone: one normal per subdifferential vertex; R^n without active constraints."""
    V, n = _stack_vertices(subdiffs, n)
    return geo.ConeH(V, n)


def build_M(subdiffs, n=None) -> geo.ConeFG:
    """Multiplier cone: rays are the vertices of the active subdifferentials; {0} without active constraints."""
    V, n = _stack_vertices(subdiffs, n)
    return geo.ConeFG(V, n)


def active_subdiffs(inst: Instance, xbar, tol_active=co.TOL_ACTIVE, n_dirs=None):
    """
    Active index set at xbar with the subdifferential of each active constraint.

    Returns:
        tuple: (active indices, list of PolytopeV, provenance)
    """
    active = tc.active_set(inst.constraints, xbar, tol_active)
    subdiffs, provenance = [], co.PROVENANCE_EXACT
    for j in active:
        P, prov = tc.resolve_subdiff(inst.constraints[j], xbar, n_dirs)
        subdiffs.append(P)
        if prov != co.PROVENANCE_EXACT:
            provenance = prov
    return active, subdiffs, provenance


@dataclass(eq=False)
class ConeSampleReport:
    """
    Sampled contingent cone of a set at xbar.

    Attributes:
        directions (np.ndarray): Tested unit directions
        accepted (np.ndarray): Per-direction verdicts
        failed_alpha (np.ndarray): First alpha at which a direction failed (nan when accepted)
        hull (geometry.ConeFG): Cone generated by the accepted directions
        oracle (FeasibilityOracle): Oracle the sample was taken from
        xbar (np.ndarray): The anchor
        metadata (dict): Ladder, radius and the open perturbation-radius note
    """
    directions: np.ndarray
    accepted: np.ndarray
    failed_alpha: np.ndarray
    hull: geo.ConeFG
    oracle: Optional[FeasibilityOracle] = None
    xbar: Optional[np.ndarray] = None
    metadata: dict = field(default_factory=dict)

    @property
    def accepted_directions(self):
        return self.directions[self.accepted]

    def to_dict(self):
        return {
            "n_directions": int(self.directions.shape[0]),
            "n_accepted": int(np.sum(self.accepted)),
            "accepted_directions": self.accepted_directions,
            "hull_rays": self.hull.rays,
            "metadata": self.metadata,
        }


def _mesh_offsets(n):
    grid = np.stack(np.meshgrid(*[[-1.0, 0.0, 1.0]] * n, indexing="ij"), axis=-1).reshape(-1, n)
    grid = grid[np.any(grid != 0, axis=1)]
    return grid / np.linalg.norm(grid, axis=1, keepdims=True)


def alpha_ladder(oracle: FeasibilityOracle, xbar, dirs):
    """
    Contingent acceptance test for each direction d.

    d is accepted iff for every alpha in 1e-1..1e-6 some d' with ||d' - d|| <= 10 alpha (d itself, or a
    mesh neighbour at radius 10 alpha * {1, 1/3, 1/9}) gives a feasible xbar + alpha d'.

    Returns:
        tuple: (accepted mask, first failing alpha per direction, nan when accepted)
    """
    xbar = du.format_vector(xbar, oracle.n)
    dirs = du.format_matrix(dirs, oracle.n, name="dirs")
    offsets = np.vstack([np.zeros((1, oracle.n))] +
                        [r * _mesh_offsets(oracle.n) for r in co.CONTINGENT_REFINE])
    accepted = np.ones(dirs.shape[0], dtype=bool)
    failed = np.full(dirs.shape[0], np.nan)
    for alpha in co.CONTINGENT_ALPHAS:
        todo = np.flatnonzero(accepted)
        if todo.size == 0:
            break
        cand = dirs[todo, None, :] + co.CONTINGENT_RADIUS * alpha * offsets[None, :, :]
        feas = oracle.contains((xbar + alpha * cand).reshape(-1, oracle.n)).reshape(todo.size, -1)
        lost = todo[~feas.any(axis=1)]
        accepted[lost] = False
        failed[lost] = alpha
    return accepted, failed


def contingent_cone_sample(oracle: FeasibilityOracle, xbar, n_dirs=None) -> ConeSampleReport:
    """
    Sample the contingent cone of the oracle's set at xbar over unit_directions(n, n_dirs).
    """
    xbar = du.format_vector(xbar, oracle.n)
    if not oracle(xbar):
        raise PreconditionError(f"Anchor {xbar.tolist()} is not in the sampled set.")
    dirs = du.unit_directions(oracle.n, n_dirs)
    accepted, failed = alpha_ladder(oracle, xbar, dirs)
    hull = geo.ConeFG(dirs[accepted], oracle.n)
    metadata = {"alphas": list(co.CONTINGENT_ALPHAS), "radius_factor": co.CONTINGENT_RADIUS,
                "note": PERTURBATION_NOTE}
    logger.debug("contingent sample: %d of %d directions accepted", int(accepted.sum()), dirs.shape[0])
    return ConeSampleReport(dirs, accepted, failed, hull, oracle, xbar, metadata)


def nearly_convex_probe(oracle: FeasibilityOracle, xbar, samples) -> Verdict:
    """
    Falsification test of near convexity at xbar.

    Sample y passes iff xbar + t (y - xbar) is feasible for every t = 2^-10..2^-20 (t = 2^-1..2^-9 are
    evaluated and reported but not required). The probe passes iff every sample does.
    """
    xbar = du.format_vector(xbar, oracle.n)
    if not oracle(xbar):
        raise PreconditionError(f"Anchor {xbar.tolist()} is not in the sampled set.")
    Y = du.format_matrix(samples, oracle.n, name="samples")
    Y = Y[np.linalg.norm(Y - xbar, axis=1) > co.EPSILON]
    bad = Y[~oracle.contains(Y)]
    if bad.shape[0]:
        raise PreconditionError(f"Near convexity samples must be feasible, {du.point_key(bad[0])} is not.")
    steps = np.array(co.NEAR_CONVEX_STEPS)
    tail = steps <= 2.0 ** -co.NEAR_CONVEX_TAIL
    for y in Y:
        feas = oracle.contains(xbar + steps[:, None] * (y - xbar))
        if not np.all(feas[tail]):
            t = float(steps[tail][~feas[tail]][0])
            return Verdict(False, y, f"xbar + t(y - xbar) infeasible at t = {t:.3g}", co.PROVENANCE_SAMPLED)
    return Verdict(True, None, f"not falsified on {Y.shape[0]} samples", co.PROVENANCE_SAMPLED)


def default_samples(inst: Instance, oracle: FeasibilityOracle, xbar, seed=0, n_random=co.N_RANDOM_SAMPLES):
    """
    Samples for nearly_convex_probe, in order: xbar, feasible declared points, feasible box corners,
    then n_random rejection samples from the box.
    """
    xbar = du.format_vector(xbar, inst.n)
    declared = [p for a in inst.anchors for p in (a.xbar, *a.xs)]
    parts = [xbar.reshape(1, -1)]
    if declared:
        D = np.vstack(declared)
        parts.append(D[oracle.contains(D)])
    if inst.box is not None:
        corners = np.stack(np.meshgrid(*inst.box, indexing="ij"), axis=-1).reshape(-1, inst.n)
        parts.append(corners[oracle.contains(corners)])
        rng = np.random.default_rng(seed)
        lo, hi = inst.box[:, 0], inst.box[:, 1]
        U = lo + (hi - lo) * rng.random((200 * n_random, inst.n))
        parts.append(U[oracle.contains(U)][:n_random])
    return np.vstack(parts)


def check_nrcq(subdiffs, n=None) -> Verdict:
    """
    Non-smooth Robinson condition: some nu has <v, nu> < 0 for every active subdifferential vertex v.

    Solves max delta s.t. <v, nu> + delta <= 0, |nu_i| <= 1, delta <= 1; holds iff delta > 1e-8.
    """
    V, n = _stack_vertices(subdiffs, n)
    if V.shape[0] == 0:
        return Verdict(True, np.eye(n)[0], "no active constraints")
    halfspaces = [geo.Halfspace(np.append(v, 1.0), 0.0) for v in V]
    for i in range(n):
        e = np.zeros(n + 1)
        e[i] = 1.0
        halfspaces += [geo.Halfspace(e, 1.0), geo.Halfspace(-e, 1.0)]
    e = np.zeros(n + 1)
    e[-1] = 1.0
    halfspaces.append(geo.Halfspace(e, 1.0))
    res = geo.lp_solve(halfspaces, objective=e, sense="max")
    delta = float(res.objective)
    if delta > co.TOL_NRCQ:
        return Verdict(True, res.witness[:n], f"delta = {delta:.6g}")
    return Verdict(False, None, f"delta = {delta:.3g}: no strictly separating direction")


def check_nacq(D: geo.ConeH, report: ConeSampleReport, tol_angle=co.TOL_ANGLE) -> Verdict:
    """
    Non-smooth Abadie condition D(xbar) ⊆ T(xbar), tested on the generators of D.

    Every ray r of D must pass the alpha-ladder directly, and every sampled direction within tol_angle
    radians of r must have been accepted.
    """
    if D.dim != report.directions.shape[1]:
        raise InputError(f"D has dimension {D.dim}, the contingent sample {report.directions.shape[1]}.")
    rays = geo.ray_representation(D).rays
    if rays.shape[0] == 0:
        return Verdict(True, None, "D = {0}", co.PROVENANCE_SAMPLED)
    direct, _ = alpha_ladder(report.oracle, report.xbar, rays)
    cosines = np.clip(rays @ report.directions.T, -1.0, 1.0)
    near = np.arccos(cosines) <= tol_angle
    for r, ok, close in zip(rays, direct, near):
        if not ok or not np.all(report.accepted[close]):
            return Verdict(False, r, "a generator of D is not a contingent direction", co.PROVENANCE_SAMPLED)
    return Verdict(True, None, f"all {rays.shape[0]} generators of D are contingent directions",
                   co.PROVENANCE_SAMPLED)


def audit_multiplier_cone(inst: Instance, xbar, n_dirs=None, seed=0, tol_active=co.TOL_ACTIVE):
    """
    Audit of T ⊆ D under near convexity, and of M = (K - xbar)° = (K̃ - xbar)° under near convexity + NACQ.

    Each conclusion is computed independently of its hypotheses so a failure can be attributed:
    `defect` is raised only when both hypotheses hold and a conclusion fails.

    Returns:
        dict: Verdicts, cones and flags
    """
    xbar = du.format_vector(xbar, inst.n)
    box = inst.bounding_box()
    active, subdiffs, provenance = active_subdiffs(inst, xbar, tol_active)
    D, M = build_D(subdiffs, inst.n), build_M(subdiffs, inst.n)
    oracle_k = FeasibilityOracle.from_instance(inst, "K")
    oracle_kt = FeasibilityOracle.from_instance(inst, "K_tilde")
    near = nearly_convex_probe(oracle_k, xbar, default_samples(inst, oracle_k, xbar, seed))
    T = contingent_cone_sample(oracle_kt, xbar, n_dirs)
    nacq = check_nacq(D, T)
    t_in_d = all(geo.cone_contains(D, d, co.TOL_CONE_INCLUSION) for d in T.accepted_directions)

    extra = [p for a in inst.anchors for p in (a.xbar, *a.xs)]
    dirs = du.unit_directions(inst.n, n_dirs)
    tol = angular_resolution(inst.n, n_dirs)
    results = {}
    for name, oracle in (("K", oracle_k), ("K_tilde", oracle_kt)):
        Y = polar_sample_set(oracle, xbar, box, seed=seed, extra=extra)
        m_in_polar = bool(np.all(polar_accepts(Y, xbar, M.rays, box))) if M.rays.shape[0] else True
        accepted = dirs[polar_accepts(Y, xbar, dirs, box)]
        polar_in_m = all(geo.cone_contains(M, d, tol) for d in accepted)
        results[name] = (m_in_polar, polar_in_m, accepted)

    hypotheses = bool(near.holds and nacq.holds)
    conclusion = all(results[k][0] and results[k][1] for k in results)
    defect = (near.holds and not t_in_d) or (hypotheses and not conclusion)
    if defect:
        logger.warning("%s: conclusion fails although its hypotheses hold", inst.instance_id)
    return {
        "active": list(active), "subdiff_provenance": provenance,
        "D_normals": D.normals, "M_rays": M.rays,
        "near_convex": near, "nacq": nacq,
        "T": T, "T_subset_D": t_in_d,
        "M_in_polar_K": results["K"][0], "M_in_polar_K_tilde": results["K_tilde"][0],
        "polar_K_in_M": results["K"][1], "polar_K_tilde_in_M": results["K_tilde"][1],
        "polar_K_directions": results["K"][2], "polar_K_tilde_directions": results["K_tilde"][2],
        "hypotheses_hold": hypotheses, "conclusion_holds": conclusion, "defect": bool(defect),
    }
