#!/usr/bin/env python
# Created by "Thieu" at 20:40, 03/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Best approximation from K̃ = C ∩ K and its multiplier characterisation.

For x in R^n and xbar in K̃ three assertions are compared:

    (i)   xbar = P_K̃(x)
    (ii)  there are lambda >= 0 with lambda_j g_j(xbar) = 0 and eta_j in ∂_T g_j(xbar) such that
          xbar = P_C(x - sum lambda_j eta_j)
    (iii) 0 ∈ ∂||. - x||(xbar) + N_C(xbar) + sum lambda_j eta_j

Certificates are found as conic fits of x - xbar over the vertices of the active subdifferentials and
the rays of N_C(xbar), so the search is a single LP for polytope subdifferentials.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from tancert import geometry as geo
from tancert import tanconvex as tc
from tancert.cones import (FeasibilityOracle, active_subdiffs, audit_multiplier_cone, build_D, check_nacq,
                           contingent_cone_sample, default_samples, nearly_convex_probe)
from tancert.instance import Instance
from tancert.oracles import GridSpec, grid_project, sampled_polar_hull, angular_resolution
from tancert.utils import constant as co
from tancert.utils import data_util as du
from tancert.utils.exception import InputError, NumericalFailure
from tancert.utils.report_util import Verdict

logger = logging.getLogger(__name__)

__all__ = ["Instance", "Certificate", "project_feasible", "projection_provenance", "verify_projection",
           "find_certificate", "unit_certificate", "check_certificate_perturbation",
           "check_certificate_stationarity", "norm_subgradient", "is_linear_minimizer", "convexity_probe",
           "polar_union_agreement", "check_strong_chip", "equivalence_audit"]


def projection_provenance(inst: Instance):
    return co.PROVENANCE_EXACT if inst.feasible_hrep is not None else co.PROVENANCE_SAMPLED


def project_feasible(inst: Instance, x, spec: Optional[GridSpec] = None):
    """
    P_K̃(x): exact projection onto feasible_hrep when declared, grid search on the K̃ oracle otherwise.

    Args:
        inst (Instance): The instance
        x (tuple, list, np.ndarray): Query point
        spec (GridSpec, optional): Grid schedule, defaults to the instance box

    Returns:
        np.ndarray: The projection
    """
    x = du.format_vector(x, inst.n)
    if inst.feasible_hrep is not None:
        return geo.project_polyhedron(inst.feasible_hrep, x)
    if inst.box is None and spec is None:
        raise InputError(f"{inst.instance_id}: projection needs feasible_hrep or a bounding box.")
    oracle = FeasibilityOracle.from_instance(inst, "K_tilde")
    return grid_project(oracle, x, GridSpec.from_instance(inst) if spec is None else spec)


def verify_projection(P: geo.Polyhedron, x, x0, tol=co.TOL_CERT_EXACT):
    """x0 = P_P(x) iff x - x0 lies in the normal cone of P at x0."""
    x = du.format_vector(x, P.dim)
    x0 = du.format_vector(x0, P.dim, name="x0")
    return geo.cone_contains(geo.normal_cone(P, x0), x - x0, tol)


@dataclass(frozen=True, eq=False)
class Certificate:
    """
    Multipliers lambda in R^m_+ and tangential subgradients eta_j at xbar.

    Attributes:
        lam (np.ndarray): Multipliers, zero on inactive constraints
        eta (np.ndarray): Row j is eta_j in ∂_T g_j(xbar)
        residual_cs (float): max_j |lambda_j g_j(xbar)|
        residual_membership (float): Distance of x - xbar - sum lambda_j eta_j from N_C(xbar)
        inert (tuple): True where lambda_j = 0 and eta_j is just the first vertex, or zero when inactive
            g_j has no computable subdifferential at xbar
        names (tuple): Constraint names
        provenance (str): "exact" when every subdifferential was declared
    """
    lam: np.ndarray
    eta: np.ndarray
    residual_cs: float
    residual_membership: float
    inert: Tuple[bool, ...] = ()
    names: Tuple[str, ...] = ()
    provenance: str = co.PROVENANCE_EXACT

    @property
    def combination(self):
        """sum_j lambda_j eta_j"""
        if self.lam.size == 0:
            return np.zeros(self.eta.shape[1] if self.eta.ndim == 2 else 0)
        return self.lam @ self.eta

    def to_dict(self):
        return {
            "lambda": self.lam, "eta": self.eta, "names": list(self.names), "inert": list(self.inert),
            "residual_cs": self.residual_cs, "residual_membership": self.residual_membership,
        }


def _all_subdiffs(inst: Instance, xbar, active, active_polys, n_dirs=None):
    polys = {j: P for j, P in zip(active, active_polys)}
    out = []
    for j, g in enumerate(inst.constraints):
        if j in polys:
            out.append(polys[j])
            continue
        ## an inactive eta_j is inert, a zero placeholder stands in when ∂_T g_j(xbar) cannot be built
        try:
            out.append(tc.resolve_subdiff(g, xbar, n_dirs)[0])
        except (InputError, NumericalFailure) as err:
            logger.debug("inactive %s: no subdifferential at %s (%s)", g.name, du.point_key(xbar), err)
            out.append(None)
    return out


def find_certificate(inst: Instance, x, xbar, tol=None, n_dirs=None, tol_active=co.TOL_ACTIVE):
    """
    Search lambda, eta with x - xbar - sum lambda_j eta_j in N_C(xbar).

    Solves E z = x - xbar, z >= 0 over the vertex rays of the active subdifferentials and the rays of
    N_C(xbar), minimising the weight put on N_C. When the exact system is infeasible the l1 conic fit is
    accepted if its residual is at most tol.

    Returns:
        Certificate or None: None when no certificate exists
    """
    x = du.format_vector(x, inst.n)
    xbar = du.format_vector(xbar, inst.n, name="xbar")
    active, polys, provenance = active_subdiffs(inst, xbar, tol_active, n_dirs)
    if tol is None:
        tol = co.TOL_CERT_EXACT if provenance == co.PROVENANCE_EXACT else co.TOL_CERT_SAMPLED
    subdiffs = _all_subdiffs(inst, xbar, active, polys, n_dirs)
    blocks = [polys[k].vertices for k in range(len(active))]
    N = geo.normal_cone(inst.C, xbar, co.TOL_FEAS).rays
    G = np.vstack(blocks + [N]) if blocks or N.shape[0] else np.zeros((0, inst.n))
    n_mu = sum(b.shape[0] for b in blocks)
    v = x - xbar
    scale = max(1.0, float(np.linalg.norm(v)))
    if G.shape[0] == 0:
        if np.linalg.norm(v) > tol * scale:
            return None
        z = np.zeros(0)
    else:
        cost = np.concatenate([np.zeros(n_mu), np.ones(N.shape[0])])
        status, z, _ = geo.simplex_standard(G.T, v, cost)
        if status != geo.FEASIBLE:
            z, residual = geo.conic_fit(G, v)
            if residual > tol * scale:
                logger.debug("no certificate for x = %s: conic residual %.3e", x.tolist(), residual)
                return None

    lam = np.zeros(inst.m)
    eta = np.zeros((inst.m, inst.n))
    inert = [True] * inst.m
    for j, P in enumerate(subdiffs):
        if P is not None:
            eta[j] = P.vertices[0]
    start = 0
    for k, j in enumerate(active):
        mu = z[start:start + blocks[k].shape[0]]
        start += blocks[k].shape[0]
        total = float(mu.sum())
        if total > co.EPSILON:
            lam[j], eta[j], inert[j] = total, (mu @ blocks[k]) / total, False
    g_bar = inst.g_values(xbar)
    residual_cs = float(np.max(np.abs(lam * g_bar))) if inst.m else 0.0
    nc = geo.ConeFG(N, inst.n)
    residual_membership = geo.cone_distance(nc, v - (lam @ eta if inst.m else np.zeros(inst.n)))
    names = tuple(g.name for g in inst.constraints)
    return Certificate(lam, eta, residual_cs, residual_membership, tuple(inert), names, provenance)


def unit_certificate(inst: Instance, x, xbar, tol=None, n_dirs=None):
    """Certificate for the unit displacement xbar + (x - xbar)/||x - xbar|| (x itself when x = xbar)."""
    x = du.format_vector(x, inst.n)
    xbar = du.format_vector(xbar, inst.n, name="xbar")
    r = float(np.linalg.norm(x - xbar))
    target = x if r <= co.EPSILON else xbar + (x - xbar) / r
    return find_certificate(inst, target, xbar, tol, n_dirs)


def _tol_for(cert: Certificate, tol):
    if tol is not None:
        return tol
    return co.TOL_CERT_EXACT if cert.provenance == co.PROVENANCE_EXACT else co.TOL_CERT_SAMPLED


def check_certificate_perturbation(inst: Instance, cert: Certificate, x, xbar, tol=None):
    """Perturbation property: P_C(x - sum lambda_j eta_j) = xbar and complementary slackness."""
    x = du.format_vector(x, inst.n)
    xbar = du.format_vector(xbar, inst.n, name="xbar")
    tol = _tol_for(cert, tol)
    if np.any(cert.lam < 0):
        return False
    p = geo.project_polyhedron(inst.C, x - cert.combination)
    close = np.linalg.norm(p - xbar) <= tol * max(1.0, float(np.linalg.norm(xbar)))
    return bool(close and cert.residual_cs <= tol)


def norm_subgradient(x, xbar):
    """Gradient of ||. - x|| at xbar, None when x = xbar (the subdifferential is the unit ball)."""
    x = du.format_vector(x)
    xbar = du.format_vector(xbar, x.size, name="xbar")
    r = float(np.linalg.norm(xbar - x))
    if r <= co.EPSILON:
        return None
    return (xbar - x) / r


def check_certificate_stationarity(inst: Instance, cert: Certificate, x, xbar, tol=None):
    """
    0 ∈ ∂||. - x||(xbar) + N_C(xbar) + sum lambda_j eta_j.

    x != xbar: -u - sum lambda_j eta_j must lie in N_C(xbar) for the unit vector u = (xbar - x)/||xbar - x||,
    so the certificate has to be scaled for the unit displacement (see unit_certificate).
    x = xbar: some nu in N_C(xbar) has ||sum lambda_j eta_j + nu|| <= 1.
    """
    x = du.format_vector(x, inst.n)
    xbar = du.format_vector(xbar, inst.n, name="xbar")
    tol = _tol_for(cert, tol)
    nc = geo.normal_cone(inst.C, xbar, co.TOL_FEAS)
    w = cert.combination
    u = norm_subgradient(x, xbar)
    if u is None:
        return bool(geo.cone_distance(nc, -w) <= 1.0 + tol)
    return bool(geo.cone_contains(nc, -u - w, tol))


def is_linear_minimizer(H: geo.Polyhedron, u, y, tol=co.TOL_CERT_EXACT):
    """y minimises <-u, .> over H iff u lies in the normal cone of H at y."""
    return geo.cone_contains(geo.normal_cone(H, y), du.format_vector(u, H.dim, name="u"), tol)


def convexity_probe(oracle: FeasibilityOracle, samples, n_pairs=co.N_CONVEXITY_PAIRS, seed=0):
    """
    Midpoint feasibility on n_pairs random pairs of feasible samples.

    Can only falsify convexity: a pass reads "not falsified".
    """
    Y = du.format_matrix(samples, oracle.n, name="samples")
    Y = Y[oracle.contains(Y)]
    if Y.shape[0] < 2:
        return Verdict(True, None, "fewer than two feasible samples", co.PROVENANCE_SAMPLED)
    rng = np.random.default_rng(seed)
    idx = rng.integers(0, Y.shape[0], size=(n_pairs, 2))
    mids = 0.5 * (Y[idx[:, 0]] + Y[idx[:, 1]])
    ok = oracle.contains(mids)
    if not np.all(ok):
        k = int(np.flatnonzero(~ok)[0])
        return Verdict(False, {"y": Y[idx[k, 0]], "y_prime": Y[idx[k, 1]]}, "infeasible midpoint",
                       co.PROVENANCE_SAMPLED)
    return Verdict(True, None, f"not falsified on {n_pairs} pairs", co.PROVENANCE_SAMPLED)


def polar_union_agreement(cone, pieces, n_samples=1000, seed=0, tol=co.TOL_GEOM):
    """
    Compare a computed cone with a union of cones on random unit directions.

    A union of cones need not be convex, so disagreements are reported as a note, never raised.
    """
    rng = np.random.default_rng(seed)
    U = np.vstack([du.random_unit_vectors(rng, n_samples, cone.dim), du.unit_directions(cone.dim)])
    in_cone = np.array([geo.cone_contains(cone, u, tol) for u in U])
    in_union = np.array([any(geo.cone_contains(p, u, tol) for p in pieces) for u in U])
    bad = np.flatnonzero(in_cone != in_union)
    if bad.size:
        return Verdict(False, U[bad[0]], f"{bad.size} of {U.shape[0]} directions disagree with the union",
                       co.PROVENANCE_SAMPLED)
    return Verdict(True, None, f"agrees with the union on {U.shape[0]} directions", co.PROVENANCE_SAMPLED)


def check_strong_chip(inst: Instance, xbar, n_dirs=None, seed=0, audit=None):
    """
    Strong CHIP of {C, K} at xbar: (K̃ - xbar)° = N_C(xbar) + (K - xbar)°.

    Left side: normal cone of feasible_hrep, else the sampled polar hull of K̃. Right side: N_C(xbar) plus
    M(xbar) when the multiplier-cone audit confirms M = (K - xbar)°, else plus the sampled polar hull of K.

    Returns:
        Verdict: witness holds the rays of both sides and their provenance
    """
    xbar = du.format_vector(xbar, inst.n, name="xbar")
    if not inst.C.halfspaces:
        witness = {"left": None, "right": None,
                   "left_provenance": co.PROVENANCE_EXACT, "right_provenance": co.PROVENANCE_EXACT}
        return Verdict(True, witness, "C = R^n, so K̃ = K and both sides coincide", co.PROVENANCE_EXACT)
    nc = geo.normal_cone(inst.C, xbar, co.TOL_FEAS)
    extra = [p for a in inst.anchors for p in (a.xbar, *a.xs)]
    if inst.feasible_hrep is not None:
        left, left_prov = geo.normal_cone(inst.feasible_hrep, xbar, co.TOL_FEAS), co.PROVENANCE_EXACT
    else:
        oracle = FeasibilityOracle.from_instance(inst, "K_tilde")
        left = sampled_polar_hull(oracle, xbar, inst.bounding_box(), n_dirs, seed, extra=extra)[0]
        left_prov = co.PROVENANCE_SAMPLED
    audit = audit_multiplier_cone(inst, xbar, n_dirs, seed) if audit is None else audit
    if audit["M_in_polar_K"] and audit["polar_K_in_M"]:
        polar_k, right_prov = geo.ConeFG(audit["M_rays"], inst.n), co.PROVENANCE_EXACT
    else:
        oracle = FeasibilityOracle.from_instance(inst, "K")
        polar_k = sampled_polar_hull(oracle, xbar, inst.bounding_box(), n_dirs, seed, extra=extra)[0]
        right_prov = co.PROVENANCE_SAMPLED
    right = geo.minkowski_sum_fg(nc, polar_k)
    exact = left_prov == right_prov == co.PROVENANCE_EXACT
    tol = co.TOL_CERT_EXACT if exact else angular_resolution(inst.n, n_dirs)
    holds = geo.cones_equal(left, right, tol)
    witness = {"left": geo.generators(left), "right": right.rays,
               "left_provenance": left_prov, "right_provenance": right_prov}
    detail = "polar of the intersection equals the sum of polars" if holds else "polar sum differs"
    return Verdict(holds, witness, detail, co.PROVENANCE_EXACT if exact else co.PROVENANCE_SAMPLED)


def equivalence_audit(inst: Instance, xbar, xs=None, n_dirs=None, seed=0):
    """
    Compare (i), (ii) and (iii) for every x in xs (the anchor's declared points by default).

    Only the sampled x are audited; the report never claims the equivalence for all of R^n. A disagreement,
    or strong CHIP failing under near convexity and NACQ, is a defect only when every hypothesis holds.

    Returns:
        dict: Hypothesis verdicts, per-x rows, strong CHIP and defect flags
    """
    xbar = du.format_vector(xbar, inst.n, name="xbar")
    if xs is None:
        matches = [a for a in inst.anchors if np.allclose(a.xbar, xbar)]
        xs = matches[0].xs if matches else ()
    oracle_k = FeasibilityOracle.from_instance(inst, "K")
    oracle_kt = FeasibilityOracle.from_instance(inst, "K_tilde")
    near = nearly_convex_probe(oracle_k, xbar, default_samples(inst, oracle_k, xbar, seed))
    active, polys, provenance = active_subdiffs(inst, xbar)
    nacq = check_nacq(build_D(polys, inst.n), contingent_cone_sample(oracle_kt, xbar, n_dirs))
    convex = convexity_probe(oracle_kt, default_samples(inst, oracle_kt, xbar, seed), seed=seed)
    audit = audit_multiplier_cone(inst, xbar, n_dirs, seed) if inst.C.halfspaces else None
    chip = check_strong_chip(inst, xbar, n_dirs, seed, audit)

    exact = projection_provenance(inst) == provenance == co.PROVENANCE_EXACT
    tol_proj = co.TOL_CERT_EXACT if exact else co.TOL_CERT_SAMPLED
    rows = []
    for x in xs:
        x = du.format_vector(x, inst.n)
        p = project_feasible(inst, x)
        assert_i = bool(np.linalg.norm(p - xbar) <= tol_proj * max(1.0, float(np.linalg.norm(xbar))))
        cert = find_certificate(inst, x, xbar)
        assert_ii = cert is not None and check_certificate_perturbation(inst, cert, x, xbar)
        cert_u = unit_certificate(inst, x, xbar)
        assert_iii = cert_u is not None and check_certificate_stationarity(inst, cert_u, x, xbar)
        rows.append({
            "x": x, "projection": p, "projection_provenance": projection_provenance(inst),
            "i": assert_i, "ii": bool(assert_ii), "iii": bool(assert_iii),
            "agree": assert_i == bool(assert_ii) == bool(assert_iii),
            "certificate": cert,
        })
    hypotheses = bool(near.holds and nacq.holds and convex.holds)
    chip_ok = not (near.holds and nacq.holds) or chip.holds
    defect = hypotheses and (not all(r["agree"] for r in rows) or not chip_ok)
    if defect:
        logger.warning("%s: equivalence fails at %s although every hypothesis holds",
                       inst.instance_id, du.point_key(xbar))
    return {
        "active": list(active), "subdiff_provenance": provenance,
        "near_convex": near, "nacq": nacq, "convex_K_tilde": convex,
        "rows": rows, "strong_chip": chip, "chip_consistent": bool(chip_ok),
        "hypotheses_hold": hypotheses, "defect": bool(defect),
        "note": f"equivalence checked on {len(rows)} sampled point(s) only",
    }
