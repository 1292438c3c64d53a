#!/usr/bin/env python
# Created by "Thieu" at 10:02, 04/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import numpy as np

from tancert.analyzer import Analyzer
from tancert import bestapprox as ba
from tancert import cones as cn
from tancert import tanconvex as tc
from tancert.instance import Instance, load_instance
from tancert.oracles import FeasibilityOracle
from tancert.utils import constant as co
from tancert.utils import data_util as du
from tancert.utils.exception import InputError


class ApproximationAnalyzer(Analyzer):
    """
    Defines an ApproximationAnalyzer class that holds every check of the best approximation problem
    from K̃ = C ∩ K at one anchor xbar

        + Subdifferentials, D(xbar) and M(xbar) are computed once per anchor and cached
        + Sampled checks (contingent cone, near convexity, sampled polars) are seeded by `seed`
        + Verdicts carry provenance "exact" or "sampled"

    Parameters
    ----------
    instance: Instance, str, dict, default = None
        The instance, a path to its JSON file or the decoded document.

    anchor: int, default = 0
        Index of the anchor.

    tol_active: float, default = 1e-9
        |g_j(xbar)| <= tol_active marks constraint j active.

    n_dirs: int, default = None
        Directions used by sampled cones (360 in R^2, 500 in R^3).

    seed: int, default = 0
        Seed of every random source.
    """

    SUPPORT = {
        "NRCQ": {"type": "verdict", "provenance": "exact", "holds": "a strictly separating direction exists"},
        "NACQ": {"type": "verdict", "provenance": "sampled", "holds": "D(xbar) is inside the contingent cone"},
        "NC": {"type": "verdict", "provenance": "sampled", "holds": "K not falsified as nearly convex"},
        "SCHIP": {"type": "verdict", "provenance": "exact|sampled", "holds": "polar of C ∩ K = sum of polars"},
        "CERT": {"type": "certificate", "provenance": "exact|sampled", "holds": "certificate found"},
        "PROJ": {"type": "point", "provenance": "exact|sampled", "holds": "always"},
        "AUDIT": {"type": "report", "provenance": "sampled", "holds": "no defect"},
        "MC": {"type": "report", "provenance": "sampled", "holds": "M(xbar) equals both polars"},
    }

    def __init__(self, instance=None, anchor=0, tol_active=co.TOL_ACTIVE, n_dirs=None, seed=0, **kwargs):
        super().__init__(instance, anchor, **kwargs)
        self.tol_active = tol_active
        self.n_dirs = n_dirs
        self.seed = seed
        self._cache = {}

    def get_processed_data(self, instance=None, anchor=None):
        """
        Args:
            instance (Instance, str, dict): The instance, the one given at creation when None
            anchor (int): Anchor index, the one given at creation when None

        Returns:
            instance_final: Instance used in the check
            xbar: The anchor point
        """
        if instance is not None:
            inst = instance if isinstance(instance, Instance) else load_instance(instance)
        elif self.instance is not None:
            inst = self.instance
        else:
            raise InputError("instance is None. You need to pass an instance to object creation or function called.")
        return inst, inst.anchor(self.anchor if anchor is None else anchor).xbar

    def _cached(self, name, inst, xbar, compute):
        key = (name, id(inst), du.point_key(xbar))
        ## the instance is stored with the value so its id cannot be reused while cached
        if key not in self._cache or self._cache[key][0] is not inst:
            self._cache[key] = (inst, compute())
        return self._cache[key][1]

    def _query_points(self, inst, xbar, x):
        if x is not None:
            return [du.format_vector(x, inst.n)]
        matches = [a for a in inst.anchors if np.allclose(a.xbar, xbar)]
        if not matches or not matches[0].xs:
            raise InputError(f"{inst.instance_id}: no --x given and the anchor declares no test points.")
        return list(matches[0].xs)

    def active_subdifferentials(self, instance=None, anchor=None, **kwargs):
        """
        Active set at xbar with the tangential subdifferential of each active constraint

        Returns:
            result (tuple): (active indices, list of PolytopeV, provenance)
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        return self._cached("subdiff", inst, xbar,
                            lambda: cn.active_subdiffs(inst, xbar, self.tol_active, self.n_dirs))

    def inspect(self, instance=None, anchor=None, **kwargs):
        """
        Constraint values, active set and subdifferentials at xbar

        Returns:
            result (dict): keys "g_values", "active", "subdifferentials", "tangential_convexity"
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        active, polys, _ = self.active_subdifferentials(instance, anchor)
        subdiffs = []
        for j, P in zip(active, polys):
            declared = inst.constraints[j].subdiff_at(xbar) is not None
            prov = co.PROVENANCE_EXACT if declared else co.PROVENANCE_SAMPLED
            subdiffs.append({"index": j, "name": inst.constraints[j].name, "vertices": P.vertices,
                             "provenance": prov})
        probes = {inst.constraints[j].name: tc.tangential_convexity_probe(inst.constraints[j], xbar, seed=self.seed)
                  for j in active}
        return {"xbar": xbar, "g_values": inst.g_values(xbar), "names": [g.name for g in inst.constraints],
                "active": list(active), "subdifferentials": subdiffs, "tangential_convexity": probes}

    def robinson_constraint_qualification(self, instance=None, anchor=None, **kwargs):
        """
        Non-smooth Robinson constraint qualification (NRCQ): exact LP verdict, witness nu when it holds

        Returns:
            result (Verdict): NRCQ verdict
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        _, polys, _ = self.active_subdifferentials(instance, anchor)
        return cn.check_nrcq(polys, inst.n)

    def contingent_cone(self, instance=None, anchor=None, **kwargs):
        """Sampled contingent cone of K̃ at xbar (ConeSampleReport), cached per anchor"""
        inst, xbar = self.get_processed_data(instance, anchor)
        oracle = FeasibilityOracle.from_instance(inst, "K_tilde")
        return self._cached("contingent", inst, xbar, lambda: cn.contingent_cone_sample(oracle, xbar, self.n_dirs))

    def abadie_constraint_qualification(self, instance=None, anchor=None, **kwargs):
        """
        Non-smooth Abadie constraint qualification (NACQ): D(xbar) inside the sampled contingent cone

        Returns:
            result (Verdict): NACQ verdict, witness is a generator of D that failed
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        _, polys, _ = self.active_subdifferentials(instance, anchor)
        return cn.check_nacq(cn.build_D(polys, inst.n), self.contingent_cone(instance, anchor))

    def near_convexity(self, instance=None, anchor=None, **kwargs):
        """
        Near convexity of K at xbar, falsification only

        Returns:
            result (Verdict): witness is the failing sample y
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        oracle = FeasibilityOracle.from_instance(inst, "K")
        return cn.nearly_convex_probe(oracle, xbar, cn.default_samples(inst, oracle, xbar, self.seed))

    def multiplier_cone(self, instance=None, anchor=None, **kwargs):
        """
        Audit of T ⊆ D and of M(xbar) = (K - xbar)° = (K̃ - xbar)°

        Returns:
            result (dict): see cones.audit_multiplier_cone
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        return self._cached("audit_mc", inst, xbar,
                            lambda: cn.audit_multiplier_cone(inst, xbar, self.n_dirs, self.seed, self.tol_active))

    def strong_chip(self, instance=None, anchor=None, **kwargs):
        """
        Strong CHIP of {C, K} at xbar

        Returns:
            result (Verdict): witness holds both sides of the polar equation
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        audit = self.multiplier_cone(instance, anchor) if inst.C.halfspaces else None
        return ba.check_strong_chip(inst, xbar, self.n_dirs, self.seed, audit)

    def projection(self, instance=None, anchor=None, x=None, **kwargs):
        """
        Best approximation P_K̃(x) for one x, or for every declared test point when x is None

        Returns:
            result (list): one dict per x with "x", "projection" and "provenance"
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        return [{"x": q, "projection": ba.project_feasible(inst, q), "provenance": ba.projection_provenance(inst)}
                for q in self._query_points(inst, xbar, x)]

    def certificate(self, instance=None, anchor=None, x=None, tol=None, **kwargs):
        """
        Multiplier certificate for x (or every declared test point) with both checks

        Returns:
            result (list): one dict per x with "certificate" (None when absent), "perturbation", "stationarity"
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        rows = []
        for q in self._query_points(inst, xbar, x):
            cert = ba.find_certificate(inst, q, xbar, tol, self.n_dirs, self.tol_active)
            unit = ba.unit_certificate(inst, q, xbar, tol, self.n_dirs)
            rows.append({
                "x": q, "certificate": cert,
                "perturbation": cert is not None and ba.check_certificate_perturbation(inst, cert, q, xbar, tol),
                "stationarity": unit is not None and ba.check_certificate_stationarity(inst, unit, q, xbar, tol),
            })
        return rows

    def equivalence(self, instance=None, anchor=None, xs=None, **kwargs):
        """
        Equivalence audit of projection, perturbation and stationarity

        Returns:
            result (dict): see bestapprox.equivalence_audit
        """
        inst, xbar = self.get_processed_data(instance, anchor)
        return ba.equivalence_audit(inst, xbar, xs, self.n_dirs, self.seed)

    NRCQ = robinson_constraint_qualification
    NACQ = abadie_constraint_qualification
    NC = near_convexity
    SCHIP = strong_chip
    CERT = certificate
    PROJ = projection
    AUDIT = equivalence
    MC = multiplier_cone
