#!/usr/bin/env python
# Created by "Thieu" at 14:30, 04/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Built-in fixture corpus and the comparison of each fixture's "expected" block against computed values.

Recognised expected keys: anchor, subdiffs, nrcq, nacq, near_convex, near_convex_witness, D_rays, M_rays,
T_rays, strong_chip, mc_hypotheses, mc_conclusion, cones_exit, projections, certificates, audit_agree,
defect. A displayed_polar_union block is compared as well; disagreements are logged, not counted.
"""

import logging
from pathlib import Path

import numpy as np

from tancert import bestapprox as ba
from tancert import cones as cn
from tancert import geometry as geo
from tancert import tanconvex as tc
from tancert.approximation import ApproximationAnalyzer
from tancert.instance import Instance, load_instance
from tancert.oracles import FeasibilityOracle, angular_resolution, sampled_polar_hull
from tancert.utils import constant as co
from tancert.utils.exception import InputError

logger = logging.getLogger(__name__)

FIXTURE_DIR = Path(__file__).resolve().parent / "data"
FIXTURE_IDS = ("ex21", "ex31", "ex3x", "ex34", "ex41", "ex42")
TOL_FIXTURE_SUBDIFF = 1e-4


def fixture_path(name):
    path = FIXTURE_DIR / f"{name}.json"
    if not path.is_file():
        raise InputError(f"Unknown fixture {name!r}, expected one of {', '.join(FIXTURE_IDS)}.")
    return path


def load_fixture(name, seed=0):
    return load_instance(fixture_path(name), seed=seed)


def _cone(rays, n):
    return geo.ConeFG(np.asarray(rays, dtype=float).reshape(-1, n), n)


class _Mismatches(list):
    def __init__(self, instance_id):
        super().__init__()
        self.instance_id = instance_id

    def check(self, key, expected, got, ok=None):
        if ok is None:
            ok = expected == got
        if not ok:
            self.append(f"{self.instance_id}: {key}: expected {expected}, got {got}")


def check_fixture(inst: Instance, seed=0, n_dirs=None):
    """
    Compare every key of inst.expected against the analyses.

    Returns:
        list: One message per mismatch, naming the fixture id and the key
    """
    exp = inst.expected
    az = ApproximationAnalyzer(inst, anchor=exp.get("anchor", 0), n_dirs=n_dirs, seed=seed)
    _, xbar = az.get_processed_data()
    n = inst.n
    out = _Mismatches(inst.instance_id)

    for name, vertices in exp.get("subdiffs", {}).items():
        found = [g for g in inst.constraints if g.name == name]
        if not found:
            out.check(f"subdiffs.{name}", vertices, "no such constraint", ok=False)
            continue
        P = tc.reconstruct_subdiff(found[0], xbar, n_dirs)
        dist = tc.hausdorff(P, tc.PolytopeV(vertices))
        out.check(f"subdiffs.{name}", vertices, P.vertices.tolist(), ok=dist <= TOL_FIXTURE_SUBDIFF)

    if "nrcq" in exp:
        out.check("nrcq", exp["nrcq"], az.NRCQ().holds)
    if "nacq" in exp:
        out.check("nacq", exp["nacq"], az.NACQ().holds)
    if "near_convex" in exp or "near_convex_witness" in exp:
        near = az.NC()
        if "near_convex" in exp:
            out.check("near_convex", exp["near_convex"], near.holds)
        if "near_convex_witness" in exp:
            got = None if near.witness is None else np.asarray(near.witness).tolist()
            out.check("near_convex_witness", exp["near_convex_witness"], got,
                      ok=got is not None and np.allclose(got, exp["near_convex_witness"]))

    _, polys, _ = az.active_subdifferentials()
    if "D_rays" in exp:
        D = cn.build_D(polys, n)
        out.check("D_rays", exp["D_rays"], geo.ray_representation(D).rays.tolist(),
                  ok=geo.cones_equal(_cone(exp["D_rays"], n), D, co.TOL_GEOM))
    if "M_rays" in exp:
        M = cn.build_M(polys, n)
        out.check("M_rays", exp["M_rays"], M.rays.tolist(), ok=geo.cones_equal(_cone(exp["M_rays"], n), M, co.TOL_GEOM))
    if "T_rays" in exp:
        hull = az.contingent_cone().hull
        out.check("T_rays", exp["T_rays"], hull.rays.tolist(),
                  ok=geo.cones_equal(_cone(exp["T_rays"], n), hull, angular_resolution(n, n_dirs)))

    if "strong_chip" in exp:
        out.check("strong_chip", exp["strong_chip"], az.SCHIP().holds)
    if {"mc_hypotheses", "mc_conclusion", "cones_exit"} & set(exp):
        audit = az.MC()
        if "mc_hypotheses" in exp:
            out.check("mc_hypotheses", exp["mc_hypotheses"], audit["hypotheses_hold"])
        if "mc_conclusion" in exp:
            out.check("mc_conclusion", exp["mc_conclusion"], audit["conclusion_holds"])
        if "cones_exit" in exp:
            out.check("cones_exit", exp["cones_exit"], 0 if audit["conclusion_holds"] else 1)

    tol_proj = co.TOL_CERT_EXACT if ba.projection_provenance(inst) == co.PROVENANCE_EXACT else co.TOL_CERT_SAMPLED
    for row in exp.get("projections", []):
        p = ba.project_feasible(inst, row["x"])
        out.check(f"projections[{row['x']}]", row["p"], p.tolist(),
                  ok=np.linalg.norm(p - np.asarray(row["p"], dtype=float)) <= tol_proj)

    names = [g.name for g in inst.constraints]
    for row in exp.get("certificates", []):
        key = f"certificates[{row['x']}]"
        cert = ba.find_certificate(inst, row["x"], xbar, n_dirs=n_dirs)
        if cert is None:
            out.check(key, row["lambda"], None, ok=False)
            continue
        tol = co.TOL_CERT_EXACT if cert.provenance == co.PROVENANCE_EXACT else co.TOL_CERT_SAMPLED
        out.check(f"{key}.lambda", row["lambda"], cert.lam.tolist(),
                  ok=np.allclose(cert.lam, row["lambda"], rtol=0, atol=tol))
        for name, eta in row.get("eta", {}).items():
            got = cert.eta[names.index(name)]
            out.check(f"{key}.eta.{name}", eta, got.tolist(), ok=np.allclose(got, eta, rtol=0, atol=tol))
        out.check(f"{key}.perturbation", True, ba.check_certificate_perturbation(inst, cert, row["x"], xbar))

    if "audit_agree" in exp or "defect" in exp:
        report = az.AUDIT()
        if "audit_agree" in exp:
            out.check("audit_agree", exp["audit_agree"], all(r["agree"] for r in report["rows"]))
        if "defect" in exp:
            out.check("defect", exp["defect"], report["defect"])

    if "displayed_polar_union" in exp:
        if inst.feasible_hrep is not None:
            polar = geo.normal_cone(inst.feasible_hrep, xbar, co.TOL_FEAS)
        else:
            oracle = FeasibilityOracle.from_instance(inst, "K_tilde")
            polar = sampled_polar_hull(oracle, xbar, inst.bounding_box(), n_dirs, seed)[0]
        pieces = [geo.ConeH(np.asarray(p, dtype=float), n) for p in exp["displayed_polar_union"]]
        verdict = ba.polar_union_agreement(polar, pieces, seed=seed)
        ## A union of cones need not be convex: a disagreement is a reading note, not a mismatch
        if not verdict.holds:
            logger.warning("%s: computed polar differs from the displayed union: %s", inst.instance_id, verdict.detail)

    return list(out)
