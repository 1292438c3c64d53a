#!/usr/bin/env python
# Created by "Thieu" at 16:20, 04/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Command-line front end.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 input or precondition error,
3 numerical failure or inconclusive sampling.
"""

import argparse
import logging
from pathlib import Path

from tancert import corpus
from tancert import geometry as geo
from tancert.approximation import ApproximationAnalyzer
from tancert.instance import load_instance
from tancert.utils import constant as co
from tancert.utils import data_util as du
from tancert.utils.exception import InputError, NumericalFailure, PreconditionError
from tancert.utils.log_util import setup_logger
from tancert.utils.report_util import Report, canonical_json, tag, untag, validate_report

logger = logging.getLogger(__name__)

COMMANDS = ("inspect", "cones", "cq", "project", "certify", "chip", "audit", "paper-examples")
EXACT, SAMPLED = co.PROVENANCE_EXACT, co.PROVENANCE_SAMPLED


def _resolve_instance(text, seed):
    path = Path(text)
    if path.is_file():
        return load_instance(path, seed=seed)
    if path.stem in corpus.FIXTURE_IDS and path.suffix in ("", ".json"):
        logger.info("%s not found on disk, using the built-in fixture %s", text, path.stem)
        return corpus.load_fixture(path.stem, seed=seed)
    raise InputError(f"Cannot read instance {text!r}: no such file or built-in fixture.")


def _tag_verdict(verdict):
    return tag(verdict, verdict.provenance)


def _cmd_inspect(az, args):
    res = az.inspect()
    body = {
        "xbar": tag(res["xbar"], EXACT),
        "g_values": tag(res["g_values"], EXACT),
        "names": res["names"],
        "active": tag(res["active"], EXACT),
        "subdifferentials": [tag(item, item["provenance"]) for item in res["subdifferentials"]],
        "tangential_convexity": {k: _tag_verdict(v) for k, v in res["tangential_convexity"].items()},
    }
    return body, 0


def _cmd_cones(az, args):
    audit = az.MC()
    prov = audit["subdiff_provenance"]
    body = {
        "active": tag(audit["active"], EXACT),
        "subdiff_provenance": prov,
        "D_normals": tag(audit["D_normals"], prov),
        "D_rays": tag(geo.ray_representation(geo.ConeH(audit["D_normals"], az.instance.n)).rays, prov),
        "M_rays": tag(audit["M_rays"], prov),
        "T": tag(audit["T"], SAMPLED),
        "polar_K_directions": tag(audit["polar_K_directions"], SAMPLED),
        "polar_K_tilde_directions": tag(audit["polar_K_tilde_directions"], SAMPLED),
        "near_convex": _tag_verdict(audit["near_convex"]),
        "nacq": _tag_verdict(audit["nacq"]),
    }
    for key in ("T_subset_D", "M_in_polar_K", "M_in_polar_K_tilde", "polar_K_in_M", "polar_K_tilde_in_M",
                "hypotheses_hold", "conclusion_holds", "defect"):
        body[key] = bool(audit[key])
    return body, 0 if audit["conclusion_holds"] else 1


def _cmd_cq(az, args):
    nrcq, nacq, near = az.NRCQ(), az.NACQ(), az.NC()
    body = {"nrcq": _tag_verdict(nrcq), "nacq": _tag_verdict(nacq), "near_convex": _tag_verdict(near)}
    return body, 0 if nacq.holds else 1


def _cmd_project(az, args):
    rows = az.PROJ(x=args.x)
    return [tag(row, row["provenance"]) for row in rows], 0


def _cmd_certify(az, args):
    rows = az.CERT(x=args.x, tol=args.tol)
    body = []
    for row in rows:
        cert = row["certificate"]
        body.append({
            "x": tag(row["x"], EXACT),
            "certificate": "none" if cert is None else tag(cert, cert.provenance),
            "perturbation": bool(row["perturbation"]),
            "stationarity": bool(row["stationarity"]),
        })
    return body, 0 if all(row["certificate"] is not None for row in rows) else 1


def _cmd_chip(az, args):
    verdict = az.SCHIP()
    return _tag_verdict(verdict), 0 if verdict.holds else 1


def _cmd_audit(az, args):
    xs = None if args.x is None else [args.x]
    res = az.AUDIT(xs=xs)
    rows = []
    for row in res["rows"]:
        cert = row["certificate"]
        rows.append({
            "x": tag(row["x"], EXACT),
            "projection": tag(row["projection"], row["projection_provenance"]),
            "projection_provenance": row["projection_provenance"],
            "i": row["i"], "ii": row["ii"], "iii": row["iii"], "agree": row["agree"],
            "certificate": "none" if cert is None else tag(cert, cert.provenance),
        })
    body = {
        "active": tag(res["active"], EXACT),
        "subdiff_provenance": res["subdiff_provenance"],
        "near_convex": _tag_verdict(res["near_convex"]),
        "nacq": _tag_verdict(res["nacq"]),
        "convex_K_tilde": _tag_verdict(res["convex_K_tilde"]),
        "strong_chip": _tag_verdict(res["strong_chip"]),
        "rows": rows,
        "chip_consistent": res["chip_consistent"],
        "hypotheses_hold": res["hypotheses_hold"],
        "defect": res["defect"],
        "note": res["note"],
    }
    return body, 1 if res["defect"] else 0


def _cmd_fixture_corpus(args):
    fixtures, failed = {}, 0
    for name in corpus.FIXTURE_IDS:
        mismatches = corpus.check_fixture(corpus.load_fixture(name, seed=args.seed), seed=args.seed,
                                          n_dirs=args.dirs)
        fixtures[name] = {"passed": not mismatches, "mismatches": mismatches}
        failed += bool(mismatches)
    body = {"fixtures": fixtures, "n_fixtures": tag(len(fixtures), EXACT), "n_failed": tag(failed, EXACT)}
    return body, 0 if failed == 0 else 1


HANDLERS = {
    "inspect": _cmd_inspect,
    "cones": _cmd_cones,
    "cq": _cmd_cq,
    "project": _cmd_project,
    "certify": _cmd_certify,
    "chip": _cmd_chip,
    "audit": _cmd_audit,
}


def _render(obj, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(_render(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)) and item and not _is_flat(item):
                lines.append(f"{pad}-")
                lines.extend(_render(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _is_flat(obj):
    return isinstance(obj, list) and all(not isinstance(v, (dict, list)) for v in obj)


def _scalar(value):
    if isinstance(value, float):
        return f"{value:.6g}"
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    return str(value)


def _parse_args(argv=None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="tancert",
        description="Multiplier certificates, constraint qualifications and strong CHIP checks for best "
                    "approximation from C ∩ {g_j <= 0} with tangentially convex constraints.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--instance", help="instance JSON file, or a built-in fixture id such as ex42")
    parser.add_argument("--anchor", type=int, default=0, help="anchor index (default 0)")
    parser.add_argument("--x", dest="x_text", help='query point, e.g. "0,-1"; defaults to the declared test points')
    parser.add_argument("--tol", type=float, help="certificate tolerance (default by provenance)")
    parser.add_argument("--dirs", type=int, help="sampled directions (default 360 in R^2, 500 in R^3)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--json", action="store_true", help="print the canonical JSON report")
    parser.add_argument("--verbose", action="store_true", help="debug diagnostics on stderr")
    return parser.parse_args(argv)


def run(args) -> int:
    """Run one parsed command and print its report; returns the exit code."""
    if args.tol is not None and not args.tol > 0:
        raise InputError(f"--tol must be positive, got {args.tol}.")
    if args.dirs is not None and args.dirs < 4:
        raise InputError(f"--dirs must be at least 4, got {args.dirs}.")
    tolerances = {"tol_active": co.TOL_ACTIVE, "tol_feas": co.TOL_FEAS,
                  "tol_cert": args.tol if args.tol is not None else co.TOL_CERT_EXACT,
                  "tol_cert_sampled": args.tol if args.tol is not None else co.TOL_CERT_SAMPLED}
    if args.command == "paper-examples":
        body, code = _cmd_fixture_corpus(args)
        instance_id = "corpus"
    else:
        if args.instance is None:
            raise InputError(f"{args.command} needs --instance.")
        inst = _resolve_instance(args.instance, args.seed)
        args.x = None if args.x_text is None else du.parse_point_text(args.x_text, inst.n)
        az = ApproximationAnalyzer(inst, anchor=args.anchor, n_dirs=args.dirs, seed=args.seed)
        body, code = HANDLERS[args.command](az, args)
        instance_id = inst.instance_id
    report = Report(args.command, instance_id, body, args.seed, tolerances).to_dict()
    report["exit_code"] = tag(code, EXACT)
    validate_report(report)
    if args.json:
        print(canonical_json(report))
    else:
        print(f"{args.command} {instance_id}")
        print("\n".join(_render(untag(report["result"]), 1)))
        print(f"exit code: {code}")
    return code


def main(argv=None) -> int:
    args = _parse_args(argv)
    setup_logger(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return run(args)
    except (InputError, PreconditionError) as err:
        logger.error("%s", err)
        return 2
    except NumericalFailure as err:
        logger.error("%s", err)
        if getattr(err, "sequence", None):
            logger.debug("values behind the failure: %s", err.sequence)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
