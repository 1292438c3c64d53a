#!/usr/bin/env python
# Created by "Thieu" at 15:02, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

"""
Problem instances: constraints g_j, the convex polyhedron C, an optional H-representation of
C ∩ K, anchor points and a bounding box, loaded from the JSON format::

    {"n": 2,
     "constraints": [{"name": "g1", "expr": "abs(x2) - x1", "subdiff": {"0,0": [[-1, -1], [-1, 1]]}}],
     "C": {"halfspaces": [{"a": [-1, 0], "b": 0}]},
     "feasible_hrep": {"halfspaces": [...]},
     "anchors": [{"xbar": [0, 0], "xs": [[-1, 0]]}],
     "box": [[-1, 1], [-1, 1]]}

Fixture files may also carry "id", "description" and "expected"; the loader keeps them aside.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from tancert import expr as ex
from tancert import geometry as geo
from tancert import tanconvex as tc
from tancert.utils import constant as co
from tancert.utils import data_util as du
from tancert.utils import io_util
from tancert.utils.exception import InputError, PreconditionError

logger = logging.getLogger(__name__)

TOP_LEVEL_KEYS = {"n", "constraints", "C", "feasible_hrep", "anchors", "box", "id", "description", "expected"}
MAX_DIMENSION = 4


@dataclass(frozen=True, eq=False)
class Anchor:
    """A reference point xbar of C ∩ K and the query points x audited against it."""
    xbar: np.ndarray
    xs: Tuple[np.ndarray, ...] = ()


@dataclass(frozen=True, eq=False)
class Instance:
    """
    Full description of a best approximation problem from K̃ = C ∩ K, K = {x : g_j(x) <= 0}.

    Attributes:
        n (int): Dimension
        constraints (tuple): ConstraintFn values g_1..g_m
        C (geometry.Polyhedron): The convex set C (no halfspaces means R^n)
        feasible_hrep (geometry.Polyhedron, optional): H-representation of K̃ when known
        anchors (tuple): Anchor values
        box (np.ndarray, optional): Per-axis [lo, hi] intervals, shape (n, 2)
        instance_id (str): Name used in reports
        description (str): Free text
        expected (dict): Expected-value block of fixture files
    """
    n: int
    constraints: Tuple[tc.ConstraintFn, ...]
    C: geo.Polyhedron
    feasible_hrep: Optional[geo.Polyhedron] = None
    anchors: Tuple[Anchor, ...] = ()
    box: Optional[np.ndarray] = None
    instance_id: str = "instance"
    description: str = ""
    expected: dict = field(default_factory=dict)

    @property
    def m(self):
        return len(self.constraints)

    def g_values(self, X):
        """Constraint values, shape (m,) for a point or (k, m) for a batch."""
        X = np.asarray(X, dtype=float)
        if X.ndim <= 1:
            return np.array([g(X.reshape(-1)) for g in self.constraints])
        if not self.constraints:
            return np.zeros((X.shape[0], 0))
        return np.column_stack([g(X) for g in self.constraints])

    def in_K(self, X, tol=co.TOL_FEAS):
        X = np.asarray(X, dtype=float).reshape(-1, self.n)
        G = self.g_values(X)
        return np.all(G <= tol, axis=1) if G.size else np.ones(X.shape[0], dtype=bool)

    def in_C(self, X, tol=co.TOL_FEAS):
        return self.C.contains_batch(X, tol)

    def in_K_tilde(self, X, tol=co.TOL_FEAS):
        return self.in_K(X, tol) & self.in_C(X, tol)

    def anchor(self, index=0) -> Anchor:
        if not 0 <= index < len(self.anchors):
            raise InputError(f"Anchor index {index} out of range, instance {self.instance_id} has "
                             f"{len(self.anchors)} anchor(s).")
        return self.anchors[index]

    def bounding_box(self):
        if self.box is None:
            raise InputError(f"Instance {self.instance_id} declares no bounding box.")
        return self.box

    def to_dict(self):
        return {
            "id": self.instance_id, "n": self.n,
            "constraints": [{"name": g.name, "expr": ex.render(g.body)} for g in self.constraints],
            "C": _polyhedron_to_dict(self.C),
            "feasible_hrep": None if self.feasible_hrep is None else _polyhedron_to_dict(self.feasible_hrep),
            "anchors": [{"xbar": a.xbar, "xs": list(a.xs)} for a in self.anchors],
            "box": self.box,
        }


def _polyhedron_to_dict(P):
    return {"halfspaces": [{"a": h.normal, "b": h.offset} for h in P.halfspaces]}


def _require(data, key, kind, where):
    if key not in data:
        raise InputError(f"{where}: missing key {key!r}.")
    if not isinstance(data[key], kind):
        raise InputError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}, got {type(data[key]).__name__}.")
    return data[key]


def _vector(value, n, where):
    if not isinstance(value, (list, tuple, int, float)) or isinstance(value, bool):
        raise InputError(f"{where}: expected a list of numbers.")
    try:
        return du.format_vector(value, n, name=where)
    except (TypeError, ValueError) as err:
        raise InputError(str(err)) from err


def _polyhedron(data, n, where):
    if data is None:
        return geo.Polyhedron((), n)
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object with 'halfspaces'.")
    items = data.get("halfspaces", [])
    if not isinstance(items, list):
        raise InputError(f"{where}.halfspaces: expected a list.")
    halfspaces = []
    for idx, item in enumerate(items):
        loc = f"{where}.halfspaces[{idx}]"
        if not isinstance(item, dict):
            raise InputError(f"{loc}: expected an object with 'a' and 'b'.")
        a = _vector(_require(item, "a", list, loc), n, f"{loc}.a")
        b = _require(item, "b", (int, float), loc)
        if isinstance(b, bool):
            raise InputError(f"{loc}.b: expected a number.")
        halfspaces.append(geo.Halfspace(a, b))
    return geo.Polyhedron(tuple(halfspaces), n)


def _constraint(data, n, idx):
    where = f"constraints[{idx}]"
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected an object.")
    name = data.get("name", f"g{idx + 1}")
    text = _require(data, "expr", str, where)
    subdiff = data.get("subdiff") or {}
    if not isinstance(subdiff, dict):
        raise InputError(f"{where}.subdiff: expected an object keyed by points.")
    for key, vertices in subdiff.items():
        du.parse_point_text(key, n, name=f"{where}.subdiff key {key!r}")
        if not isinstance(vertices, list) or not vertices:
            raise InputError(f"{where}.subdiff[{key!r}]: expected a non-empty list of vertices.")
        du.format_matrix(vertices, n, name=f"{where}.subdiff[{key!r}]", allow_empty=False)
    g = tc.ConstraintFn.from_text(str(name), text, subdiff)
    if ex.variables(g.body) > n:
        raise InputError(f"{where}: expression uses x{ex.variables(g.body)} but n = {n}.")
    return g


def instance_from_dict(data, source="<dict>", validate=True, seed=0):
    """
    Build an Instance from decoded JSON.

    Args:
        data (dict): Decoded instance document
        source (str): Name used in error messages
        validate (bool): Run validate_instance after building
        seed (int): Seed of the H-representation sampling check

    Returns:
        Instance: The instance
    """
    if not isinstance(data, dict):
        raise InputError(f"{source}: an instance must be a JSON object.")
    unknown = sorted(set(data) - TOP_LEVEL_KEYS)
    if unknown:
        raise InputError(f"{source}: unknown key(s) {', '.join(unknown)}.")
    n = _require(data, "n", int, source)
    if isinstance(n, bool) or not 1 <= n <= MAX_DIMENSION:
        raise InputError(f"{source}.n: expected an integer in 1..{MAX_DIMENSION}, got {n!r}.")
    constraints = tuple(_constraint(item, n, idx)
                        for idx, item in enumerate(_require(data, "constraints", list, source)))
    C = _polyhedron(data.get("C"), n, f"{source}.C")
    hrep = _polyhedron(data["feasible_hrep"], n, f"{source}.feasible_hrep") if data.get("feasible_hrep") else None
    anchors = []
    for idx, item in enumerate(_require(data, "anchors", list, source)):
        where = f"{source}.anchors[{idx}]"
        if not isinstance(item, dict):
            raise InputError(f"{where}: expected an object with 'xbar'.")
        xbar = _vector(_require(item, "xbar", list, where), n, f"{where}.xbar")
        xs = tuple(_vector(x, n, f"{where}.xs[{k}]") for k, x in enumerate(item.get("xs", [])))
        anchors.append(Anchor(xbar, xs))
    box = None
    if data.get("box") is not None:
        box = du.format_matrix(data["box"], 2, name=f"{source}.box")
        if box.shape[0] != n or np.any(box[:, 0] >= box[:, 1]):
            raise InputError(f"{source}.box: expected {n} intervals [lo, hi] with lo < hi.")
    inst = Instance(n, constraints, C, hrep, tuple(anchors), box, str(data.get("id", Path(source).stem)),
                    str(data.get("description", "")), dict(data.get("expected", {})))
    if validate:
        validate_instance(inst, seed=seed)
    return inst


def load_instance(source, validate=True, seed=0):
    """Load an instance from a JSON file path or an already decoded dict."""
    if isinstance(source, dict):
        return instance_from_dict(source, validate=validate, seed=seed)
    return instance_from_dict(io_util.read_json(source), str(source), validate, seed)


def contact_layer(y, xbar, radius=np.inf):
    """
    Width of the band around the H-representation boundary where the oracle may disagree at y.

    The second-order term only applies within radius of xbar; farther out the band is TOL_FEAS.
    """
    r2 = float(np.sum((y - xbar) ** 2))
    if r2 > radius ** 2:
        return co.TOL_FEAS
    return co.TOL_FEAS + co.HREP_CONTACT * r2


def validate_instance(inst: Instance, seed=0):
    """
    Load-time checks: anchors lie in C ∩ K, declared subdifferentials match directional derivatives,
    and feasible_hrep agrees with the K̃ oracle on sampled box points up to the second-order contact layer
    in a small ball around each anchor.
    """
    for idx, anchor in enumerate(inst.anchors):
        if not inst.in_K_tilde(anchor.xbar)[0]:
            raise PreconditionError(f"{inst.instance_id}: anchor {idx} ({du.point_key(anchor.xbar)}) "
                                    f"is not in C ∩ K.")
        if inst.feasible_hrep is not None and not inst.feasible_hrep.contains(anchor.xbar, co.TOL_FEAS):
            raise InputError(f"{inst.instance_id}: anchor {idx} lies outside feasible_hrep.")
    for g in inst.constraints:
        for key, P in g.exact_subdiff.items():
            xbar = du.parse_point_text(key, inst.n)
            verdict = tc.validate_exact_subdiff(g, xbar, P)
            if not verdict.holds:
                raise InputError(f"{inst.instance_id}: declared subdifferential of {g.name} at {key} "
                                 f"disagrees with f': {verdict.detail}.")
    if inst.feasible_hrep is None or inst.box is None or not inst.anchors:
        return inst
    rng = np.random.default_rng(seed)
    lo, hi = inst.box[:, 0], inst.box[:, 1]
    Y = lo + (hi - lo) * rng.random((co.N_HREP_CHECK, inst.n))
    Y = np.vstack([Y] + [np.vstack([a.xbar, *a.xs]) for a in inst.anchors])
    oracle_in = inst.in_K_tilde(Y)
    hrep_in = inst.feasible_hrep.contains_batch(Y, co.TOL_FEAS)
    A, b = inst.feasible_hrep.A, inst.feasible_hrep.b
    centers = np.vstack([a.xbar for a in inst.anchors])
    radius = co.HREP_CONTACT_RADIUS * float(np.linalg.norm(hi - lo))
    n_contact = 0
    for y in Y[oracle_in != hrep_in]:
        slack = float(np.max(A @ y - b)) if A.shape[0] else np.inf
        xbar = centers[int(np.argmin(np.linalg.norm(centers - y, axis=1)))]
        if abs(slack) > contact_layer(y, xbar, radius):
            raise InputError(f"{inst.instance_id}: feasible_hrep disagrees with C ∩ K at {du.point_key(y)}.")
        n_contact += 1
    if n_contact:
        logger.warning("%s: %d sampled point(s) inside the H-representation contact layer",
                       inst.instance_id, n_contact)
    return inst
