#!/usr/bin/env python
# Created by "Thieu" at 10:05, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np
import tancert.utils.constant as co
from tancert.utils.exception import InputError


@dataclass(frozen=True)
class Verdict:
    """
    Outcome of a yes/no check.

    Attributes:
        holds (bool): The verdict
        witness: Optional evidence (a direction, a failing sample, ...)
        detail (str): Human readable remark, e.g. "not falsified"
        provenance (str): "exact" when every quantity came from exact paths, else "sampled"
    """
    holds: bool
    witness: Any = None
    detail: str = ""
    provenance: str = co.PROVENANCE_EXACT

    def __bool__(self):
        return bool(self.holds)

    def to_dict(self):
        return {"holds": bool(self.holds), "witness": self.witness, "detail": self.detail,
                "provenance": self.provenance}


@dataclass
class Report:
    """Command output: a nested dict whose numbers are provenance tagged."""
    command: str
    instance_id: str
    body: dict = field(default_factory=dict)
    seed: int = 0
    tolerances: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "command": self.command,
            "instance": self.instance_id,
            "seed": tag(self.seed, co.PROVENANCE_EXACT),
            "tolerances": tag(self.tolerances, co.PROVENANCE_EXACT),
            "result": self.body,
        }


def _is_tag(obj):
    return isinstance(obj, dict) and set(obj.keys()) == {"value", "provenance"}


def _is_number(obj):
    return isinstance(obj, (int, float, np.integer, np.floating)) and not isinstance(obj, (bool, np.bool_))


def tag(value, provenance):
    """
    Wrap every number inside value as {"value": v, "provenance": provenance}.

    Arrays become lists; already tagged numbers and non-numeric leaves are kept.
    """
    if _is_tag(value):
        return value
    if isinstance(value, np.ndarray):
        return [tag(v, provenance) for v in value.tolist()]
    if isinstance(value, dict):
        return {str(k): tag(v, provenance) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [tag(v, provenance) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if _is_number(value):
        value = float(value) if isinstance(value, (float, np.floating)) else int(value)
        if isinstance(value, float) and not np.isfinite(value):
            raise InputError(f"Report values must be finite, got {value}.")
        return {"value": value, "provenance": provenance}
    if hasattr(value, "to_dict"):
        return tag(value.to_dict(), provenance)
    return value


def validate_report(obj, path="$"):
    """Raise InputError when a number in obj is not provenance tagged."""
    if _is_tag(obj):
        if obj["provenance"] not in (co.PROVENANCE_EXACT, co.PROVENANCE_SAMPLED):
            raise InputError(f"{path}: unknown provenance {obj['provenance']!r}.")
        return True
    if isinstance(obj, dict):
        for key, value in obj.items():
            validate_report(value, f"{path}.{key}")
    elif isinstance(obj, list):
        for idx, value in enumerate(obj):
            validate_report(value, f"{path}[{idx}]")
    elif _is_number(obj):
        raise InputError(f"{path}: untagged number {obj!r}.")
    return True


def canonical_json(obj):
    """Sorted keys, two-space indent, no NaN; identical input gives identical bytes."""
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False)


def untag(obj):
    """Strip provenance tags, the inverse of tag() for reading reports back."""
    if _is_tag(obj):
        return obj["value"]
    if isinstance(obj, dict):
        return {k: untag(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [untag(v) for v in obj]
    return obj
