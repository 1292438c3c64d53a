#!/usr/bin/env python
# Created by "Thieu" at 10:14, 02/09/2026 ----------%
#       Email: nguyenthieu2102@gmail.com            %
#       Github: https://github.com/thieu1995        %
# --------------------------------------------------%

import json
from pathlib import Path

from tancert.utils.exception import InputError
from tancert.utils.report_util import canonical_json


def parse_json_text(text, source="<string>"):
    """Decode JSON text; decode errors become InputError with a line:column diagnostic."""
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"{source}:{err.lineno}:{err.colno}: {err.msg}") from err


def read_json(path):
    """Read a JSON document from disk."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise InputError(f"Cannot read {path}: {err.strerror}") from err
    return parse_json_text(text, str(path))


def write_json(obj, path):
    """Write obj as canonical JSON (sorted keys, trailing newline)."""
    Path(path).write_text(canonical_json(obj) + "\n", encoding="utf-8")
