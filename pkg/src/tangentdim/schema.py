"""JSON input parsing with field-level diagnostics.

Inputs may carry ``"schema_version": 1``.  Errors name the offending field
by path (``f.dom[2]``) or, for malformed JSON, the line and column.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List

from .report import SCHEMA_VERSION


class SchemaError(ValueError):
    pass


def parse(text: str, source: str = "<input>") -> Dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise SchemaError(f"{source}: top level must be an object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"{source}: field 'schema_version': expected {SCHEMA_VERSION}, got {version!r}")
    return doc


def load(path: str) -> Dict[str, Any]:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise SchemaError(f"{path}: {exc.strerror}") from None
    return parse(text, path)


_KINDS = {"list": list, "object": dict, "int": int}


def need(d: Dict[str, Any], name: str, kind: str, path: str = "") -> Any:
    where = f"{path}{name}"
    if name not in d:
        raise SchemaError(f"missing field '{where}'")
    v = d[name]
    if not isinstance(v, _KINDS[kind]) or (kind == "int" and isinstance(v, bool)):
        raise SchemaError(f"field '{where}': expected {kind}, got {type(v).__name__}")
    return v


def hashable(x: Any) -> Any:
    """JSON arrays become tuples so they can serve as set elements or vertices."""
    return tuple(hashable(v) for v in x) if isinstance(x, list) else x


def int_matrix_rows(rows: Any, where: str) -> List[List[int]]:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise SchemaError(f"field '{where}': expected a list of rows")
    for i, r in enumerate(rows):
        for j, v in enumerate(r):
            if not isinstance(v, int) or isinstance(v, bool):
                raise SchemaError(f"field '{where}[{i}][{j}]': expected int, got {type(v).__name__}")
        if len(r) != len(rows[0]):
            raise SchemaError(f"field '{where}[{i}]': row length {len(r)} differs from {len(rows[0])}")
    return rows
