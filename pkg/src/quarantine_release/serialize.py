"""Deterministic JSON encoding shared by the CLI and the HTTP service.

Byte-identical inputs must yield byte-identical JSON, so golden-file
tests stay stable across platforms and the CLI and the service can be
string-compared against each other. Two rules make that work: object
keys keep their insertion order, and every float is rendered with 12
significant digits.
"""

from __future__ import annotations

import json
import math


def format_number(value: float) -> str:
    """Render a float with 12 significant digits (JSON-compatible)."""
    if not math.isfinite(value):
        raise ValueError(f"cannot serialize non-finite number {value}")
    return format(value, ".12g")


def encode_json(doc) -> str:
    """Serialize dicts/lists/str/bool/int/float/None deterministically."""
    pieces: list[str] = []
    _encode(doc, pieces)
    return "".join(pieces)


def _encode(node, out: list[str]):
    if node is None:
        out.append("null")
    elif node is True:
        out.append("true")
    elif node is False:
        out.append("false")
    elif isinstance(node, str):
        out.append(json.dumps(node, ensure_ascii=False))
    elif isinstance(node, int):
        out.append(str(node))
    elif isinstance(node, float):
        out.append(format_number(node))
    elif isinstance(node, dict):
        out.append("{")
        for i, (key, value) in enumerate(node.items()):
            if i:
                out.append(",")
            out.append(json.dumps(str(key), ensure_ascii=False))
            out.append(":")
            _encode(value, out)
        out.append("}")
    elif isinstance(node, (list, tuple)):
        out.append("[")
        for i, value in enumerate(node):
            if i:
                out.append(",")
            _encode(value, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialize {type(node).__name__} deterministically")
