"""Deterministic JSON emission.

The stdlib encoder prints floats with the shortest round-trip repr, which is
value-dependent; reports here promise byte-identical output across runs and
17 significant digits on every float, so we emit the text ourselves.
Parsing is plain ``json.loads``.
"""

import json
import math

SCHEMA_VERSION = 1


def _emit(obj, out, indent, level):
    pad = " " * (indent * level)
    pad_in = " " * (indent * (level + 1))
    if obj is None:
        out.append("null")
    elif obj is True:
        out.append("true")
    elif obj is False:
        out.append("false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError(f"non-finite float in JSON document: {obj!r}")
        out.append(f"{obj:.17g}")
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=False))
    elif isinstance(obj, (list, tuple)):
        if not obj:
            out.append("[]")
            return
        out.append("[\n")
        for i, item in enumerate(obj):
            out.append(pad_in)
            _emit(item, out, indent, level + 1)
            out.append(",\n" if i + 1 < len(obj) else "\n")
        out.append(pad + "]")
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        items = list(obj.items())
        for i, (key, value) in enumerate(items):
            if not isinstance(key, str):
                raise TypeError(f"JSON object keys must be str, got {key!r}")
            out.append(pad_in + json.dumps(key, ensure_ascii=False) + ": ")
            _emit(value, out, indent, level + 1)
            out.append(",\n" if i + 1 < len(items) else "\n")
        out.append(pad + "}")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__} to JSON")


def dumps(obj, indent=2):
    """Serialize `obj` to deterministic JSON text (keys kept in insertion order)."""
    out = []
    _emit(obj, out, indent, 0)
    return "".join(out)


def loads(text):
    return json.loads(text)
