"""JSON emission with every float written at 17 significant digits."""

import json
import math


def _enc(obj, indent, level):
    pad = "\n" + " " * (indent * (level + 1)) if indent else ""
    end = "\n" + " " * (indent * level) if indent else ""
    sep = "," + pad if indent else ", "
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if not math.isfinite(obj):
            # JSON has no inf/nan; emit null so consumers fail loudly
            return "null"
        return format(obj, ".17g")
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = (json.dumps(str(k)) + ": " + _enc(v, indent, level + 1) for k, v in obj.items())
        return "{" + pad + sep.join(items) + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        return "[" + pad + sep.join(_enc(v, indent, level + 1) for v in obj) + end + "]"
    raise TypeError(f"object of type {type(obj).__name__} is not JSON serializable")


def dumps17(obj, indent: int | None = None) -> str:
    return _enc(obj, indent, 0)
