"""JSON interchange for algebras and CPA products (1-based indices, rationals as strings).

Algebra file::

    {"dim": 3, "names": ["x", "y", "z"], "brackets": [[1, 2, [[3, "1"]]]]}

Product file::

    {"algebra": "h3" | {...algebra file...}, "products": [[1, 1, [[2, "1"]]]]}

Only ``i < j`` brackets and ``i <= j`` products are listed.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .catalog import resolve
from .cpa import CpaProduct
from .exact import format_rational, parse_rational
from .liealg import LieAlgebraTable


class MalformedFileError(ValueError):
    pass


def _entries(vec) -> list:
    return [[k + 1, format_rational(c)] for k, c in sorted(vec.items())]


def _parse_entries(raw, dim: int, what: str) -> dict[int, Any]:
    out = {}
    if not isinstance(raw, list):
        raise MalformedFileError(f"{what}: expected a list of [k, coefficient] pairs")
    for item in raw:
        if not (isinstance(item, list) and len(item) == 2 and isinstance(item[0], int)):
            raise MalformedFileError(f"{what}: bad entry {item!r}")
        k, c = item
        if not 1 <= k <= dim:
            raise MalformedFileError(f"{what}: index {k} outside 1..{dim}")
        if isinstance(c, bool) or not isinstance(c, (str, int)):
            raise MalformedFileError(f"{what}: coefficient {c!r} is not a rational string")
        try:
            q = parse_rational(str(c))
        except (ValueError, ZeroDivisionError):
            raise MalformedFileError(f"{what}: coefficient {c!r} is not a rational string") from None
        out[k - 1] = out.get(k - 1, 0) + q
    return out


def algebra_to_json(t: LieAlgebraTable) -> dict:
    return {
        "dim": t.dim,
        "names": list(t.names),
        "brackets": [[i + 1, j + 1, _entries(vec)] for (i, j), vec in sorted(t.brackets.items())],
    }


def algebra_from_json(data: Any) -> LieAlgebraTable:
    if not isinstance(data, dict) or "dim" not in data or "brackets" not in data:
        raise MalformedFileError("an algebra needs 'dim' and 'brackets'")
    dim = data["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise MalformedFileError("'dim' must be a non-negative integer")
    brackets = {}
    for item in data["brackets"]:
        if not (isinstance(item, list) and len(item) == 3):
            raise MalformedFileError(f"bad bracket entry {item!r}")
        i, j, vec = item
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= dim):
            raise MalformedFileError(f"bracket indices must satisfy 1 <= i < j <= {dim}, got {i}, {j}")
        if (i - 1, j - 1) in brackets:
            raise MalformedFileError(f"bracket [{i}, {j}] listed twice")
        brackets[(i - 1, j - 1)] = _parse_entries(vec, dim, f"[{i}, {j}]")
    return LieAlgebraTable(dim, brackets, data.get("names"), name=data.get("name"))


def product_to_json(p: CpaProduct, algebra: str | None = None) -> dict:
    entries = [[i + 1, j + 1, _entries(vec)] for (i, j), vec in sorted(p.entries().items()) if i <= j]
    return {"algebra": algebra if algebra is not None else algebra_to_json(p.algebra), "products": entries}


def product_from_json(data: Any, algebra: LieAlgebraTable | None = None) -> CpaProduct:
    if not isinstance(data, dict) or "products" not in data:
        raise MalformedFileError("a product needs 'products'")
    if algebra is None:
        ref = data.get("algebra")
        if isinstance(ref, str):
            algebra = resolve(ref)
        elif isinstance(ref, dict):
            algebra = algebra_from_json(ref)
        else:
            raise MalformedFileError("'algebra' must be a catalog name or an inline table")
    n = algebra.dim
    products = {}
    for item in data["products"]:
        if not (isinstance(item, list) and len(item) == 3):
            raise MalformedFileError(f"bad product entry {item!r}")
        i, j, vec = item
        if not (isinstance(i, int) and isinstance(j, int) and 1 <= i <= j <= n):
            raise MalformedFileError(f"product indices must satisfy 1 <= i <= j <= {n}, got {i}, {j}")
        if (i - 1, j - 1) in products:
            raise MalformedFileError(f"product ({i}, {j}) listed twice")
        products[(i - 1, j - 1)] = _parse_entries(vec, n, f"e{i}.e{j}")
    return CpaProduct(algebra, products)


def load_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise MalformedFileError(f"{path}: invalid JSON ({exc.msg})") from None


def dumps(data: Any) -> str:
    """Canonical JSON text: sorted keys, fixed separators."""
    return json.dumps(data, sort_keys=True, indent=2)
