"""Polytope specification files.

The on-disk format is JSON with rationals as strings so exact values
survive any toolchain:

    {
      "dim": 2,
      "name": "cp2",
      "halfspaces": [
        {"normal": [-1, 0], "bound": "1"},
        {"normal": [0, -1], "bound": "1"},
        {"normal": [1, 1], "bound": "1"}
      ]
    }

Parsing reports the offending field on malformed input; geometric errors
from construction propagate unchanged.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import ParseError
from .geometry import HalfSpace, Polytope, build_polytope


def parse_spec(text: str) -> Polytope:
    """Parse specification text into a validated polytope."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc), where=f"offset {exc.pos}") from exc
    if not isinstance(data, dict):
        raise ParseError("top level must be an object")

    dim = data.get("dim")
    if not isinstance(dim, int) or not 1 <= dim <= 3:
        raise ParseError("expected an integer in {1, 2, 3}", where="dim")
    raw = data.get("halfspaces")
    if not isinstance(raw, list) or not raw:
        raise ParseError("expected a non-empty array", where="halfspaces")

    halfspaces = []
    for i, entry in enumerate(raw):
        where = f"halfspaces[{i}]"
        if not isinstance(entry, dict):
            raise ParseError("expected an object", where=where)
        normal = entry.get("normal")
        if (
            not isinstance(normal, list)
            or len(normal) != dim
            or not all(isinstance(c, int) for c in normal)
        ):
            raise ParseError(
                f"expected {dim} integer components, got {normal!r}",
                where=f"{where}.normal",
            )
        bound = entry.get("bound")
        if isinstance(bound, bool) or not isinstance(bound, (int, str)):
            raise ParseError(
                f"expected an integer or rational string, got {bound!r}",
                where=f"{where}.bound",
            )
        try:
            bound = Fraction(bound)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(
                f"bad rational {bound!r}", where=f"{where}.bound"
            ) from exc
        halfspaces.append(HalfSpace(tuple(normal), bound))
    return build_polytope(halfspaces)


def emit_spec(poly: Polytope, name=None) -> str:
    """Canonical specification text; parse_spec inverts it exactly."""
    data = {
        "dim": poly.dim,
        "halfspaces": [
            {"normal": list(h.normal), "bound": str(h.bound)}
            for h in poly.halfspaces
        ],
    }
    if name is not None:
        data["name"] = name
    return json.dumps(data, indent=2, sort_keys=True)
