"""Tiny expression grammar for convex piecewise-linear functions.

Accepted forms::

    max(expr, expr, ...)
    expr

where ``expr`` is an affine combination of rational literals and
coordinates, e.g. ``1/2 + 2*x1 - 3/4*x2`` or ``-x1``.  Rational literals
only; this intentionally stops far short of a general parser.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .plfunc import AffineFunction

_VAR = re.compile(r"^x([1-9][0-9]*)$")
_NUM = re.compile(r"^[0-9]+(/[0-9]+)?$")


def parse_pl_expression(text: str, dim: int):
    """Parse into a list of AffineFunction pieces (one for a bare affine)."""
    s = text.strip()
    if not s:
        raise ParseError("empty expression")
    if s.startswith("max"):
        body = s[3:].strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError("expected parentheses after max", where=text)
        inner = body[1:-1]
        parts = [p.strip() for p in inner.split(",")]
        if any(not p for p in parts):
            raise ParseError("empty argument in max(...)", where=text)
        return [_parse_affine(p, dim) for p in parts]
    return [_parse_affine(s, dim)]


def _parse_affine(expr: str, dim: int) -> AffineFunction:
    gradient = [Fraction(0)] * dim
    constant = Fraction(0)
    # Normalize signs into explicit +/- separators.
    cleaned = expr.replace("-", "+-").replace(" ", "")
    if cleaned.startswith("+"):
        cleaned = cleaned[1:]
    if not cleaned:
        raise ParseError("empty affine expression", where=expr)
    for term in cleaned.split("+"):
        if not term:
            raise ParseError("dangling sign", where=expr)
        sign = 1
        if term.startswith("-"):
            sign = -1
            term = term[1:]
        coeff, var = _split_term(term, expr)
        if var is None:
            constant += sign * coeff
        else:
            if not 1 <= var <= dim:
                raise ParseError(
                    f"coordinate x{var} out of range for dimension {dim}",
                    where=expr,
                )
            gradient[var - 1] += sign * coeff
    return AffineFunction(tuple(gradient), constant)


def _split_term(term: str, context: str):
    """Return (coefficient, variable index or None) for one product term."""
    if "*" in term:
        left, _, right = term.partition("*")
        num, var = (left, right) if _VAR.match(right or "") else (right, left)
        m = _VAR.match(var or "")
        if not m or not _NUM.match(num or ""):
            raise ParseError(f"bad term {term!r}", where=context)
        return Fraction(num), int(m.group(1))
    m = _VAR.match(term)
    if m:
        return Fraction(1), int(m.group(1))
    if _NUM.match(term):
        return Fraction(term), None
    raise ParseError(f"bad term {term!r}", where=context)
