"""Convex piecewise-linear functions on a polytope.

A function is the maximum of finitely many affine pieces with rational
data.  Construction computes the cell subdivision of the domain on which
each piece is the active maximizer; pieces that never win on a
full-dimensional cell are dropped, duplicates are merged, so affineness
is a plain cell-count test afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg, geometry
from .errors import EmptyPieceList, OutsideDomain, PointNotInterior
from .geometry import HalfSpace, Polytope


@dataclass(frozen=True)
class AffineFunction:
    """The affine map ``x -> <gradient, x> + constant``."""

    gradient: tuple
    constant: Fraction

    def evaluate(self, x) -> Fraction:
        return _linalg.dot(self.gradient, x) + self.constant

    def __sub__(self, other: "AffineFunction") -> "AffineFunction":
        return AffineFunction(
            tuple(a - b for a, b in zip(self.gradient, other.gradient)),
            self.constant - other.constant,
        )

    def __neg__(self) -> "AffineFunction":
        return AffineFunction(tuple(-a for a in self.gradient), -self.constant)

    def is_zero(self) -> bool:
        return self.constant == 0 and all(g == 0 for g in self.gradient)


def affine(gradient, constant=0) -> AffineFunction:
    """Constructor coercing plain numbers and rational strings."""
    return AffineFunction(
        tuple(Fraction(g) for g in gradient), Fraction(constant)
    )


def zero_function(dim) -> AffineFunction:
    return AffineFunction(tuple(Fraction(0) for _ in range(dim)), Fraction(0))


@dataclass(frozen=True)
class Cell:
    """A maximal region where a single piece is the maximizer."""

    piece: AffineFunction
    region: Polytope


class PLFunction:
    """Maximum of affine pieces together with its cell subdivision."""

    def __init__(self, pieces, domain, cells):
        self.pieces = tuple(pieces)
        self.domain = domain
        self.cells = tuple(cells)

    def evaluate(self, x) -> Fraction:
        x = tuple(Fraction(c) for c in x)
        if not self.domain.contains(x):
            raise OutsideDomain(f"{x} is outside the domain closure")
        return max(p.evaluate(x) for p in self.pieces)

    def active_pieces(self, x):
        """Pieces attaining the maximum at a point of the closed domain."""
        x = tuple(Fraction(c) for c in x)
        values = [p.evaluate(x) for p in self.pieces]
        top = max(values)
        return [p for p, v in zip(self.pieces, values) if v == top]

    def __repr__(self):
        return f"PLFunction(pieces={len(self.pieces)}, cells={len(self.cells)})"


def make_pl(pieces, domain: Polytope) -> PLFunction:
    """Build the maximum of affine pieces over a polytope.

    Duplicate pieces are merged up front.  The cell of piece ``p`` is the
    subset where ``p >= q`` for every other piece ``q``; only pieces with a
    full-dimensional cell are retained, so the surviving cells tile the
    domain with disjoint interiors.
    """
    pieces = [
        p if isinstance(p, AffineFunction) else affine(*p) for p in pieces
    ]
    if not pieces:
        raise EmptyPieceList("need at least one affine piece")
    unique = []
    seen = set()
    for p in pieces:
        key = (p.gradient, p.constant)
        if key not in seen:
            seen.add(key)
            unique.append(p)

    kept = []
    cells = []
    for i, p in enumerate(unique):
        constraints = []
        emptied = False
        for j, q in enumerate(unique):
            if i == j:
                continue
            diff = p - q  # keep where diff >= 0
            if all(g == 0 for g in diff.gradient):
                if diff.constant < 0:
                    emptied = True
                    break
                continue
            prim, s = _linalg.primitivize(diff.gradient)
            # <grad, x> + c >= 0  <=>  <-prim, x> <= s * c
            constraints.append(
                HalfSpace(tuple(-c for c in prim), s * diff.constant)
            )
        if emptied:
            continue
        region = geometry.intersect(domain, constraints)
        if region is not None:
            kept.append(p)
            cells.append(Cell(p, region))
    return PLFunction(kept, domain, cells)


@dataclass(frozen=True)
class SimplePL:
    """``max(0, crease)``: one affine piece against zero."""

    crease: AffineFunction

    def as_pl(self, domain: Polytope) -> PLFunction:
        return make_pl([zero_function(domain.dim), self.crease], domain)


def evaluate(u: PLFunction, x) -> Fraction:
    return u.evaluate(x)


def normalize_at(u: PLFunction, p) -> PLFunction:
    """Subtract a supporting affine function so the result is >= 0 and 0 at p.

    The subtracted function is ``<s, x - p> + u(p)`` with ``s`` the average
    of the gradients of all pieces active at ``p``; any subgradient works,
    averaging makes the choice deterministic.
    """
    p = tuple(Fraction(c) for c in p)
    if not u.domain.contains_interior(p):
        raise PointNotInterior(f"{p} is not interior to the domain")
    value = u.evaluate(p)
    active = u.active_pieces(p)
    n = u.domain.dim
    s = tuple(
        sum((a.gradient[j] for a in active), Fraction(0)) / len(active)
        for j in range(n)
    )
    offset = _linalg.dot(s, p) - value
    shifted = [
        AffineFunction(
            tuple(g - sj for g, sj in zip(piece.gradient, s)),
            piece.constant + offset,
        )
        for piece in u.pieces
    ]
    return make_pl(shifted, u.domain)


def is_affine(u: PLFunction) -> bool:
    """True when a single piece covers the whole domain."""
    return len(u.cells) == 1


def is_rational(u: PLFunction) -> bool:
    """All piece data rational; true by construction, kept for the interface."""
    return all(
        isinstance(c, Fraction)
        for piece in u.pieces
        for c in (*piece.gradient, piece.constant)
    )
