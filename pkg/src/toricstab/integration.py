"""Exact integration over polytopes and their boundaries, plus lattice sums.

Volume integrals of polynomials reduce to barycentric monomial integrals
over the cached triangulation; boundary integrals use the same engine on
the facet simplices with their lattice measures.  Lattice-point work is a
bounding-box scan with exact half-space filtering, guarded by a cell
budget so a careless scale cannot wedge the process.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from . import _linalg
from .errors import DegenerateSimplex, ScaleOverflow
from .geometry import Polytope, Simplex
from .kernels import lattice_weighted_sum

DEFAULT_MAX_DEGREE = 4
DEFAULT_CELL_BUDGET = 10**8


class Polynomial:
    """Sparse polynomial with rational coefficients, keyed by exponent tuples."""

    def __init__(self, dim, terms=None, max_degree=DEFAULT_MAX_DEGREE):
        self.dim = dim
        self.max_degree = max_degree
        clean = {}
        for alpha, coeff in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != dim or any(a < 0 for a in alpha):
                raise ValueError(f"bad exponent {alpha} for dimension {dim}")
            if sum(alpha) > max_degree:
                raise ValueError(f"degree {sum(alpha)} exceeds cap {max_degree}")
            coeff = Fraction(coeff)
            if coeff:
                clean[alpha] = clean.get(alpha, Fraction(0)) + coeff
        self.terms = {a: c for a, c in clean.items() if c}

    @classmethod
    def constant(cls, dim, value):
        return cls(dim, {tuple([0] * dim): Fraction(value)})

    @classmethod
    def coordinate(cls, dim, j):
        alpha = [0] * dim
        alpha[j] = 1
        return cls(dim, {tuple(alpha): Fraction(1)})

    @classmethod
    def affine(cls, dim, gradient, constant):
        terms = {tuple([0] * dim): Fraction(constant)}
        for j, g in enumerate(gradient):
            alpha = [0] * dim
            alpha[j] = 1
            terms[tuple(alpha)] = Fraction(g)
        return cls(dim, terms)

    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=0)

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for a, c in other.terms.items():
            terms[a] = terms.get(a, Fraction(0)) + c
        return Polynomial(self.dim, terms, max(self.max_degree, other.max_degree))

    def __sub__(self, other):
        return self + (self._coerce(other) * Fraction(-1))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Polynomial(
                self.dim,
                {a: c * other for a, c in self.terms.items()},
                self.max_degree,
            )
        other = self._coerce(other)
        terms = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                terms[key] = terms.get(key, Fraction(0)) + ca * cb
        return Polynomial(self.dim, terms, max_degree=max(
            self.max_degree, other.max_degree,
            max((sum(k) for k in terms), default=0),
        ))

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise ValueError("dimension mismatch")
            return other
        return Polynomial.constant(self.dim, other)

    def evaluate(self, x) -> Fraction:
        total = Fraction(0)
        for alpha, coeff in self.terms.items():
            value = coeff
            for xj, aj in zip(x, alpha):
                for _ in range(aj):
                    value *= xj
            total += value
        return total

    def __repr__(self):
        return f"Polynomial({self.terms!r})"


@dataclass(frozen=True)
class LatticeSum:
    """Exact lattice sum of a piecewise-linear weight at scale k."""

    k: int
    count: int
    weighted_sum: Fraction


# ---------------------------------------------------------------------------
# simplex and polytope integrals
# ---------------------------------------------------------------------------


def integrate_monomial_simplex(simplex: Simplex, alpha) -> Fraction:
    """Exact integral of ``x^alpha`` over a full-dimensional simplex."""
    n = simplex.ambient_dim
    if simplex.k != n:
        raise DegenerateSimplex("monomial integral needs a full-dimensional simplex")
    vol = simplex.volume()
    if vol == 0:
        raise DegenerateSimplex("zero-volume simplex")
    return _monomial_over_simplex(simplex.vertices, tuple(alpha), n, vol)


def _monomial_over_simplex(verts, alpha, k, measure) -> Fraction:
    """Barycentric formula on a k-simplex of known k-measure.

    Expands ``x^alpha`` with ``x = sum lambda_i v_i`` into barycentric
    monomials and applies
    ``integral of prod lambda^beta = k! * measure * prod(beta!) / (k+|beta|)!``.
    """
    if sum(alpha) == 0:
        return measure
    expansion = {tuple([0] * len(verts)): Fraction(1)}
    for j, power in enumerate(alpha):
        for _ in range(power):
            expansion = _mul_linear(expansion, [v[j] for v in verts])
    kfact = factorial(k)
    total = Fraction(0)
    for beta, coeff in expansion.items():
        weight = Fraction(kfact, factorial(k + sum(beta)))
        for b in beta:
            weight *= factorial(b)
        total += coeff * weight
    return total * measure


def _mul_linear(expansion, coeffs):
    out = {}
    for beta, c in expansion.items():
        for i, vi in enumerate(coeffs):
            if vi == 0:
                continue
            key = beta[:i] + (beta[i] + 1,) + beta[i + 1:]
            out[key] = out.get(key, Fraction(0)) + c * vi
    return out


def _poly_over_simplex(verts, poly: Polynomial, k, measure) -> Fraction:
    if measure == 0:
        return Fraction(0)
    if poly.degree() <= 1:
        # Affine integrands integrate to the centroid value times the measure.
        centroid = tuple(
            sum((v[j] for v in verts), Fraction(0)) / len(verts)
            for j in range(len(verts[0]))
        )
        return poly.evaluate(centroid) * measure
    total = Fraction(0)
    for alpha, coeff in poly.terms.items():
        total += coeff * _monomial_over_simplex(verts, alpha, k, measure)
    return total


def integrate_polynomial(poly: Polytope, f) -> Fraction:
    """Exact integral of a polynomial over the polytope."""
    f = _as_polynomial(f, poly.dim)
    total = Fraction(0)
    for s in poly.triangulation:
        total += _poly_over_simplex(s.vertices, f, poly.dim, s.volume())
    return total


def integrate_pl(u) -> Fraction:
    """Exact integral of a piecewise-linear function over its domain."""
    total = Fraction(0)
    for cell in u.cells:
        f = Polynomial.affine(u.domain.dim, cell.piece.gradient, cell.piece.constant)
        total += integrate_polynomial(cell.region, f)
    return total


def boundary_integral(poly: Polytope, f) -> Fraction:
    """Exact integral over the boundary with the lattice measure.

    Polynomials integrate facet by facet.  A piecewise-linear function is
    integrated through its cell subdivision: each cell is a polytope that
    shares its outer facets with ``poly``, so restricting the active piece
    to those facets covers the boundary exactly once.
    """
    if hasattr(f, "cells"):
        return _boundary_integral_pl(poly, f)
    f = _as_polynomial(f, poly.dim)
    total = Fraction(0)
    for facet in poly.facets:
        for s, measure in zip(facet.simplices, facet.simplex_measures):
            total += _poly_over_simplex(s.vertices, f, poly.dim - 1, measure)
    return total


def _boundary_integral_pl(poly: Polytope, u) -> Fraction:
    if u.domain.facet_keys != poly.facet_keys:
        raise ValueError("piecewise-linear function lives on a different polytope")
    outer = poly.facet_keys
    total = Fraction(0)
    for cell in u.cells:
        piece_poly = Polynomial.affine(
            poly.dim, cell.piece.gradient, cell.piece.constant
        )
        region = cell.region
        for facet in region.facets:
            if region.halfspaces[facet.halfspace_index].key not in outer:
                continue
            for s, measure in zip(facet.simplices, facet.simplex_measures):
                total += _poly_over_simplex(
                    s.vertices, piece_poly, poly.dim - 1, measure
                )
    return total


def _as_polynomial(f, dim) -> Polynomial:
    if isinstance(f, Polynomial):
        return f
    if hasattr(f, "gradient"):
        return Polynomial.affine(dim, f.gradient, f.constant)
    return Polynomial.constant(dim, f)


# ---------------------------------------------------------------------------
# lattice sums
# ---------------------------------------------------------------------------


def _integer_box(poly: Polytope, k, budget):
    lows = []
    highs = []
    cells = 1
    for j in range(poly.dim):
        values = [k * v[j] for v in poly.vertices]
        lo = math.ceil(min(values))
        hi = math.floor(max(values))
        lows.append(lo)
        highs.append(hi)
        cells *= max(hi - lo + 1, 0)
    if cells > budget:
        raise ScaleOverflow(f"lattice box has {cells} cells, budget {budget}")
    return lows, highs


def _scaled_constraints(poly: Polytope, k):
    """Integer constraint rows: <m, I> <= r encodes <l, I> <= k * bound."""
    rows = []
    for h in poly.halfspaces:
        q = h.bound.denominator
        rows.append((tuple(q * c for c in h.normal), k * h.bound.numerator))
    return rows

def lattice_points(poly: Polytope, k, budget=DEFAULT_CELL_BUDGET) -> list:
    """All integer points of the dilation ``k * P`` (closure)."""
    if k <= 0:
        raise ValueError("scale k must be a positive integer")
    lows, highs = _integer_box(poly, k, budget)
    rows = _scaled_constraints(poly, k)
    points = []
    for point in itertools.product(
        *(range(lo, hi + 1) for lo, hi in zip(lows, highs))
    ):
        if all(_linalg.dot(m, point) <= r for m, r in rows):
            points.append(point)
    return points


def _piece_table(u, dim):
    """Pieces as integer rows over one common denominator.

    Row ``(A, C)`` encodes the affine piece with value
    ``(<A, I> + C * k) / (D * k)`` at the rational point ``I / k``.
    """
    pieces = getattr(u, "pieces", None)
    if pieces is None:
        pieces = (u,)
    denom = 1
    for p in pieces:
        for g in p.gradient:
            denom = math.lcm(denom, Fraction(g).denominator)
        denom = math.lcm(denom, Fraction(p.constant).denominator)
    table = []
    for p in pieces:
        row_a = tuple(int(Fraction(g) * denom) for g in p.gradient)
        row_c = int(Fraction(p.constant) * denom)
        table.append((row_a, row_c))
    return table, denom


def pl_lattice_sum(poly: Polytope, phi, k, budget=DEFAULT_CELL_BUDGET) -> LatticeSum:
    """Count lattice points of ``k * P`` and sum ``phi(I / k)`` exactly."""
    if k <= 0:
        raise ValueError("scale k must be a positive integer")
    lows, highs = _integer_box(poly, k, budget)
    rows = _scaled_constraints(poly, k)
    table, denom = _piece_table(phi, poly.dim)
    count, numerator = lattice_weighted_sum(
        poly.dim, lows, highs, rows, table, k
    )
    return LatticeSum(k=k, count=count, weighted_sum=Fraction(numerator, denom * k))


def ehrhart_residual(poly: Polytope, phi, k, budget=DEFAULT_CELL_BUDGET) -> Fraction:
    """Lattice sum minus its volume and boundary predictions.

    For a convex piecewise-linear weight the leading behaviour of the
    lattice sum is ``k^n`` times the volume integral plus ``k^(n-1)/2``
    times the boundary integral; the residual is what remains and stays
    bounded by lower-order terms.
    """
    total = pl_lattice_sum(poly, phi, k, budget).weighted_sum
    if hasattr(phi, "cells"):
        vol_term = integrate_pl(phi)
        bnd_term = boundary_integral(poly, phi)
    else:
        f = _as_polynomial(phi, poly.dim)
        vol_term = integrate_polynomial(poly, f)
        bnd_term = boundary_integral(poly, f)
    n = poly.dim
    return total - k**n * vol_term - Fraction(k ** (n - 1), 2) * bnd_term
