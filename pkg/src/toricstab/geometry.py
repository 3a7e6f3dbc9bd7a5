"""Exact rational convex polytopes in half-space form.

A polytope is the bounded intersection of half-spaces ``<l_i, x> <= b_i``
with primitive integer normals ``l_i`` and rational bounds.  Everything
derived from it (vertices, facets, boundary measures, triangulations,
cone decompositions, subdivisions) is computed in exact rational
arithmetic; this module never touches floating point.

Boundary pieces carry the lattice measure: on the facet with normal ``l``
it is the Euclidean surface measure divided by ``|l|_2``.  Because the
Euclidean measure of a rational facet piece is a rational multiple of
``sqrt(|l|_2^2)``, the lattice measure of every facet piece is an exact
rational and no square root is ever materialized.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from . import _linalg
from .errors import (
    Degenerate,
    DegenerateSimplex,
    NonPrimitiveNormal,
    NotSimple,
    OriginNotInterior,
    Unbounded,
)

Point = tuple


def _frac_point(coords) -> Point:
    return tuple(Fraction(c) for c in coords)


@dataclass(frozen=True)
class HalfSpace:
    """One constraint ``<normal, x> <= bound`` with a primitive integer normal."""

    normal: tuple
    bound: Fraction

    @property
    def norm_sq(self) -> int:
        return sum(c * c for c in self.normal)

    @property
    def key(self):
        """Exact identity of the supporting hyperplane with orientation."""
        return (self.normal, self.bound)

    def value(self, x) -> Fraction:
        return _linalg.dot(self.normal, x)

    def slack(self, x) -> Fraction:
        return self.bound - self.value(x)


def halfspace(normal, bound) -> HalfSpace:
    """Convenience constructor accepting plain ints and rational strings."""
    return HalfSpace(tuple(int(c) for c in normal), Fraction(bound))


@dataclass(frozen=True)
class Simplex:
    """Affinely independent rational points spanning a k-simplex in R^n."""

    vertices: tuple
    ambient_dim: int

    @property
    def k(self) -> int:
        return len(self.vertices) - 1

    def edge_vectors(self):
        base = self.vertices[0]
        return [_linalg.vsub(v, base) for v in self.vertices[1:]]

    def volume(self) -> Fraction:
        """k-dimensional volume; only defined for full-dimensional simplices."""
        if self.k != self.ambient_dim:
            raise DegenerateSimplex("volume needs a full-dimensional simplex")
        d = _linalg.det_fraction(self.edge_vectors())
        return abs(d) / factorial(self.ambient_dim)


@dataclass(frozen=True)
class Facet:
    """A facet of a polytope together with its lattice-measure decomposition.

    ``measure_scale_sq`` records ``|l|_2^2`` for the facet normal; the
    lattice measure of each stored simplex is already the exact rational
    obtained after dividing the Euclidean measure by ``sqrt(|l|_2^2)``.
    """

    halfspace_index: int
    vertex_indices: tuple
    simplices: tuple
    simplex_measures: tuple
    measure_scale_sq: int

    @property
    def measure(self) -> Fraction:
        return sum(self.simplex_measures, Fraction(0))


@dataclass(frozen=True)
class ConeDecomposition:
    """Cones over the facet simplices with apex at the origin, tiling P."""

    cells: tuple  # pairs (facet_index, Simplex)

    def volumes(self):
        return tuple(simplex.volume() for _, simplex in self.cells)


class Polytope:
    """Bounded full-dimensional rational polytope.

    Instances are immutable after construction; use :func:`build_polytope`.
    Vertices are stored in lexicographic order, facets in the order of the
    retained half-spaces.
    """

    def __init__(self, dim, halfspaces, vertices, facets, origin_interior, warnings=()):
        self.dim = dim
        self.halfspaces = tuple(halfspaces)
        self.vertices = tuple(vertices)
        self.facets = tuple(facets)
        self.origin_interior = origin_interior
        self.warnings = tuple(warnings)

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Polytope)
            and self.dim == other.dim
            and self.halfspaces == other.halfspaces
        )

    def __hash__(self):
        return hash((self.dim, self.halfspaces))

    def __repr__(self):
        return f"Polytope(dim={self.dim}, facets={len(self.facets)}, vertices={len(self.vertices)})"

    # -- membership ----------------------------------------------------------

    def contains(self, x) -> bool:
        """Closure membership."""
        return all(h.value(x) <= h.bound for h in self.halfspaces)

    def contains_interior(self, x) -> bool:
        return all(h.value(x) < h.bound for h in self.halfspaces)

    # -- cached derived data ---------------------------------------------------

    @functools.cached_property
    def volume(self) -> Fraction:
        return sum((s.volume() for s in self.triangulation), Fraction(0))

    @functools.cached_property
    def boundary_measure(self) -> Fraction:
        return sum((f.measure for f in self.facets), Fraction(0))

    @functools.cached_property
    def barycenter(self) -> Point:
        # Exact first moments over the cached triangulation: the centroid of
        # a simplex is the vertex average and integrates x exactly.
        total = [Fraction(0)] * self.dim
        for s in self.triangulation:
            vol = s.volume()
            for j in range(self.dim):
                avg = sum(v[j] for v in s.vertices) / Fraction(self.dim + 1)
                total[j] += vol * avg
        return tuple(t / self.volume for t in total)

    @functools.cached_property
    def triangulation(self) -> tuple:
        return _fan_triangulation(self)

    @functools.cached_property
    def facet_keys(self) -> frozenset:
        return frozenset(self.halfspaces[f.halfspace_index].key for f in self.facets)

    @functools.cached_property
    def ccw_cycle(self) -> tuple:
        """Vertex indices in counterclockwise order (surfaces only)."""
        if self.dim != 2:
            raise ValueError("ccw_cycle is defined for dim 2 only")
        center = (
            sum((v[0] for v in self.vertices), Fraction(0)) / len(self.vertices),
            sum((v[1] for v in self.vertices), Fraction(0)) / len(self.vertices),
        )
        order = _angular_order([_linalg.vsub(v, center) for v in self.vertices])
        start = order.index(min(order, key=lambda i: self.vertices[i]))
        return tuple(order[start:] + order[:start])


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def build_polytope(halfspaces, *, require_simple=True) -> Polytope:
    """Construct a polytope from half-space data, verifying its invariants.

    Exhaustively solves all n-subsets of the hyperplane equations, keeps
    the feasible solutions as vertices, then derives facets.  Redundant
    half-spaces (touching the body in dimension below n-1 or not at all)
    are dropped with a warning record; duplicates likewise.
    """
    hs = [HalfSpace(tuple(int(c) for c in h.normal), Fraction(h.bound)) for h in halfspaces]
    if not hs:
        raise Degenerate("no half-spaces given")
    n = len(hs[0].normal)
    for h in hs:
        if len(h.normal) != n:
            raise Degenerate("mixed normal dimensions")
        if all(c == 0 for c in h.normal):
            raise NonPrimitiveNormal(f"zero normal with bound {h.bound}")
        g = 0
        for c in h.normal:
            g = gcd(g, abs(c))
        if g != 1:
            raise NonPrimitiveNormal(f"normal {h.normal} has content {g}")
    if len(hs) < n + 1:
        raise Unbounded(f"{len(hs)} half-spaces cannot bound dimension {n}")

    warnings = []
    deduped = []
    seen = set()
    for h in hs:
        if h.key in seen:
            warnings.append(f"duplicate half-space {h.normal} <= {h.bound} dropped")
            continue
        seen.add(h.key)
        deduped.append(h)

    poly = _build(deduped, n, require_simple=require_simple, check_bounded=True,
                  warnings=warnings)
    if poly is None:
        raise Degenerate("half-space intersection is empty")
    return poly


def _build(hs, n, *, require_simple, check_bounded, warnings=None) -> Polytope | None:
    """Shared constructor; returns None for empty or lower-dimensional bodies."""
    warnings = list(warnings or [])
    if check_bounded:
        _check_bounded(hs, n)

    vertices = _enumerate_vertices(hs, n)
    if not vertices:
        return None
    if _linalg.affine_rank(vertices) < n:
        if check_bounded:
            raise Degenerate("vertex hull is not full-dimensional")
        return None

    vertices.sort()
    active = [
        [i for i, h in enumerate(hs) if h.value(v) == h.bound]
        for v in vertices
    ]

    # Facet retention: a half-space supports a facet exactly when its active
    # vertex set spans affine dimension n-1.
    retained = []
    for i, h in enumerate(hs):
        pts = [vertices[j] for j, act in enumerate(active) if i in act]
        if len(pts) >= n and _linalg.affine_rank(pts) == n - 1:
            retained.append(i)
        else:
            warnings.append(f"redundant half-space {h.normal} <= {h.bound} dropped")

    kept = [hs[i] for i in retained]
    remap = {old: new for new, old in enumerate(retained)}
    facets = []
    for old_index in retained:
        h = hs[old_index]
        vidx = tuple(j for j, act in enumerate(active) if old_index in act)
        simplices, measures = _facet_decomposition(
            [vertices[j] for j in vidx], h.normal, n
        )
        facets.append(
            Facet(
                halfspace_index=remap[old_index],
                vertex_indices=vidx,
                simplices=simplices,
                simplex_measures=measures,
                measure_scale_sq=h.norm_sq,
            )
        )

    if require_simple:
        for j, v in enumerate(vertices):
            count = sum(1 for f in facets if j in f.vertex_indices)
            if count != n:
                raise NotSimple(f"vertex {v} lies on {count} facets")

    origin = tuple(Fraction(0) for _ in range(n))
    origin_interior = all(h.bound > 0 for h in kept) and all(
        h.value(origin) < h.bound for h in kept
    )
    return Polytope(n, kept, vertices, facets, origin_interior, warnings)


def _enumerate_vertices(hs, n):
    found = {}
    for subset in itertools.combinations(range(len(hs)), n):
        rows = [hs[i].normal for i in subset]
        rhs = [hs[i].bound for i in subset]
        sol = _solve_vertex(rows, rhs, n)
        if sol is None:
            continue
        if sol not in found and all(h.value(sol) <= h.bound for h in hs):
            found[sol] = True
    return list(found)


def _solve_vertex(rows, rhs, n):
    if n == 1:
        a = rows[0][0]
        if a == 0:
            return None
        return (Fraction(rhs[0], a),)
    if n == 2:
        (a, b), (c, d) = rows
        det = a * d - b * c
        if det == 0:
            return None
        e, f = rhs
        return (Fraction(e * d - b * f, det), Fraction(a * f - e * c, det))
    return _linalg.solve(rows, rhs)


def _check_bounded(hs, n):
    normals = [h.normal for h in hs]
    if _linalg.rank(normals) < n:
        raise Unbounded("normals do not span the ambient space")
    # The recession cone is pointed once the normals span; it is nonzero
    # exactly when some candidate extreme ray (null direction of an
    # (n-1)-subset of normals) satisfies every inequality <l, v> <= 0.
    if n == 1:
        candidates = [(1,), (-1,)]
    else:
        candidates = []
        for subset in itertools.combinations(range(len(hs)), n - 1):
            v = _linalg.cross_generalized([normals[i] for i in subset], n)
            if any(c != 0 for c in v):
                candidates.append(v)
                candidates.append(tuple(-c for c in v))
    for v in candidates:
        if all(_linalg.dot(h.normal, v) <= 0 for h in hs):
            raise Unbounded(f"direction {v} recedes")


def _facet_decomposition(points, normal, n):
    """Simplices tiling a facet plus their exact lattice measures."""
    if n == 1:
        s = Simplex(tuple(points), 1)
        return (s,), (Fraction(1),)
    if n == 2:
        a, b = sorted(points)
        s = Simplex((a, b), 2)
        return (s,), (_dsigma_measure(s, normal),)
    cycle = _facet_cycle(points, normal)
    simplices = []
    measures = []
    for i in range(1, len(cycle) - 1):
        s = Simplex((cycle[0], cycle[i], cycle[i + 1]), n)
        simplices.append(s)
        measures.append(_dsigma_measure(s, normal))
    return tuple(simplices), tuple(measures)


def _dsigma_measure(simplex, normal) -> Fraction:
    """Lattice measure of an (n-1)-simplex lying on ``<l, x> = b``.

    The generalized cross product of the edge vectors is parallel to the
    facet normal; its rational component along ``l`` times 1/(n-1)! is
    exactly the Euclidean measure divided by ``|l|_2``.
    """
    n = simplex.ambient_dim
    cross = _linalg.cross_generalized(simplex.edge_vectors(), n)
    component = Fraction(_linalg.dot(cross, normal), sum(c * c for c in normal))
    return abs(component) / factorial(n - 1)


def _facet_cycle(points, normal):
    """Order the vertices of a planar facet polygon into a cycle (n = 3)."""
    drop = next(j for j, c in enumerate(normal) if c != 0)
    flat = [tuple(c for j, c in enumerate(p) if j != drop) for p in points]
    center = (
        sum((p[0] for p in flat), Fraction(0)) / len(flat),
        sum((p[1] for p in flat), Fraction(0)) / len(flat),
    )
    order = _angular_order([_linalg.vsub(p, center) for p in flat])
    start = order.index(min(order, key=lambda i: points[i]))
    order = order[start:] + order[:start]
    return [points[i] for i in order]


def _angular_order(vectors):
    """Indices sorted by exact angle of nonzero planar vectors."""

    def half(v):
        return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1

    def compare(i, j):
        vi, vj = vectors[i], vectors[j]
        hi, hj = half(vi), half(vj)
        if hi != hj:
            return -1 if hi < hj else 1
        cross = vi[0] * vj[1] - vi[1] * vj[0]
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(range(len(vectors)), key=functools.cmp_to_key(compare))


def _fan_triangulation(poly: Polytope) -> tuple:
    """n-simplices tiling P: cone from vertex 0 over non-adjacent facets."""
    apex = poly.vertices[0]
    out = []
    for facet in poly.facets:
        if 0 in facet.vertex_indices:
            continue
        for s in facet.simplices:
            out.append(Simplex((apex,) + s.vertices, poly.dim))
    return tuple(out)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def delzant_check(poly: Polytope):
    """Whether the facet normals at every vertex form a lattice basis.

    Returns ``(ok, first_violating_vertex)`` scanning vertices in their
    stored lexicographic order.
    """
    for j, v in enumerate(poly.vertices):
        normals = [
            poly.halfspaces[f.halfspace_index].normal
            for f in poly.facets
            if j in f.vertex_indices
        ]
        if len(normals) != poly.dim:
            return False, v
        if abs(_linalg.det_int(normals)) != 1:
            return False, v
    return True, None


def triangulate(poly: Polytope) -> tuple:
    """Simplices tiling the polytope; volumes sum to the exact volume."""
    return poly.triangulation


def cone_decomposition(poly: Polytope) -> ConeDecomposition:
    """Cones with apex at the origin over the facet simplices."""
    if not poly.origin_interior:
        raise OriginNotInterior("cone decomposition needs 0 strictly inside")
    origin = tuple(Fraction(0) for _ in range(poly.dim))
    cells = []
    for fi, facet in enumerate(poly.facets):
        for s in facet.simplices:
            cells.append((fi, Simplex((origin,) + s.vertices, poly.dim)))
    return ConeDecomposition(tuple(cells))


def subdivide_by_hyperplanes(poly: Polytope, cuts) -> list:
    """Cells of P carved by the zero sets of affine functions.

    Each cut contributes its two closed sides; cells are the nonempty
    full-dimensional intersections over all sign patterns.  Cut objects
    need ``gradient`` and ``constant`` attributes (or may be given as
    ``(gradient, constant)`` pairs).
    """
    cells = [list(poly.halfspaces)]
    for cut in cuts:
        grad, const = _cut_data(cut)
        if all(g == 0 for g in grad):
            continue  # constant function: one side is everything
        prim, s = _linalg.primitivize(grad)
        below = HalfSpace(prim, -s * const)  # gradient side <= 0
        above = HalfSpace(tuple(-c for c in prim), s * const)
        new_cells = []
        for cell in cells:
            new_cells.append(cell + [below])
            new_cells.append(cell + [above])
        cells = new_cells
    out = []
    for cell_hs in cells:
        cell = _build(_dedup_halfspaces(cell_hs), poly.dim,
                      require_simple=False, check_bounded=False)
        if cell is not None:
            out.append(cell)
    return out


def intersect(poly: Polytope, halfspaces) -> Polytope | None:
    """Intersection with extra half-spaces; None if empty or lower-dimensional."""
    combined = _dedup_halfspaces(list(poly.halfspaces) + list(halfspaces))
    return _build(combined, poly.dim, require_simple=False, check_bounded=False)


def polytope_from_halfspaces(halfspaces, dim) -> Polytope | None:
    """Relaxed constructor for internal cells (no simplicity requirement)."""
    return _build(_dedup_halfspaces(list(halfspaces)), dim,
                  require_simple=False, check_bounded=False)


def _dedup_halfspaces(hs):
    seen = set()
    out = []
    for h in hs:
        if h.key not in seen:
            seen.add(h.key)
            out.append(h)
    return out


def _cut_data(cut):
    if hasattr(cut, "gradient"):
        return tuple(Fraction(g) for g in cut.gradient), Fraction(cut.constant)
    grad, const = cut
    return tuple(Fraction(g) for g in grad), Fraction(const)


def translate(poly: Polytope, t) -> Polytope:
    """Shift by a rational vector: normals unchanged, bounds adjusted."""
    t = _frac_point(t)
    shifted = [
        HalfSpace(h.normal, h.bound + h.value(t)) for h in poly.halfspaces
    ]
    return build_polytope(shifted)


def simplex_halfspaces(simplex: Simplex):
    """Half-space representation of a full-dimensional simplex."""
    n = simplex.ambient_dim
    if simplex.k != n:
        raise DegenerateSimplex("half-space form needs a full-dimensional simplex")
    verts = simplex.vertices
    out = []
    for omit in range(n + 1):
        face = [verts[i] for i in range(n + 1) if i != omit]
        edges = [_linalg.vsub(p, face[0]) for p in face[1:]]
        normal = _linalg.cross_generalized(edges, n)
        if all(c == 0 for c in normal):
            raise DegenerateSimplex("affinely dependent simplex vertices")
        prim, _ = _linalg.primitivize(normal)
        bound = Fraction(_linalg.dot(prim, face[0]))
        if _linalg.dot(prim, verts[omit]) > bound:
            prim = tuple(-c for c in prim)
            bound = -bound
        out.append(HalfSpace(prim, bound))
    return out
