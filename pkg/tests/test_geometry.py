"""Polytope construction, verification, and decomposition."""

from fractions import Fraction

import pytest

from toricstab import (
    build_polytope,
    cone_decomposition,
    delzant_check,
    halfspace,
    subdivide_by_hyperplanes,
    translate,
    triangulate,
)
from toricstab.errors import (
    Degenerate,
    NonPrimitiveNormal,
    NotSimple,
    OriginNotInterior,
    Unbounded,
)
from toricstab.plfunc import affine

from conftest import shoelace


def F(x):
    return Fraction(x)


def pt(*coords):
    return tuple(Fraction(c) for c in coords)


class TestBuildPolytope:
    def test_cp2_triangle_vertices(self, cp2):
        assert set(cp2.vertices) == {pt(-1, -1), pt(2, -1), pt(-1, 2)}

    def test_pentagon_vertices(self, pentagon):
        assert set(pentagon.vertices) == {
            pt(-1, -1), pt(1, -1), pt(1, 0), pt(0, 1), pt(-1, 1),
        }

    def test_square_vertices(self, square):
        assert set(square.vertices) == {
            pt(1, 1), pt(1, -1), pt(-1, 1), pt(-1, -1),
        }

    def test_vertices_sorted_lexicographically(self, pentagon):
        assert list(pentagon.vertices) == sorted(pentagon.vertices)

    def test_unbounded_rejected(self):
        with pytest.raises(Unbounded):
            build_polytope([
                halfspace((1, 0), 1), halfspace((0, 1), 1), halfspace((0, -1), 1),
            ])

    def test_infeasible_rejected(self):
        with pytest.raises(Degenerate):
            build_polytope([
                halfspace((1,), -2), halfspace((-1,), 0),
            ])

    def test_non_primitive_normal_rejected(self):
        with pytest.raises(NonPrimitiveNormal):
            build_polytope([
                halfspace((2, 0), 1), halfspace((-1, 0), 1),
                halfspace((0, 1), 1), halfspace((0, -1), 1),
            ])

    def test_not_simple_rejected(self):
        # Square pyramid apex meets four facets in dimension 3.
        with pytest.raises(NotSimple):
            build_polytope([
                halfspace((0, 0, -1), 0),
                halfspace((1, 0, 1), 1),
                halfspace((-1, 0, 1), 1),
                halfspace((0, 1, 1), 1),
                halfspace((0, -1, 1), 1),
            ])

    def test_redundant_halfspace_dropped_with_warning(self):
        poly = build_polytope([
            halfspace((1, 0), 1), halfspace((-1, 0), 1),
            halfspace((0, 1), 1), halfspace((0, -1), 1),
            halfspace((1, 1), 5),
        ])
        assert len(poly.facets) == 4
        assert any("redundant" in w for w in poly.warnings)

    def test_duplicate_halfspace_dropped_with_warning(self):
        poly = build_polytope([
            halfspace((1, 0), 1), halfspace((1, 0), 1), halfspace((-1, 0), 1),
            halfspace((0, 1), 1), halfspace((0, -1), 1),
        ])
        assert len(poly.facets) == 4
        assert any("duplicate" in w for w in poly.warnings)

    def test_origin_interior_flag(self, cp2):
        assert cp2.origin_interior
        shifted = translate(cp2, (10, 10))
        assert not shifted.origin_interior

    def test_interval_1d(self):
        poly = build_polytope([halfspace((1,), 2), halfspace((-1,), 1)])
        assert poly.vertices == (pt(-1), pt(2))
        assert poly.volume == 3
        assert poly.boundary_measure == 2

    def test_cube_3d(self):
        poly = build_polytope([
            halfspace(n, 1)
            for n in [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)]
        ])
        assert len(poly.vertices) == 8
        assert poly.volume == 8
        assert poly.boundary_measure == 24


class TestEulerAndMeasures:
    def test_vertex_edge_counts_match_for_surfaces(self, cp2, square, pentagon, hexagon23):
        for poly in (cp2, square, pentagon, hexagon23):
            assert len(poly.vertices) == len(poly.facets)

    def test_boundary_measures(self, cp2, square, pentagon):
        assert cp2.boundary_measure == 9
        assert square.boundary_measure == 8
        assert pentagon.boundary_measure == 7

    def test_volume_against_shoelace(self, cp2, square, pentagon, hexagon23):
        for poly in (cp2, square, pentagon, hexagon23):
            cycle = [poly.vertices[i] for i in poly.ccw_cycle]
            assert poly.volume == shoelace(cycle)


class TestDelzant:
    def test_catalog_polytopes_are_delzant(self, cp2, square, pentagon, hexagon23):
        for poly in (cp2, square, pentagon, hexagon23):
            ok, violator = delzant_check(poly)
            assert ok and violator is None

    def test_non_delzant_vertex_reported(self):
        poly = build_polytope([
            halfspace((-1, 0), 1), halfspace((0, -1), 1), halfspace((1, 2), 2),
        ])
        ok, violator = delzant_check(poly)
        assert not ok
        assert violator == pt(-1, Fraction(3, 2))

    def test_invariant_under_translation(self, pentagon):
        moved = translate(pentagon, (Fraction(2, 21), Fraction(2, 21)))
        assert delzant_check(moved) == (True, None)


class TestTriangulate:
    def test_square_two_triangles(self, square):
        tris = triangulate(square)
        assert len(tris) == 2
        assert [t.volume() for t in tris] == [2, 2]

    def test_cp2_single_simplex(self, cp2):
        tris = triangulate(cp2)
        assert len(tris) == 1
        assert tris[0].volume() == Fraction(9, 2)

    def test_pentagon_area_sum(self, pentagon):
        tris = triangulate(pentagon)
        assert len(tris) == 3
        assert sum(t.volume() for t in tris) == Fraction(7, 2)

    def test_volume_sum_matches_for_all_catalog(self, cp2, square, pentagon, hexagon23):
        for poly in (cp2, square, pentagon, hexagon23):
            assert sum(t.volume() for t in triangulate(poly)) == poly.volume


class TestConeDecomposition:
    def test_square_four_unit_cones(self, square):
        cones = cone_decomposition(square)
        assert len(cones.cells) == 4
        assert all(s.volume() == 1 for _, s in cones.cells)

    def test_cp2_cone_volumes(self, cp2):
        cones = cone_decomposition(cp2)
        volumes = sorted(s.volume() for _, s in cones.cells)
        assert volumes == [Fraction(3, 2)] * 3

    def test_pentagon_total(self, pentagon):
        cones = cone_decomposition(pentagon)
        assert len(cones.cells) == 5
        assert sum(s.volume() for _, s in cones.cells) == Fraction(7, 2)

    def test_cone_volume_formula(self, cp2, square, pentagon, hexagon23):
        # bound * facet measure = dim * cone volume, facet by facet
        for poly in (cp2, square, pentagon, hexagon23):
            cones = cone_decomposition(poly)
            per_facet = {}
            for fi, s in cones.cells:
                per_facet[fi] = per_facet.get(fi, Fraction(0)) + s.volume()
            for fi, facet in enumerate(poly.facets):
                bound = poly.halfspaces[facet.halfspace_index].bound
                assert bound * facet.measure == poly.dim * per_facet[fi]

    def test_requires_interior_origin(self, cp2):
        with pytest.raises(OriginNotInterior):
            cone_decomposition(translate(cp2, (10, 0)))


class TestSubdivide:
    def test_square_single_cut(self, square):
        cells = subdivide_by_hyperplanes(square, [affine((1, 0), 0)])
        assert len(cells) == 2
        assert sorted(c.volume for c in cells) == [2, 2]

    def test_cp2_cut_areas(self, cp2):
        cells = subdivide_by_hyperplanes(cp2, [affine((1, 0), 0)])
        assert sorted(c.volume for c in cells) == [2, Fraction(5, 2)]

    def test_pentagon_two_cuts(self, pentagon):
        cells = subdivide_by_hyperplanes(
            pentagon, [affine((1, 0), 0), affine((0, 1), 0)]
        )
        assert len(cells) == 4
        assert sum(c.volume for c in cells) == Fraction(7, 2)

    def test_cut_missing_the_body(self, square):
        cells = subdivide_by_hyperplanes(square, [affine((1, 0), 10)])
        assert len(cells) == 1
        assert cells[0].volume == 4


class TestTranslate:
    def test_identity(self, square):
        assert translate(square, (0, 0)) == square

    def test_cp2_to_standard_corner(self, cp2):
        moved = translate(cp2, (1, 1))
        assert set(moved.vertices) == {pt(0, 0), pt(3, 0), pt(0, 3)}

    def test_pentagon_centering(self, pentagon):
        moved = translate(pentagon, (Fraction(2, 21), Fraction(2, 21)))
        assert moved.barycenter == (0, 0)

    def test_commutes_with_vertex_shift(self, pentagon):
        t = (Fraction(1, 3), Fraction(-2, 5))
        moved = translate(pentagon, t)
        shifted = sorted(
            tuple(c + d for c, d in zip(v, t)) for v in pentagon.vertices
        )
        assert list(moved.vertices) == shifted

    def test_normals_unchanged(self, pentagon):
        moved = translate(pentagon, (5, 7))
        assert [h.normal for h in moved.halfspaces] == [
            h.normal for h in pentagon.halfspaces
        ]
