"""Exact integration and lattice sums, checked against independent oracles."""

import random
from fractions import Fraction

import pytest

from toricstab import (
    Polynomial,
    Simplex,
    boundary_integral,
    ehrhart_residual,
    integrate_monomial_simplex,
    integrate_polynomial,
    lattice_points,
    make_pl,
    pl_lattice_sum,
    subdivide_by_hyperplanes,
)
from toricstab.errors import DegenerateSimplex, ScaleOverflow
from toricstab.integration import integrate_pl
from toricstab.invariants import average_scalar_curvature
from toricstab.plfunc import affine, zero_function


def F(a, b=1):
    return Fraction(a, b)


def brute_lattice(poly, k):
    """Oracle: direct box enumeration with Fraction membership tests."""
    lows = []
    highs = []
    for j in range(poly.dim):
        values = [k * v[j] for v in poly.vertices]
        lows.append(min(values))
        highs.append(max(values))
    out = []
    import itertools
    import math

    ranges = [range(math.ceil(lo), math.floor(hi) + 1) for lo, hi in zip(lows, highs)]
    for point in itertools.product(*ranges):
        if all(
            sum(c * p for c, p in zip(h.normal, point)) <= k * h.bound
            for h in poly.halfspaces
        ):
            out.append(point)
    return out


class TestMonomialSimplex:
    def test_standard_simplex_volume(self):
        s = Simplex(((F(0), F(0)), (F(1), F(0)), (F(0), F(1))), 2)
        assert integrate_monomial_simplex(s, (0, 0)) == F(1, 2)

    def test_standard_simplex_coordinate(self):
        s = Simplex(((F(0), F(0)), (F(1), F(0)), (F(0), F(1))), 2)
        assert integrate_monomial_simplex(s, (1, 0)) == F(1, 6)

    def test_big_triangle_square_monomial(self):
        # Iterated-integral oracle: int_{-1}^{2} x^2 (2 - x) dx = 9/4.
        s = Simplex(((F(-1), F(-1)), (F(2), F(-1)), (F(-1), F(2))), 2)
        assert integrate_monomial_simplex(s, (2, 0)) == F(9, 4)

    def test_degenerate_simplex_rejected(self):
        s = Simplex(((F(0), F(0)), (F(1), F(1)), (F(2), F(2))), 2)
        with pytest.raises(DegenerateSimplex):
            integrate_monomial_simplex(s, (0, 0))


class TestPolynomialIntegral:
    def test_square_x1_squared(self, square):
        assert integrate_polynomial(square, Polynomial(2, {(2, 0): 1})) == F(4, 3)

    def test_pentagon_first_moment(self, pentagon):
        assert integrate_polynomial(pentagon, Polynomial.coordinate(2, 0)) == F(-1, 3)

    def test_cp2_volume(self, cp2):
        assert integrate_polynomial(cp2, Polynomial.constant(2, 1)) == F(9, 2)

    def test_linearity(self, pentagon):
        rng = random.Random(7)
        f = Polynomial(2, {(2, 0): F(1, 3), (1, 1): F(-2)})
        g = Polynomial(2, {(0, 1): F(5, 2), (0, 0): F(1)})
        for _ in range(10):
            a = F(rng.randint(-9, 9), rng.randint(1, 9))
            b = F(rng.randint(-9, 9), rng.randint(1, 9))
            lhs = integrate_polynomial(pentagon, f * a + g * b)
            rhs = a * integrate_polynomial(pentagon, f) + b * integrate_polynomial(
                pentagon, g
            )
            assert lhs == rhs

    def test_additivity_over_subdivision(self, pentagon):
        f = Polynomial(2, {(2, 0): F(1), (1, 1): F(1, 2), (0, 0): F(-3)})
        cells = subdivide_by_hyperplanes(
            pentagon, [affine((1, 0), F(1, 3)), affine((1, -2), 0)]
        )
        total = sum(integrate_polynomial(c, f) for c in cells)
        assert total == integrate_polynomial(pentagon, f)

    def test_monte_carlo_oracle(self, pentagon):
        # Statistical oracle for degree-2 monomials: sample mean times the
        # volume should sit within three standard errors of the exact value.
        numpy = pytest.importorskip("numpy")
        rng = numpy.random.default_rng(42)
        samples = 100_000
        xs = rng.uniform(-1.0, 1.0, size=(4 * samples, 2))
        inside = (
            (xs[:, 0] <= 1) & (xs[:, 1] <= 1)
            & (xs[:, 0] >= -1) & (xs[:, 1] >= -1)
            & (xs[:, 0] + xs[:, 1] <= 1)
        )
        pts = xs[inside][:samples]
        vol = float(pentagon.volume)
        for alpha in ((2, 0), (1, 1), (0, 2)):
            values = pts[:, 0] ** alpha[0] * pts[:, 1] ** alpha[1]
            mean = values.mean()
            sigma = values.std(ddof=1) / numpy.sqrt(len(values))
            exact = float(integrate_polynomial(pentagon, Polynomial(2, {alpha: 1})))
            assert abs(exact - mean * vol) <= 3 * sigma * vol


class TestBoundaryIntegral:
    def test_square_perimeter(self, square):
        assert boundary_integral(square, Polynomial.constant(2, 1)) == 8

    def test_cp2_lattice_perimeter(self, cp2):
        assert boundary_integral(cp2, Polynomial.constant(2, 1)) == 9

    def test_pentagon_first_moment(self, pentagon):
        assert boundary_integral(pentagon, Polynomial.coordinate(2, 0)) == -1

    def test_pl_restriction(self, square):
        u = make_pl([zero_function(2), affine((1, 0), 0)], square)
        assert boundary_integral(square, u) == 3

    def test_consistency_with_curvature_average(self, cp2, square, pentagon):
        for poly in (cp2, square, pentagon):
            ratio = boundary_integral(poly, Polynomial.constant(2, 1)) / (
                integrate_polynomial(poly, Polynomial.constant(2, 1))
            )
            assert ratio == average_scalar_curvature(poly)


class TestLatticePoints:
    def test_square_counts(self, square):
        assert len(lattice_points(square, 1)) == 9
        assert len(lattice_points(square, 10)) == 441

    def test_cp2_count(self, cp2):
        assert len(lattice_points(cp2, 1)) == 10

    def test_matches_brute_enumeration(self, pentagon, cp2):
        for poly in (pentagon, cp2):
            for k in (1, 3, 7):
                assert sorted(lattice_points(poly, k)) == sorted(
                    brute_lattice(poly, k)
                )

    def test_budget_guard(self, square):
        with pytest.raises(ScaleOverflow):
            lattice_points(square, 10**6, budget=10**4)

    def test_count_at_least_vertices(self, cp2, square, pentagon):
        for poly in (cp2, square, pentagon):
            for k in (1, 2, 5):
                integral_vertices = sum(
                    1
                    for v in poly.vertices
                    if all((k * c).denominator == 1 for c in v)
                )
                assert len(lattice_points(poly, k)) >= integral_vertices


class TestPLLatticeSum:
    def test_square_crease_sum(self, square):
        phi = make_pl([zero_function(2), affine((1, 0), 0)], square)
        out = pl_lattice_sum(square, phi, 10)
        assert out.count == 441
        assert out.weighted_sum == F(231, 2)

    def test_square_constant(self, square):
        phi = make_pl([affine((0, 0), 1)], square)
        assert pl_lattice_sum(square, phi, 5).weighted_sum == 121

    def test_cp2_affine_sum(self, cp2):
        # Brute enumeration over the ten points of the unscaled triangle.
        phi = make_pl([affine((1, 1), 0)], cp2)
        expected = sum(
            Fraction(i + j) for i, j in brute_lattice(cp2, 1)
        )
        out = pl_lattice_sum(cp2, phi, 1)
        assert out.count == 10
        assert out.weighted_sum == expected == 0

    def test_matches_pointwise_evaluation(self, pentagon):
        phi = make_pl(
            [affine((1, -1), F(1, 2)), affine((-2, 1), 0), zero_function(2)],
            pentagon,
        )
        for k in (2, 5):
            expected = sum(
                (phi.evaluate((F(i, k), F(j, k))) for i, j in brute_lattice(pentagon, k)),
                F(0),
            )
            assert pl_lattice_sum(pentagon, phi, k).weighted_sum == expected


class TestEhrhartResidual:
    def test_square_crease_exact_half(self, square):
        phi = make_pl([zero_function(2), affine((1, 0), 0)], square)
        for k in (10, 25, 50):
            assert ehrhart_residual(square, phi, k) == F(1, 2)

    def test_square_constant_is_one(self, square):
        phi = make_pl([affine((0, 0), 1)], square)
        for k in (1, 2, 7, 19):
            assert ehrhart_residual(square, phi, k) == 1

    def test_bounded_over_scales(self, cp2):
        phi = make_pl([zero_function(2), affine((1, 0), 0)], cp2)
        residuals = [abs(ehrhart_residual(cp2, phi, k)) for k in range(1, 51)]
        assert max(residuals) <= 2

    def test_integrate_pl_agrees_with_cellwise(self, pentagon):
        phi = make_pl([zero_function(2), affine((1, 0), 0)], pentagon)
        direct = sum(
            (
                integrate_polynomial(
                    cell.region,
                    Polynomial.affine(2, cell.piece.gradient, cell.piece.constant),
                )
                for cell in phi.cells
            ),
            F(0),
        )
        assert integrate_pl(phi) == direct
