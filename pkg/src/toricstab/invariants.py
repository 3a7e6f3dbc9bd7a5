"""Curvature averages, extremal data, stability functionals and conditions.

All quantities are exact rationals derived from polytope integrals:

* the average scalar curvature is the lattice-measure boundary volume
  divided by the volume;
* the centering constants shift each coordinate to integrate to zero;
* the obstruction vector pairs centered coordinates with the boundary;
* the extremal potential is the affine function whose coefficients solve
  the second-moment system against that vector, which is exactly the
  requirement that the stability functional vanish on affine functions.

The linear functional ``L`` of a convex piecewise-linear function is the
boundary integral minus the weighted volume integral; its sign over all
such functions encodes relative stability of the associated family of
degenerations, and ``-L / (2 Vol)`` is the reported invariant of one
degeneration.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg, geometry, integration, plfunc
from .errors import OriginNotInterior, SingularMoment, WrongFamily
from .geometry import Polytope
from .integration import Polynomial
from .plfunc import AffineFunction, PLFunction

CONDITION_CODES = ("c02", "c02prime", "c02doubleprime", "c43", "c04", "c61")

# Hexagon family facet normals carrying the first and second parameter.
_HEX_FIRST = ((1, 0), (-1, -1), (0, 1))
_HEX_SECOND = ((0, -1), (-1, 0), (1, 1))


@dataclass(frozen=True)
class ExtremalData:
    """Centering constants, extremal coefficients and the potential's range."""

    c: tuple
    a: tuple
    theta: AffineFunction
    theta_min: Fraction
    theta_max: Fraction
    norm: Fraction


@dataclass(frozen=True)
class DegenerationReport:
    """Exact invariants of the degeneration induced by a convex PL function."""

    L_value: Fraction
    rel_futaki: Fraction
    gen_futaki_alpha: Fraction
    ip_ab: Fraction
    ip_bb: Fraction
    trivial: bool


@dataclass(frozen=True)
class ConditionVerdict:
    """Outcome of one sufficient condition with its exact slack."""

    name: str
    holds: bool
    margin: Fraction
    witness: object = None


# ---------------------------------------------------------------------------
# basic invariants
# ---------------------------------------------------------------------------


def average_scalar_curvature(poly: Polytope) -> Fraction:
    """Boundary measure over volume; the curvature average of the class."""
    return poly.boundary_measure / poly.volume


def centering_constants(poly: Polytope) -> tuple:
    """Constants c with integral of (x_j + c_j) over P equal to zero."""
    vol = poly.volume
    out = []
    for j in range(poly.dim):
        moment = integration.integrate_polynomial(
            poly, Polynomial.coordinate(poly.dim, j)
        )
        out.append(-moment / vol)
    return tuple(out)


def futaki_vector(poly: Polytope) -> tuple:
    """Boundary pairing with the centered coordinates.

    The volume part of the pairing vanishes by centering, so the vector is
    the boundary integral of ``x_j + c_j``; it is zero exactly when the
    obstruction to constant scalar curvature vanishes on the class.
    """
    c = centering_constants(poly)
    out = []
    for j in range(poly.dim):
        f = Polynomial.affine(
            poly.dim,
            [Fraction(1) if i == j else Fraction(0) for i in range(poly.dim)],
            c[j],
        )
        out.append(integration.boundary_integral(poly, f))
    return tuple(out)


def second_moment_matrix(poly: Polytope, c=None):
    """Matrix of integrals of centered coordinate products; positive definite."""
    if c is None:
        c = centering_constants(poly)
    n = poly.dim
    centered = [
        Polynomial.affine(
            n, [Fraction(1) if i == j else Fraction(0) for i in range(n)], c[j]
        )
        for j in range(n)
    ]
    mat = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        for l in range(j, n):
            value = integration.integrate_polynomial(poly, centered[j] * centered[l])
            mat[j][l] = value
            mat[l][j] = value
    return mat


def extremal_field(poly: Polytope) -> ExtremalData:
    """Solve the second-moment system for the extremal potential.

    The coefficients ``a`` satisfy ``M a = b`` with ``M`` the centered
    second-moment matrix and ``b`` the boundary pairing vector, which is
    the unique affine potential making the stability functional vanish on
    every affine function.  The range over the polytope is attained at
    vertices since the potential is affine.
    """
    c = centering_constants(poly)
    mat = second_moment_matrix(poly, c)
    b = futaki_vector(poly)
    sol = _linalg.solve(mat, b)
    if sol is None:
        raise SingularMoment("second-moment matrix is singular")
    a = tuple(sol)
    const = _linalg.dot(a, c)
    theta = AffineFunction(a, const)
    values = [theta.evaluate(v) for v in poly.vertices]
    tmin, tmax = min(values), max(values)
    return ExtremalData(
        c=c, a=a, theta=theta, theta_min=tmin, theta_max=tmax,
        norm=max(abs(tmin), abs(tmax)),
    )


def theta_norm(extremal: ExtremalData, poly: Polytope) -> Fraction:
    """Sup norm of the extremal potential; affine, so a vertex maximum."""
    values = [abs(extremal.theta.evaluate(v)) for v in poly.vertices]
    return max(values)


# ---------------------------------------------------------------------------
# the linear functional
# ---------------------------------------------------------------------------


def _weight(poly: Polytope, extremal: ExtremalData) -> Polynomial:
    """The affine weight: curvature average plus extremal potential."""
    rbar = average_scalar_curvature(poly)
    return Polynomial.affine(
        poly.dim, extremal.theta.gradient, extremal.theta.constant + rbar
    )


def _as_pl(u, poly: Polytope) -> PLFunction:
    if isinstance(u, PLFunction):
        return u
    if isinstance(u, plfunc.SimplePL):
        return u.as_pl(poly)
    if isinstance(u, AffineFunction):
        return plfunc.make_pl([u], poly)
    raise TypeError(f"cannot interpret {type(u).__name__} as a PL function")


def linear_functional_L(poly: Polytope, u, extremal: ExtremalData) -> Fraction:
    """Boundary integral of u minus the weighted volume integral, exact."""
    u = _as_pl(u, poly)
    weight = _weight(poly, extremal)
    boundary = integration.boundary_integral(poly, u)
    volume_term = Fraction(0)
    for cell in u.cells:
        piece = Polynomial.affine(
            poly.dim, cell.piece.gradient, cell.piece.constant
        )
        volume_term += integration.integrate_polynomial(cell.region, weight * piece)
    return boundary - volume_term


def linear_functional_L_cone(poly: Polytope, u, extremal: ExtremalData) -> Fraction:
    """The same functional computed through the cone decomposition.

    Over the cone with apex 0 above a facet of support value ``b_i`` the
    boundary piece converts to the divergence integrand
    ``<x, grad u> / b_i + (n / b_i) u``; summed against the weighted term
    this reproduces the boundary form exactly on the common refinement of
    cones and PL cells.
    """
    if not poly.origin_interior:
        raise OriginNotInterior("cone form needs 0 strictly inside")
    u = _as_pl(u, poly)
    n = poly.dim
    weight = _weight(poly, extremal)
    cones = geometry.cone_decomposition(poly)
    total = Fraction(0)
    for facet_index, cone_simplex in cones.cells:
        support = poly.halfspaces[poly.facets[facet_index].halfspace_index].bound
        cone_hs = geometry.simplex_halfspaces(cone_simplex)
        for cell in u.cells:
            region = geometry.intersect(cell.region, cone_hs)
            if region is None:
                continue
            grad = cell.piece.gradient
            piece = Polynomial.affine(n, grad, cell.piece.constant)
            radial = Polynomial(n)
            for j in range(n):
                radial = radial + Polynomial.coordinate(n, j) * grad[j]
            integrand = (radial + piece * n) * (Fraction(1) / support) - weight * piece
            total += integration.integrate_polynomial(region, integrand)
    return total


def relative_futaki(poly: Polytope, u, extremal: ExtremalData) -> DegenerationReport:
    """Exact invariants of the toric degeneration induced by ``u``."""
    u = _as_pl(u, poly)
    vol = poly.volume
    rbar = average_scalar_curvature(poly)
    L = linear_functional_L(poly, u, extremal)
    boundary = integration.boundary_integral(poly, u)
    u_volume = integration.integrate_pl(u)
    theta_poly = Polynomial.affine(
        poly.dim, extremal.theta.gradient, extremal.theta.constant
    )
    theta_u = Fraction(0)
    for cell in u.cells:
        piece = Polynomial.affine(poly.dim, cell.piece.gradient, cell.piece.constant)
        theta_u += integration.integrate_polynomial(cell.region, theta_poly * piece)
    theta_sq = integration.integrate_polynomial(poly, theta_poly * theta_poly)
    return DegenerationReport(
        L_value=L,
        rel_futaki=-L / (2 * vol),
        gen_futaki_alpha=-(boundary - rbar * u_volume) / (2 * vol),
        ip_ab=-theta_u,
        ip_bb=-theta_sq,
        trivial=plfunc.is_affine(u),
    )


# ---------------------------------------------------------------------------
# sufficient conditions
# ---------------------------------------------------------------------------


def check_condition(poly: Polytope, extremal: ExtremalData, which: str) -> ConditionVerdict:
    """Evaluate one sufficient condition with its exact rational margin.

    Condition codes:

    * ``c02``            curvature average plus potential sup norm is at
                         most ``(n+1)/b_i`` for every facet bound ``b_i``;
    * ``c02prime``       the same against ``n+1`` (anticanonical bounds);
    * ``c02doubleprime`` curvature average alone against ``(n+1)/b_i``;
    * ``c43``            pointwise form: curvature average plus potential
                         value at most ``(n+1)/b_i`` everywhere on P;
    * ``c04``            cone-volume form for vanishing obstruction;
    * ``c61``            parameter window of the symmetric hexagon family,
                         decided by exact squared comparisons.
    """
    if which not in CONDITION_CODES:
        raise ValueError(f"unknown condition code {which!r}")
    n = poly.dim
    rbar = average_scalar_curvature(poly)

    if which == "c61":
        return _check_hexagon_window(poly)

    if which == "c02prime":
        margin = (n + 1) - rbar - extremal.norm
        return ConditionVerdict("c02prime", margin >= 0, margin)

    if which in ("c02", "c02doubleprime", "c43", "c04"):
        bounds = [poly.halfspaces[f.halfspace_index].bound for f in poly.facets]
        if which == "c04":
            if not poly.origin_interior:
                raise OriginNotInterior("cone volumes need 0 strictly inside")
            cones = geometry.cone_decomposition(poly)
            cone_vol = [Fraction(0)] * len(poly.facets)
            for fi, simplex in cones.cells:
                cone_vol[fi] += simplex.volume()
            weighted = sum(
                (cone_vol[i] / bounds[i] for i in range(len(bounds))),
                Fraction(0),
            )
            vol = poly.volume
            worst = None
            witness = None
            for i, b in enumerate(bounds):
                value = b * weighted / vol
                if worst is None or value > worst:
                    worst = value
                    witness = i
            margin = Fraction(n + 1, n) - worst
            return ConditionVerdict("c04", margin >= 0, margin, witness)
        if any(b <= 0 for b in bounds):
            raise OriginNotInterior(
                "facet bounds must be positive (0 inside P) for this condition"
            )
        if which == "c02":
            level = rbar + extremal.norm
            slacks = [Fraction(n + 1, 1) / b - level for b in bounds]
            margin = min(slacks)
            return ConditionVerdict("c02", margin >= 0, margin, slacks.index(margin))
        if which == "c02doubleprime":
            slacks = [Fraction(n + 1, 1) / b - rbar for b in bounds]
            margin = min(slacks)
            return ConditionVerdict(
                "c02doubleprime", margin >= 0, margin, slacks.index(margin)
            )
        # c43: the weight is affine, so its maximum sits at a vertex.
        theta_values = [extremal.theta.evaluate(v) for v in poly.vertices]
        tmax = max(theta_values)
        vertex_index = theta_values.index(tmax)
        slacks = [Fraction(n + 1, 1) / b - rbar - tmax for b in bounds]
        margin = min(slacks)
        return ConditionVerdict(
            "c43", margin >= 0, margin, (slacks.index(margin), vertex_index)
        )
    raise AssertionError("unreachable")


def hexagon_parameters(poly: Polytope):
    """Extract (first, second) bounds when P is the symmetric hexagon family."""
    if poly.dim != 2 or len(poly.facets) != 6:
        return None
    by_normal = {}
    for f in poly.facets:
        h = poly.halfspaces[f.halfspace_index]
        by_normal[h.normal] = h.bound
    if set(by_normal) != set(_HEX_FIRST) | set(_HEX_SECOND):
        return None
    first = {by_normal[m] for m in _HEX_FIRST}
    second = {by_normal[m] for m in _HEX_SECOND}
    if len(first) != 1 or len(second) != 1:
        return None
    return first.pop(), second.pop()


def _check_hexagon_window(poly: Polytope) -> ConditionVerdict:
    params = hexagon_parameters(poly)
    if params is None:
        raise WrongFamily("polytope is not the symmetric hexagon family")
    lam, mu = params
    # The window bounds are quadratic surds; inside the family's parameter
    # range they are equivalent to these two rational quadratics being
    # nonpositive, so the comparison stays exact.
    lower = 10 * lam * mu - 5 * lam**2 - 3 * mu**2
    upper = 10 * lam * mu - 5 * mu**2 - 3 * lam**2
    margin = min(lower, upper)
    return ConditionVerdict("c61", margin >= 0, margin, (lam, mu))


# ---------------------------------------------------------------------------
# lattice bridge for the degeneration pairing
# ---------------------------------------------------------------------------


def lattice_pairing_estimate(poly: Polytope, u, extremal: ExtremalData, k,
                             roof=None) -> Fraction:
    """Finite-scale pairing of a degeneration with the extremal action.

    Diagonal weight sums over the lattice points of ``k P``: with
    ``A = diag(k (roof - u)(I / k))`` and ``B = diag(k theta(I / k))`` the
    combination ``(Tr(AB) - Tr(A) Tr(B) / N) / k^(n+2)`` converges to the
    exact pairing ``-integral(theta * u)`` with error O(1/k).  The roof
    constant cancels algebraically, so any value may be supplied.
    """
    u = _as_pl(u, poly)
    if roof is None:
        roof = max(u.evaluate(v) for v in poly.vertices) + 1
    roof = Fraction(roof)
    points = integration.lattice_points(poly, k)
    n = poly.dim
    count = len(points)
    theta = extremal.theta
    tr_a = Fraction(0)
    tr_b = Fraction(0)
    tr_ab = Fraction(0)
    for point in points:
        x = tuple(Fraction(c, k) for c in point)
        ui = max(p.evaluate(x) for p in u.pieces)
        ti = theta.evaluate(x)
        a_entry = k * (roof - ui)
        b_entry = k * ti
        tr_a += a_entry
        tr_b += b_entry
        tr_ab += a_entry * b_entry
    return (tr_ab - tr_a * tr_b / count) / Fraction(k ** (n + 2))
