"""Exact stability analysis of rational convex polytopes for toric surfaces.

The library decides sufficient conditions for relative stability and
energy properness directly from half-space data, in exact rational
arithmetic throughout: polytope combinatorics, polynomial and boundary
integrals with the lattice measure, lattice-point sums, convex
piecewise-linear functions, the extremal potential, degeneration
invariants, and a certified grid scan for destabilizers.
"""

__version__ = "0.1.0"

# All exact scalars in the library are arbitrary-precision rationals.
from fractions import Fraction as Rational

from .catalog import CATALOG_NAMES, catalog, hexagon
from .errors import ToricStabError
from .geometry import (
    ConeDecomposition,
    Facet,
    HalfSpace,
    Polytope,
    Simplex,
    build_polytope,
    cone_decomposition,
    delzant_check,
    halfspace,
    subdivide_by_hyperplanes,
    translate,
    triangulate,
)
from .integration import (
    LatticeSum,
    Polynomial,
    boundary_integral,
    ehrhart_residual,
    integrate_monomial_simplex,
    integrate_polynomial,
    lattice_points,
    pl_lattice_sum,
)
from .invariants import (
    ConditionVerdict,
    DegenerationReport,
    ExtremalData,
    average_scalar_curvature,
    centering_constants,
    check_condition,
    extremal_field,
    futaki_vector,
    linear_functional_L,
    linear_functional_L_cone,
    relative_futaki,
    theta_norm,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .plfunc import (
    AffineFunction,
    PLFunction,
    SimplePL,
    affine,
    evaluate,
    is_affine,
    is_rational,
    make_pl,
    normalize_at,
)
from .destabilizer import ScanConfig, ScanResult, scan
from .specfile import emit_spec, parse_spec

__all__ = [name for name in dir() if not name.startswith("_")]
