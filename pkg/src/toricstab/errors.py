"""Exception types raised by the library.

Every failure mode of the geometric and analytic operations gets its own
class so callers (in particular the CLI) can map them to precise messages
and exit codes.
"""


class ToricStabError(Exception):
    """Base class for all library errors."""


# -- polytope construction ---------------------------------------------------

class Unbounded(ToricStabError):
    """The half-space intersection recedes in some direction."""


class NotSimple(ToricStabError):
    """A vertex lies on more facet hyperplanes than the dimension allows."""


class NonPrimitiveNormal(ToricStabError):
    """A facet normal is zero or its integer components share a factor."""


class Degenerate(ToricStabError):
    """The half-space intersection is empty or not full-dimensional."""


class OriginNotInterior(ToricStabError):
    """An operation requiring the origin strictly inside the polytope."""


class DegenerateSimplex(ToricStabError):
    """Simplex vertices are affinely dependent."""


# -- integration and lattice scans ------------------------------------------

class ScaleOverflow(ToricStabError):
    """A lattice scan would exceed the configured cell budget."""


# -- piecewise-linear functions ----------------------------------------------

class EmptyPieceList(ToricStabError):
    """A piecewise-linear function needs at least one affine piece."""


class OutsideDomain(ToricStabError):
    """Evaluation point lies outside the closed domain polytope."""


class PointNotInterior(ToricStabError):
    """Normalization point must be strictly interior to the domain."""


# -- invariants ---------------------------------------------------------------

class SingularMoment(ToricStabError):
    """Second-moment matrix was singular; impossible for a valid polytope."""


class WrongFamily(ToricStabError):
    """A family-specific condition was requested on a non-member polytope."""


# -- scanning -----------------------------------------------------------------

class NoInteriorCrease(ToricStabError):
    """The scan grid produced no crease meeting the polytope interior."""


# -- input handling ------------------------------------------------------------

class UnknownName(ToricStabError):
    """No catalog entry under the requested name."""


class InvalidHexagonParams(ToricStabError):
    """Hexagon family parameters outside the admissible range."""


class ParseError(ToricStabError):
    """Malformed specification text or expression.

    Carries a human-readable location (field path or character position)
    in ``where`` when one is available.
    """

    def __init__(self, message, where=None):
        self.where = where
        if where is not None:
            message = f"{where}: {message}"
        super().__init__(message)
