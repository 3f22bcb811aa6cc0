"""Exception hierarchy.

Every error raised on purpose by the package derives from ``GeometryError`` so
callers (notably the suite runner) can turn failures into report rows.
"""


class GeometryError(Exception):
    """Base class for all geometric failures."""


class DegenerateSpan(GeometryError):
    """A set of vectors spans a null (degenerate) or dependent subspace."""


class DomainError(GeometryError, ValueError):
    """A primitive was evaluated outside its domain (log/sqrt/division)."""


class StencilOutOfDomain(GeometryError, ValueError):
    """A finite-difference stencil is invalid or leaves the parameter box."""


class NotImmersed(GeometryError):
    """The differential of a chart is rank deficient at the point."""


class DegenerateNormal(GeometryError):
    """The normal space cannot be given an orthonormal frame."""


class GaugeAlignmentFailure(GeometryError):
    """Frame continuity could not be established across a stencil."""


class NoHyperplane(GeometryError):
    """Samples of a surface are not contained in any linear hyperplane."""


class VanishingSecondFundamentalForm(GeometryError):
    """The hypersurface has (numerically) zero second fundamental form."""


class NotNullityType(GeometryError):
    """The middle principal curvature is not zero: no nullity direction."""


class IllConditionedFit(GeometryError, ValueError):
    """Too few samples or too short a range for the exponential profile fit."""


class UnknownName(GeometryError, KeyError):
    """A catalog name is not registered."""

    def __str__(self):
        return Exception.__str__(self)


class TotallyGeodesicPointInDomain(GeometryError):
    """A generator validation sweep met a (near) totally geodesic point."""


class HyperplaneViolation(GeometryError):
    """A surface does not lie in the hyperplane it was claimed to lie in."""


class NullCaseRequiresEta(GeometryError):
    """Reconstruction in the null case needs a smooth normal frame."""
