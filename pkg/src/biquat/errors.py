"""Exception taxonomy for the whole package.

Everything raised on purpose derives from :class:`BiquatError`, so callers can
catch one type at the CLI boundary and still tell the failure modes apart in
tests.
"""


class BiquatError(Exception):
    """Base class for every error this package raises deliberately."""


class SingularDenominator(BiquatError):
    """A matrix with zero determinant was inverted, or a fractional-linear
    map was evaluated at a point where its denominator block is singular."""


class BackendMismatch(BiquatError):
    """An exact (rational) routine received float data, or vice versa."""


class UnsupportedGroupElement(BiquatError):
    """The exact group action only handles the three generator shapes
    (translation, diagonal, inversion); anything else lands here."""


class NotRegular(BiquatError):
    """The integrand handed to a reproducing-formula check fails the
    first-order regularity system it is supposed to satisfy."""


class NotHarmonic(BiquatError):
    """A mean-value identity was asked to reproduce a function that is not
    annihilated by the Laplacian."""


class SingularOnCycle(BiquatError):
    """Quadrature nodes hit (or got dangerously close to) a singularity of
    the integrand."""


class RegionViolation(BiquatError):
    """A series expansion was requested at a point pair outside either
    convergence region."""


class EmptySpace(BiquatError):
    """The requested basis family is zero-dimensional at this degree."""


class NotPolynomial(BiquatError):
    """An exact integrator that only handles polynomials received a function
    with a nontrivial denominator."""


class BadParameters(BiquatError):
    """Cycle or report parameters are malformed (unknown kind, nonpositive
    radius, resolution below the minimum, ...)."""


class OnBranchCut(BiquatError):
    """The dilogarithm (or a function built from it) was evaluated on its
    branch cut where the principal value is ambiguous."""


class OutsideRegion(BiquatError):
    """Ladder-function arguments lie outside the real-analyticity region."""


class DegenerateConfig(BiquatError):
    """A four-point configuration has coincident (or numerically coincident)
    points, so the integral it defines diverges."""


class BadIndex(BiquatError):
    """Spectral or basis labels out of range (negative quantum number,
    wrong half-integer parity, ...)."""
